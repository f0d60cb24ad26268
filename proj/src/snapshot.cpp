#include "pmlwave/snapshot.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pml {

namespace {
constexpr double kSentinel = 1e30;
}

void write_snapshot(const std::string& path, const AssembledOperators& ops,
                    std::span<const double> field, const std::string& name, int step,
                    double time) {
  if (field.size() != static_cast<size_t>(ops.dofs.n_pressure())) {
    throw std::invalid_argument("write_snapshot: field size mismatch");
  }
  bool overflow = false;
  for (double v : field) {
    if (!std::isfinite(v) || std::abs(v) > kSentinel) {
      overflow = true;
      break;
    }
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
  out.precision(17);
  out << "# field " << name << "\n";
  out << "# step " << step << " time " << time << "\n";
  out << "# grid " << ops.dofs.npx << " " << ops.dofs.npy << " r " << ops.dofs.r << "\n";
  out << "# h " << ops.mesh.hx << " " << ops.mesh.hy << "\n";
  out << "# origin " << ops.mesh.domain.x0 << " " << ops.mesh.domain.y0 << "\n";
  out << "# overflow " << (overflow ? 1 : 0) << "\n";
  for (int gy = 0; gy < ops.dofs.npy; ++gy) {
    for (int gx = 0; gx < ops.dofs.npx; ++gx) {
      double v = field[ops.dofs.pressure_index(gx, gy)];
      if (std::isnan(v)) v = kSentinel;
      v = std::clamp(v, -kSentinel, kSentinel);
      out << v << (gx + 1 == ops.dofs.npx ? '\n' : ' ');
    }
  }
  if (!out) throw std::runtime_error("write_snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
  Snapshot s;
  std::string line;
  std::string tag;
  for (int i = 0; i < 6; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("read_snapshot: truncated header");
    std::istringstream h(line);
    std::string hash;
    h >> hash >> tag;
    if (tag == "field") {
      h >> s.field;
    } else if (tag == "step") {
      std::string tword;
      h >> s.step >> tword >> s.time;
    } else if (tag == "grid") {
      std::string rword;
      h >> s.nx >> s.ny >> rword >> s.r;
    } else if (tag == "h") {
      h >> s.hx >> s.hy;
    } else if (tag == "origin") {
      h >> s.origin_x >> s.origin_y;
    } else if (tag == "overflow") {
      int flag = 0;
      h >> flag;
      s.overflow = flag != 0;
    }
  }
  s.values.reserve(static_cast<size_t>(s.nx) * s.ny);
  double v = 0.0;
  while (in >> v) s.values.push_back(v);
  if (s.values.size() != static_cast<size_t>(s.nx) * s.ny) {
    throw std::runtime_error("read_snapshot: value count does not match the advertised grid");
  }
  return s;
}

}  // namespace pml
