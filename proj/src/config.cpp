#include "pmlwave/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace pml {

namespace {

// Line-oriented `key = value` text; '#' starts a comment, blank lines are
// skipped, keys must be unique and known to the consumer.
std::map<std::string, std::string> tokenize(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    if (trim(line).empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected `key = value`");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!kv.emplace(key, value).second) throw ConfigError("duplicate key `" + key + "`");
  }
  return kv;
}

class KeyReader {
 public:
  explicit KeyReader(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

  bool has(const std::string& key) {
    used_.insert(key);
    return kv_.count(key) > 0;
  }
  std::string get(const std::string& key) {
    used_.insert(key);
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing required key `" + key + "`");
    return it->second;
  }
  std::string get_or(const std::string& key, const std::string& fallback) {
    return has(key) ? get(key) : fallback;
  }
  double get_double(const std::string& key) { return to_double(key, get(key)); }
  double get_double_or(const std::string& key, double fallback) {
    return has(key) ? get_double(key) : fallback;
  }
  int get_int(const std::string& key) {
    const double v = get_double(key);
    if (v != std::floor(v)) throw ConfigError("key `" + key + "`: expected an integer");
    return static_cast<int>(v);
  }
  int get_int_or(const std::string& key, int fallback) {
    return has(key) ? get_int(key) : fallback;
  }
  std::vector<double> get_doubles(const std::string& key) {
    std::istringstream in(get(key));
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(to_double(key, tok));
    if (out.empty()) throw ConfigError("key `" + key + "`: expected numbers");
    return out;
  }
  Rect get_rect(const std::string& key) {
    const auto v = get_doubles(key);
    if (v.size() != 4) throw ConfigError("key `" + key + "`: expected `x0 x1 y0 y1`");
    return Rect{v[0], v[1], v[2], v[3]};
  }

  void reject_unknown() const {
    for (const auto& [key, value] : kv_) {
      if (!used_.count(key)) throw ConfigError("unknown key `" + key + "`");
    }
  }

 private:
  double to_double(const std::string& key, const std::string& s) {
    try {
      size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw ConfigError("");
      return v;
    } catch (...) {
      throw ConfigError("key `" + key + "`: cannot parse `" + s + "` as a number");
    }
  }

  std::map<std::string, std::string> kv_;
  std::set<std::string> used_;
};

Scheme parse_scheme(const std::string& s) {
  if (s == "fluid") return Scheme::fluid;
  if (s == "A" || s == "a") return Scheme::a;
  if (s == "B" || s == "b") return Scheme::b;
  throw ConfigError("scheme must be one of fluid, A, B (got `" + s + "`)");
}

DampingKind parse_damping(const std::string& s) {
  if (s == "constant") return DampingKind::constant;
  if (s == "quadratic") return DampingKind::quadratic;
  throw ConfigError("damping must be constant or quadratic (got `" + s + "`)");
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::fluid: return "fluid";
    case Scheme::a: return "A";
    case Scheme::b: return "B";
  }
  return "?";
}

void check_margins(const Rect& domain, const Rect& box, double thickness) {
  const double scale = std::max({1.0, std::abs(domain.x1 - domain.x0),
                                 std::abs(domain.y1 - domain.y0)});
  const double tol = 1e-9 * scale;
  if (std::abs(box.x0 - domain.x0 - thickness) > tol ||
      std::abs(domain.x1 - box.x1 - thickness) > tol ||
      std::abs(box.y0 - domain.y0 - thickness) > tol ||
      std::abs(domain.y1 - box.y1 - thickness) > tol) {
    throw ConfigError("geometry: the physical box must sit inside the domain with margin "
                      "exactly pml_thickness on all four sides");
  }
}

void read_source(KeyReader& keys, RickerSpec& source, bool& center_given, const Rect& fallback) {
  if (keys.has("source_center")) {
    const auto c = keys.get_doubles("source_center");
    if (c.size() != 2) throw ConfigError("key `source_center`: expected `x y`");
    source.cx = c[0];
    source.cy = c[1];
    center_given = true;
  } else {
    source.cx = 0.5 * (fallback.x0 + fallback.x1);
    source.cy = 0.5 * (fallback.y0 + fallback.y1);
    center_given = false;
  }
  source.f0 = keys.get_double_or("source_f0", 1.0);
  source.ratio = keys.get_double_or("source_ratio", 0.5);
  source.amplitude = keys.get_double_or("source_amplitude", 1.0);
  if (!(source.f0 > 0.0) || !(source.ratio > 0.0)) {
    throw ConfigError("source_f0 and source_ratio must be positive");
  }
}

}  // namespace

DampingProfile RunConfig::profile() const {
  if (!box) return zero_profile();
  return make_profile(damping, sigma, *box, pml_thickness);
}

double RunConfig::wave_speed() const { return std::sqrt(mu / rho); }

RunConfig parse_run_config(const std::string& text) {
  KeyReader keys(tokenize(text));
  RunConfig c;
  c.scheme = parse_scheme(keys.get_or("scheme", "B"));
  c.r = keys.get_int_or("r", 1);
  if (c.r < 1) throw ConfigError("r must be a positive integer");
  c.domain = keys.get_rect("domain");
  if (!(c.domain.width() > 0.0) || !(c.domain.height() > 0.0)) {
    throw ConfigError("domain is empty or inverted");
  }
  if (keys.has("box") != keys.has("pml_thickness")) {
    throw ConfigError("box and pml_thickness must be given together");
  }
  if (keys.has("box")) {
    c.box = keys.get_rect("box");
    c.pml_thickness = keys.get_double("pml_thickness");
    if (!(c.pml_thickness > 0.0)) throw ConfigError("pml_thickness must be positive");
    check_margins(c.domain, *c.box, c.pml_thickness);
    c.damping = parse_damping(keys.get_or("damping", "constant"));
    c.sigma = keys.get_double("sigma");
    if (c.sigma < 0.0) throw ConfigError("sigma must be nonnegative");
  }
  c.mu = keys.get_double_or("mu", 1.0);
  c.rho = keys.get_double_or("rho", 1.0);
  if (!(c.mu > 0.0) || !(c.rho > 0.0)) throw ConfigError("mu and rho must be positive");
  c.h = keys.get_double("h");
  if (!(c.h > 0.0)) throw ConfigError("h must be positive");
  c.dt = keys.get_double("dt");
  if (!(c.dt > 0.0)) throw ConfigError("dt must be positive");
  if (keys.has("steps") == keys.has("t_final")) {
    throw ConfigError("exactly one of steps or t_final is required");
  }
  c.steps = keys.has("steps") ? keys.get_int("steps")
                              : static_cast<int>(std::lround(keys.get_double("t_final") / c.dt));
  if (c.steps < 1) throw ConfigError("steps must be at least 1");
  read_source(keys, c.source, c.source_center_given, c.box ? *c.box : c.domain);
  c.snapshot_stride = keys.get_int_or("snapshot_stride", 0);
  if (c.snapshot_stride < 0) throw ConfigError("snapshot_stride must be nonnegative");
  if (keys.has("snapshot_fields")) {
    std::istringstream in(keys.get("snapshot_fields"));
    c.snapshot_fields.clear();
    std::string tok;
    while (in >> tok) {
      if (tok != "P" && tok != "Pstar") throw ConfigError("snapshot_fields: unknown field `" + tok + "`");
      c.snapshot_fields.push_back(tok);
    }
  }
  c.blowup_threshold = keys.get_double_or("blowup_threshold", 10.0);
  c.blowup_window = keys.get_int_or("blowup_window", 50);
  keys.reject_unknown();
  return c;
}

SweepConfig parse_sweep_config(const std::string& text) {
  KeyReader keys(tokenize(text));
  SweepConfig c;
  c.scheme = parse_scheme(keys.get_or("scheme", "B"));
  c.r = keys.get_int_or("r", 1);
  c.damping = parse_damping(keys.get_or("damping", "constant"));
  c.domain = keys.get_rect("domain");
  c.box = keys.get_rect("box");
  c.pml_thickness = keys.get_double("pml_thickness");
  check_margins(c.domain, c.box, c.pml_thickness);
  c.mu = keys.get_double_or("mu", 1.0);
  c.rho = keys.get_double_or("rho", 1.0);
  c.h_list = keys.get_doubles("h_list");
  c.sigma_list = keys.get_doubles("sigma_list");
  c.probe_steps = keys.get_int_or("probe_steps", 1000);
  read_source(keys, c.source, c.source_center_given, c.box);
  keys.reject_unknown();
  return c;
}

EigConfig parse_eig_config(const std::string& text) {
  KeyReader keys(tokenize(text));
  EigConfig c;
  c.domain = keys.get_rect("domain");
  c.h = keys.get_double("h");
  c.r = keys.get_int_or("r", 1);
  c.mu = keys.get_double_or("mu", 1.0);
  c.rho = keys.get_double_or("rho", 1.0);
  if (keys.has("sigma")) c.sigma = keys.get_double("sigma");
  keys.reject_unknown();
  return c;
}

CornerConfig parse_corner_config(const std::string& text) {
  KeyReader keys(tokenize(text));
  CornerConfig c;
  c.n = keys.get_int_or("n", 32);
  c.extent = keys.get_double_or("extent", 16.0);
  c.sigma = keys.get_double_or("sigma", 1.0);
  if (keys.has("dt")) c.dt = keys.get_double("dt");
  c.t_final = keys.get_double_or("t_final", 1.0);
  c.system = keys.get_or("system", "acoustic");
  if (c.system == "custom") {
    c.m = keys.get_int("m");
    c.ax = keys.get_doubles("ax");
    c.ay = keys.get_doubles("ay");
    if (c.ax.size() != static_cast<size_t>(c.m) * c.m ||
        c.ay.size() != static_cast<size_t>(c.m) * c.m) {
      throw ConfigError("ax and ay must each list m*m entries");
    }
  } else if (c.system != "acoustic") {
    throw ConfigError("system must be acoustic or custom");
  }
  c.init_component = keys.get_int_or("init_component", 0);
  if (keys.has("init_width")) c.init_width = keys.get_double("init_width");
  keys.reject_unknown();
  return c;
}

std::string serialize(const RunConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "scheme = " << scheme_name(c.scheme) << "\n";
  out << "r = " << c.r << "\n";
  out << "domain = " << c.domain.x0 << " " << c.domain.x1 << " " << c.domain.y0 << " "
      << c.domain.y1 << "\n";
  if (c.box) {
    out << "box = " << c.box->x0 << " " << c.box->x1 << " " << c.box->y0 << " " << c.box->y1
        << "\n";
    out << "pml_thickness = " << c.pml_thickness << "\n";
    out << "damping = " << (c.damping == DampingKind::quadratic ? "quadratic" : "constant")
        << "\n";
    out << "sigma = " << c.sigma << "\n";
  }
  out << "mu = " << c.mu << "\n";
  out << "rho = " << c.rho << "\n";
  out << "h = " << c.h << "\n";
  out << "dt = " << c.dt << "\n";
  out << "steps = " << c.steps << "\n";
  if (c.source_center_given) {
    out << "source_center = " << c.source.cx << " " << c.source.cy << "\n";
  }
  out << "source_f0 = " << c.source.f0 << "\n";
  out << "source_ratio = " << c.source.ratio << "\n";
  out << "source_amplitude = " << c.source.amplitude << "\n";
  out << "snapshot_stride = " << c.snapshot_stride << "\n";
  out << "snapshot_fields =";
  for (const auto& f : c.snapshot_fields) out << " " << f;
  out << "\n";
  out << "blowup_threshold = " << c.blowup_threshold << "\n";
  out << "blowup_window = " << c.blowup_window << "\n";
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace pml
