#include "pmlwave/damping.hpp"

#include <algorithm>
#include <stdexcept>

namespace pml {

namespace {

double ramp(DampingKind kind, double amplitude, double depth, double thickness) {
  if (depth <= 0.0) return 0.0;
  if (kind == DampingKind::constant) return amplitude;
  const double d = std::min(depth, thickness) / thickness;
  return amplitude * d * d;
}

}  // namespace

double DampingProfile::sigma_x(double x) const {
  if (kind == DampingKind::uniform) return amplitude;
  const double depth = std::max(physical_box.x0 - x, x - physical_box.x1);
  return ramp(kind, amplitude, depth, thickness);
}

double DampingProfile::sigma_y(double y) const {
  if (kind == DampingKind::uniform) return amplitude;
  const double depth = std::max(physical_box.y0 - y, y - physical_box.y1);
  return ramp(kind, amplitude, depth, thickness);
}

DampingProfile make_profile(DampingKind kind, double amplitude, const Rect& physical_box,
                            double thickness) {
  if (amplitude < 0.0) throw std::invalid_argument("make_profile: negative amplitude");
  if (kind != DampingKind::uniform && !(thickness > 0.0)) {
    throw std::invalid_argument("make_profile: thickness must be positive");
  }
  DampingProfile p;
  p.kind = kind;
  p.amplitude = amplitude;
  p.physical_box = physical_box;
  p.thickness = thickness;
  return p;
}

DampingProfile uniform_profile(double amplitude) {
  if (amplitude < 0.0) throw std::invalid_argument("uniform_profile: negative amplitude");
  DampingProfile p;
  p.kind = DampingKind::uniform;
  p.amplitude = amplitude;
  p.thickness = 1.0;
  return p;
}

DampingProfile zero_profile() {
  DampingProfile p;
  p.kind = DampingKind::uniform;
  p.amplitude = 0.0;
  p.thickness = 1.0;
  return p;
}

Region classify_region(double x, double y, const DampingProfile& profile) {
  const bool in_x = profile.sigma_x(x) > 0.0;
  const bool in_y = profile.sigma_y(y) > 0.0;
  if (in_x && in_y) return Region::corner;
  if (in_x) return Region::x_layer;
  if (in_y) return Region::y_layer;
  return Region::fluid;
}

}  // namespace pml
