#pragma once

#include "pmlwave/assembly.hpp"

namespace pml {

enum class DampingKind { constant, quadratic, uniform };

enum class Region { fluid, x_layer, y_layer, corner };

/// Cartesian absorption profile: sigma_x depends on x only and sigma_y on y
/// only, both vanish inside the physical box and are nonnegative everywhere.
/// The quadratic kind ramps as sigma* (d/L)^2 with d the penetration depth,
/// so it is continuous at the inner boundary and reaches sigma* at depth L.
/// The uniform kind applies the amplitude everywhere (no physical box); it is
/// what the constant-coefficient energy identities assume.
struct DampingProfile {
  DampingKind kind = DampingKind::constant;
  double amplitude = 0.0;  // sigma (constant/uniform) or sigma* (quadratic)
  Rect physical_box;       // undamped region; ignored by the uniform kind
  double thickness = 0.0;  // layer width L

  double sigma_x(double x) const;
  double sigma_y(double y) const;
};

DampingProfile make_profile(DampingKind kind, double amplitude, const Rect& physical_box,
                            double thickness);
DampingProfile uniform_profile(double amplitude);
DampingProfile zero_profile();

Region classify_region(double x, double y, const DampingProfile& profile);

}  // namespace pml
