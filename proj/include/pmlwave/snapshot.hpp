#pragma once

#include <string>

#include "pmlwave/assembly.hpp"

namespace pml {

/// Delimited-text nodal field with a small header. Non-finite or overlarge
/// values are clamped to +-1e30 and flagged, so a blow-up snapshot stays
/// machine-readable.
struct Snapshot {
  std::string field;
  int step = 0;
  double time = 0.0;
  int nx = 0, ny = 0;  // nodal grid dimensions
  int r = 1;
  double hx = 0.0, hy = 0.0;
  double origin_x = 0.0, origin_y = 0.0;
  bool overflow = false;
  std::vector<double> values;  // row-major, ny rows of nx values
};

void write_snapshot(const std::string& path, const AssembledOperators& ops,
                    std::span<const double> field, const std::string& name, int step,
                    double time);

Snapshot read_snapshot(const std::string& path);

}  // namespace pml
