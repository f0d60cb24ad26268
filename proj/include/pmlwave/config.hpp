#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pmlwave/damping.hpp"
#include "pmlwave/solver.hpp"

namespace pml {

/// Raised for malformed or inconsistent configuration text; the CLI maps it
/// to the usage-error exit status.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One simulation. When a physical box is present the domain must exceed it
/// by exactly the PML thickness on all four sides.
struct RunConfig {
  Scheme scheme = Scheme::b;
  int r = 1;
  Rect domain;
  std::optional<Rect> box;  // absent: undamped run over the whole domain
  double pml_thickness = 0.0;
  DampingKind damping = DampingKind::constant;
  double sigma = 0.0;
  double mu = 1.0;
  double rho = 1.0;
  double h = 0.0;
  double dt = 0.0;
  int steps = 0;
  RickerSpec source;
  bool source_center_given = false;
  int snapshot_stride = 0;
  std::vector<std::string> snapshot_fields = {"P"};
  double blowup_threshold = 10.0;
  int blowup_window = 50;

  bool operator==(const RunConfig&) const = default;

  DampingProfile profile() const;
  double wave_speed() const;  // sqrt(mu/rho)
};

struct SweepConfig {
  Scheme scheme = Scheme::b;
  int r = 1;
  DampingKind damping = DampingKind::constant;
  Rect domain;
  Rect box;
  double pml_thickness = 0.0;
  double mu = 1.0;
  double rho = 1.0;
  std::vector<double> h_list;
  std::vector<double> sigma_list;
  int probe_steps = 1000;
  RickerSpec source;
  bool source_center_given = false;

  bool operator==(const SweepConfig&) const = default;
};

struct EigConfig {
  Rect domain;
  double h = 0.0;
  int r = 1;
  double mu = 1.0;
  double rho = 1.0;
  std::optional<double> sigma;  // adds the scheme-A corner bound to the output

  bool operator==(const EigConfig&) const = default;
};

struct CornerConfig {
  int n = 32;
  double extent = 16.0;
  double sigma = 1.0;
  std::optional<double> dt;  // absent: half the undamped CFL
  double t_final = 1.0;
  std::string system = "acoustic";  // or "custom" with m, ax, ay
  int m = 3;
  std::vector<double> ax, ay;
  int init_component = 0;
  std::optional<double> init_width;  // absent: extent / 8

  bool operator==(const CornerConfig&) const = default;
};

RunConfig parse_run_config(const std::string& text);
SweepConfig parse_sweep_config(const std::string& text);
EigConfig parse_eig_config(const std::string& text);
CornerConfig parse_corner_config(const std::string& text);

std::string serialize(const RunConfig& config);

std::string read_text_file(const std::string& path);

}  // namespace pml
