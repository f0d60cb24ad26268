#include "pmlwave/run.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "pmlwave/corner.hpp"
#include "pmlwave/snapshot.hpp"

namespace pml {

namespace {

std::string verdict_name(StabilityVerdict::Kind kind) {
  switch (kind) {
    case StabilityVerdict::Kind::stable: return "stable";
    case StabilityVerdict::Kind::unstable: return "unstable";
    case StabilityVerdict::Kind::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string snapshot_name(const std::string& field, int step) {
  std::ostringstream name;
  name << "snapshot_" << field << "_" << std::setw(6) << std::setfill('0') << step << ".txt";
  return name.str();
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out.precision(17);
  return out;
}

}  // namespace

AssembledOperators assemble_for(const RunConfig& config) {
  const Mesh mesh = build_mesh(config.domain, config.h);
  const QuadratureRule rule = gll_rule(config.r);
  const DofMaps dofs = build_spaces(mesh, rule);
  const DampingProfile profile = config.profile();
  const double mu = config.mu;
  const double rho = config.rho;
  return assemble(
      mesh, dofs, rule, [mu](double, double) { return mu; }, [rho](double, double) { return rho; },
      [profile](double x) { return profile.sigma_x(x); },
      [profile](double y) { return profile.sigma_y(y); });
}

int run_experiment(const RunConfig& config, const std::string& out_dir, std::ostream& log) {
  const AssembledOperators ops = assemble_for(config);
  std::ofstream run_log = open_output(out_dir, "run_log.txt");
  run_log << "# step time max_norm e0\n";

  RunOptions options;
  options.max_steps = config.steps;
  options.blowup_threshold = config.blowup_threshold;
  options.blowup_window = config.blowup_window;
  options.on_step = [&](const SimState& state) {
    const double t = state.step * config.dt;
    run_log << state.step << " " << t << " " << max_abs(state.p_curr) << " "
            << energy_order0(ops, state) << "\n";
    if (config.snapshot_stride > 0 && state.step % config.snapshot_stride == 0) {
      for (const std::string& field : config.snapshot_fields) {
        const auto& values = field == "Pstar" ? state.pstar_curr : state.p_curr;
        write_snapshot(out_dir + "/" + snapshot_name(field, state.step), ops, values, field,
                       state.step, t);
      }
    }
  };

  const RunResult result = run_simulation(ops, config.scheme, config.dt, config.source, options);
  std::ofstream verdict = open_output(out_dir, "verdict.txt");
  verdict << verdict_name(result.verdict.verdict) << " steps_run " << result.series.steps_run()
          << " growth_rate " << result.verdict.growth_rate << "\n";
  log << "verdict: " << verdict_name(result.verdict.verdict) << " after "
      << result.series.steps_run() << " steps\n";
  return result.verdict.verdict == StabilityVerdict::Kind::unstable ? kExitBlowup : kExitStable;
}

int sweep_experiment(const SweepConfig& config, const std::string& out_dir, std::ostream& log) {
  std::ofstream table = open_output(out_dir, "sweep.txt");
  table << "# h sigma scheme r dt_empirical dt_theoretical dt_spectral\n";
  const char* scheme_label = config.scheme == Scheme::a ? "A"
                             : config.scheme == Scheme::b ? "B"
                                                          : "fluid";
  for (const double h : config.h_list) {
    for (const double sigma : config.sigma_list) {
      RunConfig probe;
      probe.scheme = config.scheme;
      probe.r = config.r;
      probe.domain = config.domain;
      probe.box = config.box;
      probe.pml_thickness = config.pml_thickness;
      probe.damping = config.damping;
      probe.sigma = sigma;
      probe.mu = config.mu;
      probe.rho = config.rho;
      probe.h = h;
      probe.dt = 1.0;  // placeholder; probes vary dt over one assembly
      probe.steps = 1;
      probe.source = config.source;
      if (!config.source_center_given) {
        probe.source.cx = 0.5 * (config.box.x0 + config.box.x1);
        probe.source.cy = 0.5 * (config.box.y0 + config.box.y1);
      }
      const AssembledOperators ops = assemble_for(probe);
      const double c = probe.wave_speed();

      EmpiricalConfig empirical;
      empirical.source = probe.source;
      empirical.probe_steps = config.probe_steps;
      empirical.c = c;
      const CflReport report = cfl_report(ops, config.scheme, c, sigma, &empirical);

      table << h << " " << sigma << " " << scheme_label << " " << config.r << " "
            << *report.dt_empirical << " "
            << (report.dt_theoretical ? *report.dt_theoretical : 0.0) << " "
            << report.dt_spectral << std::endl;  // flush row-by-row
      log << "sweep point h=" << h << " sigma=" << sigma
          << " dt_empirical=" << *report.dt_empirical << "\n";
    }
  }
  return kExitStable;
}

int eig_experiment(const EigConfig& config, const std::string& out_dir, std::ostream& log) {
  RunConfig fluid;
  fluid.domain = config.domain;
  fluid.h = config.h;
  fluid.r = config.r;
  fluid.mu = config.mu;
  fluid.rho = config.rho;
  const AssembledOperators ops = assemble_for(fluid);
  const double lambda = lambda_max(ops);
  const double mu = mu_max(ops);

  std::ofstream out = open_output(out_dir, "eig.txt");
  const auto emit = [&](const std::string& key, double value) {
    out << key << " " << value << "\n";
    log << key << " " << value << "\n";
  };
  emit("lambda_max", lambda);
  emit("mu_max", mu);
  emit("dt_fluid_spectral", 2.0 / std::sqrt(lambda));
  emit("dt_corner_b_spectral", 2.0 / std::sqrt(mu));
  try {
    emit("dt_fluid_theoretical", cfl_fluid_theoretical(config.r, std::sqrt(config.mu / config.rho),
                                                       ops.mesh.hx));
  } catch (const std::invalid_argument&) {
    out << "dt_fluid_theoretical untabulated\n";
    log << "dt_fluid_theoretical untabulated (use the spectral bound)\n";
  }
  if (config.sigma) {
    emit("dt_corner_a_spectral", 2.0 / std::sqrt(lambda + *config.sigma * *config.sigma));
  }
  return kExitStable;
}

int corner_experiment(const CornerConfig& config, const std::string& out_dir, std::ostream& log) {
  const CornerSystem system = config.system == "acoustic"
                                  ? acoustic_corner_system(config.sigma)
                                  : CornerSystem{config.m, config.ax, config.ay, config.sigma};
  const CornerGrid grid{config.n, config.extent};
  const double dt = config.dt ? *config.dt : 0.5 * corner_cfl(system, grid);
  const double width = config.init_width ? *config.init_width : config.extent / 8.0;
  const std::vector<double> u0 = gaussian_initial(system, grid, config.init_component, width);

  const CornerRun run = simulate_corner(system, grid, u0, dt, config.t_final);
  std::ofstream out = open_output(out_dir, "corner_decay.txt");
  out << "# t norm\n";
  for (size_t i = 0; i < run.series.t.size(); ++i) {
    out << run.series.t[i] << " " << run.series.norm[i] << "\n";
  }
  const bool bounded = strong_stability_check(run.series, 1.0 + 1e-9);
  out << "# strongly_stable " << (bounded ? 1 : 0) << "\n";
  log << "corner decay: " << run.series.norm.size() << " records, strongly_stable="
      << (bounded ? 1 : 0) << "\n";
  return kExitStable;
}

}  // namespace pml
