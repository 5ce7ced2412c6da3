#include "hosdt/studies.hpp"

#include <cmath>
#include <limits>

#include "hosdt/init.hpp"
#include "hosdt/io.hpp"

namespace hosdt {

Lattice cubic_lattice(double extent, double h, std::size_t ndim) {
  if (!(extent > 0.0) || !(h > 0.0)) throw Error("extent and spacing must be positive");
  // Guard against 100 / 0.1 = 1000.0000000000001 style rounding.
  const auto n = static_cast<std::size_t>(std::ceil(extent / h - 1e-9));
  return Lattice(std::vector<std::size_t>(ndim, std::max<std::size_t>(n, 1)),
                 std::vector<double>(ndim, h));
}

SphereCase solve_sphere(const SphereSetup& setup, const SolverConfig& cfg) {
  const Lattice lat = cubic_lattice(setup.extent, setup.h);
  const std::vector<double> center(3, setup.extent / 2.0);
  ScalarField analytic = analytic_sphere(lat, center, setup.radius);
  BinaryGrid image = binarize(analytic);
  ScalarField init = averaged_init(image);
  SolveResult solved = run(image, cfg);
  return SphereCase{setup, std::move(analytic), std::move(image), std::move(init),
                    std::move(solved)};
}

SpacingOutcome evaluate_sphere(const SphereCase& sc, double band) {
  SpacingOutcome out;
  out.h = sc.setup.h;
  out.iterations = sc.solved.report.iterations_run;
  out.error_history = sc.solved.report.error_history;
  out.init = error_norms(sc.init, sc.analytic, band);
  out.raw = error_norms(sc.solved.field, sc.analytic, band);
  const ShiftedField shifted = minimize_l1_shift(sc.solved.field, sc.analytic, band);
  out.corrected = error_norms(shifted.field, sc.analytic, band);
  out.l1_shift = shifted.shift;
  const double exclusion = 2.0 * sc.setup.h;
  // Coarse grids can leave nothing after the margin and shock exclusion.
  try {
    out.residual_init = eikonal_residual_stats(sc.init, band, exclusion);
    out.residual_solved = eikonal_residual_stats(sc.solved.field, band, exclusion);
  } catch (const Error&) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.residual_init = out.residual_solved = ResidualStats{nan, nan, 0};
  }
  return out;
}

OrderStudy run_order_study(const OrderStudyOptions& opts) {
  OrderStudy study;
  for (double h : opts.spacings) {
    const SphereCase sc = solve_sphere({opts.extent, opts.radius, h}, opts.solver);
    study.outcomes.push_back(evaluate_sphere(sc, opts.band));
  }
  for (bool corrected : {false, true}) {
    for (std::size_t k = 0; k < study.outcomes.size(); ++k) {
      const SpacingOutcome& o = study.outcomes[k];
      const ErrorNorms& n = corrected ? o.corrected : o.raw;
      StudyRecord r{.h = o.h,
                    .l1 = n.l1,
                    .order_l1 = std::nullopt,
                    .linf = n.linf,
                    .order_linf = std::nullopt,
                    .corrected = corrected,
                    .iterations = o.iterations,
                    .band = opts.band};
      if (k > 0) {
        const ErrorNorms& prev = corrected ? study.outcomes[k - 1].corrected
                                           : study.outcomes[k - 1].raw;
        if (prev.l1 > 0.0 && n.l1 > 0.0) r.order_l1 = order_estimate(prev.l1, n.l1);
        if (prev.linf > 0.0 && n.linf > 0.0) r.order_linf = order_estimate(prev.linf, n.linf);
      }
      study.records.push_back(r);
    }
  }
  return study;
}

std::vector<ConvergenceRow> run_convergence_study(const ConvergenceOptions& opts) {
  SolverConfig cfg = opts.solver;
  cfg.tolerance = std::numeric_limits<double>::denorm_min();
  std::vector<ConvergenceRow> rows;
  for (double h : opts.spacings) {
    const SphereCase sc = solve_sphere({opts.extent, opts.radius, h}, cfg);
    const auto& history = sc.solved.report.error_history;
    for (std::size_t i = 0; i < history.size(); ++i) {
      rows.push_back({h, static_cast<int>(i + 1), history[i]});
    }
  }
  return rows;
}

std::string format_convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "h,iteration,error\n";
  for (const auto& r : rows) {
    out += format_decimal(r.h) + "," + std::to_string(r.iteration) + "," +
           format_decimal(r.error) + "\n";
  }
  return out;
}

NoiseStudy run_noise_study(const NoiseStudyOptions& opts) {
  const Lattice lat = cubic_lattice(opts.extent, opts.h);
  const std::vector<double> center(3, opts.extent / 2.0);
  NoiseStudy study;
  const ScalarField analytic = analytic_sphere(lat, center, opts.radius);
  study.fields.push_back({"analytic", analytic});
  for (int m : opts.noise_orders) {
    study.fields.push_back({"noise_m" + std::to_string(m), add_order_m_noise(analytic, m, opts.h)});
  }
  const BinaryGrid image = binarize(analytic);
  study.fields.push_back({"exact", averaged_init(image)});
  study.fields.push_back({"converged", run(image, opts.solver).field});
  for (const auto& f : study.fields) {
    study.norms.emplace_back(f.name, error_norms(f.field, analytic, opts.band));
  }
  return study;
}

std::string format_noise_csv(const NoiseStudy& study) {
  std::string out = "field,l1,linf\n";
  for (const auto& [name, n] : study.norms) {
    out += name + "," + format_decimal(n.l1) + "," + format_decimal(n.linf) + "\n";
  }
  return out;
}

}  // namespace hosdt
