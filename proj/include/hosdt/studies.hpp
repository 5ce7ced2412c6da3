#ifndef HOSDT_STUDIES_HPP_
#define HOSDT_STUDIES_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "hosdt/eval.hpp"
#include "hosdt/solver.hpp"

namespace hosdt {

// Cubic lattice of the given physical extent: ceil(extent / h) samples per
// axis, voxel i at i * h.
Lattice cubic_lattice(double extent, double h, std::size_t ndim = 3);

struct SphereSetup {
  double extent = 100.0;  // mm
  double radius = 25.0;   // mm
  double h = 4.0;         // mm
};

// Ground truth, its binarization, the averaged exact initialization and the
// solver output for one sphere.
struct SphereCase {
  SphereSetup setup;
  ScalarField analytic;
  BinaryGrid image;
  ScalarField init;
  SolveResult solved;
};

SphereCase solve_sphere(const SphereSetup& setup, const SolverConfig& cfg);

struct SpacingOutcome {
  double h = 0.0;
  int iterations = 0;
  ErrorNorms init;       // averaged exact initialization vs analytic
  ErrorNorms raw;        // solver output vs analytic
  ErrorNorms corrected;  // after the l1-minimizing shift
  double l1_shift = 0.0;
  // count 0 and NaN statistics when the grid is too coarse to measure
  ResidualStats residual_init;
  ResidualStats residual_solved;
  std::vector<double> error_history;
};

struct OrderStudyOptions {
  std::vector<double> spacings{8.0, 4.0, 2.0, 1.0};
  double extent = 100.0;
  double radius = 25.0;
  double band = 15.0;
  SolverConfig solver{.narrowband_width = 15.0};
};

struct OrderStudy {
  std::vector<SpacingOutcome> outcomes;
  std::vector<StudyRecord> records;  // uncorrected rows, then corrected rows
};

OrderStudy run_order_study(const OrderStudyOptions& opts);

SpacingOutcome evaluate_sphere(const SphereCase& sc, double band);

struct ConvergenceOptions {
  std::vector<double> spacings{4.0, 2.0, 1.0};
  double extent = 100.0;
  double radius = 25.0;
  // Tolerance is forced to the smallest positive double so every run does
  // exactly max_iterations iterations unless the error is exactly zero.
  SolverConfig solver{.narrowband_width = 15.0};
};

struct ConvergenceRow {
  double h = 0.0;
  int iteration = 0;  // 1-based
  double error = 0.0;
};

std::vector<ConvergenceRow> run_convergence_study(const ConvergenceOptions& opts);
std::string format_convergence_csv(const std::vector<ConvergenceRow>& rows);

struct NoiseStudyOptions {
  double extent = 10.0;
  double radius = 2.5;
  double h = 0.1;
  double band = 1.5;  // mm; used for both solving and measuring
  std::vector<int> noise_orders{0, 1, 2, 3};
  SolverConfig solver{.narrowband_width = 1.5};
};

struct NamedField {
  std::string name;
  ScalarField field;
};

struct NoiseStudy {
  std::vector<NamedField> fields;  // analytic, noise_m*, exact, converged
  std::vector<std::pair<std::string, ErrorNorms>> norms;
};

NoiseStudy run_noise_study(const NoiseStudyOptions& opts);
std::string format_noise_csv(const NoiseStudy& study);

}  // namespace hosdt

#endif  // HOSDT_STUDIES_HPP_
