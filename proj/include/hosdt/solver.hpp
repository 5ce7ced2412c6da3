#ifndef HOSDT_SOLVER_HPP_
#define HOSDT_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "hosdt/grid.hpp"

namespace hosdt {

struct SolverConfig {
  int order = 5;                  // 1 or 5
  double speed = 1.0;             // F
  double tolerance = 1e-6;        // delta, mm
  int max_iterations = 100;       // one iteration = 2^d sweeps
  double narrowband_width = std::numeric_limits<double>::infinity();  // mm
  bool shift_correction = true;
  double epsilon = std::numeric_limits<double>::epsilon();

  // Throws Error on an invalid combination.
  void validate() const;
};

struct SolverReport {
  int iterations_run = 0;
  std::vector<double> error_history;  // E per iteration, mm
  bool converged = false;
  std::vector<double> shift_history;  // constant subtracted after each iteration
};

struct SolveResult {
  ScalarField field;
  SolverReport report;
};

// One byte per voxel, nonzero where the solver may write.
using BandMask = std::vector<std::uint8_t>;

// s * min(s * a, s * b): the argument closer to zero on the side of sign s.
constexpr double sgnmin(double a, double b, Sign s) {
  const double sv = value_of(s);
  return sv * (sv * a < sv * b ? sv * a : sv * b);
}

// s * max(s * candidate, epsilon).
constexpr double clamp_sign(double candidate, Sign s, double epsilon) {
  const double sv = value_of(s);
  return sv * (sv * candidate > epsilon ? sv * candidate : epsilon);
}

// Upwind quadratic solve for sum_l ((phi - q[l]) / h[l])^2 = 1 / F^2 over the
// causal subset of neighbors. `q` must be ordered so that s * q is ascending
// (`h` permuted alongside). Absent neighbors are s * inf and sort last.
//
// Throws "no upwind neighbor" when every entry is absent.
double solve_signed_quadratic(std::span<const double> q,
                              std::span<const double> h, double speed, Sign s);

// Sorts (q, h) by s * q, ties by smaller h, then calls
// solve_signed_quadratic. Both spans are permuted in place.
double solve_unsorted(std::span<double> q, std::span<double> h, double speed,
                      Sign s);

enum class Side { kLeft, kRight };

// Fifth order WENO estimate of the one-sided first derivative at the stencil
// center. Left: stencil holds offsets -3..+2 around x. Right: offsets -2..+3.
// Values are in ascending index order in both cases.
double weno5_one_sided(std::span<const double, 6> stencil, double h, Side side);

// sgnmin of the two axis neighbors, extrapolating out of the domain. An axis
// with a single sample has no neighbors and yields s * inf.
double upwind_neighbor_first_order(const ScalarField& phi,
                                   std::span<const std::ptrdiff_t> index,
                                   std::size_t axis, Sign s);

// sgnmin(phi - h phi_minus, phi + h phi_plus, s) with WENO5 one-sided
// derivatives. Same degenerate-axis behavior as the first order variant.
double upwind_neighbor_high_order(const ScalarField& phi,
                                  std::span<const std::ptrdiff_t> index,
                                  std::size_t axis, Sign s);

// Centers the embedding between the largest inside value and the smallest
// outside value. Returns the constant subtracted from every voxel.
// Throws "no interface" if either sign is missing.
double shift_correction(ScalarField& phi, const SignField& signs);

// Voxels with |phi0| <= width.
BandMask narrowband_mask(const ScalarField& phi0, double width);

// One Gauss-Seidel pass in the given direction (see sweep_orderings),
// updating banded voxels in place. Returns the summed absolute change.
double sweep_once(ScalarField& phi, const SignField& signs,
                  const SolverConfig& cfg, std::span<const int> ordering,
                  const BandMask& band);

// Full signed fast sweeping transform of a binary image.
SolveResult run(const BinaryGrid& image, const SolverConfig& cfg);

}  // namespace hosdt

#endif  // HOSDT_SOLVER_HPP_
