#ifndef HOSDT_EVAL_HPP_
#define HOSDT_EVAL_HPP_

#include <optional>
#include <span>
#include <vector>

#include "hosdt/grid.hpp"

namespace hosdt {

// One row of an accuracy study.
struct StudyRecord {
  double h = 0.0;
  double l1 = 0.0;
  std::optional<double> order_l1;
  double linf = 0.0;
  std::optional<double> order_linf;
  bool corrected = false;
  int iterations = 0;
  double band = 0.0;

  friend bool operator==(const StudyRecord&, const StudyRecord&) = default;
};

struct ErrorNorms {
  double l1 = 0.0;    // mean absolute error over the band
  double linf = 0.0;  // max absolute error over the band
};

struct ShiftedField {
  ScalarField field;
  double shift = 0.0;
};

struct ResidualStats {
  double median = 0.0;
  double p95 = 0.0;
  std::size_t count = 0;
};

// Physical coordinate of voxel i along an axis is i * spacing.
ScalarField analytic_sphere(const Lattice& lattice, std::span<const double> center,
                            double radius);

// Foreground where phi < 0; phi == 0 is background.
BinaryGrid binarize(const ScalarField& phi);

// Norms of (computed - reference) over voxels with |reference| <= band.
// Throws "empty band".
ErrorNorms error_norms(const ScalarField& computed, const ScalarField& reference,
                       double band);

// Subtracts the median residual over the band (lower median for even
// counts), which minimizes the banded l1 error.
ShiftedField minimize_l1_shift(const ScalarField& computed,
                               const ScalarField& reference, double band);

// log2(norm_h / norm_half). Throws "exact solution" when norm_half is zero.
double order_estimate(double norm_h, double norm_half);

// phi + h^m sin(2 pi (x + y + z) / (10 h)) with physical coordinates and h
// the nominal sample period. 3-D only.
ScalarField add_order_m_noise(const ScalarField& phi, int m, double h);

// True iff phi < 0 exactly on the foreground of `image`.
bool recovery_check(const ScalarField& phi, const BinaryGrid& image);

// | |grad phi| - 1 | by central differences over voxels with |phi| <= band,
// skipping a 3-voxel margin at the domain boundary and every voxel within
// `exclusion` mm of a shock. Shocks are voxels whose |phi| is not exceeded by
// any face neighbor. Throws "empty residual set".
ResidualStats eikonal_residual_stats(const ScalarField& phi, double band,
                                     double exclusion);

}  // namespace hosdt

#endif  // HOSDT_EVAL_HPP_
