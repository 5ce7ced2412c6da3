#include "hosdt/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hosdt/init.hpp"

namespace hosdt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smoothness-indicator regularizer for the WENO weights, in units of the
// squared divided differences.
constexpr double kWenoRegularizer = 1e-6;

// Read-only view of one lattice line through a voxel. `pos` is the voxel's
// coordinate along the line; out-of-range offsets are linearly extrapolated.
struct Line {
  const double* start;  // element at coordinate 0
  std::ptrdiff_t stride;
  std::ptrdiff_t n;

  double at(std::ptrdiff_t j) const {
    if (j >= 0 && j < n) return start[j * stride];
    if (n < 2) throw Error("degenerate axis");
    const std::ptrdiff_t edge = j < 0 ? 0 : n - 1;
    const std::ptrdiff_t inner = j < 0 ? 1 : n - 2;
    const auto steps = static_cast<double>(j < 0 ? -j : j - (n - 1));
    const double e = start[edge * stride];
    return e + steps * (e - start[inner * stride]);
  }
};

Line line_through(const ScalarField& phi, std::size_t linear,
                  std::ptrdiff_t pos, std::size_t axis) {
  const auto stride = static_cast<std::ptrdiff_t>(phi.lattice.stride(axis));
  return Line{phi.values.data() + static_cast<std::ptrdiff_t>(linear) - pos * stride,
              stride, static_cast<std::ptrdiff_t>(phi.lattice.dim(axis))};
}

double first_order_q(const Line& line, std::ptrdiff_t pos, Sign s) {
  if (line.n < 2) return value_of(s) * kInf;
  return sgnmin(line.at(pos - 1), line.at(pos + 1), s);
}

double high_order_q(const Line& line, std::ptrdiff_t pos, double h, Sign s) {
  if (line.n < 2) return value_of(s) * kInf;
  std::array<double, 7> v{};
  if (pos >= 3 && pos + 3 < line.n) {
    const double* p = line.start + (pos - 3) * line.stride;
    for (std::size_t k = 0; k < 7; ++k) {
      v[k] = p[static_cast<std::ptrdiff_t>(k) * line.stride];
    }
  } else {
    for (std::size_t k = 0; k < 7; ++k) {
      v[k] = line.at(pos - 3 + static_cast<std::ptrdiff_t>(k));
    }
  }
  const double minus = weno5_one_sided(std::span<const double, 6>(v.data(), 6), h, Side::kLeft);
  const double plus = weno5_one_sided(std::span<const double, 6>(v.data() + 1, 6), h, Side::kRight);
  return sgnmin(v[3] - h * minus, v[3] + h * plus, s);
}

void check_index(const ScalarField& phi, std::span<const std::ptrdiff_t> index,
                 std::size_t axis) {
  if (index.size() != phi.lattice.ndim()) throw Error("index rank mismatch");
  if (!phi.lattice.contains(index)) throw Error("index outside domain");
  if (axis >= phi.lattice.ndim()) throw Error("axis out of range");
}

}  // namespace

void SolverConfig::validate() const {
  if (order != 1 && order != 5) throw Error("order must be 1 or 5");
  if (!(speed > 0.0) || !std::isfinite(speed)) throw Error("speed must be positive");
  if (!(tolerance > 0.0)) throw Error("tolerance must be positive");
  if (max_iterations < 0) throw Error("max_iterations must be non-negative");
  if (!(narrowband_width > 0.0)) throw Error("narrowband width must be positive");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error("epsilon must be positive");
}

double solve_signed_quadratic(std::span<const double> q, std::span<const double> h,
                              double speed, Sign s) {
  if (q.size() != h.size()) throw Error("q/h length mismatch");
  const double sv = value_of(s);
  for (std::size_t l = 0; l < q.size(); ++l) {
    if (std::isnan(q[l]) || sv * q[l] == -kInf) throw Error("invalid upwind value");
    if (l > 0 && sv * q[l] < sv * q[l - 1]) throw Error("upwind values not sorted");
  }
  if (q.empty() || sv * q[0] == kInf) throw Error("no upwind neighbor");

  // The quadratic is assembled in phi - q[0] to keep the coefficients small;
  // the roots are shifted back afterwards.
  const double origin = q[0];
  double phi = sv * kInf;
  double a = 0.0;
  double b = 0.0;
  double c = -1.0 / (speed * speed);
  for (std::size_t l = 0; l < q.size(); ++l) {
    if (sv * phi < sv * q[l]) break;
    const double inv_h2 = 1.0 / (h[l] * h[l]);
    const double dq = q[l] - origin;
    a += inv_h2;
    b -= 2.0 * dq * inv_h2;
    c += dq * dq * inv_h2;
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
      // Ties at the causality boundary give a double root; allow rounding.
      if (disc < -1e-12 * (b * b + std::abs(4.0 * a * c))) {
        throw Error("inconsistent neighbors");
      }
      disc = 0.0;
    }
    const double root = std::sqrt(disc);
    const double r1 = (-b + root) / (2.0 * a);
    const double r2 = (-b - root) / (2.0 * a);
    phi = origin + sv * std::max(sv * r1, sv * r2);
  }
  return phi;
}

double solve_unsorted(std::span<double> q, std::span<double> h, double speed, Sign s) {
  if (q.size() != h.size()) throw Error("q/h length mismatch");
  const double sv = value_of(s);
  // n <= kMaxDims, insertion sort.
  for (std::size_t i = 1; i < q.size(); ++i) {
    const double qi = q[i];
    const double hi = h[i];
    std::size_t j = i;
    while (j > 0 && (sv * q[j - 1] > sv * qi || (sv * q[j - 1] == sv * qi && h[j - 1] > hi))) {
      q[j] = q[j - 1];
      h[j] = h[j - 1];
      --j;
    }
    q[j] = qi;
    h[j] = hi;
  }
  return solve_signed_quadratic(q, h, speed, s);
}

double weno5_one_sided(std::span<const double, 6> st, double h, Side side) {
  std::array<double, 5> d{};
  for (std::size_t k = 0; k < 5; ++k) d[k] = (st[k + 1] - st[k]) / h;
  if (side == Side::kRight) std::reverse(d.begin(), d.end());
  const double v1 = d[0], v2 = d[1], v3 = d[2], v4 = d[3], v5 = d[4];

  // Third order candidates on the three substencils.
  const double p1 = v1 / 3.0 - 7.0 * v2 / 6.0 + 11.0 * v3 / 6.0;
  const double p2 = -v2 / 6.0 + 5.0 * v3 / 6.0 + v4 / 3.0;
  const double p3 = v3 / 3.0 + 5.0 * v4 / 6.0 - v5 / 6.0;

  auto sq = [](double x) { return x * x; };
  const double s1 = 13.0 / 12.0 * sq(v1 - 2.0 * v2 + v3) + 0.25 * sq(v1 - 4.0 * v2 + 3.0 * v3);
  const double s2 = 13.0 / 12.0 * sq(v2 - 2.0 * v3 + v4) + 0.25 * sq(v2 - v4);
  const double s3 = 13.0 / 12.0 * sq(v3 - 2.0 * v4 + v5) + 0.25 * sq(3.0 * v3 - 4.0 * v4 + v5);

  const double a1 = 0.1 / sq(s1 + kWenoRegularizer);
  const double a2 = 0.6 / sq(s2 + kWenoRegularizer);
  const double a3 = 0.3 / sq(s3 + kWenoRegularizer);
  return (a1 * p1 + a2 * p2 + a3 * p3) / (a1 + a2 + a3);
}

double upwind_neighbor_first_order(const ScalarField& phi,
                                   std::span<const std::ptrdiff_t> index,
                                   std::size_t axis, Sign s) {
  check_index(phi, index, axis);
  const std::size_t lin = phi.lattice.linear(index);
  return first_order_q(line_through(phi, lin, index[axis], axis), index[axis], s);
}

double upwind_neighbor_high_order(const ScalarField& phi,
                                  std::span<const std::ptrdiff_t> index,
                                  std::size_t axis, Sign s) {
  check_index(phi, index, axis);
  const std::size_t lin = phi.lattice.linear(index);
  return high_order_q(line_through(phi, lin, index[axis], axis), index[axis],
                      phi.lattice.spacing(axis), s);
}

double shift_correction(ScalarField& phi, const SignField& signs) {
  if (signs.signs.size() != phi.values.size()) throw Error("sign/field size mismatch");
  double lower = -kInf;  // max over inside voxels
  double upper = kInf;   // min over outside voxels
  bool any_inside = false;
  bool any_outside = false;
  for (std::size_t i = 0; i < phi.values.size(); ++i) {
    if (signs.signs[i] == Sign::kNegative) {
      lower = std::max(lower, phi.values[i]);
      any_inside = true;
    } else {
      upper = std::min(upper, phi.values[i]);
      any_outside = true;
    }
  }
  if (!any_inside || !any_outside) throw Error("no interface");
  const double shift = 0.5 * (lower + upper);
  for (double& v : phi.values) v -= shift;
  return shift;
}

BandMask narrowband_mask(const ScalarField& phi0, double width) {
  BandMask band(phi0.values.size());
  for (std::size_t i = 0; i < band.size(); ++i) {
    band[i] = std::abs(phi0.values[i]) <= width ? 1 : 0;
  }
  return band;
}

double sweep_once(ScalarField& phi, const SignField& signs, const SolverConfig& cfg,
                  std::span<const int> ordering, const BandMask& band) {
  cfg.validate();
  const Lattice& lat = phi.lattice;
  const std::size_t nd = lat.ndim();
  if (ordering.size() != nd) throw Error("ordering rank mismatch");
  if (signs.signs.size() != lat.size() || band.size() != lat.size()) {
    throw Error("sign/band size mismatch");
  }

  std::array<std::ptrdiff_t, kMaxDims> idx{};
  std::array<std::ptrdiff_t, kMaxDims> step{};
  std::array<std::ptrdiff_t, kMaxDims> extent{};
  std::ptrdiff_t lin = 0;
  for (std::size_t a = 0; a < nd; ++a) {
    extent[a] = static_cast<std::ptrdiff_t>(lat.dim(a));
    step[a] = ordering[a] >= 0 ? 1 : -1;
    idx[a] = step[a] > 0 ? 0 : extent[a] - 1;
    lin += idx[a] * static_cast<std::ptrdiff_t>(lat.stride(a));
  }

  std::array<double, kMaxDims> q{};
  std::array<double, kMaxDims> h{};
  double change = 0.0;
  for (std::size_t visited = 0; visited < lat.size(); ++visited) {
    const auto at = static_cast<std::size_t>(lin);
    if (band[at]) {
      const Sign s = signs.signs[at];
      for (std::size_t a = 0; a < nd; ++a) {
        const Line line = line_through(phi, at, idx[a], a);
        h[a] = lat.spacing(a);
        q[a] = cfg.order == 1 ? first_order_q(line, idx[a], s)
                              : high_order_q(line, idx[a], h[a], s);
      }
      const double candidate =
          solve_unsorted(std::span(q.data(), nd), std::span(h.data(), nd), cfg.speed, s);
      const double old = phi.values[at];
      const double accepted = cfg.order == 1 ? sgnmin(old, candidate, s) : candidate;
      const double updated = clamp_sign(accepted, s, cfg.epsilon);
      phi.values[at] = updated;
      change += std::abs(updated - old);
    }
    // Odometer step, last axis fastest.
    for (std::size_t a = nd; a-- > 0;) {
      const auto stride = static_cast<std::ptrdiff_t>(lat.stride(a));
      idx[a] += step[a];
      lin += step[a] * stride;
      if (idx[a] >= 0 && idx[a] < extent[a]) break;
      idx[a] -= step[a] * extent[a];
      lin -= step[a] * extent[a] * stride;
    }
  }
  return change;
}

SolveResult run(const BinaryGrid& image, const SolverConfig& cfg) {
  cfg.validate();
  if (!image.has_both_phases()) throw Error("no interface");

  SolveResult result{averaged_init(image), {}};
  ScalarField& phi = result.field;
  SolverReport& report = result.report;
  const SignField signs = sign_field(image);
  const BandMask band = narrowband_mask(phi, cfg.narrowband_width);
  const auto banded = static_cast<double>(std::count(band.begin(), band.end(), 1));
  const auto orderings = sweep_orderings(image.lattice.ndim());

  for (int it = 0; it < cfg.max_iterations; ++it) {
    double total = 0.0;
    for (const auto& ordering : orderings) {
      total += sweep_once(phi, signs, cfg, ordering, band);
    }
    const double error =
        banded > 0 ? total / (static_cast<double>(orderings.size()) * banded) : 0.0;
    report.error_history.push_back(error);
    report.iterations_run = it + 1;
    if (cfg.shift_correction) {
      report.shift_history.push_back(shift_correction(phi, signs));
    }
    if (error < cfg.tolerance) {
      report.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace hosdt
