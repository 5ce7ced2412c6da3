// Test-only reference implementations. Nothing here shares code with the
// library paths they check.
#ifndef HOSDT_TESTS_ORACLES_HPP_
#define HOSDT_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "hosdt/grid.hpp"

namespace hosdt::testing {

// Integer lattice with spacing given as units of 1/4 mm, so squared distances
// scaled by 16 are exact int64 values.
struct QuarterLattice {
  std::vector<std::size_t> dims;
  std::vector<std::int64_t> quarters;  // spacing[a] = quarters[a] / 4

  Lattice lattice() const {
    std::vector<double> h;
    for (auto q : quarters) h.push_back(static_cast<double>(q) / 4.0);
    return Lattice(dims, h);
  }
};

// min over sites of 16 * |x - site|^2, by exhaustive search.
inline std::vector<std::int64_t> brute_force_edt16(const QuarterLattice& ql,
                                                   const std::vector<std::size_t>& sites) {
  const Lattice lat = ql.lattice();
  std::vector<Index> site_idx;
  for (auto s : sites) site_idx.push_back(lat.unravel(s));
  std::vector<std::int64_t> out(lat.size(), std::numeric_limits<std::int64_t>::max());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const Index x = lat.unravel(i);
    for (const Index& s : site_idx) {
      std::int64_t d2 = 0;
      for (std::size_t a = 0; a < x.size(); ++a) {
        const std::int64_t d = (x[a] - s[a]) * ql.quarters[a];
        d2 += d * d;
      }
      out[i] = std::min(out[i], d2);
    }
  }
  return out;
}

// Face-neighbor surface set by direct neighbor inspection.
inline std::vector<std::size_t> brute_force_surface(const BinaryGrid& image, std::uint8_t phase) {
  const Lattice& lat = image.lattice;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (image.labels[i] != phase) continue;
    Index x = lat.unravel(i);
    bool hit = false;
    for (std::size_t a = 0; a < x.size(); ++a) {
      for (int d : {-1, 1}) {
        Index y = x;
        y[a] += d;
        if (lat.contains(y) && image.labels[lat.linear(y)] != phase) hit = true;
      }
    }
    if (hit) out.push_back(i);
  }
  return out;
}

// Godunov solution of sum_l ((phi - q_l)^+_s / h_l)^2 = 1/F^2 by trying every
// count k of the k most-upwind neighbors and keeping the one whose root is
// consistent: upwind of the k-th value and not upwind of the (k+1)-th.
// Infinite entries (s * q = +inf) are absent neighbors.
inline std::optional<double> godunov_oracle(std::vector<double> q, std::vector<double> h,
                                            double speed, double s) {
  // Mirror to the positive problem p = s * q.
  std::vector<std::pair<double, double>> ph;
  for (std::size_t l = 0; l < q.size(); ++l) {
    if (std::isinf(q[l])) continue;
    ph.emplace_back(s * q[l], h[l]);
  }
  if (ph.empty()) return std::nullopt;
  std::sort(ph.begin(), ph.end());
  for (std::size_t k = 1; k <= ph.size(); ++k) {
    // sum_{l<k} (psi - p_l)^2 / h_l^2 = 1/F^2, expanded around p_0.
    double a = 0, b = 0, c = -1.0 / (speed * speed);
    for (std::size_t l = 0; l < k; ++l) {
      const double w = 1.0 / (ph[l].second * ph[l].second);
      const double dp = ph[l].first - ph[0].first;
      a += w;
      b += -2.0 * dp * w;
      c += dp * dp * w;
    }
    const double disc = b * b - 4 * a * c;
    if (disc < -1e-12) continue;
    const double psi = ph[0].first + (-b + std::sqrt(std::max(0.0, disc))) / (2 * a);
    const double tol = 1e-12 * std::max(1.0, std::abs(psi));
    const bool above_last = psi >= ph[k - 1].first - tol;
    const bool below_next = k == ph.size() || psi <= ph[k].first + tol;
    if (above_last && below_next) return s * psi;
  }
  return std::nullopt;
}

// Random binary image holding both phases, with up to `max_size` samples per
// axis. Mixes i.i.d. noise and random balls so both fragmented and smooth
// interfaces occur.
inline BinaryGrid random_image(std::mt19937_64& rng, std::size_t ndim, std::size_t min_size,
                               std::size_t max_size, bool anisotropic = true) {
  std::uniform_int_distribution<std::size_t> size_dist(min_size, max_size);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (true) {
    std::vector<std::size_t> dims(ndim);
    std::vector<double> spacing(ndim, 1.0);
    for (std::size_t a = 0; a < ndim; ++a) {
      dims[a] = size_dist(rng);
      if (anisotropic) spacing[a] = 0.25 * static_cast<double>(2 + rng() % 11);
    }
    BinaryGrid image(Lattice(dims, spacing));
    const Lattice& lat = image.lattice;
    if (unit(rng) < 0.5) {
      const double p = 0.1 + 0.8 * unit(rng);
      for (auto& v : image.labels) v = unit(rng) < p ? 1 : 0;
    } else {
      const int balls = 1 + static_cast<int>(rng() % 3);
      for (int b = 0; b < balls; ++b) {
        std::vector<double> c(ndim);
        for (std::size_t a = 0; a < ndim; ++a) c[a] = unit(rng) * static_cast<double>(dims[a]);
        const double r = 1.0 + unit(rng) * static_cast<double>(*std::max_element(dims.begin(), dims.end())) / 3.0;
        for (std::size_t i = 0; i < lat.size(); ++i) {
          const Index x = lat.unravel(i);
          double d2 = 0;
          for (std::size_t a = 0; a < ndim; ++a) d2 += (x[a] - c[a]) * (x[a] - c[a]);
          if (d2 <= r * r) image.labels[i] = 1;
        }
      }
    }
    if (image.has_both_phases()) return image;
  }
}

}  // namespace hosdt::testing

#endif  // HOSDT_TESTS_ORACLES_HPP_
