#include "hosdt/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hosdt {

namespace {

void require_same_lattice(const ScalarField& a, const ScalarField& b) {
  if (!(a.lattice == b.lattice)) throw Error("lattice mismatch");
}

// Value at rank k of the sorted sample (nth_element, sample reordered).
double ranked(std::vector<double>& sample, std::size_t k) {
  std::nth_element(sample.begin(), sample.begin() + static_cast<std::ptrdiff_t>(k),
                   sample.end());
  return sample[k];
}

}  // namespace

ScalarField analytic_sphere(const Lattice& lat, std::span<const double> center,
                            double radius) {
  if (!(radius > 0.0)) throw Error("radius must be positive");
  if (center.size() != lat.ndim()) throw Error("center rank mismatch");
  ScalarField phi(lat);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const Index idx = lat.unravel(i);
    double r2 = 0.0;
    for (std::size_t a = 0; a < lat.ndim(); ++a) {
      const double d = static_cast<double>(idx[a]) * lat.spacing(a) - center[a];
      r2 += d * d;
    }
    phi.values[i] = std::sqrt(r2) - radius;
  }
  return phi;
}

BinaryGrid binarize(const ScalarField& phi) {
  BinaryGrid image(phi.lattice);
  for (std::size_t i = 0; i < phi.values.size(); ++i) {
    image.labels[i] = phi.values[i] < 0.0 ? 1 : 0;
  }
  return image;
}

ErrorNorms error_norms(const ScalarField& computed, const ScalarField& reference,
                       double band) {
  require_same_lattice(computed, reference);
  ErrorNorms norms;
  std::size_t count = 0;
  for (std::size_t i = 0; i < computed.values.size(); ++i) {
    if (!(std::abs(reference.values[i]) <= band)) continue;
    const double e = std::abs(computed.values[i] - reference.values[i]);
    norms.l1 += e;
    norms.linf = std::max(norms.linf, e);
    ++count;
  }
  if (count == 0) throw Error("empty band");
  norms.l1 /= static_cast<double>(count);
  return norms;
}

ShiftedField minimize_l1_shift(const ScalarField& computed,
                               const ScalarField& reference, double band) {
  require_same_lattice(computed, reference);
  std::vector<double> residuals;
  for (std::size_t i = 0; i < computed.values.size(); ++i) {
    if (std::abs(reference.values[i]) <= band) {
      residuals.push_back(computed.values[i] - reference.values[i]);
    }
  }
  if (residuals.empty()) throw Error("empty band");
  const double shift = ranked(residuals, (residuals.size() - 1) / 2);
  ShiftedField out{computed, shift};
  for (double& v : out.field.values) v -= shift;
  return out;
}

double order_estimate(double norm_h, double norm_half) {
  if (norm_half == 0.0) throw Error("exact solution");
  if (!(norm_h > 0.0) || !(norm_half > 0.0)) throw Error("norms must be positive");
  return std::log2(norm_h / norm_half);
}

ScalarField add_order_m_noise(const ScalarField& phi, int m, double h) {
  const Lattice& lat = phi.lattice;
  if (lat.ndim() != 3) throw Error("noise model is 3-D");
  if (m < 0) throw Error("noise order must be non-negative");
  if (!(h > 0.0)) throw Error("noise spacing must be positive");
  const double amplitude = std::pow(h, m);
  const double frequency = 2.0 * std::numbers::pi / (10.0 * h);
  ScalarField out = phi;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const Index idx = lat.unravel(i);
    double sum = 0.0;
    for (std::size_t a = 0; a < 3; ++a) sum += static_cast<double>(idx[a]) * lat.spacing(a);
    out.values[i] += amplitude * std::sin(frequency * sum);
  }
  return out;
}

bool recovery_check(const ScalarField& phi, const BinaryGrid& image) {
  if (!(phi.lattice.dims().size() == image.lattice.dims().size() &&
        std::equal(phi.lattice.dims().begin(), phi.lattice.dims().end(),
                   image.lattice.dims().begin()))) {
    throw Error("lattice mismatch");
  }
  for (std::size_t i = 0; i < phi.values.size(); ++i) {
    if ((phi.values[i] < 0.0) != image.foreground(i)) return false;
  }
  return true;
}

ResidualStats eikonal_residual_stats(const ScalarField& phi, double band,
                                     double exclusion) {
  const Lattice& lat = phi.lattice;
  const std::size_t nd = lat.ndim();
  constexpr std::ptrdiff_t kMargin = 3;

  auto interior = [&](const Index& idx, std::ptrdiff_t margin) {
    for (std::size_t a = 0; a < nd; ++a) {
      if (idx[a] < margin || idx[a] >= static_cast<std::ptrdiff_t>(lat.dim(a)) - margin) {
        return false;
      }
    }
    return true;
  };

  std::vector<std::uint8_t> excluded(lat.size(), 0);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const Index idx = lat.unravel(i);
    if (!interior(idx, 1)) continue;
    const double m = std::abs(phi.values[i]);
    bool peak = true;
    for (std::size_t a = 0; a < nd && peak; ++a) {
      const std::size_t st = lat.stride(a);
      peak = std::abs(phi.values[i - st]) <= m && std::abs(phi.values[i + st]) <= m;
    }
    if (!peak) continue;
    // Mark the exclusion ball around this shock voxel.
    Index lo(nd), hi(nd), cur(nd);
    for (std::size_t a = 0; a < nd; ++a) {
      const auto reach = static_cast<std::ptrdiff_t>(std::floor(exclusion / lat.spacing(a)));
      lo[a] = std::max<std::ptrdiff_t>(0, idx[a] - reach);
      hi[a] = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(lat.dim(a)) - 1, idx[a] + reach);
      cur[a] = lo[a];
    }
    while (true) {
      double d2 = 0.0;
      for (std::size_t a = 0; a < nd; ++a) {
        const double d = static_cast<double>(cur[a] - idx[a]) * lat.spacing(a);
        d2 += d * d;
      }
      if (d2 <= exclusion * exclusion) excluded[lat.linear(cur)] = 1;
      std::size_t a = nd;
      while (a-- > 0) {
        if (++cur[a] <= hi[a]) break;
        cur[a] = lo[a];
      }
      if (a == static_cast<std::size_t>(-1)) break;
    }
  }

  std::vector<double> residuals;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (excluded[i] || !(std::abs(phi.values[i]) <= band)) continue;
    const Index idx = lat.unravel(i);
    if (!interior(idx, kMargin)) continue;
    double g2 = 0.0;
    for (std::size_t a = 0; a < nd; ++a) {
      const std::size_t st = lat.stride(a);
      const double g = (phi.values[i + st] - phi.values[i - st]) / (2.0 * lat.spacing(a));
      g2 += g * g;
    }
    residuals.push_back(std::abs(std::sqrt(g2) - 1.0));
  }
  if (residuals.empty()) throw Error("empty residual set");

  ResidualStats stats;
  stats.count = residuals.size();
  stats.median = ranked(residuals, (residuals.size() - 1) / 2);
  stats.p95 = ranked(residuals,
                     std::min(residuals.size() - 1,
                              static_cast<std::size_t>(0.95 * static_cast<double>(residuals.size()))));
  return stats;
}

}  // namespace hosdt
