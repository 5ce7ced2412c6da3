#include "hosdt/init.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hosdt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One-dimensional lower envelope of parabolas h^2 (q - p)^2 + f(p) evaluated
// at every q. Entries of f may be +inf (no site on that line).
void envelope_1d(std::vector<double>& f, double h, std::vector<double>& out,
                 std::vector<std::size_t>& vertex, std::vector<double>& bound) {
  const std::size_t n = f.size();
  const double h2 = h * h;
  std::size_t k = 0;
  bool any = false;
  for (std::size_t q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    if (!any) {
      vertex[0] = q;
      bound[0] = -kInf;
      bound[1] = kInf;
      any = true;
      continue;
    }
    const auto qd = static_cast<double>(q);
    double s = 0.0;
    // bound[0] is -inf, so the scan stops at k == 0 at the latest.
    while (true) {
      const auto vd = static_cast<double>(vertex[k]);
      s = ((f[q] + h2 * qd * qd) - (f[vertex[k]] + h2 * vd * vd)) /
          (2.0 * h2 * (qd - vd));
      if (s > bound[k]) break;
      --k;
    }
    ++k;
    vertex[k] = q;
    bound[k] = s;
    bound[k + 1] = kInf;
  }
  if (!any) {
    std::fill(out.begin(), out.end(), kInf);
    return;
  }
  k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const auto qd = static_cast<double>(q);
    while (bound[k + 1] < qd) ++k;
    const double d = qd - static_cast<double>(vertex[k]);
    out[q] = h2 * d * d + f[vertex[k]];
  }
}

void require_both_phases(const BinaryGrid& image) {
  if (!image.has_both_phases()) throw Error("no interface");
}

}  // namespace

SurfaceSet surface_set(const BinaryGrid& image, Phase phase) {
  const Lattice& lat = image.lattice;
  const std::uint8_t want = phase == Phase::kForeground ? 1 : 0;
  SurfaceSet out;
  Index idx(lat.ndim(), 0);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (image.labels[i] == want) {
      bool touches = false;
      for (std::size_t a = 0; a < lat.ndim() && !touches; ++a) {
        const auto n = static_cast<std::ptrdiff_t>(lat.dim(a));
        if (idx[a] > 0 && image.labels[i - lat.stride(a)] != want) touches = true;
        if (idx[a] + 1 < n && image.labels[i + lat.stride(a)] != want) touches = true;
      }
      if (touches) out.push_back(i);
    }
    for (std::size_t a = lat.ndim(); a-- > 0;) {
      if (++idx[a] < static_cast<std::ptrdiff_t>(lat.dim(a))) break;
      idx[a] = 0;
    }
  }
  return out;
}

ScalarField exact_point_edt_squared(const Lattice& lat, const SurfaceSet& sites) {
  if (sites.empty()) throw Error("no surface");
  ScalarField field(lat, kInf);
  for (std::size_t s : sites) {
    if (s >= lat.size()) throw Error("site out of range");
    field.values[s] = 0.0;
  }

  std::size_t longest = 0;
  for (std::size_t n : lat.dims()) longest = std::max(longest, n);
  std::vector<double> line(longest), out(longest), bound(longest + 1);
  std::vector<std::size_t> vertex(longest);

  for (std::size_t axis = 0; axis < lat.ndim(); ++axis) {
    const std::size_t n = lat.dim(axis);
    if (n == 1) continue;
    const std::size_t stride = lat.stride(axis);
    const std::size_t block = stride * n;
    line.resize(n);
    out.resize(n);
    // Every line along `axis` starts at base = outer * block + inner.
    for (std::size_t outer = 0; outer < lat.size(); outer += block) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = outer + inner;
        for (std::size_t q = 0; q < n; ++q) line[q] = field.values[base + q * stride];
        envelope_1d(line, lat.spacing(axis), out, vertex, bound);
        for (std::size_t q = 0; q < n; ++q) field.values[base + q * stride] = out[q];
      }
    }
  }
  return field;
}

ScalarField exact_point_edt(const Lattice& lat, const SurfaceSet& sites) {
  ScalarField field = exact_point_edt_squared(lat, sites);
  for (double& v : field.values) v = std::sqrt(v);
  return field;
}

ScalarField signed_edt(const BinaryGrid& image) {
  require_both_phases(image);
  const SurfaceSet gamma = surface_set(image, Phase::kForeground);
  ScalarField field = exact_point_edt(image.lattice, gamma);
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    if (image.foreground(i)) field.values[i] = -field.values[i];
  }
  // Gamma members already carry distance zero; normalize -0.0.
  for (std::size_t s : gamma) field.values[s] = 0.0;
  return field;
}

ScalarField averaged_init(const BinaryGrid& image) {
  ScalarField inside = signed_edt(image);
  const ScalarField outside = signed_edt(complement(image));
  for (std::size_t i = 0; i < inside.values.size(); ++i) {
    inside.values[i] = 0.5 * (inside.values[i] - outside.values[i]);
  }
  return inside;
}

}  // namespace hosdt
