#include "hosdt/grid.hpp"

#include <algorithm>
#include <cmath>

namespace hosdt {

Lattice::Lattice(std::vector<std::size_t> dims, std::vector<double> spacing)
    : dims_(std::move(dims)), spacing_(std::move(spacing)) {
  if (dims_.empty()) throw Error("lattice needs at least one axis");
  if (dims_.size() > kMaxDims) throw Error("too many axes");
  if (spacing_.size() != dims_.size()) throw Error("spacing/dims rank mismatch");
  for (std::size_t n : dims_) {
    if (n == 0) throw Error("non-positive size");
  }
  for (double h : spacing_) {
    if (!(h > 0.0) || !std::isfinite(h)) throw Error("non-positive spacing");
  }
  strides_.assign(dims_.size(), 1);
  for (std::size_t a = dims_.size() - 1; a > 0; --a) {
    strides_[a - 1] = strides_[a] * dims_[a];
  }
  size_ = strides_[0] * dims_[0];
}

bool Lattice::contains(std::span<const std::ptrdiff_t> index) const {
  for (std::size_t a = 0; a < dims_.size(); ++a) {
    if (index[a] < 0 || index[a] >= static_cast<std::ptrdiff_t>(dims_[a])) {
      return false;
    }
  }
  return true;
}

std::size_t Lattice::linear(std::span<const std::ptrdiff_t> index) const {
  std::size_t k = 0;
  for (std::size_t a = 0; a < dims_.size(); ++a) {
    k += static_cast<std::size_t>(index[a]) * strides_[a];
  }
  return k;
}

Index Lattice::unravel(std::size_t linear) const {
  Index index(dims_.size());
  for (std::size_t a = 0; a < dims_.size(); ++a) {
    index[a] = static_cast<std::ptrdiff_t>(linear / strides_[a]);
    linear %= strides_[a];
  }
  return index;
}

BinaryGrid::BinaryGrid(Lattice lat, std::vector<std::uint8_t> lab)
    : lattice(std::move(lat)), labels(std::move(lab)) {
  if (labels.size() != lattice.size()) throw Error("label count mismatch");
  for (auto& v : labels) v = v != 0 ? 1 : 0;
}

BinaryGrid::BinaryGrid(Lattice lat)
    : lattice(std::move(lat)), labels(lattice.size(), 0) {}

std::size_t BinaryGrid::count_foreground() const {
  return static_cast<std::size_t>(
      std::count_if(labels.begin(), labels.end(), [](auto v) { return v != 0; }));
}

bool BinaryGrid::has_both_phases() const {
  const std::size_t fg = count_foreground();
  return fg > 0 && fg < labels.size();
}

ScalarField::ScalarField(Lattice lat, std::vector<double> vals)
    : lattice(std::move(lat)), values(std::move(vals)) {
  if (values.size() != lattice.size()) throw Error("value count mismatch");
}

ScalarField::ScalarField(Lattice lat, double fill)
    : lattice(std::move(lat)), values(lattice.size(), fill) {}

BinaryGrid complement(const BinaryGrid& image) {
  BinaryGrid out(image.lattice);
  for (std::size_t i = 0; i < image.labels.size(); ++i) {
    out.labels[i] = image.labels[i] != 0 ? 0 : 1;
  }
  return out;
}

SignField sign_field(const BinaryGrid& image) {
  SignField s{image.lattice, std::vector<Sign>(image.labels.size())};
  for (std::size_t i = 0; i < image.labels.size(); ++i) {
    s.signs[i] = image.foreground(i) ? Sign::kNegative : Sign::kPositive;
  }
  return s;
}

std::vector<std::vector<int>> sweep_orderings(std::size_t ndim) {
  if (ndim == 0 || ndim > kMaxDims) throw Error("unsupported dimensionality");
  const std::size_t count = std::size_t{1} << ndim;
  std::vector<std::vector<int>> out(count, std::vector<int>(ndim));
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t a = 0; a < ndim; ++a) {
      const bool descending = (k >> (ndim - 1 - a)) & 1U;
      out[k][a] = descending ? -1 : 1;
    }
  }
  return out;
}

namespace {

double extrapolate_from(const ScalarField& field, Index& index,
                        std::size_t first_axis) {
  const Lattice& lat = field.lattice;
  for (std::size_t a = first_axis; a < lat.ndim(); ++a) {
    const auto n = static_cast<std::ptrdiff_t>(lat.dim(a));
    const std::ptrdiff_t i = index[a];
    if (i >= 0 && i < n) continue;
    if (n < 2) throw Error("degenerate axis");
    const std::ptrdiff_t edge = i < 0 ? 0 : n - 1;
    const std::ptrdiff_t inner = i < 0 ? 1 : n - 2;
    const auto steps = static_cast<double>(i < 0 ? -i : i - (n - 1));
    index[a] = edge;
    const double at_edge = extrapolate_from(field, index, a + 1);
    index[a] = inner;
    const double at_inner = extrapolate_from(field, index, a + 1);
    index[a] = i;
    return at_edge + steps * (at_edge - at_inner);
  }
  return field.values[lat.linear(index)];
}

}  // namespace

double sample_with_extrapolation(const ScalarField& field,
                                 std::span<const std::ptrdiff_t> index) {
  if (index.size() != field.lattice.ndim()) throw Error("index rank mismatch");
  Index scratch(index.begin(), index.end());
  return extrapolate_from(field, scratch, 0);
}

}  // namespace hosdt
