#ifndef HOSDT_GRID_HPP_
#define HOSDT_GRID_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hosdt {

// All library failures surface as this type; the message names the condition
// ("no interface", "degenerate axis", ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Upper bound on dimensionality. Sweeps run 2^d passes, so anything beyond
// this is impractical anyway.
inline constexpr std::size_t kMaxDims = 8;

using Index = std::vector<std::ptrdiff_t>;

// Intended sign of the embedding at a voxel: positive outside, negative inside.
enum class Sign : std::int8_t { kNegative = -1, kPositive = 1 };

constexpr double value_of(Sign s) { return static_cast<double>(s); }
constexpr Sign flip(Sign s) {
  return s == Sign::kPositive ? Sign::kNegative : Sign::kPositive;
}

// Shape and physical spacing (mm) of an n-D lattice. Storage order is C order:
// the last axis varies fastest.
class Lattice {
 public:
  Lattice(std::vector<std::size_t> dims, std::vector<double> spacing);

  std::size_t ndim() const { return dims_.size(); }
  std::size_t size() const { return size_; }
  std::span<const std::size_t> dims() const { return dims_; }
  std::span<const double> spacing() const { return spacing_; }
  std::size_t dim(std::size_t axis) const { return dims_[axis]; }
  double spacing(std::size_t axis) const { return spacing_[axis]; }
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }

  bool contains(std::span<const std::ptrdiff_t> index) const;
  std::size_t linear(std::span<const std::ptrdiff_t> index) const;
  Index unravel(std::size_t linear) const;

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<double> spacing_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

// Binary image I: label 1 is foreground (inside, Omega+), 0 is background.
struct BinaryGrid {
  BinaryGrid(Lattice lattice, std::vector<std::uint8_t> labels);
  explicit BinaryGrid(Lattice lattice);

  bool foreground(std::size_t i) const { return labels[i] != 0; }
  std::size_t count_foreground() const;
  bool has_both_phases() const;

  Lattice lattice;
  std::vector<std::uint8_t> labels;
};

// Double precision embedding on a lattice, values in mm.
struct ScalarField {
  ScalarField(Lattice lattice, std::vector<double> values);
  explicit ScalarField(Lattice lattice, double fill = 0.0);

  double at(std::span<const std::ptrdiff_t> index) const {
    return values[lattice.linear(index)];
  }

  Lattice lattice;
  std::vector<double> values;
};

struct SignField {
  Lattice lattice;
  std::vector<Sign> signs;
};

BinaryGrid complement(const BinaryGrid& image);

// +1 on background, -1 on foreground.
SignField sign_field(const BinaryGrid& image);

// All 2^d sweep directions. Entry [k][axis] is +1 for ascending and -1 for
// descending traversal of that axis. Ordering k enumerates the directions with
// axis 0 as the most significant bit (ascending before descending), which for
// d = 2 gives (asc, asc), (asc, desc), (desc, asc), (desc, desc).
std::vector<std::vector<int>> sweep_orderings(std::size_t ndim);

// Reads the field at an arbitrary integer index. Out-of-domain coordinates are
// linearly extrapolated from the two outermost samples of that axis, one axis
// at a time starting with axis 0. Throws "degenerate axis" when extrapolation
// is needed along an axis with fewer than two samples.
double sample_with_extrapolation(const ScalarField& field,
                                 std::span<const std::ptrdiff_t> index);

}  // namespace hosdt

#endif  // HOSDT_GRID_HPP_
