#ifndef HOSDT_INIT_HPP_
#define HOSDT_INIT_HPP_

#include <cstddef>
#include <vector>

#include "hosdt/grid.hpp"

namespace hosdt {

enum class Phase { kForeground, kBackground };

// Voxels of one phase that touch the other phase through a face. For the
// foreground phase this is the surface set Gamma, for the background phase
// Gamma'. Linear indices, ascending.
using SurfaceSet = std::vector<std::size_t>;

SurfaceSet surface_set(const BinaryGrid& image, Phase phase);

// Squared Euclidean distance (mm^2) from every voxel center to the nearest
// site center. Separable lower-envelope transform, one pass per axis.
// Throws "no surface" for an empty site set.
ScalarField exact_point_edt_squared(const Lattice& lattice,
                                    const SurfaceSet& sites);

// Square root of exact_point_edt_squared.
ScalarField exact_point_edt(const Lattice& lattice, const SurfaceSet& sites);

// Signed distance to the foreground surface set Gamma: positive on the
// background, negative on foreground voxels off the surface, exactly zero on
// Gamma. Throws "no interface" for single-phase images.
ScalarField signed_edt(const BinaryGrid& image);

// (signed_edt(I) - signed_edt(complement(I))) / 2. Places the zero level set
// on voxel faces and never returns an exact zero.
ScalarField averaged_init(const BinaryGrid& image);

}  // namespace hosdt

#endif  // HOSDT_INIT_HPP_
