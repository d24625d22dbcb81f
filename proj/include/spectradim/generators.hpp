#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "spectradim/graph.hpp"

namespace spectradim {

/// Grid graph on the product of `dims` (1 to 4 axes), row-major indexing with
/// the last axis fastest. `periodic` wraps every axis into a torus and then
/// requires each axis to have length >= 3. Throws std::invalid_argument.
Graph generate_lattice(std::span<const std::size_t> dims, bool periodic);

/// Cycle C_n, n >= 3.
Graph generate_cycle(std::size_t n);

/// Complete graph K_n, n >= 2.
Graph generate_complete(std::size_t n);

/// Spectral dimension of a periodic lattice: its number of axes. Nothing for
/// non-periodic grids, whose boundary makes the finite-size value ambiguous.
std::optional<double> lattice_ground_truth(std::span<const std::size_t> dims, bool periodic);

}  // namespace spectradim
