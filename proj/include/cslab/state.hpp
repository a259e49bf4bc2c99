#pragma once

// Superpositions of particle-density eigenstates: amplitudes c_i over a
// finite family of density configurations n_i(x) on a spatial grid.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cslab/grid.hpp"

namespace cslab {

struct Branch {
    std::complex<double> amplitude;
    std::vector<double> density; // n_i per spatial site, units 1/length^d
};

struct SuperpositionState {
    SpatialGrid grid;
    std::vector<Branch> branches;

    SuperpositionState(SpatialGrid grid_, std::vector<Branch> branches_)
        : grid(grid_), branches(std::move(branches_)) {
        if (branches.empty())
            throw std::invalid_argument("SuperpositionState: no branches");
        double norm = 0.0;
        for (const auto& b : branches) {
            if (b.density.size() != grid.site_count())
                throw std::invalid_argument("SuperpositionState: density/grid size mismatch");
            for (double n : b.density)
                if (n < 0.0)
                    throw std::invalid_argument("SuperpositionState: negative density");
            norm += std::norm(b.amplitude);
        }
        if (std::abs(norm - 1.0) > 1e-10)
            throw std::invalid_argument("SuperpositionState: amplitudes not normalized");
    }

    std::size_t branch_count() const { return branches.size(); }

    double weight(std::size_t i) const { return std::norm(branches[i].amplitude); }
};

// k point clumps of `particles` particles each, one per grid site, with the
// given amplitudes.  A clump is a single-site density n = N / cell_volume,
// so the lattice integral of n over the clump is exactly N.
inline SuperpositionState clump_state(const SpatialGrid& grid,
                                      const std::vector<std::complex<double>>& amplitudes,
                                      double particles = 1.0) {
    if (amplitudes.size() > grid.site_count())
        throw std::invalid_argument("clump_state: more branches than grid sites");
    std::vector<Branch> branches;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        std::vector<double> n(grid.site_count(), 0.0);
        n[i] = particles / grid.cell_volume();
        branches.push_back({amplitudes[i], std::move(n)});
    }
    return SuperpositionState(grid, std::move(branches));
}

} // namespace cslab
