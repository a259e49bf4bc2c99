#pragma once

// Spatial and spacetime lattices used to discretize the noise functionals.
// d = 1 or 3 spatial dimensions; sites are cell centers, the measure weight
// per site is spacing^d (space) times dt (time).

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cslab {

struct SpatialGrid {
    int dim = 1;                 // 1 or 3
    std::array<int, 3> n = {1, 1, 1};
    double spacing = 1.0;
    std::array<double, 3> origin = {0.0, 0.0, 0.0};

    SpatialGrid() = default;
    SpatialGrid(int dim_, std::array<int, 3> n_, double spacing_,
                std::array<double, 3> origin_ = {0.0, 0.0, 0.0})
        : dim(dim_), n(n_), spacing(spacing_), origin(origin_) {
        if (dim != 1 && dim != 3) throw std::invalid_argument("SpatialGrid: dim must be 1 or 3");
        if (!(spacing > 0.0)) throw std::invalid_argument("SpatialGrid: spacing must be > 0");
        for (int d = 0; d < dim; ++d)
            if (n[d] < 1) throw std::invalid_argument("SpatialGrid: counts must be >= 1");
        for (int d = dim; d < 3; ++d) n[d] = 1;
    }

    std::size_t site_count() const {
        return static_cast<std::size_t>(n[0]) * n[1] * n[2];
    }
    double cell_volume() const { return std::pow(spacing, dim); }

    std::array<double, 3> position(std::size_t site) const {
        const std::size_t ix = site % n[0];
        const std::size_t iy = (site / n[0]) % n[1];
        const std::size_t iz = site / (static_cast<std::size_t>(n[0]) * n[1]);
        return {origin[0] + spacing * static_cast<double>(ix),
                origin[1] + spacing * static_cast<double>(iy),
                origin[2] + spacing * static_cast<double>(iz)};
    }

    double distance(std::size_t s1, std::size_t s2) const {
        const auto p = position(s1);
        const auto q = position(s2);
        double d2 = 0.0;
        for (int d = 0; d < 3; ++d) d2 += (p[d] - q[d]) * (p[d] - q[d]);
        return std::sqrt(d2);
    }
};

struct SpacetimeGrid {
    SpatialGrid space;
    double t0 = 0.0;
    double t1 = 1.0;
    int nt = 1; // number of time slices (cell centers)

    SpacetimeGrid() = default;
    SpacetimeGrid(SpatialGrid space_, double t0_, double t1_, int nt_)
        : space(space_), t0(t0_), t1(t1_), nt(nt_) {
        if (!(t1 > t0)) throw std::invalid_argument("SpacetimeGrid: need t1 > t0");
        if (nt < 1) throw std::invalid_argument("SpacetimeGrid: nt must be >= 1");
    }

    double dt() const { return (t1 - t0) / nt; }
    double time(int slice) const { return t0 + (slice + 0.5) * dt(); }
    std::size_t site_count() const { return space.site_count() * static_cast<std::size_t>(nt); }
    double measure_weight() const { return dt() * space.cell_volume(); }

    // Flattened index: slice-major, spatial site within slice.
    std::size_t index(int slice, std::size_t spatial_site) const {
        return static_cast<std::size_t>(slice) * space.site_count() + spatial_site;
    }
};

// Two far-separated point clumps, the standard collapse-experiment geometry.
inline SpatialGrid two_clump_grid(double separation) {
    if (!(separation > 0.0)) throw std::invalid_argument("two_clump_grid: separation must be > 0");
    return SpatialGrid(1, {2, 1, 1}, separation);
}

} // namespace cslab
