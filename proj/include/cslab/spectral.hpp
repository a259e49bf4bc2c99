#pragma once

// Noise spectra.  Three kinds are supported:
//   white            Gtilde(k^2) = amplitude (delta-correlated in space and time)
//   gaussian_spatial delta(t-t') exp(-r^2/4a^2), the standard CSL kernel
//   tachyonic        Gtilde(k^2) = delta(k^2 + mu^2), regularized as a top-hat
//                    of width epsilon in k^2; supports a nonrelativistic-limit
//                    mode that is white in time with spatial kernel
//                    (1/(2pi)^2) sin(r/a)/r
//
// The tachyonic delta spectrum only exists on a lattice through its spectral
// realization: site-space kernel matrices are built from nonnegative mode
// weights, never by evaluating the (singular) continuum correlator at
// coincident points.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "cslab/grid.hpp"

namespace cslab {

enum class SpectrumKind { white, gaussian_spatial, tachyonic };

struct SpectralDensity {
    SpectrumKind kind = SpectrumKind::white;
    double amplitude = 1.0; // white scale
    double a = 1.0;         // gaussian_spatial localization length
    double mu = 1.0;        // tachyonic mass (= 1/a)
    double epsilon = 1e-3;  // tachyonic regularization width in k^2 units
    bool nonrel_limit = false; // tachyonic kind evaluated in its c->inf limit

    static SpectralDensity white(double amplitude = 1.0) {
        if (amplitude < 0.0) throw std::invalid_argument("white spectrum: amplitude < 0");
        SpectralDensity s;
        s.kind = SpectrumKind::white;
        s.amplitude = amplitude;
        return s;
    }
    static SpectralDensity gaussian_spatial(double a) {
        if (!(a > 0.0)) throw std::invalid_argument("gaussian_spatial: a must be > 0");
        SpectralDensity s;
        s.kind = SpectrumKind::gaussian_spatial;
        s.a = a;
        return s;
    }
    // epsilon < 0 selects the default 1e-3 * mu^2.
    static SpectralDensity tachyonic(double mu, double epsilon = -1.0,
                                     bool nonrel_limit = false) {
        if (!(mu > 0.0)) throw std::invalid_argument("tachyonic: mu must be > 0");
        if (epsilon < 0.0) epsilon = 1e-3 * mu * mu;
        if (!(epsilon > 0.0) || epsilon >= 2.0 * mu * mu)
            throw std::invalid_argument("tachyonic: need 0 < epsilon < 2*mu^2");
        SpectralDensity s;
        s.kind = SpectrumKind::tachyonic;
        s.mu = mu;
        s.a = 1.0 / mu;
        s.epsilon = epsilon;
        s.nonrel_limit = nonrel_limit;
        return s;
    }

    std::string tag() const {
        switch (kind) {
            case SpectrumKind::white:
                return "white(amp=" + std::to_string(amplitude) + ")";
            case SpectrumKind::gaussian_spatial:
                return "gaussian_spatial(a=" + std::to_string(a) + ")";
            case SpectrumKind::tachyonic:
                return std::string(nonrel_limit ? "tachyonic_nonrel" : "tachyonic") +
                       "(mu=" + std::to_string(mu) + ",eps=" + std::to_string(epsilon) + ")";
        }
        return "?";
    }

    bool lorentz_invariant() const { return kind != SpectrumKind::gaussian_spatial; }

    // Whether the kernel is proportional to delta(t-t') on the lattice.
    bool white_in_time() const {
        return kind != SpectrumKind::tachyonic || nonrel_limit;
    }

    // Lorentz-scalar spectrum Gtilde(k^2), k^2 = k0^2 - |k|^2.  Only defined
    // for the Lorentz-invariant kinds.
    double gtilde(double k_squared) const {
        switch (kind) {
            case SpectrumKind::white:
                return amplitude;
            case SpectrumKind::tachyonic:
                return std::abs(k_squared + mu * mu) <= 0.5 * epsilon ? 1.0 / epsilon : 0.0;
            case SpectrumKind::gaussian_spatial:
                throw std::domain_error(
                    "gtilde: gaussian_spatial kernel is not a Lorentz scalar");
        }
        return 0.0;
    }

    // Spatial kernel g(r) for white-in-time kinds.  The white kind's spatial
    // delta carries the lattice weight 1/cell_volume at coincidence.
    double spatial_kernel(double r, double cell_volume) const {
        switch (kind) {
            case SpectrumKind::white:
                return r == 0.0 ? amplitude / cell_volume : 0.0;
            case SpectrumKind::gaussian_spatial:
                return std::exp(-r * r / (4.0 * a * a));
            case SpectrumKind::tachyonic: {
                if (!nonrel_limit)
                    throw std::domain_error(
                        "spatial_kernel: full tachyonic kernel is not white in time");
                const double pref = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
                if (r == 0.0) return pref * mu;
                return pref * std::sin(r * mu) / r;
            }
        }
        return 0.0;
    }

    // Nonnegative spectral weight at a lattice frequency pair (nu, |k|).
    double mode_weight(double nu, double kmag) const {
        switch (kind) {
            case SpectrumKind::white:
                return amplitude;
            case SpectrumKind::gaussian_spatial:
                return std::pow(4.0 * std::numbers::pi * a * a, 1.5) *
                       std::exp(-a * a * kmag * kmag);
            case SpectrumKind::tachyonic:
                return gtilde(nu * nu - kmag * kmag);
        }
        return 0.0;
    }
};

// Spectral realization of the full (time-correlated) tachyonic kernel on a
// spatial grid.  Each spatial mode k carries the temporal correlation
//   C(k, tau) = (1/(pi*eps)) * [sin(nu_hi*tau) - sin(nu_lo*tau)] / tau
// over the frequency band nu^2 in [k^2 - mu^2 - eps/2, k^2 - mu^2 + eps/2];
// modes with k^2 < mu^2 - eps/2 carry no tachyon support and drop out.
class ColoredLatticeKernel {
  public:
    ColoredLatticeKernel(const SpatialGrid& grid, const SpectralDensity& spec)
        : grid_(grid), spec_(spec) {
        if (spec.kind != SpectrumKind::tachyonic || spec.nonrel_limit)
            throw std::invalid_argument(
                "ColoredLatticeKernel: requires the full tachyonic kind");
        build_modes();
    }

    // Temporal correlation of one spatial mode band.
    static double band_correlation(double nu_lo, double nu_hi, double eps, double tau) {
        const double pref = 1.0 / (std::numbers::pi * eps);
        if (tau == 0.0) return pref * (nu_hi - nu_lo);
        return pref * (std::sin(nu_hi * tau) - std::sin(nu_lo * tau)) / tau;
    }

    // G_lat(dx, tau) where dx is the displacement between two grid sites.
    double value(const std::array<double, 3>& dx, double tau) const {
        double g = 0.0;
        for (const auto& m : modes_) {
            const double kdotx = m.k[0] * dx[0] + m.k[1] * dx[1] + m.k[2] * dx[2];
            g += std::cos(kdotx) * band_correlation(m.nu_lo, m.nu_hi, spec_.epsilon, tau);
        }
        return g / volume_;
    }

    double value_between_sites(std::size_t s1, std::size_t s2, double tau) const {
        const auto p = grid_.position(s1);
        const auto q = grid_.position(s2);
        return value({p[0] - q[0], p[1] - q[1], p[2] - q[2]}, tau);
    }

    std::size_t active_mode_count() const { return modes_.size(); }

  private:
    struct Mode {
        std::array<double, 3> k;
        double nu_lo, nu_hi;
    };

    void build_modes() {
        const double mu2 = spec_.mu * spec_.mu;
        const double eps = spec_.epsilon;
        volume_ = static_cast<double>(grid_.site_count()) * grid_.cell_volume();
        std::array<std::vector<double>, 3> freqs;
        for (int d = 0; d < grid_.dim; ++d) {
            const int n = grid_.n[d];
            const double dk = 2.0 * std::numbers::pi / (n * grid_.spacing);
            for (int m = 0; m < n; ++m) {
                const int shifted = m <= n / 2 ? m : m - n;
                freqs[d].push_back(dk * shifted);
            }
        }
        for (int d = grid_.dim; d < 3; ++d) freqs[d].push_back(0.0);
        for (double kx : freqs[0])
            for (double ky : freqs[1])
                for (double kz : freqs[2]) {
                    const double k2 = kx * kx + ky * ky + kz * kz;
                    const double q2 = k2 - mu2;
                    if (q2 + 0.5 * eps <= 0.0) continue;
                    const double nu_lo = std::sqrt(std::max(0.0, q2 - 0.5 * eps));
                    const double nu_hi = std::sqrt(q2 + 0.5 * eps);
                    modes_.push_back({{kx, ky, kz}, nu_lo, nu_hi});
                }
        if (modes_.empty())
            throw std::runtime_error(
                "ColoredLatticeKernel: no lattice mode reaches the tachyon band; "
                "refine the grid or enlarge epsilon");
    }

    SpatialGrid grid_;
    SpectralDensity spec_;
    double volume_ = 1.0;
    std::vector<Mode> modes_;
};

} // namespace cslab
