#pragma once

// Tachyonic spacetime correlator
//
//   G(x-x') = -1/(8 pi^2 a s) Y1(s/a)   spacelike, s = sqrt(dr^2 - dt^2)
//           = -1/(4 pi^3 a s) K1(s/a)   timelike,  s = sqrt(dt^2 - dr^2)
//
// with a = 1/mu, plus its nonrelativistic limit (1/(2pi)^2) sin(dr/a)/dr and
// an independent Fourier-side oracle: the 4-D transform of the regularized
// shell spectrum reduced to a 1-D oscillatory frequency integral
//
//   G_eps(dt,dr) = 1/(2 pi^3 r eps) Int_0^inf dk0 cos(k0 dt)
//                  * Int_{k-}^{k+} k sin(k r) dk,   k+- = sqrt(k0^2+mu^2 +- eps/2)
//
// evaluated by adaptive quadrature up to the last stationary point and by
// zero-segmented, Aitken-accelerated summation beyond it.  The closed form
// and the oracle share nothing but the shell definition.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cslab/bessel.hpp"
#include "cslab/quadrature.hpp"

namespace cslab {

enum class IntervalClass { spacelike, timelike, null_cone };

inline const char* to_string(IntervalClass c) {
    switch (c) {
        case IntervalClass::spacelike: return "spacelike";
        case IntervalClass::timelike: return "timelike";
        case IntervalClass::null_cone: return "null";
    }
    return "?";
}

struct CorrelatorPoint {
    double dt = 0.0;
    double dr = 0.0;
    IntervalClass interval_class = IntervalClass::null_cone;
    double s = 0.0;     // invariant separation sqrt(|dt^2 - dr^2|)
    double value = 0.0; // units 1/length^4
};

// The cone is excluded by a guard band |dt^2 - dr^2| < guard * a^2.
inline IntervalClass classify_interval(double dt, double dr, double a,
                                       double null_guard = 1e-8) {
    const double q = dt * dt - dr * dr;
    if (std::abs(q) < null_guard * a * a) return IntervalClass::null_cone;
    return q > 0.0 ? IntervalClass::timelike : IntervalClass::spacelike;
}

inline CorrelatorPoint g_tachyon(double dt, double dr, double mu,
                                 double null_guard = 1e-8) {
    if (!(mu > 0.0)) throw std::invalid_argument("g_tachyon: mu must be > 0");
    if (dr < 0.0) throw std::invalid_argument("g_tachyon: dr must be >= 0");
    const double a = 1.0 / mu;
    CorrelatorPoint p;
    p.dt = dt;
    p.dr = dr;
    p.interval_class = classify_interval(dt, dr, a, null_guard);
    if (p.interval_class == IntervalClass::null_cone)
        throw std::domain_error("g_tachyon: null-singular separation (|dt^2-dr^2| below guard)");
    p.s = std::sqrt(std::abs(dt * dt - dr * dr));
    const double pi = std::numbers::pi;
    if (p.interval_class == IntervalClass::spacelike)
        p.value = -bessel_y1(p.s / a) / (8.0 * pi * pi * a * p.s);
    else
        p.value = -bessel_k1(p.s / a) / (4.0 * pi * pi * pi * a * p.s);
    return p;
}

// Spatial factor of the c->inf limit: (1/(2pi)^2) sin(dr/a)/dr, with the
// dr->0 limit mu/(2pi)^2.  The delta(t-t') weight is the caller's lattice
// responsibility.
inline double g_nonrel_limit(double dr, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("g_nonrel_limit: mu must be > 0");
    if (dr < 0.0) throw std::invalid_argument("g_nonrel_limit: dr must be >= 0");
    const double pref = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
    if (dr == 0.0) return pref * mu;
    return pref * std::sin(dr * mu) / dr;
}

namespace detail {

// Stable shell difference Int_{k-}^{k+} k sin(kr) dk without k+ ~ k-
// cancellation: product-to-sum in the mean/difference wavenumbers.
struct ShellDiff {
    double kbar, dk; // (k+ + k-)/2 and k+ - k-

    static ShellDiff at(double k0, double mu, double eps) {
        const double base = k0 * k0 + mu * mu;
        const double kp = std::sqrt(base + 0.5 * eps);
        const double km = std::sqrt(std::max(0.0, base - 0.5 * eps));
        return {0.5 * (kp + km), kp - km};
    }

    double value(double r) const {
        const double sh = std::sin(0.5 * dk * r);
        const double ch = std::cos(0.5 * dk * r);
        return (2.0 * sh * (std::cos(kbar * r) + r * kbar * std::sin(kbar * r)) -
                r * dk * std::cos(kbar * r) * ch) /
               (r * r);
    }
};

} // namespace detail

// Fourier-side oracle at fixed regularization width eps (in k^2 units).
// Requires dr > 0; a boosted representative of the same interval serves for
// purely temporal separations.  Throws on tail non-convergence.
inline double g_fourier_oracle(double dt, double dr, double mu, double eps,
                               double null_guard = 1e-8) {
    if (!(mu > 0.0) || !(eps > 0.0) || eps >= 2.0 * mu * mu)
        throw std::invalid_argument("g_fourier_oracle: need mu > 0, 0 < eps < 2 mu^2");
    const double a = 1.0 / mu;
    if (classify_interval(dt, dr, a, null_guard) == IntervalClass::null_cone)
        throw std::domain_error("g_fourier_oracle: null-singular separation");
    const double r = dr;
    const double b = std::abs(dt);
    if (!(r > 1e-6 * a))
        throw std::invalid_argument(
            "g_fourier_oracle: needs dr > 0; use an equal-interval point with "
            "spatial separation");

    auto kbar_of = [mu, eps](double k0) {
        return detail::ShellDiff::at(k0, mu, eps).kbar;
    };
    auto dk_of = [mu, eps](double k0) { return detail::ShellDiff::at(k0, mu, eps).dk; };

    // Head: adaptive quadrature past every stationary phase point.
    double k_stat = 0.0;
    if (r > b) k_stat = b * std::sqrt(mu * mu + 0.5 * eps) / std::sqrt(r * r - b * b);
    const double k_head = std::max({20.0 * mu, 4.0 * k_stat, 40.0 / (r + b)});
    auto head_f = [&](double k0) {
        return std::cos(b * k0) * detail::ShellDiff::at(k0, mu, eps).value(r);
    };
    const QuadResult head = integrate(head_f, 0.0, k_head, 1e-18, 1e-11);

    // Tail: six single-phase channels amp(k) * sin/cos(kbar r + c b k),
    // each zero-segmented and Aitken-accelerated.
    double tail = 0.0;
    for (int c_sign = -1; c_sign <= 1; c_sign += 2) {
        const double c = static_cast<double>(c_sign);
        // Effective phase and its monotone direction.
        auto phase_raw = [&, c](double k) { return kbar_of(k) * r + c * b * k; };
        auto dphase_raw = [&, c](double k) {
            const double kb = kbar_of(k);
            return r * k / kb + c * b; // d(kbar)/dk ~ k/kbar for both shells
        };
        const double dir = dphase_raw(k_head) > 0.0 ? 1.0 : -1.0;
        auto phase = [&, dir](double k) { return dir * phase_raw(k); };
        auto dphase = [&, dir](double k) { return dir * dphase_raw(k); };

        // T1: (1/r^2) sin(dk r/2) cos(phi)          -> sin(phi + pi/2)
        // T2: (kbar/r) sin(dk r/2) sin(phi)
        // T3: -(dk/(2r)) cos(dk r/2) cos(phi)       -> sin(phi + pi/2)
        struct Chan {
            std::function<double(double)> amp;
            double shift;
            double sign;
        };
        const Chan chans[3] = {
            {[&, this_r = r](double k) {
                 return std::sin(0.5 * dk_of(k) * this_r) / (this_r * this_r);
             },
             std::numbers::pi / 2.0, 1.0},
            {[&, this_r = r](double k) {
                 return kbar_of(k) * std::sin(0.5 * dk_of(k) * this_r) / this_r;
             },
             0.0, 1.0},
            {[&, this_r = r](double k) {
                 return 0.5 * dk_of(k) * std::cos(0.5 * dk_of(k) * this_r) / this_r;
             },
             std::numbers::pi / 2.0, -1.0},
        };
        for (const auto& ch : chans) {
            OscillatoryTail t;
            t.amp = ch.amp;
            // sin(phi_raw + shift) = dir_adjusted sin(phase + dir*shift ...):
            // for dir = -1, sin(phi_raw + shift) = -sin(-phi_raw - shift).
            t.phase = [phase, sh = ch.shift, dir](double k) {
                return phase(k) + dir * sh;
            };
            t.dphase = dphase;
            tail += ch.sign * dir * t.integrate_from(k_head);
        }
    }
    // Both c-channels carry the product-to-sum factor 1/2.
    tail *= 0.5;

    const double pref = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi *
                               std::numbers::pi * r * eps);
    return pref * (head.value + tail);
}

// Richardson extrapolation in eps (the regularization error is even in eps).
inline double g_fourier_oracle_extrapolated(double dt, double dr, double mu,
                                            double eps) {
    const double g1 = g_fourier_oracle(dt, dr, mu, eps);
    const double g2 = g_fourier_oracle(dt, dr, mu, 0.5 * eps);
    return (4.0 * g2 - g1) / 3.0;
}

} // namespace cslab
