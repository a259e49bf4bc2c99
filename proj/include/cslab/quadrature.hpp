#pragma once

// Quadrature toolkit: adaptive Gauss-Kronrod (G7,K15) on finite intervals,
// a mapped variant for semi-infinite ranges, fixed Gauss-Legendre panels,
// and an accelerated summation scheme for oscillatory tails (integrate
// between consecutive zeros of the phase, then iterated Aitken on the
// partial sums).

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cslab {

namespace qk {
// QUADPACK 15-point Kronrod nodes/weights and embedded 7-point Gauss weights.
inline constexpr std::array<double, 8> xgk = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr std::array<double, 8> wgk = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
inline constexpr std::array<double, 4> wg = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};
} // namespace qk

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

template <class F>
inline void kronrod15(F&& f, double a, double b, double& result, double& err,
                      std::size_t& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double res_g = fc * qk::wg[3];
    double res_k = fc * qk::wgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * qk::xgk[j];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        res_k += qk::wgk[j] * (f1 + f2);
        if (j % 2 == 1) res_g += qk::wg[j / 2] * (f1 + f2);
    }
    evals += 15;
    result = res_k * h;
    err = std::abs((res_k - res_g) * h);
}

template <class F>
inline void adapt(F&& f, double a, double b, double tol_abs, double tol_rel,
                  int depth, double& total, double& total_err, std::size_t& evals) {
    double r, e;
    kronrod15(f, a, b, r, e, evals);
    const double tol = std::max(tol_abs, tol_rel * std::abs(r));
    if (e <= tol || depth >= 50 || (b - a) < 1e-15 * (std::abs(a) + std::abs(b) + 1.0)) {
        total += r;
        total_err += e;
        return;
    }
    const double m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol_abs, tol_rel, depth + 1, total, total_err, evals);
    adapt(f, m, b, 0.5 * tol_abs, tol_rel, depth + 1, total, total_err, evals);
}

} // namespace detail

// Adaptive integral of f over [a,b].
template <class F>
QuadResult integrate(F&& f, double a, double b, double tol_abs = 1e-12,
                     double tol_rel = 1e-12) {
    QuadResult q;
    if (a == b) return q;
    detail::adapt(f, a, b, tol_abs, tol_rel, 0, q.value, q.error, q.evaluations);
    return q;
}

// Integral of f over [a, +inf) via the rational map x = a + t/(1-t).
template <class F>
QuadResult integrate_to_inf(F&& f, double a, double tol_abs = 1e-12,
                            double tol_rel = 1e-12) {
    auto g = [&f, a](double t) {
        const double om = 1.0 - t;
        const double x = a + t / om;
        return f(x) / (om * om);
    };
    return integrate(g, 0.0, 1.0, tol_abs, tol_rel);
}

namespace gl16 {
inline constexpr std::array<double, 8> x = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> w = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};
} // namespace gl16

// Fixed 16-point Gauss-Legendre panel.
template <class F>
double gauss16(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (int j = 0; j < 8; ++j)
        s += gl16::w[j] * (f(c - h * gl16::x[j]) + f(c + h * gl16::x[j]));
    return s * h;
}

// Iterated Aitken delta-squared extrapolation of a partial-sum sequence.
// Returns the accelerated limit; `spread` reports the scatter of the last
// diagonal entries as an error proxy.
inline long double aitken_limit(const std::vector<long double>& partial,
                                long double* spread = nullptr) {
    std::vector<long double> s = partial;
    if (s.size() < 3) {
        if (spread) *spread = s.empty() ? 0.0L : std::abs(s.back());
        return s.empty() ? 0.0L : s.back();
    }
    long double last = s.back(), prev = last;
    while (s.size() >= 3) {
        std::vector<long double> t;
        t.reserve(s.size() - 2);
        for (std::size_t i = 0; i + 2 < s.size(); ++i) {
            const long double d1 = s[i + 1] - s[i];
            const long double d2 = s[i + 2] - s[i + 1];
            const long double den = d2 - d1;
            if (std::abs(den) < 1e-30L * (std::abs(d1) + std::abs(d2)) ||
                den == 0.0L) {
                t.push_back(s[i + 2]);
            } else {
                t.push_back(s[i + 2] - d2 * d2 / den);
            }
        }
        prev = last;
        last = t.back();
        s.swap(t);
    }
    if (spread) *spread = std::abs(last - prev);
    return last;
}

// Oscillatory tail integral of amp(k)*sin(phase(k)) for k in [k0, inf),
// where phase is smooth and strictly monotone increasing beyond k0 and amp
// grows at most polynomially.  Segments between consecutive phase multiples
// of pi alternate in sign; the partial sums are Aitken-accelerated.
struct OscillatoryTail {
    std::function<double(double)> amp;
    std::function<double(double)> phase;
    std::function<double(double)> dphase; // d(phase)/dk, > 0 on the tail
    double tol_abs = 1e-15;

    double integrate_from(double k0, int max_segments = 160) const {
        // First phase multiple of pi at or beyond k0.
        double p0 = phase(k0);
        double m = std::ceil(p0 / std::numbers::pi);
        std::vector<long double> partial;
        long double acc = 0.0L;
        double lo = k0;
        double hi = root_of_phase(m * std::numbers::pi, k0);
        acc += segment(lo, hi);
        partial.push_back(acc);
        for (int seg = 1; seg < max_segments; ++seg) {
            lo = hi;
            hi = root_of_phase((m + seg) * std::numbers::pi, lo);
            acc += segment(lo, hi);
            partial.push_back(acc);
            if (seg >= 16 && seg % 4 == 0) {
                long double spread = 0.0L;
                const long double lim = aitken_limit(partial, &spread);
                if (std::abs(spread) < tol_abs + 1e-12L * std::abs(lim))
                    return static_cast<double>(lim);
            }
        }
        long double spread = 0.0L;
        const long double lim = aitken_limit(partial, &spread);
        if (!(std::abs(spread) < 1e3 * tol_abs + 1e-9L * std::abs(lim)))
            throw std::runtime_error(
                "OscillatoryTail: acceleration did not converge (spread " +
                std::to_string(static_cast<double>(spread)) + ")");
        return static_cast<double>(lim);
    }

  private:
    double segment(double a, double b) const {
        auto f = [this](double k) { return amp(k) * std::sin(phase(k)); };
        // One half-oscillation per segment; a single Kronrod panel with one
        // bisection keeps the per-segment error at round-off scale.
        double r1, e1, r2, e2;
        std::size_t ev = 0;
        const double mmid = 0.5 * (a + b);
        detail::kronrod15(f, a, mmid, r1, e1, ev);
        detail::kronrod15(f, mmid, b, r2, e2, ev);
        return r1 + r2;
    }

    // Solve phase(k) = target by Newton with bisection safeguard.
    double root_of_phase(double target, double lo_bound) const {
        double k = lo_bound + (target - phase(lo_bound)) / dphase(lo_bound);
        double lo = lo_bound;
        double hi = k;
        while (phase(hi) < target) {
            lo = hi;
            hi += 2.0 * (target - phase(hi)) / dphase(hi) + 1e-3;
        }
        for (int it = 0; it < 80; ++it) {
            const double fk = phase(k) - target;
            if (std::abs(fk) < 1e-13 * std::max(1.0, std::abs(target))) break;
            if (fk > 0)
                hi = k;
            else
                lo = k;
            const double step = fk / dphase(k);
            k -= step;
            if (!(k > lo && k < hi)) k = 0.5 * (lo + hi);
        }
        return k;
    }
};

} // namespace cslab
