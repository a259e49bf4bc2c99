#pragma once

// Classical noise fields w(x,t) on spacetime lattices.
//
// The probability functional for H = 0 is a Gaussian mixture: branch i is
// selected with weight |c_i|^2 and w is Gaussian with mean 2*lambda*n_i(x)
// and covariance lambda * G^{-1}, where G is the discretized two-point
// kernel.  Both the posterior sampler and log_probability work through the
// same lattice quadratic form
//
//   Q_i(w) = sum_{s,s'} m_s m_{s'} [w - 2 lambda n_i]_s K(s,s') [w - ...]_{s'}
//
// with m the per-site measure weight and K the kernel including lattice
// delta weights.  Interval-restricted inverses are realized by factorizing
// the lattice matrix, never through the infinite-interval Fourier form.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cslab/grid.hpp"
#include "cslab/params.hpp"
#include "cslab/quadrature.hpp"
#include "cslab/rng.hpp"
#include "cslab/spectral.hpp"
#include "cslab/state.hpp"

namespace cslab {

struct NoiseRealization {
    SpacetimeGrid grid;
    std::vector<double> values; // slice-major, spatial site within slice
    std::uint64_t seed = 0;
    std::string spectrum_tag;

    double& at(int slice, std::size_t site) { return values[grid.index(slice, site)]; }
    double at(int slice, std::size_t site) const { return values[grid.index(slice, site)]; }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// Lattice kernel operator: the weighted quadratic-form blocks.
// white-in-time kinds:  Q = sum_slices u_t^T S u_t,   S = dt*dV^2*g
// colored (tachyonic):  Q = sum_{t,t'} u_t^T B_{|t-t'|} u_{t'},
//                       B_d = (dt*dV)^2 * K(x,x', d*dt)
// ---------------------------------------------------------------------------
class LatticeKernelOperator {
  public:
    LatticeKernelOperator(const SpacetimeGrid& grid, const SpectralDensity& spec)
        : grid_(grid), spec_(spec) {
        const std::size_t nx = grid.space.site_count();
        const double dv = grid.space.cell_volume();
        const double dt = grid.dt();
        if (spec.white_in_time()) {
            slice_.resize(nx, nx);
            for (std::size_t i = 0; i < nx; ++i)
                for (std::size_t j = 0; j < nx; ++j)
                    slice_(i, j) = dt * dv * dv *
                                   spec.spatial_kernel(grid.space.distance(i, j), dv);
        } else {
            ColoredLatticeKernel kern(grid.space, spec);
            const double w2 = (dt * dv) * (dt * dv);
            blocks_.reserve(grid.nt);
            for (int d = 0; d < grid.nt; ++d) {
                Eigen::MatrixXd b(nx, nx);
                for (std::size_t i = 0; i < nx; ++i)
                    for (std::size_t j = 0; j < nx; ++j)
                        b(i, j) = w2 * kern.value_between_sites(i, j, d * dt);
                blocks_.push_back(std::move(b));
            }
        }
    }

    const SpacetimeGrid& grid() const { return grid_; }
    bool white_in_time() const { return spec_.white_in_time(); }

    // Block of the weighted matrix between time slices at lag d (in slices).
    const Eigen::MatrixXd& block(int d) const {
        if (white_in_time()) {
            if (d != 0) throw std::logic_error("white-in-time kernel has no cross blocks");
            return slice_;
        }
        return blocks_.at(static_cast<std::size_t>(d));
    }

    // Full quadratic form over the whole interval.
    double quadratic_form(const std::vector<double>& u) const {
        const std::size_t nx = grid_.space.site_count();
        if (u.size() != grid_.site_count())
            throw std::invalid_argument("quadratic_form: size mismatch");
        double q = 0.0;
        if (white_in_time()) {
            for (int t = 0; t < grid_.nt; ++t) {
                auto ut = Eigen::Map<const Eigen::VectorXd>(u.data() + t * nx, nx);
                q += ut.dot(slice_ * ut);
            }
            return q;
        }
        for (int t = 0; t < grid_.nt; ++t) {
            auto ut = Eigen::Map<const Eigen::VectorXd>(u.data() + t * nx, nx);
            for (int s = 0; s < grid_.nt; ++s) {
                auto us = Eigen::Map<const Eigen::VectorXd>(u.data() + s * nx, nx);
                q += ut.dot(blocks_[static_cast<std::size_t>(std::abs(t - s))] * us);
            }
        }
        return q;
    }

    // Running quadratic forms Q(<= slice) for every slice, one pass.
    std::vector<double> running_quadratic_form(const std::vector<double>& u) const {
        const std::size_t nx = grid_.space.site_count();
        std::vector<double> out(grid_.nt, 0.0);
        double q = 0.0;
        for (int t = 0; t < grid_.nt; ++t) {
            auto ut = Eigen::Map<const Eigen::VectorXd>(u.data() + t * nx, nx);
            if (white_in_time()) {
                q += ut.dot(slice_ * ut);
            } else {
                q += ut.dot(blocks_[0] * ut);
                for (int s = 0; s < t; ++s) {
                    auto us = Eigen::Map<const Eigen::VectorXd>(u.data() + s * nx, nx);
                    q += 2.0 * ut.dot(blocks_[static_cast<std::size_t>(t - s)] * us);
                }
            }
            out[t] = q;
        }
        return out;
    }

    // Assembled full matrix (site_count x site_count).
    Eigen::MatrixXd full_matrix() const {
        const std::size_t nx = grid_.space.site_count();
        const std::size_t n = grid_.site_count();
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (int t = 0; t < grid_.nt; ++t)
            for (int s = 0; s < grid_.nt; ++s) {
                if (white_in_time() && t != s) continue;
                const Eigen::MatrixXd& b =
                    white_in_time() ? slice_ : blocks_[static_cast<std::size_t>(std::abs(t - s))];
                a.block(t * nx, s * nx, nx, nx) = b;
            }
        return a;
    }

  private:
    SpacetimeGrid grid_;
    SpectralDensity spec_;
    Eigen::MatrixXd slice_;               // white-in-time
    std::vector<Eigen::MatrixXd> blocks_; // colored, indexed by |t-t'|
};

namespace detail {

inline double log_sum_exp(const std::vector<double>& xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

} // namespace detail

// log P_T(w) up to a w-independent additive constant (fixed per grid, see
// PosteriorSampler::log_norm_constant for the Gaussian normalization).
inline double log_probability(const NoiseRealization& w, const SuperpositionState& state,
                              const ModelParams& params, const SpectralDensity& spec) {
    if (w.grid.space.site_count() != state.grid.site_count())
        throw std::invalid_argument("log_probability: grid mismatch");
    LatticeKernelOperator op(w.grid, spec);
    const std::size_t nx = w.grid.space.site_count();
    std::vector<double> terms;
    std::vector<double> u(w.values.size());
    for (const auto& br : state.branches) {
        for (int t = 0; t < w.grid.nt; ++t)
            for (std::size_t x = 0; x < nx; ++x)
                u[w.grid.index(t, x)] =
                    w.at(t, x) - 2.0 * params.lambda * br.density[x];
        terms.push_back(std::log(std::norm(br.amplitude)) -
                        op.quadratic_form(u) / (2.0 * params.lambda));
    }
    return detail::log_sum_exp(terms);
}

// ---------------------------------------------------------------------------
// Posterior sampler: exact Gaussian-mixture draws from P_T(w) for H = 0.
// Refuses singular lattice kernels, reporting a condition estimate.
// ---------------------------------------------------------------------------
class PosteriorSampler {
  public:
    PosteriorSampler(const SuperpositionState& state, const ModelParams& params,
                     const SpectralDensity& spec, const SpacetimeGrid& grid)
        : state_(state), params_(params), spec_(spec), grid_(grid) {
        if (grid.space.site_count() != state.grid.site_count())
            throw std::invalid_argument("PosteriorSampler: grid/state mismatch");
        LatticeKernelOperator op(grid, spec);
        per_slice_ = op.white_in_time();
        const Eigen::MatrixXd a = per_slice_ ? op.block(0) : op.full_matrix();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("PosteriorSampler: eigendecomposition failed");
        eigvals_ = es.eigenvalues();
        eigvecs_ = es.eigenvectors();
        const double emax = eigvals_.maxCoeff();
        const double emin = eigvals_.minCoeff();
        condition_ = emax / std::max(emin, std::numeric_limits<double>::min());
        if (!(emin > emax * 1e-12))
            throw std::runtime_error(
                "PosteriorSampler: singular discretized kernel (condition estimate " +
                std::to_string(condition_) + ")");
    }

    struct Draw {
        std::size_t branch;
        NoiseRealization noise;
    };

    Draw sample(std::uint64_t seed) const {
        Rng rng(seed);
        // Branch selection with probability |c_i|^2.
        const double r = rng.uniform();
        std::size_t branch = state_.branch_count() - 1;
        double acc = 0.0;
        for (std::size_t i = 0; i < state_.branch_count(); ++i) {
            acc += state_.weight(i);
            if (r < acc) {
                branch = i;
                break;
            }
        }
        const std::size_t nx = grid_.space.site_count();
        NoiseRealization w{grid_, std::vector<double>(grid_.site_count(), 0.0), seed,
                           spec_.tag()};
        const auto& n = state_.branches[branch].density;
        // Fluctuation: covariance lambda * A^{-1}; in the eigenbasis each
        // coefficient is N(0, lambda / sigma_j).
        const std::size_t dim = static_cast<std::size_t>(eigvals_.size());
        Eigen::VectorXd coef(dim);
        if (per_slice_) {
            for (int t = 0; t < grid_.nt; ++t) {
                for (std::size_t j = 0; j < dim; ++j)
                    coef[j] = rng.normal() * std::sqrt(params_.lambda / eigvals_[j]);
                Eigen::VectorXd xi = eigvecs_ * coef;
                for (std::size_t x = 0; x < nx; ++x)
                    w.at(t, x) = 2.0 * params_.lambda * n[x] + xi[x];
            }
        } else {
            for (std::size_t j = 0; j < dim; ++j)
                coef[j] = rng.normal() * std::sqrt(params_.lambda / eigvals_[j]);
            Eigen::VectorXd xi = eigvecs_ * coef;
            for (int t = 0; t < grid_.nt; ++t)
                for (std::size_t x = 0; x < nx; ++x)
                    w.at(t, x) = 2.0 * params_.lambda * n[x] + xi[grid_.index(t, x)];
        }
        return {branch, std::move(w)};
    }

    // Mixture log-density (same additive constant as log_probability),
    // evaluated through the eigenbasis rather than the direct double sum.
    double log_density_unnorm(const NoiseRealization& w) const {
        const std::size_t nx = grid_.space.site_count();
        std::vector<double> terms;
        for (std::size_t i = 0; i < state_.branch_count(); ++i) {
            const auto& n = state_.branches[i].density;
            double q = 0.0;
            if (per_slice_) {
                Eigen::VectorXd u(nx);
                for (int t = 0; t < grid_.nt; ++t) {
                    for (std::size_t x = 0; x < nx; ++x)
                        u[x] = w.at(t, x) - 2.0 * params_.lambda * n[x];
                    Eigen::VectorXd c = eigvecs_.transpose() * u;
                    for (Eigen::Index j = 0; j < c.size(); ++j)
                        q += eigvals_[j] * c[j] * c[j];
                }
            } else {
                Eigen::VectorXd u(grid_.site_count());
                for (int t = 0; t < grid_.nt; ++t)
                    for (std::size_t x = 0; x < nx; ++x)
                        u[grid_.index(t, x)] = w.at(t, x) - 2.0 * params_.lambda * n[x];
                Eigen::VectorXd c = eigvecs_.transpose() * u;
                for (Eigen::Index j = 0; j < c.size(); ++j)
                    q += eigvals_[j] * c[j] * c[j];
            }
            terms.push_back(std::log(state_.weight(i)) - q / (2.0 * params_.lambda));
        }
        return detail::log_sum_exp(terms);
    }

    // log of the Gaussian normalization: every mixture component shares it.
    // P(w) = exp(log_probability(w) + log_norm_constant()).
    double log_norm_constant() const {
        const double n_slices = per_slice_ ? static_cast<double>(grid_.nt) : 1.0;
        double s = 0.0;
        for (Eigen::Index j = 0; j < eigvals_.size(); ++j)
            s += std::log(eigvals_[j]) - std::log(2.0 * std::numbers::pi * params_.lambda);
        return 0.5 * n_slices * s;
    }

    double condition_estimate() const { return condition_; }

  private:
    SuperpositionState state_;
    ModelParams params_;
    SpectralDensity spec_;
    SpacetimeGrid grid_;
    bool per_slice_ = true;
    Eigen::VectorXd eigvals_;
    Eigen::MatrixXd eigvecs_;
    double condition_ = 0.0;
};

inline PosteriorSampler::Draw sample_posterior_noise(const SuperpositionState& state,
                                                     const ModelParams& params,
                                                     const SpectralDensity& spec,
                                                     const SpacetimeGrid& grid,
                                                     std::uint64_t seed) {
    return PosteriorSampler(state, params, spec, grid).sample(seed);
}

// ---------------------------------------------------------------------------
// Free noise field: zero mean, covariance (gamma/2) * G(x - x').
// ---------------------------------------------------------------------------

// Plane-wave synthesis for the full tachyonic spectrum.  Quadrature nodes
// cover the regularized shell |k^2 + mu^2| < eps/2 as (frequency, direction)
// products; each node is an independent plane wave, so the field is Gaussian
// with the node-sum covariance, which converges to (gamma/2) G_eps as the
// node set refines.
class PlaneWaveField {
  public:
    struct Options {
        double nu_max = -1.0; // default: temporal Nyquist of the grid
        int nu_panels = 0;    // default: resolve phases across the grid extent
        int n_costheta = 16;
        int n_phi = 16;
    };

    PlaneWaveField(const SpectralDensity& spec, const SpacetimeGrid& grid, double gamma,
                   Options opts = {})
        : grid_(grid), tag_(spec.tag()) {
        if (spec.kind != SpectrumKind::tachyonic || spec.nonrel_limit)
            throw std::invalid_argument("PlaneWaveField: requires the full tachyonic kind");
        if (gamma < 0.0) throw std::invalid_argument("PlaneWaveField: gamma < 0");
        const double mu2 = spec.mu * spec.mu;
        const double eps = spec.epsilon;
        if (opts.nu_max <= 0.0) opts.nu_max = std::numbers::pi / grid.dt();
        if (opts.nu_panels <= 0) {
            // Keep several nodes per oscillation over the largest separation.
            double ext = grid.t1 - grid.t0;
            for (int d = 0; d < grid.space.dim; ++d)
                ext += grid.space.spacing * grid.space.n[d];
            opts.nu_panels = std::max(8, static_cast<int>(opts.nu_max * ext / 4.0));
        }
        const double panel = opts.nu_max / opts.nu_panels;
        // Gauss-Legendre in cos(theta), midpoint in phi.
        std::vector<double> ct, wt;
        for (int j = 0; j < 8; ++j) {
            ct.push_back(-gl16::x[j]);
            wt.push_back(gl16::w[j]);
            ct.push_back(gl16::x[j]);
            wt.push_back(gl16::w[j]);
        }
        const double wphi = 2.0 * std::numbers::pi / opts.n_phi;
        const double pref = gamma / std::pow(2.0 * std::numbers::pi, 4);
        for (int p = 0; p < opts.nu_panels; ++p) {
            for (int g = 0; g < 8; ++g) {
                for (int sgn = -1; sgn <= 1; sgn += 2) {
                    const double nu = (p + 0.5) * panel +
                                      0.5 * panel * sgn * gl16::x[g];
                    const double wnu = 0.5 * panel * gl16::w[g];
                    const double k2lo = nu * nu + mu2 - 0.5 * eps;
                    const double k2hi = nu * nu + mu2 + 0.5 * eps;
                    const double klo = std::sqrt(std::max(0.0, k2lo));
                    const double khi = std::sqrt(k2hi);
                    // Radial shell integral of k^2/eps across the band.
                    const double radial = (khi * khi * khi - klo * klo * klo) / (3.0 * eps);
                    const double kmid = std::sqrt(nu * nu + mu2);
                    for (std::size_t ic = 0; ic < ct.size(); ++ic) {
                        const double st = std::sqrt(std::max(0.0, 1.0 - ct[ic] * ct[ic]));
                        for (int ip = 0; ip < opts.n_phi; ++ip) {
                            const double phi = (ip + 0.5) * wphi;
                            Node nd;
                            nd.nu = nu;
                            nd.k = {kmid * st * std::cos(phi), kmid * st * std::sin(phi),
                                    kmid * ct[ic]};
                            // Factor 2: the nu < 0 half-axis is folded in.
                            nd.weight = 2.0 * pref * wnu * wt[ic] * wphi * radial;
                            nodes_.push_back(nd);
                        }
                    }
                }
            }
        }
    }

    std::size_t node_count() const { return nodes_.size(); }

    // Exact covariance of the synthesized field at separation (dt, dx).
    double covariance(double dt, const std::array<double, 3>& dx) const {
        double c = 0.0;
        for (const auto& nd : nodes_)
            c += nd.weight *
                 std::cos(nd.nu * dt - nd.k[0] * dx[0] - nd.k[1] * dx[1] - nd.k[2] * dx[2]);
        return c;
    }

    NoiseRealization sample(std::uint64_t seed) const {
        Rng rng(seed);
        NoiseRealization w{grid_, std::vector<double>(grid_.site_count(), 0.0), seed, tag_};
        const std::size_t nx = grid_.space.site_count();
        std::vector<std::array<double, 3>> pos(nx);
        for (std::size_t x = 0; x < nx; ++x) pos[x] = grid_.space.position(x);
        for (const auto& nd : nodes_) {
            const double amp = std::sqrt(nd.weight);
            const double za = amp * rng.normal();
            const double zb = amp * rng.normal();
            for (int t = 0; t < grid_.nt; ++t) {
                const double tt = grid_.time(t);
                for (std::size_t x = 0; x < nx; ++x) {
                    const double phase = nd.nu * tt - nd.k[0] * pos[x][0] -
                                         nd.k[1] * pos[x][1] - nd.k[2] * pos[x][2];
                    w.at(t, x) += za * std::cos(phase) + zb * std::sin(phase);
                }
            }
        }
        return w;
    }

  private:
    struct Node {
        double nu;
        std::array<double, 3> k;
        double weight;
    };
    SpacetimeGrid grid_;
    std::string tag_;
    std::vector<Node> nodes_;
};

// Zero-mean field with covariance (gamma/2) G.  White-in-time kinds sample
// independent slices through the factorized spatial covariance; the full
// tachyonic kind goes through PlaneWaveField.
inline NoiseRealization sample_free_field(const SpectralDensity& spec,
                                          const SpacetimeGrid& grid, double gamma,
                                          std::uint64_t seed) {
    if (!spec.white_in_time()) return PlaneWaveField(spec, grid, gamma).sample(seed);
    const std::size_t nx = grid.space.site_count();
    const double dv = grid.space.cell_volume();
    Eigen::MatrixXd cov(nx, nx);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nx; ++j)
            cov(i, j) = 0.5 * gamma / grid.dt() *
                        spec.spatial_kernel(grid.space.distance(i, j), dv);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    const double emax = std::max(es.eigenvalues().maxCoeff(), 0.0);
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
        if (es.eigenvalues()[j] < -1e-10 * std::max(emax, 1e-300))
            throw std::runtime_error("sample_free_field: spectrum negative on the lattice");
    Rng rng(seed);
    NoiseRealization w{grid, std::vector<double>(grid.site_count(), 0.0), seed, spec.tag()};
    Eigen::VectorXd coef(nx);
    for (int t = 0; t < grid.nt; ++t) {
        for (std::size_t j = 0; j < nx; ++j) {
            const double ev = std::max(es.eigenvalues()[static_cast<Eigen::Index>(j)], 0.0);
            coef[static_cast<Eigen::Index>(j)] = rng.normal() * std::sqrt(ev);
        }
        Eigen::VectorXd xi = es.eigenvectors() * coef;
        for (std::size_t x = 0; x < nx; ++x) w.at(t, x) = xi[static_cast<Eigen::Index>(x)];
    }
    return w;
}

// ---------------------------------------------------------------------------
// Gaussian Fourier-transform identity in N dimensions.
//
//   exp(-(1/2a) u^T G u)
//     = det(G)^{-1/2} (a/2pi)^{N/2} Int d^N eta exp(-(a/2) eta^T G^-1 eta)
//                                             * cos(eta . u)
//
// The right-hand side is integrated numerically on a tensor box; the return
// value is the max relative residual over a few random u vectors.
// ---------------------------------------------------------------------------
inline double gaussian_ft_identity_residual(int dim, const Eigen::MatrixXd& g_matrix,
                                            double alpha, std::uint64_t seed,
                                            int n_probes = 4) {
    if (dim < 1 || dim > 4)
        throw std::invalid_argument("gaussian_ft_identity_residual: dim must be in [1,4]");
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    if (g_matrix.rows() != dim || g_matrix.cols() != dim)
        throw std::invalid_argument("G matrix has wrong shape");
    Eigen::LLT<Eigen::MatrixXd> llt(g_matrix);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("G matrix is not positive definite");
    const Eigen::MatrixXd ginv = g_matrix.inverse();
    const double detg = g_matrix.determinant();

    // Integration box: the eta-Gaussian has covariance G/alpha.
    std::vector<double> half(dim);
    for (int i = 0; i < dim; ++i) half[i] = 10.0 * std::sqrt(g_matrix(i, i) / alpha);

    std::function<double(Eigen::VectorXd&, int, const Eigen::VectorXd&)> nest =
        [&](Eigen::VectorXd& eta, int level, const Eigen::VectorXd& u) -> double {
        auto f = [&](double x) {
            eta[level] = x;
            if (level + 1 < dim) return nest(eta, level + 1, u);
            const double quad = eta.dot(ginv * eta);
            return std::exp(-0.5 * alpha * quad) * std::cos(eta.dot(u));
        };
        return integrate(f, -half[level], half[level], 1e-13, 1e-10).value;
    };

    Rng rng(seed);
    double worst = 0.0;
    for (int probe = 0; probe < n_probes; ++probe) {
        Eigen::VectorXd u(dim);
        for (int i = 0; i < dim; ++i)
            u[i] = probe == 0 ? 0.0
                              : rng.normal() * std::sqrt(alpha / g_matrix(i, i));
        Eigen::VectorXd eta(dim);
        const double rhs = std::pow(detg, -0.5) *
                           std::pow(alpha / (2.0 * std::numbers::pi), 0.5 * dim) *
                           nest(eta, 0, u);
        const double lhs = std::exp(-0.5 / alpha * u.dot(g_matrix * u));
        worst = std::max(worst, std::abs(rhs - lhs) / std::max(std::abs(lhs), 1e-12));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// NoiseRealization export: CSV (t, x[, y, z], w) and a binary round-trip
// format with embedded seed and spectrum tag.
// ---------------------------------------------------------------------------

inline void write_noise_csv(const NoiseRealization& w, std::ostream& os) {
    const int dim = w.grid.space.dim;
    os << "t,x";
    if (dim == 3) os << ",y,z";
    os << ",w\n";
    char buf[512];
    for (int t = 0; t < w.grid.nt; ++t)
        for (std::size_t x = 0; x < w.grid.space.site_count(); ++x) {
            const auto p = w.grid.space.position(x);
            if (dim == 3)
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                              w.grid.time(t), p[0], p[1], p[2], w.at(t, x));
            else
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", w.grid.time(t), p[0],
                              w.at(t, x));
            os << buf;
        }
}

namespace detail {
template <class T>
void put(std::ofstream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <class T>
void get(std::ifstream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof v);
}
} // namespace detail

inline void write_noise_binary(const NoiseRealization& w, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_noise_binary: cannot open " + path);
    os.write("CSLN0001", 8);
    detail::put(os, w.seed);
    const std::uint64_t taglen = w.spectrum_tag.size();
    detail::put(os, taglen);
    os.write(w.spectrum_tag.data(), static_cast<std::streamsize>(taglen));
    const std::int32_t dim = w.grid.space.dim;
    detail::put(os, dim);
    for (int d = 0; d < 3; ++d) detail::put(os, static_cast<std::int32_t>(w.grid.space.n[d]));
    detail::put(os, w.grid.space.spacing);
    for (int d = 0; d < 3; ++d) detail::put(os, w.grid.space.origin[d]);
    detail::put(os, w.grid.t0);
    detail::put(os, w.grid.t1);
    detail::put(os, static_cast<std::int32_t>(w.grid.nt));
    const std::uint64_t n = w.values.size();
    detail::put(os, n);
    os.write(reinterpret_cast<const char*>(w.values.data()),
             static_cast<std::streamsize>(n * sizeof(double)));
}

inline NoiseRealization read_noise_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_noise_binary: cannot open " + path);
    char magic[8];
    is.read(magic, 8);
    if (std::string(magic, 8) != "CSLN0001")
        throw std::runtime_error("read_noise_binary: bad magic");
    std::uint64_t seed, taglen;
    detail::get(is, seed);
    detail::get(is, taglen);
    std::string tag(taglen, '\0');
    is.read(tag.data(), static_cast<std::streamsize>(taglen));
    std::int32_t dim, n0, n1, n2, nt;
    double spacing, t0, t1;
    std::array<double, 3> origin;
    detail::get(is, dim);
    detail::get(is, n0);
    detail::get(is, n1);
    detail::get(is, n2);
    detail::get(is, spacing);
    for (int d = 0; d < 3; ++d) detail::get(is, origin[d]);
    detail::get(is, t0);
    detail::get(is, t1);
    detail::get(is, nt);
    SpacetimeGrid grid(SpatialGrid(dim, {n0, n1, n2}, spacing, origin), t0, t1, nt);
    std::uint64_t n;
    detail::get(is, n);
    std::vector<double> values(n);
    is.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
    if (!is) throw std::runtime_error("read_noise_binary: truncated file");
    return NoiseRealization{grid, std::move(values), seed, tag};
}

} // namespace cslab
