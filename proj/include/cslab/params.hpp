#pragma once

// Model constants and unit handling.  All internal computation is done in
// natural units (hbar = c = 1) with the tachyon mass mu = 1/a as the scale;
// conversion to seconds/centimeters/eV happens only at the I/O boundary.

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace cslab {

// Physical constants used by the unit conversions.
inline constexpr double kSpeedOfLightCmPerSec = 2.99792458e10;
inline constexpr double kHbarCeVcm = 1.973269804e-5; // hbar*c in eV*cm
inline constexpr double kPlanckMassEV = 1.22089e28;
inline constexpr double kNucleonMassEV = 9.38272088e8;

// Meaning of one internal unit, fixed by the localization length a.
// With hbar = c = 1: time_unit = length_unit / c, energy_unit = hbar*c / length_unit.
struct UnitSystem {
    double length_unit_cm = 1.0e-5;

    double time_unit_sec() const { return length_unit_cm / kSpeedOfLightCmPerSec; }
    double energy_unit_ev() const { return kHbarCeVcm / length_unit_cm; }

    double length_to_internal(double cm) const { return cm / length_unit_cm; }
    double length_to_cm(double internal) const { return internal * length_unit_cm; }
    double rate_per_sec_to_internal(double per_sec) const { return per_sec * time_unit_sec(); }
    double rate_to_per_sec(double internal) const { return internal / time_unit_sec(); }
    double energy_to_ev(double internal) const { return internal * energy_unit_ev(); }
    double energy_to_internal(double ev) const { return ev / energy_unit_ev(); }
};

// Collapse-model parameters in internal natural units.
//   lambda     collapse rate (1/time)
//   a          localization length; mu = 1/a is enforced at construction
//   gamma      dimensionless relativistic coupling
//   M          particle mass (1/length)
//   mass_ratio M_i / M_N for mass-proportional coupling
struct ModelParams {
    double lambda = 1.0;
    double a = 1.0;
    double mu = 1.0;
    double gamma = 1.0;
    double M = 1.0;
    double mass_ratio = 1.0;
    bool gamma_tied = false; // whether gamma == lambda/mu held at construction
    UnitSystem units{};

    ModelParams() = default;

    ModelParams(double lambda_, double a_, double gamma_, double M_,
                double mass_ratio_, UnitSystem units_ = {})
        : lambda(lambda_), a(a_), mu(1.0 / a_), gamma(gamma_), M(M_),
          mass_ratio(mass_ratio_), units(units_) {
        validate();
        gamma_tied = std::abs(gamma - lambda / mu) <= 1e-12 * std::abs(gamma);
    }

    void validate() const {
        if (!(lambda > 0.0)) throw std::invalid_argument("ModelParams: lambda must be > 0");
        if (!(a > 0.0)) throw std::invalid_argument("ModelParams: a must be > 0");
        if (!(mu > 0.0)) throw std::invalid_argument("ModelParams: mu must be > 0");
        if (!(M > 0.0)) throw std::invalid_argument("ModelParams: M must be > 0");
        if (gamma < 0.0) throw std::invalid_argument("ModelParams: gamma must be >= 0");
        if (mass_ratio < 0.0) throw std::invalid_argument("ModelParams: mass_ratio must be >= 0");
        if (std::abs(mu * a - 1.0) > 1e-12)
            throw std::invalid_argument("ModelParams: mu*a != 1");
    }

    double recoil_energy() const { return mu * mu / (2.0 * M); }
};

// gamma = kappa * G * M_N^2 with G the gravitational constant in natural
// units, i.e. kappa * (M_N / m_Planck)^2.  M_N defaults to the nucleon mass.
inline double gamma_from_kappa(double kappa, double m_nucleon_ev = kNucleonMassEV) {
    if (kappa < 0.0) throw std::invalid_argument("gamma_from_kappa: kappa must be >= 0");
    if (!(m_nucleon_ev > 0.0)) throw std::invalid_argument("gamma_from_kappa: mass must be > 0");
    const double r = m_nucleon_ev / kPlanckMassEV;
    return kappa * r * r;
}

// GRW parameter choices: lambda = 1e-16 / sec, a = 1e-5 cm, nucleon mass,
// gamma tied to lambda/mu.  Internally mu = a = 1 sets the scale, so the
// preset reduces to converting lambda and M.  gamma comes out near 1e-32;
// the value is an order of magnitude, not a precision constant.
inline ModelParams preset_grw() {
    UnitSystem units{1.0e-5};
    const double lambda = units.rate_per_sec_to_internal(1.0e-16);
    const double mu_ev = units.energy_unit_ev();
    const double M = kNucleonMassEV / mu_ev;
    ModelParams p(lambda, 1.0, lambda / 1.0, M, 1.0, units);
    return p;
}

// Desk-scale parameters: mu = 1, M = ratio, order-unity rates so Monte Carlo
// effects are visible in seconds of runtime.
inline ModelParams toy_params(double mass_ratio_M_over_mu) {
    if (!(mass_ratio_M_over_mu > 0.0))
        throw std::invalid_argument("toy_params: mass ratio must be > 0");
    return ModelParams(1.0, 1.0, 1.0, mass_ratio_M_over_mu, 1.0, UnitSystem{1.0});
}

// Flat key=value config.  Recognized keys: lambda_per_sec, a_cm, gamma,
// M_over_mu, mass_ratio, kappa.  gamma wins over kappa; with neither given
// the lambda/mu identification is used.
inline ModelParams params_from_config(const std::map<std::string, std::string>& kv) {
    auto get = [&kv](const std::string& k, double dflt, bool* present = nullptr) {
        auto it = kv.find(k);
        if (present) *present = it != kv.end();
        if (it == kv.end()) return dflt;
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size())
            throw std::invalid_argument("config: bad numeric value for " + k);
        return v;
    };
    const double a_cm = get("a_cm", 1.0e-5);
    UnitSystem units{a_cm};
    const double lambda = units.rate_per_sec_to_internal(get("lambda_per_sec", 1.0e-16));
    const double M = get("M_over_mu", kNucleonMassEV / units.energy_unit_ev());
    const double mass_ratio = get("mass_ratio", 1.0);
    bool has_gamma = false, has_kappa = false;
    double gamma = get("gamma", 0.0, &has_gamma);
    const double kappa = get("kappa", 0.0, &has_kappa);
    if (!has_gamma) gamma = has_kappa ? gamma_from_kappa(kappa) : lambda / 1.0;
    return ModelParams(lambda, 1.0, gamma, M, mass_ratio, units);
}

} // namespace cslab
