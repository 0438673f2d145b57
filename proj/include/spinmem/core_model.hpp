#pragma once

// Physical parameter set, derived rates and regime checks.
//
// Unit convention: every rate is expressed in units of the optical dipole
// decay rate gamma (normally 1), frequencies in units of gamma and times in
// units of 1/gamma. gamma itself is kept as a field so that the formulas stay
// dimensionally explicit.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinmem/errors.hpp"

namespace spinmem
{

enum class Scheme
{
    SinglePassEIT,
    SinglePassRaman,
    CavityEIT,
    CavityRaman,
};

inline bool is_cavity(Scheme s) { return s == Scheme::CavityEIT || s == Scheme::CavityRaman; }
inline bool is_raman(Scheme s) { return s == Scheme::SinglePassRaman || s == Scheme::CavityRaman; }

inline std::string to_string(Scheme s)
{
    switch(s)
    {
        case Scheme::SinglePassEIT: return "eit";
        case Scheme::SinglePassRaman: return "raman";
        case Scheme::CavityEIT: return "cavity-eit";
        case Scheme::CavityRaman: return "cavity-raman";
    }
    return "eit";
}

inline Scheme parse_scheme(std::string_view name)
{
    if(name == "eit") return Scheme::SinglePassEIT;
    if(name == "raman") return Scheme::SinglePassRaman;
    if(name == "cavity-eit") return Scheme::CavityEIT;
    if(name == "cavity-raman") return Scheme::CavityRaman;
    throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

struct MediumParams
{
    double gamma = 1.0;       // optical dipole decay rate
    double gamma0 = 0.0;      // ground-state coherence decay rate
    double omega_rabi = 1.0;  // control Rabi coupling, assumed real
    double delta1 = 0.0;      // one-photon detuning (Raman only)
    double g2n = 1.0e4;       // collective coupling g^2 N, units of gamma^2
    double transit = 1.0e-2;  // vacuum transit time L/c
    double n_atoms = 1.0e6;
    std::optional<double> cavity_T;

    bool operator==(const MediumParams&) const = default;
};

// Frequency-flat incident amplitude-quadrature spectrum (shot noise = 1).
struct InputField
{
    double s_x_in = 1.0;

    explicit InputField(double s) : s_x_in(s)
    {
        if(!(s > 0.0)) throw NonPositiveParameter("s_x_in", s);
    }
    // Minimum-uncertainty companion.
    double phase_spectrum() const { return 1.0 / s_x_in; }
};

struct RegimeFlags
{
    bool eit_transfer = false;         // gamma0 < Gamma_E/sqrt(C) < gamma
    bool raman_transfer = false;       // gamma0 < sqrt(C) Gamma_R < gamma
    bool raman_large_detuning = false; // |delta1| >= 10 gamma
    bool raman_weak_pumping = false;   // Gamma_R <= gamma / 10
};

struct ValidatedParams
{
    MediumParams params;
    Scheme scheme = Scheme::SinglePassEIT;
    double cooperativity = 0.0;
    double gamma_e = 0.0;
    std::optional<double> gamma_r;
    RegimeFlags flags;
    std::vector<std::string> warnings;

    // Raman rate; throws MissingDetuning when delta1 was zero.
    double raman_rate() const
    {
        if(!gamma_r) throw MissingDetuning();
        return *gamma_r;
    }
};

inline double gamma_e(const MediumParams& p) { return p.omega_rabi * p.omega_rabi / p.gamma; }

inline double gamma_r(const MediumParams& p)
{
    if(p.delta1 == 0.0) throw MissingDetuning();
    return p.gamma * p.omega_rabi * p.omega_rabi / (p.delta1 * p.delta1);
}

struct PumpingRates
{
    double eit = 0.0;
    double raman = 0.0;
};

inline PumpingRates pumping_rates(const MediumParams& p) { return {gamma_e(p), gamma_r(p)}; }

// C = g^2 N L/(gamma c) single pass, g^2 N/(T gamma) in a cavity.
inline double cooperativity(const MediumParams& p, Scheme scheme)
{
    if(is_cavity(scheme))
    {
        if(!p.cavity_T) throw MissingCavityTransmission();
        return p.g2n / (*p.cavity_T * p.gamma);
    }
    return p.g2n * p.transit / p.gamma;
}

inline ValidatedParams validate(const MediumParams& p, Scheme scheme)
{
    if(!(p.gamma > 0.0)) throw NonPositiveParameter("gamma", p.gamma);
    if(!(p.gamma0 >= 0.0)) throw NonPositiveParameter("gamma0", p.gamma0);
    if(!(p.omega_rabi > 0.0)) throw NonPositiveParameter("omega_rabi", p.omega_rabi);
    if(!(p.g2n > 0.0)) throw NonPositiveParameter("g2n", p.g2n);
    if(!(p.transit >= 0.0)) throw NonPositiveParameter("transit", p.transit);
    if(!(p.n_atoms >= 1.0)) throw NonPositiveParameter("n_atoms", p.n_atoms);
    if(is_cavity(scheme))
    {
        if(!p.cavity_T) throw MissingCavityTransmission();
        if(!(*p.cavity_T > 0.0 && *p.cavity_T <= 1.0)) throw NonPositiveParameter("cavity_T", *p.cavity_T);
    }

    ValidatedParams v;
    v.params = p;
    v.scheme = scheme;
    v.cooperativity = cooperativity(p, scheme);
    if(!(v.cooperativity > 0.0)) throw NonPositiveParameter("cooperativity", v.cooperativity);
    v.gamma_e = gamma_e(p);
    if(p.delta1 != 0.0)
        v.gamma_r = gamma_r(p);
    else if(is_raman(scheme))
        throw MissingDetuning();

    const double sqrt_c = std::sqrt(v.cooperativity);
    const double eit_scale = v.gamma_e / sqrt_c;
    v.flags.eit_transfer = p.gamma0 < eit_scale && eit_scale < p.gamma;
    if(v.gamma_r)
    {
        const double raman_scale = sqrt_c * *v.gamma_r;
        v.flags.raman_transfer = p.gamma0 < raman_scale && raman_scale < p.gamma;
        v.flags.raman_large_detuning = std::abs(p.delta1) >= 10.0 * p.gamma;
        v.flags.raman_weak_pumping = *v.gamma_r <= 0.1 * p.gamma;
    }

    if(is_raman(scheme))
    {
        if(!v.flags.raman_transfer) v.warnings.emplace_back("outside Raman transfer regime gamma0 << sqrt(C) Gamma_R << gamma");
        if(!v.flags.raman_large_detuning) v.warnings.emplace_back("one-photon detuning is not large compared to gamma");
        if(!v.flags.raman_weak_pumping) v.warnings.emplace_back("Raman pumping rate is not small compared to gamma");
    }
    else if(!v.flags.eit_transfer)
    {
        v.warnings.emplace_back("outside EIT transfer regime gamma0 << Gamma_E/sqrt(C) << gamma");
    }
    return v;
}

// Squeezing level in dB (positive below shot noise) <-> linear spectrum value.
inline double db_to_linear(double db) { return std::pow(10.0, -db / 10.0); }
inline double linear_to_db(double linear) { return -10.0 * std::log10(linear); }

// Spectrum value on a 10 log10 scale, as used for output columns.
inline double spectrum_db(double linear) { return 10.0 * std::log10(linear); }

} // namespace spinmem
