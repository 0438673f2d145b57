#pragma once

// Cavity-scheme comparison quantities. Only the X^in channel of the
// intracavity field is modeled; the atomic noise operators that complete the
// intracavity expressions are not.

#include <cmath>
#include <complex>

#include "spinmem/core_model.hpp"
#include "spinmem/numerics.hpp"

namespace spinmem
{

inline void require_cavity(const ValidatedParams& v)
{
    if(!is_cavity(v.scheme)) throw UnsupportedScheme("cavity quantity requested for " + to_string(v.scheme));
    if(!v.params.cavity_T) throw MissingCavityTransmission();
}

// EIT: gamma0 + Gamma_E/(1+2C).  Raman: gamma0 + (1+2C) Gamma_R.
inline double effective_linewidth(const ValidatedParams& v)
{
    require_cavity(v);
    const double c = v.cooperativity;
    if(is_raman(v.scheme)) return v.params.gamma0 + (1.0 + 2.0 * c) * v.raman_rate();
    return v.params.gamma0 + v.gamma_e / (1.0 + 2.0 * c);
}

// Coefficient of X^in in the intracavity quadrature X(omega).
inline cplx intracavity_input_coefficient(double omega, const ValidatedParams& v)
{
    const double gt = effective_linewidth(v);
    const double c = v.cooperativity;
    const double pre = 2.0 / std::sqrt(*v.params.cavity_T);
    if(is_raman(v.scheme)) return pre * (v.raman_rate() - I * omega) / (gt - I * omega);
    return pre / (1.0 + 2.0 * c) * (1.0 + 2.0 * c * gt / (gt - I * omega));
}

// X^out = sqrt(T) X - X^in, restricted to the X^in channel.
inline cplx output_input_coefficient(double omega, const ValidatedParams& v)
{
    return std::sqrt(*v.params.cavity_T) * intracavity_input_coefficient(omega, v) - 1.0;
}

// EIT: [2C/(1+2C)] [Gamma_E/(1+2C)] / [gamma0 + Gamma_E/(1+2C)].
// Raman: ground-state decay reduces the cooperativity to C Gamma_R/(Gamma_R + gamma0),
// giving 2C'/(1+2C'). The Raman form is an interpolation, not a derived result.
inline double efficiency_cavity(const ValidatedParams& v)
{
    require_cavity(v);
    const double c = v.cooperativity;
    if(is_raman(v.scheme))
    {
        const double gr = v.raman_rate();
        const double c_eff = c * gr / (gr + v.params.gamma0);
        return 2.0 * c_eff / (1.0 + 2.0 * c_eff);
    }
    const double pumped = v.gamma_e / (1.0 + 2.0 * c);
    return (2.0 * c / (1.0 + 2.0 * c)) * pumped / (v.params.gamma0 + pumped);
}

// Leading-order form 1 - 1/(1+2C) - (1+2C) gamma0/Gamma_E (EIT only).
inline double efficiency_cavity_approx(const ValidatedParams& v)
{
    require_cavity(v);
    if(is_raman(v.scheme)) return efficiency_cavity(v);
    const double k = 1.0 + 2.0 * v.cooperativity;
    return 1.0 - 1.0 / k - k * v.params.gamma0 / v.gamma_e;
}

inline bool cavity_efficiency_is_interpolated(Scheme s) { return s == Scheme::CavityRaman; }

struct CavityComparison
{
    double gamma_tilde = 0.0;
    double eta_cavity = 0.0;
    bool model_interpolated = false;
};

inline CavityComparison cavity_comparison(const ValidatedParams& v)
{
    return {effective_linewidth(v), efficiency_cavity(v), cavity_efficiency_is_interpolated(v.scheme)};
}

} // namespace spinmem
