#pragma once

#include <cmath>

#include "spinmem/core_model.hpp"

namespace spinmem::fixtures
{

inline constexpr double kDefaultG2n = 1.0e4;

// Single-pass EIT point parameterized the way the figures are: C, Gamma_E, gamma0.
inline ValidatedParams eit(double c, double gamma_e, double gamma0, double g2n = kDefaultG2n)
{
    MediumParams p;
    p.gamma0 = gamma0;
    p.omega_rabi = std::sqrt(gamma_e);
    p.g2n = g2n;
    p.transit = c / g2n;
    return validate(p, Scheme::SinglePassEIT);
}

// Single-pass Raman point with Omega = gamma and Delta chosen to give Gamma_R.
inline ValidatedParams raman(double c, double gamma_r, double gamma0, double g2n = kDefaultG2n)
{
    MediumParams p;
    p.gamma0 = gamma0;
    p.omega_rabi = 1.0;
    p.delta1 = 1.0 / std::sqrt(gamma_r);
    p.g2n = g2n;
    p.transit = c / g2n;
    return validate(p, Scheme::SinglePassRaman);
}

inline ValidatedParams cavity(Scheme scheme, double c, double rate, double gamma0, double transmission = 0.1)
{
    MediumParams p;
    p.gamma0 = gamma0;
    p.cavity_T = transmission;
    p.g2n = c * transmission;
    if(is_raman(scheme))
    {
        p.omega_rabi = 1.0;
        p.delta1 = 1.0 / std::sqrt(rate);
    }
    else
    {
        p.omega_rabi = std::sqrt(rate);
    }
    return validate(p, scheme);
}

inline ValidatedParams fig2() { return eit(100.0, 10.0, 1e-3); }
inline ValidatedParams fig4() { return raman(100.0, 1e-2, 1e-3); }

} // namespace spinmem::fixtures
