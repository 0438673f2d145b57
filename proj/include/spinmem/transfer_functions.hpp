#pragma once

// Complex propagation exponents of the probe through the cloud: the output
// quadrature picks up exp(-alpha(omega)), so Re(alpha) is the absorption and
// -d Im(alpha)/d omega the group delay.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "spinmem/core_model.hpp"
#include "spinmem/numerics.hpp"

namespace spinmem
{

// D(omega) = (gamma0 - i omega)(gamma - i omega) + Omega^2
inline cplx eit_denominator(double omega, const MediumParams& p)
{
    return (p.gamma0 - I * omega) * (p.gamma - I * omega) + p.omega_rabi * p.omega_rabi;
}

inline cplx alpha_eit(double omega, const ValidatedParams& v)
{
    const auto& p = v.params;
    return -I * omega * p.transit + v.cooperativity * p.gamma * (p.gamma0 - I * omega) / eit_denominator(omega, p);
}

inline cplx alpha_raman(double omega, const ValidatedParams& v)
{
    const auto& p = v.params;
    const double gr = v.raman_rate();
    return -I * omega * p.transit + v.cooperativity * gr / (gr + p.gamma0 - I * omega);
}

inline cplx alpha(double omega, const ValidatedParams& v)
{
    return is_raman(v.scheme) ? alpha_raman(omega, v) : alpha_eit(omega, v);
}

// Zero-frequency absorption A = C gamma gamma0 / (gamma gamma0 + Omega^2).
inline double absorption_zero_freq(const ValidatedParams& v)
{
    const auto& p = v.params;
    const double gg0 = p.gamma * p.gamma0;
    return v.cooperativity * gg0 / (gg0 + p.omega_rabi * p.omega_rabi);
}

struct GroupVelocity
{
    double vg_over_c = 1.0;
    double excess_delay = 0.0; // L/v_g - L/c
    bool anomalous = false;    // negative excess delay
};

// Exact low-frequency slope of the EIT exponent: L/v_g - L/c =
// C gamma (Omega^2 - gamma0^2) / (Omega^2 + gamma gamma0)^2. The commonly
// quoted form with Omega^2 - gamma gamma0 in the numerator is the leading
// order in gamma0/gamma; see group_velocity_leading_order.
inline GroupVelocity group_velocity(const ValidatedParams& v)
{
    const auto& p = v.params;
    const double om2 = p.omega_rabi * p.omega_rabi;
    const double den = om2 + p.gamma * p.gamma0;
    GroupVelocity g;
    // C gamma / transit == g2n, which keeps g2n -> 0 well defined.
    const double slowdown = p.g2n * (om2 - p.gamma0 * p.gamma0) / (den * den);
    g.vg_over_c = 1.0 / (1.0 + slowdown);
    g.excess_delay = v.cooperativity * p.gamma * (om2 - p.gamma0 * p.gamma0) / (den * den);
    g.anomalous = om2 < p.gamma0 * p.gamma0;
    return g;
}

inline GroupVelocity group_velocity_leading_order(const ValidatedParams& v)
{
    const auto& p = v.params;
    const double om2 = p.omega_rabi * p.omega_rabi;
    const double gg0 = p.gamma * p.gamma0;
    GroupVelocity g;
    const double slowdown = p.g2n * (om2 - gg0) / ((om2 + gg0) * (om2 + gg0));
    g.vg_over_c = 1.0 / (1.0 + slowdown);
    g.excess_delay = p.transit * slowdown;
    g.anomalous = om2 < gg0;
    return g;
}

struct WindowWidth
{
    double closed_form = 0.0;
    std::optional<double> numeric; // half-absorption root, if one exists
};

namespace detail
{
inline constexpr double half_ln2 = 0.5 * std::numbers::ln2;
inline constexpr double width_search_max = 1e6;
} // namespace detail

// EIT transparency window: closed form Gamma_E sqrt[(ln2/2C)(1 - C gamma0/Gamma_E)]
// and the omega > 0 where exp(-2 Re alpha) drops to half its omega = 0 value.
inline WindowWidth transparency_width_eit(const ValidatedParams& v)
{
    const double c = v.cooperativity;
    const double ge = v.gamma_e;
    const double arg = (std::numbers::ln2 / (2.0 * c)) * (1.0 - c * v.params.gamma0 / ge);

    WindowWidth w;
    w.closed_form = arg > 0.0 ? ge * std::sqrt(arg) : 0.0;
    const double a0 = alpha_eit(0.0, v).real();
    w.numeric = first_crossing([&](double om) { return alpha_eit(om, v).real() - a0 - detail::half_ln2; },
                               1e-6 * v.params.gamma, detail::width_search_max * v.params.gamma);
    if(arg <= 0.0 && !w.numeric)
        throw NoWindowError("no EIT transparency window: C gamma0 >= Gamma_E and no half-absorption point");
    return w;
}

// Raman absorption hole: closed form sqrt(2/ln2) sqrt[C Gamma_R (Gamma_R + gamma0)]
// and the omega where exp(-2 Re alpha') climbs back to 1/2.
inline WindowWidth absorption_width_raman(const ValidatedParams& v)
{
    const double gr = v.raman_rate();
    WindowWidth w;
    w.closed_form = std::sqrt(2.0 / std::numbers::ln2) * std::sqrt(v.cooperativity * gr * (gr + v.params.gamma0));
    auto g = [&](double om) { return detail::half_ln2 - alpha_raman(om, v).real(); };
    if(g(0.0) < 0.0) w.numeric = first_crossing(g, 1e-6 * v.params.gamma, detail::width_search_max * v.params.gamma);
    return w;
}

} // namespace spinmem
