#pragma once

// Collective spin-noise spectra from the linearized field/atom equations,
// solved by a Fourier transform in time and a Laplace transform along the
// cloud. All spectra here are normalized to the coherent-state level N/4.
//
// A Langevin source at depth z' reaches the collective spin J through the
// kernel B_i [1 - lambda_i (1 - e^{-s0 u}) / s0], u = L - z', so each source
// contributes 4 D_i |B_i|^2 times the slab average of |kernel|^2. Lengths are
// measured in units of L, so s0 == alpha.
//
// Diffusion constants (steady state with every atom in level 2):
//   EIT    optical dipole  D = gamma/2   -> b_coh
//          ground coherence D = gamma0/2 -> b_spin
//   Raman  ground coherence D = Gamma_R/2 (pumping, b_coh) + gamma0/2 (b_spin)
// With these the coherent-input sum rule integrates to 1.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "spinmem/core_model.hpp"
#include "spinmem/numerics.hpp"
#include "spinmem/transfer_functions.hpp"

namespace spinmem
{

struct LaplaceCoefficients
{
    double omega = 0.0;
    cplx b1;       // coefficient of the incident field X^in
    cplx b2_coeff; // coefficient of the optical-dipole source
    cplx b3_coeff; // coefficient of the ground-coherence source
    cplx s0;       // spatial decay rate, units of 1/L
    cplx b2_zero;  // kernel zeros, units of 1/L
    cplx b3_zero;
    cplx d;        // local response denominator

    cplx lambda2() const { return s0 + b2_zero; }
    cplx lambda3() const { return s0 + b3_zero; }
};

struct SpinSpectrumBreakdown
{
    double omega = 0.0;
    double b_f = 0.0;
    double b_coh = 0.0;
    double b_spin = 0.0;

    double normalized(double s_in) const { return b_f * s_in + b_coh + b_spin; }
};

struct NoiseContributions
{
    double b_coh = 0.0;
    double b_spin = 0.0;
};

inline void require_single_pass(const ValidatedParams& v)
{
    if(is_cavity(v.scheme))
        throw UnsupportedScheme("atomic spectra are implemented for single-pass schemes only, got " +
                                to_string(v.scheme));
}

// EIT system: j_x[s] = B1/(s+s0) X^in + B2 (s-b2)/(s+s0) f_sy + B3 (s-b3)/(s+s0) f_jx.
inline LaplaceCoefficients laplace_coefficients(double omega, const ValidatedParams& v)
{
    const auto& p = v.params;
    const double g = std::sqrt(p.g2n / p.n_atoms);
    const cplx iw = I * omega;
    LaplaceCoefficients c;
    c.omega = omega;
    c.d = (p.gamma0 - iw) * (p.gamma - iw) + p.omega_rabi * p.omega_rabi;
    c.b1 = -(g * p.omega_rabi / 2.0) / c.d;
    c.b2_coeff = -p.omega_rabi / c.d;
    c.b3_coeff = (p.gamma - iw) / c.d;
    // pole of (c s - i omega + g^2 N (gamma0 - i omega)/D) X[s] = c X(0), times L
    const double coupling = p.g2n * p.transit;
    c.s0 = (-iw * p.transit * c.d + coupling * (p.gamma0 - iw)) / c.d;
    c.b2_zero = iw * p.transit;
    c.b3_zero = iw * p.transit - coupling / (p.gamma - iw);
    return c;
}

// Raman system, the same structure with one decaying coherence j_y at rate
// Gamma_R + gamma0, coupling g~ = g Omega/Delta, and no optical dipole source.
inline LaplaceCoefficients laplace_coefficients_raman(double omega, const ValidatedParams& v)
{
    const auto& p = v.params;
    const double gr = v.raman_rate();
    const double g_eff = std::sqrt(p.g2n / p.n_atoms) * p.omega_rabi / p.delta1;
    const double coupling = p.g2n * p.transit * p.omega_rabi * p.omega_rabi / (p.delta1 * p.delta1);
    const cplx iw = I * omega;
    LaplaceCoefficients c;
    c.omega = omega;
    c.d = gr + p.gamma0 - iw;
    c.b1 = (g_eff / 2.0) / c.d;
    c.b2_coeff = 0.0;
    c.b3_coeff = 1.0 / c.d;
    c.s0 = (-iw * p.transit * c.d + coupling) / c.d;
    c.b2_zero = iw * p.transit;
    c.b3_zero = iw * p.transit;
    return c;
}

// Average over x in [0, 1] of |1 - lambda x phi1(s0 x)|^2.
inline double slab_mean_sq(cplx lambda, cplx s0)
{
    if(std::abs(s0) >= 0.25)
    {
        const cplx q = lambda / s0;
        const cplx pc = 1.0 - q;
        return std::norm(pc) + 2.0 * std::real(std::conj(pc) * q * phi1(s0)) + std::norm(q) * phi1(2.0 * s0.real());
    }
    double acc = 0.0;
    for(const auto& [x, w] : gauss_legendre_unit<32>()) acc += w * std::norm(1.0 - lambda * x * phi1(s0 * x));
    return acc;
}

// Collective response to X^in, |(1 - e^{-alpha}) / alpha|^2.
inline double transfer_factor(cplx alpha_value) { return std::norm(phi1(alpha_value)); }

inline double b_f_eit(double omega, const ValidatedParams& v)
{
    const auto& p = v.params;
    const double d2 = std::norm(eit_denominator(omega, p));
    return v.cooperativity * v.gamma_e * p.gamma * p.gamma / d2 * transfer_factor(alpha_eit(omega, v));
}

inline double b_f_raman(double omega, const ValidatedParams& v)
{
    const double gr = v.raman_rate();
    const double gt = gr + v.params.gamma0;
    return v.cooperativity * gr / (gt * gt + omega * omega) * transfer_factor(alpha_raman(omega, v));
}

inline double b_f(double omega, const ValidatedParams& v)
{
    require_single_pass(v);
    return is_raman(v.scheme) ? b_f_raman(omega, v) : b_f_eit(omega, v);
}

inline NoiseContributions noise_contributions(double omega, const ValidatedParams& v)
{
    require_single_pass(v);
    const auto& p = v.params;
    NoiseContributions n;
    if(is_raman(v.scheme))
    {
        const auto c = laplace_coefficients_raman(omega, v);
        const double kernel = std::norm(c.b3_coeff) * slab_mean_sq(c.lambda3(), c.s0);
        n.b_coh = 2.0 * v.raman_rate() * kernel;
        n.b_spin = 2.0 * p.gamma0 * kernel;
        return n;
    }
    const auto c = laplace_coefficients(omega, v);
    n.b_coh = 2.0 * p.gamma * std::norm(c.b2_coeff) * slab_mean_sq(c.lambda2(), c.s0);
    n.b_spin = p.gamma0 == 0.0 ? 0.0 : 2.0 * p.gamma0 * std::norm(c.b3_coeff) * slab_mean_sq(c.lambda3(), c.s0);
    return n;
}

inline SpinSpectrumBreakdown spin_breakdown(double omega, const ValidatedParams& v)
{
    const auto n = noise_contributions(omega, v);
    return {omega, b_f(omega, v), n.b_coh, n.b_spin};
}

// S_J(omega) / (N/4) for the squeezed spin component (J_x in EIT, J_y in Raman).
inline double spin_spectrum_normalized(double omega, double s_in, const ValidatedParams& v)
{
    return spin_breakdown(omega, v).normalized(s_in);
}

inline double spin_spectrum(double omega, double s_in, const ValidatedParams& v)
{
    return 0.25 * v.params.n_atoms * spin_spectrum_normalized(omega, s_in, v);
}

// Quadrature setup seeded with the scheme's characteristic frequencies.
inline QuadratureOptions spectral_quadrature(const ValidatedParams& v)
{
    const auto& p = v.params;
    const double c = v.cooperativity;
    QuadratureOptions opt;
    opt.even = true;
    if(is_raman(v.scheme))
    {
        const double gr = v.raman_rate();
        const double gt = gr + p.gamma0;
        opt.scale = std::sqrt(c) * gr;
        opt.hints = {gt, std::sqrt(c * gr * gt), std::sqrt(c) * gr, c * gr, 10.0 * c * gr};
    }
    else
    {
        const double ge = v.gamma_e;
        opt.scale = ge / std::sqrt(c);
        opt.hints = {p.gamma0, ge / c, ge / std::sqrt(c), p.omega_rabi, p.gamma, 10.0 * p.omega_rabi};
    }
    if(p.transit > 0.0) opt.hints.push_back(1.0 / p.transit);
    return opt;
}

struct SpinVariance
{
    double variance = 0.0;   // Delta J^2
    double normalized = 0.0; // Delta J^2 / (N/4)
    double error_estimate = 0.0;
};

inline SpinVariance spin_variance(double s_in, const ValidatedParams& v)
{
    require_single_pass(v);
    const auto r = integrate_infinite([&](double om) { return spin_spectrum_normalized(om, s_in, v); },
                                      spectral_quadrature(v));
    return {0.25 * v.params.n_atoms * r.value, r.value, r.error_estimate};
}

struct ComponentIntegrals
{
    QuadratureResult b_f, b_coh, b_spin;
    double total() const { return b_f.value + b_coh.value + b_spin.value; }
};

inline ComponentIntegrals component_integrals(const ValidatedParams& v)
{
    require_single_pass(v);
    const auto opt = spectral_quadrature(v);
    ComponentIntegrals out;
    out.b_f = integrate_infinite([&](double om) { return b_f(om, v); }, opt);
    out.b_coh = integrate_infinite([&](double om) { return noise_contributions(om, v).b_coh; }, opt);
    out.b_spin = integrate_infinite([&](double om) { return noise_contributions(om, v).b_spin; }, opt);
    return out;
}

// Integral of B_f + B_coh + B_spin; equals 1 for a coherent input.
inline QuadratureResult sum_rule(const ValidatedParams& v)
{
    require_single_pass(v);
    return integrate_infinite([&](double om) { return spin_breakdown(om, v).normalized(1.0); },
                              spectral_quadrature(v));
}

inline double verify_sum_rule(const ValidatedParams& v, double tol = 1e-3)
{
    const double s = sum_rule(v).value;
    if(std::abs(s - 1.0) > tol) throw SumRuleViolation(s, tol);
    return s;
}

// eta = integral of B_f d omega / 2 pi; independent of the input squeezing.
inline QuadratureResult efficiency_exact_result(const ValidatedParams& v)
{
    require_single_pass(v);
    return integrate_infinite([&](double om) { return b_f(om, v); }, spectral_quadrature(v));
}

inline double efficiency_exact(const ValidatedParams& v) { return efficiency_exact_result(v).value; }

// Large-C, small-gamma0 closed forms.
inline double efficiency_asymptotic(const ValidatedParams& v)
{
    require_single_pass(v);
    const double c = v.cooperativity;
    const double base = std::sqrt(2.0 / std::numbers::pi) / std::sqrt(c);
    if(is_raman(v.scheme)) return 1.0 - base * std::sqrt(1.0 + v.params.gamma0 / v.raman_rate());
    return 1.0 - base - c * v.params.gamma0 / v.gamma_e;
}

// Transfer efficiency recovered from a variance: [1 - DJ^2/(N/4)] / (1 - S_in).
inline double efficiency_from_variance(double normalized_variance, double s_in)
{
    return (1.0 - normalized_variance) / (1.0 - s_in);
}

struct EfficiencyReport
{
    double eta_exact = 0.0;
    double eta_asymptotic = 0.0;
    double error_estimate = 0.0;
    Scheme scheme = Scheme::SinglePassEIT;
    RegimeFlags regime_flags;
    bool in_regime = false;
};

inline EfficiencyReport efficiency_report(const ValidatedParams& v)
{
    const auto r = efficiency_exact_result(v);
    EfficiencyReport rep;
    rep.eta_exact = r.value;
    rep.error_estimate = r.error_estimate;
    rep.eta_asymptotic = efficiency_asymptotic(v);
    rep.scheme = v.scheme;
    rep.regime_flags = v.flags;
    rep.in_regime = is_raman(v.scheme) ? v.flags.raman_transfer : v.flags.eit_transfer;
    return rep;
}

} // namespace spinmem
