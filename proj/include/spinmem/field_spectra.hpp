#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "spinmem/transfer_functions.hpp"

namespace spinmem
{

struct FieldSpectrumPoint
{
    double omega = 0.0;
    double s_out = 1.0;
};

// Propagation law shared by both quadratures and both schemes: the incident
// excess noise (s_in - 1) is damped by exp(-(alpha + alpha*)).
inline double attenuate(double s_in, cplx alpha_value)
{
    return 1.0 - (1.0 - s_in) * std::exp(-2.0 * alpha_value.real());
}

inline double s_out_eit(double omega, double s_in, const ValidatedParams& v)
{
    return attenuate(s_in, alpha_eit(omega, v));
}

inline double s_out_raman(double omega, double s_in, const ValidatedParams& v)
{
    return attenuate(s_in, alpha_raman(omega, v));
}

inline double s_out(double omega, double s_in, const ValidatedParams& v)
{
    return attenuate(s_in, alpha(omega, v));
}

// Phase-quadrature output for a minimum-uncertainty input (phase noise 1/s_in).
inline double conjugate_quadrature_spectrum(double omega, double s_in, const ValidatedParams& v)
{
    return attenuate(1.0 / s_in, alpha(omega, v));
}

inline std::vector<FieldSpectrumPoint> field_spectrum(std::span<const double> omegas, double s_in,
                                                      const ValidatedParams& v)
{
    std::vector<FieldSpectrumPoint> out;
    out.reserve(omegas.size());
    for(double om : omegas) out.push_back({om, s_out(om, s_in, v)});
    return out;
}

} // namespace spinmem
