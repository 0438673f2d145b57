// Prints where the input squeezing goes at a given EIT operating point:
// the mapped fraction, the ground-state decoherence loss and the
// spectral-filtering loss.

#include <cstdio>
#include <cmath>
#include <cstdlib>

#include "spinmem/spinmem.hpp"

int main(int argc, char** argv)
{
    const double c = argc > 1 ? std::atof(argv[1]) : 100.0;
    const double gamma0 = argc > 2 ? std::atof(argv[2]) : 1e-3;

    spinmem::RunConfig cfg;
    cfg.cooperativity = c;
    cfg.params.gamma0 = gamma0;
    cfg.params.omega_rabi = std::sqrt(10.0);
    try
    {
        const auto v = spinmem::resolve(cfg);
        const auto parts = spinmem::component_integrals(v);
        const auto var = spinmem::spin_variance(cfg.s_in(), v);
        std::printf("C = %g, gamma0 = %g, Gamma_E = %g\n", v.cooperativity, gamma0, v.gamma_e);
        std::printf("  mapped (eta)        %.4f\n", parts.b_f.value);
        std::printf("  spontaneous/pumping %.4f\n", parts.b_coh.value);
        std::printf("  decoherence         %.4f\n", parts.b_spin.value);
        std::printf("  sum                 %.6f\n", parts.total());
        std::printf("  spin variance at %.2f dB input: %.4f of the coherent level\n", cfg.s_in_db, var.normalized);
        for(const auto& w : v.warnings) std::printf("  note: %s\n", w.c_str());
    }
    catch(const spinmem::Error& e)
    {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }
    return 0;
}
