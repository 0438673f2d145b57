#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinmem/spinmem.hpp"

namespace
{

// Flags shared by every subcommand; only those actually given override the
// configuration (defaults, figure preset or config file).
struct Overrides
{
    std::optional<double> gamma0, omega_rabi, delta, g2n, transit, cooperativity, n_atoms, cavity_T, s_in_db;
    std::optional<double> omega_min, omega_max, omega_lo, omega_hi;
    std::optional<int> points;
    bool log_grid = false;
    std::optional<std::string> scheme, format, out, config;
    std::vector<double> c_values;

    void attach(CLI::App* app)
    {
        app->add_option("--gamma0", gamma0, "ground-state decoherence rate");
        app->add_option("--omega-rabi", omega_rabi, "control Rabi coupling");
        app->add_option("--delta", delta, "one-photon detuning (Raman)");
        app->add_option("--g2n", g2n, "collective coupling g^2 N");
        app->add_option("--transit", transit, "vacuum transit time L/c");
        app->add_option("--cooperativity", cooperativity, "cooperativity; fixes transit (single pass) or g2n (cavity)");
        app->add_option("--n-atoms", n_atoms, "number of atoms");
        app->add_option("--cavity-T", cavity_T, "output mirror transmission");
        app->add_option("--scheme", scheme, "eit | raman | cavity-eit | cavity-raman")
            ->check(CLI::IsMember({"eit", "raman", "cavity-eit", "cavity-raman"}));
        app->add_option("--s-in-db", s_in_db, "input squeezing in dB below shot noise");
        app->add_option("--omega-min", omega_min, "lowest grid frequency");
        app->add_option("--omega-max", omega_max, "highest grid frequency");
        app->add_option("--points", points, "number of grid points");
        app->add_flag("--log-grid", log_grid, "logarithmic frequency grid");
        app->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
        app->add_option("--out", out, "output file (default stdout)");
        app->add_option("--config", config, "key=value configuration file");
    }

    void apply(spinmem::RunConfig& cfg) const
    {
        auto& p = cfg.params;
        if(gamma0) p.gamma0 = *gamma0;
        if(omega_rabi) p.omega_rabi = *omega_rabi;
        if(delta) p.delta1 = *delta;
        if(g2n) p.g2n = *g2n;
        if(transit) p.transit = *transit;
        if(cooperativity) cfg.cooperativity = *cooperativity;
        if(n_atoms) p.n_atoms = *n_atoms;
        if(cavity_T) p.cavity_T = *cavity_T;
        if(scheme) cfg.scheme = spinmem::parse_scheme(*scheme);
        if(s_in_db) cfg.s_in_db = *s_in_db;
        if(omega_min) cfg.grid.min = *omega_min;
        if(omega_max) cfg.grid.max = *omega_max;
        if(points) cfg.grid.points = *points;
        if(log_grid) cfg.grid.log = true;
        if(format) cfg.format = *format;
        if(out) cfg.out = *out;
        if(!c_values.empty()) cfg.sweep_c = c_values;
        if(omega_lo) cfg.omega_lo = *omega_lo;
        if(omega_hi) cfg.omega_hi = *omega_hi;
    }
};

void print_summary(const spinmem::Dataset& d)
{
    for(const auto& [k, v] : d.metadata)
        if(k.starts_with("result.")) std::cout << k.substr(7) << '=' << v << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Squeezed-light storage in atomic ensembles: spectra, spin noise and transfer efficiencies"};
    app.require_subcommand(1);

    Overrides ov;
    std::string figure_name;
    struct Sub
    {
        spinmem::Command command;
        CLI::App* app;
    };
    std::vector<Sub> subs;
    auto add = [&](spinmem::Command c, const std::string& help) {
        auto* sub = app.add_subcommand(spinmem::to_string(c), help);
        ov.attach(sub);
        subs.push_back({c, sub});
        return sub;
    };
    add(spinmem::Command::Spectrum, "outgoing field squeezing spectrum");
    add(spinmem::Command::SpinSpectrum, "collective spin-noise spectrum");
    add(spinmem::Command::Efficiency, "transfer efficiency");
    add(spinmem::Command::Sweep, "efficiency versus cooperativity")
        ->add_option("--c-values", ov.c_values, "cooperativities to sweep")
        ->delimiter(',');
    add(spinmem::Command::Figure, "dataset for one of fig1..fig5")
        ->add_option("name", figure_name, "fig1 | fig2 | fig3 | fig4 | fig5")
        ->required();
    auto* opt = add(spinmem::Command::Optimize, "maximize efficiency over the Rabi coupling");
    opt->add_option("--omega-lo", ov.omega_lo, "lower bound on Omega");
    opt->add_option("--omega-hi", ov.omega_hi, "upper bound on Omega");

    CLI11_PARSE(app, argc, argv);

    try
    {
        spinmem::RunConfig cfg;
        auto command = spinmem::Command::Efficiency;
        for(const auto& s : subs)
            if(s.app->parsed()) command = s.command;
        if(command == spinmem::Command::Figure) cfg = spinmem::figure_preset(figure_name);
        if(ov.config) cfg = spinmem::load_config(*ov.config, cfg);
        cfg.command = command; // the subcommand wins over a command key in the file
        ov.apply(cfg);

        const auto d = spinmem::run(cfg);
        for(const auto& w : d.warnings) std::cerr << "warning: " << w << '\n';
        if(cfg.out.empty())
        {
            spinmem::write_dataset(std::cout, d, cfg.format);
        }
        else
        {
            std::ofstream f(cfg.out);
            if(!f) throw spinmem::ConfigError("cannot write '" + cfg.out + "'");
            spinmem::write_dataset(f, d, cfg.format);
            print_summary(d);
            std::cerr << "wrote " << d.rows.size() << " rows to " << cfg.out << '\n';
        }
    }
    catch(const spinmem::Error& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
