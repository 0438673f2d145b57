#pragma once

// Tabular datasets behind every CLI command, plus their CSV / JSON writers.

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "spinmem/atomic_spectra.hpp"
#include "spinmem/cavity_model.hpp"
#include "spinmem/field_spectra.hpp"
#include "spinmem/numerics.hpp"
#include "spinmem/run_config.hpp"

namespace spinmem
{

using Cell = std::variant<double, std::string>;

struct Dataset
{
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> warnings; // not written to the table, reported by the caller

    void add_result(const std::string& key, double value) { metadata.emplace_back("result." + key, format_number(value)); }
    void add_result(const std::string& key, const std::string& value) { metadata.emplace_back("result." + key, value); }

    std::size_t column(const std::string& name) const
    {
        for(std::size_t i = 0; i < columns.size(); ++i)
            if(columns[i] == name) return i;
        throw Error("dataset has no column '" + name + "'");
    }

    double number(std::size_t row, const std::string& name) const { return std::get<double>(rows.at(row)[column(name)]); }

    const std::string* result(const std::string& key) const
    {
        for(const auto& [k, v] : metadata)
            if(k == "result." + key) return &v;
        return nullptr;
    }
};

inline void write_csv(std::ostream& os, const Dataset& d)
{
    for(const auto& [k, v] : d.metadata) os << "# " << k << '=' << v << '\n';
    for(std::size_t i = 0; i < d.columns.size(); ++i) os << (i ? "," : "") << d.columns[i];
    os << '\n';
    for(const auto& row : d.rows)
    {
        for(std::size_t i = 0; i < row.size(); ++i)
        {
            if(i) os << ',';
            if(const auto* x = std::get_if<double>(&row[i])) os << format_number(*x);
            else os << std::get<std::string>(row[i]);
        }
        os << '\n';
    }
}

inline nlohmann::json to_json(const Dataset& d)
{
    nlohmann::json j;
    j["metadata"] = nlohmann::json::object();
    for(const auto& [k, v] : d.metadata) j["metadata"][k] = v;
    j["columns"] = d.columns;
    j["rows"] = nlohmann::json::array();
    for(const auto& row : d.rows)
    {
        auto r = nlohmann::json::array();
        for(const auto& c : row) std::visit([&](const auto& x) { r.push_back(x); }, c);
        j["rows"].push_back(std::move(r));
    }
    return j;
}

inline void write_json(std::ostream& os, const Dataset& d) { os << std::setw(2) << to_json(d) << '\n'; }

inline void write_dataset(std::ostream& os, const Dataset& d, const std::string& format)
{
    if(format == "csv") write_csv(os, d);
    else if(format == "json") write_json(os, d);
    else throw ConfigError("unknown output format '" + format + "' (expected csv or json)");
}

inline RunConfig parse_json_metadata(const nlohmann::json& j)
{
    std::string text;
    for(const auto& [k, v] : j.at("metadata").items()) text += "# " + k + "=" + v.get<std::string>() + "\n";
    return parse_metadata(text);
}

namespace detail
{

inline Dataset start(const RunConfig& cfg)
{
    Dataset d;
    d.metadata = config_metadata(cfg);
    return d;
}

inline void add_flags(Dataset& d, const ValidatedParams& v)
{
    d.add_result("cooperativity", v.cooperativity);
    if(!is_raman(v.scheme)) d.add_result("eit_transfer_regime", v.flags.eit_transfer ? "true" : "false");
    else
    {
        d.add_result("raman_transfer_regime", v.flags.raman_transfer ? "true" : "false");
        d.add_result("raman_large_detuning", v.flags.raman_large_detuning ? "true" : "false");
        d.add_result("raman_weak_pumping", v.flags.raman_weak_pumping ? "true" : "false");
    }
    d.warnings.insert(d.warnings.end(), v.warnings.begin(), v.warnings.end());
}

inline std::string curve_label(double gamma0) { return "gamma0_" + format_number(gamma0); }

} // namespace detail

// Outgoing field squeezing spectrum.
inline Dataset spectrum_dataset(const RunConfig& cfg)
{
    const auto v = resolve(cfg);
    if(is_cavity(v.scheme))
        throw UnsupportedScheme("field spectra are implemented for single-pass schemes only, got " + to_string(v.scheme));
    auto d = detail::start(cfg);
    detail::add_flags(d, v);
    d.columns = {"omega_over_gamma", "s_out_linear", "s_out_db"};
    for(const auto& pt : field_spectrum(make_grid(cfg.grid), cfg.s_in(), v))
        d.rows.push_back({pt.omega / v.params.gamma, pt.s_out, spectrum_db(pt.s_out)});
    return d;
}

// Collective spin-noise spectrum and its components, normalized to N/4.
inline Dataset spin_spectrum_dataset(const RunConfig& cfg)
{
    const auto v = resolve(cfg);
    require_single_pass(v);
    auto d = detail::start(cfg);
    detail::add_flags(d, v);
    const auto grid = make_grid(cfg.grid);
    std::vector<SpinSpectrumBreakdown> pts(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { pts[i] = spin_breakdown(grid[i], v); });
    d.columns = {"omega_over_gamma", "b_f", "b_coh", "b_spin", "s_jx_normalized"};
    for(const auto& b : pts)
        d.rows.push_back({b.omega / v.params.gamma, b.b_f, b.b_coh, b.b_spin, b.normalized(cfg.s_in())});
    const auto var = spin_variance(cfg.s_in(), v);
    d.add_result("variance_normalized", var.normalized);
    d.add_result("eta_exact", efficiency_exact(v));
    return d;
}

inline Dataset efficiency_dataset(const RunConfig& cfg)
{
    const auto v = resolve(cfg);
    auto d = detail::start(cfg);
    detail::add_flags(d, v);
    if(is_cavity(v.scheme))
    {
        const auto cc = cavity_comparison(v);
        d.columns = {"cooperativity", "eta_cavity", "eta_cavity_approx", "gamma_tilde", "scheme"};
        d.rows.push_back({v.cooperativity, cc.eta_cavity, efficiency_cavity_approx(v), cc.gamma_tilde, to_string(v.scheme)});
        d.add_result("eta_cavity", cc.eta_cavity);
        d.add_result("model_interpolated", cc.model_interpolated ? "true" : "false");
        return d;
    }
    const auto rep = efficiency_report(v);
    d.columns = {"cooperativity", "eta_exact", "eta_asymptotic", "scheme"};
    d.rows.push_back({v.cooperativity, rep.eta_exact, rep.eta_asymptotic, to_string(v.scheme)});
    d.add_result("eta_exact", rep.eta_exact);
    d.add_result("eta_asymptotic", rep.eta_asymptotic);
    d.add_result("error_estimate", rep.error_estimate);
    return d;
}

// Efficiency versus cooperativity, all other parameters held fixed.
inline Dataset sweep_dataset(const RunConfig& cfg)
{
    if(cfg.sweep_c.empty()) throw ConfigError("sweep needs at least one cooperativity value");
    auto d = detail::start(cfg);
    const auto& cs = cfg.sweep_c;
    std::vector<std::vector<Cell>> rows(cs.size());
    std::vector<ValidatedParams> vs;
    for(double c : cs)
    {
        RunConfig point = cfg;
        point.cooperativity = c;
        vs.push_back(resolve(point));
    }
    parallel_for(cs.size(), [&](std::size_t i) {
        const auto& v = vs[i];
        if(is_cavity(v.scheme))
            rows[i] = {v.cooperativity, efficiency_cavity(v), efficiency_cavity_approx(v), to_string(v.scheme)};
        else
            rows[i] = {v.cooperativity, efficiency_exact(v), efficiency_asymptotic(v), to_string(v.scheme)};
    });
    d.columns = is_cavity(cfg.scheme)
                    ? std::vector<std::string>{"cooperativity", "eta_cavity", "eta_cavity_approx", "scheme"}
                    : std::vector<std::string>{"cooperativity", "eta_exact", "eta_asymptotic", "scheme"};
    d.rows = std::move(rows);
    for(const auto& v : vs)
        for(const auto& w : v.warnings) d.warnings.push_back("C=" + format_number(v.cooperativity) + ": " + w);
    return d;
}

// Default parameters of the five figure datasets. Grid and s_in may be overridden
// afterwards; gamma0 is the curve parameter for fig1 and fig3.
inline RunConfig figure_preset(const std::string& name)
{
    RunConfig cfg;
    cfg.command = Command::Figure;
    cfg.figure = name;
    cfg.s_in_db = 3.0103;
    cfg.cooperativity = 100.0;
    cfg.params.gamma0 = 1e-3;
    auto eit = [&] {
        cfg.scheme = Scheme::SinglePassEIT;
        cfg.params.omega_rabi = std::sqrt(10.0);
    };
    auto raman = [&] {
        cfg.scheme = Scheme::SinglePassRaman;
        cfg.params.omega_rabi = 1.0;
        cfg.params.delta1 = 10.0;
    };
    if(name == "fig1")
    {
        eit();
        cfg.grid = {0.0, 4.0, 401, false};
    }
    else if(name == "fig2")
    {
        eit();
        cfg.grid = {0.0, 5.0, 501, false};
    }
    else if(name == "fig3")
    {
        raman();
        cfg.grid = {0.0, 1.0, 401, false};
    }
    else if(name == "fig4")
    {
        raman();
        cfg.grid = {0.0, 2.0, 401, false};
    }
    else if(name == "fig5")
    {
        cfg.cooperativity.reset();
        cfg.params.cavity_T = 0.1;
        cfg.sweep_c.clear();
        for(int i = 0; i <= 30; ++i) cfg.sweep_c.push_back(std::pow(10.0, i / 10.0));
    }
    else
    {
        throw UnknownFigure(name);
    }
    return cfg;
}

inline const std::vector<double>& figure_gamma0_set()
{
    static const std::vector<double> set{0.0, 1e-3, 1e-2, 1e-1};
    return set;
}

namespace detail
{

inline Dataset field_figure(const RunConfig& cfg)
{
    auto d = start(cfg);
    const auto grid = make_grid(cfg.grid);
    d.columns = {"omega_over_gamma"};
    std::vector<std::vector<double>> curves;
    for(double g0 : figure_gamma0_set())
    {
        RunConfig c = cfg;
        c.params.gamma0 = g0;
        const auto v = resolve(c);
        d.columns.push_back("s_out_" + curve_label(g0));
        std::vector<double> col;
        for(double om : grid) col.push_back(s_out(om, cfg.s_in(), v));
        curves.push_back(std::move(col));
    }
    for(std::size_t i = 0; i < grid.size(); ++i)
    {
        std::vector<Cell> row{grid[i]};
        for(const auto& col : curves) row.emplace_back(col[i]);
        d.rows.push_back(std::move(row));
    }
    return d;
}

// Coherent (dashed) and squeezed (plain) input curves.
inline Dataset spin_figure(const RunConfig& cfg)
{
    const auto v = resolve(cfg);
    auto d = start(cfg);
    add_flags(d, v);
    const auto grid = make_grid(cfg.grid);
    std::vector<SpinSpectrumBreakdown> pts(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { pts[i] = spin_breakdown(grid[i], v); });
    d.columns = {"omega_over_gamma", "s_j_coherent", "s_j_squeezed"};
    for(const auto& b : pts) d.rows.push_back({b.omega, b.normalized(1.0), b.normalized(cfg.s_in())});
    const double eta = efficiency_exact(v);
    d.add_result("eta_exact", eta);
    d.add_result("variance_coherent", spin_variance(1.0, v).normalized);
    d.add_result("variance_squeezed", spin_variance(cfg.s_in(), v).normalized);
    d.add_result("variance_squeezed_predicted", 1.0 - eta * (1.0 - cfg.s_in()));
    return d;
}

inline Dataset efficiency_figure(const RunConfig& cfg)
{
    auto d = start(cfg);
    const auto& cs = cfg.sweep_c;
    const double gamma_e = 10.0, gamma_r = 0.01;
    auto params = [&](Scheme s, double c) {
        RunConfig p = cfg;
        p.scheme = s;
        p.cooperativity = c;
        if(is_raman(s))
        {
            p.params.omega_rabi = 1.0;
            p.params.delta1 = 1.0 / std::sqrt(gamma_r);
        }
        else
        {
            p.params.omega_rabi = std::sqrt(gamma_e);
        }
        return resolve(p);
    };
    std::vector<std::vector<Cell>> rows(cs.size());
    parallel_for(cs.size(), [&](std::size_t i) {
        const double c = cs[i];
        rows[i] = {c, efficiency_cavity(params(Scheme::CavityEIT, c)), efficiency_cavity(params(Scheme::CavityRaman, c)),
                   efficiency_exact(params(Scheme::SinglePassEIT, c)),
                   efficiency_exact(params(Scheme::SinglePassRaman, c))};
    });
    d.columns = {"cooperativity", "eta_cavity_eit", "eta_cavity_raman", "eta_sp_eit", "eta_sp_raman"};
    d.rows = std::move(rows);
    d.add_result("cavity_raman_model_interpolated", "true");
    return d;
}

} // namespace detail

inline Dataset figure_dataset(const RunConfig& cfg)
{
    const auto& name = cfg.figure;
    if(name == "fig1" || name == "fig3") return detail::field_figure(cfg);
    if(name == "fig2" || name == "fig4") return detail::spin_figure(cfg);
    if(name == "fig5") return detail::efficiency_figure(cfg);
    throw UnknownFigure(name);
}

struct OptimizeReport
{
    double omega_opt = 0.0;
    double eta_opt = 0.0;
    double pumping_rate = 0.0; // Gamma_E or Gamma_R at the optimum
    RegimeFlags flags;
};

// Maximizes the transfer efficiency over log(Omega) in [omega_lo, omega_hi].
inline OptimizeReport optimize_pumping(const RunConfig& cfg)
{
    if(!(cfg.omega_lo > 0.0)) throw BoundsError("optimize needs omega_lo > 0");
    if(!(cfg.omega_lo <= cfg.omega_hi)) throw BoundsError("optimize needs omega_lo <= omega_hi");
    auto at = [&](double log_omega) {
        RunConfig c = cfg;
        c.params.omega_rabi = std::exp(log_omega);
        return resolve(c);
    };
    auto eta = [&](double log_omega) {
        const auto v = at(log_omega);
        return is_cavity(v.scheme) ? efficiency_cavity(v) : efficiency_exact(v);
    };
    const auto best = golden_section_maximize(eta, std::log(cfg.omega_lo), std::log(cfg.omega_hi), 1e-5);
    const auto v = at(best.x);
    OptimizeReport r;
    r.omega_opt = v.params.omega_rabi;
    r.eta_opt = best.value;
    r.pumping_rate = is_raman(v.scheme) ? v.raman_rate() : v.gamma_e;
    r.flags = v.flags;
    return r;
}

inline Dataset optimize_dataset(const RunConfig& cfg)
{
    const auto r = optimize_pumping(cfg);
    auto d = detail::start(cfg);
    RunConfig at = cfg;
    at.params.omega_rabi = r.omega_opt;
    detail::add_flags(d, resolve(at));
    d.columns = {"omega_opt", "eta_opt", "pumping_rate", "scheme"};
    d.rows.push_back({r.omega_opt, r.eta_opt, r.pumping_rate, to_string(cfg.scheme)});
    d.add_result("omega_opt", r.omega_opt);
    d.add_result("eta_opt", r.eta_opt);
    return d;
}

inline Dataset run(const RunConfig& cfg)
{
    switch(cfg.command)
    {
        case Command::Spectrum: return spectrum_dataset(cfg);
        case Command::SpinSpectrum: return spin_spectrum_dataset(cfg);
        case Command::Efficiency: return efficiency_dataset(cfg);
        case Command::Sweep: return sweep_dataset(cfg);
        case Command::Figure: return figure_dataset(cfg);
        case Command::Optimize: return optimize_dataset(cfg);
    }
    throw ConfigError("no command");
}

} // namespace spinmem
