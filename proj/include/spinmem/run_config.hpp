#pragma once

// Run configuration shared by the CLI and the dataset writers. The same
// key=value syntax is used for config files and for the "# key=value" header
// of every emitted dataset, so a dataset header parses back into the
// configuration that produced it.

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "spinmem/core_model.hpp"

namespace spinmem
{

inline constexpr std::string_view tool_version = "0.3.0";

enum class Command
{
    Spectrum,
    SpinSpectrum,
    Efficiency,
    Sweep,
    Figure,
    Optimize,
};

inline std::string to_string(Command c)
{
    switch(c)
    {
        case Command::Spectrum: return "spectrum";
        case Command::SpinSpectrum: return "spin-spectrum";
        case Command::Efficiency: return "efficiency";
        case Command::Sweep: return "sweep";
        case Command::Figure: return "figure";
        case Command::Optimize: return "optimize";
    }
    return "efficiency";
}

inline Command parse_command(std::string_view s)
{
    for(auto c : {Command::Spectrum, Command::SpinSpectrum, Command::Efficiency, Command::Sweep, Command::Figure,
                  Command::Optimize})
        if(to_string(c) == s) return c;
    throw ConfigError("unknown command '" + std::string(s) + "'");
}

struct GridSpec
{
    double min = 0.0;
    double max = 20.0;
    int points = 401;
    bool log = false;

    bool operator==(const GridSpec&) const = default;
};

inline void check_grid(const GridSpec& g)
{
    if(!(g.min < g.max)) throw ConfigError("frequency grid needs omega_min < omega_max");
    if(g.points < 2) throw ConfigError("frequency grid needs at least 2 points");
    if(g.log && !(g.min > 0.0)) throw ConfigError("log grid needs omega_min > 0");
}

inline std::vector<double> make_grid(const GridSpec& g)
{
    check_grid(g);
    std::vector<double> out(static_cast<std::size_t>(g.points));
    const double n = static_cast<double>(g.points - 1);
    for(int i = 0; i < g.points; ++i)
    {
        const double t = i / n;
        out[i] = g.log ? g.min * std::pow(g.max / g.min, t) : g.min + t * (g.max - g.min);
    }
    out.back() = g.max;
    return out;
}

struct RunConfig
{
    Command command = Command::Efficiency;
    MediumParams params;
    Scheme scheme = Scheme::SinglePassEIT;
    double s_in_db = 3.0103;
    GridSpec grid;
    std::string format = "csv";
    std::string out; // empty: stdout
    std::optional<double> cooperativity;
    std::vector<double> sweep_c{10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0};
    std::string figure;
    double omega_lo = 0.1; // optimize bounds on the Rabi coupling
    double omega_hi = 100.0;

    double s_in() const { return db_to_linear(s_in_db); }

    bool operator==(const RunConfig&) const = default;
};

// A given cooperativity fixes the free coupling parameter: transit = C gamma / g2n
// for a single pass, g2n = C T gamma in a cavity.
inline MediumParams with_cooperativity(MediumParams p, Scheme scheme, double c)
{
    if(!(c > 0.0)) throw NonPositiveParameter("cooperativity", c);
    if(is_cavity(scheme))
    {
        if(!p.cavity_T) throw MissingCavityTransmission();
        p.g2n = c * *p.cavity_T * p.gamma;
    }
    else
    {
        if(!(p.g2n > 0.0)) throw NonPositiveParameter("g2n", p.g2n);
        p.transit = c * p.gamma / p.g2n;
    }
    return p;
}

inline ValidatedParams resolve(const RunConfig& cfg)
{
    MediumParams p = cfg.params;
    if(cfg.cooperativity) p = with_cooperativity(p, cfg.scheme, *cfg.cooperativity);
    return validate(p, cfg.scheme);
}

// Shortest text that reads back to the same double.
inline std::string format_number(double x)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

inline double parse_number(std::string_view key, std::string_view text)
{
    double x = 0.0;
    const auto r = std::from_chars(text.data(), text.data() + text.size(), x);
    if(r.ec != std::errc{} || r.ptr != text.data() + text.size())
        throw ConfigError("key '" + std::string(key) + "': '" + std::string(text) + "' is not a number");
    return x;
}

inline bool parse_bool(std::string_view key, std::string_view text)
{
    if(text == "true" || text == "1") return true;
    if(text == "false" || text == "0") return false;
    throw ConfigError("key '" + std::string(key) + "': expected true or false, got '" + std::string(text) + "'");
}

inline std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if(b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<double> parse_number_list(std::string_view key, std::string_view text)
{
    std::vector<double> out;
    while(!text.empty())
    {
        const auto comma = text.find(',');
        out.push_back(parse_number(key, trim(text.substr(0, comma))));
        if(comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if(out.empty()) throw ConfigError("key '" + std::string(key) + "' needs at least one value");
    return out;
}

inline void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value)
{
    auto num = [&] { return parse_number(key, value); };
    auto& p = cfg.params;
    if(key == "command") cfg.command = parse_command(value);
    else if(key == "scheme") cfg.scheme = parse_scheme(value);
    else if(key == "gamma") p.gamma = num();
    else if(key == "gamma0") p.gamma0 = num();
    else if(key == "omega_rabi") p.omega_rabi = num();
    else if(key == "delta1") p.delta1 = num();
    else if(key == "g2n") p.g2n = num();
    else if(key == "transit") p.transit = num();
    else if(key == "n_atoms") p.n_atoms = num();
    else if(key == "cavity_T") p.cavity_T = num();
    else if(key == "cooperativity") cfg.cooperativity = num();
    else if(key == "s_in_db") cfg.s_in_db = num();
    else if(key == "omega_min") cfg.grid.min = num();
    else if(key == "omega_max") cfg.grid.max = num();
    else if(key == "points") cfg.grid.points = static_cast<int>(num());
    else if(key == "log_grid") cfg.grid.log = parse_bool(key, value);
    else if(key == "format") cfg.format = std::string(value);
    else if(key == "out") cfg.out = std::string(value);
    else if(key == "c_values") cfg.sweep_c = parse_number_list(key, value);
    else if(key == "figure") cfg.figure = std::string(value);
    else if(key == "omega_lo") cfg.omega_lo = num();
    else if(key == "omega_hi") cfg.omega_hi = num();
    else throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

// One setting per line, '#' starts a comment. Keys not produced by the
// configuration itself (tool_version, result.*) are skipped when skip_derived is set.
inline RunConfig parse_config(std::istream& in, RunConfig cfg = {}, bool skip_derived = false)
{
    std::string line;
    int lineno = 0;
    while(std::getline(in, line))
    {
        ++lineno;
        std::string_view s = line;
        if(skip_derived)
        {
            if(s.empty() || s.front() != '#') continue;
            s.remove_prefix(1);
        }
        else if(const auto hash = s.find('#'); hash != std::string_view::npos)
        {
            s = s.substr(0, hash);
        }
        s = trim(s);
        if(s.empty()) continue;
        const auto eq = s.find('=');
        if(eq == std::string_view::npos)
        {
            if(skip_derived) continue;
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        }
        const auto key = trim(s.substr(0, eq));
        const auto value = trim(s.substr(eq + 1));
        if(skip_derived && (key == "tool_version" || key.starts_with("result."))) continue;
        apply_setting(cfg, key, value);
    }
    return cfg;
}

inline RunConfig load_config(const std::string& path, RunConfig base = {})
{
    std::ifstream f(path);
    if(!f) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(f, std::move(base));
}

inline std::vector<std::pair<std::string, std::string>> config_metadata(const RunConfig& cfg)
{
    const auto& p = cfg.params;
    std::vector<std::pair<std::string, std::string>> m{
        {"tool_version", std::string(tool_version)},
        {"command", to_string(cfg.command)},
        {"scheme", to_string(cfg.scheme)},
        {"gamma", format_number(p.gamma)},
        {"gamma0", format_number(p.gamma0)},
        {"omega_rabi", format_number(p.omega_rabi)},
        {"delta1", format_number(p.delta1)},
        {"g2n", format_number(p.g2n)},
        {"transit", format_number(p.transit)},
        {"n_atoms", format_number(p.n_atoms)},
    };
    if(p.cavity_T) m.emplace_back("cavity_T", format_number(*p.cavity_T));
    if(cfg.cooperativity) m.emplace_back("cooperativity", format_number(*cfg.cooperativity));
    m.emplace_back("s_in_db", format_number(cfg.s_in_db));
    m.emplace_back("omega_min", format_number(cfg.grid.min));
    m.emplace_back("omega_max", format_number(cfg.grid.max));
    m.emplace_back("points", std::to_string(cfg.grid.points));
    m.emplace_back("log_grid", cfg.grid.log ? "true" : "false");
    m.emplace_back("format", cfg.format);
    if(!cfg.out.empty()) m.emplace_back("out", cfg.out);
    std::string cs;
    for(double c : cfg.sweep_c) cs += (cs.empty() ? "" : ",") + format_number(c);
    m.emplace_back("c_values", cs);
    if(!cfg.figure.empty()) m.emplace_back("figure", cfg.figure);
    m.emplace_back("omega_lo", format_number(cfg.omega_lo));
    m.emplace_back("omega_hi", format_number(cfg.omega_hi));
    return m;
}

// Reads the "# key=value" header of an emitted CSV back into a configuration.
inline RunConfig parse_metadata(std::istream& in) { return parse_config(in, {}, true); }

inline RunConfig parse_metadata(const std::string& text)
{
    std::istringstream in(text);
    return parse_metadata(in);
}

} // namespace spinmem
