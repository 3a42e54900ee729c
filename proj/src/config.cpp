#include "ifm/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ifm {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& where) {
    const char* c = v.c_str();
    char* end = nullptr;
    double x = std::strtod(c, &end);
    if (end == c || *end != '\0')
        throw ConfigError(where + ": not a number: '" + v + "'");
    return x;
}

long parse_long(const std::string& v, const std::string& where) {
    const char* c = v.c_str();
    char* end = nullptr;
    long x = std::strtol(c, &end, 10);
    if (end == c || *end != '\0')
        throw ConfigError(where + ": not an integer: '" + v + "'");
    return x;
}

std::uint64_t parse_u64(const std::string& v, const std::string& where) {
    const char* c = v.c_str();
    char* end = nullptr;
    unsigned long long x = std::strtoull(c, &end, 10);
    if (end == c || *end != '\0' || v.find('-') != std::string::npos)
        throw ConfigError(where + ": not a nonnegative integer: '" + v + "'");
    return x;
}

void set_key(RunConfig& c, const std::string& sec, const std::string& key,
             const std::string& val, const std::string& where) {
    auto d = [&] { return parse_double(val, where); };
    auto i = [&] { return (int)parse_long(val, where); };

    if (sec == "params") {
        if (key == "omega_ph") c.params.omega_ph = d();
        else if (key == "delta_omega_ph") c.params.delta_omega_ph = d();
        else if (key == "omega_m") c.params.omega_m = d();
        else if (key == "gamma") c.params.gamma = d();
        else if (key == "tau") c.params.tau = d();
        else if (key == "n_modes") c.params.n_modes = i();
        else if (key == "grid_span") c.params.grid_span = d();
        else throw ConfigError(where + ": unknown key 'params." + key + "'");
    } else if (sec == "bouncer") {
        if (key == "z0") c.bouncer.z0 = d();
        else if (key == "z_max") c.bouncer.z_max = d();
        else if (key == "n_grid") c.bouncer.n_grid = i();
        else throw ConfigError(where + ": unknown key 'bouncer." + key + "'");
    } else if (sec == "micro") {
        if (key == "n_photon") c.micro.n_photon = i();
        else if (key == "photon_spacing") c.micro.photon_spacing = d();
        else if (key == "omega_m") c.micro.omega_m = d();
        else if (key == "n_reservoir") c.micro.n_reservoir = i();
        else if (key == "band_width") c.micro.band_width = d();
        else if (key == "dt_checkpoint") c.micro.dt_checkpoint = d();
        else if (key == "t_final") c.micro.t_final = d();
        else if (key == "substep_scale") c.micro.substep_scale = d();
        else if (key == "coupling_scale") c.micro.coupling_scale = d();
        else if (key == "fit_t_min") c.micro.fit_t_min = d();
        else throw ConfigError(where + ": unknown key 'micro." + key + "'");
    } else if (sec == "run") {
        if (key == "cycles") c.cycles = parse_long(val, where);
        else if (key == "seed") c.seed = parse_u64(val, where);
        else if (key == "precision") c.precision = i();
        else if (key == "n_times") c.n_times = i();
        else if (key == "format") c.format = val;
        else if (key == "out") c.out_path = val;
        else if (key == "raise_epsilon") c.raise_epsilon = d();
        else if (key == "bright_policy") c.bright_policy = val;
        else if (key == "regime_factor") c.regime_factor = d();
        else throw ConfigError(where + ": unknown key 'run." + key + "'");
    } else {
        throw ConfigError(where + ": unknown section '[" + sec + "]'");
    }
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string line, sec;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::string where = "line " + std::to_string(lineno);

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(where + ": malformed section header");
            sec = trim(line.substr(1, line.size() - 2));
            if (sec.empty()) throw ConfigError(where + ": empty section name");
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError(where + ": expected 'key = value'");
        if (sec.empty())
            throw ConfigError(where + ": key outside any [section]");
        set_key(c, sec, key, val, where);
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

void apply_override(RunConfig& c, const std::string& spec) {
    size_t dot = spec.find('.');
    size_t eq = spec.find('=');
    if (dot == std::string::npos || eq == std::string::npos || dot > eq)
        throw ConfigError("override must be section.key=value: '" + spec + "'");
    std::string sec = trim(spec.substr(0, dot));
    std::string key = trim(spec.substr(dot + 1, eq - dot - 1));
    std::string val = trim(spec.substr(eq + 1));
    if (sec.empty() || key.empty() || val.empty())
        throw ConfigError("override must be section.key=value: '" + spec + "'");
    set_key(c, sec, key, val, "override '" + spec + "'");
}

void validate(const RunConfig& c) {
    if (c.precision < 6 || c.precision > 17)
        throw ConfigError("run.precision must be in [6, 17]");
    if (c.format != "csv" && c.format != "json")
        throw ConfigError("run.format must be csv or json");
    if (c.bright_policy != "none" && c.bright_policy != "optimistic")
        throw ConfigError("run.bright_policy must be none or optimistic");
    if (c.cycles < 0) throw ConfigError("run.cycles must be >= 0");
    if (c.n_times < 2) throw ConfigError("run.n_times must be >= 2");
    if (c.raise_epsilon <= 0) throw ConfigError("run.raise_epsilon must be > 0");
    if (c.regime_factor <= 0) throw ConfigError("run.regime_factor must be > 0");
    if (c.params.gamma < 0) throw ConfigError("params.gamma must be >= 0");
    if (c.params.tau < 0) throw ConfigError("params.tau must be >= 0");
    if (c.params.omega_m <= 0) throw ConfigError("params.omega_m must be > 0");
    if (c.params.delta_omega_ph <= 0)
        throw ConfigError("params.delta_omega_ph must be > 0");
    if (c.params.n_modes < 3) throw ConfigError("params.n_modes must be >= 3");
    if (c.params.grid_span <= 0) throw ConfigError("params.grid_span must be > 0");
    if (c.bouncer.n_grid < 16) throw ConfigError("bouncer.n_grid must be >= 16");
    if (c.bouncer.z0 <= 0 || c.bouncer.z_max <= 0)
        throw ConfigError("bouncer geometry must be positive");
}

EngineConfig engine_config(const RunConfig& c) {
    EngineConfig e;
    e.params = c.params;
    e.bouncer = c.bouncer;
    e.raise_epsilon = c.raise_epsilon;
    e.optimistic_bright = c.bright_policy == "optimistic";
    return e;
}

} // namespace ifm
