#ifndef IFM_CONFIG_HPP
#define IFM_CONFIG_HPP

#include "ifm/bouncer.hpp"
#include "ifm/engine.hpp"
#include "ifm/micro.hpp"
#include "ifm/params.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ifm {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full run configuration.  File format: flat "key = value" lines under
// [section] headers, # comments, blank lines ignored.  Sections and
// keys are closed sets; anything unrecognized is an error, as is a
// value that does not parse completely.
//
//   [params]   omega_ph delta_omega_ph omega_m gamma tau n_modes grid_span
//   [bouncer]  z0 z_max n_grid
//   [micro]    n_photon photon_spacing omega_m n_reservoir band_width
//              dt_checkpoint t_final substep_scale coupling_scale fit_t_min
//   [run]      cycles seed precision n_times format out raise_epsilon
//              bright_policy regime_factor
struct RunConfig {
    Params params;
    BouncerConfig bouncer;
    MicroSpec micro;

    long cycles = 1000;
    std::uint64_t seed = 12345;
    int precision = 12;    // significant digits in all numeric output, 6..17
    int n_times = 201;     // rows in time-resolved reports
    std::string format = "csv"; // csv | json
    std::string out_path;       // empty: stdout
    double raise_epsilon = 1e-3;
    std::string bright_policy = "none"; // none | optimistic
    double regime_factor = 10.0;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// "section.key=value" override, applied after file parsing.
void apply_override(RunConfig& c, const std::string& spec);

// Range and enum checks; throws ConfigError.
void validate(const RunConfig& c);

EngineConfig engine_config(const RunConfig& c);

} // namespace ifm

#endif // IFM_CONFIG_HPP
