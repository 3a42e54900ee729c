#ifndef IFM_ENGINE_HPP
#define IFM_ENGINE_HPP

#include "ifm/bouncer.hpp"
#include "ifm/params.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ifm {

// One interrogation cycle of the measurement-driven engine: send a
// photon through the interferometer, read the port, settle the books.
//
//   dark walk-off:  the bomb is left in the excited-lean superposition
//                   worth omega_m / 2 of motional energy, all of it
//                   extractable by raising the floor.
//   bright:         the photon mostly passed; a small motional residue
//                   remains that the default policy writes off.
//   explosion:      the photon energy is dumped into the blast products
//                   and the bomb is spent.
enum class Outcome { dark, bright, explosion };

struct CycleRecord {
    Outcome outcome = Outcome::bright;
    double probability = 1.0;      // branch weight; 1 for sampled cycles
    double photon_energy_in = 0;   // hbar omega_ph
    double photon_energy_out = 0;
    double motional_gain = 0;
    double extractable_work = 0;
    double platform_raise = 0;     // units of z0
    double reservoir_absorbed = 0;
    bool bomb_lost = false;
};

struct EngineConfig {
    Params params;
    BouncerConfig bouncer;
    double raise_epsilon = 1e-3;  // leak budget for the floor raise
    bool optimistic_bright = false; // harvest the bright-port residue too
};

// The three outcome records and their probabilities for a parameter
// point, taken from one full grid pipeline run (not from the closed
// forms, which the tests compare against independently).
struct CycleTemplates {
    CycleRecord dark, bright, explosion;
    double p_dark = 0, p_bright = 0, p_explosion = 0;
};
CycleTemplates make_cycle_templates(const EngineConfig& cfg);

struct EngineLedger {
    std::vector<CycleRecord> records;
    bool records_truncated = false;
    long n_cycles = 0;
    long n_dark = 0, n_bright = 0, n_explosion = 0;
    double total_photon_in = 0, total_photon_out = 0;
    double total_motional_gain = 0, total_work = 0, total_absorbed = 0;
    long bombs_lost = 0;
};

// Single expected cycle: three probability-weighted records.
EngineLedger run_cycles_expectation(const EngineConfig& cfg);

// n sampled cycles.  Aggregates cover every cycle; at most max_records
// per-cycle rows are kept.
EngineLedger run_cycles_sampled(const EngineConfig& cfg, long n, std::uint64_t seed,
                                long max_records = 100000);

struct YieldReport {
    double work_per_photon = 0;
    double photon_energy_cost = 0;   // net photon energy consumed per cycle
    double bombs_lost_per_photon = 0;
};
YieldReport expected_yield(const EngineConfig& cfg);

// Energy-closure audit: every record must satisfy
// in = out + motional_gain + absorbed within the grid tolerance.
struct AuditReport {
    long violations = 0;
    double tolerance = 0;
    double max_residual = 0;
};
AuditReport audit_ledger(const EngineLedger& ledger, const EngineConfig& cfg);

std::string outcome_name(Outcome o);

} // namespace ifm

#endif // IFM_ENGINE_HPP
