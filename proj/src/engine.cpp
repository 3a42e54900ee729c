#include "ifm/engine.hpp"

#include "ifm/dynamics.hpp"
#include "ifm/rng.hpp"
#include "ifm/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ifm {

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::dark: return "dark";
        case Outcome::bright: return "bright";
        case Outcome::explosion: return "explosion";
    }
    return "?";
}

CycleTemplates make_cycle_templates(const EngineConfig& cfg) {
    const Params& p = cfg.params;
    FrequencyGrid g = build_grid(p);
    JointState s0 = initial_state(p, g, /*interferometer=*/true);

    EvolutionResult ev = evolve_no_explosion(s0, p, g);
    PortOutcomes ports = detect_ports(ev.final_state, p, g);

    CycleTemplates tpl;
    tpl.p_dark = ports.p_dark;
    tpl.p_bright = ports.p_bright;
    tpl.p_explosion = ports.p_explosion;

    const double raise = safe_raise_height(cfg.bouncer, cfg.raise_epsilon);

    // Dark walk-off: photon leaves with the measured dark-port energy,
    // the motional gain is banked as work by raising the floor under
    // the bomb while its weight sits above the leak budget.
    tpl.dark.outcome = Outcome::dark;
    tpl.dark.probability = ports.p_dark;
    tpl.dark.photon_energy_in = p.omega_ph;
    tpl.dark.photon_energy_out = ports.dark_report.E_ph;
    tpl.dark.motional_gain = ports.dark_report.E_m;
    tpl.dark.extractable_work = ports.dark_report.E_m;
    tpl.dark.platform_raise = raise;
    tpl.dark.reservoir_absorbed = 0;
    tpl.dark.bomb_lost = false;

    tpl.bright.outcome = Outcome::bright;
    tpl.bright.probability = ports.p_bright;
    tpl.bright.photon_energy_in = p.omega_ph;
    tpl.bright.photon_energy_out = ports.bright_report.E_ph;
    tpl.bright.motional_gain = ports.bright_report.E_m;
    tpl.bright.extractable_work = cfg.optimistic_bright ? ports.bright_report.E_m : 0;
    tpl.bright.platform_raise = cfg.optimistic_bright ? raise : 0;
    tpl.bright.reservoir_absorbed = 0;
    tpl.bright.bomb_lost = false;

    // Explosion: the whole photon is absorbed by the blast, nothing
    // comes out, and the bomb has to be replaced.
    tpl.explosion.outcome = Outcome::explosion;
    tpl.explosion.probability = ports.p_explosion;
    tpl.explosion.photon_energy_in = p.omega_ph;
    tpl.explosion.photon_energy_out = 0;
    tpl.explosion.motional_gain = 0;
    tpl.explosion.extractable_work = 0;
    tpl.explosion.platform_raise = 0;
    tpl.explosion.reservoir_absorbed = p.omega_ph;
    tpl.explosion.bomb_lost = true;

    return tpl;
}

namespace {

void accumulate(EngineLedger& led, const CycleRecord& rec, double weight) {
    led.n_cycles += 1;
    switch (rec.outcome) {
        case Outcome::dark: led.n_dark += 1; break;
        case Outcome::bright: led.n_bright += 1; break;
        case Outcome::explosion: led.n_explosion += 1; break;
    }
    led.total_photon_in += weight * rec.photon_energy_in;
    led.total_photon_out += weight * rec.photon_energy_out;
    led.total_motional_gain += weight * rec.motional_gain;
    led.total_work += weight * rec.extractable_work;
    led.total_absorbed += weight * rec.reservoir_absorbed;
    if (rec.bomb_lost) led.bombs_lost += 1;
}

} // namespace

EngineLedger run_cycles_expectation(const EngineConfig& cfg) {
    CycleTemplates tpl = make_cycle_templates(cfg);
    EngineLedger led;
    for (const CycleRecord* rec : {&tpl.dark, &tpl.bright, &tpl.explosion}) {
        if (rec->probability == 0.0) continue; // an outcome that never fires
        led.records.push_back(*rec);
        accumulate(led, *rec, rec->probability);
    }
    // n_cycles counts records in expectation mode; the probabilities
    // carry the weights.
    return led;
}

EngineLedger run_cycles_sampled(const EngineConfig& cfg, long n, std::uint64_t seed,
                                long max_records) {
    if (n < 0) throw std::invalid_argument("cycle count must be nonnegative");
    CycleTemplates tpl = make_cycle_templates(cfg);
    EngineLedger led;
    led.records.reserve(static_cast<std::size_t>(std::min(n, max_records)));
    Rng rng(seed);
    for (long i = 0; i < n; ++i) {
        double u = rng.uniform();
        const CycleRecord* rec;
        if (u < tpl.p_dark) rec = &tpl.dark;
        else if (u < tpl.p_dark + tpl.p_bright) rec = &tpl.bright;
        else rec = &tpl.explosion;
        CycleRecord sampled = *rec;
        sampled.probability = 1.0;
        if (static_cast<long>(led.records.size()) < max_records) {
            led.records.push_back(sampled);
        } else {
            led.records_truncated = true;
        }
        accumulate(led, sampled, 1.0);
    }
    return led;
}

YieldReport expected_yield(const EngineConfig& cfg) {
    CycleTemplates tpl = make_cycle_templates(cfg);
    YieldReport y;
    y.work_per_photon = tpl.p_dark * tpl.dark.extractable_work
                        + tpl.p_bright * tpl.bright.extractable_work;
    y.photon_energy_cost =
        tpl.p_dark * (tpl.dark.photon_energy_in - tpl.dark.photon_energy_out)
        + tpl.p_bright * (tpl.bright.photon_energy_in - tpl.bright.photon_energy_out)
        + tpl.p_explosion * (tpl.explosion.photon_energy_in - tpl.explosion.photon_energy_out);
    y.bombs_lost_per_photon = tpl.p_explosion;
    return y;
}

AuditReport audit_ledger(const EngineLedger& ledger, const EngineConfig& cfg) {
    const Params& p = cfg.params;
    AuditReport rep;
    // The dark-port photon energy sits on a frequency grid whose packet
    // has width delta_omega_ph and spacing omega_m / shift_steps; both
    // contribute to how exactly in = out + gain + absorbed can close.
    FrequencyGrid g = build_grid(p);
    rep.tolerance = p.omega_m * (p.omega_m / p.delta_omega_ph + 10.0 * g.spacing / p.omega_m);
    for (const CycleRecord& rec : ledger.records) {
        double residual = rec.photon_energy_in - rec.photon_energy_out
                          - rec.motional_gain - rec.reservoir_absorbed;
        double mag = std::abs(residual);
        if (mag > rep.max_residual) rep.max_residual = mag;
        if (mag > rep.tolerance) rep.violations += 1;
    }
    return rep;
}

} // namespace ifm
