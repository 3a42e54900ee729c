#ifndef IFM_DYNAMICS_HPP
#define IFM_DYNAMICS_HPP

#include "ifm/params.hpp"
#include "ifm/state.hpp"

#include <vector>

namespace ifm {

// One trajectory sample row (interaction picture, normalized state).
struct TrajectorySample {
    double t = 0;
    double survival = 0;
    double E_ph = 0, E_m = 0;
    double p_armI = 0, p_armII = 0;
};

struct EvolutionResult {
    JointState final_state; // sub-normalized: survival = norm_sq
    double survival_probability = 0;
    std::vector<TrajectorySample> trajectory; // empty unless requested
};

// Conditioned no-explosion dynamics for a time t = p.tau.
//
// In arm I the modes couple in pairs, (omega, |0>) with (omega - omega_m,
// |1>): the pair sum is conserved while the pair difference decays at
// gamma/2, so the map is closed-form per pair and the cost is linear in
// the grid.  A mode whose partner falls off the grid keeps the same law
// with the partner pinned at zero (amplitude decay gamma/4).  Arm II is
// free.  Norm lost from arm I accumulates into explosion_weight.
EvolutionResult evolve_no_explosion(const JointState& s0, const Params& p,
                                    const FrequencyGrid& g, int n_samples = 0);

// Exit beamsplitter + click statistics after an interferometer run.
struct PortOutcomes {
    double p_dark = 0, p_bright = 0, p_explosion = 0;
    JointState dark, bright;        // renormalized conditional states
    StateReport dark_report, bright_report;
};
PortOutcomes detect_ports(const JointState& after_evolution, const Params& p,
                          const FrequencyGrid& g);

// Rounds the elapsed time up to the next full motional period: waiting
// the extra tau2 = ceil(omega_m tau / 2 pi) 2 pi / omega_m - tau makes
// the free motional phase a multiple of 2 pi.  Converts the state to the
// Schrodinger picture at tau + tau2.
JointState phase_correction(const JointState& s, const Params& p,
                            const FrequencyGrid& g);

} // namespace ifm

#endif // IFM_DYNAMICS_HPP
