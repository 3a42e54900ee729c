#include "ifm/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace ifm {

namespace {

// Applies the pair map for elapsed time t in place.  Pair (psi0[j],
// psi1[j - s]) evolves with conserved sum and difference damped by
// exp(-gamma t / 2); amplitudes 'decay' = exp(-gamma t / 4) applies to
// unpaired edge modes.
void pair_map(cvec& psi0, cvec& psi1, int s, double gamma, double t) {
    int n = (int)psi0.size();
    double e = std::exp(-gamma * t / 4.0); // amplitude factor
    double hp = 0.5 * (1.0 + e * e);       // (1 + e^{-gamma t/2}) / 2
    double hm = 0.5 * (1.0 - e * e);
    for (int j = 0; j < n; ++j) {
        int k = j - s; // partner of psi0[j]
        if (k >= 0) {
            cplx a = psi0[j], b = psi1[k];
            psi0[j] = hp * a + hm * b;
            psi1[k] = hm * a + hp * b;
        } else {
            psi0[j] *= e; // partner off-grid, pinned at zero
        }
        if (j + s >= n) psi1[j] *= e; // psi1 mode whose partner is off-grid
    }
}

} // namespace

EvolutionResult evolve_no_explosion(const JointState& s0, const Params& p,
                                    const FrequencyGrid& g, int n_samples) {
    if ((int)s0.psi0.size() != g.size())
        throw std::invalid_argument("evolve_no_explosion: state/grid size mismatch");
    if (p.tau < 0) throw std::invalid_argument("evolve_no_explosion: tau < 0");

    EvolutionResult res;
    double norm_in = s0.norm_sq();

    if (n_samples > 0) {
        res.trajectory.reserve(n_samples);
        for (int i = 0; i < n_samples; ++i) {
            double t = n_samples > 1 ? p.tau * i / (n_samples - 1) : p.tau;
            JointState st = s0; // pair map evaluated from 0, no error buildup
            pair_map(st.psi0, st.psi1, g.shift_steps, p.gamma, t);
            StateReport rep = expectations(st, g, p.omega_m);
            TrajectorySample smp;
            smp.t = t;
            smp.survival = st.norm_sq();
            smp.E_ph = rep.E_ph;
            smp.E_m = rep.E_m;
            smp.p_armI = rep.p_armI;
            smp.p_armII = rep.p_armII;
            res.trajectory.push_back(smp);
        }
    }

    res.final_state = s0;
    pair_map(res.final_state.psi0, res.final_state.psi1, g.shift_steps, p.gamma,
             p.tau);
    double norm_out = res.final_state.norm_sq();
    res.final_state.explosion_weight += norm_in - norm_out;
    res.survival_probability = norm_out;
    return res;
}

PortOutcomes detect_ports(const JointState& after, const Params& p,
                          const FrequencyGrid& g) {
    PortOutcomes out;
    PortPair ports = apply_exit_beamsplitter(after);
    out.p_dark = ports.dark.norm_sq();
    out.p_bright = ports.bright.norm_sq();
    out.p_explosion = after.explosion_weight;

    auto renorm = [](JointState& s) {
        double n = std::sqrt(s.norm_sq());
        if (n == 0) return;
        for (auto& a : s.psi0) a /= n;
        for (auto& a : s.psi1) a /= n;
        for (auto& a : s.beta) a /= n;
    };
    out.dark = ports.dark;
    out.bright = ports.bright;
    renorm(out.dark);
    renorm(out.bright);
    out.dark_report = expectations(out.dark, g, p.omega_m);
    out.bright_report = expectations(out.bright, g, p.omega_m);
    return out;
}

JointState phase_correction(const JointState& s, const Params& p,
                            const FrequencyGrid& g) {
    if (s.picture != JointState::Picture::interaction)
        throw std::invalid_argument("phase_correction: expected interaction picture");
    const double two_pi = 2.0 * M_PI;
    double periods = std::ceil(p.omega_m * p.tau / two_pi);
    double total = periods * two_pi / p.omega_m; // tau + tau2
    JointState out = s;
    for (int j = 0; j < g.size(); ++j) {
        cplx ph = std::exp(cplx(0.0, -g.omegas[j] * total));
        out.psi0[j] *= ph;
        if (!out.beta.empty()) out.beta[j] *= ph;
        // the |1> row carries omega_j + omega_m; the motional part is a
        // full number of turns by construction of total
        out.psi1[j] *= ph;
    }
    out.picture = JointState::Picture::schrodinger;
    return out;
}

} // namespace ifm
