#ifndef IFM_MICRO_HPP
#define IFM_MICRO_HPP

namespace ifm {

// First-principles check of the conditioned pair map: one photon over a
// sparse mode comb, a two-level bomb, and an explicit flat reservoir of
// explosion product modes, evolved unitarily in the single-excitation
// sector with the reservoir swept out (and its weight recorded) at every
// checkpoint.  All scales in units of the golden-rule rate gamma = 2 pi
// g^2 rho that the coupling is tuned to; times in 1/gamma.
//
// Validity needs the photon comb resolved against the linewidth
// (photon_spacing >> 1) and the band wide against it (band_width >> 1);
// narrower bands visibly bend the decay, which the Markovianity tests
// exploit.
struct MicroSpec {
    int n_photon = 5;
    double photon_spacing = 32.0;
    double omega_m = 32.0;        // must be an integer multiple of photon_spacing
    int n_reservoir = 1000;
    double band_width = 160.0;    // centered on the pair transition
    double dt_checkpoint = 0.25;  // reservoir sweep + comparison interval
    double t_final = 5.0;
    double substep_scale = 0.01;  // unitary substep: scale / max |H_diag|
    double coupling_scale = 1.0;  // multiplies g; model rate scales as its square
    double fit_t_min = 1.0;       // decay-rate fit window start
};

struct OracleReport {
    double fitted_rate = 0;         // log-linear fit of the in-component decay
    double model_rate = 0;          // coupling_scale^2, the golden-rule value
    double max_state_deviation = 0; // max over checkpoints, photon-sector L2
    double deviation_at_end = 0;
    double max_norm_drift = 0;      // substep unitarity witness
    double explosion_weight = 0;    // reservoir weight swept out in total
    int checkpoints = 0;
    long substeps = 0;
};

// Runs the microscopic model and compares each checkpoint against the
// closed-form pair map started from the same single occupied mode.
// Throws std::runtime_error if the integrator loses unitarity between
// sweeps (norm drift > 1e-6).
OracleReport run_micro_oracle(const MicroSpec& spec);

} // namespace ifm

#endif // IFM_MICRO_HPP
