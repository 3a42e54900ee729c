#ifndef IFM_STATE_HPP
#define IFM_STATE_HPP

#include "ifm/params.hpp"

#include <complex>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ifm {

typedef std::complex<double> cplx;
typedef std::vector<cplx> cvec;

// Joint photon + bomb state on a frequency grid.
//
//   psi0[j]  amplitude of (photon in arm I at omega_j) x (bomb in |0>)
//   psi1[j]  amplitude of (photon in arm I at omega_j) x (bomb in |1>)
//   beta[j]  amplitude of (photon in arm II at omega_j), bomb in |0>
//
// explosion_weight accumulates the norm lost to the explosion channel;
// norm() + explosion_weight stays 1 for any state evolved from a unit
// initial state.
struct JointState {
    enum class Picture { interaction, schrodinger };

    cvec psi0, psi1, beta;
    double explosion_weight = 0.0;
    Picture picture = Picture::interaction;

    double norm_sq() const;
    bool closed(double tol = 1e-10) const; // norm_sq + explosion_weight == 1
};

// Gaussian amplitude profile exp(-(omega-center)^2 / (4 width^2)),
// discrete-normalized: sum |phi_j|^2 = 1.  width is the intensity std.
cvec gaussian_wavepacket(const FrequencyGrid& g, double center, double width);

// Photon prepared at the carrier with the bomb in |0>.  With
// interferometer = true the entrance beamsplitter puts 1/sqrt(2) in each
// arm; otherwise everything sits in arm I.
JointState initial_state(const Params& p, const FrequencyGrid& g, bool interferometer);

// Motional basis change |in> = (|0> - |1>)/sqrt(2), |out> = (|0> + |1>)/sqrt(2)
// applied mode by mode to the arm-I amplitudes.  Returns (chi_in, chi_out).
std::pair<cvec, cvec> to_inout(const cvec& psi0, const cvec& psi1);
std::pair<cvec, cvec> from_inout(const cvec& chi_in, const cvec& chi_out);

// Exit beamsplitter: dark = (I - II)/sqrt(2), bright = (I + II)/sqrt(2).
// The returned port states are unnormalized (their norms are the port
// probabilities) and carry no arm-II content.
struct PortPair {
    JointState dark, bright;
};
PortPair apply_exit_beamsplitter(const JointState& s);

struct StateReport {
    double norm_sq = 0.0;
    double p_armI = 0.0, p_armII = 0.0; // normalized arm probabilities
    double E_ph = 0.0;                  // <H_ph> on the normalized state
    double E_m = 0.0;                   // <H_m>  on the normalized state
};
StateReport expectations(const JointState& s, const FrequencyGrid& g,
                         double omega_m);

// Round-trip serialization; the grid rides along so a state file is
// self-describing.  Complex amplitudes are stored as [re, im] pairs.
nlohmann::json state_json(const JointState& s, const FrequencyGrid& g);
std::pair<JointState, FrequencyGrid> state_from_json(const nlohmann::json& j);

} // namespace ifm

#endif // IFM_STATE_HPP
