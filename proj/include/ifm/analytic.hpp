#ifndef IFM_ANALYTIC_HPP
#define IFM_ANALYTIC_HPP

#include <complex>
#include <string>
#include <vector>

namespace ifm {

// Closed-form predictions for the narrow-bomb limit (wavepacket wide
// against omega_m, carrier far above it).  All energies are in hbar = 1
// units; g = exp(-gamma tau / 2) is the surviving pair-difference factor.
struct ClosedForms {
    double p_ne_single = 0;  // no-explosion probability, bomb arm alone
    double p_ne_interf = 0;  // no-explosion probability, interferometer
    double p_dark = 0;       // dark-port click
    double p_bright = 0;     // bright-port click
    double p_explosion = 0;  // bang
    double c0 = 0, c1 = 0;   // conditioned single-arm pair weights

    double E_dark_ph = 0;    // photon energy given a dark click
    double E_dark_m = 0;     // motional energy given a dark click
    double E_bright_ph = 0;  // photon energy given a bright click
    double E_bright_m = 0;   // motional energy given a bright click
};

ClosedForms closed_forms(double gamma, double tau, double omega_ph, double omega_m);

// tau -> infinity limits: p_dark -> 1/8, p_bright -> 5/8, p_explosion -> 1/4.
ClosedForms closed_forms_limit(double omega_ph, double omega_m);

// One dark-port-conditioned weak value, in two readings:
//
//   printed     the closed-form expression exactly as the derivation
//               chain records it
//   consistent  the member of the same family that satisfies the
//               operator sum rules and matches the grid numerics
//
// For most entries the two coincide; where they differ the printed form
// has exp(-gamma tau) where exp(-gamma tau / 2) keeps the family
// consistent, and residual() measures the gap.
struct AnalyticWeakValue {
    std::string id;
    std::complex<double> printed{0, 0};
    std::complex<double> consistent{0, 0};
    double residual() const { return std::abs(printed - consistent); }
};

// The full report panel at interrogation time tau, evaluated at time t
// inside [0, tau].  Throws std::domain_error at gamma * tau = 0 where
// the dark-port conditioning is empty.  Above gamma * tau ~ 700 the
// exponentials underflow and the asymptotic limits are substituted.
std::vector<AnalyticWeakValue> analytic_weak_values(double gamma, double tau,
                                                    double t, double omega_ph,
                                                    double omega_m);

} // namespace ifm

#endif // IFM_ANALYTIC_HPP
