#ifndef IFM_WEAKVALUES_HPP
#define IFM_WEAKVALUES_HPP

#include "ifm/observable.hpp"
#include "ifm/params.hpp"
#include "ifm/state.hpp"

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace ifm {

// Rank-reduced form of the conditioned no-explosion propagator on the
// span actually reached from the standard initial state: arm II is
// untouched, the symmetric pair combination of the initial packet is
// conserved, the antisymmetric one decays at gamma/2, and partnerless
// grid-edge rows keep their quarter-rate law.  Within that span this
// map equals evolve_no_explosion; outside it, it projects.  The norm
// shed by the map lands in explosion_weight.
JointState effective_propagator_apply(const JointState& s, double t,
                                      const Params& p, const FrequencyGrid& g);

// Dark-port-conditioned weak value of a at intermediate time t in
// [0, tau].  Post-selection: the photon exits the dark port and nothing
// exploded; the post-selected state is the normalized dark branch of the
// forward-evolved state.  Throws std::domain_error when the dark branch
// is empty (gamma * tau = 0).
std::complex<double> weak_value(const Observable& a, double t, const Params& p,
                                const FrequencyGrid& g);

// Weak-value traces for a panel of observables on a uniform time grid.
// Projector rows are dimensionless; energy rows are reported in units of
// hbar * gamma.  Each row carries the spectral window that classifies a
// value as anomalous.
struct WeakValueSeries {
    std::vector<double> times; // absolute, 0 .. tau
    double gamma = 0;
    std::vector<std::string> ids;
    std::vector<double> unit_scale;                 // divisor applied per row
    std::vector<std::pair<double, double>> window;  // in report units
    std::vector<std::vector<std::complex<double>>> values;
};

WeakValueSeries weak_value_series(const std::vector<Observable>& panel,
                                  const Params& p, const FrequencyGrid& g,
                                  int n_times = 201);

// A weak value outside its observable's spectral window (or carrying an
// imaginary part) at some sample time.
struct Anomaly {
    std::string id;
    double t = 0;
    std::complex<double> value{0, 0};
    double lo = 0, hi = 0;
};

std::vector<Anomaly> detect_anomalies(const WeakValueSeries& s, double eps = 1e-9);

// Reduced backward propagation of the post-selected state: the dark
// state at tau is carried back to t on the four-coefficient ansatz
//   arm I |0>:  c0(t) phi(omega)          + d0(t) phi(omega - omega_m)
//   arm I |1>:  c1(t) phi(omega + omega_m) + d1(t) phi(omega)
// with (c0, c1) and (d0, d1) each a conserved-sum / damped-difference
// pair started from (1/2, 0) and (0, -1/2) at tau.
struct BackwardReport {
    std::vector<double> times;                  // tau down to 0, ascending
    std::vector<std::array<double, 4>> coeffs;  // raw c0, c1, d0, d1 at times
    std::array<double, 4> final_renormalized{}; // arm-I norm^2 scaled to 1/2
    double armI_max_amplitude = 0; // sup |arm I rows| / sup |phi|, at t = 0
    double pair_sum_drift = 0;     // conservation residual over the sweep
};

BackwardReport backward_propagate(const Params& p, const FrequencyGrid& g,
                                  int n_times = 201);

} // namespace ifm

#endif // IFM_WEAKVALUES_HPP
