#ifndef IFM_OBSERVABLE_HPP
#define IFM_OBSERVABLE_HPP

#include "ifm/params.hpp"
#include "ifm/state.hpp"

#include <array>
#include <string>
#include <vector>

namespace ifm {

enum class Arm { I, II, both };

// Motional basis elements addressable by joint projectors.
enum class Motional { m0, m1, in, out };

// An observable of the form  (arm selector) x (2x2 motional matrix),
// optionally weighted by the photon frequency omega_j per mode or by a
// flat omega_m factor.  This covers every quantity the interferometer
// runs report: arm projectors, joint arm/motional projectors, H_ph, H_m
// and the arm-restricted energies.
struct Observable {
    enum class Weight { none, photon_frequency, motional_quantum };

    std::string id;
    Arm arm = Arm::both;
    std::array<double, 4> m = {1, 0, 0, 1}; // row-major 2x2 in the {|0>,|1>} basis
    Weight weight = Weight::none;

    static Observable arm_projector(Arm a);
    static Observable joint_projector(Arm a, Motional e);
    static Observable h_ph();
    static Observable h_m();
    static Observable h_ph_restricted(Arm a);
    static Observable h_m_restricted(Arm a);

    // True if the motional matrix mixes |0> and |1> or weights them
    // unequally; such operators take arm II out of the JointState sector.
    bool mixes_motional() const {
        return m[1] != 0.0 || m[2] != 0.0 || m[0] != m[3];
    }
};

// A |(psi0, psi1, beta)>  ->  |(psi0', psi1', beta')>.  Throws
// std::domain_error if the result would need an arm-II |1> component
// (only possible when arm covers II, the matrix mixes motional states
// and beta is populated); the extended two-arm state of the weak-value
// module has no such restriction.
JointState apply(const Observable& a, const JointState& s, const FrequencyGrid& g,
                 double omega_m);

// <s|A|s> / <s|s>
double expectation(const Observable& a, const JointState& s, const FrequencyGrid& g,
                   double omega_m);

// The panel of observables reported by the weak-value runs, in fixed
// report order.
std::vector<Observable> standard_observables();

} // namespace ifm

#endif // IFM_OBSERVABLE_HPP
