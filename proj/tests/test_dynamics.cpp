#include "doctest.h"

#include "ifm/analytic.hpp"
#include "ifm/dynamics.hpp"
#include "ifm/params.hpp"
#include "ifm/state.hpp"

#include <cmath>
#include <complex>

using namespace ifm;

TEST_CASE("no-explosion survival matches the closed forms at any coupling") {
    for (double gt : {0.1, 1.0, 5.0, 20.0, 50.0}) {
        Params p;
        p.tau = gt; // gamma = 1
        FrequencyGrid g = build_grid(p);
        ClosedForms cf = closed_forms(p.gamma, p.tau, p.omega_ph, p.omega_m);

        auto single = evolve_no_explosion(initial_state(p, g, false), p, g);
        CHECK(std::abs(single.survival_probability - cf.p_ne_single) < 1e-8);
        CHECK(single.final_state.closed(1e-10));

        auto interf = evolve_no_explosion(initial_state(p, g, true), p, g);
        CHECK(std::abs(interf.survival_probability - cf.p_ne_interf) < 1e-8);
        CHECK(interf.final_state.closed(1e-10));
    }
}

TEST_CASE("port statistics match the closed forms") {
    for (double gt : {0.1, 1.0, 5.0, 20.0}) {
        Params p;
        p.tau = gt;
        FrequencyGrid g = build_grid(p);
        ClosedForms cf = closed_forms(p.gamma, p.tau, p.omega_ph, p.omega_m);

        auto ev = evolve_no_explosion(initial_state(p, g, true), p, g);
        PortOutcomes po = detect_ports(ev.final_state, p, g);

        CHECK(std::abs(po.p_dark + po.p_bright + po.p_explosion - 1.0) < 1e-14);
        CHECK(std::abs(po.p_dark - cf.p_dark) < 1e-10);
        CHECK(std::abs(po.p_bright - cf.p_bright) < 1e-10);
        CHECK(std::abs(po.p_explosion - cf.p_explosion) < 1e-10);
        CHECK(std::abs(po.dark.norm_sq() - 1.0) < 1e-12);
        CHECK(std::abs(po.bright.norm_sq() - 1.0) < 1e-12);
    }

    // long-interrogation spot value
    Params p;
    FrequencyGrid g = build_grid(p);
    auto ev = evolve_no_explosion(initial_state(p, g, true), p, g);
    PortOutcomes po = detect_ports(ev.final_state, p, g);
    CHECK(po.p_dark == doctest::Approx(0.12498865).epsilon(1e-6));
}

TEST_CASE("conditioned port energies split the motional quantum") {
    for (double gt : {1.0, 5.0, 20.0}) {
        Params p;
        p.tau = gt;
        FrequencyGrid g = build_grid(p);
        ClosedForms cf = closed_forms(p.gamma, p.tau, p.omega_ph, p.omega_m);

        auto ev = evolve_no_explosion(initial_state(p, g, true), p, g);
        PortOutcomes po = detect_ports(ev.final_state, p, g);

        // dark: the photon pays exactly half a quantum regardless of coupling
        CHECK(std::abs(po.dark_report.E_m - p.omega_m / 2) < 1e-10);
        CHECK(std::abs(po.dark_report.E_ph - (p.omega_ph - p.omega_m / 2)) < 1e-9);
        CHECK(std::abs(po.dark_report.E_m - cf.E_dark_m) < 1e-10);

        // bright: residue interpolating to omega_m / 10
        CHECK(std::abs(po.bright_report.E_m - cf.E_bright_m) < 1e-10);
        CHECK(std::abs(po.bright_report.E_ph + po.bright_report.E_m - p.omega_ph) < 1e-9);
    }
}

TEST_CASE("trajectory sampling walks the survival curve") {
    Params p;
    p.tau = 5.0;
    FrequencyGrid g = build_grid(p);
    auto ev = evolve_no_explosion(initial_state(p, g, true), p, g, 51);

    REQUIRE(ev.trajectory.size() == 51);
    CHECK(ev.trajectory.front().t == 0.0);
    CHECK(ev.trajectory.back().t == doctest::Approx(p.tau).epsilon(1e-14));
    CHECK(ev.trajectory.front().survival == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ev.trajectory.back().survival
          == doctest::Approx(ev.survival_probability).epsilon(1e-12));

    double prev = 2.0;
    for (auto& row : ev.trajectory) {
        CHECK(row.survival <= prev + 1e-14); // monotone leak
        prev = row.survival;
        double s = 0.5 + (1.0 + std::exp(-p.gamma * row.t)) / 4.0;
        CHECK(std::abs(row.survival - s) < 1e-8);
        CHECK(std::abs(row.p_armI + row.p_armII - 1.0) < 1e-12);
    }
}

TEST_CASE("a mode with no pair partner decays at a quarter rate") {
    Params p;
    p.tau = 2.0;
    FrequencyGrid g = build_grid(p);
    const int n = g.size();

    JointState s;
    s.psi0.assign(n, 0.0);
    s.psi1.assign(n, 0.0);
    s.beta.assign(n, 0.0);
    s.psi0[0] = 1.0; // partner at omega - omega_m falls off the grid

    auto ev = evolve_no_explosion(s, p, g);
    double expect = std::exp(-p.gamma * p.tau / 4.0);
    CHECK(std::abs(std::abs(ev.final_state.psi0[0]) - expect) < 1e-12);
    CHECK(std::abs(ev.survival_probability - expect * expect) < 1e-12);
    CHECK(std::abs(ev.final_state.explosion_weight - (1.0 - expect * expect)) < 1e-12);

    // same law on the |1> row at the opposite edge
    JointState s1;
    s1.psi0.assign(n, 0.0);
    s1.psi1.assign(n, 0.0);
    s1.beta.assign(n, 0.0);
    s1.psi1[n - 1] = 1.0;
    auto ev1 = evolve_no_explosion(s1, p, g);
    CHECK(std::abs(std::abs(ev1.final_state.psi1[n - 1]) - expect) < 1e-12);
}

TEST_CASE("phase correction squares the motional phase and flips the picture") {
    Params p;
    FrequencyGrid g = build_grid(p);
    auto ev = evolve_no_explosion(initial_state(p, g, true), p, g);
    const JointState& s = ev.final_state;

    JointState c = phase_correction(s, p, g);
    CHECK(c.picture == JointState::Picture::schrodinger);
    CHECK(std::abs(c.norm_sq() - s.norm_sq()) < 1e-13);

    // waiting time: ceil(omega_m tau / 2 pi) full turns, here 7 pi total
    double periods = std::ceil(p.omega_m * p.tau / (2.0 * M_PI));
    double total = periods * 2.0 * M_PI / p.omega_m;
    CHECK(total >= p.tau);
    CHECK(total - p.tau < 2.0 * M_PI / p.omega_m);

    double dev = 0, coherence_dev = 0;
    for (int j = 0; j < g.size(); ++j) {
        cplx ph = std::exp(cplx(0.0, -g.omegas[j] * total));
        dev = std::max(dev, std::abs(c.psi0[j] - ph * s.psi0[j]));
        // motional coherence per mode survives the wait untouched
        coherence_dev = std::max(coherence_dev,
                                 std::abs(c.psi1[j] * std::conj(c.psi0[j])
                                          - s.psi1[j] * std::conj(s.psi0[j])));
    }
    CHECK(dev < 1e-12);
    CHECK(coherence_dev < 1e-12);

    CHECK_THROWS_AS(phase_correction(c, p, g), std::invalid_argument);
}
