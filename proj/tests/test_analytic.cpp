#include "doctest.h"

#include "ifm/analytic.hpp"
#include "ifm/observable.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

using namespace ifm;

namespace {

std::complex<double> find(const std::vector<AnalyticWeakValue>& v,
                          const std::string& id) {
    for (auto& e : v)
        if (e.id == id) return e.consistent;
    REQUIRE(false);
    return {};
}

} // namespace

TEST_CASE("closed forms reach the interaction-free limits") {
    ClosedForms lim = closed_forms_limit(10.0, 2.0);
    CHECK(lim.p_dark == 0.125);
    CHECK(lim.p_bright == 0.625);
    CHECK(lim.p_explosion == 0.25);
    CHECK(lim.E_bright_m == doctest::Approx(0.2).epsilon(1e-15));

    // far past the underflow knee the finite-tau forms sit on the limits
    ClosedForms far = closed_forms(1.0, 800.0, 10.0, 2.0);
    CHECK(far.p_dark == doctest::Approx(lim.p_dark).epsilon(1e-15));
    CHECK(far.p_bright == doctest::Approx(lim.p_bright).epsilon(1e-15));
    CHECK(far.p_explosion == doctest::Approx(lim.p_explosion).epsilon(1e-15));
    CHECK(std::isfinite(closed_forms(1.0, 1e6, 10.0, 2.0).E_bright_m));

    // no interrogation, no effect
    ClosedForms none = closed_forms(1.0, 0.0, 10.0, 2.0);
    CHECK(none.p_dark == 0.0);
    CHECK(none.p_bright == 1.0);
    CHECK(none.p_explosion == 0.0);
    CHECK(none.p_ne_interf == 1.0);
}

TEST_CASE("closed-form probabilities and energies close at random couplings") {
    std::mt19937 gen(23);
    std::uniform_real_distribution<double> ug(0.01, 5.0), ut(0.01, 50.0);
    for (int k = 0; k < 1000; ++k) {
        double gamma = ug(gen), tau = ut(gen);
        ClosedForms f = closed_forms(gamma, tau, 10.0, 2.0);
        CHECK(std::abs(f.p_dark + f.p_bright + f.p_explosion - 1.0) < 1e-14);
        CHECK(std::abs(f.p_ne_interf - f.p_dark - f.p_bright) < 1e-14);
        CHECK(std::abs(f.c0 + f.c1 - 1.0) < 1e-14);
        double balance = f.p_dark * (f.E_dark_ph + f.E_dark_m)
                         + f.p_bright * (f.E_bright_ph + f.E_bright_m)
                         + f.p_explosion * 10.0;
        CHECK(std::abs(balance - 10.0) < 1e-12);
    }
}

TEST_CASE("spot values at a long interrogation") {
    ClosedForms f = closed_forms(1.0, 20.0, 10.0, 2.0);
    CHECK(f.p_dark == doctest::Approx(0.12498865027520357).epsilon(1e-12));
    CHECK(f.E_dark_m == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.E_dark_ph == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(f.E_bright_m == doctest::Approx(0.2).epsilon(1e-3)); // -> omega_m / 10
}

TEST_CASE("weak-value panel satisfies the operator sum rules everywhere") {
    std::mt19937 gen(31);
    std::uniform_real_distribution<double> ug(0.05, 3.0), ut(0.5, 40.0), uf(0.0, 1.0);
    const double om_ph = 10.0, om_m = 2.0;

    for (int k = 0; k < 50; ++k) {
        double gamma = ug(gen), tau = ut(gen), t = uf(gen) * tau;
        auto v = analytic_weak_values(gamma, tau, t, om_ph, om_m);

        for (auto& e : v) CHECK(e.consistent.imag() == 0.0);

        auto PiI = find(v, "Pi_I"), PiII = find(v, "Pi_II");
        CHECK(std::abs(PiI + PiII - 1.0) < 1e-12);
        CHECK(std::abs(find(v, "Pi_I_0") + find(v, "Pi_I_1") - PiI) < 1e-12);
        CHECK(std::abs(find(v, "Pi_I_in") - PiI) < 1e-12);
        CHECK(std::abs(find(v, "Pi_I_out")) == 0.0);
        CHECK(std::abs(find(v, "Pi_II_0") - PiII) < 1e-12);
        CHECK(std::abs(find(v, "Pi_II_1")) == 0.0);
        CHECK(std::abs(find(v, "Pi_II_in") - PiII) < 1e-12);
        CHECK(std::abs(find(v, "Pi_II_out")) == 0.0);

        auto Hm = find(v, "H_m");
        CHECK(std::abs(Hm - om_m * find(v, "Pi_I_1")) < 1e-12);
        CHECK(std::abs(find(v, "H_m_Pi_I") - Hm) == 0.0);
        CHECK(std::abs(find(v, "H_m_Pi_II")) == 0.0);

        auto HphI = find(v, "H_ph_Pi_I");
        CHECK(std::abs(HphI - om_ph * find(v, "Pi_I_0")
                       - (om_ph - om_m) * find(v, "Pi_I_1")) < 1e-11);
        auto Hph = find(v, "H_ph");
        CHECK(std::abs(Hph - HphI - find(v, "H_ph_Pi_II")) < 1e-11);
        // conditioned energy conservation: photon + bomb = carrier
        CHECK(std::abs(Hph + Hm - om_ph) < 1e-10);
    }
}

TEST_CASE("arm-II photon energy is flat in the intermediate time") {
    auto ref = analytic_weak_values(1.0, 20.0, 0.0, 10.0, 2.0);
    auto base = find(ref, "H_ph_Pi_II");
    for (double t : {2.5, 10.0, 17.5, 20.0}) {
        auto v = analytic_weak_values(1.0, 20.0, t, 10.0, 2.0);
        CHECK(std::abs(find(v, "H_ph_Pi_II") - base) == 0.0);
    }
}

TEST_CASE("weak-value endpoints at a long interrogation") {
    auto v = analytic_weak_values(1.0, 20.0, 20.0, 10.0, 2.0);
    CHECK(find(v, "Pi_I_0").real() == doctest::Approx(-0.5000454019910097).epsilon(1e-12));
    CHECK(find(v, "Pi_I_1").real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(find(v, "Pi_II").real() == doctest::Approx(1.0000454019910097).epsilon(1e-12));
    CHECK(find(v, "H_m").real() == doctest::Approx(1.0).epsilon(1e-13)); // omega_m / 2
    CHECK(find(v, "H_ph_Pi_I").real()
          == doctest::Approx(-1.0004540199100969).epsilon(1e-12));
}

TEST_CASE("printed and consistent readings differ only in the damping power") {
    auto v = analytic_weak_values(1.0, 20.0, 10.0, 10.0, 2.0);
    for (auto& e : v) {
        if (e.id == "Pi_I_0" || e.id == "Pi_I_1" || e.id == "H_m"
            || e.id == "H_m_Pi_I" || e.id == "Pi_I_out" || e.id == "Pi_II_1") {
            CHECK(e.residual() == 0.0);
        }
        if (e.id == "Pi_II") {
            CHECK(e.residual() == doctest::Approx(4.539992985597152e-05).epsilon(1e-9));
        }
    }
}

TEST_CASE("panel ids line up with the observable report order") {
    auto v = analytic_weak_values(1.0, 5.0, 2.0, 10.0, 2.0);
    auto obs = standard_observables();
    REQUIRE(v.size() == obs.size());
    for (size_t i = 0; i < v.size(); ++i) CHECK(v[i].id == obs[i].id);
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(analytic_weak_values(1.0, 0.0, 0.0, 10.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(analytic_weak_values(0.0, 20.0, 1.0, 10.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(analytic_weak_values(1.0, 20.0, -0.1, 10.0, 2.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(analytic_weak_values(1.0, 20.0, 20.1, 10.0, 2.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(closed_forms(-1.0, 5.0, 10.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(closed_forms(1.0, -5.0, 10.0, 2.0), std::invalid_argument);
}
