#include "doctest.h"

#include "ifm/analytic.hpp"
#include "ifm/dynamics.hpp"
#include "ifm/observable.hpp"
#include "ifm/params.hpp"
#include "ifm/weakvalues.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <set>

using namespace ifm;

namespace {

std::complex<double> analytic_consistent(const Params& p, double t,
                                         const std::string& id) {
    auto v = analytic_weak_values(p.gamma, p.tau, t, p.omega_ph, p.omega_m);
    for (auto& e : v)
        if (e.id == id) return e.consistent;
    REQUIRE(false);
    return {};
}

Observable by_id(const std::string& id) {
    for (auto& o : standard_observables())
        if (o.id == id) return o;
    REQUIRE(false);
    return {};
}

} // namespace

TEST_CASE("grid weak values land on the closed forms") {
    Params p; // gamma tau = 20
    FrequencyGrid g = build_grid(p);

    const char* ids[] = {"Pi_I_0", "Pi_I_1", "Pi_II_0", "Pi_I",
                         "Pi_II",  "H_m",    "H_ph_Pi_I"};
    for (double t : {0.0, 5.0, 10.0, 15.0, 20.0}) {
        for (const char* id : ids) {
            auto num = weak_value(by_id(id), t, p, g);
            auto ana = analytic_consistent(p, t, id);
            CHECK(std::abs(num - ana) < 1e-6);
            CHECK(std::abs(num.imag()) < 1e-12);
        }
    }
}

TEST_CASE("numeric weak values obey the projector sum rules") {
    Params p;
    FrequencyGrid g = build_grid(p);
    for (double t : {0.0, 7.0, 20.0}) {
        auto PiI = weak_value(by_id("Pi_I"), t, p, g);
        auto PiII = weak_value(by_id("Pi_II"), t, p, g);
        CHECK(std::abs(PiI + PiII - 1.0) < 1e-10);
        CHECK(std::abs(weak_value(by_id("Pi_I_0"), t, p, g)
                       + weak_value(by_id("Pi_I_1"), t, p, g) - PiI) < 1e-10);
        CHECK(std::abs(weak_value(by_id("H_m_Pi_I"), t, p, g)
                       - weak_value(by_id("H_m"), t, p, g)) < 1e-14);
        CHECK(std::abs(weak_value(by_id("H_m_Pi_II"), t, p, g)) < 1e-14);
    }
}

TEST_CASE("the passive arm holds its photon energy flat") {
    Params p;
    FrequencyGrid g = build_grid(p);
    auto base = weak_value(by_id("H_ph_Pi_II"), 0.0, p, g);
    CHECK(std::abs(base - analytic_consistent(p, 0.0, "H_ph_Pi_II")) < 1e-6);
    for (double t : {3.0, 11.0, 20.0}) {
        CHECK(std::abs(weak_value(by_id("H_ph_Pi_II"), t, p, g) - base) < 1e-12);
    }
}

TEST_CASE("rank-reduced propagator reproduces the exact map on its span") {
    Params p;
    FrequencyGrid g = build_grid(p);
    JointState s0 = initial_state(p, g, true);

    std::mt19937 gen(41);
    std::uniform_real_distribution<double> ut(0.0, p.tau);
    for (int k = 0; k < 10; ++k) {
        double t = ut(gen);
        JointState fast = effective_propagator_apply(s0, t, p, g);

        Params q = p;
        q.tau = t;
        JointState slow = evolve_no_explosion(s0, q, g).final_state;

        double dev = 0;
        for (int j = 0; j < g.size(); ++j) {
            dev = std::max(dev, std::abs(fast.psi0[j] - slow.psi0[j]));
            dev = std::max(dev, std::abs(fast.psi1[j] - slow.psi1[j]));
            dev = std::max(dev, std::abs(fast.beta[j] - slow.beta[j]));
        }
        CHECK(dev < 1e-10);
        CHECK(std::abs(fast.explosion_weight - slow.explosion_weight) < 1e-10);
    }
}

TEST_CASE("series rows are reported in units of the explosion rate") {
    Params p;
    p.gamma = 2.0;
    p.tau = 10.0; // same gamma tau = 20
    FrequencyGrid g = build_grid(p);
    auto panel = standard_observables();
    WeakValueSeries s = weak_value_series(panel, p, g, 11);

    REQUIRE(s.ids.size() == panel.size());
    REQUIRE(s.times.size() == 11);
    CHECK(s.times.front() == 0.0);
    CHECK(s.times.back() == doctest::Approx(p.tau).epsilon(1e-15));

    for (size_t i = 0; i < s.ids.size(); ++i) {
        bool energy = panel[i].weight != Observable::Weight::none;
        CHECK(s.unit_scale[i] == (energy ? 2.0 : 1.0));
        if (s.ids[i] == "H_m") {
            auto raw = weak_value(panel[i], s.times[5], p, g);
            CHECK(std::abs(s.values[i][5] - raw / 2.0) < 1e-13);
            CHECK(s.window[i].first == 0.0);
            CHECK(s.window[i].second == doctest::Approx(1.0)); // omega_m / gamma
        }
        if (s.ids[i] == "Pi_I_0") {
            CHECK(s.window[i] == std::make_pair(0.0, 1.0));
        }
    }
}

TEST_CASE("anomaly scan flags the negative and superunity rows only") {
    Params p;
    FrequencyGrid g = build_grid(p);
    WeakValueSeries s = weak_value_series(standard_observables(), p, g, 41);
    auto anomalies = detect_anomalies(s);

    std::set<std::string> flagged;
    for (auto& a : anomalies) flagged.insert(a.id);

    CHECK(flagged.count("Pi_I_0") == 1);     // negative occupation
    CHECK(flagged.count("H_ph_Pi_I") == 1);  // negative energy content
    CHECK(flagged.count("Pi_II_0") == 1);    // exceeds one
    CHECK(flagged.count("Pi_I_1") == 0);
    CHECK(flagged.count("H_m") == 0);
    CHECK(flagged.count("H_ph") == 0);

    // values ride along for reporting
    for (auto& a : anomalies) {
        if (a.id == "Pi_I_0") {
            CHECK(a.value.real() < a.lo);
            CHECK(a.lo == 0.0);
        }
    }
}

TEST_CASE("backward sweep: conserved pairs, endpoint pinned, smooth onset") {
    Params p;
    FrequencyGrid g = build_grid(p);
    BackwardReport r = backward_propagate(p, g, 81);

    REQUIRE(r.times.size() == 81);
    REQUIRE(r.coeffs.size() == 81);
    CHECK(r.pair_sum_drift < 1e-14);

    // at tau the post-selected state is the bare dark superposition
    auto& last = r.coeffs.back();
    CHECK(last[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(last[1] == 0.0);
    CHECK(last[2] == 0.0);
    CHECK(last[3] == doctest::Approx(-0.5).epsilon(1e-15));

    // raw coefficients at t = 0
    double gg = std::exp(-10.0);
    auto& first = r.coeffs.front();
    CHECK(first[0] == doctest::Approx((1 + gg) / 4).epsilon(1e-12));
    CHECK(first[1] == doctest::Approx((1 - gg) / 4).epsilon(1e-12));
    CHECK(first[2] == doctest::Approx(-(1 - gg) / 4).epsilon(1e-12));
    CHECK(first[3] == doctest::Approx(-(1 + gg) / 4).epsilon(1e-12));

    // renormalized to the arm weight: the four-way even split
    CHECK(std::abs(r.final_renormalized[0] - 0.35356944152799347) < 1e-12);
    CHECK(std::abs(r.final_renormalized[0] - 1.0 / (2.0 * std::sqrt(2.0))) < 1e-3);
    double n_red = 0;
    for (double c : r.final_renormalized) n_red += c * c;
    CHECK(n_red == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("backward arm-I amplitude stays within the packet-gradient bound") {
    double prev = 1e9;
    for (double ratio : {10.0, 30.0, 100.0}) {
        Params p;
        p.delta_omega_ph = ratio * p.omega_m;
        FrequencyGrid g = build_grid(p);
        BackwardReport r = backward_propagate(p, g, 21);
        CHECK(r.armI_max_amplitude <= p.omega_m / p.delta_omega_ph);
        CHECK(r.armI_max_amplitude > 0.0);
        CHECK(r.armI_max_amplitude < prev);
        prev = r.armI_max_amplitude;
    }
}

TEST_CASE("post-selection requires a nonempty dark branch") {
    Params p;
    p.tau = 0.0; // no interrogation: dark port never clicks
    FrequencyGrid g = build_grid(p);
    CHECK_THROWS_AS(weak_value(by_id("Pi_I"), 0.0, p, g), std::domain_error);

    Params q;
    FrequencyGrid gq = build_grid(q);
    CHECK_THROWS_AS(weak_value(by_id("Pi_I"), -1.0, q, gq), std::invalid_argument);
    CHECK_THROWS_AS(weak_value(by_id("Pi_I"), q.tau + 1.0, q, gq),
                    std::invalid_argument);
}
