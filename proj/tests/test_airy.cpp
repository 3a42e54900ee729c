#include "doctest.h"

#include "ifm/airy.hpp"

#include <cmath>

using ifm::airy_ai;
using ifm::airy_zeros;

namespace {

struct RefPoint { double u, ai; };

// mpmath, 40-digit working precision, rounded to 18 significant digits.
const RefPoint kRef[] = {
    {-20.0, -0.17640612707798469},
    {-15.0, 0.27821749087082893},
    {-10.0, 0.0402412384864431907},
    {-7.6, 0.278250234880197524},
    {-7.5, 0.321775716380647875},
    {-5.0, 0.35076100902411432},
    {-2.5, -0.112325067692966089},
    {-1.0, 0.535560883292352119},
    {-0.5, 0.475728091610539589},
    {0.0, 0.355028053887817239},
    {0.5, 0.23169360648083349},
    {1.0, 0.135292416312881416},
    {2.5, 0.01572592338047049},
    {5.0, 0.000108344428136074417},
    {7.4, 2.52717193926674997e-7},
    {7.5, 1.91725606751343075e-7},
    {7.6, 1.45194617480125514e-7},
    {10.0, 1.10475325528986859e-10},
    {15.0, 2.1649625207379923e-18},
    {20.0, 1.69167286867054031e-27},
};

} // namespace

TEST_CASE("airy_ai matches multiprecision references to 1e-10 relative") {
    for (const auto& r : kRef) {
        double got = airy_ai(r.u);
        CHECK(std::abs(got - r.ai) <= 1e-10 * std::abs(r.ai));
    }
}

TEST_CASE("airy_ai is continuous across the series/asymptotic crossover") {
    for (double s : {-1.0, 1.0}) {
        double a = airy_ai(s * (7.5 - 1e-9));
        double b = airy_ai(s * (7.5 + 1e-9));
        CHECK(std::abs(a - b) <= 1e-8 * std::abs(a));
    }
}

TEST_CASE("airy_ai satisfies Ai'' = u Ai on [-10, 10]") {
    // Central second difference with h = 1e-4.  The tolerance carries the
    // standard finite-difference budget: discretization h^2 |Ai''''|/12
    // (Ai'''' = u^2 Ai + 2 Ai') plus the double-rounding floor
    // ~4 eps max|Ai| / h^2 ~ 2.5e-8.  Step 0.26 keeps the sample points
    // clear of the series/asymptotic switch at |u| = 7.5.
    const double h = 1e-4;
    for (double u = -10.0; u <= 10.0 + 1e-12; u += 0.26) {
        double ai = airy_ai(u);
        double aip = (airy_ai(u + h) - airy_ai(u - h)) / (2.0 * h);
        double d2 = (airy_ai(u + h) - 2.0 * ai + airy_ai(u - h)) / (h * h);
        double budget = 1e-8 + 2.5e-8 +
                        1.1 * h * h / 12.0 * (u * u * std::abs(ai) + 2.0 * std::abs(aip));
        CHECK(std::abs(d2 - u * ai) <= budget);
    }
}

TEST_CASE("airy_zeros reproduces the classical zeros") {
    // mpmath references
    const double ref[] = {
        -2.33810741045976704, -4.08794944413097062, -5.52055982809555106,
        -6.786708090071759,   -7.94413358712085312, -9.02265085334098038,
        -10.0401743415580859, -11.0085243037332629,
    };
    auto z = airy_zeros(8);
    REQUIRE(z.size() == 8);
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(z[i] - ref[i]) <= 1e-10 * std::abs(ref[i]));
}

TEST_CASE("airy zeros are ordered and interlaced by sign changes") {
    auto z = airy_zeros(6);
    for (size_t i = 0; i + 1 < z.size(); ++i) {
        CHECK(z[i] > z[i + 1]); // strictly decreasing
        double mid = 0.5 * (z[i] + z[i + 1]);
        // Ai alternates sign between consecutive zeros.
        double si = airy_ai(z[i] + 0.05);
        double sm = airy_ai(mid);
        CHECK(si * sm < 0.0);
    }
    // Value at each zero is small relative to the neighborhood envelope.
    for (double zi : z)
        CHECK(std::abs(airy_ai(zi)) <= 1e-12);
}
