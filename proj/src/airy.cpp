#include "ifm/airy.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include <quadmath.h>

namespace ifm {

namespace {

typedef __float128 quad;

// Ai(0) and Ai'(0), 34 significant digits.
const quad kAi0  = 0.3550280538878172392600631860041832Q;
const quad kAip0 = -0.2588194037928067984051835601892039Q;

// Series/asymptotic crossover.  The Maclaurin series in binary128 keeps
// full double accuracy comfortably past |u| = 7.5, while the asymptotic
// tails need zeta = (2/3)|u|^{3/2} >= ~13 to converge below 1e-20; both
// hold at 7.5.
const double kSeriesRadius = 7.5;

// Maclaurin evaluation: Ai(u) = Ai(0) f(u) + Ai'(0) g(u) with
// f = sum c_k u^{3k}, g = sum d_k u^{3k+1}.
quad ai_series(quad u) {
    quad u3 = u * u * u;
    quad f = 1.0Q, g = u;
    quad cf = 1.0Q, cg = u;
    for (int k = 0; k < 200; ++k) {
        cf *= u3 / ((3 * k + 2) * (3 * k + 3));
        cg *= u3 / ((3 * k + 3) * (3 * k + 4));
        f += cf;
        g += cg;
        if (fabsq(cf) < 1e-40Q && fabsq(cg) < 1e-40Q) break;
    }
    return kAi0 * f + kAip0 * g;
}

// u_k coefficients of the large-argument expansions,
// u_{k+1}/u_k = (6k+5)(6k+3)(6k+1) / (216 (k+1) (2k+1)).
// Accumulates sum (sign_alternating ? (-1)^k : 1) u_k / zeta^k restricted
// to indices k with k % step == phase.
quad ai_asym_sum(quad zeta, int phase, int step, bool alternating) {
    quad sum = 0.0Q;
    quad uk = 1.0Q;
    quad prev_mag = 1e40Q;
    for (int k = 0; k < 60; ++k) {
        if (k % step == phase) {
            quad term = uk / powq(zeta, k);
            if (fabsq(term) > prev_mag) break; // divergent tail reached
            prev_mag = fabsq(term);
            if (alternating && ((k / step) % 2 == 1)) term = -term;
            sum += term;
            if (fabsq(term) < 1e-38Q) break;
        }
        uk *= quad((6 * k + 5) * (6 * k + 3) * (6 * k + 1))
            / quad(216 * (k + 1) * (2 * k + 1));
    }
    return sum;
}

quad ai_asym_pos(quad u) {
    quad zeta = 2.0Q / 3.0Q * powq(u, 1.5Q);
    quad pref = expq(-zeta) / (2.0Q * sqrtq(M_PIq) * powq(u, 0.25Q));
    // sum (-1)^k u_k / zeta^k
    return pref * ai_asym_sum(zeta, 0, 1, true);
}

quad ai_asym_neg(quad u) {
    quad x = -u;
    quad zeta = 2.0Q / 3.0Q * powq(x, 1.5Q);
    quad pref = 1.0Q / (sqrtq(M_PIq) * powq(x, 0.25Q));
    // P(zeta) = sum (-1)^k u_{2k} / zeta^{2k},
    // Q(zeta) = sum (-1)^k u_{2k+1} / zeta^{2k+1}
    quad P = ai_asym_sum(zeta, 0, 2, true);
    quad Q = ai_asym_sum(zeta, 1, 2, true);
    quad ph = zeta - M_PIq / 4.0Q;
    return pref * (cosq(ph) * P + sinq(ph) * Q);
}

} // namespace

double airy_ai(double u) {
    if (std::abs(u) <= kSeriesRadius) return (double)ai_series((quad)u);
    if (u > 0) return (double)ai_asym_pos((quad)u);
    return (double)ai_asym_neg((quad)u);
}

std::vector<double> airy_zeros(int n) {
    if (n < 1) throw std::invalid_argument("airy_zeros: n must be >= 1");
    std::vector<double> zeros;
    zeros.reserve(n);
    for (int j = 1; j <= n; ++j) {
        // Asymptotic seed (good to ~1e-3 already at j = 1):
        // zeta_j ~ -t^{2/3} (1 + 5/(48 t^2)), t = 3 pi (4j - 1) / 8.
        double t = 3.0 * M_PI * (4.0 * j - 1.0) / 8.0;
        double seed = -std::pow(t, 2.0 / 3.0) * (1.0 + 5.0 / (48.0 * t * t));
        double lo = seed - 0.1, hi = seed + 0.1;
        double flo = airy_ai(lo), fhi = airy_ai(hi);
        for (int grow = 0; flo * fhi > 0 && grow < 40; ++grow) {
            lo -= 0.05;
            hi += 0.05;
            flo = airy_ai(lo);
            fhi = airy_ai(hi);
        }
        if (flo * fhi > 0) throw std::runtime_error("airy_zeros: bracket failed");
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::abs(lo); ++it) {
            double mid = 0.5 * (lo + hi);
            double fm = airy_ai(mid);
            if (fm == 0.0) { lo = hi = mid; break; }
            if (flo * fm <= 0) { hi = mid; fhi = fm; }
            else               { lo = mid; flo = fm; }
        }
        zeros.push_back(0.5 * (lo + hi));
    }
    return zeros;
}

} // namespace ifm
