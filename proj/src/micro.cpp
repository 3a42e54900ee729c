#include "ifm/micro.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace ifm {

namespace {

typedef std::complex<double> cplx;

// One Cayley (Crank-Nicolson) substep psi <- (1 + i a H)^{-1} (1 - i a H) psi,
// a = dt/2, for H = D + i g (X Y^T - Y X^T) with real sparse X, Y of
// disjoint support.  The inverse is Woodbury with a constant 2x2 core, so
// a step costs a handful of passes over the state.
struct CayleyStepper {
    int dim = 0;
    std::vector<double> diag;
    std::vector<int> xs, ys;     // support indices of X and Y
    std::vector<double> xv, yv;  // entries of X and Y on their supports
    double alpha_g = 0;          // (dt/2) g

    std::vector<cplx> dinv, dneg; // (1 + i a D)^{-1} and (1 - i a D)
    std::vector<cplx> a1, a2;     // dinv X, dinv Y
    cplx K[4];                    // 2x2 Woodbury core

    void prepare(double dt, double g) {
        double a = 0.5 * dt;
        alpha_g = a * g;
        dinv.resize(dim);
        dneg.resize(dim);
        for (int i = 0; i < dim; ++i) {
            dinv[i] = 1.0 / cplx(1.0, a * diag[i]);
            dneg[i] = cplx(1.0, -a * diag[i]);
        }
        a1.assign(dim, 0.0);
        a2.assign(dim, 0.0);
        for (size_t i = 0; i < xs.size(); ++i) a1[xs[i]] = dinv[xs[i]] * xv[i];
        for (size_t i = 0; i < ys.size(); ++i) a2[ys[i]] = dinv[ys[i]] * yv[i];
        // K = (S^{-1} + V^T dinv U)^{-1} with S = diag(-a g, a g),
        // U = [X Y], V = [Y X]; the cross terms vanish on disjoint support.
        // K -> S -> 0 as g -> 0: the correction switches itself off.
        if (alpha_g == 0.0) {
            K[0] = K[1] = K[2] = K[3] = 0.0;
            return;
        }
        cplx y_a2 = 0, x_a1 = 0;
        for (size_t i = 0; i < ys.size(); ++i) y_a2 += yv[i] * a2[ys[i]];
        for (size_t i = 0; i < xs.size(); ++i) x_a1 += xv[i] * a1[xs[i]];
        cplx k00 = -1.0 / alpha_g, k11 = 1.0 / alpha_g;
        cplx det = k00 * k11 - y_a2 * x_a1;
        K[0] = k11 / det;
        K[1] = -y_a2 / det;
        K[2] = -x_a1 / det;
        K[3] = k00 / det;
    }

    void step(std::vector<cplx>& psi, std::vector<cplx>& scratch) const {
        // r = (1 - i a H) psi = dneg psi + a g X (Y^T psi) - a g Y (X^T psi)
        cplx yp = 0, xp = 0;
        for (size_t i = 0; i < ys.size(); ++i) yp += yv[i] * psi[ys[i]];
        for (size_t i = 0; i < xs.size(); ++i) xp += xv[i] * psi[xs[i]];
        std::vector<cplx>& r = scratch;
        for (int i = 0; i < dim; ++i) r[i] = dneg[i] * psi[i];
        for (size_t i = 0; i < xs.size(); ++i) r[xs[i]] += alpha_g * xv[i] * yp;
        for (size_t i = 0; i < ys.size(); ++i) r[ys[i]] -= alpha_g * yv[i] * xp;

        // psi' = (1 + i a H)^{-1} r  via Woodbury: u = dinv r,
        // psi' = u - a1 z0 - a2 z1, (z0, z1) = K (Y^T u, X^T u)
        for (int i = 0; i < dim; ++i) r[i] *= dinv[i]; // r is now u
        cplx yu = 0, xu = 0;
        for (size_t i = 0; i < ys.size(); ++i) yu += yv[i] * r[ys[i]];
        for (size_t i = 0; i < xs.size(); ++i) xu += xv[i] * r[xs[i]];
        cplx z0 = K[0] * yu + K[1] * xu;
        cplx z1 = K[2] * yu + K[3] * xu;
        psi.swap(r);
        for (size_t i = 0; i < xs.size(); ++i) psi[xs[i]] -= a1[xs[i]] * z0;
        for (size_t i = 0; i < ys.size(); ++i) psi[ys[i]] -= a2[ys[i]] * z1;
    }
};

} // namespace

OracleReport run_micro_oracle(const MicroSpec& sp) {
    if (sp.n_photon < 3 || sp.n_photon % 2 == 0)
        throw std::invalid_argument("micro: n_photon must be odd and >= 3");
    if (sp.n_reservoir < 2) throw std::invalid_argument("micro: n_reservoir < 2");
    double s_real = sp.omega_m / sp.photon_spacing;
    int s = (int)std::lround(s_real);
    if (std::abs(s_real - s) > 1e-9 || s < 1)
        throw std::invalid_argument("micro: omega_m must be a multiple of photon_spacing");

    int np = sp.n_photon, nr = sp.n_reservoir;
    int j0 = np / 2;
    if (j0 - s < 0) throw std::invalid_argument("micro: pair partner off the comb");

    int dim = 2 * np + 2 * nr + np; // arm I x {0,1}, reservoir x {0,1}, arm II
    auto iph = [&](int m, int j) { return m * np + j; };
    auto ires = [&](int m, int k) { return 2 * np + m * nr + k; };

    CayleyStepper cs;
    cs.dim = dim;
    cs.diag.assign(dim, 0.0);
    // frame: energies relative to the occupied pair (degenerate at 0)
    for (int m = 0; m < 2; ++m)
        for (int j = 0; j < np; ++j)
            cs.diag[iph(m, j)] = (j - j0) * sp.photon_spacing + m * sp.omega_m;
    double rho = (nr - 1) / sp.band_width;
    for (int m = 0; m < 2; ++m)
        for (int k = 0; k < nr; ++k) {
            double nu = -0.5 * sp.omega_m - 0.5 * sp.band_width +
                        sp.band_width * k / (nr - 1);
            cs.diag[ires(m, k)] = nu + m * sp.omega_m;
        }
    for (int j = 0; j < np; ++j)
        cs.diag[2 * np + 2 * nr + j] = (j - j0) * sp.photon_spacing;

    const double r2 = 1.0 / std::sqrt(2.0);
    for (int m = 0; m < 2; ++m) {
        double pm = m == 0 ? r2 : -r2;
        for (int j = 0; j < np; ++j) {
            cs.xs.push_back(iph(m, j));
            cs.xv.push_back(pm);
        }
        for (int k = 0; k < nr; ++k) {
            cs.ys.push_back(ires(m, k));
            cs.yv.push_back(pm);
        }
    }

    double g = sp.coupling_scale * std::sqrt(1.0 / (2.0 * M_PI * rho));
    double model_rate = sp.coupling_scale * sp.coupling_scale;

    double dmax = 0;
    for (double d : cs.diag) dmax = std::max(dmax, std::abs(d));
    int nsub = std::max(1, (int)std::ceil(sp.dt_checkpoint * dmax / sp.substep_scale));
    double dt = sp.dt_checkpoint / nsub;
    cs.prepare(dt, g);

    std::vector<cplx> psi(dim, 0.0), scratch(dim);
    psi[iph(0, j0)] = 1.0;

    OracleReport rep;
    rep.model_rate = model_rate;
    int ncheck = (int)std::lround(sp.t_final / sp.dt_checkpoint);
    rep.checkpoints = ncheck;

    std::vector<double> fit_t, fit_y;
    double norm_ref = 1.0;
    for (int c = 1; c <= ncheck; ++c) {
        for (int i = 0; i < nsub; ++i) cs.step(psi, scratch);
        rep.substeps += nsub;
        double t = c * sp.dt_checkpoint;

        double norm = 0;
        for (auto& a : psi) norm += std::norm(a);
        rep.max_norm_drift = std::max(rep.max_norm_drift, std::abs(norm - norm_ref));
        if (!(rep.max_norm_drift <= 1e-6)) // NaN-proof
            throw std::runtime_error("micro: unitarity lost between sweeps");

        // sweep the reservoir
        double swept = 0;
        for (int m = 0; m < 2; ++m)
            for (int k = 0; k < nr; ++k) {
                swept += std::norm(psi[ires(m, k)]);
                psi[ires(m, k)] = 0.0;
            }
        rep.explosion_weight += swept;
        norm_ref = norm - swept;

        // interaction-picture photon snapshot vs the closed-form pair map
        double e = std::exp(-0.5 * model_rate * t);
        double dev = 0;
        cplx x0, x1;
        for (int m = 0; m < 2; ++m)
            for (int j = 0; j < np; ++j) {
                cplx a = psi[iph(m, j)] *
                         std::exp(cplx(0.0, cs.diag[iph(m, j)] * t));
                cplx kr = 0.0;
                if (m == 0 && j == j0) { kr = 0.5 * (1.0 + e); x0 = a; }
                if (m == 1 && j == j0 - s) { kr = 0.5 * (1.0 - e); x1 = a; }
                dev += std::norm(a - kr);
            }
        for (int j = 0; j < np; ++j) dev += std::norm(psi[2 * np + 2 * nr + j]);
        dev = std::sqrt(dev);
        rep.max_state_deviation = std::max(rep.max_state_deviation, dev);
        if (c == ncheck) rep.deviation_at_end = dev;

        if (t >= sp.fit_t_min - 1e-12) {
            double cin2 = std::norm(r2 * (x0 - x1));
            if (cin2 > 0) {
                fit_t.push_back(t);
                fit_y.push_back(std::log(cin2));
            }
        }
    }

    // least-squares slope; rate = -slope
    if (fit_t.size() >= 2) {
        double n = (double)fit_t.size(), st = 0, sy = 0, stt = 0, sty = 0;
        for (size_t i = 0; i < fit_t.size(); ++i) {
            st += fit_t[i];
            sy += fit_y[i];
            stt += fit_t[i] * fit_t[i];
            sty += fit_t[i] * fit_y[i];
        }
        double denom = n * stt - st * st;
        rep.fitted_rate = denom != 0 ? -(n * sty - st * sy) / denom : 0.0;
    }
    return rep;
}

} // namespace ifm
