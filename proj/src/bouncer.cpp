#include "ifm/bouncer.hpp"

#include "ifm/airy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace ifm {

namespace {

double trapezoid(const std::vector<double>& f, double dz) {
    double s = 0.0;
    for (size_t i = 0; i + 1 < f.size(); ++i) s += 0.5 * (f[i] + f[i + 1]);
    return s * dz;
}

// Ai'(zeta) by central difference on the quad-accurate Ai; h = 1e-6
// leaves ~1e-13 absolute error, plenty for a normalization sign.
double ai_prime(double zeta) {
    const double h = 1e-6;
    return (airy_ai(zeta + h) - airy_ai(zeta - h)) / (2.0 * h);
}

std::vector<double> minus_state(const BouncerConfig& cfg) {
    auto s0 = bounce_eigenstate(cfg, 0).wavefunction;
    auto s1 = bounce_eigenstate(cfg, 1).wavefunction;
    std::vector<double> m(s0.size());
    for (size_t i = 0; i < m.size(); ++i)
        m[i] = (s0[i] - s1[i]) / std::sqrt(2.0);
    return m;
}

// Minimal Nelder-Mead in two dimensions.  Returns false if the simplex
// has not collapsed after max_iter reflections.
bool nelder_mead_2d(std::function<double(double, double)> f,
                    double& x, double& y, int max_iter) {
    std::array<std::array<double, 2>, 3> p = {{{x, y}, {x + 0.05, y}, {x, y + 0.05}}};
    std::array<double, 3> fv;
    for (int i = 0; i < 3; ++i) fv[i] = f(p[i][0], p[i][1]);
    for (int it = 0; it < max_iter; ++it) {
        // order best..worst
        std::array<int, 3> idx = {0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        int b = idx[0], m = idx[1], w = idx[2];
        double diam = std::max(std::hypot(p[b][0] - p[w][0], p[b][1] - p[w][1]),
                               std::hypot(p[b][0] - p[m][0], p[b][1] - p[m][1]));
        if (diam < 1e-9 && std::abs(fv[w] - fv[b]) < 1e-13) {
            x = p[b][0];
            y = p[b][1];
            return true;
        }
        double cx = 0.5 * (p[b][0] + p[m][0]), cy = 0.5 * (p[b][1] + p[m][1]);
        double rx = cx + (cx - p[w][0]), ry = cy + (cy - p[w][1]);
        double fr = f(rx, ry);
        if (fr < fv[b]) {
            double ex = cx + 2.0 * (cx - p[w][0]), ey = cy + 2.0 * (cy - p[w][1]);
            double fe = f(ex, ey);
            if (fe < fr) { p[w] = {ex, ey}; fv[w] = fe; }
            else         { p[w] = {rx, ry}; fv[w] = fr; }
        } else if (fr < fv[m]) {
            p[w] = {rx, ry};
            fv[w] = fr;
        } else {
            double kx = cx + 0.5 * (p[w][0] - cx), ky = cy + 0.5 * (p[w][1] - cy);
            double fk = f(kx, ky);
            if (fk < fv[w]) { p[w] = {kx, ky}; fv[w] = fk; }
            else { // shrink toward best
                for (int i : {m, w}) {
                    p[i][0] = p[b][0] + 0.5 * (p[i][0] - p[b][0]);
                    p[i][1] = p[b][1] + 0.5 * (p[i][1] - p[b][1]);
                    fv[i] = f(p[i][0], p[i][1]);
                }
            }
        }
    }
    return false;
}

} // namespace

std::vector<double> BouncerConfig::make_grid() const {
    std::vector<double> z(n_grid);
    double dz = z_max / (n_grid - 1);
    for (int i = 0; i < n_grid; ++i) z[i] = i * dz;
    return z;
}

double bounce_gap() {
    auto zeros = airy_zeros(2);
    return zeros[0] - zeros[1]; // -zeta2 - (-zeta1) > 0
}

BounceEigenstate bounce_eigenstate(const BouncerConfig& cfg, int level) {
    if (level < 0) throw std::invalid_argument("bounce_eigenstate: level < 0");
    if (cfg.n_grid < 16) throw std::invalid_argument("bounce_eigenstate: n_grid too small");
    auto zeros = airy_zeros(level + 1);
    double zeta = zeros[level];

    BounceEigenstate st;
    st.level = level;
    st.zeta = zeta;
    st.energy = -zeta;

    double dz = cfg.z_max / (cfg.n_grid - 1);
    double scale = ai_prime(zeta); // fixes sign: positive slope at the floor
    st.wavefunction.resize(cfg.n_grid);
    for (int i = 0; i < cfg.n_grid; ++i)
        st.wavefunction[i] = airy_ai(i * dz + zeta) / scale;

    // Norm on the grid vs on a midpoint-refined grid; disagreement means
    // the grid undersamples the state.
    std::vector<double> dens(cfg.n_grid);
    for (int i = 0; i < cfg.n_grid; ++i) dens[i] = st.wavefunction[i] * st.wavefunction[i];
    double n1 = trapezoid(dens, dz);

    std::vector<double> dens2(2 * cfg.n_grid - 1);
    for (int i = 0; i < cfg.n_grid; ++i) dens2[2 * i] = dens[i];
    for (int i = 0; i + 1 < cfg.n_grid; ++i) {
        double v = airy_ai((i + 0.5) * dz + zeta) / scale;
        dens2[2 * i + 1] = v * v;
    }
    double n2 = trapezoid(dens2, 0.5 * dz);
    if (std::abs(n1 - n2) > 1e-4 * n2)
        throw GridTooCoarse("bounce_eigenstate: refine the grid (norm shift " +
                            std::to_string(std::abs(n1 - n2) / n2) + ")");

    double inv = 1.0 / std::sqrt(n1);
    for (auto& v : st.wavefunction) v *= inv;
    return st;
}

namespace {

double overlap_against(const std::vector<double>& minus, const BouncerConfig& cfg,
                       double mean, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("overlap_with_minus: sigma <= 0");
    double dz = cfg.z_max / (cfg.n_grid - 1);
    std::vector<double> chi(cfg.n_grid), dens(cfg.n_grid);
    for (int i = 0; i < cfg.n_grid; ++i) {
        double z = i * dz - mean;
        chi[i] = std::exp(-z * z / (2.0 * sigma * sigma));
        dens[i] = chi[i] * chi[i];
    }
    double inv = 1.0 / std::sqrt(trapezoid(dens, dz));
    std::vector<double> prod(cfg.n_grid);
    for (int i = 0; i < cfg.n_grid; ++i) prod[i] = chi[i] * inv * minus[i];
    double ov = trapezoid(prod, dz);
    return ov * ov;
}

} // namespace

double overlap_with_minus(const BouncerConfig& cfg, double mean, double sigma) {
    return overlap_against(minus_state(cfg), cfg, mean, sigma);
}

GaussianFit fit_gaussian(const BouncerConfig& cfg) {
    auto minus = minus_state(cfg); // built once; the scan reuses it
    double best_m = 0, best_s = 0, best_v = -1;
    // coarse scan: 41 x 51 nodes over mean in [1,5], sigma in [0.5,3]
    for (int i = 0; i <= 40; ++i) {
        double m = 1.0 + 4.0 * i / 40.0;
        for (int j = 0; j <= 50; ++j) {
            double s = 0.5 + 2.5 * j / 50.0;
            double v = overlap_against(minus, cfg, m, s);
            if (v > best_v) { best_v = v; best_m = m; best_s = s; }
        }
    }
    double m = best_m, s = best_s;
    bool ok = nelder_mead_2d(
        [&](double mm, double ss) {
            if (ss < 1e-3) return 1.0; // keep the simplex off sigma <= 0
            return -overlap_against(minus, cfg, mm, ss);
        },
        m, s, 400);
    if (!ok) throw std::runtime_error("fit_gaussian: refinement did not converge");
    GaussianFit fit;
    fit.mean = m;
    fit.sigma = s;
    fit.overlap_probability = overlap_against(minus, cfg, m, s);
    return fit;
}

double safe_raise_height(const BouncerConfig& cfg, double epsilon) {
    if (epsilon <= 0.0) throw std::invalid_argument("safe_raise_height: epsilon <= 0");
    auto minus = minus_state(cfg);
    double dz = cfg.z_max / (cfg.n_grid - 1);
    if (epsilon >= 1.0) return cfg.z_max;
    // cumulative probability below z_i; return the largest grid height
    // still under the budget
    double cum = 0.0;
    double last_ok = 0.0;
    for (int i = 0; i + 1 < cfg.n_grid; ++i) {
        cum += 0.5 * (minus[i] * minus[i] + minus[i + 1] * minus[i + 1]) * dz;
        if (cum < epsilon) last_ok = (i + 1) * dz;
        else break;
    }
    return last_ok;
}

} // namespace ifm
