#include "ifm/weakvalues.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ifm {

namespace {

// Two-arm state with both motional levels in each arm; the backward
// (post-selected) state populates arm II |1>, which JointState cannot
// hold.
struct ExtState {
    cvec i0, i1, ii0, ii1;

    static ExtState zero(int n) {
        ExtState e;
        e.i0.assign(n, 0.0);
        e.i1.assign(n, 0.0);
        e.ii0.assign(n, 0.0);
        e.ii1.assign(n, 0.0);
        return e;
    }
};

// Same pair map as the dynamics module, on the arm-I blocks; arm II is
// free (identity in the interaction picture).  Real symmetric, hence
// self-adjoint: propagating the backward state is the same call.
void pair_map(cvec& psi0, cvec& psi1, int s, double gamma, double t) {
    int n = (int)psi0.size();
    double e = std::exp(-gamma * t / 4.0);
    double hp = 0.5 * (1.0 + e * e);
    double hm = 0.5 * (1.0 - e * e);
    for (int j = 0; j < n; ++j) {
        int k = j - s;
        if (k >= 0) {
            cplx a = psi0[j], b = psi1[k];
            psi0[j] = hp * a + hm * b;
            psi1[k] = hm * a + hp * b;
        } else {
            psi0[j] *= e;
        }
        if (j + s >= n) psi1[j] *= e;
    }
}

ExtState forward_initial(const Params& p, const FrequencyGrid& g) {
    cvec phi = gaussian_wavepacket(g, p.omega_ph, p.delta_omega_ph);
    ExtState e = ExtState::zero(g.size());
    const double r = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < g.size(); ++j) {
        e.i0[j] = r * phi[j];
        e.ii0[j] = r * phi[j];
    }
    return e;
}

ExtState evolve(ExtState e, int s, double gamma, double t) {
    pair_map(e.i0, e.i1, s, gamma, t);
    return e;
}

cplx dot(const cvec& a, const cvec& b) {
    cplx acc = 0;
    for (size_t j = 0; j < a.size(); ++j) acc += std::conj(a[j]) * b[j];
    return acc;
}

cplx dot(const ExtState& a, const ExtState& b) {
    return dot(a.i0, b.i0) + dot(a.i1, b.i1) + dot(a.ii0, b.ii0) + dot(a.ii1, b.ii1);
}

ExtState apply_ext(const Observable& a, const ExtState& s, const FrequencyGrid& g,
                   double omega_m) {
    int n = g.size();
    ExtState r = ExtState::zero(n);
    bool on_I = a.arm != Arm::II;
    bool on_II = a.arm != Arm::I;
    for (int j = 0; j < n; ++j) {
        double w = 1.0;
        if (a.weight == Observable::Weight::photon_frequency) w = g.omegas[j];
        if (a.weight == Observable::Weight::motional_quantum) w = omega_m;
        if (on_I) {
            r.i0[j] = w * (a.m[0] * s.i0[j] + a.m[1] * s.i1[j]);
            r.i1[j] = w * (a.m[2] * s.i0[j] + a.m[3] * s.i1[j]);
        }
        if (on_II) {
            r.ii0[j] = w * (a.m[0] * s.ii0[j] + a.m[1] * s.ii1[j]);
            r.ii1[j] = w * (a.m[2] * s.ii0[j] + a.m[3] * s.ii1[j]);
        }
    }
    return r;
}

struct TwoStateContext {
    ExtState fwd0;     // at t = 0
    ExtState bwd_tau;  // backward state at tau
    double denom = 0;  // <dark branch | dark branch>^{1/2}
};

TwoStateContext make_context(const Params& p, const FrequencyGrid& g) {
    TwoStateContext c;
    c.fwd0 = forward_initial(p, g);
    ExtState f_tau = evolve(c.fwd0, g.shift_steps, p.gamma, p.tau);

    int n = g.size();
    const double r = 1.0 / std::sqrt(2.0);
    cvec d0(n), d1(n);
    double nrm = 0;
    for (int j = 0; j < n; ++j) {
        d0[j] = r * (f_tau.i0[j] - f_tau.ii0[j]);
        d1[j] = r * (f_tau.i1[j] - f_tau.ii1[j]);
        nrm += std::norm(d0[j]) + std::norm(d1[j]);
    }
    c.denom = std::sqrt(nrm);
    if (c.denom < 1e-12)
        throw std::domain_error("weak_value: dark branch empty; no post-selection");

    // undo the exit beamsplitter on the normalized dark state
    c.bwd_tau = ExtState::zero(n);
    for (int j = 0; j < n; ++j) {
        c.bwd_tau.i0[j] = r * d0[j] / c.denom;
        c.bwd_tau.i1[j] = r * d1[j] / c.denom;
        c.bwd_tau.ii0[j] = -r * d0[j] / c.denom;
        c.bwd_tau.ii1[j] = -r * d1[j] / c.denom;
    }
    return c;
}

cplx weak_value_in_context(const TwoStateContext& c, const Observable& a, double t,
                           const Params& p, const FrequencyGrid& g) {
    ExtState f = evolve(c.fwd0, g.shift_steps, p.gamma, t);
    ExtState b = evolve(c.bwd_tau, g.shift_steps, p.gamma, p.tau - t);
    ExtState af = apply_ext(a, f, g, p.omega_m);
    return dot(b, af) / c.denom;
}

} // namespace

JointState effective_propagator_apply(const JointState& s, double t,
                                      const Params& p, const FrequencyGrid& g) {
    if ((int)s.psi0.size() != g.size())
        throw std::invalid_argument("effective_propagator_apply: size mismatch");
    int n = g.size();
    int sh = g.shift_steps;
    cvec phi = gaussian_wavepacket(g, p.omega_ph, p.delta_omega_ph);

    // conserved and damped rank-one directions on the paired rows; rows
    // whose partner falls off the grid form the quarter-rate edge sector
    cvec o0(n, 0.0), o1(n, 0.0), i0(n, 0.0), i1(n, 0.0);
    for (int j = sh; j < n; ++j) {
        o0[j] = 0.5 * phi[j];
        i0[j] = 0.5 * phi[j];
    }
    for (int j = 0; j + sh < n; ++j) {
        o1[j] = 0.5 * phi[j + sh];
        i1[j] = -0.5 * phi[j + sh];
    }
    double n_o = std::real(dot(o0, o0) + dot(o1, o1));
    double n_i = std::real(dot(i0, i0) + dot(i1, i1));
    cplx co = (dot(o0, s.psi0) + dot(o1, s.psi1)) / n_o;
    cplx ci = (dot(i0, s.psi0) + dot(i1, s.psi1)) / n_i * std::exp(-p.gamma * t / 2.0);
    double edge = std::exp(-p.gamma * t / 4.0);

    JointState out = s; // arm II passes through
    double norm_in = s.norm_sq();
    for (int j = 0; j < n; ++j) {
        out.psi0[j] = j < sh ? edge * s.psi0[j] : co * o0[j] + ci * i0[j];
        out.psi1[j] = j + sh >= n ? edge * s.psi1[j] : co * o1[j] + ci * i1[j];
    }
    out.explosion_weight = s.explosion_weight + (norm_in - out.norm_sq());
    return out;
}

cplx weak_value(const Observable& a, double t, const Params& p,
                const FrequencyGrid& g) {
    if (t < 0 || t > p.tau)
        throw std::invalid_argument("weak_value: t outside [0, tau]");
    TwoStateContext c = make_context(p, g);
    return weak_value_in_context(c, a, t, p, g);
}

WeakValueSeries weak_value_series(const std::vector<Observable>& panel,
                                  const Params& p, const FrequencyGrid& g,
                                  int n_times) {
    if (n_times < 2) throw std::invalid_argument("weak_value_series: n_times < 2");
    TwoStateContext c = make_context(p, g);

    WeakValueSeries s;
    s.gamma = p.gamma;
    s.times.resize(n_times);
    for (int k = 0; k < n_times; ++k) s.times[k] = p.tau * k / (n_times - 1);

    double w_lo = *std::min_element(g.omegas.begin(), g.omegas.end());
    double w_hi = *std::max_element(g.omegas.begin(), g.omegas.end());

    for (const auto& a : panel) {
        s.ids.push_back(a.id);
        double scale = a.weight == Observable::Weight::none ? 1.0 : p.gamma;
        s.unit_scale.push_back(scale);
        // spectral window, in report units
        std::pair<double, double> win{0.0, 1.0};
        if (a.weight == Observable::Weight::motional_quantum)
            win = {0.0, p.omega_m / scale};
        else if (a.weight == Observable::Weight::photon_frequency)
            win = a.arm == Arm::both ? std::make_pair(w_lo / scale, w_hi / scale)
                                     : std::make_pair(0.0, w_hi / scale);
        s.window.push_back(win);

        std::vector<cplx> row(n_times);
        for (int k = 0; k < n_times; ++k)
            row[k] = weak_value_in_context(c, a, s.times[k], p, g) / scale;
        s.values.push_back(std::move(row));
    }
    return s;
}

std::vector<Anomaly> detect_anomalies(const WeakValueSeries& s, double eps) {
    std::vector<Anomaly> out;
    for (size_t i = 0; i < s.ids.size(); ++i) {
        auto [lo, hi] = s.window[i];
        for (size_t k = 0; k < s.times.size(); ++k) {
            cplx v = s.values[i][k];
            if (v.real() < lo - eps || v.real() > hi + eps ||
                std::abs(v.imag()) > eps)
                out.push_back({s.ids[i], s.times[k], v, lo, hi});
        }
    }
    return out;
}

BackwardReport backward_propagate(const Params& p, const FrequencyGrid& g,
                                  int n_times) {
    if (n_times < 2) throw std::invalid_argument("backward_propagate: n_times < 2");
    BackwardReport r;
    r.times.resize(n_times);
    r.coeffs.resize(n_times);

    auto pair_at = [&](double dt, double a, double b) {
        double e = std::exp(-p.gamma * dt / 2.0);
        double sum = a + b, dif = (a - b) * e;
        return std::array<double, 2>{0.5 * (sum + dif), 0.5 * (sum - dif)};
    };

    double drift = 0;
    for (int k = 0; k < n_times; ++k) {
        double t = p.tau * k / (n_times - 1);
        double back = p.tau - t; // propagation span from the tau endpoint
        auto cd = pair_at(back, 0.5, 0.0);
        auto dd = pair_at(back, 0.0, -0.5);
        r.times[k] = t;
        r.coeffs[k] = {cd[0], cd[1], dd[0], dd[1]};
        drift = std::max(drift, std::abs(cd[0] + cd[1] - 0.5));
        drift = std::max(drift, std::abs(dd[0] + dd[1] + 0.5));
    }
    r.pair_sum_drift = drift;

    // renormalize the t = 0 coefficients so the arm-I reduced weight is
    // 1/2 (arm II holds the other half)
    auto c = r.coeffs.front();
    double n_red = c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
    double scale = std::sqrt(0.5 / n_red);
    for (int i = 0; i < 4; ++i) r.final_renormalized[i] = c[i] * scale;

    // grid reconstruction of the renormalized arm-I rows
    cvec phi = gaussian_wavepacket(g, p.omega_ph, p.delta_omega_ph);
    int n = g.size(), sh = g.shift_steps;
    double sup_phi = 0, sup_row = 0;
    for (int j = 0; j < n; ++j) sup_phi = std::max(sup_phi, std::abs(phi[j]));
    for (int j = 0; j < n; ++j) {
        double p_m = j - sh >= 0 ? phi[j - sh].real() : 0.0;
        double p_p = j + sh < n ? phi[j + sh].real() : 0.0;
        double row0 = r.final_renormalized[0] * phi[j].real() +
                      r.final_renormalized[2] * p_m;
        double row1 = r.final_renormalized[1] * p_p +
                      r.final_renormalized[3] * phi[j].real();
        sup_row = std::max(sup_row, std::hypot(row0, row1));
    }
    r.armI_max_amplitude = sup_row / sup_phi;
    return r;
}

} // namespace ifm
