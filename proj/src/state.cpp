#include "ifm/state.hpp"

#include "ifm/observable.hpp"

#include <cmath>
#include <stdexcept>

namespace ifm {

FrequencyGrid build_grid(const Params& p) {
    if (p.n_modes < 3) throw GridInfeasible("build_grid: n_modes < 3");
    if (p.delta_omega_ph <= 0 || p.grid_span <= 0 || p.omega_m <= 0)
        throw GridInfeasible("build_grid: nonpositive scale");
    double span = p.grid_span * p.delta_omega_ph;
    double spacing0 = 2.0 * span / (p.n_modes - 1);
    if (p.omega_m < spacing0 * (1.0 - 1e-12))
        throw GridInfeasible(
            "build_grid: omega_m below the grid spacing at the requested "
            "n_modes; raise n_modes or shrink grid_span");

    int s = (int)std::ceil(p.omega_m / spacing0 - 1e-9);
    if (s < 1) s = 1;
    double spacing = p.omega_m / s; // snap: omega_m = s * spacing exactly
    int n = (int)std::ceil(2.0 * span / spacing - 1e-9) + 1;
    if (n % 2 == 0) ++n; // keep the carrier exactly on the center point

    FrequencyGrid g;
    g.spacing = spacing;
    g.shift_steps = s;
    g.omegas.resize(n);
    int half = (n - 1) / 2;
    for (int j = 0; j < n; ++j) g.omegas[j] = p.omega_ph + (j - half) * spacing;
    return g;
}

std::vector<std::string> regime_warnings(const Params& p, double factor) {
    std::vector<std::string> w;
    auto add = [&](const std::string& msg) { w.push_back(msg); };
    if (p.omega_ph < factor * p.omega_m)
        add("omega_ph / omega_m = " + std::to_string(p.omega_ph / p.omega_m) +
            " < " + std::to_string(factor) + ": carrier not well above the splitting");
    if (p.delta_omega_ph < factor * p.omega_m)
        add("delta_omega_ph / omega_m = " +
            std::to_string(p.delta_omega_ph / p.omega_m) + " < " +
            std::to_string(factor) + ": wavepacket narrow on the splitting scale");
    if (p.omega_m < factor * p.gamma)
        add("omega_m / gamma = " + std::to_string(p.omega_m / p.gamma) + " < " +
            std::to_string(factor) + ": splitting not well above the decay rate");
    return w;
}

double JointState::norm_sq() const {
    double n = 0;
    for (auto& a : psi0) n += std::norm(a);
    for (auto& a : psi1) n += std::norm(a);
    for (auto& a : beta) n += std::norm(a);
    return n;
}

bool JointState::closed(double tol) const {
    return std::abs(norm_sq() + explosion_weight - 1.0) <= tol;
}

cvec gaussian_wavepacket(const FrequencyGrid& g, double center, double width) {
    if (width <= 0) throw std::invalid_argument("gaussian_wavepacket: width <= 0");
    cvec phi(g.size());
    double n = 0;
    for (int j = 0; j < g.size(); ++j) {
        double d = g.omegas[j] - center;
        double a = std::exp(-d * d / (4.0 * width * width));
        phi[j] = a;
        n += a * a;
    }
    double inv = 1.0 / std::sqrt(n);
    for (auto& a : phi) a *= inv;
    return phi;
}

JointState initial_state(const Params& p, const FrequencyGrid& g, bool interferometer) {
    JointState s;
    s.psi1.assign(g.size(), 0.0);
    if (interferometer) {
        cvec phi = gaussian_wavepacket(g, p.omega_ph, p.delta_omega_ph);
        s.psi0.resize(g.size());
        s.beta.resize(g.size());
        const double r = 1.0 / std::sqrt(2.0);
        for (int j = 0; j < g.size(); ++j) {
            s.psi0[j] = r * phi[j];
            s.beta[j] = r * phi[j];
        }
    } else {
        s.psi0 = gaussian_wavepacket(g, p.omega_ph, p.delta_omega_ph);
        s.beta.assign(g.size(), 0.0);
    }
    return s;
}

std::pair<cvec, cvec> to_inout(const cvec& psi0, const cvec& psi1) {
    const double r = 1.0 / std::sqrt(2.0);
    cvec in(psi0.size()), out(psi0.size());
    for (size_t j = 0; j < psi0.size(); ++j) {
        in[j] = r * (psi0[j] - psi1[j]);
        out[j] = r * (psi0[j] + psi1[j]);
    }
    return {in, out};
}

std::pair<cvec, cvec> from_inout(const cvec& chi_in, const cvec& chi_out) {
    const double r = 1.0 / std::sqrt(2.0);
    cvec p0(chi_in.size()), p1(chi_in.size());
    for (size_t j = 0; j < chi_in.size(); ++j) {
        p0[j] = r * (chi_out[j] + chi_in[j]);
        p1[j] = r * (chi_out[j] - chi_in[j]);
    }
    return {p0, p1};
}

PortPair apply_exit_beamsplitter(const JointState& s) {
    const double r = 1.0 / std::sqrt(2.0);
    size_t n = s.psi0.size();
    PortPair pp;
    pp.dark.psi0.resize(n);
    pp.dark.psi1.resize(n);
    pp.dark.beta.assign(n, 0.0);
    pp.bright = pp.dark;
    for (size_t j = 0; j < n; ++j) {
        pp.dark.psi0[j] = r * (s.psi0[j] - s.beta[j]);
        pp.bright.psi0[j] = r * (s.psi0[j] + s.beta[j]);
        pp.dark.psi1[j] = r * s.psi1[j]; // arm II carries no |1> forward
        pp.bright.psi1[j] = r * s.psi1[j];
    }
    pp.dark.picture = pp.bright.picture = s.picture;
    return pp;
}

StateReport expectations(const JointState& s, const FrequencyGrid& g, double omega_m) {
    StateReport r;
    double e_ph = 0, e_m = 0, pI = 0, pII = 0;
    for (size_t j = 0; j < s.psi0.size(); ++j) {
        double dI = std::norm(s.psi0[j]) + std::norm(s.psi1[j]);
        double dII = j < s.beta.size() ? std::norm(s.beta[j]) : 0.0;
        pI += dI;
        pII += dII;
        e_ph += g.omegas[j] * (dI + dII);
        e_m += omega_m * std::norm(s.psi1[j]);
    }
    r.norm_sq = pI + pII;
    if (r.norm_sq > 0) {
        r.p_armI = pI / r.norm_sq;
        r.p_armII = pII / r.norm_sq;
        r.E_ph = e_ph / r.norm_sq;
        r.E_m = e_m / r.norm_sq;
    }
    return r;
}

// ---- observables ----

namespace {

const std::array<double, 4> kId = {1, 0, 0, 1};
const std::array<double, 4> kM0 = {1, 0, 0, 0};
const std::array<double, 4> kM1 = {0, 0, 0, 1};
const std::array<double, 4> kIn = {0.5, -0.5, -0.5, 0.5};
const std::array<double, 4> kOut = {0.5, 0.5, 0.5, 0.5};

std::string arm_tag(Arm a) { return a == Arm::I ? "I" : "II"; }

} // namespace

Observable Observable::arm_projector(Arm a) {
    return {"Pi_" + arm_tag(a), a, kId, Weight::none};
}

Observable Observable::joint_projector(Arm a, Motional e) {
    Observable o;
    o.arm = a;
    switch (e) {
        case Motional::m0: o.m = kM0; o.id = "Pi_" + arm_tag(a) + "_0"; break;
        case Motional::m1: o.m = kM1; o.id = "Pi_" + arm_tag(a) + "_1"; break;
        case Motional::in: o.m = kIn; o.id = "Pi_" + arm_tag(a) + "_in"; break;
        case Motional::out: o.m = kOut; o.id = "Pi_" + arm_tag(a) + "_out"; break;
    }
    return o;
}

Observable Observable::h_ph() {
    return {"H_ph", Arm::both, kId, Weight::photon_frequency};
}

Observable Observable::h_m() {
    return {"H_m", Arm::both, kM1, Weight::motional_quantum};
}

Observable Observable::h_ph_restricted(Arm a) {
    return {"H_ph_Pi_" + arm_tag(a), a, kId, Weight::photon_frequency};
}

Observable Observable::h_m_restricted(Arm a) {
    return {"H_m_Pi_" + arm_tag(a), a, kM1, Weight::motional_quantum};
}

JointState apply(const Observable& a, const JointState& s, const FrequencyGrid& g,
                 double omega_m) {
    size_t n = s.psi0.size();
    JointState r;
    r.picture = s.picture;
    r.psi0.assign(n, 0.0);
    r.psi1.assign(n, 0.0);
    r.beta.assign(n, 0.0);

    bool on_I = a.arm != Arm::II;
    bool on_II = a.arm != Arm::I;
    for (size_t j = 0; j < n; ++j) {
        double w = 1.0;
        if (a.weight == Observable::Weight::photon_frequency) w = g.omegas[j];
        if (a.weight == Observable::Weight::motional_quantum) w = omega_m;
        if (on_I) {
            r.psi0[j] = w * (a.m[0] * s.psi0[j] + a.m[1] * s.psi1[j]);
            r.psi1[j] = w * (a.m[2] * s.psi0[j] + a.m[3] * s.psi1[j]);
        }
        if (on_II && j < s.beta.size() && s.beta[j] != 0.0) {
            if (a.m[2] != 0.0)
                throw std::domain_error(
                    "apply: observable " + a.id +
                    " maps arm II out of the ground-motional sector");
            r.beta[j] = w * a.m[0] * s.beta[j];
        }
    }
    return r;
}

double expectation(const Observable& a, const JointState& s, const FrequencyGrid& g,
                   double omega_m) {
    JointState as = apply(a, s, g, omega_m);
    cplx acc = 0;
    for (size_t j = 0; j < s.psi0.size(); ++j) {
        acc += std::conj(s.psi0[j]) * as.psi0[j];
        acc += std::conj(s.psi1[j]) * as.psi1[j];
        if (j < s.beta.size()) acc += std::conj(s.beta[j]) * as.beta[j];
    }
    double n = s.norm_sq();
    return n > 0 ? acc.real() / n : 0.0;
}

std::vector<Observable> standard_observables() {
    using O = Observable;
    return {
        O::joint_projector(Arm::I, Motional::in),
        O::joint_projector(Arm::I, Motional::out),
        O::joint_projector(Arm::II, Motional::in),
        O::joint_projector(Arm::II, Motional::out),
        O::joint_projector(Arm::I, Motional::m0),
        O::joint_projector(Arm::I, Motional::m1),
        O::joint_projector(Arm::II, Motional::m0),
        O::joint_projector(Arm::II, Motional::m1),
        O::arm_projector(Arm::I),
        O::arm_projector(Arm::II),
        O::h_m(),
        O::h_m_restricted(Arm::I),
        O::h_m_restricted(Arm::II),
        O::h_ph_restricted(Arm::I),
        O::h_ph_restricted(Arm::II),
        O::h_ph(),
    };
}

// ---- serialization ----

namespace {

nlohmann::json cvec_json(const cvec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (auto& c : v) a.push_back({c.real(), c.imag()});
    return a;
}

cvec cvec_from(const nlohmann::json& a) {
    cvec v;
    v.reserve(a.size());
    for (auto& e : a) v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return v;
}

} // namespace

nlohmann::json state_json(const JointState& s, const FrequencyGrid& g) {
    nlohmann::json j;
    j["omegas"] = g.omegas;
    j["spacing"] = g.spacing;
    j["shift_steps"] = g.shift_steps;
    j["psi0"] = cvec_json(s.psi0);
    j["psi1"] = cvec_json(s.psi1);
    j["beta"] = cvec_json(s.beta);
    j["explosion_weight"] = s.explosion_weight;
    j["picture"] =
        s.picture == JointState::Picture::interaction ? "interaction" : "schrodinger";
    return j;
}

std::pair<JointState, FrequencyGrid> state_from_json(const nlohmann::json& j) {
    FrequencyGrid g;
    g.omegas = j.at("omegas").get<std::vector<double>>();
    g.spacing = j.at("spacing").get<double>();
    g.shift_steps = j.at("shift_steps").get<int>();
    JointState s;
    s.psi0 = cvec_from(j.at("psi0"));
    s.psi1 = cvec_from(j.at("psi1"));
    s.beta = cvec_from(j.at("beta"));
    s.explosion_weight = j.at("explosion_weight").get<double>();
    s.picture = j.at("picture").get<std::string>() == "schrodinger"
                    ? JointState::Picture::schrodinger
                    : JointState::Picture::interaction;
    return {s, g};
}

} // namespace ifm
