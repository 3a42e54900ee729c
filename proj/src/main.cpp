#include "ifm/analytic.hpp"
#include "ifm/bouncer.hpp"
#include "ifm/config.hpp"
#include "ifm/dynamics.hpp"
#include "ifm/engine.hpp"
#include "ifm/io.hpp"
#include "ifm/micro.hpp"
#include "ifm/observable.hpp"
#include "ifm/params.hpp"
#include "ifm/state.hpp"
#include "ifm/weakvalues.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

using namespace ifm;
using nlohmann::json;

namespace {

// A report whose numbers missed their tolerance gate; exits with 2 so
// scripted comparisons can tell "disagrees" from "could not run".
struct ToleranceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v, const RunConfig& c) { return format_double(v, c.precision); }

json jnum(double v, const RunConfig& c) { return json(rounded(v, c.precision)); }

void emit(const std::string& text, const RunConfig& c) {
    if (c.out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        write_file(c.out_path, text);
    }
}

void print_regime_warnings(const RunConfig& c) {
    for (const auto& w : regime_warnings(c.params, c.regime_factor))
        std::fprintf(stderr, "warning: %s\n", w.c_str());
}

// ---- key,value reports (fit, oracle, engine) ----

struct KvReport {
    std::vector<std::pair<std::string, std::string>> rows; // already formatted
    void add(const std::string& k, const std::string& v) { rows.push_back({k, v}); }
    void add(const std::string& k, double v, const RunConfig& c) { add(k, fmt(v, c)); }
};

std::string render_kv(const KvReport& r, const RunConfig& c) {
    if (c.format == "json") {
        json j;
        for (auto& [k, v] : r.rows) {
            char* end = nullptr;
            double d = std::strtod(v.c_str(), &end);
            if (end && *end == '\0' && end != v.c_str())
                j[k] = json(d); // formatted once already; parse-back keeps digits
            else
                j[k] = v;
        }
        return j.dump(2) + "\n";
    }
    std::string out = csv_line({"quantity", "value"});
    for (auto& [k, v] : r.rows) out += csv_line({k, v});
    return out;
}

// ---- subcommand bodies, each returning the full output text ----

std::string report_eigenstates(const RunConfig& c) {
    auto s0 = bounce_eigenstate(c.bouncer, 0);
    auto s1 = bounce_eigenstate(c.bouncer, 1);
    auto zs = c.bouncer.make_grid();
    const double r2 = 1.0 / std::sqrt(2.0);

    if (c.format == "json") {
        json j;
        j["z_over_z0"] = json::array();
        j["psi0"] = json::array();
        j["psi1"] = json::array();
        j["psi_in"] = json::array();
        j["psi_out"] = json::array();
        for (size_t i = 0; i < zs.size(); ++i) {
            j["z_over_z0"].push_back(jnum(zs[i], c));
            j["psi0"].push_back(jnum(s0.wavefunction[i], c));
            j["psi1"].push_back(jnum(s1.wavefunction[i], c));
            j["psi_in"].push_back(jnum(r2 * (s0.wavefunction[i] - s1.wavefunction[i]), c));
            j["psi_out"].push_back(jnum(r2 * (s0.wavefunction[i] + s1.wavefunction[i]), c));
        }
        j["energy0"] = jnum(s0.energy, c);
        j["energy1"] = jnum(s1.energy, c);
        return j.dump(2) + "\n";
    }
    std::string out = csv_line({"z_over_z0", "psi0", "psi1", "psi_in", "psi_out"});
    for (size_t i = 0; i < zs.size(); ++i)
        out += csv_line({fmt(zs[i], c), fmt(s0.wavefunction[i], c),
                         fmt(s1.wavefunction[i], c),
                         fmt(r2 * (s0.wavefunction[i] - s1.wavefunction[i]), c),
                         fmt(r2 * (s0.wavefunction[i] + s1.wavefunction[i]), c)});
    return out;
}

std::string report_fit(const RunConfig& c) {
    auto s0 = bounce_eigenstate(c.bouncer, 0);
    auto s1 = bounce_eigenstate(c.bouncer, 1);
    auto zs = c.bouncer.make_grid();
    double dz = c.bouncer.z_max / (c.bouncer.n_grid - 1);
    const double r2 = 1.0 / std::sqrt(2.0);

    // moments of |minus> = (|0> - |1>)/sqrt(2) by trapezoid
    double m0 = 0, m1 = 0, m2 = 0;
    for (size_t i = 0; i < zs.size(); ++i) {
        double m = r2 * (s0.wavefunction[i] - s1.wavefunction[i]);
        double w = (i == 0 || i + 1 == zs.size()) ? 0.5 : 1.0;
        m0 += w * m * m * dz;
        m1 += w * m * m * zs[i] * dz;
        m2 += w * m * m * zs[i] * zs[i] * dz;
    }
    double mean = m1 / m0;
    double var = m2 / m0 - mean * mean;

    GaussianFit bestfit = fit_gaussian(c.bouncer);

    KvReport r;
    r.add("bounce_gap", bounce_gap(), c);
    r.add("minus_mean", mean, c);
    r.add("minus_std", std::sqrt(var), c);
    r.add("fit_mean", bestfit.mean, c);
    r.add("fit_sigma", bestfit.sigma, c);
    r.add("fit_overlap", bestfit.overlap_probability, c);
    r.add("operating_overlap", overlap_with_minus(c.bouncer, 2.80, 1.27), c);
    r.add("safe_raise", safe_raise_height(c.bouncer, c.raise_epsilon), c);
    return render_kv(r, c);
}

std::string report_evolve(const RunConfig& c, bool single_arm) {
    FrequencyGrid g = build_grid(c.params);
    JointState s0 = initial_state(c.params, g, !single_arm);
    EvolutionResult ev = evolve_no_explosion(s0, c.params, g, c.n_times);

    if (c.format == "json") {
        json j;
        for (const char* k : {"t", "survival", "E_ph", "E_m", "p_armI", "p_armII"})
            j[k] = json::array();
        for (auto& row : ev.trajectory) {
            j["t"].push_back(jnum(row.t, c));
            j["survival"].push_back(jnum(row.survival, c));
            j["E_ph"].push_back(jnum(row.E_ph, c));
            j["E_m"].push_back(jnum(row.E_m, c));
            j["p_armI"].push_back(jnum(row.p_armI, c));
            j["p_armII"].push_back(jnum(row.p_armII, c));
        }
        return j.dump(2) + "\n";
    }
    std::string out = csv_line({"t", "survival", "E_ph", "E_m", "p_armI", "p_armII"});
    for (auto& row : ev.trajectory)
        out += csv_line({fmt(row.t, c), fmt(row.survival, c), fmt(row.E_ph, c),
                         fmt(row.E_m, c), fmt(row.p_armI, c), fmt(row.p_armII, c)});
    return out;
}

std::string report_interfere(const RunConfig& c) {
    FrequencyGrid g = build_grid(c.params);
    JointState s0 = initial_state(c.params, g, true);
    EvolutionResult ev = evolve_no_explosion(s0, c.params, g);
    PortOutcomes po = detect_ports(ev.final_state, c.params, g);

    struct Row {
        const char* port;
        double p, eph, em;
    } rows[] = {
        {"dark", po.p_dark, po.dark_report.E_ph, po.dark_report.E_m},
        {"bright", po.p_bright, po.bright_report.E_ph, po.bright_report.E_m},
        {"explosion", po.p_explosion, c.params.omega_ph, 0.0},
    };
    if (c.format == "json") {
        json j = json::array();
        for (auto& r : rows)
            j.push_back({{"port", r.port},
                         {"probability", jnum(r.p, c)},
                         {"E_ph", jnum(r.eph, c)},
                         {"E_m", jnum(r.em, c)}});
        return j.dump(2) + "\n";
    }
    std::string out = csv_line({"port", "probability", "E_ph", "E_m"});
    for (auto& r : rows)
        out += csv_line({r.port, fmt(r.p, c), fmt(r.eph, c), fmt(r.em, c)});
    return out;
}

std::string report_weak_values(const RunConfig& c) {
    FrequencyGrid g = build_grid(c.params);
    WeakValueSeries s = weak_value_series(standard_observables(), c.params, g,
                                          c.n_times);
    const double eps = 1e-9;
    auto flagged = [&](size_t i, size_t k) {
        auto [lo, hi] = s.window[i];
        auto v = s.values[i][k];
        return v.real() < lo - eps || v.real() > hi + eps ||
               std::abs(v.imag()) > eps;
    };

    if (c.format == "json") {
        json j;
        j["times_Gamma"] = json::array();
        for (double t : s.times) j["times_Gamma"].push_back(jnum(t * s.gamma, c));
        j["series"] = json::array();
        for (size_t i = 0; i < s.ids.size(); ++i) {
            json row;
            row["id"] = s.ids[i];
            row["unit_scale"] = jnum(s.unit_scale[i], c);
            row["window"] = {jnum(s.window[i].first, c), jnum(s.window[i].second, c)};
            row["re"] = json::array();
            row["im"] = json::array();
            row["anomalous"] = json::array();
            for (size_t k = 0; k < s.times.size(); ++k) {
                row["re"].push_back(jnum(s.values[i][k].real(), c));
                row["im"].push_back(jnum(s.values[i][k].imag(), c));
                row["anomalous"].push_back(flagged(i, k) ? 1 : 0);
            }
            j["series"].push_back(row);
        }
        return j.dump(2) + "\n";
    }
    std::string out =
        csv_line({"t_Gamma", "observable_id", "re", "im", "anomalous_flag"});
    for (size_t k = 0; k < s.times.size(); ++k)
        for (size_t i = 0; i < s.ids.size(); ++i)
            out += csv_line({fmt(s.times[k] * s.gamma, c), s.ids[i],
                             fmt(s.values[i][k].real(), c),
                             fmt(s.values[i][k].imag(), c),
                             flagged(i, k) ? "1" : "0"});
    return out;
}

std::string report_backward(const RunConfig& c) {
    FrequencyGrid g = build_grid(c.params);
    BackwardReport r = backward_propagate(c.params, g, c.n_times);

    if (c.format == "json") {
        json j;
        j["t_Gamma"] = json::array();
        j["c0"] = json::array();
        j["c1"] = json::array();
        j["d0"] = json::array();
        j["d1"] = json::array();
        for (size_t k = 0; k < r.times.size(); ++k) {
            j["t_Gamma"].push_back(jnum(r.times[k] * c.params.gamma, c));
            j["c0"].push_back(jnum(r.coeffs[k][0], c));
            j["c1"].push_back(jnum(r.coeffs[k][1], c));
            j["d0"].push_back(jnum(r.coeffs[k][2], c));
            j["d1"].push_back(jnum(r.coeffs[k][3], c));
        }
        j["final_renormalized"] = json::array();
        for (double v : r.final_renormalized)
            j["final_renormalized"].push_back(jnum(v, c));
        j["armI_max_amplitude"] = jnum(r.armI_max_amplitude, c);
        j["pair_sum_drift"] = jnum(r.pair_sum_drift, c);
        return j.dump(2) + "\n";
    }
    std::string out = csv_line({"t_Gamma", "c0", "c1", "d0", "d1"});
    for (size_t k = 0; k < r.times.size(); ++k)
        out += csv_line({fmt(r.times[k] * c.params.gamma, c), fmt(r.coeffs[k][0], c),
                         fmt(r.coeffs[k][1], c), fmt(r.coeffs[k][2], c),
                         fmt(r.coeffs[k][3], c)});
    return out;
}

std::string report_oracle(const RunConfig& c, bool* gates_ok) {
    OracleReport r = run_micro_oracle(c.micro);
    bool rate_ok = r.model_rate > 0
                       ? std::abs(r.fitted_rate - r.model_rate) <= 0.05 * r.model_rate
                       : std::abs(r.fitted_rate) <= 1e-6;
    bool dev_ok = r.max_state_deviation <= 0.05;
    if (gates_ok) *gates_ok = rate_ok && dev_ok;

    KvReport kv;
    kv.add("fitted_rate", r.fitted_rate, c);
    kv.add("model_rate", r.model_rate, c);
    kv.add("max_state_deviation", r.max_state_deviation, c);
    kv.add("deviation_at_end", r.deviation_at_end, c);
    kv.add("max_norm_drift", r.max_norm_drift, c);
    kv.add("explosion_weight", r.explosion_weight, c);
    kv.add("checkpoints", std::to_string(r.checkpoints));
    kv.add("substeps", std::to_string(r.substeps));
    kv.add("rate_within_5_percent", rate_ok ? "1" : "0");
    kv.add("deviation_within_0.05", dev_ok ? "1" : "0");
    return render_kv(kv, c);
}

std::string report_engine(const RunConfig& c, bool expectation, bool* audit_ok) {
    EngineConfig ec = engine_config(c);
    EngineLedger led = expectation ? run_cycles_expectation(ec)
                                   : run_cycles_sampled(ec, c.cycles, c.seed);
    AuditReport audit = audit_ledger(led, ec);
    YieldReport y = expected_yield(ec);
    if (audit_ok) *audit_ok = audit.violations == 0;

    KvReport kv;
    kv.add("mode", expectation ? "expectation" : "sampled");
    kv.add("cycles", std::to_string(led.n_cycles));
    kv.add("n_dark", std::to_string(led.n_dark));
    kv.add("n_bright", std::to_string(led.n_bright));
    kv.add("n_explosion", std::to_string(led.n_explosion));
    kv.add("bombs_lost", std::to_string(led.bombs_lost));
    kv.add("total_photon_in", led.total_photon_in, c);
    kv.add("total_photon_out", led.total_photon_out, c);
    kv.add("total_motional_gain", led.total_motional_gain, c);
    kv.add("total_work", led.total_work, c);
    kv.add("total_absorbed", led.total_absorbed, c);
    kv.add("records_kept", std::to_string(led.records.size()));
    kv.add("records_truncated", led.records_truncated ? "1" : "0");
    kv.add("audit_violations", std::to_string(audit.violations));
    kv.add("audit_max_residual", audit.max_residual, c);
    kv.add("audit_tolerance", audit.tolerance, c);
    kv.add("work_per_photon", y.work_per_photon, c);
    kv.add("photon_energy_cost", y.photon_energy_cost, c);
    kv.add("bombs_lost_per_photon", y.bombs_lost_per_photon, c);
    return render_kv(kv, c);
}

std::string report_compare(const RunConfig& c, double tol, bool* all_ok) {
    FrequencyGrid g = build_grid(c.params);
    JointState s0 = initial_state(c.params, g, true);
    EvolutionResult ev = evolve_no_explosion(s0, c.params, g);
    PortOutcomes po = detect_ports(ev.final_state, c.params, g);
    ClosedForms cf = closed_forms(c.params.gamma, c.params.tau, c.params.omega_ph,
                                  c.params.omega_m);

    struct Row {
        std::string quantity;
        double analytic, numeric;
    };
    std::vector<Row> rows = {
        {"survival_interferometer", cf.p_ne_interf, ev.survival_probability},
        {"p_dark", cf.p_dark, po.p_dark},
        {"p_bright", cf.p_bright, po.p_bright},
        {"p_explosion", cf.p_explosion, po.p_explosion},
        {"E_dark_ph", cf.E_dark_ph, po.dark_report.E_ph},
        {"E_dark_m", cf.E_dark_m, po.dark_report.E_m},
        {"E_bright_ph", cf.E_bright_ph, po.bright_report.E_ph},
        {"E_bright_m", cf.E_bright_m, po.bright_report.E_m},
    };

    if (c.params.gamma * c.params.tau > 0) { // dark port alive: weak values exist
        auto ana = analytic_weak_values(c.params.gamma, c.params.tau, c.params.tau,
                                        c.params.omega_ph, c.params.omega_m);
        for (const char* id : {"Pi_I_0", "Pi_I_1", "Pi_II", "H_m", "H_ph_Pi_I"}) {
            Observable obs;
            for (auto& o : standard_observables())
                if (o.id == id) obs = o;
            double num = weak_value(obs, c.params.tau, c.params, g).real();
            double an = 0;
            for (auto& e : ana)
                if (e.id == id) an = e.consistent.real();
            rows.push_back({std::string("wv_") + id + "_at_tau", an, num});
        }
    }

    bool ok = true;
    if (c.format == "json") {
        json j = json::array();
        for (auto& r : rows) {
            double dev = std::abs(r.analytic - r.numeric);
            bool within = dev <= tol;
            ok = ok && within;
            j.push_back({{"quantity", r.quantity},
                         {"analytic", jnum(r.analytic, c)},
                         {"numeric", jnum(r.numeric, c)},
                         {"abs_dev", jnum(dev, c)},
                         {"within_tol", within}});
        }
        if (all_ok) *all_ok = ok;
        return j.dump(2) + "\n";
    }
    std::string out =
        csv_line({"quantity", "analytic", "numeric", "abs_dev", "within_tol"});
    for (auto& r : rows) {
        double dev = std::abs(r.analytic - r.numeric);
        bool within = dev <= tol;
        ok = ok && within;
        out += csv_line({r.quantity, fmt(r.analytic, c), fmt(r.numeric, c),
                         fmt(dev, c), within ? "1" : "0"});
    }
    if (all_ok) *all_ok = ok;
    return out;
}

// ---- sweep ----

struct VarySpec {
    std::string key;                 // "section.key"
    std::vector<std::string> values; // verbatim value strings
};

VarySpec parse_vary(const std::string& spec) {
    size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("--vary must be section.key=v1,v2[,...]: '" + spec + "'");
    VarySpec v;
    v.key = spec.substr(0, eq);
    std::string rest = spec.substr(eq + 1);
    size_t pos = 0;
    while (true) {
        size_t comma = rest.find(',', pos);
        std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
        if (tok.empty())
            throw ConfigError("--vary has an empty value: '" + spec + "'");
        v.values.push_back(tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return v;
}

using ReportFn = std::function<std::string(const RunConfig&)>;

std::map<std::string, ReportFn> sweep_reports() {
    return {
        {"eigenstates", report_eigenstates},
        {"fit", report_fit},
        {"evolve", [](const RunConfig& c) { return report_evolve(c, false); }},
        {"interfere", report_interfere},
        {"weak-values", report_weak_values},
        {"backward", report_backward},
        {"oracle", [](const RunConfig& c) { return report_oracle(c, nullptr); }},
        {"engine",
         [](const RunConfig& c) { return report_engine(c, false, nullptr); }},
        {"compare",
         [](const RunConfig& c) { return report_compare(c, 1e-6, nullptr); }},
    };
}

int run_sweep(const RunConfig& base, const std::vector<std::string>& vary_specs,
              const std::string& report_name, int jobs) {
    auto reports = sweep_reports();
    auto it = reports.find(report_name);
    if (it == reports.end())
        throw ConfigError("unknown sweep report '" + report_name + "'");
    ReportFn fn = it->second;

    std::vector<VarySpec> axes;
    for (auto& s : vary_specs) axes.push_back(parse_vary(s));
    if (axes.empty()) throw ConfigError("sweep needs at least one --vary");

    long n_points = 1;
    for (auto& a : axes) n_points *= (long)a.values.size();

    std::string dir = base.out_path.empty() ? "sweep_out" : base.out_path;
    std::filesystem::create_directories(dir);
    std::string ext = base.format == "json" ? ".json" : ".csv";

    // materialize the cartesian product
    struct Point {
        RunConfig cfg;
        std::vector<std::string> assignment; // value per axis
        std::string file;
    };
    std::vector<Point> points((size_t)n_points);
    for (long idx = 0; idx < n_points; ++idx) {
        Point& pt = points[idx];
        pt.cfg = base;
        pt.cfg.out_path.clear();
        long rem = idx;
        for (auto& a : axes) {
            size_t pick = rem % a.values.size();
            rem /= (long)a.values.size();
            apply_override(pt.cfg, a.key + "=" + a.values[pick]);
            pt.assignment.push_back(a.values[pick]);
        }
        validate(pt.cfg);
        pt.file = "point_" + std::to_string(idx) + ext;
    }

    std::atomic<long> next{0};
    std::vector<std::string> errors((size_t)n_points);
    auto worker = [&] {
        for (long idx = next.fetch_add(1); idx < n_points; idx = next.fetch_add(1)) {
            try {
                std::string text = fn(points[idx].cfg);
                write_file(dir + "/" + points[idx].file, text);
            } catch (const std::exception& e) {
                errors[idx] = e.what();
            }
        }
    };
    int n_threads = std::max(1, std::min(jobs, (int)n_points));
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::vector<std::string> head{"point"};
    for (auto& a : axes) head.push_back(a.key);
    head.push_back("file");
    std::string manifest = csv_line(head);
    for (long idx = 0; idx < n_points; ++idx) {
        std::vector<std::string> row{std::to_string(idx)};
        for (auto& v : points[idx].assignment) row.push_back(v);
        row.push_back(points[idx].file);
        manifest += csv_line(row);
    }
    write_file(dir + "/manifest.csv", manifest);

    for (long idx = 0; idx < n_points; ++idx) {
        if (!errors[idx].empty()) {
            std::fprintf(stderr, "error: sweep point %ld: %s\n", idx,
                         errors[idx].c_str());
            return 1;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"interaction-free measurement engine: simulator and reports"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path, format;
    int precision = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 1;

    app.add_option("--config", config_path, "configuration file");
    app.add_option("--set", overrides, "override, section.key=value (repeatable)");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--precision", precision, "significant digits, 6..17");
    app.add_option("--seed", seed, "sampling seed")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_option("--jobs", jobs, "sweep worker threads")->check(CLI::PositiveNumber);

    auto* c_eigen = app.add_subcommand("eigenstates", "bouncing-bomb level profiles");
    auto* c_fit = app.add_subcommand("fit", "Gaussian reading of the dark-state bomb");
    auto* c_evolve = app.add_subcommand("evolve", "conditioned time evolution");
    bool single_arm = false;
    c_evolve->add_flag("--single-arm", single_arm, "bomb arm only, no interferometer");
    auto* c_interf = app.add_subcommand("interfere", "port statistics and energies");
    auto* c_wv = app.add_subcommand("weak-values", "dark-port-conditioned panel");
    auto* c_bwd = app.add_subcommand("backward", "post-selected state carried back");
    auto* c_oracle = app.add_subcommand("oracle", "microscopic reservoir check");
    auto* c_engine = app.add_subcommand("engine", "cycle ledger and yield");
    bool engine_expectation = false;
    c_engine->add_flag("--expectation", engine_expectation,
                       "probability-weighted single cycle instead of sampling");
    auto* c_compare = app.add_subcommand("compare", "grid numerics against closed forms");
    double tol = 1e-6;
    c_compare->add_option("--tol", tol, "absolute tolerance per row");
    auto* c_sweep = app.add_subcommand("sweep", "cartesian parameter scan");
    std::vector<std::string> vary_specs;
    std::string sweep_report = "interfere";
    c_sweep->add_option("--vary", vary_specs, "section.key=v1,v2[,...] (repeatable)")
        ->required();
    c_sweep->add_option("--report", sweep_report,
                        "eigenstates|fit|evolve|interfere|weak-values|backward|"
                        "oracle|engine|compare");

    // global options are accepted after the subcommand name too
    for (auto* s : app.get_subcommands([](const CLI::App*) { return true; }))
        s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        RunConfig cfg;
        if (config_path.empty()) {
            const char* env = std::getenv("IFM_SIM_DEFAULT_CONFIG");
            if (env && *env) config_path = env;
        }
        if (!config_path.empty()) cfg = load_config(config_path);
        for (auto& s : overrides) apply_override(cfg, s);
        if (!out_path.empty()) cfg.out_path = out_path;
        if (!format.empty()) cfg.format = format;
        if (precision >= 0) cfg.precision = precision;
        if (seed_set) cfg.seed = seed;
        validate(cfg);

        if (c_sweep->parsed())
            return run_sweep(cfg, vary_specs, sweep_report, jobs);

        std::string text;
        int code = 0;
        if (c_eigen->parsed()) {
            text = report_eigenstates(cfg);
        } else if (c_fit->parsed()) {
            text = report_fit(cfg);
        } else if (c_evolve->parsed()) {
            print_regime_warnings(cfg);
            text = report_evolve(cfg, single_arm);
        } else if (c_interf->parsed()) {
            print_regime_warnings(cfg);
            text = report_interfere(cfg);
        } else if (c_wv->parsed()) {
            print_regime_warnings(cfg);
            text = report_weak_values(cfg);
        } else if (c_bwd->parsed()) {
            print_regime_warnings(cfg);
            text = report_backward(cfg);
        } else if (c_oracle->parsed()) {
            bool ok = true;
            text = report_oracle(cfg, &ok);
            if (!ok) code = 2;
        } else if (c_engine->parsed()) {
            print_regime_warnings(cfg);
            bool ok = true;
            text = report_engine(cfg, engine_expectation, &ok);
            if (!ok) code = 2;
        } else if (c_compare->parsed()) {
            print_regime_warnings(cfg);
            bool ok = true;
            text = report_compare(cfg, tol, &ok);
            if (!ok) code = 2;
        }
        emit(text, cfg);
        return code;
    } catch (const ToleranceFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
