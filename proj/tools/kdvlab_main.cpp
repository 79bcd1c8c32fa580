// kdvlab command-line runner. Subcommands map one-to-one onto the library
// experiment surfaces; every run drops machine-readable artifacts (CSV +
// report.json) into --out and exits 0 only if all asserted checks pass.
// Exit codes: 0 ok, 1 invariant/check failure, 2 config error, 3 blow-up.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kdvlab/acceptance.hpp"
#include "kdvlab/blocks.hpp"
#include "kdvlab/bump.hpp"
#include "kdvlab/counterexample.hpp"
#include "kdvlab/energy.hpp"
#include "kdvlab/gauge.hpp"
#include "kdvlab/integrator.hpp"
#include "kdvlab/kernels.hpp"
#include "kdvlab/resonance.hpp"
#include "kdvlab/spacetime.hpp"
#include "kdvlab/transform.hpp"

using nlohmann::json;
using namespace kdvlab;

namespace {

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

struct RunContext {
    std::string out_dir = ".";
    std::uint64_t seed = 0x5eed0d15ULL;
    int threads = 1;
    json config;  // parsed --config file (or empty object)
    std::vector<Check> checks;
    std::vector<std::string> artifacts;

    void check(const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({name, pass, detail});
    }
    bool all_ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

void reject_unknown_keys(const json& j, std::set<std::string> allowed, const std::string& where) {
    if (!j.is_object()) throw config_error("config: '" + where + "' must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw config_error("config: unknown key '" + it.key() + "' in " + where);
}

json section(const json& cfg, const std::string& name) {
    if (!cfg.contains(name)) return json::object();
    return cfg.at(name);
}

template <class T>
T field_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw config_error("config: bad value for '" + key + "': " + e.what());
    }
}

// ---- config -> simulation objects ----

struct Problem {
    TorusGrid grid{64};
    SpectralField u0;
    EquationParams params;
    SolverConfig solver;
};

Problem load_problem(RunContext& ctx) {
    const json& cfg = ctx.config;
    reject_unknown_keys(cfg, {"grid", "equation", "initial", "solver", "norms",
                              "counterexample", "energy", "blocks"},
                        "top level");

    json jg = section(cfg, "grid");
    reject_unknown_keys(jg, {"N", "M"}, "grid");
    const int N = field_or(jg, "N", 64);
    const int M = field_or(jg, "M", 0);
    Problem prob;
    prob.grid = TorusGrid(N, M);

    json ji = section(cfg, "initial");
    reject_unknown_keys(ji, {"type", "n0", "amplitude", "s", "radius", "modes"}, "initial");
    const std::string type = field_or<std::string>(ji, "type", "random");
    if (type == "cosine") {
        prob.u0 = cosine_field(N, field_or(ji, "n0", 1), field_or(ji, "amplitude", 1.0));
    } else if (type == "random") {
        Rng rng(Rng::derive(ctx.seed, 0x1D47Au));
        prob.u0 = random_hs_field(N, field_or(ji, "s", 2.0), field_or(ji, "radius", 0.5), rng);
    } else if (type == "modes") {
        require_config(ji.contains("modes"), "config: initial.type 'modes' needs a mode list");
        SpectralField u(N);
        for (const json& row : ji.at("modes")) {
            require_config(row.is_array() && row.size() == 3,
                           "config: each mode entry is [n, re, im]");
            const int n = row.at(0).get<int>();
            require_config(n >= -N && n <= N, "config: mode index outside the band");
            const cplx v(row.at(1).get<double>(), row.at(2).get<double>());
            require_config(n != 0 || std::abs(v.imag()) == 0.0,
                           "config: the zero mode of a real field must be real");
            u.at(n) = v;
            if (n != 0) u.at(-n) = std::conj(v);
        }
        prob.u0 = u;
    } else {
        throw config_error("config: unknown initial.type '" + type + "'");
    }

    json je = section(cfg, "equation");
    reject_unknown_keys(je, {"coefficients", "renormalized"}, "equation");
    double a1 = -30.0, a2 = 20.0, a3 = 10.0;
    if (je.contains("coefficients") && !je.at("coefficients").is_string()) {
        const json& a = je.at("coefficients");
        require_config(a.is_array() && a.size() == 3,
                       "config: equation.coefficients is \"integrable\" or [a1, a2, a3]");
        a1 = a.at(0).get<double>();
        a2 = a.at(1).get<double>();
        a3 = a.at(2).get<double>();
    } else if (je.contains("coefficients")) {
        require_config(je.at("coefficients").get<std::string>() == "integrable",
                       "config: unknown coefficient preset");
    }
    const bool renorm = field_or(je, "renormalized", true);
    if (renorm) {
        prob.params = EquationParams::renormalized_for(prob.u0, a1, a2, a3);
    } else {
        prob.params = EquationParams::coefficients(a1, a2, a3);
    }

    json js = section(cfg, "solver");
    reject_unknown_keys(js, {"scheme", "dt", "T", "dealias", "contour_points"}, "solver");
    prob.solver.dt = field_or(js, "dt", 1e-5);
    prob.solver.t_end = field_or(js, "T", 1e-3);
    prob.solver.dealias = field_or(js, "dealias", true);
    prob.solver.contour_points = field_or(js, "contour_points", 32);
    prob.solver.renormalized_flow = renorm;
    const std::string scheme = field_or<std::string>(js, "scheme", "etdrk4");
    if (scheme == "etdrk4")
        prob.solver.scheme = Scheme::Etdrk4;
    else if (scheme == "ifrk4")
        prob.solver.scheme = Scheme::Ifrk4;
    else
        throw config_error("config: unknown solver.scheme '" + scheme + "'");
    return prob;
}

void write_artifact(RunContext& ctx, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(ctx.out_dir);
    const std::string path = ctx.out_dir + "/" + name;
    std::ofstream f(path, std::ios::binary);
    require_config(bool(f), "cannot open artifact for writing: " + path);
    f << content;
    ctx.artifacts.push_back(path);
}

int finish(RunContext& ctx, const std::string& subcommand) {
    json rep;
    rep["subcommand"] = subcommand;
    rep["seed"] = ctx.seed;
    rep["checks"] = json::array();
    for (const auto& c : ctx.checks)
        rep["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    rep["artifacts"] = ctx.artifacts;
    rep["pass"] = ctx.all_ok();
    write_artifact(ctx, "report.json", rep.dump(2) + "\n");
    for (const auto& c : ctx.checks)
        std::printf("%s  %s  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    return ctx.all_ok() ? 0 : 1;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

// ---- subcommands ----

int cmd_simulate(RunContext& ctx) {
    Problem prob = load_problem(ctx);
    Trajectory traj = evolve(prob.u0, prob.grid, prob.params, prob.solver);
    const int stride = std::max<int>(1, int(traj.steps() / 200));
    std::vector<ConservationRow> rows = conservation_report(traj, stride);
    write_artifact(ctx, "conservation.csv", conservation_csv(rows));
    double dm = 0.0, de = 0.0, dh = 0.0;
    for (const auto& r : rows) {
        dm = std::max(dm, r.drift_mass);
        de = std::max(de, r.drift_energy);
        dh = std::max(dh, r.drift_h3);
    }
    ctx.check("mean-conservation", dm <= 1e-13, fmt("max mean drift %.3e (<= 1e-13)", dm));
    ctx.check("energy-h3-report", true, fmt("max E drift %.3e, max H3 drift %.3e", de, dh));
    return finish(ctx, "simulate");
}

int cmd_resonance(RunContext& ctx, long long exhaustive) {
    long long pairs = 0, triples = 0;
    for (long long n1 = -exhaustive; n1 <= exhaustive; ++n1)
        for (long long n2 = -exhaustive; n2 <= exhaustive; ++n2) {
            resonance_h2(n1, n2);
            ++pairs;
        }
    for (long long n1 = -exhaustive; n1 <= exhaustive; ++n1)
        for (long long n2 = n1; n2 <= exhaustive; ++n2)
            for (long long n3 = n2; n3 <= exhaustive; ++n3) {
                resonance_h3(n1, n2, n3);
                ++triples;
            }
    ctx.check("quadratic-identity", true,
              "power sum == factorization on " + std::to_string(pairs) + " pairs");
    ctx.check("cubic-identity", true,
              "power sum == corrected factorization on " + std::to_string(triples) +
                  " sorted triples");
    TripleMismatch mm = first_literal_h3_mismatch(20);
    ctx.check("literal-cubic-form-fails", mm.found,
              mm.found ? "first mismatch at (" + std::to_string(mm.n1) + "," +
                             std::to_string(mm.n2) + "," + std::to_string(mm.n3) + ")"
                       : "no mismatch found");
    write_artifact(ctx, "resonance.csv", resonance_csv(std::min<long long>(exhaustive, 12)));
    return finish(ctx, "resonance");
}

int cmd_gauge(RunContext& ctx) {
    Problem prob = load_problem(ctx);
    Trajectory traj = evolve(prob.u0, prob.grid, prob.params, prob.solver);
    Trajectory nt = apply_nt(traj, prob.params.a1);
    const double dmod = nt_modulus_defect(traj, nt);
    const double dround = nt_roundtrip_defect(traj, prob.params.a1);
    ctx.check("nt-modulus", dmod <= 1e-15, fmt("max modulus defect %.3e", dmod));
    ctx.check("nt-roundtrip", dround <= 1e-12, fmt("max round-trip defect %.3e", dround));
    if (prob.params.renormalized) {
        const double dphase = nt_constant_mass_phase_defect(traj, prob.params);
        ctx.check("nt-phase-law", dphase <= 1e-8, fmt("phase vs e^{-i c2 n t}: %.3e", dphase));
    }
    std::vector<BicontinuityRow> ladder = bicontinuity_experiment(
        prob.u0, prob.grid, prob.params, prob.solver, {1e-3, 1e-4, 1e-5, 1e-6}, 1.0,
        Rng::derive(ctx.seed, 0x6A06Eu));
    std::string csv = "eps,dist_plain,dist_nt,ratio\n";
    char buf[192];
    double rlo = 1e300, rhi = 0.0;
    for (const auto& r : ladder) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", r.eps, r.dist_plain,
                      r.dist_nt, r.ratio);
        csv += buf;
        rlo = std::min(rlo, r.ratio);
        rhi = std::max(rhi, r.ratio);
    }
    write_artifact(ctx, "gauge_bicontinuity.csv", csv);
    ctx.check("nt-bicontinuity", rhi / std::max(rlo, 1e-300) <= 5.0,
              fmt("NT/plain distance ratios within [%.3f, %.3f]", rlo, rhi));
    return finish(ctx, "gauge");
}

int cmd_norms(RunContext& ctx) {
    Problem prob = load_problem(ctx);
    json jn = section(ctx.config, "norms");
    reject_unknown_keys(jn, {"s", "kmax"}, "norms");
    const double s = field_or(jn, "s", 0.5);
    const int kmax = field_or(jn, "kmax", 6);
    BumpFamily bump = BumpFamily::make(BumpProfile::Smoothstep);
    Trajectory traj = evolve(prob.u0, prob.grid, prob.params, prob.solver);

    std::vector<BandReport> bands;
    const double fs = fs_norm_upper(traj, prob.params, bump, s, &bands);
    const double ns = ns_norm_upper(traj, prob.params, bump, s);
    const double es2 = es_norm2(traj, bump, s);
    json jb = json::array();
    std::string csv = "k,value,t_at_max,windows,window_samples\n";
    char buf[192];
    for (const auto& b : bands) {
        if (b.k > kmax) continue;
        jb.push_back({{"k", b.k},
                      {"value", b.value},
                      {"t_at_max", b.t_at_max},
                      {"windows", b.windows},
                      {"window_samples", b.window_samples}});
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%d,%d\n", b.k, b.value, b.t_at_max,
                      b.windows, b.window_samples);
        csv += buf;
    }
    json jrep{{"s", s}, {"Fs_upper", fs}, {"Ns_upper", ns}, {"Es_norm2", es2}, {"bands", jb}};
    write_artifact(ctx, "norms.json", jrep.dump(2) + "\n");
    write_artifact(ctx, "norm_bands.csv", csv);
    ctx.check("norm-report", fs > 0.0 && es2 > 0.0,
              fmt("F^s upper %.6g, N^s upper %.6g", fs, ns) + fmt(", E^s^2 %.6g", es2));
    ctx.check("embedding-direction", std::sqrt(es2) <= 10.0 * fs + 1e-12,
              fmt("sqrt(E^s^2)/F^s = %.4f", std::sqrt(es2) / fs));

    json jblocks = section(ctx.config, "blocks");
    reject_unknown_keys(jblocks, {"trials", "cap"}, "blocks");
    EquationParams bp = EquationParams::integrable();
    bp.c1 = 5.0;
    std::vector<BlockComboResult> sweep =
        block_sweep(bp, field_or(jblocks, "trials", 25), field_or(jblocks, "cap", 10.0),
                    Rng::derive(ctx.seed, 0xB10Cu), ctx.threads);
    write_artifact(ctx, "blocks.csv", block_report_csv(sweep));
    int failed = 0;
    double worst = 0.0;
    for (const auto& r : sweep) {
        if (!r.pass) ++failed;
        worst = std::max(worst, r.max_ratio);
    }
    ctx.check("block-estimates", failed == 0,
              fmt("worst J/bound ratio %.3f over %.0f combos", worst, double(sweep.size())));
    return finish(ctx, "norms");
}

int cmd_energy(RunContext& ctx) {
    Problem prob = load_problem(ctx);
    json je = section(ctx.config, "energy");
    reject_unknown_keys(je, {"alpha", "beta", "s", "delta_ladder", "runs"}, "energy");
    const double alpha = field_or(je, "alpha", -4.0);
    const double beta = field_or(je, "beta", 6.0);
    const double s = field_or(je, "s", 1.0);
    std::vector<double> ladder =
        field_or(je, "delta_ladder", std::vector<double>{1e-1, 1e-2, 1e-3});
    const int runs = field_or(je, "runs", 8);
    BumpFamily bump = BumpFamily::make(BumpProfile::Smoothstep);

    Trajectory traj = evolve(prob.u0, prob.grid, prob.params, prob.solver);
    std::vector<int> ks;
    for (int k = 1; (1 << (k - 1)) <= prob.grid.N; ++k) ks.push_back(k);
    write_artifact(ctx, "energy_ledger.csv",
                   energy_ledger_csv(traj, bump, ks, std::max<int>(1, int(traj.steps() / 10)),
                                     alpha, beta));

    double first_ok = -1.0;
    std::string csv = "delta,ratio_min,ratio_max,pass\n";
    char buf[160];
    for (double delta : ladder) {
        std::vector<ComparabilityRow> rows = comparability_check(
            prob.grid, s, delta, runs, prob.solver, bump, Rng::derive(ctx.seed, 0xE5Au));
        double lo = 1e300, hi = 0.0;
        bool ok = true;
        for (const auto& r : rows) {
            lo = std::min(lo, r.ratio);
            hi = std::max(hi, r.ratio);
            ok = ok && r.pass;
        }
        if (ok) first_ok = (first_ok < 0.0) ? delta : std::min(first_ok, delta);
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d\n", delta, lo, hi, int(ok));
        csv += buf;
    }
    write_artifact(ctx, "energy_comparability.csv", csv);
    ctx.check("comparability", first_ok >= 0.0,
              first_ok >= 0.0 ? fmt("two-sided bound holds down to delta = %.1e", first_ok)
                              : "no ladder rung satisfied the two-sided bound");

    std::vector<CommutatorScan> scan = commutator_bound_scan(bump, {6, 8, 10});
    json jscan = json::array();
    for (const auto& r : scan)
        jscan.push_back({{"k", r.k}, {"max_sym1", r.max_sym1}, {"max_sym2", r.max_sym2}});
    write_artifact(ctx, "commutator.json", jscan.dump(2) + "\n");
    const double var = std::abs(scan[2].max_sym1 - scan[1].max_sym1) /
                       std::max(scan[1].max_sym1, 1e-300);
    ctx.check("commutator-stable", var <= 0.10, fmt("k=8 -> k=10 variation %.2f%%", 100.0 * var));
    return finish(ctx, "energy");
}

int cmd_counterexample(RunContext& ctx, double b_override) {
    json jc = section(ctx.config, "counterexample");
    reject_unknown_keys(jc, {"b", "s", "N_list"}, "counterexample");
    std::vector<double> bs = field_or(jc, "b", std::vector<double>{0.3, 0.5, 1.0});
    if (!std::isnan(b_override)) bs = {b_override};
    const double s = field_or(jc, "s", 0.0);
    std::vector<long long> ladder = field_or(jc, "N_list", default_n_ladder());

    json jrep = json::array();
    for (double b : bs) {
        for (Branch br : {Branch::High, Branch::Low}) {
            SlopeReport r = ratio_scan(br, b, s, ladder);
            const char* tag = (br == Branch::High) ? "high" : "low";
            char nbuf[96];
            std::snprintf(nbuf, sizeof(nbuf), "counterexample_%s_b%g.csv", tag, b);
            write_artifact(ctx, nbuf, ratio_csv(r));
            jrep.push_back({{"branch", tag},
                            {"b", b},
                            {"slope", r.slope},
                            {"expected", r.expected},
                            {"pass", r.pass}});
            char cbuf[64];
            std::snprintf(cbuf, sizeof(cbuf), "slope-%s-b%g", tag, b);
            ctx.check(cbuf, r.pass,
                      fmt("fitted %.4f vs expected %.4f", r.slope, r.expected));
        }
    }
    ThresholdReport th = threshold_report(s, ladder);
    jrep.push_back({{"t_high", th.t_high},
                    {"t_low", th.t_low},
                    {"empty_intersection", th.empty_intersection}});
    write_artifact(ctx, "counterexample_slopes.json", jrep.dump(2) + "\n");
    ctx.check("empty-intersection", th.empty_intersection,
              fmt("needs b <= %.4f and b >= %.4f simultaneously", th.t_high, th.t_low));
    return finish(ctx, "counterexample");
}

int cmd_all(RunContext& ctx) {
    AcceptanceOptions opt;
    opt.seed = ctx.seed;
    opt.threads = ctx.threads;
    std::vector<CriterionResult> results = run_acceptance(opt);
    for (const auto& r : results)
        ctx.check(std::to_string(r.id) + "-" + r.name, r.pass, r.detail);
    return finish(ctx, "all");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kdvlab: spectral laboratory for the fifth-order KdV flow on the torus"};
    app.require_subcommand(1);

    RunContext ctx;
    std::string config_path;
    app.add_option("--config", config_path, "JSON experiment config");
    app.add_option("--out", ctx.out_dir, "artifact output directory");
    app.add_option("--seed", ctx.seed, "master RNG seed");
    app.add_option("--threads", ctx.threads, "worker threads for sweeps");

    auto* sim = app.add_subcommand("simulate", "evolve and report conserved quantities");
    auto* res = app.add_subcommand("resonance", "exact resonance identity scans");
    long long exhaustive = 50;
    res->add_option("--exhaustive", exhaustive, "identity scan range |n_i| <= B");
    auto* gau = app.add_subcommand("gauge", "gauge transform round trip and bicontinuity");
    auto* nrm = app.add_subcommand("norms", "short-time norms and block estimates");
    auto* ene = app.add_subcommand("energy", "modified energy ledger and comparability");
    auto* cex = app.add_subcommand("counterexample", "bilinear estimate failure scan");
    double b_override = std::nan("");
    cex->add_option("--b", b_override, "run a single b instead of the config list");
    auto* all = app.add_subcommand("all", "full acceptance suite");
    for (auto* sc : {sim, res, gau, nrm, ene, cex, all}) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            require_config(bool(f), "cannot open config file: " + config_path);
            try {
                ctx.config = json::parse(f);
            } catch (const json::exception& e) {
                throw config_error(std::string("config parse: ") + e.what());
            }
        } else {
            ctx.config = json::object();
        }
        if (sim->parsed()) return cmd_simulate(ctx);
        if (res->parsed()) return cmd_resonance(ctx, exhaustive);
        if (gau->parsed()) return cmd_gauge(ctx);
        if (nrm->parsed()) return cmd_norms(ctx);
        if (ene->parsed()) return cmd_energy(ctx);
        if (cex->parsed()) return cmd_counterexample(ctx, b_override);
        if (all->parsed()) return cmd_all(ctx);
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const blowup_error& e) {
        std::fprintf(stderr, "blow-up at step %ld (t = %g): %s\n", e.step, e.t, e.what());
        return 3;
    } catch (const invariant_error& e) {
        std::fprintf(stderr, "invariant violated: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
