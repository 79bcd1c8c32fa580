#include "kdvlab/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "kdvlab/blocks.hpp"
#include "kdvlab/bump.hpp"
#include "kdvlab/common.hpp"
#include "kdvlab/counterexample.hpp"
#include "kdvlab/energy.hpp"
#include "kdvlab/equation.hpp"
#include "kdvlab/gauge.hpp"
#include "kdvlab/grid.hpp"
#include "kdvlab/integrator.hpp"
#include "kdvlab/resonance.hpp"
#include "kdvlab/spacetime.hpp"

namespace kdvlab {

namespace {

// ---- pinned tolerances; changing any of these changes what "pass" means ----
constexpr long long kC1Range = 200;          // exhaustive |n_i| range
constexpr double kC2SplitTol = 1e-12;        // raw vs renormalized split
constexpr double kC3MeanDriftTol = 1e-13;
constexpr double kC3EnergyDriftTol = 1e-8;
constexpr double kC3H3DriftTol = 1e-6;
constexpr double kC3H3RatioMin = 1e3;        // perturbed / integrable H3 drift
constexpr double kC4RatioLo = 12.0;          // dt-halving, nominal 16
constexpr double kC4RatioHi = 20.0;
constexpr double kC5ModulusTol = 1e-15;
constexpr double kC5RoundTripTol = 1e-12;
constexpr double kC5PhaseTol = 1e-8;
constexpr double kC6PartitionTol = 1e-14;
constexpr double kC6CommutatorVar = 0.10;    // k = 8 -> 10 stabilization
constexpr double kC7Cap = 10.0;              // |J| <= cap * bound
constexpr int kC7Trials = 101;               // trial 0 structured + 100 random
constexpr double kC8Delta = 1e-2;
constexpr int kC8Runs = 20;
constexpr double kC8SliceTol = 1e-12;
constexpr double kC10S = 0.5;
// Embedding constant calibrated once on the shipped corpus (pinned seed below,
// three trajectories) and frozen; the criterion is a +-20% regression.
constexpr std::uint64_t kC10CorpusSeed = 0x5eed0d15ULL;
constexpr double kC10FrozenC = 0.04155;
constexpr double kC10Band = 0.20;
constexpr double kC11Factor = 5.0;

std::string fmt(const char* f, ...) {
    char buf[768];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

double sup_abs(const SpectralField& f) {
    double m = 0.0;
    for (int n = -f.N(); n <= f.N(); ++n) m = std::max(m, std::abs(f.at(n)));
    return m;
}

BumpFamily default_bump() { return BumpFamily::make(BumpProfile::Smoothstep); }

template <class F>
CriterionResult guarded(int id, const char* name, F&& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    try {
        r.pass = body(r.detail);
    } catch (const std::exception& e) {
        r.pass = false;
        if (!r.detail.empty()) r.detail += "; ";
        r.detail += std::string("exception: ") + e.what();
    }
    return r;
}

// 1. exact resonance identities + recorded failure of the literal cubic form
bool c1_resonance(std::string& detail, std::uint64_t) {
    long long pairs = 0;
    for (long long n1 = -kC1Range; n1 <= kC1Range; ++n1)
        for (long long n2 = -kC1Range; n2 <= kC1Range; ++n2) {
            resonance_h2(n1, n2);  // asserts factored == power sum internally
            ++pairs;
        }
    long long triples = 0;
    for (long long n1 = -kC1Range; n1 <= kC1Range; ++n1)
        for (long long n2 = n1; n2 <= kC1Range; ++n2)
            for (long long n3 = n2; n3 <= kC1Range; ++n3) {
                resonance_h3(n1, n2, n3);  // both sides symmetric; sorted scan
                ++triples;
            }
    TripleMismatch mm = first_literal_h3_mismatch(20);
    if (!mm.found) {
        detail = "literal cubic factorization unexpectedly matched up to 20";
        return false;
    }
    detail = fmt("H2 exact on %lld pairs, H3 exact on %lld sorted triples; "
                 "literal form first fails at (%lld,%lld,%lld): %lld vs %lld",
                 pairs, triples, mm.n1, mm.n2, mm.n3, (long long)mm.powersum,
                 (long long)mm.literal);
    return true;
}

// 2. raw rhs == linear(mu) + N1 + N2 + N3 + N4 on random fields
bool c2_split(std::string& detail, std::uint64_t seed) {
    const int N = 32;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        Rng rng(Rng::derive(seed, 0xC200u + std::uint64_t(i)));
        SpectralField u = random_hs_field(N, 2.0, 0.75, rng);
        EquationParams p = EquationParams::renormalized_for(u);
        SpectralField raw = rhs_raw(u, p);
        RhsSplit split = rhs_renormalized(u, p);
        const double scale = std::max(1.0, sup_abs(raw));
        worst = std::max(worst, SpectralField::max_abs_diff(raw, split.total()) / scale);
    }
    detail = fmt("max relative defect %.3e over 50 fields (tol %.0e)", worst, kC2SplitTol);
    return worst <= kC2SplitTol;
}

struct DriftTriple {
    double mass = 0.0, energy = 0.0, h3 = 0.0;
};

DriftTriple max_drifts(const std::vector<ConservationRow>& rows) {
    DriftTriple d;
    for (const auto& r : rows) {
        d.mass = std::max(d.mass, r.drift_mass);
        d.energy = std::max(d.energy, r.drift_energy);
        d.h3 = std::max(d.h3, r.drift_h3);
    }
    return d;
}

// 3. conserved quantities at pinned desk scale + perturbed-coefficient contrast
bool c3_conservation(std::string& detail, std::uint64_t seed) {
    TorusGrid grid(128);
    Rng rng(Rng::derive(seed, 0xC3));
    // Smooth corpus: the integrable H3 drift is limited by truncation flux at
    // the mode cutoff, which decays with the spectral tail; s = 5 pushes that
    // floor to ~1e-13 while the detuned-a3 drift stays physical at ~1e-8.
    SpectralField u0 = random_hs_field(grid.N, 5.0, 0.25, rng);
    SolverConfig cfg;
    cfg.dt = 1e-5;
    cfg.t_end = 1e-2;

    EquationParams pi = EquationParams::renormalized_for(u0);
    Trajectory ti = evolve(u0, grid, pi, cfg);
    DriftTriple di = max_drifts(conservation_report(ti, 20));

    EquationParams pp = EquationParams::renormalized_for(u0, -30.0, 20.0, 5.0);
    Trajectory tp = evolve(u0, grid, pp, cfg);
    DriftTriple dp = max_drifts(conservation_report(tp, 20));

    const double ratio = dp.h3 / std::max(di.h3, 1e-300);
    detail = fmt("integrable drifts: mean %.2e, E %.2e, H3 %.2e; perturbed-a3 H3 drift %.2e "
                 "(ratio %.2e)",
                 di.mass, di.energy, di.h3, dp.h3, ratio);
    return di.mass <= kC3MeanDriftTol && di.energy <= kC3EnergyDriftTol &&
           di.h3 <= kC3H3DriftTol && ratio >= kC3H3RatioMin;
}

// 4. fourth-order self-convergence under dt halving
bool c4_order(std::string& detail, std::uint64_t) {
    TorusGrid grid(64);
    SpectralField u0 = cosine_field(grid.N, 1, 1.0);
    EquationParams p = EquationParams::renormalized_for(u0);
    SolverConfig cfg;
    cfg.dt = 1e-5;
    cfg.t_end = 1e-3;
    const double ratio = self_convergence_ratio(u0, grid, p, cfg);
    detail = fmt("err(dt)/err(dt/2) = %.3f (window [%.0f, %.0f])", ratio, kC4RatioLo, kC4RatioHi);
    return ratio >= kC4RatioLo && ratio <= kC4RatioHi;
}

// 5. gauge transform: modulus exact, invertible, constant-mass phase law
bool c5_gauge(std::string& detail, std::uint64_t seed) {
    TorusGrid grid(64);
    Rng rng(Rng::derive(seed, 0xC5));
    SpectralField u0 = random_hs_field(grid.N, 2.0, 0.5, rng);
    EquationParams p = EquationParams::renormalized_for(u0);
    SolverConfig cfg;
    cfg.dt = 1e-5;
    cfg.t_end = 1e-3;
    Trajectory traj = evolve(u0, grid, p, cfg);
    Trajectory nt = apply_nt(traj, p.a1);
    const double dmod = nt_modulus_defect(traj, nt);
    const double dround = nt_roundtrip_defect(traj, p.a1);
    const double dphase = nt_constant_mass_phase_defect(traj, p);
    detail = fmt("modulus %.2e, round trip %.2e, phase vs e^{-i c2 n t} %.2e", dmod, dround,
                 dphase);
    return dmod <= kC5ModulusTol && dround <= kC5RoundTripTol && dphase <= kC5PhaseTol;
}

// 6. partition of unity + commutator symbol stabilization
bool c6_partition(std::string& detail, std::uint64_t) {
    BumpFamily bump = default_bump();
    const int K = 12;
    double worst = 0.0;
    const double span = std::ldexp(1.0, K);
    for (int i = 0; i <= 40000; ++i) {
        const double x = span * (double(i) / 20000.0 - 1.0);
        worst = std::max(worst, bump.partition_defect(x, K));
    }
    std::vector<CommutatorScan> scan = commutator_bound_scan(bump, {6, 8, 10});
    const double v1 = std::abs(scan[2].max_sym1 - scan[1].max_sym1) /
                      std::max(scan[1].max_sym1, 1e-300);
    const double v2 = std::abs(scan[2].max_sym2 - scan[1].max_sym2) /
                      std::max(scan[1].max_sym2, 1e-300);
    detail = fmt("partition defect %.2e on |x|<=2^%d; commutator sym1 max %.4f/%.4f/%.4f "
                 "(k=6/8/10, var %.1f%%), sym2 max %.4f/%.4f/%.4f (var %.1f%%)",
                 worst, K, scan[0].max_sym1, scan[1].max_sym1, scan[2].max_sym1, 100.0 * v1,
                 scan[0].max_sym2, scan[1].max_sym2, scan[2].max_sym2, 100.0 * v2);
    return worst <= kC6PartitionTol && v1 <= kC6CommutatorVar && v2 <= kC6CommutatorVar;
}

// 7. randomized block-estimate ratio caps across all seven cases
bool c7_blocks(std::string& detail, std::uint64_t seed, int threads) {
    EquationParams p = EquationParams::integrable();
    p.c1 = 5.0;  // representative renormalization shift; G = -H2 - 3 c1 n1 n2 (n1+n2)
    std::vector<BlockComboResult> rows =
        block_sweep(p, kC7Trials, kC7Cap, Rng::derive(seed, 0xC7), threads);
    std::set<std::string> cases;
    double worst = 0.0;
    int failed = 0;
    for (const auto& r : rows) {
        cases.insert(block_case_name(r.bc));
        worst = std::max(worst, r.max_ratio);
        if (!r.pass) ++failed;
    }
    detail = fmt("%zu combos, %zu distinct cases, worst ratio %.3f (cap %.0f), %d failing; "
                 "b-cases at their smallest admissible bands",
                 rows.size(), cases.size(), worst, kC7Cap, failed);
    return failed == 0 && cases.size() == 7;
}

// 8. modified energy: exact two-mode reduction, comparability, resonant slice
bool c8_energy(std::string& detail, std::uint64_t seed) {
    BumpFamily bump = default_bump();
    const int N = 64;

    SpectralField two = cosine_field(N, 32, 1e-2);
    EnergyBreakdown br = localized_energy(two, 5, bump);
    const bool exact = (br.corr_psi == 0.0) && (br.corr_chi == 0.0) && (br.total == br.quadratic);
    const double pk = bump.project(two, 5).l2norm2();
    const bool quad_ok = std::abs(br.quadratic - pk) <= 1e-15 * std::max(1.0, pk);

    SolverConfig cfg;
    cfg.dt = 1e-4;
    cfg.t_end = 1e-3;
    std::vector<ComparabilityRow> rows = comparability_check(
        TorusGrid(N), 1.0, kC8Delta, kC8Runs, cfg, bump, Rng::derive(seed, 0xC8));
    double rlo = 1e300, rhi = 0.0;
    int cfail = 0;
    for (const auto& r : rows) {
        rlo = std::min(rlo, r.ratio);
        rhi = std::max(rhi, r.ratio);
        if (!r.pass) ++cfail;
    }

    double slice = 0.0;
    for (int i = 0; i < 5; ++i) {
        Rng rng(Rng::derive(seed, 0xC800u + std::uint64_t(i)));
        SpectralField u = random_hs_field(N, 1.0, 0.5, rng);
        for (int k = 4; k <= 5; ++k)
            slice = std::max(slice, resonant_slice_imag_defect(u, k, bump));
    }

    detail = fmt("two-mode corrections %s; E^s_T/||u||^2 in [%.4f, %.4f] over %d runs "
                 "(%d outside [0.5, 1.5]); resonant-slice imag %.2e",
                 exact && quad_ok ? "vanish exactly" : "NONZERO", rlo, rhi, kC8Runs, cfail,
                 slice);
    return exact && quad_ok && cfail == 0 && slice <= kC8SliceTol;
}

// 9. bilinear-estimate failure: fitted growth exponents and empty threshold gap
bool c9_counterexample(std::string& detail, std::uint64_t) {
    const std::vector<long long> ladder = default_n_ladder();
    bool ok = true;
    std::string parts;
    for (double b : {0.3, 0.5, 1.0}) {
        SlopeReport r = ratio_scan(Branch::High, b, 0.0, ladder);
        ok = ok && r.pass;
        parts += fmt("high b=%.2f: %.3f (expect %.2f); ", b, r.slope, r.expected);
    }
    for (double b : {0.5, 0.75}) {
        SlopeReport r = ratio_scan(Branch::Low, b, 0.0, ladder);
        ok = ok && r.pass;
        parts += fmt("low b=%.2f: %.3f (expect %.2f); ", b, r.slope, r.expected);
    }
    ThresholdReport th = threshold_report(0.0, ladder);
    detail = parts + fmt("thresholds b<=%.4f vs b>=%.4f -> %s", th.t_high, th.t_low,
                         th.empty_intersection ? "empty intersection" : "OVERLAP");
    return ok && th.empty_intersection;
}

// 10. short-time norm controls the Sobolev sup: frozen-constant regression.
// The corpus seed is pinned (not --seed): the frozen constant belongs to this
// exact corpus, and the criterion is a regression against it.
bool c10_embedding(std::string& detail, std::uint64_t) {
    TorusGrid grid(128);
    BumpFamily bump = default_bump();
    SolverConfig cfg;
    cfg.dt = std::ldexp(1.0, -21);  // admissible for every populated band (k <= 8)
    cfg.t_end = std::ldexp(1.0, -8);
    double cmax = 0.0;
    std::string parts;
    for (int i = 0; i < 3; ++i) {
        Rng rng(Rng::derive(kC10CorpusSeed, 0xC10u + std::uint64_t(i)));
        SpectralField u0 = random_hs_field(grid.N, kC10S, 0.10 + 0.05 * double(i), rng);
        EquationParams p = EquationParams::renormalized_for(u0);
        Trajectory traj = evolve(u0, grid, p, cfg);
        const double sup = sup_hs_norm(traj, kC10S);
        const double fs = fs_norm_upper(traj, p, bump, kC10S);
        const double c = sup / fs;
        cmax = std::max(cmax, c);
        parts += fmt("%.5f ", c);
    }
    detail = fmt("corpus constants [ %s], frozen %.5f, band +-%.0f%%", parts.c_str(),
                 kC10FrozenC, 100.0 * kC10Band);
    return cmax <= kC10FrozenC * (1.0 + kC10Band) && cmax >= kC10FrozenC * (1.0 - kC10Band);
}

// 11. two-solution separation scales linearly across the perturbation ladder
bool c11_divergence(std::string& detail, std::uint64_t seed) {
    TorusGrid grid(64);
    Rng rng(Rng::derive(seed, 0xC11));
    SpectralField u0 = random_hs_field(grid.N, 2.0, 0.5, rng);
    EquationParams p = EquationParams::renormalized_for(u0);
    SolverConfig cfg;
    cfg.dt = 1e-5;
    cfg.t_end = 1e-3;
    std::vector<DivergenceRung> rungs = two_solution_divergence(
        u0, grid, p, cfg, {1e-3, 1e-4, 1e-5, 1e-6}, 1.0, Rng::derive(seed, 0xD1F));
    double lo = 1e300, hi = 0.0;
    std::string parts;
    for (const auto& r : rungs) {
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
        parts += fmt("%.3f ", r.ratio);
    }
    const double spread = hi / std::max(lo, 1e-300);
    detail = fmt("sup/initial ratios [ %s] across eps 1e-3..1e-6, spread factor %.2f (cap %.0f)",
                 parts.c_str(), spread, kC11Factor);
    return spread <= kC11Factor && hi < 1e300;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
    const std::uint64_t s = opt.seed;
    std::vector<CriterionResult> out;
    out.push_back(guarded(1, "resonance-identities",
                          [&](std::string& d) { return c1_resonance(d, s); }));
    out.push_back(guarded(2, "renormalization-split",
                          [&](std::string& d) { return c2_split(d, s); }));
    out.push_back(guarded(3, "conservation-laws",
                          [&](std::string& d) { return c3_conservation(d, s); }));
    out.push_back(guarded(4, "solver-order", [&](std::string& d) { return c4_order(d, s); }));
    out.push_back(guarded(5, "gauge-transform", [&](std::string& d) { return c5_gauge(d, s); }));
    out.push_back(guarded(6, "partition-commutator",
                          [&](std::string& d) { return c6_partition(d, s); }));
    out.push_back(guarded(7, "block-estimates",
                          [&](std::string& d) { return c7_blocks(d, s, opt.threads); }));
    out.push_back(guarded(8, "modified-energy", [&](std::string& d) { return c8_energy(d, s); }));
    out.push_back(guarded(9, "bilinear-counterexample",
                          [&](std::string& d) { return c9_counterexample(d, s); }));
    out.push_back(guarded(10, "embedding-constant",
                          [&](std::string& d) { return c10_embedding(d, s); }));
    out.push_back(guarded(11, "divergence-ladder",
                          [&](std::string& d) { return c11_divergence(d, s); }));
    return out;
}

bool all_pass(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

}  // namespace kdvlab
