// The mean/mass gauge transform: modulus preservation, invertibility, the
// constant-mass closed form, and bicontinuity of the flow map through it.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kdvlab/gauge.hpp"

using namespace kdvlab;

namespace {

Trajectory short_run(int N, std::uint64_t seed, double radius) {
    Rng rng(seed);
    SpectralField u0 = random_hs_field(N, 2.0, radius, rng);
    auto p = EquationParams::renormalized_for(u0);
    SolverConfig cfg;
    cfg.dt = 1e-5;
    cfg.t_end = 5e-4;
    return evolve(u0, TorusGrid(N), p, cfg);
}

}  // namespace

TEST_CASE("phase accumulator is the trapezoid of the l2 mass") {
    Trajectory traj = short_run(16, 0x6A, 0.5);
    PhaseAccumulator acc = accumulate_phase(traj);
    REQUIRE(acc.phi.size() == traj.states.size());
    CHECK(acc.phi[0] == 0.0);
    // hand trapezoid on the first two samples
    double m0 = traj.states[0].l2norm2();
    double m1 = traj.states[1].l2norm2();
    CHECK(acc.phi[1] == doctest::Approx(0.5 * traj.dt * (m0 + m1)).epsilon(1e-14));
    // monotone for nonzero data
    for (std::size_t l = 1; l < acc.phi.size(); ++l) CHECK(acc.phi[l] > acc.phi[l - 1]);
}

TEST_CASE("gauge transform preserves every modulus") {
    Trajectory traj = short_run(24, 0x6B, 0.6);
    Trajectory v = apply_nt(traj);
    CHECK(nt_modulus_defect(traj, v) <= 1e-15);
    // and therefore every Sobolev norm at fixed time
    for (std::size_t l = 0; l < traj.states.size(); l += 10)
        CHECK(traj.states[l].hs_norm2(1.5) ==
              doctest::Approx(v.states[l].hs_norm2(1.5)).epsilon(1e-13));
}

TEST_CASE("gauge transform round-trips to the identity") {
    Trajectory traj = short_run(24, 0x6C, 0.4);
    CHECK(nt_roundtrip_defect(traj) <= 1e-12);
}

TEST_CASE("zero coupling makes the transform the identity") {
    Trajectory traj = short_run(12, 0x6D, 0.4);
    Trajectory v = apply_nt(traj, 0.0);
    for (std::size_t l = 0; l < traj.states.size(); ++l)
        CHECK(SpectralField::max_abs_diff(traj.states[l], v.states[l]) == 0.0);
}

TEST_CASE("conserved-mass data reproduces the closed-form phase") {
    // the integrable flow conserves the l2 mass, so Phi(t) = ||u0||^2 t and
    // the transform must equal multiplication by e^{-i c2 n t}
    Trajectory traj = short_run(24, 0x6E, 0.5);
    auto p = EquationParams::renormalized_for(traj.states.front());
    CHECK(nt_constant_mass_phase_defect(traj, p) <= 1e-8);
}

TEST_CASE("the transform is t-dependent: phases drift between samples") {
    Trajectory traj = short_run(16, 0x6F, 0.7);
    Trajectory v = apply_nt(traj);
    // at t = 0 the phase vanishes and NT is the identity
    CHECK(SpectralField::max_abs_diff(traj.states.front(), v.states.front()) == 0.0);
    // later it is not
    CHECK(SpectralField::max_abs_diff(traj.states.back(), v.states.back()) > 1e-8);
}

TEST_CASE("bicontinuity: gauge distances track plain distances") {
    Rng rng(0x60);
    SpectralField u0 = random_hs_field(24, 2.0, 0.5, rng);
    auto p = EquationParams::renormalized_for(u0);
    SolverConfig cfg;
    cfg.dt = 2e-5;
    cfg.t_end = 6e-4;
    auto rows =
        bicontinuity_experiment(u0, TorusGrid(24), p, cfg, {1e-3, 1e-4, 1e-5}, 1.0, 0xB1C0);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.dist_plain > 0.0);
        CHECK(r.dist_nt > 0.0);
        CHECK(r.ratio <= 10.0);
        CHECK(r.ratio >= 0.1);
    }
    // ratios stay within a modest band of each other across the ladder
    double lo = rows[0].ratio, hi = rows[0].ratio;
    for (const auto& r : rows) {
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
    }
    CHECK(hi / lo <= 5.0);
}
