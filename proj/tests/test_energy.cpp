// Band-localized modified energies: structural vanishing on sparse data,
// realness of the correction sums, the resonant-slice cancellation, the
// commutator symbol scan, and comparability with the plain energy norm.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kdvlab/energy.hpp"

using namespace kdvlab;

namespace {

const BumpFamily kBump = BumpFamily::make(BumpProfile::Smoothstep);

}  // namespace

TEST_CASE("the k = 0 block carries no correction and is rejected") {
    SpectralField u = cosine_field(8, 1, 0.5);
    CHECK_THROWS_AS(localized_energy(u, 0, kBump), config_error);
    CHECK_NOTHROW(localized_energy(u, 3, kBump));
}

TEST_CASE("two-mode data kills both corrections structurally") {
    // u supported on {+-n0}: the correction sums need n1 + n2 + n = 0 with
    // all three frequencies in the support, impossible for n0 +- n0 +- n0
    SpectralField u = cosine_field(64, 32, 1e-2);
    EnergyBreakdown e = localized_energy(u, 5, kBump);
    CHECK(e.corr_psi == 0.0);
    CHECK(e.corr_chi == 0.0);
    CHECK(e.total == e.quadratic);
    CHECK(e.quadratic ==
          doctest::Approx(kBump.project(u, 5).l2norm2()).epsilon(1e-14));
    CHECK(e.imag_defect == 0.0);
}

TEST_CASE("corrections are real for hermitian data") {
    Rng rng(0xE0);
    for (int t = 0; t < 6; ++t) {
        SpectralField u = random_hs_field(48, 1.0, 0.6, rng);
        for (int k : {4, 5}) {
            EnergyBreakdown e = localized_energy(u, k, kBump);
            CHECK(e.imag_defect <= 1e-13);
            CHECK(e.total ==
                  doctest::Approx(e.quadratic + e.corr_psi + e.corr_chi).epsilon(1e-13));
        }
    }
}

TEST_CASE("corrections scale cubically, the quadratic part quadratically") {
    Rng rng(0xE1);
    SpectralField u = random_hs_field(48, 1.0, 0.5, rng);
    SpectralField u2 = 2.0 * u;
    EnergyBreakdown a = localized_energy(u, 4, kBump);
    EnergyBreakdown b = localized_energy(u2, 4, kBump);
    CHECK(b.quadratic == doctest::Approx(4.0 * a.quadratic).epsilon(1e-12));
    CHECK(b.corr_psi == doctest::Approx(8.0 * a.corr_psi).epsilon(1e-12));
    CHECK(b.corr_chi == doctest::Approx(8.0 * a.corr_chi).epsilon(1e-12));
}

TEST_CASE("correction weights enter linearly") {
    Rng rng(0xE2);
    SpectralField u = random_hs_field(48, 1.0, 0.5, rng);
    EnergyBreakdown base = localized_energy(u, 4, kBump, -4.0, 6.0);
    EnergyBreakdown doubled = localized_energy(u, 4, kBump, -8.0, 12.0);
    CHECK(doubled.corr_psi == doctest::Approx(2.0 * base.corr_psi).epsilon(1e-12));
    CHECK(doubled.corr_chi == doctest::Approx(2.0 * base.corr_chi).epsilon(1e-12));
    CHECK(doubled.quadratic == doctest::Approx(base.quadratic).epsilon(1e-15));
}

TEST_CASE("the cubic resonant slice cancels to rounding") {
    Rng rng(0xE3);
    for (int t = 0; t < 5; ++t) {
        SpectralField u = random_hs_field(64, 1.0, 0.5, rng);
        for (int k : {4, 5}) CHECK(resonant_slice_imag_defect(u, k, kBump) <= 1e-12);
    }
    // a non-hermitian perturbation breaks the cancellation
    SpectralField v = random_hs_field(64, 1.0, 0.5, rng);
    v.at(17) += cplx(0.3, 0.4);
    CHECK(resonant_slice_imag_defect(v, 4, kBump) > 1e-8);
}

TEST_CASE("assembled energy dominates its quadratic skeleton at small data") {
    Rng rng(0xE4);
    Trajectory traj;
    traj.grid = TorusGrid(32);
    traj.t0 = 0.0;
    traj.dt = 1e-3;
    traj.states.push_back(random_hs_field(32, 1.0, 1e-2, rng));
    traj.states.push_back(traj.states.front());
    double mod = assembled_energy(traj, kBump, 1.0);
    // the corrections are cubic in the (small) data, so the modified and
    // plain assemblies must be within a whisker of each other
    double plain = 0.0;
    {
        const SpectralField& u = traj.states.front();
        plain += kBump.project(u, 0).l2norm2();
        for (int k = 1; k <= 6; ++k)
            plain += std::pow(4.0, double(k)) * kBump.project(u, k).l2norm2();
    }
    CHECK(mod == doctest::Approx(plain).epsilon(1e-2));
    CHECK(mod > 0.0);
}

TEST_CASE("comparability holds on a short evolution ladder") {
    SolverConfig cfg;
    cfg.dt = 1e-4;
    cfg.t_end = 1e-3;
    auto rows = comparability_check(TorusGrid(64), 1.0, 1e-2, 6, cfg, kBump, 0xE5);
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) {
        CHECK(r.pass);
        CHECK(r.ratio >= 0.5);
        CHECK(r.ratio <= 1.5);
        CHECK(r.energy_norm2 > 0.0);
    }
}

TEST_CASE("commutator symbols shrink like the band gap demands") {
    auto scans = commutator_bound_scan(kBump, {6, 8, 10});
    REQUIRE(scans.size() == 3);
    for (const auto& s : scans) {
        CHECK(s.max_sym1 > 0.0);
        CHECK(s.max_sym1 < 10.0 * kBump.sup_d2());
        CHECK(s.max_sym2 > 0.0);
        CHECK(s.max_sym2 < 10.0 * kBump.sup_d1());
    }
    // the normalized symbols stabilize once 2^k dwarfs |n1|
    CHECK(std::abs(scans[2].max_sym1 - scans[1].max_sym1) <= 0.1 * scans[1].max_sym1);
    CHECK(std::abs(scans[2].max_sym2 - scans[1].max_sym2) <= 0.1 * scans[1].max_sym2);
    CHECK_THROWS_AS(commutator_bound_scan(kBump, {1}), config_error);
}

TEST_CASE("energy ledger csv shape") {
    Rng rng(0xE6);
    Trajectory traj;
    traj.grid = TorusGrid(32);
    traj.t0 = 0.0;
    traj.dt = 1e-3;
    for (int l = 0; l < 5; ++l) traj.states.push_back(random_hs_field(32, 1.0, 0.3, rng));
    std::string csv = energy_ledger_csv(traj, kBump, {3, 4}, 2);
    std::size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + 2 * 3);  // header + 2 bands x samples {0, 2, 4}
    CHECK(csv.find("corr_psi") != std::string::npos);
}
