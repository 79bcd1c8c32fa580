// Windowed modulation spectra: exact discrete Parseval, the strict window
// preconditions, and the dyadic weight scaling on synthetic atoms.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kdvlab/spacetime.hpp"

using namespace kdvlab;

namespace {

const BumpFamily kBump = BumpFamily::make(BumpProfile::Smoothstep);

// single complex mode n0 riding the free flow with an extra modulation zeta0:
// u(t, n0) = c e^{i (mu(n0) + zeta0) t}; the phase-removed field is a pure
// e^{i zeta0 t} tone, so the windowed spectrum is the window transform
// centered at zeta0.
Trajectory atom(int N, int n0, double zeta0, double dt, double t_end, cplx c,
                const EquationParams& p) {
    Trajectory traj;
    traj.grid = TorusGrid(N);
    traj.t0 = 0.0;
    traj.dt = dt;
    const long steps = std::lround(t_end / dt);
    traj.states.reserve(std::size_t(steps) + 1);
    for (long l = 0; l <= steps; ++l) {
        SpectralField u(N);
        double t = dt * double(l);
        u.at(n0) = c * std::exp(cplx(0.0, (p.mu(n0) + zeta0) * t));
        traj.states.push_back(std::move(u));
    }
    return traj;
}

}  // namespace

TEST_CASE("window preconditions are enforced, not papered over") {
    auto p = EquationParams::integrable();
    const int k = 2;
    const double tau = std::ldexp(1.0, -2 * k);
    // coarse sampling: dt just above tau/32
    Trajectory coarse = atom(8, 4, 0.0, tau / 16.0, 1.0, cplx(1, 0), p);
    CHECK_THROWS_AS(windowed_spectrum(coarse, p, kBump, k, 0.5), config_error);
    // window sticking out of the trajectory
    Trajectory fine = atom(8, 4, 0.0, tau / 32.0, 1.0, cplx(1, 0), p);
    CHECK_THROWS_AS(windowed_spectrum(fine, p, kBump, k, 0.05), config_error);
    CHECK_NOTHROW(windowed_spectrum(fine, p, kBump, k, 0.5));
}

TEST_CASE("discrete Parseval holds to rounding") {
    auto p = EquationParams::integrable();
    const double dt = 1.0 / 1024.0;
    Trajectory traj = atom(8, 4, 37.0, dt, 0.5, cplx(0.3, 0.4), p);
    auto spec = windowed_spectrum(traj, p, kBump, 2, 0.25);
    CHECK(spec.parseval_defect() <= 1e-10);
    CHECK(spec.time_mass > 0.0);
    REQUIRE(spec.modes.size() == spec.data.size());
    // grid bookkeeping: zeta axis is uniform and symmetric
    REQUIRE(spec.zeta.size() >= 3);
    double dz = spec.zeta[1] - spec.zeta[0];
    CHECK(dz == doctest::Approx(spec.dzeta).epsilon(1e-12));
    CHECK(spec.zeta.front() == doctest::Approx(-spec.zeta.back()).epsilon(1e-9));
}

TEST_CASE("an atom at the band-j plateau carries weight 2^{j/2}") {
    auto p = EquationParams::integrable();
    const int k = 2, n0 = 4;
    const double dt = 1.0 / 1024.0;
    Trajectory t8 = atom(8, n0, 256.0, dt, 0.5, cplx(1, 0), p);   // zeta0 = 2^8
    Trajectory t10 = atom(8, n0, 1024.0, dt, 0.5, cplx(1, 0), p); // zeta0 = 2^10
    auto s8 = windowed_spectrum(t8, p, kBump, k, 0.25);
    auto s10 = windowed_spectrum(t10, p, kBump, k, 0.25);
    double x8 = xk_norm(s8, kBump);
    double x10 = xk_norm(s10, kBump);
    double l2 = std::sqrt(kTwoPi * s8.time_mass);
    CHECK(x8 / (std::ldexp(1.0, 4) * l2) > 0.6);
    CHECK(x8 / (std::ldexp(1.0, 4) * l2) < 2.0);
    // moving the atom two dyadic scales up doubles the weighted norm
    CHECK(x10 / x8 > 1.6);
    CHECK(x10 / x8 < 2.5);
}

TEST_CASE("a zero-modulation atom sits on the window floor 2^k") {
    // a window of duration 2^{-2k} spreads even a constant tone over
    // |zeta| ~ 2^{2k}; with the 2^{j/2} weights that is the floor
    // X_k ~ 2^k ||F||, and nothing sits above j ~ 2k by more than the tails
    auto p = EquationParams::integrable();
    const int k = 2;
    const double dt = 1.0 / 1024.0;
    Trajectory traj = atom(8, 4, 0.0, dt, 0.5, cplx(1, 0), p);
    auto spec = windowed_spectrum(traj, p, kBump, k, 0.25);
    double full = xk_norm(spec, kBump);
    double l2 = std::sqrt(kTwoPi * spec.time_mass);
    CHECK(full / (std::ldexp(1.0, k) * l2) > 0.7);
    CHECK(full / (std::ldexp(1.0, k) * l2) < 2.0);
    double low = xk_norm(spec, kBump, 2 * k + 2);
    CHECK(low / full > 0.85);
}

TEST_CASE("mode weights act linearly on the spectrum") {
    auto p = EquationParams::integrable();
    const double dt = 1.0 / 1024.0;
    Trajectory traj = atom(8, 4, 100.0, dt, 0.5, cplx(1, 0), p);
    auto plain = windowed_spectrum(traj, p, kBump, 2, 0.25);
    std::vector<double> w(plain.modes.size(), 0.5);
    auto half = windowed_spectrum(traj, p, kBump, 2, 0.25, &w);
    CHECK(xk_norm(half, kBump) == doctest::Approx(0.5 * xk_norm(plain, kBump)).epsilon(1e-12));
    std::vector<double> bad(plain.modes.size() + 1, 1.0);
    CHECK_THROWS_AS(windowed_spectrum(traj, p, kBump, 2, 0.25, &bad), config_error);
}

TEST_CASE("band sup norms see the atom wherever the window sits") {
    auto p = EquationParams::integrable();
    const double dt = 1.0 / 1024.0;
    Trajectory traj = atom(8, 4, 64.0, dt, 0.5, cplx(1, 0), p);
    BandReport rep;
    double fk = fk_norm_upper(traj, p, kBump, 2, &rep);
    CHECK(fk > 0.0);
    CHECK(rep.k == 2);
    CHECK(rep.windows > 1);
    CHECK(rep.value == doctest::Approx(fk).epsilon(1e-12));
    CHECK(rep.t_at_max >= 0.0);
    CHECK(rep.t_at_max <= 0.5);
    // the inverse modulation weight tames the high-j content
    double nk = nk_norm_upper(traj, p, kBump, 2);
    CHECK(nk > 0.0);
    CHECK(nk < fk);
}

TEST_CASE("assembled energy norm matches the band decomposition by hand") {
    const double s = 0.7;
    Rng rng(0xE5);
    Trajectory traj;
    traj.grid = TorusGrid(24);
    traj.t0 = 0.0;
    traj.dt = 1e-3;
    traj.states.push_back(random_hs_field(24, 1.0, 0.5, rng));
    traj.states.push_back(random_hs_field(24, 1.0, 0.5, rng));
    double es = es_norm2(traj, kBump, s);
    double want = kBump.project(traj.states.front(), 0).l2norm2();
    for (int k = 1; k <= 6; ++k) {
        double sup = 0.0;
        for (const auto& st : traj.states) sup = std::max(sup, kBump.project(st, k).l2norm2());
        want += std::pow(2.0, 2.0 * s * k) * sup;
    }
    CHECK(es == doctest::Approx(want).epsilon(1e-12));
}
