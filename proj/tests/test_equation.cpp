// Right-hand sides: hand-derived cosine oracles for the raw flow, exactness
// of the renormalized split, and the diagonal/cubic bookkeeping.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kdvlab/equation.hpp"

using namespace kdvlab;

namespace {

double rel(const SpectralField& a, const SpectralField& b) {
    double scale = 0.0;
    for (int n = -a.N(); n <= a.N(); ++n) scale = std::max(scale, std::abs(a.at(n)));
    return SpectralField::max_abs_diff(a, b) / std::max(1.0, scale);
}

}  // namespace

TEST_CASE("raw flow on cos x: modes 1 and 2 by hand") {
    // u = cos x has u(+-1) = a = sqrt(pi/2) and nothing else. At n = 1 only
    // the linear term and the cubic self-interaction (three orderings of
    // (1,1,-1)) survive: i a + 10 i * 3 a^3. At n = 2 the cubic dies and the
    // two quadratic terms give 5 i n (v*v) + 10 i n (u*w) = 30 i a^2.
    const double a = std::sqrt(kPi / 2.0);
    SpectralField u = cosine_field(8, 1, 1.0);
    SpectralField r = rhs_raw(u, EquationParams::integrable());

    cplx want1(0.0, a + 30.0 * a * a * a);
    CHECK(std::abs(r.at(1) - want1) <= 1e-12 * std::abs(want1));
    CHECK(std::abs(r.at(-1) - std::conj(want1)) <= 1e-12 * std::abs(want1));

    cplx want2(0.0, 30.0 * a * a);
    CHECK(std::abs(r.at(2) - want2) <= 1e-12 * std::abs(want2));

    // nothing reaches |n| = 4 from a single cosine under a cubic flow; the
    // fft residue there is pure rounding, far below any genuine interaction
    CHECK(std::abs(r.at(4)) <= 1e-12);
    CHECK(std::abs(r.at(0)) <= 1e-12);
}

TEST_CASE("raw flow on cos x: mode 3 by hand") {
    // (u*u*u)(3) = a^3 (one ordering), the quadratic terms need m1 + m2 = 3
    // with m_i = +-1 and vanish: rhs(3) = -(a1/3) i * 3 * a^3 = 30 i a^3.
    const double a = std::sqrt(kPi / 2.0);
    SpectralField u = cosine_field(8, 1, 1.0);
    SpectralField r = rhs_raw(u, EquationParams::integrable());
    cplx want3(0.0, 30.0 * a * a * a);
    CHECK(std::abs(r.at(3) - want3) <= 1e-12 * std::abs(want3));
}

TEST_CASE("raw flow scales like the coefficients") {
    Rng rng(0x7E57);
    SpectralField u = random_hs_field(12, 1.5, 0.8, rng);
    auto p1 = EquationParams::coefficients(-30, 20, 10);
    auto p2 = EquationParams::coefficients(-60, 40, 20);
    SpectralField r1 = rhs_raw(u, p1);
    SpectralField r2 = rhs_raw(u, p2);
    SpectralField lin = u.apply_multiplier([](int n) {
        double nn = n;
        return cplx(0.0, nn * nn * nn * nn * nn);
    });
    // r2 - lin == 2 (r1 - lin)
    SpectralField lhs = r2 - lin;
    SpectralField rhs = 2.0 * (r1 - lin);
    CHECK(rel(lhs, rhs) <= 1e-13);
}

TEST_CASE("renormalized split reproduces the raw flow exactly") {
    Rng rng(0x51D);
    for (int trial = 0; trial < 8; ++trial) {
        SpectralField u = random_hs_field(16, 2.0, 0.7, rng);
        auto p = EquationParams::renormalized_for(u);
        RhsSplit s = rhs_renormalized(u, p);
        SpectralField raw = rhs_raw(u, EquationParams::integrable());
        CHECK(rel(raw, s.total()) <= 1e-12);
    }
}

TEST_CASE("split identity breaks when the constants come from other data") {
    Rng rng(0xA11A);
    SpectralField u = random_hs_field(16, 2.0, 0.7, rng);
    SpectralField v = random_hs_field(16, 2.0, 0.7, rng);
    auto p_wrong = EquationParams::renormalized_for(v);
    RhsSplit s = rhs_renormalized(u, p_wrong);
    SpectralField raw = rhs_raw(u, EquationParams::integrable());
    CHECK(rel(raw, s.total()) > 1e-8);
}

TEST_CASE("N1 is the cubic diagonal a1 i n |u(n)|^2 u(n)") {
    Rng rng(0xD1A6);
    SpectralField u = random_hs_field(10, 1.0, 0.6, rng);
    auto p = EquationParams::renormalized_for(u);
    RhsSplit s = rhs_renormalized(u, p);
    for (int n = -10; n <= 10; ++n) {
        cplx want = p.a1 * cplx(0.0, double(n)) * std::norm(u.at(n)) * u.at(n);
        CHECK(std::abs(s.n1.at(n) - want) <= 1e-12 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("renormalization constants track the data") {
    Rng rng(0xC0);
    SpectralField u = random_hs_field(12, 1.0, 0.5, rng);
    auto p = EquationParams::renormalized_for(u);
    CHECK(p.renormalized);
    CHECK(p.c1 == doctest::Approx(10.0 * u.at(0).real()).epsilon(1e-14));
    CHECK(p.c2 == doctest::Approx(30.0 * u.l2norm2()).epsilon(1e-13));
    CHECK(p.mu(2) == doctest::Approx(32.0 + 8.0 * p.c1 + 2.0 * p.c2).epsilon(1e-14));
}

TEST_CASE("quadratic interactions vanish on zero-mean single-mode data") {
    // N3 and N4 feed on pair sums; u supported on {+-5} only reaches
    // n in {0, +-10} through them
    SpectralField u = cosine_field(16, 5, 0.3);
    auto p = EquationParams::renormalized_for(u);
    RhsSplit s = rhs_renormalized(u, p);
    for (int n = -16; n <= 16; ++n) {
        if (n == 0 || n == 10 || n == -10) continue;
        CHECK(std::abs(s.n3.at(n)) <= 1e-15);
        CHECK(std::abs(s.n4.at(n)) <= 1e-15);
    }
}

TEST_CASE("nonlinear part is the split minus its linear symbol") {
    Rng rng(0xF00D);
    SpectralField u = random_hs_field(14, 1.5, 0.4, rng);
    auto p = EquationParams::renormalized_for(u);
    RhsSplit s = rhs_renormalized(u, p);
    SpectralField nl = rhs_nonlinear(u, p, true);
    SpectralField want = s.n1 + s.n2 + s.n3 + s.n4;
    CHECK(rel(want, nl) <= 1e-12);

    SpectralField nl_raw = rhs_nonlinear(u, EquationParams::integrable(), false);
    SpectralField lin = u.apply_multiplier([](int n) {
        double nn = n;
        return cplx(0.0, nn * nn * nn * nn * nn);
    });
    SpectralField want_raw = rhs_raw(u, EquationParams::integrable()) - lin;
    CHECK(rel(want_raw, nl_raw) <= 1e-12);
}

TEST_CASE("padded and heavily padded products agree") {
    Rng rng(0xA1A5);
    SpectralField u = random_hs_field(12, 2.0, 0.5, rng);
    auto p = EquationParams::renormalized_for(u);
    SpectralField a = rhs_nonlinear(u, p, true);
    SpectralField b = rhs_nonlinear(u, p, true, 512);  // way past 4N+2
    CHECK(rel(a, b) <= 1e-12);
}

TEST_CASE("hermitian data keeps a hermitian right-hand side") {
    Rng rng(0x11E5);
    SpectralField u = random_hs_field(12, 1.0, 0.9, rng);
    REQUIRE(u.is_hermitian(1e-14));
    SpectralField r = rhs_raw(u, EquationParams::integrable());
    // d/dt of a real field is real: hermitian coefficients
    CHECK(r.hermitian_defect() <= 1e-12);
}
