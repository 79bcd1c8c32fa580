// Transform-layer oracles: normalization against hand integrals, Parseval,
// round trips, and the exact-vs-padded product cross-check.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "kdvlab/transform.hpp"

using namespace kdvlab;

TEST_CASE("cos x transforms to sqrt(pi/2) at n = +-1") {
    TorusGrid g(8);
    std::vector<double> samples(std::size_t(g.M), 0.0);
    for (int m = 0; m < g.M; ++m) samples[std::size_t(m)] = std::cos(g.x(m));
    SpectralField f = to_spectral(samples, g.N);
    const double a = std::sqrt(kPi / 2.0);  // (1/sqrt(2pi)) * pi
    CHECK(std::abs(f.at(1) - cplx(a, 0.0)) < 1e-13);
    CHECK(std::abs(f.at(-1) - cplx(a, 0.0)) < 1e-13);
    for (int n = -g.N; n <= g.N; ++n) {
        if (n == 1 || n == -1) continue;
        CHECK(std::abs(f.at(n)) < 1e-13);
    }
}

TEST_CASE("constant field transforms to sqrt(2pi) at n = 0") {
    TorusGrid g(4);
    std::vector<double> samples(std::size_t(g.M), 1.0);
    SpectralField f = to_spectral(samples, g.N);
    CHECK(std::abs(f.at(0) - cplx(kSqrt2Pi, 0.0)) < 1e-13);
}

TEST_CASE("round trip and Parseval on a random real field") {
    Rng rng(21);
    SpectralField f = random_hs_field(16, 1.0, 2.0, rng);
    TorusGrid g(16, 64);
    auto samples = to_physical(f, g);
    SpectralField back = to_spectral(samples, g.N);
    CHECK(SpectralField::max_abs_diff(f, back) < 1e-13);
    // ||u||_{L^2}^2 == sum |u(n)|^2 under this normalization
    CHECK(physical_l2norm2(samples) == doctest::Approx(f.l2norm2()).epsilon(1e-12));
}

TEST_CASE("hermitian validation") {
    std::vector<cplx> good = {cplx(1.0, -2.0), cplx(0.5, 0.0), cplx(1.0, 2.0)};
    SpectralField f = SpectralField::real_field(1, good);
    CHECK(f.is_hermitian());
    std::vector<cplx> bad = {cplx(1.0, 2.0), cplx(0.5, 0.0), cplx(1.0, 2.0)};
    CHECK_THROWS_AS(SpectralField::real_field(1, bad), invariant_error);
    auto samples = to_physical_real(f, TorusGrid(1));
    CHECK(samples.size() == 3);
}

TEST_CASE("convolve_exact on a hand-computed two-mode example") {
    SpectralField f(1);
    f.at(-1) = cplx(0.0, -1.0);
    f.at(0) = cplx(2.0, 0.0);
    f.at(1) = cplx(0.0, 1.0);
    SpectralField c = convolve_exact(f, f, 2);
    // (f*f)(0) = 2 f(-1)f(1) + f(0)^2 = 2*1 + 4
    CHECK(std::abs(c.at(0) - cplx(6.0, 0.0)) < 1e-14);
    // (f*f)(1) = 2 f(0)f(1) = 4i
    CHECK(std::abs(c.at(1) - cplx(0.0, 4.0)) < 1e-14);
    // (f*f)(2) = f(1)^2 = -1
    CHECK(std::abs(c.at(2) - cplx(-1.0, 0.0)) < 1e-14);
}

TEST_CASE("product_padded equals convolve_exact, quadratic and cubic") {
    Rng rng(22);
    const int N = 16;
    SpectralField f(N), g(N), h(N);
    for (int n = -N; n <= N; ++n) {
        f.at(n) = cplx(rng.normal(), rng.normal());
        g.at(n) = cplx(rng.normal(), rng.normal());
        h.at(n) = cplx(rng.normal(), rng.normal());
    }
    SpectralField q_fft = product_padded({&f, &g}, N);
    SpectralField q_dir = convolve_exact(f, g, N);
    CHECK(SpectralField::max_abs_diff(q_fft, q_dir) < 1e-11);

    SpectralField c_fft = product_padded({&f, &g, &h}, N);
    SpectralField c_dir = convolve_exact3(f, g, h, N);
    CHECK(SpectralField::max_abs_diff(c_fft, c_dir) < 1e-10);
}

TEST_CASE("undersized padding is refused") {
    SpectralField f(8), g(8);
    f.at(3) = 1.0;
    g.at(5) = 1.0;
    CHECK_THROWS_AS(product_padded({&f, &g}, 8, 16), config_error);
    // the minimum alias-free size is accepted
    SpectralField ok = product_padded({&f, &g}, 8, 25);
    CHECK(std::abs(ok.at(8) - cplx(1.0, 0.0)) < 1e-14);
}

TEST_CASE("next_fast_size returns 2^a 3^b 5^c") {
    CHECK(next_fast_size(1) == 1);
    CHECK(next_fast_size(97) == 100);
    CHECK(next_fast_size(129) == 135);
    CHECK(next_fast_size(257) == 270);
}

TEST_CASE("random_hs_field respects the radius contract") {
    Rng rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        SpectralField f = random_hs_field(32, 2.0, 0.5, rng);
        double r = std::sqrt(f.hs_norm2(2.0));
        CHECK(r <= 0.5 * (1.0 + 1e-12));
        CHECK(r >= 0.05 * 0.5);
        CHECK(f.is_hermitian(1e-12));
    }
}

TEST_CASE("cosine_field matches the transform of sampled cosine") {
    SpectralField f = cosine_field(8, 1, 1.0);
    TorusGrid g(8);
    std::vector<double> samples(std::size_t(g.M), 0.0);
    for (int m = 0; m < g.M; ++m) samples[std::size_t(m)] = std::cos(g.x(m));
    SpectralField ref = to_spectral(samples, g.N);
    CHECK(SpectralField::max_abs_diff(f, ref) < 1e-13);
    CHECK(f.l2norm2() == doctest::Approx(kPi).epsilon(1e-13));  // ||cos||^2 = pi
}
