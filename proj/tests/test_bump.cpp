// The dyadic bump family: support, exact partition of unity, derivative
// bookkeeping, and the band projector.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kdvlab/bump.hpp"

using namespace kdvlab;

namespace {

const BumpFamily kFamilies[] = {
    BumpFamily::make(BumpProfile::Smoothstep),
    BumpFamily::make(BumpProfile::Mollified),
};

}  // namespace

TEST_CASE("eta0 is even, 1 on [-1,1], 0 outside [-2,2], monotone between") {
    for (const auto& f : kFamilies) {
        CHECK(f.eta0(0.0) == 1.0);
        CHECK(f.eta0(1.0) == 1.0);
        CHECK(f.eta0(-1.0) == 1.0);
        CHECK(f.eta0(2.0) == 0.0);
        CHECK(f.eta0(-2.0) == 0.0);
        CHECK(f.eta0(5.0) == 0.0);
        double prev = 1.0;
        for (double x = 1.0; x <= 2.0001; x += 1e-3) {
            double v = f.eta0(x);
            CHECK(v <= prev + 1e-15);
            CHECK(v == doctest::Approx(f.eta0(-x)).epsilon(1e-15));
            prev = v;
        }
        CHECK(f.eta0(1.5) > 0.0);
        CHECK(f.eta0(1.5) < 1.0);
    }
}

TEST_CASE("eta0 derivatives match difference quotients") {
    for (const auto& f : kFamilies) {
        const double h = 1e-6;
        for (double x : {1.1, 1.37, 1.62, 1.93, -1.25, -1.81}) {
            double fd1 = (f.eta0(x + h) - f.eta0(x - h)) / (2 * h);
            CHECK(f.eta0_d1(x) == doctest::Approx(fd1).epsilon(1e-6));
            double fd2 = (f.eta0(x + h) - 2 * f.eta0(x) + f.eta0(x - h)) / (h * h);
            CHECK(f.eta0_d2(x) == doctest::Approx(fd2).epsilon(2e-4));
        }
        CHECK(f.eta0_d1(0.5) == 0.0);
        CHECK(f.eta0_d1(3.0) == 0.0);
        CHECK(f.sup_d1() > 0.0);
        CHECK(f.sup_d2() > f.sup_d1());
    }
}

TEST_CASE("chi_k support and the plateau value at |x| = 2^k") {
    for (const auto& f : kFamilies) {
        for (int k = 1; k <= 10; ++k) {
            const double p = std::ldexp(1.0, k);
            CHECK(f.chi(k, p) == 1.0);
            CHECK(f.chi(k, -p) == 1.0);
            // support is 2^{k-1} < |x| < 2^{k+1}
            CHECK(f.chi(k, std::ldexp(1.0, k - 1)) == 0.0);
            CHECK(f.chi(k, std::ldexp(1.0, k + 1)) == 0.0);
            CHECK(f.chi(k, 0.75 * p) > 0.0);
        }
        // chi_0 is eta0 itself
        CHECK(f.chi(0, 0.5) == 1.0);
        CHECK(f.chi(0, 3.0) == 0.0);
    }
}

TEST_CASE("the family partitions unity exactly inside 2^K") {
    for (const auto& f : kFamilies) {
        const int K = 12;
        for (int i = 0; i <= 4000; ++i) {
            double x = -4096.0 + 2.048 * i;
            CHECK(f.partition_defect(x, K) <= 1e-14);
        }
        // and telescopes to eta0(x / 2^K) outside
        double x = 1.5 * std::ldexp(1.0, K);
        double sum = 0.0;
        for (int k = 0; k <= K; ++k) sum += f.chi(k, x);
        CHECK(sum == doctest::Approx(f.eta0(x / std::ldexp(1.0, K))).epsilon(1e-14));
        CHECK(f.partition_defect(x, K) > 0.1);
    }
}

TEST_CASE("psi_k lives on the chi_k ramp annuli") {
    for (const auto& f : kFamilies) {
        for (int k = 2; k <= 8; ++k) {
            const double p = std::ldexp(1.0, k);
            CHECK(f.psi(k, p) == 0.0);          // plateau: chi' = 0
            CHECK(f.psi(k, 0.45 * p) == 0.0);   // below the support
            CHECK(f.psi(k, 2.05 * p) == 0.0);   // above the support
            CHECK(std::abs(f.psi(k, 0.7 * p)) > 0.0);
            CHECK(std::abs(f.psi(k, 1.4 * p)) > 0.0);
            // chi_d1 against a difference quotient on the ramp
            const double x = 1.31 * p, h = 1e-4 * p;
            double fd = (f.chi(k, x + h) - f.chi(k, x - h)) / (2 * h);
            CHECK(f.chi_d1(k, x) == doctest::Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("scaling ties the families together: chi_k(x) = chi_1(x / 2^{k-1})") {
    for (const auto& f : kFamilies)
        for (int k = 2; k <= 9; ++k)
            for (double t : {0.6, 0.93, 1.0, 1.27, 1.8}) {
                double x = t * std::ldexp(1.0, k);
                CHECK(f.chi(k, x) ==
                      doctest::Approx(f.chi(1, x / std::ldexp(1.0, k - 1))).epsilon(1e-14));
            }
}

TEST_CASE("projector multiplies coefficients by chi_k(n)") {
    const auto& f = kFamilies[0];
    Rng rng(0xB0);
    SpectralField u = random_hs_field(40, 1.0, 0.8, rng);
    SpectralField pu = f.project(u, 4);
    for (int n = -40; n <= 40; ++n) {
        cplx want = u.at(n) * f.chi(4, double(n));
        CHECK(std::abs(pu.at(n) - want) <= 1e-15);
    }
    // bands tile the modes: sum_k P_k u recovers u for |n| <= 2^K
    SpectralField acc(40);
    for (int k = 0; k <= 6; ++k) acc += f.project(u, k);
    CHECK(SpectralField::max_abs_diff(acc, u) <= 1e-14);
}
