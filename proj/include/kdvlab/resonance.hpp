// kdvlab: resonance functions for the quintic dispersion relation and the
// index sets behind the quadratic/cubic interaction sums. All identities are
// kept in exact integer arithmetic (__int128) behind a range guard.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kdvlab/common.hpp"

namespace kdvlab {

// |n_i| beyond this would risk overflowing the factored __int128 products.
inline constexpr long long kResonanceRangeGuard = 3'000'000;

// H2(n1, n2) = (n1+n2)^5 - n1^5 - n2^5. Throws config_error outside the guard.
// Internally asserts the factored form
//   (5/2) n1 n2 (n1+n2) (n1^2 + n2^2 + (n1+n2)^2)
// against the power sum on every call.
i128 resonance_h2(long long n1, long long n2);

// H3(n1, n2, n3) = (n1+n2+n3)^5 - n1^5 - n2^5 - n3^5 as a power sum.
// With literal_factored = false also asserts the factorization
//   (5/2) (n1+n2) (n1+n3) (n2+n3) (n1^2+n2^2+n3^2+(n1+n2+n3)^2).
// With literal_factored = true, instead RETURNS the product with the repeated
// (n1+n2) factor, i.e. (5/2)(n1+n2)(n1+n2)(n2+n3)(...), without asserting; it
// exists so the mismatch with the power sum can be exhibited. The division by
// 2 is avoided by comparing 2*powersum against 5*product.
i128 resonance_h3(long long n1, long long n2, long long n3, bool literal_factored = false);

// First triple (lexicographic scan over 1 <= n1 <= n2 <= n3 <= bound) where
// the literal factored form disagrees with the power sum; returns {0,0,0} if
// none found below bound.
struct TripleMismatch {
    long long n1 = 0, n2 = 0, n3 = 0;
    i128 powersum = 0;
    i128 literal = 0;
    bool found = false;
};
TripleMismatch first_literal_h3_mismatch(long long bound);

// G(n1, n2) = mu(n1) + mu(n2) - mu(n1+n2) for mu(n) = n^5 + c1 n^3 + c2 n;
// the c2 part cancels on n1 + n2 = n. Exact double for desk-scale bands.
double resonance_g(long long n1, long long n2, double c1);

// Quadratic index set: pairs (n1, n2), n1 + n2 = n, n1 n2 (n1+n2) != 0,
// |n1|, |n2| <= band_N.
std::vector<std::pair<long long, long long>> enumerate_n2(long long n, long long band_N);

// Cubic index set: triples with n1+n2+n3 = n, all |n_i| <= band_N, and
// (n1+n2)(n1+n3)(n2+n3) != 0 (the nonresonant cubic set).
struct Triple {
    long long n1, n2, n3;
};
std::vector<Triple> enumerate_n3(long long n, long long band_N);

// Lower-bound check |G| >= |n1 n2 (n1+n2)| * (n1^2 + n2^2 + (n1+n2)^2) over
// an exhaustive range (valid when |c1| <= 1; returns worst ratio found).
struct GBoundReport {
    double worst_ratio = 0.0;  // min |G| / bound over the range
    long long worst_n1 = 0, worst_n2 = 0;
    bool pass = false;
};
GBoundReport g_lower_bound_scan(long long bound, double c1);

// CSV dump of H2 values over a box, one row per pair (used by the CLI).
std::string resonance_csv(long long bound);

}  // namespace kdvlab
