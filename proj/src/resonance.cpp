#include "kdvlab/resonance.hpp"

#include <cmath>
#include <cstdio>

namespace kdvlab {

namespace {

void guard(long long n) {
    require_config(n >= -kResonanceRangeGuard && n <= kResonanceRangeGuard,
                   "resonance: |n| exceeds the exact-arithmetic range guard");
}

i128 pow5(i128 x) { return x * x * x * x * x; }

std::string i128_to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-v) : (unsigned __int128)v;
    char buf[64];
    int pos = 64;
    while (u > 0) {
        buf[--pos] = char('0' + int(u % 10));
        u /= 10;
    }
    std::string s(buf + pos, buf + 64);
    return neg ? "-" + s : s;
}

}  // namespace

i128 resonance_h2(long long n1, long long n2) {
    guard(n1);
    guard(n2);
    i128 a = n1, b = n2;
    i128 power = pow5(a + b) - pow5(a) - pow5(b);
    i128 sq = a * a + b * b + (a + b) * (a + b);
    i128 prod5 = 5 * (a * b) * (a + b) * sq;
    require_invariant(2 * power == prod5, "resonance_h2: factored form != power sum");
    return power;
}

i128 resonance_h3(long long n1, long long n2, long long n3, bool literal_factored) {
    guard(n1);
    guard(n2);
    guard(n3);
    i128 a = n1, b = n2, c = n3;
    i128 sq = a * a + b * b + c * c + (a + b + c) * (a + b + c);
    if (literal_factored) {
        i128 prod5 = 5 * (a + b) * (a + b) * (b + c) * sq;
        require_invariant(prod5 % 2 == 0, "resonance_h3: literal product is odd");
        return prod5 / 2;
    }
    i128 power = pow5(a + b + c) - pow5(a) - pow5(b) - pow5(c);
    i128 prod5 = 5 * (a + b) * (a + c) * (b + c) * sq;
    require_invariant(2 * power == prod5, "resonance_h3: factored form != power sum");
    return power;
}

TripleMismatch first_literal_h3_mismatch(long long bound) {
    TripleMismatch out;
    for (long long n3 = 1; n3 <= bound; ++n3)
        for (long long n2 = 1; n2 <= n3; ++n2)
            for (long long n1 = 1; n1 <= n2; ++n1) {
                i128 power = resonance_h3(n1, n2, n3);
                i128 literal = resonance_h3(n1, n2, n3, true);
                if (power != literal) {
                    out = {n1, n2, n3, power, literal, true};
                    return out;
                }
            }
    return out;
}

double resonance_g(long long n1, long long n2, double c1) {
    // -(H2 + 3 c1 n1 n2 (n1+n2)); the c2 n part telescopes on n1+n2 = n
    i128 h2 = resonance_h2(n1, n2);
    double cubic = 3.0 * c1 * double(n1) * double(n2) * double(n1 + n2);
    return -(double(h2) + cubic);
}

std::vector<std::pair<long long, long long>> enumerate_n2(long long n, long long band_N) {
    std::vector<std::pair<long long, long long>> out;
    if (n == 0) return out;  // n1 n2 (n1+n2) != 0 kills the whole line
    for (long long n1 = -band_N; n1 <= band_N; ++n1) {
        long long n2 = n - n1;
        if (n1 == 0 || n2 == 0) continue;
        if (n2 < -band_N || n2 > band_N) continue;
        out.emplace_back(n1, n2);
    }
    return out;
}

std::vector<Triple> enumerate_n3(long long n, long long band_N) {
    std::vector<Triple> out;
    for (long long n1 = -band_N; n1 <= band_N; ++n1)
        for (long long n2 = -band_N; n2 <= band_N; ++n2) {
            long long n3 = n - n1 - n2;
            if (n3 < -band_N || n3 > band_N) continue;
            if (n1 + n2 == 0 || n1 + n3 == 0 || n2 + n3 == 0) continue;
            out.push_back({n1, n2, n3});
        }
    return out;
}

GBoundReport g_lower_bound_scan(long long bound, double c1) {
    GBoundReport rep;
    rep.worst_ratio = 1e300;
    for (long long n1 = -bound; n1 <= bound; ++n1)
        for (long long n2 = -bound; n2 <= bound; ++n2) {
            if (n1 == 0 || n2 == 0 || n1 + n2 == 0) continue;
            double g = std::abs(resonance_g(n1, n2, c1));
            double base = std::abs(double(n1) * double(n2) * double(n1 + n2));
            double sq = double(n1) * n1 + double(n2) * n2 + double(n1 + n2) * (n1 + n2);
            double ratio = g / (base * sq);
            if (ratio < rep.worst_ratio) {
                rep.worst_ratio = ratio;
                rep.worst_n1 = n1;
                rep.worst_n2 = n2;
            }
        }
    rep.pass = rep.worst_ratio >= 1.0;
    return rep;
}

std::string resonance_csv(long long bound) {
    std::string out = "n1,n2,h2\n";
    char line[128];
    for (long long n1 = -bound; n1 <= bound; ++n1)
        for (long long n2 = n1; n2 <= bound; ++n2) {
            std::snprintf(line, sizeof line, "%lld,%lld,", n1, n2);
            out += line;
            out += i128_to_string(resonance_h2(n1, n2));
            out += '\n';
        }
    return out;
}

}  // namespace kdvlab
