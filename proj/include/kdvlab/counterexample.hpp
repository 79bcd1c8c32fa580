// kdvlab: explicit two-packet sequences exhibiting the failure of the
// bilinear estimate ||u d_x^3 v||_{X^{s,b-1}} <= C ||u||_{X^{s,b}} ||v||_{X^{s,b}}.
// Each packet is a single frequency carrying a unit-width modulation profile
// centered at an exactly-tracked integer offset from the dispersion surface;
// all tau-side arithmetic is symbolic, no dense modulation grid is built.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kdvlab/common.hpp"

namespace kdvlab {

enum class Branch { High, Low };  // High: probes b > 1/4; Low: the dualized b <= 1/4 form

enum class ModProfile { Box, Tent };  // Box: 1 on [-1/2,1/2]; Tent: 1-|x| on [-1,1]

struct ModBlock {
    long long n = 0;      // spatial frequency
    i128 offset = 0;      // center in zeta = tau - n^5
    ModProfile profile = ModProfile::Box;
    double amp = 1.0;
};

struct PacketFunction {
    std::vector<ModBlock> blocks;
};

struct PacketPair {
    PacketFunction f;  // utilde
    PacketFunction g;  // vtilde, carries the three derivatives
    long long n_high;  // the large frequency N of the construction
};

// High branch: f at n = 1, g at n = N-1 (output at N).
// Low branch:  f at n = -(N-1), g at n = N (output at 1).
PacketPair build_pair(Branch branch, long long N);

// f * g in (tau, n) with the i n2^3 derivative weight on g: box * box makes a
// width-2 unit tent centered at offset_f + offset_g - H2(n_f, n_g), amplitude
// |n_g|^3 times the input amplitudes.
PacketFunction bilinear_output(const PacketFunction& f, const PacketFunction& g);

// || <n>^s <tau - n^5>^b F ||_{L^2_tau l^2_n}, quadrature of <offset + x>^{2b}
// against the squared profile; composite Simpson with `panels` panels (even).
double xsb_norm(const PacketFunction& F, double s, double b, int panels = 512);

struct RatioRow {
    long long N;
    double lhs;
    double rhs;
    double ratio;
    double log2ratio;
};

struct SlopeReport {
    Branch branch;
    double b;
    double s;
    double slope;     // least-squares fit of log2(ratio) against log2(N)
    double expected;  // 3 + 4(b-1) (High) or 3 - 4b (Low)
    bool pass;        // |slope - expected| <= 0.2
    std::vector<RatioRow> rows;
};

double expected_slope(Branch branch, double b);

// Evaluates the lhs/rhs ratio across N_list and fits the log2 slope.
// High: lhs = ||out||_{X^{s,b-1}},  rhs = ||f||_{X^{s,b}} ||g||_{X^{s,b}}.
// Low (dualized): lhs = ||out||_{X^{-s,-b}}, rhs = ||f||_{X^{-s,1-b}} ||g||_{X^{s,b}}.
SlopeReport ratio_scan(Branch branch, double b, double s,
                       const std::vector<long long>& N_list, int panels = 512);

// Locates the zero crossing of the fitted slope in b per branch (the slope is
// affine in b); the estimate needs b <= t_high AND b >= t_low, so the verdict
// is vacuous iff t_high < t_low.
struct ThresholdReport {
    double t_high;      // ~1/4
    double t_low;       // ~3/4
    bool empty_intersection;
    std::vector<SlopeReport> fits;
};
ThresholdReport threshold_report(double s, const std::vector<long long>& N_list,
                                 int panels = 512);

std::string ratio_csv(const SlopeReport& report);

std::vector<long long> default_n_ladder();  // {2^6 .. 2^12}

}  // namespace kdvlab
