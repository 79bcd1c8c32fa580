// kdvlab: the trilinear modulation functional J on the resonant set
//   Gamma = { n1 + n2 + n3 = 0, zeta1 + zeta2 + zeta3 + G(n1, n2) = 0 }
// and the seven-case dyadic block estimates it satisfies.
//
// Two evaluation routes. j_grid follows the definition literally (shared
// uniform zeta grids, trapezoid weights, linear interpolation for the shifted
// factor). j_exact is quadrature-free for piecewise-constant pieces: the
// (zeta1, zeta2) integral of an indicator triple is the triple convolution of
// interval indicators evaluated at -G, a closed-form quadratic B-spline.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kdvlab/equation.hpp"

namespace kdvlab {

// Piecewise-constant nonnegative piece: frequency support `modes` inside the
// dyadic band k, shared zeta cells [lo, hi) at modulation scale 2^j.
struct BoxPiece {
    int k = 0;
    int j = 0;
    std::vector<int> modes;
    std::vector<std::pair<double, double>> cells;
    std::vector<std::vector<double>> val;  // [mode][cell]
    double l2norm() const;
};

// Sampled piece on a uniform zeta grid (complex values allowed).
struct GridPiece {
    std::vector<int> modes;
    std::vector<double> zeta;
    std::vector<std::vector<cplx>> val;  // [mode][grid point]
    double l2norm() const;
};

// (1_{[0,w1]} * 1_{[0,w2]} * 1_{[0,w3]})(x), closed form.
double triple_box(double w1, double w2, double w3, double x);

double j_exact(const BoxPiece& f1, const BoxPiece& f2, const BoxPiece& f3,
               const EquationParams& p);
cplx j_grid(const GridPiece& f1, const GridPiece& f2, const GridPiece& f3,
            const EquationParams& p);

enum class BlockCase { A1, A2, B1, B2, B3, B4, C };
const char* block_case_name(BlockCase c);

// Case applicability for band triple k and modulation triple j (sorted
// internally). The b-cases additionally depend on whether the lowest band
// carries the largest modulation.
bool block_case_applies(BlockCase c, const int k[3], const int j[3]);

// log2 of the case's bound factor; |J| <= 2^{bound} * prod ||f_i||_{L^2 l^2}.
double block_bound_log2(BlockCase c, const int k[3], const int j[3]);

struct BlockComboResult {
    BlockCase bc;
    int k[3];
    int j[3];
    int trials = 0;
    double max_ratio = 0.0;  // max over trials of |J| / (2^{bound} prod norms)
    double max_j = 0.0;      // largest |J| seen (0 means the combo never fired)
    bool pass = false;
};

// Runs `trials` randomized sparse-support pieces (trial 0 is the structured
// full-band plateau) and checks |J| <= cap * bound.
BlockComboResult block_estimate_verify(BlockCase c, const int k[3], const int j[3],
                                       const EquationParams& p, int trials, double cap,
                                       std::uint64_t seed);

// The acceptance sweep: a/c-cases on band triples with k_max <= 8, b-cases at
// the smallest band gap they admit (k_min <= k_max - 10). Throws
// invariant_error if some case never achieves a nonzero J.
std::vector<BlockComboResult> block_sweep(const EquationParams& p, int trials, double cap,
                                          std::uint64_t seed, int threads = 1);

std::string block_report_csv(const std::vector<BlockComboResult>& rows);

}  // namespace kdvlab
