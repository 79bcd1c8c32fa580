// kdvlab: coefficient <-> physical-sample transforms and spectral products.
//
// Two product routes are maintained on purpose: convolve_exact is a direct
// O(N^2) coefficient-space sum (the oracle), product_padded goes through a
// zero-padded FFT grid large enough that truncation back to the output band
// is alias-free. Tests pin the two against each other.
#pragma once

#include <vector>

#include "kdvlab/grid.hpp"

namespace kdvlab {

// u(x_m) = (1/sqrt(2pi)) sum_n u(n) e^{i n x_m} on the M points of g.
std::vector<cplx> to_physical(const SpectralField& f, const TorusGrid& g);
std::vector<double> to_physical_real(const SpectralField& f, const TorusGrid& g,
                                     double herm_tol = 1e-9);

// u(n) = (1/sqrt(2pi)) * (2pi/M) sum_m u(x_m) e^{-i n x_m}, |n| <= N.
// Requires samples.size() >= 2N+1.
SpectralField to_spectral(const std::vector<cplx>& samples, int N);
SpectralField to_spectral(const std::vector<double>& samples, int N);

// (2pi/M) sum_m |u(x_m)|^2, the collocation L^2 norm.
double physical_l2norm2(const std::vector<cplx>& samples);

// Plain convolution (f*g)(n) = sum_{n1+n2=n} f(n1) g(n2), output band |n| <= out_N.
// The sum is exact over the full supports of f and g (no intermediate
// truncation); for the cubic case pass the once-convolved factor with its
// natural enlarged band.
SpectralField convolve_exact(const SpectralField& f, const SpectralField& g, int out_N);
SpectralField convolve_exact3(const SpectralField& f, const SpectralField& g,
                              const SpectralField& h, int out_N);

// FFT route. pad_M == 0 selects the smallest fast size >= sum of input bands
// + out_N + 1 (for count identical bands N that is (count+1)N + 1). A caller
// supplied pad_M below the alias-free minimum is refused.
SpectralField product_padded(const std::vector<const SpectralField*>& fields, int out_N,
                             int pad_M = 0);

// Diagnostic route: same FFT product evaluated on an M-point grid that may be
// too small, so the truncation error shows up as wrap-around aliasing. Exists
// for the dealias=false solver flag; never used by default paths.
SpectralField product_aliased(const std::vector<const SpectralField*>& fields, int out_N, int M);

int next_fast_size(int n);  // smallest 2^a 3^b 5^c >= n

// In-place unnormalized DFT, X_m = sum_l x_l e^{-i 2pi m l / W}, any length.
void dft_forward(std::vector<cplx>& x);

}  // namespace kdvlab
