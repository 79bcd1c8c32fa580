// kdvlab: windowed space-time spectra and the short-time dyadic norms.
//
// The time transform is taken of the linear-phase-removed field
// g(t, n) = e^{-i mu(n) t} u(t, n), so the DFT frequency axis is the
// modulation variable zeta = tau - mu(n) directly and nothing has to resolve
// tau ~ n^5. Windows are eta0(2^{2k}(t - t_k)); the discrete Parseval
// identity sum |F|^2 dzeta = 2pi dt sum |samples|^2 is exact for this
// transform pair and is checked as an invariant.
#pragma once

#include <vector>

#include "kdvlab/bump.hpp"
#include "kdvlab/equation.hpp"

namespace kdvlab {

struct SpaceTimeSpectrum {
    int k = 0;
    double t_center = 0.0;
    double dt = 0.0;
    double dzeta = 0.0;
    std::vector<double> zeta;             // ascending, length W
    std::vector<int> modes;               // n values in the band
    std::vector<std::vector<cplx>> data;  // [mode][zeta index]
    double time_mass = 0.0;               // dt * sum |windowed samples|^2

    // |sum |F|^2 dzeta - 2pi * time_mass| / max(2pi * time_mass, tiny)
    double parseval_defect() const;
};

// Strict window: [t_k - 2*2^{-2k}, t_k + 2*2^{-2k}] must lie inside the
// trajectory and dt <= 2^{-2k}/32, otherwise a config_error explains the
// required dt / span. mode_weights, if given, multiplies u(n) (one weight per
// band mode, e.g. chi_k for a projection).
SpaceTimeSpectrum windowed_spectrum(const Trajectory& traj, const EquationParams& p,
                                    const BumpFamily& bump, int k, double t_center,
                                    const std::vector<double>* mode_weights = nullptr);

// X_k = sum_j 2^{j/2} || chi_j(zeta) F ||_{L^2_zeta l^2_n}; j runs to the
// smaller of the hard cap 5k+10 and the data's Nyquist reach (j_cap = -1
// keeps that default).
double xk_norm(const SpaceTimeSpectrum& spec, const BumpFamily& bump, int j_cap = -1);

struct BandReport {
    int k = 0;
    double value = 0.0;
    double t_at_max = 0.0;
    int windows = 0;
    int window_samples = 0;
};

// sup over window centers t_k in [t0, t_end] (stride 2^{-2k}/8) of the X_k
// norm of the windowed trajectory; the trajectory is extended beyond its ends
// by a smooth taper to zero over one window half-width.
double fk_norm_upper(const Trajectory& traj, const EquationParams& p, const BumpFamily& bump,
                     int k, BandReport* report = nullptr,
                     const std::vector<double>* mode_weights = nullptr);

// Same windows with the inverse modulation weight (zeta + i 2^{2k})^{-1}
// applied before X_k; the upper-bound surrogate for the N_k norm.
double nk_norm_upper(const Trajectory& traj, const EquationParams& p, const BumpFamily& bump,
                     int k, BandReport* report = nullptr,
                     const std::vector<double>* mode_weights = nullptr);

// Assembled norms: sum_k 2^{2sk} (band value)^2 over P_k-projected bands,
// square root. Bands with no mass are skipped; a nonzero band that cannot
// satisfy the window preconditions propagates the refusal.
double fs_norm_upper(const Trajectory& traj, const EquationParams& p, const BumpFamily& bump,
                     double s, std::vector<BandReport>* bands = nullptr);
double ns_norm_upper(const Trajectory& traj, const EquationParams& p, const BumpFamily& bump,
                     double s, std::vector<BandReport>* bands = nullptr);

// E^s energy: ||P_0 u(0)||^2 + sum_{k>=1} 2^{2sk} sup_t ||P_k u(t)||^2.
double es_norm2(const Trajectory& traj, const BumpFamily& bump, double s);

}  // namespace kdvlab
