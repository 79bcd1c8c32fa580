// kdvlab: the mean/mass gauge transform NT and its bicontinuity experiment.
//
// NT maps u to v(t, n) = e^{i a1 n Phi(t)} u(t, n) with Phi(t) the running
// integral of ||u(s)||_{L^2}^2 (a1 = -30 gives the usual e^{-30 i n Phi}).
// It is modulus-preserving mode by mode, so Sobolev norms pass through it
// unchanged at fixed t; the interesting content is the phase.
#pragma once

#include <vector>

#include "kdvlab/integrator.hpp"

namespace kdvlab {

// Phi on the trajectory's sample grid, by trapezoid quadrature of sum |u(n)|^2
// (the integrand is conserved by the integrable flow, so the quadrature is
// exact up to solver drift).
struct PhaseAccumulator {
    double dt = 0.0;
    std::vector<double> phi;  // phi[l] = Phi(t_l)
    double at_step(std::size_t l) const { return phi[l]; }
};
PhaseAccumulator accumulate_phase(const Trajectory& traj);

Trajectory apply_nt(const Trajectory& traj, double a1 = -30.0);
Trajectory apply_nt_inverse(const Trajectory& traj, double a1 = -30.0);

// Modulus preservation defect: max over (t, n) of | |v| - |u| |.
double nt_modulus_defect(const Trajectory& u, const Trajectory& v);

// Round-trip defect: max coefficient difference of apply_nt_inverse(apply_nt(.)).
double nt_roundtrip_defect(const Trajectory& traj, double a1 = -30.0);

// For data whose l2 mass is conserved, Phi(t) = ||u0||^2 t and the NT phase
// must match e^{i a1 n ||u0||^2 t} = e^{-i c2 n t}. Returns the max phase
// mismatch |v(t,n) - e^{-i c2 n t} u(t,n)| over the trajectory.
double nt_constant_mass_phase_defect(const Trajectory& traj, const EquationParams& p);

// Bicontinuity experiment: perturbation ladder eps, sup-in-time H^s distances
// before and after NT; NT is bicontinuous iff the ratios stay O(1).
struct BicontinuityRow {
    double eps;
    double dist_plain;  // sup_t ||u - u'||_{H^s}
    double dist_nt;     // sup_t ||NT u - NT u'||_{H^s}
    double ratio;       // dist_nt / dist_plain
};
std::vector<BicontinuityRow> bicontinuity_experiment(const SpectralField& u0,
                                                     const TorusGrid& grid,
                                                     const EquationParams& p,
                                                     const SolverConfig& cfg,
                                                     const std::vector<double>& eps_list,
                                                     double s, std::uint64_t seed);

}  // namespace kdvlab
