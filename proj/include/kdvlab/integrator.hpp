// kdvlab: exponential time integrators for the stiff Fourier-side flow,
// conserved-quantity reports, and flow-map continuity experiments.
#pragma once

#include <string>
#include <vector>

#include "kdvlab/equation.hpp"

namespace kdvlab {

enum class Scheme { Etdrk4, Ifrk4 };

struct SolverConfig {
    double dt = 1e-5;
    double t_end = 1e-2;
    Scheme scheme = Scheme::Etdrk4;
    int contour_points = 32;      // phi-function contour nodes, >= 16
    bool dealias = true;          // false: products on the bare 2N+1 grid (diagnostic)
    bool renormalized_flow = true;
    double blowup_factor = 1e8;   // ||u|| growth beyond this aborts with blowup_error
};

// Advance u0 under the flow; stores every step. dt may be negative (reverse
// runs). t_end must be an integer number of steps within 1e-9 relative.
Trajectory evolve(const SpectralField& u0, const TorusGrid& grid, const EquationParams& p,
                  const SolverConfig& cfg);

// Conserved functionals of the real-valued field behind the coefficients:
//   mass M = (1/2) int u = (sqrt(2pi)/2) u(0)
//   energy E = (1/2) int u^2 = (1/2) sum |u(n)|^2
//   H3 = (1/2pi) int (1/2) uxx^2 + (5/sqrt(2pi)) int u ux^2 + (5/2) int u^4
// (the cubic invariant of the integrable flow in this normalization; the
// quadratic term is summed spectrally, the rest by quadrature on a padded
// grid of at least 4N+2 points).
struct Hamiltonians {
    double mass = 0.0;
    double energy = 0.0;
    double h3 = 0.0;
};
Hamiltonians hamiltonians(const SpectralField& u);

struct ConservationRow {
    double t;
    double mass, energy, h3;
    double drift_mass, drift_energy, drift_h3;  // |X - X0| / max(1, |X0|)
};
std::vector<ConservationRow> conservation_report(const Trajectory& traj, int stride = 1);
std::string conservation_csv(const std::vector<ConservationRow>& rows);

// ratio err(dt) / err(dt/2) with err(h) = ||u_h(T) - u_{h/2}(T)||_{l^2};
// for a 4th-order scheme this sits near 16.
double self_convergence_ratio(const SpectralField& u0, const TorusGrid& grid,
                              const EquationParams& p, SolverConfig cfg);

// Two-solution separation experiment. The perturbed datum is projected back
// to the level set of the base (same mean, same l2 mass) so both runs share
// renormalization constants; rows report sup_t ||u - v||_{H^s} per rung.
struct DivergenceRung {
    double eps_requested;
    double dist0;     // H^s distance after projection
    double sup_dist;  // sup over the evolution
    double ratio;     // sup_dist / dist0
};
std::vector<DivergenceRung> two_solution_divergence(const SpectralField& u0,
                                                    const TorusGrid& grid,
                                                    const EquationParams& p,
                                                    const SolverConfig& cfg,
                                                    const std::vector<double>& eps_list, double s,
                                                    std::uint64_t seed);

// sup_t ||u(t)||_{H^s} over the stored samples.
double sup_hs_norm(const Trajectory& traj, double s);

}  // namespace kdvlab
