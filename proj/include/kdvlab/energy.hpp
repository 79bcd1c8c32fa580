// kdvlab: band-localized modified energies with cubic correction terms, the
// E^s_T <-> ||.||_{E^s}^2 comparability experiment, and the commutator symbol
// scan behind the correction-term bounds.
#pragma once

#include <string>
#include <vector>

#include "kdvlab/bump.hpp"
#include "kdvlab/integrator.hpp"

namespace kdvlab {

// E_k(u) = ||P_k u||^2
//   + alpha Re sum_{n1+n2+n=0} u(n1) [psi_k(n2)/n2] u(n2) [chi_k(n)/n] u(n)
//   + beta  Re sum_{n1+n2+n=0} u(n1) [chi_k(n2)/n2] u(n2) [chi_k(n)/n] u(n)
// over nonzero n1, n2, n with all indices inside the band of u; k >= 1
// (the k = 0 block of the energy carries no correction and is rejected).
// The pre-Re correction sums are real up to rounding for Hermitian fields;
// that defect is recorded.
struct EnergyBreakdown {
    double quadratic = 0.0;
    double corr_psi = 0.0;            // alpha-weighted term
    double corr_chi = 0.0;            // beta-weighted term
    double total = 0.0;
    double imag_defect = 0.0;         // |Im (pre-Re sums)| relative to term mass
};
EnergyBreakdown localized_energy(const SpectralField& u, int k, const BumpFamily& bump,
                                 double alpha = -4.0, double beta = 6.0);

// E^s_T = ||P_0 u(0)||^2 + sum_{k>=1} 2^{2sk} sup_t E_k(u(t)).
double assembled_energy(const Trajectory& traj, const BumpFamily& bump, double s,
                        double alpha = -4.0, double beta = 6.0);

// Exact cubic resonant slice of the psi-correction (inner frequency pair
// collapsed to (-n1, -n)). For real-valued data every summand is itself a
// real number, so Re[i * term] dies term by term; the returned defect is the
// termwise imaginary mass sum |Im term| / (1 + sum |term|), which vanishes
// exactly for Hermitian coefficients and not otherwise.
double resonant_slice_imag_defect(const SpectralField& u, int k, const BumpFamily& bump);

// Comparability 1/2 ||u||_{E^s}^2 <= E^s_T <= 3/2 ||u||_{E^s}^2 for data of
// H^s size delta; one row per trajectory.
struct ComparabilityRow {
    std::uint64_t seed_tag;
    double delta;
    double energy_norm2;  // ||u||_{E^s}^2
    double modified;      // E^s_T
    double ratio;
    bool pass;
};
std::vector<ComparabilityRow> comparability_check(const TorusGrid& grid, double s, double delta,
                                                  int trajectories, const SolverConfig& cfg,
                                                  const BumpFamily& bump, std::uint64_t seed);

// Commutator symbols along n1 + n2 + n = 0:
//   sym1 = |chi_k(n) - chi_k(n2) - n1 chi_k'(n2)| * n2^2 / n1^2
//   sym2 = |chi_k(n) - chi_k(n2)| * |n2| / |n1|
// scanned over |n| in [2^{k-2}, 2^{k+2}] (both signs) and
// 0 < |n1| <= max(1, 2^{k-9}).
struct CommutatorScan {
    int k;
    double max_sym1;
    double max_sym2;
};
std::vector<CommutatorScan> commutator_bound_scan(const BumpFamily& bump,
                                                  const std::vector<int>& ks);

// CSV ledger of E_k along a trajectory (one row per sampled t per band).
std::string energy_ledger_csv(const Trajectory& traj, const BumpFamily& bump,
                              const std::vector<int>& ks, int stride, double alpha = -4.0,
                              double beta = 6.0);

}  // namespace kdvlab
