// kdvlab: smooth dyadic bump family.
//
// eta0 is even, 1 on [-1, 1], supported in [-2, 2], built from a monotone
// C^2+ ramp; chi_k(x) = eta0(x/2^k) - eta0(x/2^{k-1}) for k >= 1 and
// chi_0 = eta0, so sum_{k<=K} chi_k telescopes to eta0(x/2^K) and the family
// partitions unity exactly on |x| <= 2^K. psi_k(x) = x chi_k'(x) is the
// derivative-weighted symbol used by the modified energies.
#pragma once

#include "kdvlab/grid.hpp"

namespace kdvlab {

enum class BumpProfile {
    Smoothstep,  // quintic polynomial ramp, C^2 at the seams
    Mollified,   // exp(-1/s) partition ramp, C^infinity
};

class BumpFamily {
  public:
    static BumpFamily make(BumpProfile profile, double sharpness = 1.0);

    double eta0(double x) const;
    double eta0_d1(double x) const;
    double eta0_d2(double x) const;

    double chi(int k, double x) const;
    double chi_d1(int k, double x) const;
    double psi(int k, double x) const { return x * chi_d1(k, x); }

    // recorded regularity constants sup|eta0'|, sup|eta0''| (dense scan,
    // frozen at construction)
    double sup_d1() const { return sup_d1_; }
    double sup_d2() const { return sup_d2_; }

    // |sum_{k=0}^{K} chi_k(x) - 1|, zero for |x| <= 2^K
    double partition_defect(double x, int K) const;

    // P_k u: multiply coefficients by chi_k(n)
    SpectralField project(const SpectralField& u, int k) const;

    BumpProfile profile() const { return profile_; }
    double sharpness() const { return sharpness_; }

  private:
    BumpFamily() = default;
    double ramp(double t) const;     // 0 at t<=0, 1 at t>=1, monotone
    double ramp_d1(double t) const;
    double ramp_d2(double t) const;

    BumpProfile profile_ = BumpProfile::Mollified;
    double sharpness_ = 1.0;
    int rounds_ = 1;  // smoothstep composition count
    double sup_d1_ = 0.0, sup_d2_ = 0.0;
};

}  // namespace kdvlab
