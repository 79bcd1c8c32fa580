#include "kdvlab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace kdvlab {

TorusGrid::TorusGrid(int n_modes, int points) {
    require_config(n_modes >= 1, "TorusGrid: need N >= 1");
    N = n_modes;
    M = points == 0 ? 2 * N + 1 : points;
    require_config(M >= 2 * N + 1, "TorusGrid: need M >= 2N+1 physical points");
}

SpectralField SpectralField::real_field(int N, std::vector<cplx> coeffs, double tol) {
    require_config(int(coeffs.size()) == 2 * N + 1, "real_field: coefficient count != 2N+1");
    SpectralField f(N);
    std::copy(coeffs.begin(), coeffs.end(), f.c_.begin());
    require_invariant(f.hermitian_defect() <= tol,
                      "real_field: Hermitian symmetry violated for a field flagged real");
    return f;
}

double SpectralField::l2norm2() const {
    double s = 0.0;
    for (const cplx& z : c_) s += std::norm(z);
    return s;
}

double SpectralField::hs_norm2(double s) const {
    double acc = 0.0;
    for (int n = -N_; n <= N_; ++n)
        acc += std::pow(1.0 + double(n) * double(n), s) * std::norm(at(n));
    return acc;
}

double SpectralField::hermitian_defect() const {
    double d = 0.0;
    for (int n = 0; n <= N_; ++n)
        d = std::max(d, std::abs(at(-n) - std::conj(at(n))));
    return d;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    require_invariant(o.N_ == N_, "field size mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    require_invariant(o.N_ == N_, "field size mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (cplx& z : c_) z *= a;
    return *this;
}

double SpectralField::max_abs_diff(const SpectralField& a, const SpectralField& b) {
    require_invariant(a.N_ == b.N_, "field size mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        d = std::max(d, std::abs(a.c_[i] - b.c_[i]));
    return d;
}

SpectralField random_hs_field(int N, double s, double radius, Rng& rng) {
    require_config(radius > 0.0, "random_hs_field: radius must be positive");
    SpectralField f(N);
    for (int n = 1; n <= N; ++n) {
        // extra 0.51 keeps the tail summable so the H^s mass is spread low
        double decay = std::pow(1.0 + double(n) * double(n), -0.5 * (s + 0.51));
        cplx z(rng.normal(), rng.normal());
        f.at(n) = decay * z;
        f.at(-n) = std::conj(f.at(n));
    }
    f.at(0) = cplx(rng.normal(), 0.0);
    double norm = std::sqrt(f.hs_norm2(s));
    require_invariant(norm > 0.0, "random_hs_field: degenerate draw");
    double target = radius * (0.1 + 0.9 * rng.uniform());
    f *= target / norm;
    return f;
}

SpectralField cosine_field(int N, int n0, double amplitude) {
    require_config(n0 >= 0 && n0 <= N, "cosine_field: mode out of band");
    SpectralField f(N);
    if (n0 == 0) {
        f.at(0) = amplitude * kSqrt2Pi;  // u = const: u(0) = sqrt(2pi) * const
    } else {
        // amplitude * cos(n0 x): u(+-n0) = amplitude * sqrt(pi/2)
        f.at(n0) = amplitude * std::sqrt(kPi / 2.0);
        f.at(-n0) = f.at(n0);
    }
    return f;
}

}  // namespace kdvlab
