// kdvlab: torus grid and spectral field containers.
#pragma once

#include <vector>

#include "kdvlab/common.hpp"

namespace kdvlab {

// 2pi-periodic grid. N is the highest retained Fourier mode; M the number of
// physical collocation points (>= 2N+1 so the mode set is unaliased).
struct TorusGrid {
    int N = 0;
    int M = 0;

    TorusGrid() = default;
    explicit TorusGrid(int n_modes, int points = 0);

    double x(int m) const { return kTwoPi * double(m) / double(M); }
    int mode_count() const { return 2 * N + 1; }
};

// Coefficient array indexed by n in [-N, N]. Convention:
//   u(n) = (1/sqrt(2pi)) int_0^{2pi} e^{-inx} u(x) dx
// so Parseval is clean: ||u||_{L^2}^2 = sum_n |u(n)|^2. Real-valued fields
// satisfy u(-n) = conj(u(n)).
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(int N) : N_(N), c_(2 * N + 1) {}

    // Validates the Hermitian symmetry invariant; throws invariant_error.
    static SpectralField real_field(int N, std::vector<cplx> coeffs, double tol = 1e-12);

    int N() const { return N_; }
    int size() const { return int(c_.size()); }

    cplx& at(int n) { return c_[std::size_t(n + N_)]; }
    const cplx& at(int n) const { return c_[std::size_t(n + N_)]; }
    bool in_band(long long n) const { return n >= -N_ && n <= N_; }
    cplx at_or_zero(long long n) const { return in_band(n) ? at(int(n)) : cplx{}; }

    cplx* data() { return c_.data(); }
    const cplx* data() const { return c_.data(); }
    const std::vector<cplx>& coeffs() const { return c_; }

    double l2norm2() const;                 // sum |u(n)|^2
    double hs_norm2(double s) const;        // sum <n>^{2s} |u(n)|^2
    double hermitian_defect() const;        // max_n |u(-n) - conj(u(n))|
    bool is_hermitian(double tol = 1e-12) const { return hermitian_defect() <= tol; }

    // n-multiplier helper: out(n) = m(n) * u(n)
    template <class F>
    SpectralField apply_multiplier(F&& m) const {
        SpectralField out(N_);
        for (int n = -N_; n <= N_; ++n) out.at(n) = m(n) * at(n);
        return out;
    }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);
    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double a, SpectralField f) { return f *= a; }

    // sup-norm of the coefficient difference
    static double max_abs_diff(const SpectralField& a, const SpectralField& b);

  private:
    int N_ = 0;
    std::vector<cplx> c_;
};

// Uniformly sampled orbit of the flow. states[l] is the field at t0 + l*dt.
struct Trajectory {
    TorusGrid grid;
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<SpectralField> states;

    double time(std::size_t l) const { return t0 + dt * double(l); }
    double t_end() const { return states.empty() ? t0 : time(states.size() - 1); }
    std::size_t steps() const { return states.empty() ? 0 : states.size() - 1; }
};

// Random field with ||.||_{H^s} = radius * U, U uniform in (0.1, 1]; Hermitian.
SpectralField random_hs_field(int N, double s, double radius, Rng& rng);

// cos-type data: amplitude * cos(n0 x) (+ constant shift when n0 = 0).
SpectralField cosine_field(int N, int n0, double amplitude);

}  // namespace kdvlab
