// kdvlab: Fourier-side right-hand sides for the fifth-order flow on the
// torus, raw and renormalized, with the four-term interaction split.
#pragma once

#include "kdvlab/grid.hpp"

namespace kdvlab {

// d/dt u(n) = i n^5 u(n)
//             - (a1/3) i n (u*u*u)(n)
//             + ((a2-a3)/2) i n (v*v)(n)      v(m) = m u(m)
//             + a3 i n (u*w)(n)               w(m) = m^2 u(m)
// with the integrable triple (a1, a2, a3) = (-30, 20, 10). The renormalized
// form pulls the resonant diagonal into the linear symbol
//   mu(n) = n^5 + c1 n^3 + c2 n,  c1 = a3 u0(0),  c2 = -a1 sum |u0(n)|^2,
// leaving the interaction split N1 + N2 + N3 + N4 (N1 is the cubic diagonal
// a1 i n |u(n)|^2 u(n); its sign is fixed by the inclusion-exclusion identity
// sum_{resonant} u u u = 3 S u(n) - 3 |u(n)|^2 u(n), n != 0).
struct EquationParams {
    double a1 = -30.0;
    double a2 = 20.0;
    double a3 = 10.0;
    double c1 = 0.0;
    double c2 = 0.0;
    bool renormalized = false;

    static EquationParams integrable() { return {}; }
    static EquationParams coefficients(double a1_, double a2_, double a3_) {
        EquationParams p;
        p.a1 = a1_;
        p.a2 = a2_;
        p.a3 = a3_;
        return p;
    }
    // Freeze c1, c2 from the initial data (both are conserved along the flow).
    static EquationParams renormalized_for(const SpectralField& u0, double a1_ = -30.0,
                                           double a2_ = 20.0, double a3_ = 10.0);

    double mu(long long n) const {
        double nn = double(n);
        double n2 = nn * nn;
        return nn * (n2 * n2 + c1 * n2 + c2);
    }
};

struct RhsSplit {
    SpectralField linear;  // i mu(n) u(n)
    SpectralField n1, n2, n3, n4;
    SpectralField total() const { return linear + n1 + n2 + n3 + n4; }
};

// Full right-hand side including the i n^5 linear term (raw flow: no
// renormalization constants inside the symbol).
SpectralField rhs_raw(const SpectralField& u, const EquationParams& p);

// Renormalized split; requires p.renormalized. The identity
// rhs_raw == linear + N1 + N2 + N3 + N4 holds exactly when p was built from
// the same field via renormalized_for.
RhsSplit rhs_renormalized(const SpectralField& u, const EquationParams& p);

// Nonlinear part only (total minus the linear symbol of the respective flow);
// this is what the exponential integrators advance. dealias = false evaluates
// the products on an aliased grid of the given physical size (diagnostic).
SpectralField rhs_nonlinear(const SpectralField& u, const EquationParams& p,
                            bool renormalized_flow, int alias_M = 0);

}  // namespace kdvlab
