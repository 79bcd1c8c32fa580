#include "kdvlab/equation.hpp"

#include <cmath>

#include "kdvlab/transform.hpp"

namespace kdvlab {

namespace {

const cplx kI{0.0, 1.0};

struct Products {
    SpectralField cubic;  // u*u*u
    SpectralField vv;     // (n u)*(n u)
    SpectralField uw;     // u*(n^2 u)
};

Products interaction_products(const SpectralField& u, int alias_M) {
    SpectralField v = u.apply_multiplier([](int n) { return double(n); });
    SpectralField w = u.apply_multiplier([](int n) { return double(n) * double(n); });
    Products pr;
    if (alias_M > 0) {
        pr.cubic = product_aliased({&u, &u, &u}, u.N(), alias_M);
        pr.vv = product_aliased({&v, &v}, u.N(), alias_M);
        pr.uw = product_aliased({&u, &w}, u.N(), alias_M);
    } else {
        pr.cubic = product_padded({&u, &u, &u}, u.N());
        pr.vv = product_padded({&v, &v}, u.N());
        pr.uw = product_padded({&u, &w}, u.N());
    }
    return pr;
}

}  // namespace

EquationParams EquationParams::renormalized_for(const SpectralField& u0, double a1_, double a2_,
                                                double a3_) {
    EquationParams p = coefficients(a1_, a2_, a3_);
    double scale = std::sqrt(std::max(u0.l2norm2(), 1e-300));
    require_invariant(std::abs(u0.at(0).imag()) <= 1e-12 * std::max(scale, 1.0),
                      "renormalized_for: mean mode must be real to renormalize");
    p.c1 = a3_ * u0.at(0).real();
    p.c2 = -a1_ * u0.l2norm2();
    p.renormalized = true;
    return p;
}

SpectralField rhs_raw(const SpectralField& u, const EquationParams& p) {
    Products pr = interaction_products(u, 0);
    const int N = u.N();
    SpectralField out(N);
    for (int n = -N; n <= N; ++n) {
        double nn = double(n);
        double n5 = nn * nn * nn * nn * nn;
        cplx nonlin = -(p.a1 / 3.0) * pr.cubic.at(n) + 0.5 * (p.a2 - p.a3) * pr.vv.at(n) +
                      p.a3 * pr.uw.at(n);
        out.at(n) = kI * (n5 * u.at(n) + nn * nonlin);
    }
    return out;
}

RhsSplit rhs_renormalized(const SpectralField& u, const EquationParams& p) {
    require_config(p.renormalized, "rhs_renormalized: params carry no renormalization constants");
    Products pr = interaction_products(u, 0);
    const int N = u.N();
    const double S = u.l2norm2();
    const cplx u0 = u.at(0);
    RhsSplit s{SpectralField(N), SpectralField(N), SpectralField(N), SpectralField(N),
               SpectralField(N)};
    for (int n = -N; n <= N; ++n) {
        double nn = double(n);
        cplx un = u.at(n);
        double diag = std::norm(un);
        s.linear.at(n) = kI * (p.mu(n) * un);
        s.n1.at(n) = p.a1 * kI * nn * diag * un;
        s.n2.at(n) = -(p.a1 / 3.0) * kI * nn * (pr.cubic.at(n) - 3.0 * S * un + 3.0 * diag * un);
        s.n3.at(n) = 0.5 * (p.a2 - p.a3) * kI * nn * pr.vv.at(n);
        s.n4.at(n) = p.a3 * kI * nn * (pr.uw.at(n) - u0 * nn * nn * un);
    }
    return s;
}

SpectralField rhs_nonlinear(const SpectralField& u, const EquationParams& p,
                            bool renormalized_flow, int alias_M) {
    Products pr = interaction_products(u, alias_M);
    const int N = u.N();
    SpectralField out(N);
    if (renormalized_flow) {
        require_config(p.renormalized, "rhs_nonlinear: renormalized flow needs c1, c2");
        const double S = u.l2norm2();
        const cplx u0 = u.at(0);
        for (int n = -N; n <= N; ++n) {
            double nn = double(n);
            cplx un = u.at(n);
            double diag = std::norm(un);
            cplx acc = p.a1 * diag * un;
            acc += -(p.a1 / 3.0) * (pr.cubic.at(n) - 3.0 * S * un + 3.0 * diag * un);
            acc += 0.5 * (p.a2 - p.a3) * pr.vv.at(n);
            acc += p.a3 * (pr.uw.at(n) - u0 * nn * nn * un);
            out.at(n) = kI * nn * acc;
        }
    } else {
        for (int n = -N; n <= N; ++n) {
            double nn = double(n);
            cplx acc = -(p.a1 / 3.0) * pr.cubic.at(n) + 0.5 * (p.a2 - p.a3) * pr.vv.at(n) +
                       p.a3 * pr.uw.at(n);
            out.at(n) = kI * nn * acc;
        }
    }
    return out;
}

}  // namespace kdvlab
