#include "kdvlab/integrator.hpp"

#include <cmath>
#include <cstdio>

#include "kdvlab/kernels.hpp"
#include "kdvlab/transform.hpp"

namespace kdvlab {

namespace {

// Per-mode ETDRK4 weights. The phi-functions are evaluated by averaging over
// contour_points points on the unit circle around each z = i lambda dt
// (Kassam-Trefethen); half-offset angles keep nodes away from the removable
// singularity at zeta = 0. The pure propagators use std::polar so their
// modulus is exactly 1.
struct EtdCoeffs {
    std::vector<cplx> E, E2, Q, f1, f2, f3;
};

EtdCoeffs etd_coeffs(const std::vector<double>& lambda, double dt, int P) {
    const std::size_t n = lambda.size();
    EtdCoeffs c;
    c.E.resize(n);
    c.E2.resize(n);
    c.Q.resize(n);
    c.f1.resize(n);
    c.f2.resize(n);
    c.f3.resize(n);
    std::vector<cplx> nodes(std::size_t(P), cplx{});
    for (int m = 0; m < P; ++m) nodes[std::size_t(m)] = std::polar(1.0, kPi * (2.0 * m + 1.0) / P);
    for (std::size_t i = 0; i < n; ++i) {
        const double th = lambda[i] * dt;
        c.E[i] = std::polar(1.0, th);
        c.E2[i] = std::polar(1.0, 0.5 * th);
        const cplx z(0.0, th);
        cplx q{}, a1{}, a2{}, a3{};
        for (int m = 0; m < P; ++m) {
            const cplx zeta = z + nodes[std::size_t(m)];
            const cplx ez = std::exp(zeta);
            const cplx z2 = zeta * zeta;
            const cplx z3 = z2 * zeta;
            q += (std::exp(0.5 * zeta) - 1.0) / zeta;
            a1 += (-4.0 - zeta + ez * (4.0 - 3.0 * zeta + z2)) / z3;
            a2 += (2.0 + zeta + ez * (zeta - 2.0)) / z3;
            a3 += (-4.0 - 3.0 * zeta - z2 + ez * (4.0 - zeta)) / z3;
        }
        const double w = dt / double(P);
        c.Q[i] = w * q;
        c.f1[i] = w * a1;
        c.f2[i] = w * a2;
        c.f3[i] = w * a3;
    }
    return c;
}

// out = a .* x  and  out += a .* x on raw coefficient arrays
void had(SpectralField& out, const std::vector<cplx>& a, const SpectralField& x) {
    kernels::table().cmul(out.data(), a.data(), x.data(), std::size_t(x.size()));
}
void had_add(SpectralField& out, const std::vector<cplx>& a, const SpectralField& x) {
    kernels::table().cmul_add(out.data(), a.data(), x.data(), std::size_t(x.size()));
}

}  // namespace

Trajectory evolve(const SpectralField& u0, const TorusGrid& grid, const EquationParams& p,
                  const SolverConfig& cfg) {
    require_config(grid.N == u0.N(), "evolve: grid and field band mismatch");
    require_config(cfg.dt != 0.0, "evolve: dt must be nonzero");
    require_config(cfg.contour_points >= 16, "evolve: contour_points must be >= 16");
    if (cfg.renormalized_flow)
        require_config(p.renormalized, "evolve: renormalized flow needs renormalized params");

    const double steps_d = cfg.t_end / cfg.dt;
    const long steps = std::lround(steps_d);
    require_config(steps > 0 && std::abs(steps_d - double(steps)) <= 1e-9 * double(steps),
                   "evolve: t_end is not an integer number of steps");

    const int N = grid.N;
    std::vector<double> lambda(std::size_t(2 * N + 1), 0.0);
    for (int n = -N; n <= N; ++n) {
        double nn = double(n);
        lambda[std::size_t(n + N)] =
            cfg.renormalized_flow ? p.mu(n) : nn * nn * nn * nn * nn;
    }

    if (cfg.scheme == Scheme::Ifrk4) {
        double phase = std::abs(cfg.dt) * std::pow(double(N), 5.0);
        if (phase > 1e7)
            std::fprintf(stderr,
                         "kdvlab: warning: dt*N^5 = %.3g; stored samples no longer resolve "
                         "the fastest linear phase\n",
                         phase);
    }

    const int alias_M = cfg.dealias ? 0 : grid.M;
    auto nonlin = [&](const SpectralField& u) {
        return rhs_nonlinear(u, p, cfg.renormalized_flow, alias_M);
    };

    EtdCoeffs C = etd_coeffs(lambda, cfg.dt, cfg.contour_points);

    Trajectory traj;
    traj.grid = grid;
    traj.t0 = 0.0;
    traj.dt = cfg.dt;
    traj.states.reserve(std::size_t(steps) + 1);
    traj.states.push_back(u0);

    const double base_norm = std::sqrt(std::max(u0.l2norm2(), 1e-300));
    SpectralField u = u0;
    SpectralField a(N), b(N), c(N), tmp(N), next(N);

    for (long step = 0; step < steps; ++step) {
        if (cfg.scheme == Scheme::Etdrk4) {
            SpectralField Nu = nonlin(u);
            had(a, C.E2, u);
            had_add(a, C.Q, Nu);
            SpectralField Na = nonlin(a);
            had(b, C.E2, u);
            had_add(b, C.Q, Na);
            SpectralField Nb = nonlin(b);
            tmp = Nb;
            tmp *= 2.0;
            tmp -= Nu;
            had(c, C.E2, a);
            had_add(c, C.Q, tmp);
            SpectralField Nc = nonlin(c);
            had(next, C.E, u);
            had_add(next, C.f1, Nu);
            tmp = Na;
            tmp += Nb;
            tmp *= 2.0;
            had_add(next, C.f2, tmp);
            had_add(next, C.f3, Nc);
        } else {
            const double h = cfg.dt;
            SpectralField k1 = nonlin(u);
            tmp = k1;
            tmp *= 0.5 * h;
            tmp += u;
            had(a, C.E2, tmp);
            SpectralField k2 = nonlin(a);
            had(b, C.E2, u);
            tmp = k2;
            tmp *= 0.5 * h;
            b += tmp;
            SpectralField k3 = nonlin(b);
            had(c, C.E, u);
            had(tmp, C.E2, k3);
            tmp *= h;
            c += tmp;
            SpectralField k4 = nonlin(c);
            had(next, C.E, u);
            had(tmp, C.E, k1);
            tmp *= h / 6.0;
            next += tmp;
            tmp = k2;
            tmp += k3;
            had(a, C.E2, tmp);
            a *= h / 3.0;
            next += a;
            tmp = k4;
            tmp *= h / 6.0;
            next += tmp;
        }
        u = next;
        const double nrm2 = u.l2norm2();
        if (!std::isfinite(nrm2) ||
            std::sqrt(nrm2) > cfg.blowup_factor * std::max(base_norm, 1e-30))
            throw blowup_error("evolve: field left the trust region", step + 1,
                               cfg.dt * double(step + 1));
        traj.states.push_back(u);
    }
    return traj;
}

Hamiltonians hamiltonians(const SpectralField& u) {
    const int N = u.N();
    Hamiltonians h;
    h.mass = 0.5 * kSqrt2Pi * u.at(0).real();
    h.energy = 0.5 * u.l2norm2();

    double quad = 0.0;
    for (int n = -N; n <= N; ++n) {
        double n2 = double(n) * double(n);
        quad += n2 * n2 * std::norm(u.at(n));
    }

    // cubic/quartic integrands are trigonometric polynomials of degree <= 4N;
    // a 4N+2 point grid integrates them exactly
    TorusGrid gq(N, next_fast_size(4 * N + 2));
    SpectralField du = u.apply_multiplier([](int n) { return cplx(0.0, double(n)); });
    auto us = to_physical(u, gq);
    auto dus = to_physical(du, gq);
    double i_uux2 = 0.0, i_u4 = 0.0;
    for (int m = 0; m < gq.M; ++m) {
        double uu = us[std::size_t(m)].real();
        double ux = dus[std::size_t(m)].real();
        i_uux2 += uu * ux * ux;
        double u2 = uu * uu;
        i_u4 += u2 * u2;
    }
    const double w = kTwoPi / double(gq.M);
    i_uux2 *= w;
    i_u4 *= w;

    h.h3 = 0.5 * quad / kTwoPi + (5.0 / kSqrt2Pi) * i_uux2 + 2.5 * i_u4;
    return h;
}

std::vector<ConservationRow> conservation_report(const Trajectory& traj, int stride) {
    require_config(stride >= 1, "conservation_report: bad stride");
    require_config(!traj.states.empty(), "conservation_report: empty trajectory");
    std::vector<std::size_t> idx;
    for (std::size_t l = 0; l < traj.states.size(); l += std::size_t(stride)) idx.push_back(l);
    if (idx.back() != traj.states.size() - 1) idx.push_back(traj.states.size() - 1);

    std::vector<ConservationRow> rows;
    Hamiltonians h0 = hamiltonians(traj.states.front());
    auto denom = [](double x) { return std::max(1.0, std::abs(x)); };
    for (std::size_t l : idx) {
        Hamiltonians h = hamiltonians(traj.states[l]);
        rows.push_back({traj.time(l), h.mass, h.energy, h.h3,
                        std::abs(h.mass - h0.mass) / denom(h0.mass),
                        std::abs(h.energy - h0.energy) / denom(h0.energy),
                        std::abs(h.h3 - h0.h3) / denom(h0.h3)});
    }
    return rows;
}

std::string conservation_csv(const std::vector<ConservationRow>& rows) {
    std::string out = "t,mass,energy,h3,drift_mass,drift_energy,drift_h3\n";
    char line[256];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t,
                      r.mass, r.energy, r.h3, r.drift_mass, r.drift_energy, r.drift_h3);
        out += line;
    }
    return out;
}

double self_convergence_ratio(const SpectralField& u0, const TorusGrid& grid,
                              const EquationParams& p, SolverConfig cfg) {
    SolverConfig half = cfg;
    half.dt = cfg.dt / 2.0;
    SolverConfig quarter = cfg;
    quarter.dt = cfg.dt / 4.0;
    SpectralField u_h = evolve(u0, grid, p, cfg).states.back();
    SpectralField u_h2 = evolve(u0, grid, p, half).states.back();
    SpectralField u_h4 = evolve(u0, grid, p, quarter).states.back();
    double e1 = std::sqrt((u_h - u_h2).l2norm2());
    double e2 = std::sqrt((u_h2 - u_h4).l2norm2());
    require_invariant(e2 > 0.0, "self_convergence_ratio: degenerate error");
    return e1 / e2;
}

double sup_hs_norm(const Trajectory& traj, double s) {
    double sup = 0.0;
    for (const auto& u : traj.states) sup = std::max(sup, u.hs_norm2(s));
    return std::sqrt(sup);
}

std::vector<DivergenceRung> two_solution_divergence(const SpectralField& u0,
                                                    const TorusGrid& grid,
                                                    const EquationParams& p,
                                                    const SolverConfig& cfg,
                                                    const std::vector<double>& eps_list, double s,
                                                    std::uint64_t seed) {
    Rng rng(Rng::derive(seed, 0x51EC7));
    const int N = u0.N();
    SpectralField dir = random_hs_field(N, s, 1.0, rng);
    dir *= 1.0 / std::sqrt(dir.hs_norm2(s));
    dir.at(0) = 0.0;  // keep the mean on the level set from the start

    Trajectory base = evolve(u0, grid, p, cfg);
    const double S0 = u0.l2norm2();

    std::vector<DivergenceRung> rungs;
    for (double eps : eps_list) {
        SpectralField v0 = u0;
        SpectralField step = dir;
        step *= eps;
        v0 += step;
        // project back to the (mean, l2 mass) level set of u0
        v0.at(0) = u0.at(0);
        double head = std::norm(v0.at(0));
        double rest = v0.l2norm2() - head;
        require_invariant(rest > 0.0, "two_solution_divergence: degenerate projection");
        double lam = std::sqrt(std::max(S0 - head, 0.0) / rest);
        for (int n = -N; n <= N; ++n)
            if (n != 0) v0.at(n) *= lam;
        require_invariant(std::abs(v0.l2norm2() - S0) <= 1e-10 * std::max(S0, 1e-30),
                          "two_solution_divergence: level-set projection failed");

        Trajectory pert = evolve(v0, grid, p, cfg);
        double d0 = std::sqrt((v0 - u0).hs_norm2(s));
        double sup = 0.0;
        for (std::size_t l = 0; l < base.states.size(); ++l)
            sup = std::max(sup, (pert.states[l] - base.states[l]).hs_norm2(s));
        sup = std::sqrt(sup);
        rungs.push_back({eps, d0, sup, sup / d0});
    }
    return rungs;
}

}  // namespace kdvlab
