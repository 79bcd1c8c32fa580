#include "kdvlab/gauge.hpp"

#include <cmath>

namespace kdvlab {

PhaseAccumulator accumulate_phase(const Trajectory& traj) {
    require_config(!traj.states.empty(), "accumulate_phase: empty trajectory");
    PhaseAccumulator acc;
    acc.dt = traj.dt;
    acc.phi.resize(traj.states.size());
    acc.phi[0] = 0.0;
    double prev = traj.states[0].l2norm2();
    for (std::size_t l = 1; l < traj.states.size(); ++l) {
        double cur = traj.states[l].l2norm2();
        acc.phi[l] = acc.phi[l - 1] + 0.5 * traj.dt * (prev + cur);
        prev = cur;
    }
    return acc;
}

namespace {

Trajectory apply_phase(const Trajectory& traj, double a1, double sign) {
    PhaseAccumulator acc = accumulate_phase(traj);
    Trajectory out = traj;
    const int N = traj.grid.N;
    for (std::size_t l = 0; l < out.states.size(); ++l) {
        const double phase = sign * a1 * acc.phi[l];
        for (int n = -N; n <= N; ++n)
            out.states[l].at(n) *= std::polar(1.0, phase * double(n));
    }
    return out;
}

}  // namespace

Trajectory apply_nt(const Trajectory& traj, double a1) { return apply_phase(traj, a1, 1.0); }

Trajectory apply_nt_inverse(const Trajectory& traj, double a1) {
    return apply_phase(traj, a1, -1.0);
}

double nt_modulus_defect(const Trajectory& u, const Trajectory& v) {
    require_invariant(u.states.size() == v.states.size(), "nt_modulus_defect: length mismatch");
    double d = 0.0;
    const int N = u.grid.N;
    for (std::size_t l = 0; l < u.states.size(); ++l)
        for (int n = -N; n <= N; ++n)
            d = std::max(d, std::abs(std::abs(v.states[l].at(n)) - std::abs(u.states[l].at(n))));
    return d;
}

double nt_roundtrip_defect(const Trajectory& traj, double a1) {
    Trajectory round = apply_nt_inverse(apply_nt(traj, a1), a1);
    double d = 0.0;
    for (std::size_t l = 0; l < traj.states.size(); ++l)
        d = std::max(d, SpectralField::max_abs_diff(round.states[l], traj.states[l]));
    return d;
}

double nt_constant_mass_phase_defect(const Trajectory& traj, const EquationParams& p) {
    require_config(p.renormalized, "nt_constant_mass_phase_defect: needs c2");
    Trajectory v = apply_nt(traj, p.a1);
    double d = 0.0;
    const int N = traj.grid.N;
    for (std::size_t l = 0; l < traj.states.size(); ++l) {
        const double t = traj.time(l);
        for (int n = -N; n <= N; ++n) {
            cplx expected = std::polar(1.0, -p.c2 * double(n) * t) * traj.states[l].at(n);
            d = std::max(d, std::abs(v.states[l].at(n) - expected));
        }
    }
    return d;
}

std::vector<BicontinuityRow> bicontinuity_experiment(const SpectralField& u0,
                                                     const TorusGrid& grid,
                                                     const EquationParams& p,
                                                     const SolverConfig& cfg,
                                                     const std::vector<double>& eps_list,
                                                     double s, std::uint64_t seed) {
    Rng rng(Rng::derive(seed, 0x6A06E));
    SpectralField dir = random_hs_field(u0.N(), s, 1.0, rng);
    dir *= 1.0 / std::sqrt(dir.hs_norm2(s));

    Trajectory base = evolve(u0, grid, p, cfg);
    Trajectory base_nt = apply_nt(base, p.a1);

    std::vector<BicontinuityRow> rows;
    for (double eps : eps_list) {
        SpectralField v0 = u0;
        SpectralField step = dir;
        step *= eps;
        v0 += step;
        EquationParams pp = EquationParams::renormalized_for(v0, p.a1, p.a2, p.a3);
        Trajectory pert = evolve(v0, grid, pp, cfg);
        Trajectory pert_nt = apply_nt(pert, p.a1);
        double d_plain = 0.0, d_nt = 0.0;
        for (std::size_t l = 0; l < base.states.size(); ++l) {
            d_plain = std::max(d_plain, (pert.states[l] - base.states[l]).hs_norm2(s));
            d_nt = std::max(d_nt, (pert_nt.states[l] - base_nt.states[l]).hs_norm2(s));
        }
        d_plain = std::sqrt(d_plain);
        d_nt = std::sqrt(d_nt);
        rows.push_back({eps, d_plain, d_nt, d_nt / std::max(d_plain, 1e-300)});
    }
    return rows;
}

}  // namespace kdvlab
