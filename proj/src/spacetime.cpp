#include "kdvlab/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kdvlab/kernels.hpp"
#include "kdvlab/transform.hpp"

namespace kdvlab {

namespace {

std::vector<int> band_modes(int k, int N) {
    std::vector<int> modes;
    if (k == 0) {
        for (int n = -std::min(2, N); n <= std::min(2, N); ++n) modes.push_back(n);
        return modes;
    }
    const long long lo = 1LL << (k - 1);
    const long long hi = std::min<long long>(2LL << k, N);
    for (long long a = lo; a <= hi; ++a) {
        modes.push_back(int(-a));
        modes.push_back(int(a));
    }
    std::sort(modes.begin(), modes.end());
    return modes;
}

// e^{-i mu t} with the argument reduced before the trig call
cplx unit_phase(double mu, double t) { return std::polar(1.0, -std::fmod(mu * t, kTwoPi)); }

struct WindowLayout {
    long l_lo = 0, l_hi = 0;  // sample index range, may stick out of the trajectory
    int W = 0;
};

WindowLayout window_layout(const Trajectory& traj, int k, double t_center) {
    const double tau = std::ldexp(1.0, -2 * k);  // 2^{-2k}
    const double half = 2.0 * tau;
    require_config(std::abs(traj.dt) <= tau / 32.0,
                   "windowed spectrum: resolution too coarse for band k=" + std::to_string(k) +
                       "; need dt <= " + std::to_string(tau / 32.0));
    WindowLayout w;
    w.l_lo = (long)std::ceil((t_center - half - traj.t0) / traj.dt - 1e-9);
    w.l_hi = (long)std::floor((t_center + half - traj.t0) / traj.dt + 1e-9);
    w.W = int(w.l_hi - w.l_lo + 1);
    return w;
}

// Core: assemble the windowed, phase-removed samples for every band mode and
// DFT them. When extend is true, samples beyond the trajectory reuse the
// nearest stored state scaled by a smooth taper to zero over one half-width.
SpaceTimeSpectrum build_spectrum(const Trajectory& traj, const EquationParams& p,
                                 const BumpFamily& bump, int k, double t_center,
                                 const std::vector<double>* mode_weights, bool extend) {
    require_config(!traj.states.empty() && traj.dt > 0.0,
                   "windowed spectrum: need a forward-sampled trajectory");
    const double tau = std::ldexp(1.0, -2 * k);
    const double half = 2.0 * tau;
    WindowLayout w = window_layout(traj, k, t_center);
    const long last = long(traj.states.size()) - 1;
    if (!extend)
        require_config(w.l_lo >= 0 && w.l_hi <= last,
                       "windowed spectrum: window around t=" + std::to_string(t_center) +
                           " leaves the trajectory span");

    SpaceTimeSpectrum spec;
    spec.k = k;
    spec.t_center = t_center;
    spec.dt = traj.dt;
    spec.modes = band_modes(k, traj.grid.N);
    if (mode_weights)
        require_config(mode_weights->size() == spec.modes.size(),
                       "windowed spectrum: weight count != band mode count");

    const int W = w.W;
    spec.dzeta = kTwoPi / (double(W) * traj.dt);
    spec.zeta.resize(std::size_t(W));
    const int m_lo = -(W / 2);
    for (int i = 0; i < W; ++i) spec.zeta[std::size_t(i)] = spec.dzeta * double(m_lo + i);

    // window and taper values are mode-independent
    std::vector<double> win(std::size_t(W), 0.0);
    std::vector<long> idx(std::size_t(W), 0L);
    for (int i = 0; i < W; ++i) {
        const long l = w.l_lo + i;
        const double t = traj.t0 + traj.dt * double(l);
        double g = bump.eta0((t - t_center) / tau);
        long lc = l;
        if (l < 0) {
            g *= bump.eta0(1.0 + (traj.t0 - t) / half);
            lc = 0;
        } else if (l > last) {
            g *= bump.eta0(1.0 + (t - traj.time(std::size_t(last))) / half);
            lc = last;
        }
        win[std::size_t(i)] = g;
        idx[std::size_t(i)] = lc;
    }

    spec.data.assign(spec.modes.size(), {});
    std::vector<cplx> buf(std::size_t(W), cplx{});
    for (std::size_t mi = 0; mi < spec.modes.size(); ++mi) {
        const int n = spec.modes[mi];
        const double mu = p.mu(n);
        const double weight = mode_weights ? (*mode_weights)[mi] : 1.0;
        // phase advanced multiplicatively; start reduced once
        cplx ph = unit_phase(mu, traj.t0 + traj.dt * double(w.l_lo));
        const cplx inc = unit_phase(mu, traj.dt);
        for (int i = 0; i < W; ++i) {
            const cplx u = traj.states[std::size_t(idx[std::size_t(i)])].at(n);
            buf[std::size_t(i)] = weight * win[std::size_t(i)] * ph * u;
            ph *= inc;
        }
        for (const cplx& z : buf) spec.time_mass += std::norm(z);
        dft_forward(buf);
        // reorder bins to the ascending zeta axis and scale by dt
        std::vector<cplx>& row = spec.data[mi];
        row.resize(std::size_t(W));
        for (int i = 0; i < W; ++i) {
            int m = m_lo + i;
            int bin = ((m % W) + W) % W;
            row[std::size_t(i)] = traj.dt * buf[std::size_t(bin)];
        }
    }
    spec.time_mass *= traj.dt;
    // exact transform-pair identity; catches any indexing or scaling slip
    require_invariant(spec.parseval_defect() <= 1e-10,
                      "windowed spectrum: discrete Parseval identity violated");
    return spec;
}

}  // namespace

double SpaceTimeSpectrum::parseval_defect() const {
    double freq = 0.0;
    for (const auto& row : data)
        for (const cplx& z : row) freq += std::norm(z);
    freq *= dzeta;
    const double ref = kTwoPi * time_mass;
    return std::abs(freq - ref) / std::max(ref, 1e-300);
}

SpaceTimeSpectrum windowed_spectrum(const Trajectory& traj, const EquationParams& p,
                                    const BumpFamily& bump, int k, double t_center,
                                    const std::vector<double>* mode_weights) {
    return build_spectrum(traj, p, bump, k, t_center, mode_weights, false);
}

double xk_norm(const SpaceTimeSpectrum& spec, const BumpFamily& bump, int j_cap) {
    if (spec.modes.empty() || spec.zeta.empty()) return 0.0;
    const double zeta_max = std::max(std::abs(spec.zeta.front()), std::abs(spec.zeta.back()));
    const int j_nyquist = int(std::ceil(std::log2(std::max(zeta_max, 2.0)))) + 1;
    const int j_hard = 5 * spec.k + 10;
    int j_top = std::min(j_hard, j_nyquist);
    if (j_cap >= 0) j_top = std::min(j_top, j_cap);

    const std::size_t W = spec.zeta.size();
    std::vector<double> wgt(W);
    double total = 0.0;
    for (int j = 0; j <= j_top; ++j) {
        for (std::size_t i = 0; i < W; ++i) {
            const double c = bump.chi(j, spec.zeta[i]);
            wgt[i] = c * c * spec.dzeta;
        }
        double mass = 0.0;
        for (const auto& row : spec.data)
            mass += kernels::table().wnorm2(wgt.data(), row.data(), W);
        total += std::pow(2.0, 0.5 * double(j)) * std::sqrt(mass);
    }
    return total;
}

namespace {

double sup_over_windows_at(const Trajectory& traj, const EquationParams& p,
                           const BumpFamily& bump, int k, BandReport* report,
                           const std::vector<double>* mode_weights, bool inverse_modulation);

double sup_over_windows(const Trajectory& traj_in, const EquationParams& p,
                        const BumpFamily& bump, int k, BandReport* report,
                        const std::vector<double>* mode_weights, bool inverse_modulation) {
    const double tau = std::ldexp(1.0, -2 * k);
    // Coarse bands admit dt up to tau/32; resample the trajectory to the
    // coarsest admissible step so every band's window holds ~129 samples
    // instead of inheriting the finest band's resolution.
    const long sub = std::max(1L, (long)std::floor(tau / (32.0 * traj_in.dt) + 1e-9));
    Trajectory traj{traj_in.grid, traj_in.t0, traj_in.dt, {}};
    const Trajectory* tp = &traj_in;
    if (sub > 1) {
        traj.dt = traj_in.dt * double(sub);
        for (std::size_t l = 0; l < traj_in.states.size(); l += std::size_t(sub))
            traj.states.push_back(traj_in.states[l]);
        tp = &traj;
    }
    return sup_over_windows_at(*tp, p, bump, k, report, mode_weights, inverse_modulation);
}

double sup_over_windows_at(const Trajectory& traj, const EquationParams& p,
                           const BumpFamily& bump, int k, BandReport* report,
                           const std::vector<double>* mode_weights, bool inverse_modulation) {
    const double tau = std::ldexp(1.0, -2 * k);
    const long stride = std::max(1L, (long)std::floor(tau / (8.0 * traj.dt)));
    const long last = long(traj.states.size()) - 1;
    double best = 0.0, best_t = 0.0;
    int windows = 0, samples = 0;
    for (long lc = 0;; lc += stride) {
        if (lc > last) lc = last;
        const double t_center = traj.time(std::size_t(lc));
        SpaceTimeSpectrum spec =
            build_spectrum(traj, p, bump, k, t_center, mode_weights, true);
        if (inverse_modulation) {
            const double m = std::ldexp(1.0, 2 * k);  // 2^{2k}
            for (auto& row : spec.data)
                for (std::size_t i = 0; i < row.size(); ++i)
                    row[i] /= cplx(spec.zeta[i], m);
        }
        double v = xk_norm(spec, bump);
        if (v > best) {
            best = v;
            best_t = t_center;
        }
        ++windows;
        samples = int(spec.zeta.size());
        if (lc == last) break;
    }
    if (report) *report = {k, best, best_t, windows, samples};
    return best;
}

double assembled_norm(const Trajectory& traj, const EquationParams& p, const BumpFamily& bump,
                      double s, std::vector<BandReport>* bands, bool inverse_modulation) {
    const int N = traj.grid.N;
    const int k_top = int(std::floor(std::log2(double(N)))) + 1;
    double sup_u2 = 0.0;
    for (const auto& u : traj.states) sup_u2 = std::max(sup_u2, u.l2norm2());

    double acc = 0.0;
    for (int k = 0; k <= k_top; ++k) {
        std::vector<int> modes = band_modes(k, N);
        if (modes.empty()) continue;
        std::vector<double> weights(modes.size());
        for (std::size_t i = 0; i < modes.size(); ++i)
            weights[i] = bump.chi(k, double(modes[i]));
        // skip bands carrying no mass (within rounding of zero)
        double band_sup = 0.0;
        for (const auto& u : traj.states) {
            double m = 0.0;
            for (std::size_t i = 0; i < modes.size(); ++i)
                m += weights[i] * weights[i] * std::norm(u.at(modes[i]));
            band_sup = std::max(band_sup, m);
        }
        if (band_sup <= 1e-28 * std::max(sup_u2, 1e-300)) continue;
        BandReport rep;
        double v = sup_over_windows(traj, p, bump, k, &rep, &weights, inverse_modulation);
        acc += std::pow(2.0, 2.0 * s * double(k)) * v * v;
        if (bands) bands->push_back(rep);
    }
    return std::sqrt(acc);
}

}  // namespace

double fk_norm_upper(const Trajectory& traj, const EquationParams& p, const BumpFamily& bump,
                     int k, BandReport* report, const std::vector<double>* mode_weights) {
    return sup_over_windows(traj, p, bump, k, report, mode_weights, false);
}

double nk_norm_upper(const Trajectory& traj, const EquationParams& p, const BumpFamily& bump,
                     int k, BandReport* report, const std::vector<double>* mode_weights) {
    return sup_over_windows(traj, p, bump, k, report, mode_weights, true);
}

double fs_norm_upper(const Trajectory& traj, const EquationParams& p, const BumpFamily& bump,
                     double s, std::vector<BandReport>* bands) {
    return assembled_norm(traj, p, bump, s, bands, false);
}

double ns_norm_upper(const Trajectory& traj, const EquationParams& p, const BumpFamily& bump,
                     double s, std::vector<BandReport>* bands) {
    return assembled_norm(traj, p, bump, s, bands, true);
}

double es_norm2(const Trajectory& traj, const BumpFamily& bump, double s) {
    require_config(!traj.states.empty(), "es_norm2: empty trajectory");
    const int N = traj.grid.N;
    const int k_top = int(std::floor(std::log2(double(N)))) + 1;
    SpectralField p0 = bump.project(traj.states.front(), 0);
    double acc = p0.l2norm2();
    for (int k = 1; k <= k_top; ++k) {
        double sup = 0.0;
        for (const auto& u : traj.states) sup = std::max(sup, bump.project(u, k).l2norm2());
        acc += std::pow(2.0, 2.0 * s * double(k)) * sup;
    }
    return acc;
}

}  // namespace kdvlab
