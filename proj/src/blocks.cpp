#include "kdvlab/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>
#include <unordered_map>

#include "kdvlab/resonance.hpp"

namespace kdvlab {

namespace {

std::vector<int> band_modes_nz(int k, int cap_count) {
    std::vector<int> modes;
    long long lo = k == 0 ? 1 : (1LL << (k - 1));
    long long hi = k == 0 ? 2 : (2LL << k);
    long long count = hi - lo + 1;
    long long step = std::max(1LL, count / std::max(1LL, (long long)cap_count / 2));
    for (long long a = lo; a <= hi; a += step) {
        modes.push_back(int(a));
        modes.push_back(int(-a));
    }
    std::sort(modes.begin(), modes.end());
    return modes;
}

void sort3(const int v[3], int out[3]) {
    out[0] = v[0];
    out[1] = v[1];
    out[2] = v[2];
    std::sort(out, out + 3);
}

bool kmin_slot_has_jmax(const int k[3], const int j[3]) {
    int kmin = std::min({k[0], k[1], k[2]});
    int jmax = std::max({j[0], j[1], j[2]});
    for (int i = 0; i < 3; ++i)
        if (k[i] == kmin && j[i] == jmax) return true;
    return false;
}

}  // namespace

double BoxPiece::l2norm() const {
    double acc = 0.0;
    for (const auto& row : val)
        for (std::size_t c = 0; c < cells.size(); ++c)
            acc += row[c] * row[c] * (cells[c].second - cells[c].first);
    return std::sqrt(acc);
}

double GridPiece::l2norm() const {
    if (zeta.size() < 2) return 0.0;
    const double dz = zeta[1] - zeta[0];
    double acc = 0.0;
    for (const auto& row : val)
        for (std::size_t i = 0; i < row.size(); ++i) {
            double w = (i == 0 || i + 1 == row.size()) ? 0.5 : 1.0;
            acc += w * std::norm(row[i]) * dz;
        }
    return std::sqrt(acc);
}

double triple_box(double w1, double w2, double w3, double x) {
    // integrate the trapezoid of the two thinnest boxes over the window cut by
    // the widest one; corner-shift inclusion-exclusion cancels catastrophically
    // once x sits near a resonance value ~2^50 while the true plateau is only
    // O(w_min * w_med)
    double a = w1, b = w2, c = w3;
    if (a > c) std::swap(a, c);
    if (b > c) std::swap(b, c);
    const double lo = std::max(x - c, 0.0);
    const double hi = std::min(a + b, x);
    if (!(hi > lo)) return 0.0;
    const double k1 = std::min(a, b), k2 = std::max(a, b);
    double acc = 0.0;
    const double r = std::min(hi, k1);
    if (r > lo) acc += 0.5 * (r * r - lo * lo);  // rising edge, T(y) = y
    const double p0 = std::max(lo, k1), p1 = std::min(hi, k2);
    if (p1 > p0) acc += k1 * (p1 - p0);  // plateau, T(y) = k1
    const double f = std::max(lo, k2);
    if (hi > f) {
        const double u = (a + b) - f, v = (a + b) - hi;  // both in [0, k1]
        acc += 0.5 * (u * u - v * v);  // falling edge, T(y) = a+b-y
    }
    return acc;
}

double j_exact(const BoxPiece& f1, const BoxPiece& f2, const BoxPiece& f3,
               const EquationParams& p) {
    std::unordered_map<int, std::size_t> where3;
    for (std::size_t i = 0; i < f3.modes.size(); ++i) where3[f3.modes[i]] = i;

    double acc = 0.0;
    for (std::size_t i1 = 0; i1 < f1.modes.size(); ++i1) {
        const long long n1 = f1.modes[i1];
        if (n1 == 0) continue;
        for (std::size_t i2 = 0; i2 < f2.modes.size(); ++i2) {
            const long long n2 = f2.modes[i2];
            if (n2 == 0 || n1 + n2 == 0) continue;
            auto it = where3.find(int(-n1 - n2));
            if (it == where3.end()) continue;
            const std::size_t i3 = it->second;
            const double g = resonance_g(n1, n2, p.c1);
            for (std::size_t c1 = 0; c1 < f1.cells.size(); ++c1) {
                const double v1 = f1.val[i1][c1];
                if (v1 == 0.0) continue;
                for (std::size_t c2 = 0; c2 < f2.cells.size(); ++c2) {
                    const double v2 = f2.val[i2][c2];
                    if (v2 == 0.0) continue;
                    for (std::size_t c3 = 0; c3 < f3.cells.size(); ++c3) {
                        const double v3 = f3.val[i3][c3];
                        if (v3 == 0.0) continue;
                        const double w1 = f1.cells[c1].second - f1.cells[c1].first;
                        const double w2 = f2.cells[c2].second - f2.cells[c2].first;
                        const double w3 = f3.cells[c3].second - f3.cells[c3].first;
                        const double shift =
                            f1.cells[c1].first + f2.cells[c2].first + f3.cells[c3].first;
                        acc += v1 * v2 * v3 * triple_box(w1, w2, w3, -g - shift);
                    }
                }
            }
        }
    }
    return acc;
}

cplx j_grid(const GridPiece& f1, const GridPiece& f2, const GridPiece& f3,
            const EquationParams& p) {
    require_config(f1.zeta.size() >= 2 && f2.zeta.size() >= 2 && f3.zeta.size() >= 2,
                   "j_grid: need at least two grid points per piece");
    const double dz1 = f1.zeta[1] - f1.zeta[0];
    const double dz2 = f2.zeta[1] - f2.zeta[0];
    const double dz3 = f3.zeta[1] - f3.zeta[0];
    const double z3lo = f3.zeta.front(), z3hi = f3.zeta.back();

    std::unordered_map<int, std::size_t> where3;
    for (std::size_t i = 0; i < f3.modes.size(); ++i) where3[f3.modes[i]] = i;

    cplx acc{};
    for (std::size_t i1 = 0; i1 < f1.modes.size(); ++i1) {
        const long long n1 = f1.modes[i1];
        if (n1 == 0) continue;
        for (std::size_t i2 = 0; i2 < f2.modes.size(); ++i2) {
            const long long n2 = f2.modes[i2];
            if (n2 == 0 || n1 + n2 == 0) continue;
            auto it = where3.find(int(-n1 - n2));
            if (it == where3.end()) continue;
            const auto& row3 = f3.val[it->second];
            const double g = resonance_g(n1, n2, p.c1);
            for (std::size_t m1 = 0; m1 < f1.zeta.size(); ++m1) {
                const double tw1 = (m1 == 0 || m1 + 1 == f1.zeta.size()) ? 0.5 : 1.0;
                const cplx a = f1.val[i1][m1];
                if (a == cplx{}) continue;
                for (std::size_t m2 = 0; m2 < f2.zeta.size(); ++m2) {
                    const cplx b = f2.val[i2][m2];
                    if (b == cplx{}) continue;
                    const double tw2 = (m2 == 0 || m2 + 1 == f2.zeta.size()) ? 0.5 : 1.0;
                    const double z3 = -f1.zeta[m1] - f2.zeta[m2] - g;
                    if (z3 < z3lo || z3 > z3hi) continue;
                    const double pos = (z3 - z3lo) / dz3;
                    const std::size_t i = std::min(std::size_t(pos), f3.zeta.size() - 2);
                    const double frac = pos - double(i);
                    const cplx c = (1.0 - frac) * row3[i] + frac * row3[i + 1];
                    acc += tw1 * tw2 * a * b * c;
                }
            }
        }
    }
    return acc * (dz1 * dz2);
}

const char* block_case_name(BlockCase c) {
    switch (c) {
        case BlockCase::A1: return "a-1";
        case BlockCase::A2: return "a-2";
        case BlockCase::B1: return "b-1";
        case BlockCase::B2: return "b-2";
        case BlockCase::B3: return "b-3";
        case BlockCase::B4: return "b-4";
        case BlockCase::C: return "c";
    }
    return "?";
}

bool block_case_applies(BlockCase c, const int k[3], const int j[3]) {
    int ks[3], js[3];
    sort3(k, ks);
    sort3(j, js);
    const int kmin = ks[0], kmax = ks[2];
    const int jmed = js[1];
    const bool near = kmax - kmin <= 5;
    const bool far = kmin <= kmax - 10;
    const bool low_has_top = kmin_slot_has_jmax(k, j);
    switch (c) {
        case BlockCase::A1: return near && jmed <= 3 * kmax;
        case BlockCase::A2: return near && jmed > 3 * kmax;
        case BlockCase::B1: return far && low_has_top && jmed <= 3 * kmax + kmin;
        case BlockCase::B2: return far && low_has_top && jmed > 3 * kmax + kmin;
        case BlockCase::B3: return far && !low_has_top && jmed <= 4 * kmax;
        case BlockCase::B4: return far && !low_has_top && jmed > 4 * kmax;
        case BlockCase::C: return true;
    }
    return false;
}

double block_bound_log2(BlockCase c, const int k[3], const int j[3]) {
    int ks[3], js[3];
    sort3(k, ks);
    sort3(j, js);
    const double kmin = ks[0], kmax = ks[2];
    const double jmin = js[0], jmed = js[1];
    switch (c) {
        case BlockCase::A1:
        case BlockCase::B1:
        case BlockCase::B3:
            // 2^{(j1+j2+j3)/2} 2^{-(jmed+jmax)/2}
            return 0.5 * jmin;
        case BlockCase::A2:
            return 0.5 * jmin + 0.25 * jmed - 0.75 * kmax;
        case BlockCase::B2:
            // 2^{(j1+j2+j3)/2} 2^{-3kmax/2} 2^{-kmin/2} 2^{-jmax/2}
            return 0.5 * (jmin + jmed) - 1.5 * kmax - 0.5 * kmin;
        case BlockCase::B4:
            return 0.5 * (jmin + jmed) - 2.0 * kmax;
        case BlockCase::C:
            return 0.5 * jmin + 0.5 * kmin;
    }
    return 0.0;
}

namespace {

// random piecewise-constant piece on the dyadic modulation annulus of scale j
BoxPiece random_piece(int k, int j, Rng& rng, bool structured) {
    BoxPiece p;
    p.k = k;
    p.j = j;
    if (structured) {
        p.modes = band_modes_nz(k, 128);
    } else {
        std::vector<int> all = band_modes_nz(k, 1 << 22);
        int want = int(std::min<std::size_t>(all.size(), 8 + std::size_t(rng.uniform_int(0, 8))));
        for (int i = 0; i < want; ++i) {
            std::size_t pick = std::size_t(rng.uniform_int(0, (long long)all.size() - 1));
            p.modes.push_back(all[pick]);
            all.erase(all.begin() + (long)pick);
        }
        std::sort(p.modes.begin(), p.modes.end());
    }

    const double lo = j == 0 ? 0.0 : std::ldexp(1.0, j - 1);
    const double hi = j == 0 ? 2.0 : std::ldexp(1.0, j + 1);
    auto split = [&](double a, double b) {
        double m = structured ? 0.5 * (a + b) : rng.uniform(a + 0.1 * (b - a), b - 0.1 * (b - a));
        p.cells.emplace_back(a, m);
        p.cells.emplace_back(m, b);
    };
    if (j == 0) {
        split(-hi, 0.0);
        split(0.0, hi);
    } else {
        split(-hi, -lo);
        split(lo, hi);
    }

    p.val.assign(p.modes.size(), std::vector<double>(p.cells.size(), 0.0));
    for (auto& row : p.val)
        for (double& v : row)
            v = structured ? 1.0 : (rng.uniform() < 0.25 ? 0.0 : rng.uniform(0.1, 1.0));
    return p;
}

}  // namespace

BlockComboResult block_estimate_verify(BlockCase c, const int k[3], const int j[3],
                                       const EquationParams& p, int trials, double cap,
                                       std::uint64_t seed) {
    require_config(trials >= 1, "block_estimate_verify: need at least one trial");
    require_config(block_case_applies(c, k, j),
                   std::string("block_estimate_verify: case ") + block_case_name(c) +
                       " does not apply to this (k, j) combination");
    BlockComboResult res;
    res.bc = c;
    for (int i = 0; i < 3; ++i) {
        res.k[i] = k[i];
        res.j[i] = j[i];
    }
    res.trials = trials;
    const double bound = std::exp2(block_bound_log2(c, k, j));
    std::uint64_t tag = 0xB10C + std::uint64_t(int(c));
    for (int i = 0; i < 3; ++i) tag = tag * 1000003u + std::uint64_t(k[i] + 1) * 257 + std::uint64_t(j[i] + 1);
    Rng rng(Rng::derive(seed, tag));
    for (int t = 0; t < trials; ++t) {
        BoxPiece f1 = random_piece(k[0], j[0], rng, t == 0);
        BoxPiece f2 = random_piece(k[1], j[1], rng, t == 0);
        BoxPiece f3 = random_piece(k[2], j[2], rng, t == 0);
        const double norms = f1.l2norm() * f2.l2norm() * f3.l2norm();
        if (norms <= 0.0) continue;
        const double jj = j_exact(f1, f2, f3, p);
        res.max_j = std::max(res.max_j, jj);
        res.max_ratio = std::max(res.max_ratio, jj / (bound * norms));
    }
    res.pass = res.max_ratio <= cap;
    return res;
}

namespace {

struct ComboSpec {
    BlockCase c;
    int k[3];
    int j[3];
};

// smallest j whose box triple can reach the band's G values
int reach_j(const int k[3], const EquationParams& p) {
    std::vector<int> m1 = band_modes_nz(k[0], 512);
    std::vector<int> m2 = band_modes_nz(k[1], 512);
    const long long lo3 = k[2] == 0 ? 1 : (1LL << (k[2] - 1));
    const long long hi3 = k[2] == 0 ? 2 : (2LL << k[2]);
    double gmin = 1e300;
    for (int n1 : m1)
        for (int n2 : m2) {
            if (n1 + n2 == 0) continue;
            long long a3 = std::llabs((long long)n1 + n2);
            if (a3 < lo3 || a3 > hi3) continue;
            gmin = std::min(gmin, std::abs(resonance_g(n1, n2, p.c1)));
        }
    if (gmin >= 1e300) return -1;  // no feasible triple at all
    return int(std::ceil(std::log2(std::max(gmin, 2.0)))) + 1;
}

void push_case_combos(std::vector<ComboSpec>& out, const EquationParams& p, BlockCase c,
                      const int k[3]) {
    int ks[3];
    sort3(k, ks);
    const int kmin = ks[0], kmax = ks[2];
    const int jg = reach_j(k, p);
    if (jg < 0) return;
    auto add = [&](int j_low_slot, int j_a, int j_b) {
        // j_low_slot rides on the lowest band; j_a, j_b on the other two
        ComboSpec s;
        s.c = c;
        int lowest = 0;
        for (int i = 1; i < 3; ++i)
            if (k[i] < k[lowest]) lowest = i;
        for (int i = 0; i < 3; ++i) s.k[i] = k[i];
        int rest[2], r = 0;
        for (int i = 0; i < 3; ++i)
            if (i != lowest) rest[r++] = i;
        s.j[lowest] = j_low_slot;
        s.j[rest[0]] = j_a;
        s.j[rest[1]] = j_b;
        if (block_case_applies(c, s.k, s.j)) out.push_back(s);
    };
    switch (c) {
        case BlockCase::A1:
            add(2, 3 * kmax, std::max(jg, 3 * kmax + 1));
            add(0, 2, std::max(jg, 3));
            break;
        case BlockCase::A2:
            add(3 * kmax + 1, 3 * kmax + 1, std::max(jg, 3 * kmax + 2));
            add(3 * kmax + 2, std::max(jg, 3 * kmax + 3), std::max(jg, 3 * kmax + 3));
            break;
        case BlockCase::B1:
            add(std::max(jg, 3 * kmax + kmin + 1), 3, 3 * kmax + kmin);
            add(std::max(jg, 3 * kmax + kmin + 1), 0, 1);
            break;
        case BlockCase::B2:
            add(std::max(jg, 3 * kmax + kmin + 4), 3 * kmax + kmin + 1, 3 * kmax + kmin + 3);
            break;
        case BlockCase::B3:
            add(4, std::max(jg, 5), std::min(4 * kmax, std::max(jg, 5) - 1));
            add(0, std::max(jg, 4 * kmax), 3);
            break;
        case BlockCase::B4:
            add(5, std::max(jg, 4 * kmax + 2), 4 * kmax + 1);
            break;
        case BlockCase::C:
            add(jg, jg, jg);
            add(3, std::max(jg, 4), std::max(jg, 4));
            break;
    }
}

}  // namespace

std::vector<BlockComboResult> block_sweep(const EquationParams& p, int trials, double cap,
                                          std::uint64_t seed, int threads) {
    std::vector<ComboSpec> combos;
    const int near_triples[][3] = {{4, 4, 4}, {6, 6, 6}, {8, 8, 8}, {3, 7, 8}, {3, 8, 8},
                                   {6, 7, 8}};
    const int far_triples[][3] = {{0, 10, 10}, {1, 11, 11}, {0, 11, 11}};
    for (const auto& kt : near_triples) {
        push_case_combos(combos, p, BlockCase::A1, kt);
        push_case_combos(combos, p, BlockCase::A2, kt);
        push_case_combos(combos, p, BlockCase::C, kt);
    }
    for (const auto& kt : far_triples) {
        push_case_combos(combos, p, BlockCase::B1, kt);
        push_case_combos(combos, p, BlockCase::B2, kt);
        push_case_combos(combos, p, BlockCase::B3, kt);
        push_case_combos(combos, p, BlockCase::B4, kt);
        push_case_combos(combos, p, BlockCase::C, kt);
    }

    std::vector<BlockComboResult> results(combos.size());
    threads = std::max(1, threads);
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < combos.size(); i += step)
            results[i] = block_estimate_verify(combos[i].c, combos[i].k, combos[i].j, p, trials,
                                               cap, seed);
    };
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, std::size_t(t), std::size_t(threads));
        for (auto& th : pool) th.join();
    }

    // every case must actually fire somewhere, otherwise the sweep is vacuous
    for (BlockCase c : {BlockCase::A1, BlockCase::A2, BlockCase::B1, BlockCase::B2, BlockCase::B3,
                        BlockCase::B4, BlockCase::C}) {
        double best = 0.0;
        for (const auto& r : results)
            if (r.bc == c) best = std::max(best, r.max_j);
        require_invariant(best > 0.0, std::string("block_sweep: case ") + block_case_name(c) +
                                          " never achieved a nonzero J");
    }
    return results;
}

std::string block_report_csv(const std::vector<BlockComboResult>& rows) {
    std::string out = "case,k1,k2,k3,j1,j2,j3,trials,max_ratio,max_j,pass\n";
    char line[256];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%s,%d,%d,%d,%d,%d,%d,%d,%.17g,%.17g,%d\n",
                      block_case_name(r.bc), r.k[0], r.k[1], r.k[2], r.j[0], r.j[1], r.j[2],
                      r.trials, r.max_ratio, r.max_j, int(r.pass));
        out += line;
    }
    return out;
}

}  // namespace kdvlab
