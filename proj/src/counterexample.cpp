#include "kdvlab/counterexample.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "kdvlab/resonance.hpp"

namespace kdvlab {

namespace {

double i128_to_double(i128 v) {
    // Exact for |v| < 2^53; the largest offset in the shipped ladders is
    // H2(1, 4095) ~ 1.4e15, well inside.
    return double(v);
}

struct ProfileShape {
    double half_width;
    double (*value)(double);
};

double box_value(double) { return 1.0; }
double tent_value(double x) { return 1.0 - std::abs(x); }

ProfileShape shape_of(ModProfile p) {
    if (p == ModProfile::Box) return {0.5, box_value};
    return {1.0, tent_value};
}

// integral over the support of profile(x)^2 * <c + x>^{2b} dx
double weighted_profile_mass(const ModBlock& blk, double b, int panels) {
    const ProfileShape sh = shape_of(blk.profile);
    const double c = i128_to_double(blk.offset);
    const double h = 2.0 * sh.half_width / double(panels);
    auto f = [&](int i) {
        const double x = -sh.half_width + h * double(i);
        const double p = sh.value(x);
        const double z = c + x;
        return p * p * std::pow(1.0 + z * z, b);
    };
    double acc = f(0) + f(panels);
    for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i);
    return acc * h / 3.0;
}

double fit_log2_slope(const std::vector<RatioRow>& rows) {
    const double m = double(rows.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const RatioRow& r : rows) {
        const double x = std::log2(double(r.N));
        sx += x;
        sy += r.log2ratio;
        sxx += x * x;
        sxy += x * r.log2ratio;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

PacketPair build_pair(Branch branch, long long N) {
    require_config(N >= 8, "build_pair: N >= 8 required");
    PacketPair out;
    out.n_high = N;
    ModBlock a, b;
    if (branch == Branch::High) {
        a.n = 1;
        b.n = N - 1;
    } else {
        a.n = -(N - 1);
        b.n = N;
    }
    out.f.blocks.push_back(a);
    out.g.blocks.push_back(b);
    return out;
}

PacketFunction bilinear_output(const PacketFunction& f, const PacketFunction& g) {
    PacketFunction out;
    for (const ModBlock& bf : f.blocks) {
        for (const ModBlock& bg : g.blocks) {
            require_config(bf.profile == ModProfile::Box && bg.profile == ModProfile::Box,
                           "bilinear_output: only box-profile inputs are convolved");
            ModBlock o;
            o.n = bf.n + bg.n;
            o.offset = bf.offset + bg.offset - resonance_h2(bf.n, bg.n);
            o.profile = ModProfile::Tent;
            const double d = double(bg.n);
            o.amp = bf.amp * bg.amp * std::abs(d * d * d);
            out.blocks.push_back(o);
        }
    }
    return out;
}

double xsb_norm(const PacketFunction& F, double s, double b, int panels) {
    require_config(panels >= 16 && panels % 2 == 0, "xsb_norm: panels must be even, >= 16");
    double acc = 0.0;
    for (const ModBlock& blk : F.blocks) {
        const double n2 = 1.0 + double(blk.n) * double(blk.n);
        acc += std::pow(n2, s) * blk.amp * blk.amp * weighted_profile_mass(blk, b, panels);
    }
    return std::sqrt(acc);
}

double expected_slope(Branch branch, double b) {
    return branch == Branch::High ? 3.0 + 4.0 * (b - 1.0) : 3.0 - 4.0 * b;
}

SlopeReport ratio_scan(Branch branch, double b, double s,
                       const std::vector<long long>& N_list, int panels) {
    require_config(N_list.size() >= 4, "ratio_scan: need at least 4 ladder points for a fit");
    SlopeReport rep;
    rep.branch = branch;
    rep.b = b;
    rep.s = s;
    rep.expected = expected_slope(branch, b);
    for (long long N : N_list) {
        PacketPair pair = build_pair(branch, N);
        PacketFunction out = bilinear_output(pair.f, pair.g);
        double lhs, rhs;
        if (branch == Branch::High) {
            lhs = xsb_norm(out, s, b - 1.0, panels);
            rhs = xsb_norm(pair.f, s, b, panels) * xsb_norm(pair.g, s, b, panels);
        } else {
            lhs = xsb_norm(out, -s, -b, panels);
            rhs = xsb_norm(pair.f, -s, 1.0 - b, panels) * xsb_norm(pair.g, s, b, panels);
        }
        RatioRow row;
        row.N = N;
        row.lhs = lhs;
        row.rhs = rhs;
        row.ratio = lhs / rhs;
        row.log2ratio = std::log2(row.ratio);
        rep.rows.push_back(row);
    }
    rep.slope = fit_log2_slope(rep.rows);
    rep.pass = std::abs(rep.slope - rep.expected) <= 0.2;
    return rep;
}

ThresholdReport threshold_report(double s, const std::vector<long long>& N_list, int panels) {
    // The fitted slope is affine in b (gradient +4 on the high branch, -4 on
    // the low branch); two samples per branch locate the zero crossing.
    auto crossing = [&](Branch br, double b0, double b1, std::vector<SlopeReport>& fits) {
        SlopeReport r0 = ratio_scan(br, b0, s, N_list, panels);
        SlopeReport r1 = ratio_scan(br, b1, s, N_list, panels);
        fits.push_back(r0);
        fits.push_back(r1);
        const double grad = (r1.slope - r0.slope) / (b1 - b0);
        return b0 - r0.slope / grad;
    };
    ThresholdReport rep;
    rep.t_high = crossing(Branch::High, 0.3, 0.5, rep.fits);
    rep.t_low = crossing(Branch::Low, 0.5, 0.75, rep.fits);
    rep.empty_intersection = rep.t_high < rep.t_low;
    return rep;
}

std::string ratio_csv(const SlopeReport& report) {
    std::string csv = "N,lhs,rhs,ratio,log2ratio\n";
    char buf[192];
    for (const RatioRow& r : report.rows) {
        std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g,%.17g,%.17g\n", r.N, r.lhs, r.rhs,
                      r.ratio, r.log2ratio);
        csv += buf;
    }
    return csv;
}

std::vector<long long> default_n_ladder() {
    std::vector<long long> out;
    for (int e = 6; e <= 12; ++e) out.push_back(1LL << e);
    return out;
}

}  // namespace kdvlab
