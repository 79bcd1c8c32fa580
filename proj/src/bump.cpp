#include "kdvlab/bump.hpp"

#include <algorithm>
#include <cmath>

namespace kdvlab {

namespace {

// sigma(s) = exp(-1/s) for s > 0, extended by 0; the classical C^inf ramp
// ingredient. Derivatives: sigma' = sigma/s^2, sigma'' = sigma (1-2s)/s^4.
double sig(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
double sig_d1(double s) { return s > 0.0 ? sig(s) / (s * s) : 0.0; }
double sig_d2(double s) { return s > 0.0 ? sig(s) * (1.0 - 2.0 * s) / (s * s * s * s) : 0.0; }

double smoothstep(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double smoothstep_d1(double t) {
    double u = t * (1.0 - t);
    return 30.0 * u * u;
}
double smoothstep_d2(double t) { return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t); }

}  // namespace

BumpFamily BumpFamily::make(BumpProfile profile, double sharpness) {
    require_config(sharpness > 0.0, "BumpFamily: sharpness must be positive");
    BumpFamily b;
    b.profile_ = profile;
    b.sharpness_ = sharpness;
    b.rounds_ = std::clamp(int(std::lround(sharpness)), 1, 3);
    // record the regularity constants once
    const int samples = 40001;
    for (int i = 0; i < samples; ++i) {
        double x = -2.0 + 4.0 * double(i) / double(samples - 1);
        b.sup_d1_ = std::max(b.sup_d1_, std::abs(b.eta0_d1(x)));
        b.sup_d2_ = std::max(b.sup_d2_, std::abs(b.eta0_d2(x)));
    }
    return b;
}

double BumpFamily::ramp(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    if (profile_ == BumpProfile::Smoothstep) {
        double y = t;
        for (int r = 0; r < rounds_; ++r) y = smoothstep(y);
        return y;
    }
    const double a = sharpness_;
    double A = sig(a * t), B = sig(a * (1.0 - t));
    return A / (A + B);
}

double BumpFamily::ramp_d1(double t) const {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    if (profile_ == BumpProfile::Smoothstep) {
        double y = t, d = 1.0;
        for (int r = 0; r < rounds_; ++r) {
            d *= smoothstep_d1(y);
            y = smoothstep(y);
        }
        return d;
    }
    const double a = sharpness_;
    double A = sig(a * t), B = sig(a * (1.0 - t));
    double Ad = a * sig_d1(a * t), Bd = -a * sig_d1(a * (1.0 - t));
    double D = A + B;
    return (Ad * B - A * Bd) / (D * D);
}

double BumpFamily::ramp_d2(double t) const {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    if (profile_ == BumpProfile::Smoothstep) {
        // (f o g)'' = f''(g) g'^2 + f'(g) g'' applied down the composition
        double y = t, d1 = 1.0, d2 = 0.0;
        for (int r = 0; r < rounds_; ++r) {
            double f1 = smoothstep_d1(y), f2 = smoothstep_d2(y);
            d2 = f2 * d1 * d1 + f1 * d2;
            d1 *= f1;
            y = smoothstep(y);
        }
        return d2;
    }
    const double a = sharpness_;
    double A = sig(a * t), B = sig(a * (1.0 - t));
    double Ad = a * sig_d1(a * t), Bd = -a * sig_d1(a * (1.0 - t));
    double Add = a * a * sig_d2(a * t), Bdd = a * a * sig_d2(a * (1.0 - t));
    double D = A + B;
    return (Add * B - A * Bdd) / (D * D) -
           2.0 * (Ad * B - A * Bd) * (Ad + Bd) / (D * D * D);
}

double BumpFamily::eta0(double x) const {
    double ax = std::abs(x);
    if (ax <= 1.0) return 1.0;
    if (ax >= 2.0) return 0.0;
    return ramp(2.0 - ax);
}

double BumpFamily::eta0_d1(double x) const {
    double ax = std::abs(x);
    if (ax <= 1.0 || ax >= 2.0) return 0.0;
    double d = -ramp_d1(2.0 - ax);
    return x > 0.0 ? d : -d;
}

double BumpFamily::eta0_d2(double x) const {
    double ax = std::abs(x);
    if (ax <= 1.0 || ax >= 2.0) return 0.0;
    return ramp_d2(2.0 - ax);
}

double BumpFamily::chi(int k, double x) const {
    require_config(k >= 0, "chi: band index must be >= 0");
    if (k == 0) return eta0(x);
    double p = std::ldexp(1.0, -k);  // 2^{-k}
    return eta0(x * p) - eta0(x * p * 2.0);
}

double BumpFamily::chi_d1(int k, double x) const {
    require_config(k >= 0, "chi_d1: band index must be >= 0");
    if (k == 0) return eta0_d1(x);
    double p = std::ldexp(1.0, -k);
    return p * eta0_d1(x * p) - 2.0 * p * eta0_d1(x * p * 2.0);
}

double BumpFamily::partition_defect(double x, int K) const {
    double s = 0.0;
    for (int k = 0; k <= K; ++k) s += chi(k, x);
    return std::abs(s - 1.0);
}

SpectralField BumpFamily::project(const SpectralField& u, int k) const {
    return u.apply_multiplier([&](int n) { return chi(k, double(n)); });
}

}  // namespace kdvlab
