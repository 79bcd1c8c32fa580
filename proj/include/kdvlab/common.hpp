// kdvlab: shared types, error taxonomy, deterministic RNG.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kdvlab {

using cplx = std::complex<double>;
using i128 = __int128;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline const double kSqrt2Pi = std::sqrt(kTwoPi);

// Error taxonomy. config_error: bad user input or an unsatisfiable request
// (CLI exit 2). invariant_error: an internal contract or conservation check
// failed (exit 1). blowup_error: the evolved field left the trust region
// (exit 3).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invariant_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct blowup_error : std::runtime_error {
    blowup_error(const std::string& what, long step_, double t_)
        : std::runtime_error(what), step(step_), t(t_) {}
    long step;
    double t;
};

inline void require_config(bool ok, const std::string& what) {
    if (!ok) throw config_error(what);
}

inline void require_invariant(bool ok, const std::string& what) {
    if (!ok) throw invariant_error(what);
}

// SplitMix64. Chosen over <random> engines for bit-stable cross-platform
// streams; all stochastic tests and sweeps derive their substreams from
// (seed, tag) so results are reproducible from a single CLI seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform on [0, 1)
    double uniform() { return std::ldexp(double(next_u64() >> 11), -53); }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // integer in [lo, hi] inclusive
    long long uniform_int(long long lo, long long hi) {
        return lo + (long long)(uniform() * double(hi - lo + 1));
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

    // Derive an independent substream from a seed and a task tag.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
        Rng r(seed ^ (0xA5A5A5A55A5A5A5AULL + tag * 0x9E3779B97F4A7C15ULL));
        r.next_u64();
        return r.next_u64();
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace kdvlab
