#include "kdvlab/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

#include "kdvlab/kernels.hpp"

namespace kdvlab {

namespace {

// One cached FFTW plan pair (+ buffers) per transform size. FFTW_ESTIMATE
// keeps planning deterministic and cheap; plans are reused across calls.
struct FftSlot {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

class FftCache {
  public:
    static FftCache& instance() {
        static FftCache c;
        return c;
    }

    // callers hold the lock while touching the buffers
    std::mutex mutex;

    FftSlot& slot(int M) {
        auto it = slots_.find(M);
        if (it != slots_.end()) return it->second;
        FftSlot s;
        s.in = fftw_alloc_complex(std::size_t(M));
        s.out = fftw_alloc_complex(std::size_t(M));
        s.fwd = fftw_plan_dft_1d(M, s.in, s.out, FFTW_FORWARD, FFTW_ESTIMATE);
        s.bwd = fftw_plan_dft_1d(M, s.in, s.out, FFTW_BACKWARD, FFTW_ESTIMATE);
        return slots_.emplace(M, s).first->second;
    }

  private:
    FftCache() = default;
    std::map<int, FftSlot> slots_;
};

inline cplx* as_cplx(fftw_complex* p) { return reinterpret_cast<cplx*>(p); }

void scatter_modes(const SpectralField& f, cplx* buf, int M) {
    std::memset(buf, 0, sizeof(cplx) * std::size_t(M));
    const int N = f.N();
    for (int n = -N; n <= N; ++n) {
        int bin = n >= 0 ? n : n + M;
        buf[bin] = f.at(n);
    }
}

}  // namespace

std::vector<cplx> to_physical(const SpectralField& f, const TorusGrid& g) {
    require_config(g.N >= f.N(), "to_physical: grid band smaller than field band");
    const int M = g.M;
    auto& cache = FftCache::instance();
    std::lock_guard<std::mutex> lock(cache.mutex);
    FftSlot& s = cache.slot(M);
    scatter_modes(f, as_cplx(s.in), M);
    fftw_execute(s.bwd);  // sum_n u(n) e^{+i n x_m}
    std::vector<cplx> out(std::size_t(M), cplx{});
    const double scale = 1.0 / kSqrt2Pi;
    const cplx* src = as_cplx(s.out);
    for (int m = 0; m < M; ++m) out[std::size_t(m)] = scale * src[m];
    return out;
}

std::vector<double> to_physical_real(const SpectralField& f, const TorusGrid& g, double herm_tol) {
    double scale = std::sqrt(std::max(f.l2norm2(), 1e-300));
    require_invariant(f.hermitian_defect() <= herm_tol * scale,
                      "to_physical_real: field is not Hermitian-symmetric");
    std::vector<cplx> z = to_physical(f, g);
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].real();
    return out;
}

SpectralField to_spectral(const std::vector<cplx>& samples, int N) {
    const int M = int(samples.size());
    require_config(M >= 2 * N + 1, "to_spectral: need at least 2N+1 samples");
    auto& cache = FftCache::instance();
    std::lock_guard<std::mutex> lock(cache.mutex);
    FftSlot& s = cache.slot(M);
    std::memcpy(s.in, samples.data(), sizeof(cplx) * std::size_t(M));
    fftw_execute(s.fwd);
    SpectralField f(N);
    const double scale = kSqrt2Pi / double(M);  // (1/sqrt(2pi)) * (2pi/M)
    const cplx* src = as_cplx(s.out);
    for (int n = -N; n <= N; ++n) {
        int bin = n >= 0 ? n : n + M;
        f.at(n) = scale * src[bin];
    }
    return f;
}

SpectralField to_spectral(const std::vector<double>& samples, int N) {
    std::vector<cplx> z(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) z[i] = samples[i];
    return to_spectral(z, N);
}

double physical_l2norm2(const std::vector<cplx>& samples) {
    double s = 0.0;
    for (const cplx& z : samples) s += std::norm(z);
    return s * kTwoPi / double(samples.size());
}

SpectralField convolve_exact(const SpectralField& f, const SpectralField& g, int out_N) {
    const int Nf = f.N(), Ng = g.N();
    require_config(out_N >= 0, "convolve_exact: bad output band");
    SpectralField out(out_N);
    // reverse g so each output mode is a contiguous complex dot product
    std::vector<cplx> grev(std::size_t(2 * Ng + 1), cplx{});
    for (int j = 0; j <= 2 * Ng; ++j) grev[std::size_t(j)] = g.at(Ng - j);
    const auto& K = kernels::table();
    for (int n = -out_N; n <= out_N; ++n) {
        int lo = std::max(-Nf, n - Ng);
        int hi = std::min(Nf, n + Ng);
        if (lo > hi) continue;
        // f index i = n1 + Nf; g(n - n1) = grev[i + Ng - n - Nf]
        int i0 = lo + Nf;
        int off = i0 + (Ng - n - Nf);
        out.at(n) = K.cdot(f.data() + i0, grev.data() + off, std::size_t(hi - lo + 1));
    }
    return out;
}

SpectralField convolve_exact3(const SpectralField& f, const SpectralField& g,
                              const SpectralField& h, int out_N) {
    SpectralField fg = convolve_exact(f, g, f.N() + g.N());
    return convolve_exact(fg, h, out_N);
}

void dft_forward(std::vector<cplx>& x) {
    const int M = int(x.size());
    require_config(M > 0, "dft_forward: empty input");
    auto& cache = FftCache::instance();
    std::lock_guard<std::mutex> lock(cache.mutex);
    FftSlot& s = cache.slot(M);
    std::memcpy(s.in, x.data(), sizeof(cplx) * std::size_t(M));
    fftw_execute(s.fwd);
    std::memcpy(x.data(), s.out, sizeof(cplx) * std::size_t(M));
}

int next_fast_size(int n) {
    for (int m = std::max(n, 1);; ++m) {
        int r = m;
        while (r % 2 == 0) r /= 2;
        while (r % 3 == 0) r /= 3;
        while (r % 5 == 0) r /= 5;
        if (r == 1) return m;
    }
}

namespace {

SpectralField product_on_grid(const std::vector<const SpectralField*>& fields, int out_N,
                              int pad_M);

}  // namespace

SpectralField product_padded(const std::vector<const SpectralField*>& fields, int out_N,
                             int pad_M) {
    require_config(!fields.empty(), "product_padded: no factors");
    int band_sum = 0;
    for (const SpectralField* f : fields) band_sum += f->N();
    const int min_M = band_sum + out_N + 1;
    if (pad_M == 0) pad_M = next_fast_size(min_M);
    require_config(pad_M >= min_M, "product_padded: pad size " + std::to_string(pad_M) +
                                       " is undersized (aliasing); need >= " +
                                       std::to_string(min_M));
    return product_on_grid(fields, out_N, pad_M);
}

SpectralField product_aliased(const std::vector<const SpectralField*>& fields, int out_N, int M) {
    require_config(!fields.empty(), "product_aliased: no factors");
    int max_band = 0;
    for (const SpectralField* f : fields) max_band = std::max(max_band, f->N());
    require_config(M >= 2 * max_band + 1 && M >= 2 * out_N + 1,
                   "product_aliased: grid cannot even hold the factors");
    return product_on_grid(fields, out_N, M);
}

namespace {

SpectralField product_on_grid(const std::vector<const SpectralField*>& fields, int out_N,
                              int pad_M) {
    auto& cache = FftCache::instance();
    std::lock_guard<std::mutex> lock(cache.mutex);
    FftSlot& s = cache.slot(pad_M);

    std::vector<cplx> acc{};
    acc.resize(std::size_t(pad_M));
    const auto& K = kernels::table();
    for (std::size_t k = 0; k < fields.size(); ++k) {
        scatter_modes(*fields[k], as_cplx(s.in), pad_M);
        fftw_execute(s.bwd);  // unnormalized samples of sum_n c_n e^{inx}
        if (k == 0)
            std::memcpy(acc.data(), s.out, sizeof(cplx) * std::size_t(pad_M));
        else
            K.cmul(acc.data(), acc.data(), as_cplx(s.out), std::size_t(pad_M));
    }
    std::memcpy(s.in, acc.data(), sizeof(cplx) * std::size_t(pad_M));
    fftw_execute(s.fwd);
    SpectralField out(out_N);
    const double scale = 1.0 / double(pad_M);
    const cplx* src = as_cplx(s.out);
    for (int n = -out_N; n <= out_N; ++n) {
        int bin = n >= 0 ? n : n + pad_M;
        out.at(n) = scale * src[bin];
    }
    return out;
}

}  // namespace

}  // namespace kdvlab
