// AVX2+FMA kernel variants. This TU is compiled with -mavx2 -mfma; everything
// else in the library must stay ISA-neutral so the dispatch decision is purely
// a runtime one.

#include "kdvlab/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace kdvlab::kernels {
namespace {

// [ar ai] x [br bi] pairs, two complex numbers per 256-bit lane group
inline __m256d cmul4(__m256d a, __m256d b) {
    __m256d b_re = _mm256_movedup_pd(b);        // [br0 br0 br1 br1]
    __m256d b_im = _mm256_permute_pd(b, 0xF);   // [bi0 bi0 bi1 bi1]
    __m256d a_sw = _mm256_permute_pd(a, 0x5);   // [ai0 ar0 ai1 ar1]
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

cplx cdot_avx2(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d av = _mm256_loadu_pd(pa + 2 * i);
        __m256d bv = _mm256_loadu_pd(pb + 2 * i);
        acc = _mm256_add_pd(acc, cmul4(av, bv));
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s = _mm_add_pd(lo, hi);  // [re im]
    double re = _mm_cvtsd_f64(s);
    double im = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
    }
    return {re, im};
}

double wnorm2_avx2(const double* w, const cplx* v, std::size_t n) {
    const double* pv = reinterpret_cast<const double*>(v);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vv = _mm256_loadu_pd(pv + 2 * i);
        __m128d wl = _mm_loadu_pd(w + i);
        __m256d w4 = _mm256_permute4x64_pd(_mm256_castpd128_pd256(wl), 0x50);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(vv, vv), w4, acc);
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s = _mm_add_pd(lo, hi);
    double out = _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
    for (; i < n; ++i) {
        const double re = v[i].real(), im = v[i].imag();
        out += w[i] * (re * re + im * im);
    }
    return out;
}

void cmul_add_avx2(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    double* po = reinterpret_cast<double*>(out);
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d av = _mm256_loadu_pd(pa + 2 * i);
        __m256d bv = _mm256_loadu_pd(pb + 2 * i);
        __m256d ov = _mm256_loadu_pd(po + 2 * i);
        _mm256_storeu_pd(po + 2 * i, _mm256_add_pd(ov, cmul4(av, bv)));
    }
    for (; i < n; ++i) out[i] += a[i] * b[i];
}

void cmul_avx2(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    double* po = reinterpret_cast<double*>(out);
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d av = _mm256_loadu_pd(pa + 2 * i);
        __m256d bv = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(po + 2 * i, cmul4(av, bv));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

const Table g_avx2{cdot_avx2, wnorm2_avx2, cmul_add_avx2, cmul_avx2};

}  // namespace

const Table* avx2_table() { return &g_avx2; }

}  // namespace kdvlab::kernels

#else

namespace kdvlab::kernels {
const Table* avx2_table() { return nullptr; }
}  // namespace kdvlab::kernels

#endif
