// Scalar reference kernels and the runtime dispatch table.

#include "kdvlab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace kdvlab::kernels {

namespace {

cplx cdot_scalar(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
    }
    return {re, im};
}

double wnorm2_scalar(const double* w, const cplx* v, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = v[i].real(), im = v[i].imag();
        acc += w[i] * (re * re + im * im);
    }
    return acc;
}

void cmul_add_scalar(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

void cmul_scalar(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

const Table g_scalar{cdot_scalar, wnorm2_scalar, cmul_add_scalar, cmul_scalar};

std::atomic<const Table*> g_active{nullptr};
std::atomic<Backend> g_backend{Backend::Scalar};

const Table* pick_default() {
    const char* env = std::getenv("KDVLAB_KERNELS");
    if (env && std::strcmp(env, "scalar") == 0) return &g_scalar;
    if (env && std::strcmp(env, "avx2") == 0) {
        const Table* t = avx2_table();
        require_config(t && cpu_has_avx2(), "KDVLAB_KERNELS=avx2 but AVX2 is unavailable");
        g_backend.store(Backend::Avx2);
        return t;
    }
    const Table* t = avx2_table();
    if (t && cpu_has_avx2()) {
        g_backend.store(Backend::Avx2);
        return t;
    }
    return &g_scalar;
}

}  // namespace

const Table& scalar_table() { return g_scalar; }

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend active_backend() {
    table();  // force init
    return g_backend.load();
}

void set_backend(Backend b) {
    if (b == Backend::Scalar) {
        g_active.store(&g_scalar);
        g_backend.store(Backend::Scalar);
        return;
    }
    const Table* t = avx2_table();
    require_config(t != nullptr && cpu_has_avx2(), "AVX2 backend unavailable on this host");
    g_active.store(t);
    g_backend.store(Backend::Avx2);
}

const Table& table() {
    const Table* t = g_active.load(std::memory_order_acquire);
    if (!t) {
        t = pick_default();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

}  // namespace kdvlab::kernels
