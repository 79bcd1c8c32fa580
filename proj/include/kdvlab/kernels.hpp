// kdvlab: arithmetic kernels with runtime-dispatched SIMD variants.
//
// Scalar implementations are the reference; the AVX2+FMA variants live in a
// separate translation unit compiled with -mavx2 and are selected at startup
// when the CPU supports them. Override with KDVLAB_KERNELS=scalar|avx2 or
// set_backend(). Equivalence of the two paths is covered by tests.
#pragma once

#include <cstddef>

#include "kdvlab/common.hpp"

namespace kdvlab::kernels {

enum class Backend { Scalar, Avx2 };

struct Table {
    // sum_i a[i] * b[i]  (no conjugation)
    cplx (*cdot)(const cplx* a, const cplx* b, std::size_t n);
    // sum_i w[i] * |v[i]|^2
    double (*wnorm2)(const double* w, const cplx* v, std::size_t n);
    // out[i] += a[i] * b[i]
    void (*cmul_add)(cplx* out, const cplx* a, const cplx* b, std::size_t n);
    // out[i] = a[i] * b[i]
    void (*cmul)(cplx* out, const cplx* a, const cplx* b, std::size_t n);
};

const Table& scalar_table();
const Table* avx2_table();  // nullptr if not compiled in
bool cpu_has_avx2();

Backend active_backend();
void set_backend(Backend b);  // throws config_error if unavailable
const Table& table();

}  // namespace kdvlab::kernels
