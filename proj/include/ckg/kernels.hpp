#pragma once

// Inner-loop kernels for dense complex arithmetic.
//
// Every kernel has a portable scalar reference implementation. On x86-64 an
// AVX2/FMA variant is compiled separately and selected once at startup when
// the CPU supports it. Set CKG_KERNELS=scalar (or =avx2) in the environment
// to force a variant; the choice is fixed for the lifetime of the process.

#include <complex>
#include <cstddef>
#include <span>

namespace ckg::kernels {

using cplx = std::complex<double>;

struct KernelTable {
    const char* name;
    // sum_i a[i] * conj(b[i])
    cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
    // y += alpha * x
    void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    // C (m x n) += A (m x k) * B (k x n), all row-major and contiguous
    void (*gemm_acc)(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k,
                     std::size_t n);
};

const KernelTable& scalar_table() noexcept;

// nullptr when the AVX2 variant was not compiled into this build.
const KernelTable* avx2_table() noexcept;

bool cpu_supports_avx2() noexcept;

// The table used by the rest of the library.
const KernelTable& active() noexcept;

inline cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
    return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace ckg::kernels
