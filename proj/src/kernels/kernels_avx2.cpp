// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "ckg/kernels.hpp"

namespace ckg::kernels {
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline const double* as_doubles(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

// alpha * v for a broadcast complex alpha = (ar, ai).
inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d v) {
    const __m256d swapped = _mm256_permute_pd(v, 0b0101);
    return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swapped));
}

cplx dot_avx2(const cplx* a, const cplx* b, std::size_t n) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(as_doubles(a + i));
        const __m256d vb = _mm256_loadu_pd(as_doubles(b + i));
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);
        acc_im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc_im);
    }
    alignas(32) double re_lanes[4];
    alignas(32) double im_lanes[4];
    _mm256_store_pd(re_lanes, acc_re);
    _mm256_store_pd(im_lanes, acc_im);
    // acc_re lanes hold ar*br, ai*bi; acc_im lanes hold ar*bi, ai*br
    double re = (re_lanes[0] + re_lanes[2]) + (re_lanes[1] + re_lanes[3]);
    double im = (im_lanes[1] + im_lanes[3]) - (im_lanes[0] + im_lanes[2]);
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ai * br - ar * bi;
    }
    return {re, im};
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(as_doubles(x + i));
        const __m256d vy = _mm256_loadu_pd(as_doubles(y + i));
        _mm256_storeu_pd(as_doubles(y + i), _mm256_add_pd(vy, cmul_broadcast(ar, ai, vx)));
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + (alpha.real() * xr - alpha.imag() * xi),
                y[i].imag() + (alpha.real() * xi + alpha.imag() * xr)};
    }
}

void gemm_acc_avx2(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k,
                   std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const cplx aip = a[i * k + p];
            if (aip == cplx{}) continue;
            axpy_avx2(aip, b + p * n, crow, n);
        }
    }
}

constexpr KernelTable kAvx2{"avx2", &dot_avx2, &axpy_avx2, &gemm_acc_avx2};

}  // namespace

namespace detail {
const KernelTable* avx2_table_impl() noexcept { return &kAvx2; }
}  // namespace detail

}  // namespace ckg::kernels
