#include "ckg/kernels.hpp"

namespace ckg::kernels {
namespace {

cplx dot_scalar(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ai * br - ar * bi;
    }
    return {re, im};
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
    }
}

void gemm_acc_scalar(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k,
                     std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const cplx aip = a[i * k + p];
            if (aip == cplx{}) continue;
            axpy_scalar(aip, b + p * n, crow, n);
        }
    }
}

constexpr KernelTable kScalar{"scalar", &dot_scalar, &axpy_scalar, &gemm_acc_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace ckg::kernels
