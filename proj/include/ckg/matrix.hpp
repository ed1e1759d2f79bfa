#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ckg {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Dense complex matrix, row-major. Represents an operator C^cols -> C^rows.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    // Throws DimensionMismatch unless entries.size() == rows * cols.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const cplx> diag);
    static ComplexMatrix diagonal(std::initializer_list<double> diag);
    // Throws DimensionMismatch on ragged rows.
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
    // n x 1 column holding v.
    static ComplexMatrix column(std::span<const cplx> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return entries_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<const cplx> entries() const noexcept { return entries_; }
    std::span<cplx> entries() noexcept { return entries_; }
    std::span<const cplx> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
    std::span<cplx> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
    CVector col(std::size_t j) const;

    // Rows [first, first + count) as a new matrix.
    ComplexMatrix row_block(std::size_t first, std::size_t count) const;

    bool all_finite() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx s) noexcept;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
CVector operator*(const ComplexMatrix& a, std::span<const cplx> v);

// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& m);

// adjoint(a) * b without materializing the adjoint of a.
ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b);

// Places the blocks side by side; all must share a row count.
ComplexMatrix hstack(std::span<const ComplexMatrix> blocks);

double frobenius_norm(const ComplexMatrix& m);

// (m + m*) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& m);

// ---- vectors -------------------------------------------------------------

// <a, b> = sum a_i conj(b_i): linear in the first slot.
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double norm(std::span<const cplx> v);
CVector add(std::span<const cplx> a, std::span<const cplx> b);
CVector subtract(std::span<const cplx> a, std::span<const cplx> b);
CVector scaled(std::span<const cplx> v, cplx s);
CVector basis_vector(std::size_t n, std::size_t k);

}  // namespace ckg
