#include "ckg/matrix.hpp"

#include <cmath>
#include <string>

#include "ckg/errors.hpp"
#include "ckg/kernels.hpp"

namespace ckg {

namespace {

std::string shape(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(what) + ": " + shape(a.rows(), a.cols()) + " vs " +
                                shape(b.rows(), b.cols()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
        throw DimensionMismatch("matrix " + shape(rows, cols) + " given " +
                                std::to_string(entries_.size()) + " entries");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> diag) {
    CVector d(diag.begin(), diag.end());
    return diagonal(std::span<const cplx>(d));
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<cplx> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionMismatch("from_rows: ragged rows");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return {r, c, std::move(entries)};
}

ComplexMatrix ComplexMatrix::column(std::span<const cplx> v) {
    return {v.size(), 1, std::vector<cplx>(v.begin(), v.end())};
}

CVector ComplexMatrix::col(std::size_t j) const {
    CVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

ComplexMatrix ComplexMatrix::row_block(std::size_t first, std::size_t count) const {
    if (first + count > rows_) throw DimensionMismatch("row_block out of range");
    const auto begin = entries_.begin() + static_cast<std::ptrdiff_t>(first * cols_);
    return {count, cols_,
            std::vector<cplx>(begin, begin + static_cast<std::ptrdiff_t>(count * cols_))};
}

bool ComplexMatrix::all_finite() const noexcept {
    for (const cplx& z : entries_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "matrix +");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "matrix -");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) noexcept {
    for (cplx& z : entries_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("matrix product: " + shape(a.rows(), a.cols()) + " * " +
                                shape(b.rows(), b.cols()));
    }
    ComplexMatrix c(a.rows(), b.cols());
    kernels::active().gemm_acc(a.entries().data(), b.entries().data(), c.entries().data(),
                               a.rows(), a.cols(), b.cols());
    return c;
}

CVector operator*(const ComplexMatrix& a, std::span<const cplx> v) {
    if (a.cols() != v.size()) {
        throw DimensionMismatch("matrix-vector product: " + shape(a.rows(), a.cols()) +
                                " * vector of length " + std::to_string(v.size()));
    }
    CVector out(a.rows());
    kernels::active().gemm_acc(a.entries().data(), v.data(), out.data(), a.rows(), a.cols(), 1);
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    }
    return out;
}

ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b) {
    return adjoint(a) * b;
}

ComplexMatrix hstack(std::span<const ComplexMatrix> blocks) {
    if (blocks.empty()) return {};
    const std::size_t rows = blocks.front().rows();
    std::size_t cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows) throw DimensionMismatch("hstack: row counts differ");
        cols += b.cols();
    }
    ComplexMatrix out(rows, cols);
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, offset + j) = b(i, j);
        }
        offset += b.cols();
    }
    return out;
}

double frobenius_norm(const ComplexMatrix& m) {
    double sum = 0.0;
    for (const cplx& z : m.entries()) sum += std::norm(z);
    return std::sqrt(sum);
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("hermitian_part: matrix is not square");
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            const cplx z = 0.5 * (m(i, j) + std::conj(m(j, i)));
            out(i, j) = z;
            out(j, i) = std::conj(z);
        }
    }
    return out;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) throw DimensionMismatch("inner product: lengths differ");
    return kernels::active().dot(a.data(), b.data(), a.size());
}

double norm(std::span<const cplx> v) {
    double sum = 0.0;
    for (const cplx& z : v) sum += std::norm(z);
    return std::sqrt(sum);
}

CVector add(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector +: lengths differ");
    CVector out(a.begin(), a.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

CVector subtract(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector -: lengths differ");
    CVector out(a.begin(), a.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

CVector scaled(std::span<const cplx> v, cplx s) {
    CVector out(v.begin(), v.end());
    for (cplx& z : out) z *= s;
    return out;
}

CVector basis_vector(std::size_t n, std::size_t k) {
    CVector e(n);
    if (k >= n) throw DimensionMismatch("basis_vector: index out of range");
    e[k] = 1.0;
    return e;
}

}  // namespace ckg
