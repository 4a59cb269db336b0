#include "gybe/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace gybe {

Tolerance::Tolerance(double value) : value_(value) {
    if (!(value >= 0.0)) {
        throw DomainError("tolerance must be non-negative, got " + std::to_string(value));
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
        throw DimensionError("entry count " + std::to_string(entries_.size()) + " does not match " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionError("ragged matrix literal");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> diag) {
    return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::block(std::size_t row0, std::size_t col0, std::size_t rows,
                                   std::size_t cols) const {
    if (row0 + rows > rows_ || col0 + cols > cols_) throw DimensionError("block out of range");
    ComplexMatrix b(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) b(r, c) = (*this)(row0 + r, col0 + c);
    return b;
}

void ComplexMatrix::set_block(std::size_t row0, std::size_t col0, const ComplexMatrix& b) {
    if (row0 + b.rows() > rows_ || col0 + b.cols() > cols_) throw DimensionError("block out of range");
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) (*this)(row0 + r, col0 + c) = b(r, c);
}

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
    }
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (!m.is_square()) throw DimensionError(std::string(what) + ": matrix is not square");
}

}  // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "operator+");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "operator-");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& e : entries_) e *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matrix product: inner dimensions " + std::to_string(a.cols()) + " and " +
                             std::to_string(b.rows()) + " differ");
    }
    ComplexMatrix c(a.rows(), b.cols());
    const std::size_t n = b.cols();
    auto be = b.entries();
    auto ce = c.entries();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex* crow = ce.data() + i * n;
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            const Complex* brow = be.data() + k * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v) {
    if (a.cols() != v.size()) throw DimensionError("matrix-vector product: size mismatch");
    std::vector<Complex> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc{};
        for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * v[k];
        out[i] = acc;
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    }
    return out;
}

ComplexMatrix kron_power(const ComplexMatrix& a, unsigned power) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (unsigned p = 0; p < power; ++p) out = kron(out, a);
    return out;
}

ComplexMatrix direct_sum(const ComplexMatrix& x, const ComplexMatrix& y) {
    require_square(x, "direct_sum");
    require_square(y, "direct_sum");
    ComplexMatrix out(x.rows() + y.rows(), x.cols() + y.cols());
    out.set_block(0, 0, x);
    out.set_block(x.rows(), x.cols(), y);
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
    return out;
}

ComplexMatrix conjugate(const ComplexMatrix& m) {
    ComplexMatrix out = m;
    for (auto& e : out.entries()) e = std::conj(e);
    return out;
}

Complex trace(const ComplexMatrix& m) {
    require_square(m, "trace");
    Complex t{};
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

double max_abs(const ComplexMatrix& m) {
    double best = 0.0;
    for (const auto& e : m.entries()) best = std::max(best, std::abs(e));
    return best;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double best = 0.0;
    auto ae = a.entries();
    auto be = b.entries();
    for (std::size_t k = 0; k < ae.size(); ++k) best = std::max(best, std::abs(ae[k] - be[k]));
    return best;
}

double frobenius_norm_squared(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& e : m.entries()) s += std::norm(e);
    return s;
}

UnitarityReport is_unitary(const ComplexMatrix& m, Tolerance tol) {
    require_square(m, "is_unitary");
    const double residual = max_abs_diff(m * dagger(m), ComplexMatrix::identity(m.rows()));
    return {residual, tol.admits(residual)};
}

namespace {

// In-place LU with partial pivoting on a working copy. Returns the permutation
// sign; throws on a small pivot.
double lu_decompose(ComplexMatrix& a, std::vector<std::size_t>& perm, double pivot_threshold) {
    const std::size_t n = a.rows();
    perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    double sign = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best < pivot_threshold || best == 0.0) {
            throw SingularMatrixError("matrix is singular: pivot " + std::to_string(best) + " in column " +
                                      std::to_string(col));
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            std::swap(perm[col], perm[pivot]);
            sign = -sign;
        }
        const Complex inv_pivot = 1.0 / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex factor = a(r, col) * inv_pivot;
            a(r, col) = factor;
            if (factor == Complex{}) continue;
            for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= factor * a(col, c);
        }
    }
    return sign;
}

}  // namespace

ComplexMatrix inverse(const ComplexMatrix& m) {
    require_square(m, "inverse");
    const std::size_t n = m.rows();
    ComplexMatrix lu = m;
    std::vector<std::size_t> perm;
    lu_decompose(lu, perm, kPivotThreshold);

    ComplexMatrix inv(n, n);
    std::vector<Complex> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        // Solve L U x = P e_j.
        for (std::size_t i = 0; i < n; ++i) col[i] = perm[i] == j ? 1.0 : 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < i; ++k) col[i] -= lu(i, k) * col[k];
        for (std::size_t ii = n; ii-- > 0;) {
            for (std::size_t k = ii + 1; k < n; ++k) col[ii] -= lu(ii, k) * col[k];
            col[ii] /= lu(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

Complex determinant(const ComplexMatrix& m) {
    require_square(m, "determinant");
    ComplexMatrix lu = m;
    std::vector<std::size_t> perm;
    double sign = 0.0;
    try {
        sign = lu_decompose(lu, perm, 0.0);
    } catch (const SingularMatrixError&) {
        return Complex{};
    }
    Complex det = sign;
    for (std::size_t i = 0; i < m.rows(); ++i) det *= lu(i, i);
    return det;
}

}  // namespace gybe
