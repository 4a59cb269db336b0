#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "gybe/errors.hpp"

namespace gybe {

using Complex = std::complex<double>;

/// Non-negative threshold on the max-abs entry norm.
class Tolerance {
public:
    constexpr Tolerance() = default;
    explicit Tolerance(double value);

    constexpr double value() const noexcept { return value_; }
    bool admits(double residual) const noexcept { return residual <= value_; }

private:
    double value_ = 1e-12;
};

/// Verification threshold for exact (analytically constructed) matrices.
inline constexpr double kExactTolerance = 1e-12;
/// Precision targeted by numerical search.
inline constexpr double kSearchTolerance = 1e-11;
/// Partial-pivoting threshold below which a matrix counts as singular.
inline constexpr double kPivotThreshold = 1e-13;

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    static ComplexMatrix diagonal(std::initializer_list<Complex> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return entries_.empty(); }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const Complex> entries() const noexcept { return entries_; }
    std::span<Complex> entries() noexcept { return entries_; }

    /// Copy of the rows x cols sub-block starting at (row0, col0).
    ComplexMatrix block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;
    void set_block(std::size_t row0, std::size_t col0, const ComplexMatrix& b);

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
/// Matrix product. Zero entries of the left factor are skipped, which makes
/// products with Kronecker-padded generators cheap.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v);

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// kron(a, a, ..., a) with `power` factors; power 0 gives the 1x1 identity.
ComplexMatrix kron_power(const ComplexMatrix& a, unsigned power);
/// Block-diagonal matrix with x upper-left and y lower-right.
ComplexMatrix direct_sum(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix dagger(const ComplexMatrix& m);
ComplexMatrix conjugate(const ComplexMatrix& m);
Complex trace(const ComplexMatrix& m);

/// Chebyshev norm on entries.
double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm_squared(const ComplexMatrix& m);

struct UnitarityReport {
    double residual = 0.0;  ///< max-abs-entry(M M^dagger - I)
    bool unitary = false;
};
UnitarityReport is_unitary(const ComplexMatrix& m, Tolerance tol = Tolerance{kExactTolerance});

/// Gaussian elimination with partial pivoting. Throws SingularMatrixError
/// when a pivot modulus falls below kPivotThreshold.
ComplexMatrix inverse(const ComplexMatrix& m);
Complex determinant(const ComplexMatrix& m);

}  // namespace gybe
