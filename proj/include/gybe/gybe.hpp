#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gybe/complex_matrix.hpp"

namespace gybe {

/// Largest matrix side any check or representation will materialize.
inline constexpr std::size_t kMaxDenseSize = std::size_t{1} << 10;

/// Indexes the (d, m, l) generalized Yang-Baxter equation: R acts on
/// V^{(x) m} with dim V = d, and the two lifts are shifted by l factors.
struct GybeSignature {
    unsigned d = 2;
    unsigned m = 3;
    unsigned l = 1;

    /// Throws DomainError unless d, m, l are all positive.
    void validate() const;
    /// d^m, the side of a conforming R.
    std::size_t matrix_size() const;
    /// d^(m+l), the side of R (x) I^{(x) l}.
    std::size_t lifted_size() const;

    friend bool operator==(const GybeSignature&, const GybeSignature&) = default;
};

/// d^e, throwing DimensionError past kMaxDenseSize.
std::size_t checked_power(std::size_t d, std::size_t e);

std::string to_string(const GybeSignature& sig);

/// An invertible d^m x d^m matrix tagged with its signature and provenance.
class RMatrix {
public:
    /// Throws DimensionError on a size mismatch and SingularMatrixError when
    /// the matrix is not invertible at the pivot threshold.
    RMatrix(GybeSignature signature, ComplexMatrix matrix, std::string label = {});

    const GybeSignature& signature() const noexcept { return signature_; }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const std::string& label() const noexcept { return label_; }

    RMatrix with_label(std::string label) const;

private:
    GybeSignature signature_;
    ComplexMatrix matrix_;
    std::string label_;
};

struct CheckReport {
    double residual = 0.0;
    bool passed = false;
    double tolerance = 0.0;
    std::vector<double> detail;
    /// Set only by checks that can hold vacuously.
    std::optional<bool> vacuous;
};

/// Builds a report whose `passed` flag is derived from the residual.
CheckReport make_report(std::vector<double> detail, Tolerance tol);

/// Residual max-abs-entry(L S L - S L S) with L = R (x) I^{(x) l} and
/// S = I^{(x) l} (x) R.
CheckReport check_gybe(const RMatrix& r, Tolerance tol = Tolerance{kExactTolerance});

/// check_gybe specialised to (d, 2, 1); x must be d^2 x d^2.
CheckReport check_ybe(const ComplexMatrix& x, Tolerance tol = Tolerance{kExactTolerance});

/// Entrywise residual of the index-summation form of the YBE,
///   sum_{a,b,c} R^{ab}_{uv} R^{cz}_{bw} R^{xy}_{ac}
///     = sum_{m,n,p} R^{np}_{vw} R^{xm}_{un} R^{yz}_{mp},
/// where R(e_i (x) e_j) = sum R^{kl}_{ij} e_k (x) e_l. Cross-check only.
double ybe_summation_residual(const ComplexMatrix& x);

struct DoubleLiftReport {
    CheckReport ybe;      ///< check_ybe(x)
    CheckReport doubled;  ///< check_gybe(x (+) x) as a (2,3,1)-R-matrix
    bool agree() const noexcept { return ybe.passed == doubled.passed; }
};
DoubleLiftReport double_lift_check(const ComplexMatrix& x, Tolerance tol = Tolerance{kExactTolerance});

/// I^{(x) l(i-1)} (x) R (x) I^{(x) l(n-i-1)}, the image of sigma_i in B_n.
ComplexMatrix braid_generator_matrix(const RMatrix& r, unsigned strands, unsigned index);

/// Commutators of sigma_1 and sigma_j in B_{(j-1)l+2} for every j > 2 with
/// (j-1) l < m. Passes vacuously (residual 0, vacuous = true) when 2l >= m.
CheckReport check_far_commutativity(const RMatrix& r, Tolerance tol = Tolerance{kExactTolerance});

}  // namespace gybe
