#pragma once

#include <array>
#include <optional>
#include <string>

#include "gybe/complex_matrix.hpp"
#include "gybe/gybe.hpp"

namespace gybe {

/// A 2x2 diagonal matrix diag(p, q).
struct DiagBlock {
    Complex p{1.0};
    Complex q{1.0};

    static DiagBlock identity() { return {1.0, 1.0}; }
    /// Reads the diagonal of a 2x2 matrix; throws DomainError if an
    /// off-diagonal entry exceeds `tol` in modulus.
    static DiagBlock from_matrix(const ComplexMatrix& m, double tol = kExactTolerance);

    ComplexMatrix matrix() const { return ComplexMatrix::diagonal({p, q}); }
    DiagBlock dagger() const { return {std::conj(p), std::conj(q)}; }
    bool is_unitary(double tol = kExactTolerance) const;

    friend DiagBlock operator*(const DiagBlock& a, const DiagBlock& b) { return {a.p * b.p, a.q * b.q}; }
    friend DiagBlock operator*(Complex s, const DiagBlock& a) { return {s * a.p, s * a.q}; }
    friend DiagBlock operator-(const DiagBlock& a) { return {-a.p, -a.q}; }
};

double max_abs_diff(const DiagBlock& a, const DiagBlock& b);

/// R = X (+) Y with X = (1/sqrt2)[[A, B], [C, D]] and
/// Y = (1/sqrt2)[[Y1, Y2], [Y3, Y4]], all eight blocks diagonal.
/// X occupies rows/columns 0-3 of R, Y rows/columns 4-7.
struct BlockSolution {
    DiagBlock a, b, c, d;
    DiagBlock y1, y2, y3, y4;

    ComplexMatrix x_matrix() const;
    ComplexMatrix y_matrix() const;
    ComplexMatrix matrix() const;
    RMatrix to_rmatrix(std::string label = {}) const;

    /// Splits an 8x8 matrix; throws DomainError unless it is X (+) Y with
    /// (2x2)-diagonal X and Y.
    static BlockSolution from_matrix(const ComplexMatrix& r, double tol = kExactTolerance);

    /// X unitary and A, B, C, D unitary.
    bool x_diagonally_unitary(double tol = kExactTolerance) const;
};

double max_abs_diff(const BlockSolution& s, const BlockSolution& t);

/// Theta-family member; theta in [0, pi].
struct FamilyParams {
    int family = 1;
    double theta = 0.0;
    /// Checks the family index and clamps theta overshoot below 1e-9;
    /// throws DomainError otherwise.
    FamilyParams validated() const;
};

/// (alpha, beta) on the unit circle.
struct GeneralParams {
    int family = 1;
    Complex alpha{1.0};
    Complex beta{1.0};
    void validate() const;
};

/// (omega, gamma, delta) of the base solution of each family:
/// (i, i, 1), (i, 1, i), (1, 1, 1).
struct FamilyConstants {
    Complex omega, gamma, delta;
};
FamilyConstants family_constants(int family);

RMatrix rowell_solution();
RMatrix xshape_solution();

/// R(theta) of the three families, identical to general_solution(f, 1, e^{i theta}).
RMatrix family_solution(const FamilyParams& p);
RMatrix general_solution(const GeneralParams& p);
BlockSolution general_block_solution(const GeneralParams& p);
BlockSolution base_solution(int k);

/// Entrywise complex conjugate; the conjugate solutions of the families.
RMatrix conjugate_solution(const RMatrix& r);

/// C = -D B^dagger A, the lower-left block forced by unitarity of X.
DiagBlock derive_c(const DiagBlock& a, const DiagBlock& b, const DiagBlock& d);

/// Y1..Y4 in terms of (omega, gamma, delta, alpha, beta).
std::array<DiagBlock, 4> derive_y(Complex omega, Complex gamma, Complex delta, Complex alpha, Complex beta);

/// The eight block equations equivalent to the (2,3,1)-gYBE for X (+) Y.
/// Each residual is max-abs((LHS - sqrt2 * RHS) / 2), which is exactly the
/// matching block of L S L - S L S, so the overall residual coincides with
/// check_gybe(x (+) y).
CheckReport check_block_equations(const ComplexMatrix& x, const ComplexMatrix& y,
                                  Tolerance tol = Tolerance{kExactTolerance});

/// Residuals of the four gYBE-consistency equations followed by the six
/// unitarity equations for Y, in that order.
CheckReport check_param_constraints(Complex omega, Complex gamma, Complex delta,
                                    Tolerance tol = Tolerance{kExactTolerance});

enum class ParamCategory {
    None,
    A,  ///< omega = gamma = +-i, delta = 1
    B,  ///< omega = delta = +-i, gamma = 1
    C,  ///< omega = gamma = delta = 1
};
inline constexpr double kClassifyTolerance = 1e-9;
ParamCategory classify_unitary_params(Complex omega, Complex gamma, Complex delta,
                                      double tol = kClassifyTolerance);
std::string to_string(ParamCategory c);

struct Reduction {
    BlockSolution reduced;  ///< B replaced by I
    Complex alpha;
    Complex beta;
};

/// Conjugates X by diag(I, B) and Y by diag(I, conj(alpha) beta B) so the
/// B block becomes the identity. Throws DomainError unless X is
/// (2x2)-diagonally unitary.
Reduction reduce_to_b_identity(const BlockSolution& s);
/// Inverse of reduce_to_b_identity for the given B.
BlockSolution restore(const BlockSolution& reduced, const DiagBlock& b);

}  // namespace gybe
