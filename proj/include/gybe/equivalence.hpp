#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gybe/block_solutions.hpp"
#include "gybe/complex_matrix.hpp"
#include "gybe/gybe.hpp"

namespace gybe {

/// R -> lambda R, lambda != 0.
struct ScalarOp {
    Complex lambda;
};
/// R -> R^{-1}.
struct InverseOp {};
/// R -> (Q^{-1})^{(x) m} R Q^{(x) m} for an invertible 2x2 Q.
struct LocalConjOp {
    ComplexMatrix q;
};
using GaugeOp = std::variant<ScalarOp, InverseOp, LocalConjOp>;

/// Throws DomainError for a zero scalar or a Q that is not 2x2 and
/// SingularMatrixError for a singular Q. Local conjugation needs d = 2.
RMatrix apply_gauge(const RMatrix& r, const GaugeOp& op);

struct EquivalenceWitness {
    std::vector<GaugeOp> ops;
    std::string source;
    std::string target;
    /// max-abs difference between the transformed source and the target.
    double residual = 0.0;
};

/// Applies ops in order.
RMatrix apply_witness(const RMatrix& source, const std::vector<GaugeOp>& ops);

struct ConjugacyInvariants {
    std::vector<Complex> eigenvalues;               ///< sorted multiset
    std::vector<Complex> characteristic_polynomial;  ///< c[0..n], monic
};
ConjugacyInvariants conjugacy_invariants(const ComplexMatrix& m);
/// Max of the eigenvalue multiset distance and the coefficient difference.
double invariant_distance(const ConjugacyInvariants& a, const ConjugacyInvariants& b);

inline constexpr double kWitnessTolerance = 1e-9;

/// beta/alpha == beta'/alpha' within 1e-9. Throws DomainError when the two
/// parameter sets belong to different families.
bool is_locally_conjugate_params(const GeneralParams& p, const GeneralParams& q);

enum class ConjugatorShape { Diagonal, Antidiagonal, General };
std::string to_string(ConjugatorShape shape);
/// "diagonal", "antidiagonal" or "general"; throws ParseError.
ConjugatorShape parse_conjugator_shape(std::string_view text);

struct ConjugatorSearchOptions {
    /// General shapes are searched heuristically; diagonal and antidiagonal
    /// are the shapes that occur for the block families.
    std::vector<ConjugatorShape> shapes{ConjugatorShape::Diagonal, ConjugatorShape::Antidiagonal};
    unsigned restarts = 8;
    std::uint64_t seed = 1;
    std::size_t max_iterations = 200;
    double tolerance = kWitnessTolerance;
};

struct ConjugatorMatch {
    ComplexMatrix q;
    /// max-abs(apply_gauge(r, local_conj q) - s)
    double residual = 0.0;
};

/// Solves (Q (x) ... (x) Q) s = r (Q (x) ... (x) Q) by damped least squares
/// over the allowed shapes, with one entry of Q fixed to 1. Returns the
/// best Q whose residual is within tolerance, or nothing. Throws
/// DimensionError when r and s have different signatures.
std::optional<ConjugatorMatch> search_local_conjugation(const RMatrix& r, const RMatrix& s,
                                                        const ConjugatorSearchOptions& options = {});

struct EquivalenceOptions {
    ConjugatorSearchOptions conjugator;
    bool allow_inverse = true;
};

/// Looks for target = lambda (Q^{-1})^{(x) m} R' Q^{(x) m} with R' the
/// source or, failing that and if allowed, its inverse. The witness lists
/// [inverse,] local_conj(Q), scalar(lambda).
std::optional<EquivalenceWitness> find_equivalence(const RMatrix& source, const RMatrix& target,
                                                   const EquivalenceOptions& options = {});

}  // namespace gybe
