#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gybe/complex_matrix.hpp"
#include "gybe/gybe.hpp"

namespace gybe {

/// Which entries of a size x size matrix may be nonzero.
class ZeroPattern {
public:
    /// `mask` is row-major with size * size entries; throws DimensionError.
    ZeroPattern(std::size_t size, std::vector<bool> mask);
    /// Nonzero positions of `m` (|entry| > tol).
    static ZeroPattern from_matrix(const ComplexMatrix& m, double tol = 1e-12);
    static ZeroPattern full(std::size_t size);
    static ZeroPattern diagonal(std::size_t size);

    std::size_t size() const noexcept { return size_; }
    bool allows(std::size_t r, std::size_t c) const { return mask_[r * size_ + c]; }
    const std::vector<bool>& mask() const noexcept { return mask_; }
    std::size_t free_entries() const;
    std::size_t row_count(std::size_t r) const;

    friend bool operator==(const ZeroPattern&, const ZeroPattern&) = default;

private:
    std::size_t size_;
    std::vector<bool> mask_;
};

/// Nonzero pattern of the Rowell solution.
ZeroPattern rowell_pattern();
/// Two diagonal 4x4 halves X (+) Y, everything inside allowed.
ZeroPattern block_pattern();

enum class Parameterization {
    FreeComplex,  ///< real and imaginary part of every allowed entry
    UnitModulus,  ///< phases only; modulus 1/sqrt(allowed entries in the row)
};
std::string to_string(Parameterization p);
Parameterization parse_parameterization(std::string_view text);

struct SearchConfig {
    double tolerance = kSearchTolerance;
    unsigned restarts = 64;
    std::uint64_t seed = 2024;
    std::size_t max_iterations = 400;
    Parameterization parameterization = Parameterization::FreeComplex;
    /// Starting point of restart 0; the other restarts start at random.
    std::optional<ComplexMatrix> initial;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;

    /// Throws DomainError on a non-positive tolerance or zero restarts.
    void validate() const;
};

/// Sum of |LSL - SLS|^2 over entries plus sum of |R R^dagger - I|^2.
/// Throws DomainError when `candidate` has a nonzero outside the pattern.
double gybe_objective(const ComplexMatrix& candidate, const ZeroPattern& pattern, const GybeSignature& sig);

/// Conjugacy-class fingerprint used to collapse duplicate solutions: the
/// eigenvalues of the X and Y halves (or of the whole matrix when it is not
/// block diagonal) after removing the global phase, and the X(1,3)/X(0,2)
/// ratio when it is defined.
struct DedupKey {
    std::vector<std::vector<Complex>> spectra;
    std::optional<Complex> ratio;
};
DedupKey dedup_key(const ComplexMatrix& m);
bool same_class(const DedupKey& a, const DedupKey& b, double tol = 1e-6);

struct FoundSolution {
    RMatrix r;
    double residual;  ///< square root of the objective
    unsigned restart;
    DedupKey key;
};

class Deduplicator {
public:
    /// Returns false and keeps nothing when an equivalent key is present.
    bool insert(FoundSolution s);
    const std::vector<FoundSolution>& solutions() const noexcept { return solutions_; }
    std::size_t duplicates() const noexcept { return duplicates_; }

private:
    std::vector<FoundSolution> solutions_;
    std::size_t duplicates_ = 0;
};

struct SearchResult {
    std::vector<FoundSolution> solutions;
    /// Objective after every accepted step, per restart.
    std::vector<std::vector<double>> traces;
    double best_objective = 0.0;
    /// Restarts that reached the target and passed certification.
    std::size_t certified = 0;
    /// Certified solutions dropped as duplicates.
    std::size_t duplicates = 0;
};

/// Independent Levenberg-Marquardt runs from random starts. Deterministic
/// in the config regardless of the thread count. Throws DimensionError when
/// the pattern size differs from d^m or exceeds 16.
SearchResult solve_pattern(const ZeroPattern& pattern, const GybeSignature& sig, const SearchConfig& config);

}  // namespace gybe
