#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gybe/complex_matrix.hpp"
#include "gybe/gybe.hpp"

namespace gybe {

/// Word in the generators of B_n; letter i stands for sigma_i and -i for
/// its inverse.
struct BraidWord {
    unsigned strands = 2;
    std::vector<int> letters;

    /// Throws DomainError when n < 2 or a letter is 0 or exceeds n - 1.
    void validate() const;
};

/// Parses "n=<strands>: <i>,<j>,..." (the letter list may be empty).
BraidWord parse_braid_word(std::string_view text);
std::string to_string(const BraidWord& w);

/// Unit-norm vector of amplitudes.
class StateVector {
public:
    /// Throws DomainError unless the squared moduli sum to 1 within `tol`.
    explicit StateVector(std::vector<Complex> amplitudes, double tol = 1e-10);
    static StateVector basis(std::size_t dim, std::size_t index);

    const std::vector<Complex>& amplitudes() const noexcept { return amplitudes_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }
    double norm() const;

private:
    std::vector<Complex> amplitudes_;
};

struct GateMatch {
    unsigned index = 0;
    Complex lambda;
};

/// The representation sigma_i -> I^{(x) l(i-1)} (x) R (x) I^{(x) l(n-i-1)} of
/// B_n on d^{m+(n-2)l} dimensions. Immutable after construction.
///
/// A word w1 w2 ... wk evaluates to rho(w1) rho(w2) ... rho(wk), so the
/// rightmost letter acts on a state first.
class BraidRep {
public:
    /// Builds the n - 1 generators and checks every braid relation and every
    /// commuting pair |i - j| >= 2 against `tol`. Throws RepresentationError
    /// on the first violation and DimensionError past the dense size cap.
    static BraidRep build(const RMatrix& r, unsigned strands, Tolerance tol = Tolerance{kExactTolerance});

    const RMatrix& r_matrix() const noexcept { return r_; }
    unsigned strands() const noexcept { return strands_; }
    std::size_t dim() const noexcept { return dim_; }
    bool unitary() const noexcept { return unitary_; }

    /// rho(sigma_i), 1 <= i <= n - 1.
    const ComplexMatrix& generator(unsigned i) const;
    /// rho(sigma_i)^{-1}: the conjugate transpose when R is unitary.
    const ComplexMatrix& inverse_generator(unsigned i) const;

    ComplexMatrix evaluate(const BraidWord& w) const;
    StateVector apply(const BraidWord& w, const StateVector& s) const;

    /// (i, lambda) with u = lambda rho(sigma_i) entrywise within tol, where
    /// lambda is read off the largest-modulus entry of u.
    std::optional<GateMatch> recognize_gate(const ComplexMatrix& u, Tolerance tol = Tolerance{kExactTolerance}) const;

private:
    BraidRep(RMatrix r, unsigned strands) : r_(std::move(r)), strands_(strands) {}

    RMatrix r_;
    unsigned strands_;
    std::size_t dim_ = 0;
    bool unitary_ = false;
    std::vector<ComplexMatrix> generators_;
    std::vector<ComplexMatrix> inverses_;
};

}  // namespace gybe
