#pragma once

#include <cstddef>
#include <vector>

#include "gybe/complex_matrix.hpp"

namespace gybe {

/// Largest side length accepted by the characteristic-polynomial eigensolver.
inline constexpr std::size_t kMaxEigenSize = 16;

/// Coefficients c[0..n] of det(lambda I - m) = sum_k c[k] lambda^k, so
/// c[n] == 1. Computed by the Faddeev-LeVerrier recurrence.
std::vector<Complex> characteristic_polynomial(const ComplexMatrix& m);

/// Horner evaluation of sum_k coeffs[k] z^k.
Complex evaluate_polynomial(const std::vector<Complex>& coeffs, Complex z);

struct RootFinderOptions {
    std::size_t max_iterations = 20000;
    /// Seed of the deterministic perturbation applied to the starting points.
    unsigned long long seed = 0x9e3779b97f4a7c15ULL;
};

/// All roots of a monic polynomial with multiplicity (Durand-Kerner).
/// Clusters that behave like a multiple root are replaced by their centroid,
/// which is far better conditioned than the individual iterates.
/// Throws ConvergenceError when the iteration stalls.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& monic_coeffs,
                                      const RootFinderOptions& options = {});

/// Eigenvalues with multiplicity, for square matrices up to kMaxEigenSize.
std::vector<Complex> eigenvalues(const ComplexMatrix& m, const RootFinderOptions& options = {});

/// Canonical multiset order: by real part, then imaginary part, each rounded
/// to a 1e-6 grid.
void sort_multiset(std::vector<Complex>& values);

/// Largest pairing distance between two multisets of equal size, pairing
/// each element of `a` greedily with its nearest unused element of `b`.
/// Returns +infinity for multisets of different size.
double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace gybe
