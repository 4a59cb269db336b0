#include "gybe/eigenvalues.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace gybe {

std::vector<Complex> characteristic_polynomial(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("characteristic_polynomial: matrix is not square");
    const std::size_t n = m.rows();
    if (n > kMaxEigenSize) {
        throw DimensionError("characteristic_polynomial: size " + std::to_string(n) + " exceeds " +
                             std::to_string(kMaxEigenSize));
    }
    std::vector<Complex> c(n + 1);
    c[n] = 1.0;
    // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k,  M_0 = 0.
    ComplexMatrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        ComplexMatrix next = m * mk;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        mk = std::move(next);
        c[n - k] = -trace(m * mk) / static_cast<double>(k);
    }
    return c;
}

Complex evaluate_polynomial(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc{};
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
    return acc;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Rounding-noise scale of a Horner evaluation at z.
double evaluation_noise(const std::vector<Complex>& coeffs, Complex z) {
    double acc = 0.0;
    const double r = std::abs(z);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * r + std::abs(coeffs[k]);
    return kEps * acc;
}

std::vector<Complex> derivative(const std::vector<Complex>& coeffs) {
    if (coeffs.size() <= 1) return {Complex{}};
    std::vector<Complex> d(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = coeffs[k] * static_cast<double>(k);
    return d;
}

// Fujiwara bound on the root moduli of a monic polynomial.
double root_bound(const std::vector<Complex>& c) {
    const std::size_t n = c.size() - 1;
    double bound = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        double a = std::abs(c[n - k]);
        if (k == n) a *= 0.5;
        bound = std::max(bound, std::pow(a, 1.0 / static_cast<double>(k)));
    }
    return 2.0 * bound;
}

}  // namespace

std::vector<Complex> polynomial_roots(const std::vector<Complex>& monic_coeffs, const RootFinderOptions& options) {
    if (monic_coeffs.empty()) throw DimensionError("polynomial_roots: empty coefficient list");
    const std::size_t n = monic_coeffs.size() - 1;
    if (n == 0) return {};
    std::vector<Complex> c = monic_coeffs;
    const Complex lead = c[n];
    if (lead == Complex{}) throw DomainError("polynomial_roots: leading coefficient is zero");
    for (auto& x : c) x /= lead;
    if (n == 1) return {-c[0]};

    const double bound = root_bound(c);
    if (bound == 0.0) return std::vector<Complex>(n, Complex{});

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);
    std::vector<Complex> z(n);
    const double radius = 0.5 * bound;
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        const Complex perturb(1.0 + 0.05 * jitter(rng), 0.05 * jitter(rng));
        z[k] = std::polar(radius, angle) * perturb;
    }

    bool converged = false;
    for (std::size_t it = 0; it < options.max_iterations && !converged; ++it) {
        double max_step = 0.0;
        double max_mod = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex denom = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            if (denom == Complex{}) {
                z[i] += Complex(1e-10 * radius, 1e-10 * radius);
                continue;
            }
            const Complex step = evaluate_polynomial(c, z[i]) / denom;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step));
            max_mod = std::max(max_mod, std::abs(z[i]));
        }
        bool backward_ok = true;
        for (std::size_t i = 0; i < n && backward_ok; ++i)
            backward_ok = std::abs(evaluate_polynomial(c, z[i])) <= 16.0 * evaluation_noise(c, z[i]);
        converged = backward_ok || max_step <= 4.0 * kEps * max_mod;
    }
    if (!converged) {
        throw ConvergenceError("Durand-Kerner iteration did not converge within " +
                               std::to_string(options.max_iterations) + " sweeps");
    }

    // Single-linkage clusters; a cluster whose centroid is a root to within
    // rounding noise is treated as one multiple root.
    const double link = 1e-3 * std::max(1.0, radius);
    std::vector<std::size_t> label(n);
    for (std::size_t i = 0; i < n; ++i) label[i] = i;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(z[i] - z[j]) > link) continue;
            const std::size_t from = label[j];
            const std::size_t to = label[i];
            if (from == to) continue;
            for (auto& l : label)
                if (l == from) l = to;
        }
    }
    const std::vector<Complex> dc = derivative(c);
    std::vector<Complex> roots = z;
    for (std::size_t root = 0; root < n; ++root) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i)
            if (label[i] == root) members.push_back(i);
        if (members.empty()) continue;
        if (members.size() == 1) {
            // Newton polish, kept only when it lowers |p|.
            Complex x = z[members[0]];
            for (int step = 0; step < 3; ++step) {
                const Complex d = evaluate_polynomial(dc, x);
                if (d == Complex{}) break;
                const Complex candidate = x - evaluate_polynomial(c, x) / d;
                if (std::abs(evaluate_polynomial(c, candidate)) >= std::abs(evaluate_polynomial(c, x))) break;
                x = candidate;
            }
            roots[members[0]] = x;
            continue;
        }
        Complex centroid{};
        for (auto i : members) centroid += z[i];
        centroid /= static_cast<double>(members.size());
        // A root of multiplicity k is a simple root of the (k-1)-th derivative.
        std::vector<Complex> dk = c;
        for (std::size_t k = 1; k < members.size(); ++k) dk = derivative(dk);
        const std::vector<Complex> dk1 = derivative(dk);
        Complex x = centroid;
        for (int step = 0; step < 50; ++step) {
            const Complex d = evaluate_polynomial(dk1, x);
            if (d == Complex{}) break;
            const Complex delta = evaluate_polynomial(dk, x) / d;
            x -= delta;
            if (std::abs(delta) <= 4.0 * kEps * std::max(1.0, std::abs(x))) break;
        }
        Complex pick = centroid;
        if (std::abs(x - centroid) <= link &&
            std::abs(evaluate_polynomial(c, x)) <= 100.0 * evaluation_noise(c, x)) {
            pick = x;
        }
        if (std::abs(evaluate_polynomial(c, pick)) <= 100.0 * evaluation_noise(c, pick)) {
            for (auto i : members) roots[i] = pick;
        }
    }
    return roots;
}

std::vector<Complex> eigenvalues(const ComplexMatrix& m, const RootFinderOptions& options) {
    auto roots = polynomial_roots(characteristic_polynomial(m), options);
    sort_multiset(roots);
    return roots;
}

void sort_multiset(std::vector<Complex>& values) {
    auto key = [](const Complex& z) {
        return std::pair{std::llround(z.real() * 1e6), std::llround(z.imag() * 1e6)};
    };
    std::stable_sort(values.begin(), values.end(),
                     [&](const Complex& a, const Complex& b) { return key(a) < key(b); });
}

double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::vector<Complex> sa = a;
    std::vector<Complex> sb = b;
    sort_multiset(sa);
    sort_multiset(sb);
    std::vector<bool> used(sb.size(), false);
    double worst = 0.0;
    for (const auto& x : sa) {
        std::size_t best_j = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < sb.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(x - sb[j]);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        used[best_j] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace gybe
