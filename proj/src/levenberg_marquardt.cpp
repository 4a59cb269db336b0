#include "gybe/levenberg_marquardt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace gybe {

namespace {

double sum_of_squares(const std::vector<double>& r) {
    return std::inner_product(r.begin(), r.end(), r.begin(), 0.0);
}

// Solves the symmetric positive definite system a x = b in place by Cholesky.
// Returns nullopt when a is not numerically positive definite.
std::optional<std::vector<double>> cholesky_solve(std::vector<double> a, std::vector<double> b, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) diag -= a[j * n + k] * a[j * n + k];
        if (!(diag > 0.0)) return std::nullopt;
        const double root = std::sqrt(diag);
        a[j * n + j] = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = v / root;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double v = b[i];
        for (std::size_t k = 0; k < i; ++k) v -= a[i * n + k] * b[k];
        b[i] = v / a[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double v = b[i];
        for (std::size_t k = i + 1; k < n; ++k) v -= a[k * n + i] * b[k];
        b[i] = v / a[i * n + i];
    }
    return b;
}

}  // namespace

LevenbergResult levenberg_marquardt(const ResidualFunction& f, std::vector<double> x0,
                                    const LevenbergOptions& options) {
    const std::size_t n = x0.size();
    LevenbergResult result;
    result.x = std::move(x0);

    std::vector<double> r;
    f(result.x, r);
    const std::size_t m = r.size();
    result.objective = sum_of_squares(r);
    result.trace.push_back(result.objective);

    std::vector<double> jac(m * n);  // column-major: column k is d r / d x_k
    std::vector<double> plus, minus, trial_r;
    std::vector<double> jtj(n * n), jtr(n);
    double damping = options.initial_damping;

    while (result.iterations < options.max_iterations && result.objective > options.objective_target) {
        ++result.iterations;
        std::vector<double> probe = result.x;
        for (std::size_t k = 0; k < n; ++k) {
            const double h = options.jacobian_step * std::max(1.0, std::abs(result.x[k]));
            probe[k] = result.x[k] + h;
            f(probe, plus);
            probe[k] = result.x[k] - h;
            f(probe, minus);
            probe[k] = result.x[k];
            for (std::size_t i = 0; i < m; ++i) jac[k * m + i] = (plus[i] - minus[i]) / (2.0 * h);
        }
        for (std::size_t a = 0; a < n; ++a) {
            const double* ca = &jac[a * m];
            jtr[a] = std::inner_product(ca, ca + m, r.begin(), 0.0);
            for (std::size_t b = a; b < n; ++b) {
                const double v = std::inner_product(ca, ca + m, &jac[b * m], 0.0);
                jtj[a * n + b] = v;
                jtj[b * n + a] = v;
            }
        }

        bool accepted = false;
        double step_norm = 0.0;
        while (!accepted && damping <= 1e20) {
            std::vector<double> lhs = jtj;
            for (std::size_t a = 0; a < n; ++a) lhs[a * n + a] += damping;
            std::vector<double> rhs(n);
            for (std::size_t a = 0; a < n; ++a) rhs[a] = -jtr[a];
            const auto step = cholesky_solve(std::move(lhs), std::move(rhs), n);
            if (!step) {
                damping *= 10.0;
                continue;
            }
            std::vector<double> trial = result.x;
            step_norm = 0.0;
            for (std::size_t a = 0; a < n; ++a) {
                trial[a] += (*step)[a];
                step_norm += (*step)[a] * (*step)[a];
            }
            step_norm = std::sqrt(step_norm);
            f(trial, trial_r);
            const double trial_objective = sum_of_squares(trial_r);
            if (trial_objective < result.objective) {
                result.x = std::move(trial);
                r.swap(trial_r);
                result.objective = trial_objective;
                result.trace.push_back(trial_objective);
                damping = std::max(damping / 3.0, 1e-15);
                accepted = true;
            } else {
                damping *= 10.0;
                if (step_norm <= options.min_step) break;
            }
        }
        if (!accepted || step_norm <= options.min_step) break;
    }
    result.reached_target = result.objective <= options.objective_target;
    return result;
}

}  // namespace gybe
