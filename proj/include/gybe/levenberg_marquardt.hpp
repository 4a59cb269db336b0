#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gybe {

/// Fills `out` with the residual vector at `x`. The residual length must not
/// change between calls.
using ResidualFunction = std::function<void(std::span<const double> x, std::vector<double>& out)>;

struct LevenbergOptions {
    std::size_t max_iterations = 500;
    /// Stop once the objective (sum of squared residuals) is at or below this.
    double objective_target = 1e-22;
    double min_step = 1e-15;
    double initial_damping = 1e-3;
    double jacobian_step = 1e-7;
};

struct LevenbergResult {
    std::vector<double> x;
    double objective = 0.0;
    /// Objective at the start and after every accepted step; non-increasing.
    std::vector<double> trace;
    std::size_t iterations = 0;
    bool reached_target = false;
};

/// Damped Gauss-Newton on sum_i r_i(x)^2 with a central-difference Jacobian.
/// Damping is multiplied by 10 on a rejected step and divided by 3 on an
/// accepted one; only improving steps are taken.
LevenbergResult levenberg_marquardt(const ResidualFunction& f, std::vector<double> x0,
                                    const LevenbergOptions& options = {});

}  // namespace gybe
