#include "gybe/gybe.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace gybe {

void GybeSignature::validate() const {
    if (d == 0 || m == 0 || l == 0) {
        throw DomainError("signature entries must be positive, got " + to_string(*this));
    }
}

std::size_t checked_power(std::size_t d, std::size_t e) {
    std::size_t out = 1;
    for (std::size_t k = 0; k < e; ++k) {
        out *= d;
        if (out > kMaxDenseSize) {
            throw DimensionError(std::to_string(d) + "^" + std::to_string(e) + " exceeds the dense size cap " +
                                 std::to_string(kMaxDenseSize));
        }
    }
    return out;
}

std::size_t GybeSignature::matrix_size() const { return checked_power(d, m); }
std::size_t GybeSignature::lifted_size() const { return checked_power(d, m + l); }

std::string to_string(const GybeSignature& sig) {
    return "(" + std::to_string(sig.d) + "," + std::to_string(sig.m) + "," + std::to_string(sig.l) + ")";
}

RMatrix::RMatrix(GybeSignature signature, ComplexMatrix matrix, std::string label)
    : signature_(signature), matrix_(std::move(matrix)), label_(std::move(label)) {
    signature_.validate();
    const std::size_t n = signature_.matrix_size();
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw DimensionError("signature " + to_string(signature_) + " needs a " + std::to_string(n) + "x" +
                             std::to_string(n) + " matrix, got " + std::to_string(matrix_.rows()) + "x" +
                             std::to_string(matrix_.cols()));
    }
    (void)inverse(matrix_);
}

RMatrix RMatrix::with_label(std::string label) const {
    RMatrix copy = *this;
    copy.label_ = std::move(label);
    return copy;
}

CheckReport make_report(std::vector<double> detail, Tolerance tol) {
    CheckReport report;
    report.residual = detail.empty() ? 0.0 : *std::max_element(detail.begin(), detail.end());
    report.tolerance = tol.value();
    report.passed = tol.admits(report.residual);
    report.detail = std::move(detail);
    return report;
}

CheckReport check_gybe(const RMatrix& r, Tolerance tol) {
    const auto& sig = r.signature();
    (void)sig.lifted_size();
    const ComplexMatrix pad = ComplexMatrix::identity(checked_power(sig.d, sig.l));
    const ComplexMatrix left = kron(r.matrix(), pad);
    const ComplexMatrix right = kron(pad, r.matrix());
    const double residual = max_abs_diff(left * right * left, right * left * right);
    return make_report({residual}, tol);
}

namespace {

unsigned exact_sqrt(std::size_t n) {
    const auto root = static_cast<unsigned>(std::llround(std::sqrt(static_cast<double>(n))));
    if (static_cast<std::size_t>(root) * root != n || root == 0) {
        throw DimensionError("matrix side " + std::to_string(n) + " is not a perfect square");
    }
    return root;
}

}  // namespace

CheckReport check_ybe(const ComplexMatrix& x, Tolerance tol) {
    if (!x.is_square()) throw DimensionError("check_ybe: matrix is not square");
    const unsigned d = exact_sqrt(x.rows());
    return check_gybe(RMatrix({d, 2, 1}, x), tol);
}

double ybe_summation_residual(const ComplexMatrix& x) {
    if (!x.is_square()) throw DimensionError("ybe_summation_residual: matrix is not square");
    const std::size_t d = exact_sqrt(x.rows());
    // R^{kl}_{ij} is the entry in row (k, l), column (i, j).
    auto R = [&](std::size_t k, std::size_t l, std::size_t i, std::size_t j) { return x(k * d + l, i * d + j); };
    double worst = 0.0;
    for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v)
            for (std::size_t w = 0; w < d; ++w)
                for (std::size_t px = 0; px < d; ++px)
                    for (std::size_t py = 0; py < d; ++py)
                        for (std::size_t pz = 0; pz < d; ++pz) {
                            Complex lhs{}, rhs{};
                            for (std::size_t a = 0; a < d; ++a)
                                for (std::size_t b = 0; b < d; ++b)
                                    for (std::size_t c = 0; c < d; ++c) {
                                        lhs += R(a, b, u, v) * R(c, pz, b, w) * R(px, py, a, c);
                                        rhs += R(b, c, v, w) * R(px, a, u, b) * R(py, pz, a, c);
                                    }
                            worst = std::max(worst, std::abs(lhs - rhs));
                        }
    return worst;
}

DoubleLiftReport double_lift_check(const ComplexMatrix& x, Tolerance tol) {
    if (x.rows() != 4 || x.cols() != 4) throw DimensionError("double_lift_check expects a 4x4 matrix");
    DoubleLiftReport out;
    out.ybe = check_ybe(x, tol);
    out.doubled = check_gybe(RMatrix({2, 3, 1}, direct_sum(x, x)), tol);
    return out;
}

ComplexMatrix braid_generator_matrix(const RMatrix& r, unsigned strands, unsigned index) {
    if (strands < 2 || index < 1 || index > strands - 1) {
        throw DomainError("generator index " + std::to_string(index) + " out of range for " +
                          std::to_string(strands) + " strands");
    }
    const auto& sig = r.signature();
    const std::size_t total = sig.m + static_cast<std::size_t>(strands - 2) * sig.l;
    (void)checked_power(sig.d, total);
    const std::size_t before = checked_power(sig.d, static_cast<std::size_t>(sig.l) * (index - 1));
    const std::size_t after = checked_power(sig.d, static_cast<std::size_t>(sig.l) * (strands - index - 1));
    return kron(kron(ComplexMatrix::identity(before), r.matrix()), ComplexMatrix::identity(after));
}

CheckReport check_far_commutativity(const RMatrix& r, Tolerance tol) {
    const auto& sig = r.signature();
    std::vector<double> detail;
    for (unsigned j = 3; (j - 1) * sig.l < sig.m; ++j) {
        const unsigned strands = (j - 1) * sig.l + 2;
        const ComplexMatrix g1 = braid_generator_matrix(r, strands, 1);
        const ComplexMatrix gj = braid_generator_matrix(r, strands, j);
        detail.push_back(max_abs_diff(g1 * gj, gj * g1));
    }
    const bool vacuous = detail.empty();
    CheckReport report = make_report(std::move(detail), tol);
    report.vacuous = vacuous;
    return report;
}

}  // namespace gybe
