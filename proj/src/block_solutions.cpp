#include "gybe/block_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gybe/text.hpp"

namespace gybe {

namespace {

constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

bool on_unit_circle(Complex z, double tol) { return std::abs(std::abs(z) - 1.0) <= tol; }

ComplexMatrix assemble(const DiagBlock& tl, const DiagBlock& tr, const DiagBlock& bl, const DiagBlock& br) {
    ComplexMatrix m(4, 4);
    m(0, 0) = tl.p;
    m(1, 1) = tl.q;
    m(0, 2) = tr.p;
    m(1, 3) = tr.q;
    m(2, 0) = bl.p;
    m(3, 1) = bl.q;
    m(2, 2) = br.p;
    m(3, 3) = br.q;
    return m * Complex(kInvSqrt2);
}

}  // namespace

DiagBlock DiagBlock::from_matrix(const ComplexMatrix& m, double tol) {
    if (m.rows() != 2 || m.cols() != 2) throw DimensionError("DiagBlock expects a 2x2 matrix");
    if (std::abs(m(0, 1)) > tol || std::abs(m(1, 0)) > tol) throw DomainError("2x2 block is not diagonal");
    return {m(0, 0), m(1, 1)};
}

bool DiagBlock::is_unitary(double tol) const { return on_unit_circle(p, tol) && on_unit_circle(q, tol); }

double max_abs_diff(const DiagBlock& a, const DiagBlock& b) { return std::max(std::abs(a.p - b.p), std::abs(a.q - b.q)); }

ComplexMatrix BlockSolution::x_matrix() const { return assemble(a, b, c, d); }
ComplexMatrix BlockSolution::y_matrix() const { return assemble(y1, y2, y3, y4); }
ComplexMatrix BlockSolution::matrix() const { return direct_sum(x_matrix(), y_matrix()); }

RMatrix BlockSolution::to_rmatrix(std::string label) const { return RMatrix({2, 3, 1}, matrix(), std::move(label)); }

BlockSolution BlockSolution::from_matrix(const ComplexMatrix& r, double tol) {
    if (r.rows() != 8 || r.cols() != 8) throw DimensionError("block solutions are 8x8");
    if (max_abs(r.block(0, 4, 4, 4)) > tol || max_abs(r.block(4, 0, 4, 4)) > tol) {
        throw DomainError("matrix is not of the form X (+) Y");
    }
    const Complex s = std::numbers::sqrt2;
    auto blk = [&](std::size_t r0, std::size_t c0) { return DiagBlock::from_matrix(r.block(r0, c0, 2, 2) * s, tol); };
    BlockSolution out;
    out.a = blk(0, 0);
    out.b = blk(0, 2);
    out.c = blk(2, 0);
    out.d = blk(2, 2);
    out.y1 = blk(4, 4);
    out.y2 = blk(4, 6);
    out.y3 = blk(6, 4);
    out.y4 = blk(6, 6);
    return out;
}

bool BlockSolution::x_diagonally_unitary(double tol) const {
    return a.is_unitary(tol) && b.is_unitary(tol) && c.is_unitary(tol) && d.is_unitary(tol) &&
           is_unitary(x_matrix(), Tolerance{tol}).unitary;
}

double max_abs_diff(const BlockSolution& s, const BlockSolution& t) {
    return std::max({max_abs_diff(s.a, t.a), max_abs_diff(s.b, t.b), max_abs_diff(s.c, t.c), max_abs_diff(s.d, t.d),
                     max_abs_diff(s.y1, t.y1), max_abs_diff(s.y2, t.y2), max_abs_diff(s.y3, t.y3),
                     max_abs_diff(s.y4, t.y4)});
}

FamilyParams FamilyParams::validated() const {
    if (family < 1 || family > 3) throw DomainError("family must be 1, 2 or 3, got " + std::to_string(family));
    constexpr double slack = 1e-9;
    if (!(theta >= -slack && theta <= std::numbers::pi + slack)) {
        throw DomainError("theta must lie in [0, pi], got " + format_real(theta));
    }
    return {family, std::clamp(theta, 0.0, std::numbers::pi)};
}

void GeneralParams::validate() const {
    if (family < 1 || family > 3) throw DomainError("family must be 1, 2 or 3, got " + std::to_string(family));
    if (!on_unit_circle(alpha, kExactTolerance) || !on_unit_circle(beta, kExactTolerance)) {
        throw DomainError("alpha and beta must lie on the unit circle");
    }
}

FamilyConstants family_constants(int family) {
    switch (family) {
        case 1: return {kI, kI, 1.0};
        case 2: return {kI, 1.0, kI};
        case 3: return {1.0, 1.0, 1.0};
        default: throw DomainError("family must be 1, 2 or 3, got " + std::to_string(family));
    }
}

RMatrix rowell_solution() {
    const Complex z = std::polar(1.0, std::numbers::pi / 4.0);
    const Complex zi = std::conj(z);
    ComplexMatrix x{{zi, 0, -zi, 0}, {0, z, 0, z}, {z, 0, z, 0}, {0, -zi, 0, zi}};
    ComplexMatrix y{{z, 0, z, 0}, {0, zi, 0, -zi}, {-zi, 0, zi, 0}, {0, z, 0, z}};
    return RMatrix({2, 3, 1}, direct_sum(x, y) * Complex(kInvSqrt2), "rowell");
}

RMatrix xshape_solution() {
    ComplexMatrix r(8, 8);
    for (std::size_t i = 0; i < 8; ++i) {
        r(i, i) = kInvSqrt2;
        r(i, 7 - i) = i < 4 ? kInvSqrt2 : -kInvSqrt2;
    }
    return RMatrix({2, 3, 2}, std::move(r), "xshape");
}

DiagBlock derive_c(const DiagBlock& a, const DiagBlock& b, const DiagBlock& d) {
    if (!a.is_unitary() || !b.is_unitary()) throw DomainError("derive_c needs unitary A and B");
    return -(d * b.dagger() * a);
}

std::array<DiagBlock, 4> derive_y(Complex w, Complex g, Complex dl, Complex al, Complex be) {
    for (Complex z : {w, g, dl, al, be})
        if (!on_unit_circle(z, kExactTolerance)) throw DomainError("derive_y parameters must lie on the unit circle");
    const Complex wc = std::conj(w), gc = std::conj(g), dc = std::conj(dl), ac = std::conj(al), bc = std::conj(be);
    return {{
        {w, w * gc * (1.0 + dl * w - w)},
        {be * dc * (1.0 - g - wc), -ac * be * be},
        {bc * (1.0 + w * g - w), al * bc * bc * dl * dl * w * w * gc},
        {dc * g * (w + wc - g), 1.0 - dl + w},
    }};
}

BlockSolution general_block_solution(const GeneralParams& p) {
    p.validate();
    const auto [w, g, dl] = family_constants(p.family);
    BlockSolution s;
    s.a = {1.0, w};
    s.b = {p.alpha, p.beta};
    s.d = {g, dl};
    s.c = derive_c(s.a, s.b, s.d);
    const auto ys = derive_y(w, g, dl, p.alpha, p.beta);
    s.y1 = ys[0];
    s.y2 = ys[1];
    s.y3 = ys[2];
    s.y4 = ys[3];
    return s;
}

RMatrix general_solution(const GeneralParams& p) {
    return general_block_solution(p).to_rmatrix("family" + std::to_string(p.family) +
                                                ":alpha=" + format_complex(p.alpha) +
                                                ":beta=" + format_complex(p.beta));
}

RMatrix family_solution(const FamilyParams& params) {
    const FamilyParams p = params.validated();
    return general_solution({p.family, 1.0, std::polar(1.0, p.theta)})
        .with_label("family" + std::to_string(p.family) + ":theta=" + format_real(p.theta));
}

BlockSolution base_solution(int k) { return general_block_solution({k, 1.0, 1.0}); }

RMatrix conjugate_solution(const RMatrix& r) {
    return RMatrix(r.signature(), conjugate(r.matrix()), "conj:" + r.label());
}

CheckReport check_block_equations(const ComplexMatrix& x, const ComplexMatrix& y, Tolerance tol) {
    if (x.rows() != 4 || x.cols() != 4 || y.rows() != 4 || y.cols() != 4) {
        throw DimensionError("check_block_equations expects two 4x4 matrices");
    }
    const Complex s2 = std::numbers::sqrt2;
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    auto lifted = [&](const ComplexMatrix& m, std::size_t r0, std::size_t c0) {
        return kron(m.block(r0, c0, 2, 2) * s2, i2);
    };
    // The first four residuals come from the blocks of X, the last four from Y.
    std::vector<double> detail;
    for (const ComplexMatrix* src : {&x, &y}) {
        const ComplexMatrix p = lifted(*src, 0, 0);
        const ComplexMatrix q = lifted(*src, 0, 2);
        const ComplexMatrix r = lifted(*src, 2, 0);
        const ComplexMatrix t = lifted(*src, 2, 2);
        auto residual = [&](const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
            return max_abs(lhs - rhs * s2) / 2.0;
        };
        detail.push_back(residual(p * x * p + q * y * r, x * p * x));
        detail.push_back(residual(p * x * q + q * y * t, x * q * y));
        detail.push_back(residual(r * x * p + t * y * r, y * r * x));
        detail.push_back(residual(r * x * q + t * y * t, y * t * y));
    }
    return make_report(std::move(detail), tol);
}

CheckReport check_param_constraints(Complex w, Complex g, Complex d, Tolerance tol) {
    const Complex wc = std::conj(w), gc = std::conj(g), dc = std::conj(d);
    std::vector<double> detail;
    auto eq = [&](Complex lhs, Complex rhs) { detail.push_back(std::abs(lhs - rhs)); };
    // Consistency of the second block equation.
    eq((d - 1.0) * w * w + (1.0 + d * d - d * g + g) * w - 2.0 * g, 0.0);
    eq(d * (2.0 - wc - g), -wc - g + 1.0 + wc * g - g * g + w * g);
    eq((d - 1.0) * g, d * d - 1.0 + w * (1.0 - d));
    eq(d * (2.0 * w + wc - g), wc - 1.0 + g + wc * g + w * g - g * g);
    // Unitarity of Y.
    eq(w + wc + g + gc, w * g + wc * gc + 2.0);
    eq(w + wc + d + dc, w * d + wc * dc + 2.0);
    eq(1.0 + w + wc + w * g, g + gc + w * w + w * gc);
    eq(2.0 + w * d, d + dc + w * dc);
    eq(w + wc + g + gc + w * gc + wc * g, 4.0 + w * w + wc * wc);
    eq(d + dc + wc * d + w * dc, 2.0 + w + wc);
    return make_report(std::move(detail), tol);
}

ParamCategory classify_unitary_params(Complex w, Complex g, Complex d, double tol) {
    auto near = [tol](Complex a, Complex b) { return std::abs(a - b) <= tol; };
    const bool w_is_pm_i = near(w, kI) || near(w, -kI);
    if (w_is_pm_i && near(g, w) && near(d, 1.0)) return ParamCategory::A;
    if (w_is_pm_i && near(d, w) && near(g, 1.0)) return ParamCategory::B;
    if (near(w, 1.0) && near(g, 1.0) && near(d, 1.0)) return ParamCategory::C;
    return ParamCategory::None;
}

std::string to_string(ParamCategory c) {
    switch (c) {
        case ParamCategory::A: return "A";
        case ParamCategory::B: return "B";
        case ParamCategory::C: return "C";
        case ParamCategory::None: break;
    }
    return "none";
}

Reduction reduce_to_b_identity(const BlockSolution& s) {
    if (!s.x_diagonally_unitary(1e-10)) throw DomainError("X is not (2x2)-diagonally unitary");
    const Complex alpha = s.b.p;
    const Complex beta = s.b.q;
    BlockSolution r = s;
    r.b = DiagBlock::identity();
    r.c = s.b * s.c;
    r.y2 = (alpha * std::conj(beta)) * (s.b.dagger() * s.y2);
    r.y3 = (std::conj(alpha) * beta) * (s.b * s.y3);
    return {r, alpha, beta};
}

BlockSolution restore(const BlockSolution& reduced, const DiagBlock& b) {
    if (!b.is_unitary(1e-10)) throw DomainError("restore needs a unitary diagonal B");
    const Complex alpha = b.p;
    const Complex beta = b.q;
    BlockSolution s = reduced;
    s.b = b;
    s.c = b.dagger() * reduced.c;
    s.y2 = (std::conj(alpha) * beta) * (b * reduced.y2);
    s.y3 = (alpha * std::conj(beta)) * (b.dagger() * reduced.y3);
    return s;
}

}  // namespace gybe
