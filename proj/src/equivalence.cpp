#include "gybe/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gybe/eigenvalues.hpp"
#include "gybe/levenberg_marquardt.hpp"

namespace gybe {

RMatrix apply_gauge(const RMatrix& r, const GaugeOp& op) {
    if (const auto* s = std::get_if<ScalarOp>(&op)) {
        if (s->lambda == Complex{}) throw DomainError("scalar gauge needs a nonzero lambda");
        return RMatrix(r.signature(), r.matrix() * s->lambda, r.label());
    }
    if (std::holds_alternative<InverseOp>(op)) {
        return RMatrix(r.signature(), inverse(r.matrix()), r.label().empty() ? "" : "inverse:" + r.label());
    }
    const auto& q = std::get<LocalConjOp>(op).q;
    if (q.rows() != 2 || q.cols() != 2) throw DomainError("local conjugation needs a 2x2 Q");
    if (r.signature().d != 2) throw DomainError("local conjugation by a 2x2 Q needs d = 2");
    const unsigned m = r.signature().m;
    const ComplexMatrix k = kron_power(q, m);
    const ComplexMatrix k_inv = kron_power(inverse(q), m);
    return RMatrix(r.signature(), k_inv * r.matrix() * k, r.label());
}

RMatrix apply_witness(const RMatrix& source, const std::vector<GaugeOp>& ops) {
    RMatrix out = source;
    for (const auto& op : ops) out = apply_gauge(out, op);
    return out;
}

ConjugacyInvariants conjugacy_invariants(const ComplexMatrix& m) {
    ConjugacyInvariants inv;
    inv.characteristic_polynomial = characteristic_polynomial(m);
    inv.eigenvalues = polynomial_roots(inv.characteristic_polynomial);
    sort_multiset(inv.eigenvalues);
    return inv;
}

double invariant_distance(const ConjugacyInvariants& a, const ConjugacyInvariants& b) {
    if (a.characteristic_polynomial.size() != b.characteristic_polynomial.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = multiset_distance(a.eigenvalues, b.eigenvalues);
    for (std::size_t k = 0; k < a.characteristic_polynomial.size(); ++k) {
        worst = std::max(worst, std::abs(a.characteristic_polynomial[k] - b.characteristic_polynomial[k]));
    }
    return worst;
}

bool is_locally_conjugate_params(const GeneralParams& p, const GeneralParams& q) {
    p.validate();
    q.validate();
    if (p.family != q.family) {
        throw DomainError("cannot compare family " + std::to_string(p.family) + " with family " +
                          std::to_string(q.family));
    }
    return std::abs(p.beta / p.alpha - q.beta / q.alpha) <= kWitnessTolerance;
}

std::string to_string(ConjugatorShape shape) {
    switch (shape) {
        case ConjugatorShape::Diagonal: return "diagonal";
        case ConjugatorShape::Antidiagonal: return "antidiagonal";
        case ConjugatorShape::General: return "general";
    }
    return "general";
}

ConjugatorShape parse_conjugator_shape(std::string_view text) {
    if (text == "diagonal") return ConjugatorShape::Diagonal;
    if (text == "antidiagonal") return ConjugatorShape::Antidiagonal;
    if (text == "general") return ConjugatorShape::General;
    throw ParseError("unknown conjugator shape '" + std::string(text) + "'");
}

namespace {

// Ways of writing Q with one entry pinned to 1.
enum class Layout { Diagonal, Antidiagonal, GeneralPinnedTopLeft, GeneralPinnedTopRight };

std::vector<Layout> layouts_for(ConjugatorShape shape) {
    switch (shape) {
        case ConjugatorShape::Diagonal: return {Layout::Diagonal};
        case ConjugatorShape::Antidiagonal: return {Layout::Antidiagonal};
        case ConjugatorShape::General: return {Layout::GeneralPinnedTopLeft, Layout::GeneralPinnedTopRight};
    }
    return {};
}

std::size_t unknowns(Layout layout) {
    return layout == Layout::Diagonal || layout == Layout::Antidiagonal ? 1 : 3;
}

ComplexMatrix build_q(Layout layout, std::span<const double> x) {
    auto z = [&](std::size_t k) { return Complex(x[2 * k], x[2 * k + 1]); };
    switch (layout) {
        case Layout::Diagonal: return {{1.0, 0.0}, {0.0, z(0)}};
        case Layout::Antidiagonal: return {{0.0, 1.0}, {z(0), 0.0}};
        case Layout::GeneralPinnedTopLeft: return {{1.0, z(0)}, {z(1), z(2)}};
        case Layout::GeneralPinnedTopRight: return {{z(0), 1.0}, {z(1), z(2)}};
    }
    return {};
}

// lambda minimizing |a - lambda b|_F, or 1 when b vanishes.
Complex best_scalar(const ComplexMatrix& a, const ComplexMatrix& b) {
    Complex num{};
    double den = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        num += std::conj(eb[i]) * ea[i];
        den += std::norm(eb[i]);
    }
    return den > 0.0 ? num / den : Complex(1.0);
}

struct GaugeFit {
    ComplexMatrix q;
    Complex lambda{1.0};
    double residual = std::numeric_limits<double>::infinity();
};

// Fits K target = lambda r K with K = Q^{(x) m}; lambda is eliminated in
// closed form when free and fixed to 1 otherwise.
GaugeFit fit_gauge(const RMatrix& r, const RMatrix& target, bool free_scalar,
                   const ConjugatorSearchOptions& options) {
    if (options.restarts == 0) throw DomainError("conjugator search needs at least one restart");
    if (options.shapes.empty()) throw DomainError("conjugator search needs at least one shape");
    if (!(options.tolerance > 0.0)) throw DomainError("conjugator search tolerance must be positive");
    const unsigned m = r.signature().m;
    GaugeFit best;
    std::size_t shape_index = 0;
    for (ConjugatorShape shape : options.shapes) {
        ++shape_index;
        for (Layout layout : layouts_for(shape)) {
            const std::size_t n = 2 * unknowns(layout);
            auto residual_fn = [&](std::span<const double> x, std::vector<double>& out) {
                const ComplexMatrix k = kron_power(build_q(layout, x), m);
                const ComplexMatrix lhs = k * target.matrix();
                const ComplexMatrix rk = r.matrix() * k;
                const Complex lambda = free_scalar ? best_scalar(lhs, rk) : Complex(1.0);
                const auto el = lhs.entries();
                const auto er = rk.entries();
                out.resize(2 * el.size());
                for (std::size_t i = 0; i < el.size(); ++i) {
                    const Complex d = el[i] - lambda * er[i];
                    out[2 * i] = d.real();
                    out[2 * i + 1] = d.imag();
                }
            };
            LevenbergOptions lm;
            lm.max_iterations = options.max_iterations;
            lm.objective_target = 1e-28;
            for (unsigned restart = 0; restart < options.restarts; ++restart) {
                std::seed_seq seq{options.seed, std::uint64_t{restart}, std::uint64_t{shape_index},
                                  static_cast<std::uint64_t>(layout)};
                std::mt19937_64 rng(seq);
                std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
                std::vector<double> x0(n);
                for (std::size_t k = 0; k < n / 2; ++k) {
                    const Complex z = std::polar(1.0, phase(rng));
                    x0[2 * k] = z.real();
                    x0[2 * k + 1] = z.imag();
                }
                const LevenbergResult fit = levenberg_marquardt(residual_fn, x0, lm);
                const ComplexMatrix q = build_q(layout, fit.x);
                try {
                    const RMatrix conj = apply_gauge(r, LocalConjOp{q});
                    const Complex lambda = free_scalar ? best_scalar(target.matrix(), conj.matrix()) : Complex(1.0);
                    if (lambda == Complex{}) continue;
                    const double res = max_abs_diff(conj.matrix() * lambda, target.matrix());
                    if (res < best.residual) best = {q, lambda, res};
                } catch (const SingularMatrixError&) {
                    continue;
                }
                if (best.residual <= options.tolerance) return best;
            }
        }
    }
    return best;
}

void require_same_signature(const RMatrix& r, const RMatrix& s) {
    if (r.signature() != s.signature()) {
        throw DimensionError("signatures differ: " + to_string(r.signature()) + " vs " + to_string(s.signature()));
    }
}

}  // namespace

std::optional<ConjugatorMatch> search_local_conjugation(const RMatrix& r, const RMatrix& s,
                                                        const ConjugatorSearchOptions& options) {
    require_same_signature(r, s);
    if (r.signature().d != 2) throw DomainError("local conjugation by a 2x2 Q needs d = 2");
    const GaugeFit fit = fit_gauge(r, s, false, options);
    if (fit.residual > options.tolerance) return std::nullopt;
    return ConjugatorMatch{fit.q, fit.residual};
}

std::optional<EquivalenceWitness> find_equivalence(const RMatrix& source, const RMatrix& target,
                                                   const EquivalenceOptions& options) {
    require_same_signature(source, target);
    if (source.signature().d != 2) throw DomainError("local conjugation by a 2x2 Q needs d = 2");
    for (bool invert : {false, true}) {
        if (invert && !options.allow_inverse) break;
        const RMatrix start = invert ? apply_gauge(source, InverseOp{}) : source;
        const GaugeFit fit = fit_gauge(start, target, true, options.conjugator);
        if (fit.residual > options.conjugator.tolerance) continue;
        EquivalenceWitness w;
        if (invert) w.ops.emplace_back(InverseOp{});
        w.ops.emplace_back(LocalConjOp{fit.q});
        w.ops.emplace_back(ScalarOp{fit.lambda});
        w.source = source.label();
        w.target = target.label();
        w.residual = max_abs_diff(apply_witness(source, w.ops).matrix(), target.matrix());
        return w;
    }
    return std::nullopt;
}

}  // namespace gybe
