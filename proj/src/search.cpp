#include "gybe/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "gybe/block_solutions.hpp"
#include "gybe/eigenvalues.hpp"
#include "gybe/levenberg_marquardt.hpp"

namespace gybe {

ZeroPattern::ZeroPattern(std::size_t size, std::vector<bool> mask) : size_(size), mask_(std::move(mask)) {
    if (size_ == 0 || mask_.size() != size_ * size_) {
        throw DimensionError("pattern mask has " + std::to_string(mask_.size()) + " entries, expected " +
                             std::to_string(size_ * size_));
    }
}

ZeroPattern ZeroPattern::from_matrix(const ComplexMatrix& m, double tol) {
    if (!m.is_square()) throw DimensionError("pattern source is not square");
    std::vector<bool> mask(m.rows() * m.cols());
    for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = std::abs(m.entries()[k]) > tol;
    return ZeroPattern(m.rows(), std::move(mask));
}

ZeroPattern ZeroPattern::full(std::size_t size) { return ZeroPattern(size, std::vector<bool>(size * size, true)); }

ZeroPattern ZeroPattern::diagonal(std::size_t size) {
    std::vector<bool> mask(size * size, false);
    for (std::size_t i = 0; i < size; ++i) mask[i * size + i] = true;
    return ZeroPattern(size, std::move(mask));
}

std::size_t ZeroPattern::free_entries() const { return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true)); }

std::size_t ZeroPattern::row_count(std::size_t r) const {
    return static_cast<std::size_t>(std::count(mask_.begin() + static_cast<std::ptrdiff_t>(r * size_),
                                               mask_.begin() + static_cast<std::ptrdiff_t>((r + 1) * size_), true));
}

ZeroPattern rowell_pattern() { return ZeroPattern::from_matrix(rowell_solution().matrix()); }

ZeroPattern block_pattern() {
    std::vector<bool> mask(64, false);
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) mask[r * 8 + c] = (r < 4) == (c < 4);
    return ZeroPattern(8, std::move(mask));
}

std::string to_string(Parameterization p) {
    return p == Parameterization::FreeComplex ? "free-complex" : "unit-modulus";
}

Parameterization parse_parameterization(std::string_view text) {
    if (text == "free-complex") return Parameterization::FreeComplex;
    if (text == "unit-modulus") return Parameterization::UnitModulus;
    throw ParseError("unknown parameterization '" + std::string(text) + "'");
}

void SearchConfig::validate() const {
    if (!(tolerance > 0.0)) throw DomainError("search tolerance must be positive");
    if (restarts == 0) throw DomainError("search needs at least one restart");
    if (max_iterations == 0) throw DomainError("search needs at least one iteration");
}

namespace {

// Fills `out` with the real and imaginary parts of LSL - SLS and R R^dagger - I.
void residual_vector(const ComplexMatrix& r, const GybeSignature& sig, std::vector<double>& out) {
    const ComplexMatrix pad = ComplexMatrix::identity(checked_power(sig.d, sig.l));
    const ComplexMatrix left = kron(r, pad);
    const ComplexMatrix right = kron(pad, r);
    const ComplexMatrix braid = left * right * left - right * left * right;
    ComplexMatrix unit = r * dagger(r);
    for (std::size_t i = 0; i < unit.rows(); ++i) unit(i, i) -= 1.0;
    out.clear();
    out.reserve(2 * (braid.entries().size() + unit.entries().size()));
    for (const ComplexMatrix* m : std::initializer_list<const ComplexMatrix*>{&braid, &unit}) {
        for (const auto& z : m->entries()) {
            out.push_back(z.real());
            out.push_back(z.imag());
        }
    }
}

void check_pattern_fits(const ZeroPattern& pattern, const GybeSignature& sig) {
    if (pattern.size() != sig.matrix_size()) {
        throw DimensionError("pattern size " + std::to_string(pattern.size()) + " does not match signature " +
                             to_string(sig));
    }
    if (pattern.size() > kMaxEigenSize) throw DimensionError("patterns beyond 16x16 are not supported");
}

class PatternCodec {
public:
    PatternCodec(const ZeroPattern& pattern, Parameterization p) : pattern_(pattern), param_(p) {
        for (std::size_t r = 0; r < pattern.size(); ++r) {
            const std::size_t count = pattern.row_count(r);
            for (std::size_t c = 0; c < pattern.size(); ++c) {
                if (!pattern.allows(r, c)) continue;
                slots_.push_back(r * pattern.size() + c);
                modulus_.push_back(count == 0 ? 0.0 : 1.0 / std::sqrt(static_cast<double>(count)));
            }
        }
    }

    std::size_t parameters() const { return param_ == Parameterization::FreeComplex ? 2 * slots_.size() : slots_.size(); }

    ComplexMatrix decode(std::span<const double> x) const {
        ComplexMatrix m(pattern_.size(), pattern_.size());
        auto entries = m.entries();
        for (std::size_t k = 0; k < slots_.size(); ++k) {
            entries[slots_[k]] = param_ == Parameterization::FreeComplex ? Complex(x[2 * k], x[2 * k + 1])
                                                                          : std::polar(modulus_[k], x[k]);
        }
        return m;
    }

    std::vector<double> encode(const ComplexMatrix& m) const {
        std::vector<double> x;
        for (std::size_t k = 0; k < slots_.size(); ++k) {
            const Complex z = m.entries()[slots_[k]];
            if (param_ == Parameterization::FreeComplex) {
                x.push_back(z.real());
                x.push_back(z.imag());
            } else {
                x.push_back(std::arg(z));
            }
        }
        return x;
    }

    std::vector<double> random_start(std::mt19937_64& rng) const {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<double> x;
        for (std::size_t k = 0; k < slots_.size(); ++k) {
            const double angle = 2.0 * std::numbers::pi * unit(rng);
            if (param_ == Parameterization::FreeComplex) {
                const Complex z = std::polar(std::sqrt(unit(rng)), angle);
                x.push_back(z.real());
                x.push_back(z.imag());
            } else {
                x.push_back(angle);
            }
        }
        return x;
    }

private:
    const ZeroPattern& pattern_;
    Parameterization param_;
    std::vector<std::size_t> slots_;
    std::vector<double> modulus_;
};

struct RestartOutcome {
    LevenbergResult fit;
    std::optional<FoundSolution> solution;
};

}  // namespace

double gybe_objective(const ComplexMatrix& candidate, const ZeroPattern& pattern, const GybeSignature& sig) {
    check_pattern_fits(pattern, sig);
    if (candidate.rows() != pattern.size() || candidate.cols() != pattern.size()) {
        throw DimensionError("candidate does not match the pattern size");
    }
    for (std::size_t r = 0; r < pattern.size(); ++r)
        for (std::size_t c = 0; c < pattern.size(); ++c)
            if (!pattern.allows(r, c) && candidate(r, c) != Complex{}) {
                throw DomainError("candidate has a nonzero entry outside the pattern");
            }
    std::vector<double> res;
    residual_vector(candidate, sig, res);
    double sum = 0.0;
    for (double v : res) sum += v * v;
    return sum;
}

DedupKey dedup_key(const ComplexMatrix& m) {
    ComplexMatrix n = m;
    for (const auto& z : m.entries()) {
        if (std::abs(z) > 1e-6) {
            n *= std::conj(z) / std::abs(z);
            break;
        }
    }
    DedupKey key;
    const std::size_t h = n.rows() / 2;
    const bool halves = n.rows() == 8 && max_abs(n.block(0, h, h, h)) <= 1e-9 && max_abs(n.block(h, 0, h, h)) <= 1e-9;
    if (halves) {
        const ComplexMatrix x = n.block(0, 0, h, h);
        key.spectra.push_back(eigenvalues(x));
        key.spectra.push_back(eigenvalues(n.block(h, h, h, h)));
        if (std::abs(x(0, 2)) > 1e-6) key.ratio = x(1, 3) / x(0, 2);
    } else {
        key.spectra.push_back(eigenvalues(n));
    }
    return key;
}

bool same_class(const DedupKey& a, const DedupKey& b, double tol) {
    if (a.spectra.size() != b.spectra.size() || a.ratio.has_value() != b.ratio.has_value()) return false;
    for (std::size_t k = 0; k < a.spectra.size(); ++k)
        if (!(multiset_distance(a.spectra[k], b.spectra[k]) <= tol)) return false;
    return !a.ratio || std::abs(*a.ratio - *b.ratio) <= tol;
}

bool Deduplicator::insert(FoundSolution s) {
    for (const auto& kept : solutions_) {
        if (same_class(kept.key, s.key)) {
            ++duplicates_;
            return false;
        }
    }
    solutions_.push_back(std::move(s));
    return true;
}

SearchResult solve_pattern(const ZeroPattern& pattern, const GybeSignature& sig, const SearchConfig& config) {
    config.validate();
    check_pattern_fits(pattern, sig);
    const PatternCodec codec(pattern, config.parameterization);

    LevenbergOptions lm;
    lm.max_iterations = config.max_iterations;
    lm.objective_target = config.tolerance * config.tolerance;
    const Tolerance certify{10.0 * config.tolerance};

    auto run_restart = [&](unsigned restart) {
        std::vector<double> x0;
        if (restart == 0 && config.initial) {
            x0 = codec.encode(*config.initial);
        } else {
            std::seed_seq seq{config.seed, std::uint64_t{restart}};
            std::mt19937_64 rng(seq);
            x0 = codec.random_start(rng);
        }
        auto f = [&](std::span<const double> x, std::vector<double>& out) {
            residual_vector(codec.decode(x), sig, out);
        };
        RestartOutcome outcome{levenberg_marquardt(f, std::move(x0), lm), std::nullopt};
        if (!outcome.fit.reached_target) return outcome;
        try {
            RMatrix r(sig, codec.decode(outcome.fit.x), "search:restart=" + std::to_string(restart));
            if (!check_gybe(r, certify).passed || !is_unitary(r.matrix(), certify).unitary) return outcome;
            DedupKey key = dedup_key(r.matrix());
            outcome.solution = FoundSolution{std::move(r), std::sqrt(outcome.fit.objective), restart, std::move(key)};
        } catch (const std::exception&) {
            // Singular or spectrally degenerate candidates are not reported.
        }
        return outcome;
    };

    std::vector<std::optional<RestartOutcome>> outcomes(config.restarts);
    unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, config.restarts);
    std::atomic<unsigned> next{0};
    auto worker = [&] {
        for (unsigned k = next++; k < config.restarts; k = next++) outcomes[k] = run_restart(k);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    SearchResult result;
    Deduplicator dedup;
    result.best_objective = std::numeric_limits<double>::infinity();
    for (auto& o : outcomes) {
        result.best_objective = std::min(result.best_objective, o->fit.objective);
        result.traces.push_back(std::move(o->fit.trace));
        if (o->solution) {
            ++result.certified;
            dedup.insert(std::move(*o->solution));
        }
    }
    result.solutions = dedup.solutions();
    result.duplicates = dedup.duplicates();
    return result;
}

}  // namespace gybe
