#include "gybe/braid.hpp"

#include <cmath>
#include <cstdlib>

#include "gybe/text.hpp"

namespace gybe {

void BraidWord::validate() const {
    if (strands < 2) throw DomainError("a braid needs at least 2 strands");
    for (int letter : letters) {
        if (letter == 0 || static_cast<unsigned>(std::abs(letter)) > strands - 1) {
            throw DomainError("letter " + std::to_string(letter) + " out of range for " + std::to_string(strands) +
                              " strands");
        }
    }
}

BraidWord parse_braid_word(std::string_view text) {
    const std::string_view t = trim(text);
    const auto colon = t.find(':');
    if (!t.starts_with("n=") || colon == std::string_view::npos) {
        throw ParseError("braid word must look like 'n=<strands>: i,j,...', got '" + std::string(text) + "'");
    }
    const double n = parse_real(t.substr(2, colon - 2));
    if (n != std::floor(n) || n < 2 || n > 64) throw ParseError("bad strand count in '" + std::string(text) + "'");
    BraidWord w;
    w.strands = static_cast<unsigned>(n);
    std::string_view rest = trim(t.substr(colon + 1));
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        const double v = parse_real(item);
        if (v != std::floor(v) || std::abs(v) > 64) throw ParseError("bad braid letter '" + std::string(item) + "'");
        w.letters.push_back(static_cast<int>(v));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
        if (trim(rest).empty()) throw ParseError("trailing comma in '" + std::string(text) + "'");
    }
    try {
        w.validate();
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
    return w;
}

std::string to_string(const BraidWord& w) {
    std::string out = "n=" + std::to_string(w.strands) + ":";
    for (std::size_t k = 0; k < w.letters.size(); ++k) out += (k == 0 ? " " : ",") + std::to_string(w.letters[k]);
    return out;
}

StateVector::StateVector(std::vector<Complex> amplitudes, double tol) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) throw DimensionError("state vector is empty");
    double sq = 0.0;
    for (const auto& a : amplitudes_) sq += std::norm(a);
    if (std::abs(sq - 1.0) > tol) {
        throw DomainError("state vector norm^2 is " + format_real(sq) + ", expected 1");
    }
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw DimensionError("basis index out of range");
    std::vector<Complex> v(dim);
    v[index] = 1.0;
    return StateVector(std::move(v));
}

double StateVector::norm() const {
    double sq = 0.0;
    for (const auto& a : amplitudes_) sq += std::norm(a);
    return std::sqrt(sq);
}

BraidRep BraidRep::build(const RMatrix& r, unsigned strands, Tolerance tol) {
    if (strands < 2) throw DomainError("a braid group needs at least 2 strands");
    BraidRep rep(r, strands);
    rep.unitary_ = is_unitary(r.matrix(), Tolerance{1e-10}).unitary;
    for (unsigned i = 1; i < strands; ++i) {
        rep.generators_.push_back(braid_generator_matrix(r, strands, i));
        rep.inverses_.push_back(rep.unitary_ ? dagger(rep.generators_.back()) : inverse(rep.generators_.back()));
    }
    rep.dim_ = rep.generators_.front().rows();
    for (unsigned i = 1; i + 1 < strands; ++i) {
        const auto& a = rep.generator(i);
        const auto& b = rep.generator(i + 1);
        const double res = max_abs_diff(a * b * a, b * a * b);
        if (!tol.admits(res)) {
            throw RepresentationError("braid relation for sigma_" + std::to_string(i) + ", sigma_" +
                                          std::to_string(i + 1),
                                      res);
        }
    }
    for (unsigned i = 1; i < strands; ++i) {
        for (unsigned j = i + 2; j < strands; ++j) {
            const auto& a = rep.generator(i);
            const auto& b = rep.generator(j);
            const double res = max_abs_diff(a * b, b * a);
            if (!tol.admits(res)) {
                throw RepresentationError("far commutativity of sigma_" + std::to_string(i) + ", sigma_" +
                                              std::to_string(j),
                                          res);
            }
        }
    }
    return rep;
}

const ComplexMatrix& BraidRep::generator(unsigned i) const {
    if (i < 1 || i >= strands_) throw DomainError("generator index " + std::to_string(i) + " out of range");
    return generators_[i - 1];
}

const ComplexMatrix& BraidRep::inverse_generator(unsigned i) const {
    if (i < 1 || i >= strands_) throw DomainError("generator index " + std::to_string(i) + " out of range");
    return inverses_[i - 1];
}

ComplexMatrix BraidRep::evaluate(const BraidWord& w) const {
    w.validate();
    if (w.strands != strands_) {
        throw DomainError("word on " + std::to_string(w.strands) + " strands, representation of B_" +
                          std::to_string(strands_));
    }
    ComplexMatrix out = ComplexMatrix::identity(dim_);
    for (int letter : w.letters) {
        const auto i = static_cast<unsigned>(std::abs(letter));
        out = out * (letter > 0 ? generator(i) : inverse_generator(i));
    }
    return out;
}

StateVector BraidRep::apply(const BraidWord& w, const StateVector& s) const {
    if (s.size() != dim_) {
        throw DimensionError("state has " + std::to_string(s.size()) + " amplitudes, representation acts on " +
                             std::to_string(dim_));
    }
    w.validate();
    if (w.strands != strands_) throw DomainError("word strand count does not match the representation");
    std::vector<Complex> v = s.amplitudes();
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        const auto i = static_cast<unsigned>(std::abs(*it));
        v = (*it > 0 ? generator(i) : inverse_generator(i)) * std::span<const Complex>(v);
    }
    return StateVector(std::move(v), 1e-9);
}

std::optional<GateMatch> BraidRep::recognize_gate(const ComplexMatrix& u, Tolerance tol) const {
    if (u.rows() != dim_ || u.cols() != dim_) return std::nullopt;
    const auto entries = u.entries();
    std::size_t pivot = 0;
    for (std::size_t k = 1; k < entries.size(); ++k)
        if (std::abs(entries[k]) > std::abs(entries[pivot])) pivot = k;
    if (entries.empty() || entries[pivot] == Complex{}) return std::nullopt;
    for (unsigned i = 1; i < strands_; ++i) {
        const Complex g = generator(i).entries()[pivot];
        if (std::abs(g) <= kPivotThreshold) continue;
        const Complex lambda = entries[pivot] / g;
        if (tol.admits(max_abs_diff(u, generator(i) * lambda))) return GateMatch{i, lambda};
    }
    return std::nullopt;
}

}  // namespace gybe
