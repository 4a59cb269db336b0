#include "gybe/serialization.hpp"

#include <cmath>

#include "gybe/text.hpp"

namespace gybe {

namespace {

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("complex entries must be [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::size_t size_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) {
        throw ParseError(std::string("matrix JSON needs a non-negative integer '") + key + "'");
    }
    return j[key].get<std::size_t>();
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
    Json entries = Json::array();
    for (const auto& z : m.entries()) entries.push_back(complex_pair(z));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("matrix JSON must be an object");
    const std::size_t rows = size_field(j, "rows");
    const std::size_t cols = size_field(j, "cols");
    if (rows == 0 || cols == 0 || rows > kMaxDenseSize || cols > kMaxDenseSize) {
        throw ParseError("matrix dimensions out of range");
    }
    if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].size() != rows * cols) {
        throw ParseError("matrix JSON needs rows*cols entries");
    }
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const auto& e : j["entries"]) entries.push_back(complex_from_json(e));
    return ComplexMatrix(rows, cols, std::move(entries));
}

Json to_json(const RMatrix& r) {
    Json j = to_json(r.matrix());
    const auto& s = r.signature();
    j["signature"] = Json::array({s.d, s.m, s.l});
    if (!r.label().empty()) j["label"] = r.label();
    return j;
}

MatrixDocument parse_matrix_document(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    MatrixDocument doc{matrix_from_json(j), std::nullopt, {}};
    if (j.contains("signature")) {
        const Json& s = j["signature"];
        if (!s.is_array() || s.size() != 3) throw ParseError("signature must be [d, m, l]");
        GybeSignature sig;
        unsigned* fields[] = {&sig.d, &sig.m, &sig.l};
        for (std::size_t k = 0; k < 3; ++k) {
            if (!s[k].is_number_unsigned()) throw ParseError("signature entries must be positive integers");
            *fields[k] = s[k].get<unsigned>();
        }
        doc.signature = sig;
    }
    if (j.contains("label") && j["label"].is_string()) doc.label = j["label"].get<std::string>();
    return doc;
}

GybeSignature parse_signature(std::string_view text) {
    GybeSignature sig;
    unsigned* fields[] = {&sig.d, &sig.m, &sig.l};
    std::string_view rest = text;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto comma = rest.find(',');
        if ((k < 2) == (comma == std::string_view::npos)) throw ParseError("signature must be d,m,l");
        const double v = parse_real(rest.substr(0, comma));
        if (v != std::floor(v) || v < 1 || v > 64) throw ParseError("signature entries must be positive integers");
        *fields[k] = static_cast<unsigned>(v);
        if (comma != std::string_view::npos) rest = rest.substr(comma + 1);
    }
    return sig;
}

Json to_json(const CheckReport& r) {
    Json j{{"passed", r.passed}, {"residual", r.residual}, {"tolerance", r.tolerance}, {"detail", r.detail}};
    if (r.vacuous) j["vacuous"] = *r.vacuous;
    return j;
}

Json to_json(const GaugeOp& op) {
    if (const auto* s = std::get_if<ScalarOp>(&op)) return {{"kind", "scalar"}, {"lambda", complex_pair(s->lambda)}};
    if (std::holds_alternative<InverseOp>(op)) return {{"kind", "inverse"}};
    return {{"kind", "local_conj"}, {"Q", to_json(std::get<LocalConjOp>(op).q)}};
}

Json to_json(const EquivalenceWitness& w) {
    Json ops = Json::array();
    for (const auto& op : w.ops) ops.push_back(to_json(op));
    return {{"ops", std::move(ops)}, {"source", w.source}, {"target", w.target}, {"residual", w.residual}};
}

Json to_json(const DedupKey& k) {
    Json spectra = Json::array();
    for (const auto& s : k.spectra) {
        Json list = Json::array();
        for (const auto& z : s) list.push_back(complex_pair(z));
        spectra.push_back(std::move(list));
    }
    Json j{{"spectra", std::move(spectra)}};
    j["ratio"] = k.ratio ? complex_pair(*k.ratio) : Json(nullptr);
    return j;
}

Json to_json(const SearchResult& r) {
    Json solutions = Json::array();
    for (const auto& s : r.solutions) {
        Json m = to_json(s.r);
        m["residual"] = s.residual;
        m["restart"] = s.restart;
        m["dedup_key"] = to_json(s.key);
        solutions.push_back(std::move(m));
    }
    Json finals = Json::array();
    for (const auto& t : r.traces) finals.push_back(t.empty() ? 0.0 : t.back());
    return {{"solutions", std::move(solutions)},
            {"certified", r.certified},
            {"duplicates", r.duplicates},
            {"best_objective", r.best_objective},
            {"final_objectives", std::move(finals)}};
}

Json to_json(const StateVector& s) {
    return to_json(ComplexMatrix(s.size(), 1, s.amplitudes()));
}

StateVector state_from_json(const Json& j) {
    const ComplexMatrix m = matrix_from_json(j);
    if (m.cols() != 1) throw ParseError("a state must be a matrix with one column");
    const auto e = m.entries();
    try {
        return StateVector(std::vector<Complex>(e.begin(), e.end()));
    } catch (const DomainError& err) {
        throw ParseError(err.what());
    }
}

ZeroPattern parse_pattern(std::string_view text) {
    const std::string_view t = trim(text);
    if (t.starts_with("{")) {
        Json j;
        try {
            j = Json::parse(t);
        } catch (const Json::parse_error& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what());
        }
        const std::size_t n = size_field(j, "size");
        if (!j.contains("mask") || !j["mask"].is_array() || j["mask"].size() != n) {
            throw ParseError("pattern JSON needs an n x n boolean 'mask'");
        }
        std::vector<bool> mask;
        for (const auto& row : j["mask"]) {
            if (!row.is_array() || row.size() != n) throw ParseError("pattern JSON needs an n x n boolean 'mask'");
            for (const auto& v : row) {
                if (!v.is_boolean()) throw ParseError("pattern mask entries must be booleans");
                mask.push_back(v.get<bool>());
            }
        }
        if (n == 0) throw ParseError("pattern size must be positive");
        return ZeroPattern(n, std::move(mask));
    }
    std::vector<std::string> rows;
    std::string_view rest = t;
    while (!rest.empty()) {
        const auto nl = rest.find('\n');
        std::string row;
        for (char c : rest.substr(0, nl)) {
            if (c == '0' || c == '1') row.push_back(c);
            else if (c != ' ' && c != '\t' && c != '\r') throw ParseError(std::string("unexpected character '") + c + "' in pattern");
        }
        if (!row.empty()) rows.push_back(std::move(row));
        if (nl == std::string_view::npos) break;
        rest = rest.substr(nl + 1);
    }
    if (rows.empty()) throw ParseError("empty pattern");
    std::vector<bool> mask;
    for (const auto& row : rows) {
        if (row.size() != rows.size()) throw ParseError("pattern grid must be square");
        for (char c : row) mask.push_back(c == '1');
    }
    return ZeroPattern(rows.size(), std::move(mask));
}

std::string to_text(const ZeroPattern& p) {
    std::string out;
    for (std::size_t r = 0; r < p.size(); ++r) {
        for (std::size_t c = 0; c < p.size(); ++c) out.push_back(p.allows(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

}  // namespace gybe
