#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gybe/braid.hpp"
#include "gybe/equivalence.hpp"
#include "gybe/gybe.hpp"
#include "gybe/search.hpp"

namespace gybe {

using Json = nlohmann::json;

/// {"rows": n, "cols": n, "entries": [[re, im], ...]} row-major.
Json to_json(const ComplexMatrix& m);
/// Throws ParseError on anything that is not a well-formed matrix object.
ComplexMatrix matrix_from_json(const Json& j);

/// Matrix JSON plus "signature": [d, m, l] and "label".
Json to_json(const RMatrix& r);

/// A matrix document as read from a file: the optional signature and label
/// are returned when present.
struct MatrixDocument {
    ComplexMatrix matrix;
    std::optional<GybeSignature> signature;
    std::string label;
};
MatrixDocument parse_matrix_document(std::string_view text);

/// Signature from "d,m,l"; throws ParseError.
GybeSignature parse_signature(std::string_view text);

Json to_json(const CheckReport& r);
Json to_json(const GaugeOp& op);
Json to_json(const EquivalenceWitness& w);
Json to_json(const DedupKey& k);
Json to_json(const SearchResult& r);

/// A column vector in matrix JSON (cols = 1).
Json to_json(const StateVector& s);
StateVector state_from_json(const Json& j);

/// Text grid of '0'/'1' rows or {"size": n, "mask": [[bool, ...], ...]}.
ZeroPattern parse_pattern(std::string_view text);
std::string to_text(const ZeroPattern& p);

}  // namespace gybe
