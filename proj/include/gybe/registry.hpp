#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gybe/gybe.hpp"

namespace gybe {

/// Named solutions addressable by string id:
///   rowell, xshape, base1, base2, base3,
///   family<f>:theta=<rad>,
///   family<f>:alpha=<re>,<im>:beta=<re>,<im>,
///   conj:<id>  (entrywise complex conjugate of <id>).
/// Throws ParseError on malformed ids and DomainError on out-of-range values.
RMatrix resolve_solution(std::string_view id);

struct RegistryEntry {
    std::string id;
    std::string description;
};

/// Concrete ids plus one example of each parameterized form.
std::vector<RegistryEntry> registry_entries();

}  // namespace gybe
