#include "gybe/registry.hpp"

#include <numbers>

#include "gybe/block_solutions.hpp"
#include "gybe/text.hpp"

namespace gybe {

namespace {

int parse_family(std::string_view head) {
    if (head.size() != 7 || head.substr(0, 6) != "family" || head[6] < '1' || head[6] > '3') {
        throw ParseError("unknown solution id '" + std::string(head) + "'");
    }
    return head[6] - '0';
}

std::string_view expect_key(std::string_view part, std::string_view key) {
    if (part.size() <= key.size() || part.substr(0, key.size()) != key || part[key.size()] != '=') {
        throw ParseError("expected '" + std::string(key) + "=...', got '" + std::string(part) + "'");
    }
    return part.substr(key.size() + 1);
}

}  // namespace

RMatrix resolve_solution(std::string_view raw) {
    const std::string_view id = trim(raw);
    if (id.starts_with("conj:")) return conjugate_solution(resolve_solution(id.substr(5)));
    if (id == "rowell") return rowell_solution();
    if (id == "xshape") return xshape_solution();
    if (id == "base1" || id == "base2" || id == "base3") return base_solution(id[4] - '0').to_rmatrix(std::string(id));

    const auto colon = id.find(':');
    if (colon == std::string_view::npos) throw ParseError("unknown solution id '" + std::string(id) + "'");
    const int family = parse_family(id.substr(0, colon));
    const std::string_view rest = id.substr(colon + 1);
    if (rest.starts_with("theta=")) {
        return family_solution({family, parse_real(expect_key(rest, "theta"))});
    }
    const auto split = rest.find(":beta=");
    if (split == std::string_view::npos) {
        throw ParseError("expected theta=<rad> or alpha=<re>,<im>:beta=<re>,<im> in '" + std::string(id) + "'");
    }
    const Complex alpha = parse_complex(expect_key(rest.substr(0, split), "alpha"));
    const Complex beta = parse_complex(rest.substr(split + 6));
    return general_solution({family, alpha, beta});
}

std::vector<RegistryEntry> registry_entries() {
    return {
        {"rowell", "Rowell solution R_zeta, zeta = exp(2 pi i / 8), signature (2,3,1)"},
        {"xshape", "X-shape solution, signature (2,3,2)"},
        {"base1", "first base solution, (omega, gamma, delta) = (i, i, 1)"},
        {"base2", "second base solution, (omega, gamma, delta) = (i, 1, i)"},
        {"base3", "third base solution, (omega, gamma, delta) = (1, 1, 1)"},
        {"family1:theta=" + format_real(std::numbers::pi / 2), "first family R(theta), theta in [0, pi]"},
        {"family2:theta=" + format_real(std::numbers::pi / 3), "second family R(theta), theta in [0, pi]"},
        {"family3:theta=" + format_real(std::numbers::pi), "third family R(theta), theta in [0, pi]"},
        {"family2:alpha=0,1:beta=0,1", "family member R(alpha, beta), |alpha| = |beta| = 1"},
        {"conj:base1", "entrywise complex conjugate of any other id"},
    };
}

}  // namespace gybe
