#include "gybe/text.hpp"

#include <charconv>
#include <cmath>

namespace gybe {

std::string format_real(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

std::string format_complex(Complex z) { return format_real(z.real()) + "," + format_real(z.imag()); }

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

double parse_real(std::string_view text) {
    const std::string_view t = trim(text);
    std::string_view digits = t;
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || !std::isfinite(v)) {
        throw ParseError("not a number: '" + std::string(text) + "'");
    }
    return v;
}

Complex parse_complex(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
        throw ParseError("expected <re>,<im>, got '" + std::string(text) + "'");
    }
    return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
}

}  // namespace gybe
