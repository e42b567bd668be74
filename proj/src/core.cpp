#include "spinrot/core.hpp"

#include <charconv>
#include <cmath>

namespace spinrot {

SpinJ::SpinJ(int two_j) : two_j_(two_j) {
    if (two_j < 1 || two_j > kMaxTwoJ)
        throw ValidationError("J must be a positive multiple of 1/2 not above 16 (got 2J=" +
                              std::to_string(two_j) + ")");
}

namespace {

bool parse_int(std::string_view s, long& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

SpinJ SpinJ::parse(std::string_view text) {
    const std::string bad = "invalid J '" + std::string(text) + "': expected e.g. 2, 1.5 or 3/2";
    if (text.empty()) throw ValidationError(bad);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        long num = 0, den = 0;
        if (!parse_int(text.substr(0, slash), num) || !parse_int(text.substr(slash + 1), den))
            throw ValidationError(bad);
        if (den == 1) return SpinJ(static_cast<int>(2 * num));
        if (den == 2) return SpinJ(static_cast<int>(num));
        throw ValidationError(bad);
    }
    double v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size()) throw ValidationError(bad);
    double twice = 2.0 * v;
    if (std::abs(twice - std::round(twice)) > 1e-12) throw ValidationError(bad);
    return SpinJ(static_cast<int>(std::lround(twice)));
}

std::string SpinJ::str() const {
    if (two_j_ % 2 == 0) return std::to_string(two_j_ / 2);
    return std::to_string(two_j_) + "/2";
}

}  // namespace spinrot
