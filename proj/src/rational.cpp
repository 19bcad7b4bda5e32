#include "coalgame/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace coalgame {

double rat_to_double(const Rat& r) {
    return static_cast<double>(r);
}

std::optional<Rat> parse_rational(std::string_view text) {
    auto parse_int = [](std::string_view s) -> std::optional<BigInt> {
        if (s.empty()) return std::nullopt;
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) return std::nullopt;
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return std::nullopt;
        return BigInt(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        auto n = parse_int(text);
        if (!n) return std::nullopt;
        return Rat(*n);
    }
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rat(*num, *den);
}

std::optional<Rat> rational_from_double(double x, std::int64_t max_den) {
    if (!std::isfinite(x)) return std::nullopt;
    bool neg = x < 0;
    double v = neg ? -x : x;
    // Stern-Brocot style continued fraction expansion.
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        double ip = std::floor(frac);
        if (ip > static_cast<double>(max_den)) break;
        std::int64_t a = static_cast<std::int64_t>(ip);
        std::int64_t p2 = a * p1 + p0;
        std::int64_t q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - ip;
        if (rem < 1e-12) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) return std::nullopt;
    Rat r(p1, q1);
    if (neg) r = -r;
    return r;
}

std::string payoff_vector_to_string(const std::vector<Rat>& v) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",";
        out << rat_to_string(v[i]);
    }
    out << ")";
    return out.str();
}

}  // namespace coalgame
