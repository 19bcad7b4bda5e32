#ifndef COALGAME_RATIONAL_HPP
#define COALGAME_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coalgame {

// Exact rational arithmetic is used everywhere except the iterative
// n-player indifference solver.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

double rat_to_double(const Rat& r);

// Accepts "p", "-p", "p/q". Returns nullopt on malformed input or q == 0.
std::optional<Rat> parse_rational(std::string_view text);

// Continued-fraction reconstruction of a nearby rational with denominator
// bounded by max_den. Used to snap float solver output onto exact values.
std::optional<Rat> rational_from_double(double x, std::int64_t max_den = 1'000'000);

std::string payoff_vector_to_string(const std::vector<Rat>& v);

}  // namespace coalgame

#endif
