#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace plf {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Serialize as "p/q" in lowest terms ("p" when q == 1).
std::string rat_to_string(const Rat& r);

// Parse "p/q" or "p"; returns nullopt on malformed input or q == 0.
std::optional<Rat> rat_from_string(const std::string& s);

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }
inline Rat rat_abs(const Rat& a) { return a < 0 ? Rat(-a) : a; }

// Exact decimal expansion with `digits` places, truncated toward zero.
// Deterministic; used only for SVG coordinate output.
std::string rat_to_decimal(const Rat& r, int digits);

}  // namespace plf
