#include "plf/rational.hpp"

#include <cctype>
#include <sstream>

namespace plf {

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

std::optional<Rat> rat_from_string(const std::string& s) {
  auto parse_int = [](const std::string& str) -> std::optional<Int> {
    if (str.empty()) return std::nullopt;
    std::size_t i = 0;
    if (str[0] == '-' || str[0] == '+') i = 1;
    if (i == str.size()) return std::nullopt;
    for (std::size_t j = i; j < str.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(str[j])))
        return std::nullopt;
    return Int(str);
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    auto n = parse_int(s);
    if (!n) return std::nullopt;
    return Rat(*n);
  }
  auto n = parse_int(s.substr(0, slash));
  auto d = parse_int(s.substr(slash + 1));
  if (!n || !d || *d == 0) return std::nullopt;
  return Rat(*n, *d);
}

std::string rat_to_decimal(const Rat& r, int digits) {
  Int num = numerator(r);
  Int den = denominator(r);
  bool neg = num < 0;
  if (neg) num = -num;
  Int ip = num / den;
  Int rem = num % den;
  std::ostringstream os;
  if (neg && (ip != 0 || rem != 0)) os << "-";
  os << ip;
  if (digits > 0) {
    os << ".";
    for (int i = 0; i < digits; ++i) {
      rem *= 10;
      os << (rem / den);
      rem %= den;
    }
  }
  return os.str();
}

}  // namespace plf
