#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace vkd {

// Exact rationals for every inequality verdict. No floating point is ever
// compared against a bound.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p/q" or an integer "p" (optional leading '-'). Decimal notation is
// rejected on purpose so that e.g. 0.1 is never silently approximated.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) {
    throw ParseError("empty rational");
  }
  if (text.find('.') != std::string_view::npos
      || text.find('e') != std::string_view::npos
      || text.find('E') != std::string_view::npos) {
    throw ParseError("'" + std::string(text)
                     + "' looks like a decimal; write it as p/q (e.g. 1/4)");
  }
  auto const slash = text.find('/');
  auto check_int = [&](std::string_view s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && s[0] == '-') {
      ++i;
    }
    if (i == s.size()) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
        throw ParseError("malformed rational '" + std::string(text) + "'");
      }
    }
  };
  if (slash == std::string_view::npos) {
    check_int(text, true);
    return Rational(BigInt(std::string(text)));
  }
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  check_int(num, true);
  check_int(den, false);
  BigInt d(std::string{den});
  if (d == 0) {
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(BigInt(std::string(num)), d);
}

// Canonical "p/q" text, or "p" for integers.
inline std::string to_string(Rational const& r) {
  return r.str();
}

inline BigInt floor(Rational const& r) {
  BigInt q = numerator(r) / denominator(r);  // truncates toward zero
  if (r < 0 && q * denominator(r) != numerator(r)) {
    --q;
  }
  return q;
}

}  // namespace vkd
