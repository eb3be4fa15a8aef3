#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "common.hpp"

namespace auglab::sched {

// Expression templates off: plain value semantics keep std::min/max and
// brace initialization unsurprising.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

namespace detail {

[[noreturn]] inline void bad_rational(std::string_view text) {
  throw ParseFailure("not a rational: '" + std::string(text) + "'");
}

inline Int parse_integer(std::string_view part, std::string_view whole) {
  bool negative = false;
  if (!part.empty() && (part[0] == '+' || part[0] == '-')) {
    negative = part[0] == '-';
    part.remove_prefix(1);
  }
  if (part.empty()) bad_rational(whole);
  for (char c : part)
    if (c < '0' || c > '9') bad_rational(whole);
  Int value{std::string(part)};
  return negative ? Int(-value) : value;
}

}  // namespace detail

// Accepts "num/den", plain integers, and finite decimal strings, all
// parsed exactly. No exponents, no locale dependence.
inline Rat parse_rational(std::string_view text) {
  if (text.empty()) detail::bad_rational(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int num = detail::parse_integer(text.substr(0, slash), text);
    Int den = detail::parse_integer(text.substr(slash + 1), text);
    if (den == 0) detail::bad_rational(text);
    return Rat(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view head = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty()) detail::bad_rational(text);
    for (char c : frac)
      if (c < '0' || c > '9') detail::bad_rational(text);
    bool negative = !head.empty() && head[0] == '-';
    Int whole = 0;
    if (!head.empty() && head != "-" && head != "+")
      whole = detail::parse_integer(head, text);
    Int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rat fraction(Int(std::string(frac)), scale);
    return Rat(whole) + (negative ? -fraction : fraction);
  }
  return Rat(detail::parse_integer(text, text));
}

// Canonical "num/den" form, denominator always present.
inline std::string format_rational(const Rat& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

inline double to_double(const Rat& value) {
  return value.convert_to<double>();
}

inline Int floor_to_int(const Rat& value) {
  Int num = numerator(value), den = denominator(value);
  Int q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

}  // namespace auglab::sched
