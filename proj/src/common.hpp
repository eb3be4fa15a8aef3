#pragma once

#include <charconv>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace auglab {

// Error taxonomy shared by all modules. The C API maps each type to a
// status code; everything else surfaces as an internal error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ParseFailure : public Error {
 public:
  using Error::Error;
};

class GuardExceeded : public Error {
 public:
  using Error::Error;
};

class InfeasibleNetwork : public Error {
 public:
  using Error::Error;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

// Deterministic helpers on top of mt19937_64. The standard distributions
// are implementation-defined, so we derive values from raw engine output
// to keep seeded runs byte-identical everywhere.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
  return n == 0 ? 0 : gen() % n;
}

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("format_double failed");
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseFailure("not a decimal number: '" + std::string(s) + "'");
  return v;
}

}  // namespace auglab
