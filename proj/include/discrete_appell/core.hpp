#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dappell {

using Complex = std::complex<double>;

/// Distance below which a value is classified as a non-positive integer.
inline constexpr double kPoleTolerance = 1e-12;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ConstraintError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Returns N when z lies within `tol` of -N for some integer N >= 0.
inline std::optional<std::int64_t> nonpositive_integer(Complex z,
                                                       double tol = kPoleTolerance) {
  if (std::abs(z.imag()) > tol || z.real() > tol) return std::nullopt;
  const double r = std::round(z.real());
  if (std::abs(z.real() - r) > tol || r > 0.0 || r < -9.0e15) return std::nullopt;
  return static_cast<std::int64_t>(-r);
}

/// Returns N when z lies within `tol` of N for some integer N >= 0.
inline std::optional<std::int64_t> nonnegative_integer(Complex z,
                                                       double tol = kPoleTolerance) {
  if (auto n = nonpositive_integer(-z, tol)) return n;
  return std::nullopt;
}

/// Replaces values sitting within the pole tolerance of a non-positive
/// integer by that integer, so zero factors come out exactly zero.
inline Complex snap_nonpositive(Complex z) {
  if (auto n = nonpositive_integer(z)) return Complex(-static_cast<double>(*n), 0.0);
  return z;
}

inline Complex snap_nonnegative(Complex z) {
  if (auto n = nonnegative_integer(z)) return Complex(static_cast<double>(*n), 0.0);
  return z;
}

/// Parses "re", "re+imi", "re-imi", "imi" (optional sign, no spaces).
inline Complex parse_complex(std::string_view text) {
  auto fail = [&]() -> Complex {
    throw ConfigError("malformed complex literal '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  auto parse_real = [&](std::string_view s) -> double {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    std::string buf(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(buf, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != buf.size()) fail();
    return v;
  };
  if (text.back() != 'i') {
    if (text == "+" || text == "-") return fail();
    return Complex(parse_real(text), 0.0);
  }
  std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return Complex(0.0, parse_real(body));
  const std::string_view re = body.substr(0, split);
  if (re.empty() || re == "+" || re == "-") return fail();
  return Complex(parse_real(re), parse_real(body.substr(split)));
}

}  // namespace dappell
