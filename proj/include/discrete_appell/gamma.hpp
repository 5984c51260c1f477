#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <tuple>
#include <vector>

#include "core.hpp"

namespace dappell {

namespace detail {

// Lanczos approximation, g = 7, nine coefficients.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline Complex normalize_log_branch(Complex w) {
  double im = std::remainder(w.imag(), 2.0 * kPi);
  if (im <= -kPi) im += 2.0 * kPi;
  return {w.real(), im};
}

inline Complex lanczos_log_gamma(Complex z) {
  z -= 1.0;
  Complex sum = kLanczosCoef[0];
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i)
    sum += kLanczosCoef[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace detail

/// Principal branch of log Gamma(z). Imaginary part is reduced to (-pi, pi].
inline Complex log_gamma(Complex z) {
  if (nonpositive_integer(z)) throw PoleError("log_gamma: pole at non-positive integer");
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    const Complex s = std::sin(kPi * z);
    return detail::normalize_log_branch(std::log(kPi) - std::log(s) -
                                        detail::lanczos_log_gamma(1.0 - z));
  }
  return detail::normalize_log_branch(detail::lanczos_log_gamma(z));
}

inline Complex cgamma(Complex z) { return std::exp(log_gamma(z)); }

/// Threshold below which Pochhammer symbols are formed by direct product.
inline constexpr unsigned kPochhammerDirectLimit = 64;

/// Rising factorial (a)_n.
inline Complex pochhammer(Complex a, unsigned n) {
  const bool near_pole = nonpositive_integer(a) || nonpositive_integer(a + static_cast<double>(n));
  if (n < kPochhammerDirectLimit || near_pole) {
    Complex p = 1.0;
    for (unsigned j = 0; j < n; ++j) p *= a + static_cast<double>(j);
    return p;
  }
  return std::exp(log_gamma(a + static_cast<double>(n)) - log_gamma(a));
}

/// (-1)^{mk} (-t)_{mk}, the falling factorial t(t-1)...(t-mk+1).
inline Complex discrete_factor(Complex t, unsigned k, unsigned m) {
  if (k == 0 || m == 0) return 1.0;
  const unsigned n = m * k;
  Complex v = pochhammer(-t, n);
  if (n % 2 == 1) v = -v;
  if (!is_finite(v)) throw OverflowError("discrete_factor: result outside floating range");
  return v;
}

/// Same quantity via (-t)_{mk} = k^{mk} prod_{i<k} ((-t+i)/k)_m.
inline Complex discrete_factor_factorized(Complex t, unsigned k, unsigned m) {
  if (k == 0 || m == 0) return 1.0;
  const double kd = static_cast<double>(k);
  const double km = std::pow(kd, static_cast<double>(m));
  Complex v = 1.0;
  for (unsigned i = 0; i < k; ++i) v *= km * pochhammer((-t + static_cast<double>(i)) / kd, m);
  if ((m * k) % 2 == 1) v = -v;
  if (!is_finite(v)) throw OverflowError("discrete_factor: result outside floating range");
  return v;
}

/// ((a)_{m+n+r}, (a)_{m+n} (a+m+n)_r, (a)_r (a+r)_{m+n})
inline std::tuple<Complex, Complex, Complex> pochhammer_split(Complex a, unsigned m, unsigned n,
                                                              unsigned r) {
  const double mn = static_cast<double>(m + n);
  return {pochhammer(a, m + n + r), pochhammer(a, m + n) * pochhammer(a + mn, r),
          pochhammer(a, r) * pochhammer(a + static_cast<double>(r), m + n)};
}

/// values()[n] == (base)_n, built by the recurrence (base)_{n+1} = (base)_n (base+n).
class PochhammerLadder {
 public:
  explicit PochhammerLadder(Complex base, std::size_t length = 1) : base_(base), values_{1.0} {
    extend(length);
  }

  void extend(std::size_t length) {
    while (values_.size() < length) {
      const double n = static_cast<double>(values_.size() - 1);
      values_.push_back(values_.back() * (base_ + n));
    }
  }

  Complex operator[](std::size_t n) {
    extend(n + 1);
    return values_[n];
  }

  Complex base() const { return base_; }
  std::size_t length() const { return values_.size(); }
  const std::vector<Complex>& values() const { return values_; }

 private:
  Complex base_;
  std::vector<Complex> values_;
};

}  // namespace dappell
