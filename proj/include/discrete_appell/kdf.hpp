#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "core.hpp"
#include "series.hpp"

namespace dappell {

/// Kampe de Feriet double series
///   sum (A)_{m+n} (B)_m (C)_n / ((D)_{m+n} (E)_m (F)_n m! n!) x^m y^n
/// where each row stands for a product of Pochhammer symbols.
struct KdFSpec {
  std::vector<Complex> upper_joint;  // A
  std::vector<Complex> upper_x;      // B
  std::vector<Complex> upper_y;      // C
  std::vector<Complex> lower_joint;  // D
  std::vector<Complex> lower_x;      // E
  std::vector<Complex> lower_y;      // F
};

namespace detail {

inline std::optional<std::size_t> row_cutoff(const std::vector<Complex>& row) {
  std::optional<std::size_t> cut;
  for (const Complex& p : row)
    if (auto n = nonpositive_integer(p)) {
      const auto v = static_cast<std::size_t>(*n);
      cut = cut ? std::min(*cut, v) : v;
    }
  return cut;
}

inline std::vector<Complex> snapped(std::vector<Complex> row) {
  for (Complex& p : row) p = snap_nonpositive(p);
  return row;
}

inline Complex pole_value() {
  const double inf = std::numeric_limits<double>::infinity();
  return {inf, inf};
}

}  // namespace detail

template <class Weight>
SeriesValue eval_kdf_weighted(const KdFSpec& spec, Complex x, Complex y,
                              const SummationConfig& cfg, Weight&& weight) {
  const auto A = detail::snapped(spec.upper_joint);
  const auto B = detail::snapped(spec.upper_x);
  const auto C = detail::snapped(spec.upper_y);
  const auto D = detail::snapped(spec.lower_joint);
  const auto E = detail::snapped(spec.lower_x);
  const auto F = detail::snapped(spec.lower_y);

  SeriesExtent extent;
  extent.max_total = detail::row_cutoff(A);
  extent.max_m = detail::row_cutoff(B);
  extent.max_n = detail::row_cutoff(C);

  // Ratio for stepping one index with the other fixed; `own` is the index
  // being stepped, `total` = m + n before the step.
  auto ratio = [&](const std::vector<Complex>& up, const std::vector<Complex>& low,
                   std::size_t own, std::size_t total) -> Complex {
    const double o = static_cast<double>(own);
    const double s = static_cast<double>(total);
    Complex num = 1.0, den = o + 1.0;
    for (const Complex& p : A) num *= p + s;
    for (const Complex& p : up) num *= p + o;
    for (const Complex& p : D) den *= p + s;
    for (const Complex& p : low) den *= p + o;
    if (den == Complex{}) return detail::pole_value();
    return num / den;
  };
  auto rm = [&](std::size_t m, std::size_t n) { return ratio(B, E, m, m + n); };
  auto rn = [&](std::size_t m, std::size_t n) { return ratio(C, F, n, m + n); };

  SeriesValue v = sum_double_series(rm, rn, x, y, cfg, extent, weight);
  if (v.status == SeriesStatus::DivergenceDetected)
    throw DivergenceError("Kampe de Feriet series diverges at this point", v);
  return v;
}

inline SeriesValue eval_kdf(const KdFSpec& spec, Complex x, Complex y,
                            const SummationConfig& cfg = {}) {
  return eval_kdf_weighted(spec, x, y, cfg, UnitWeight{});
}

}  // namespace dappell
