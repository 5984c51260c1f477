#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace dappell {

struct TermIndex {
  std::size_t m = 0;
  std::size_t n = 0;
};

enum class SeriesStatus { Terminated, Converged, MaxTermsReached, DivergenceDetected };

inline const char* to_string(SeriesStatus s) {
  switch (s) {
    case SeriesStatus::Terminated: return "Terminated";
    case SeriesStatus::Converged: return "Converged";
    case SeriesStatus::MaxTermsReached: return "MaxTermsReached";
    case SeriesStatus::DivergenceDetected: return "DivergenceDetected";
  }
  return "?";
}

struct SeriesValue {
  Complex value{};
  std::size_t terms_used = 0;
  double tail_estimate = 0.0;
  SeriesStatus status = SeriesStatus::Terminated;

  bool ok() const {
    return status == SeriesStatus::Terminated || status == SeriesStatus::Converged;
  }
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, SeriesValue partial)
      : Error(what), partial_(partial) {}
  const SeriesValue& partial() const { return partial_; }

 private:
  SeriesValue partial_;
};

struct SummationConfig {
  double rel_tolerance = 1e-14;
  std::size_t max_diagonal = 512;
  std::size_t divergence_window = 8;

  void validate() const {
    if (!(rel_tolerance > 0.0) || !std::isfinite(rel_tolerance))
      throw ConfigError("rel_tolerance must be positive");
    if (max_diagonal < 1) throw ConfigError("max_diagonal must be at least 1");
    if (divergence_window < 1) throw ConfigError("divergence_window must be at least 1");
  }
};

/// Known support of the coefficient array. Terms outside it are zero.
struct SeriesExtent {
  std::optional<std::size_t> max_m;
  std::optional<std::size_t> max_n;
  std::optional<std::size_t> max_total;

  bool finite() const { return max_total.has_value() || (max_m && max_n); }
};

struct UnitWeight {
  Complex operator()(std::size_t, std::size_t) const { return 1.0; }
};

/// First anti-diagonal index after which growth counts as divergence.
inline constexpr std::size_t kDivergenceOnset = 16;

/// Sums T(m,n) w(m,n) x^m y^n over anti-diagonals m+n = d.
/// ratio_m(m,n) = T(m+1,n)/T(m,n), ratio_n(m,n) = T(m,n+1)/T(m,n), T(0,0) = 1.
/// A ratio is only requested where the preceding coefficient is nonzero; an
/// infinite ratio there is a pole and raises PoleError.
template <class RatioM, class RatioN, class Weight = UnitWeight>
SeriesValue sum_double_series(RatioM&& ratio_m, RatioN&& ratio_n, Complex x, Complex y,
                              const SummationConfig& cfg, const SeriesExtent& extent = {},
                              Weight&& weight = {}) {
  cfg.validate();
  SeriesValue out;
  std::vector<Complex> prev{1.0}, cur;
  std::size_t prev_lo = 0;
  std::vector<Complex> xp{1.0}, yp{1.0};
  std::vector<double> mags;

  Complex acc = weight(std::size_t{0}, std::size_t{0});
  mags.push_back(std::abs(acc));
  out.terms_used = 1;
  std::size_t small_run = 0;

  auto growing_tail = [&]() {
    const std::size_t w = cfg.divergence_window;
    const std::size_t d = mags.size() - 1;
    if (d < kDivergenceOnset + w) return false;
    for (std::size_t j = d - w + 1; j <= d; ++j)
      if (!(mags[j] > mags[j - 1]) || mags[j - 1] == 0.0) return false;
    return true;
  };

  for (std::size_t d = 1;; ++d) {
    const std::size_t lo = extent.max_n && d > *extent.max_n ? d - *extent.max_n : 0;
    const std::size_t hi = extent.max_m ? std::min(d, *extent.max_m) : d;
    if ((extent.max_total && d > *extent.max_total) || lo > hi) {
      out.status = SeriesStatus::Terminated;
      break;
    }
    if (d > cfg.max_diagonal) {
      out.status = growing_tail() ? SeriesStatus::DivergenceDetected
                                  : SeriesStatus::MaxTermsReached;
      out.tail_estimate = mags.back();
      break;
    }
    xp.push_back(xp.back() * x);
    yp.push_back(yp.back() * y);

    cur.assign(hi - lo + 1, Complex{});
    bool all_zero = true;
    bool overflow = false;
    Complex diag{};
    double mag = 0.0;
    for (std::size_t m = lo; m <= hi; ++m) {
      const std::size_t n = d - m;
      Complex base;
      Complex r;
      if (m >= 1 && m - 1 >= prev_lo) {
        base = prev[m - 1 - prev_lo];
        if (base == Complex{}) continue;
        r = ratio_m(m - 1, n);
      } else {
        base = prev[m - prev_lo];
        if (base == Complex{}) continue;
        r = ratio_n(m, n - 1);
      }
      if (!is_finite(r))
        throw PoleError("series coefficient hits a pole at (" + std::to_string(m) + "," +
                        std::to_string(n) + ")");
      const Complex term = base * r;
      cur[m - lo] = term;
      if (term == Complex{}) continue;
      all_zero = false;
      const Complex contrib = weight(m, n) * term * xp[m] * yp[n];
      if (!is_finite(contrib)) overflow = true;
      diag += contrib;
      mag += std::abs(contrib);
    }
    out.terms_used += hi - lo + 1;
    if (all_zero) {
      out.status = SeriesStatus::Terminated;
      break;
    }
    if (overflow || !is_finite(diag)) {
      out.status = SeriesStatus::DivergenceDetected;
      out.tail_estimate = std::numeric_limits<double>::infinity();
      break;
    }
    acc += diag;
    mags.push_back(mag);
    std::swap(prev, cur);
    prev_lo = lo;

    if (growing_tail()) {
      // Growth with a non-decreasing ratio; a convergent series past its
      // peak has a ratio that eventually falls.
      const std::size_t w = cfg.divergence_window;
      const std::size_t e = mags.size() - 1;
      const double first = mags[e - w + 1] / mags[e - w];
      const double last = mags[e] / mags[e - 1];
      if (last >= first) {
        out.status = SeriesStatus::DivergenceDetected;
        out.tail_estimate = mag;
        break;
      }
    }

    small_run = mag <= cfg.rel_tolerance * std::abs(acc) ? small_run + 1 : 0;
    if (small_run >= cfg.divergence_window) {
      const double before = mags[mags.size() - 2];
      double tail = mag;
      if (before > 0.0 && mag < before) {
        const double q = mag / before;
        tail = mag * q / (1.0 - q);
      }
      if (tail <= cfg.rel_tolerance * std::max(1.0, std::abs(acc))) {
        out.status = SeriesStatus::Converged;
        out.tail_estimate = tail;
        break;
      }
    }
  }
  out.value = acc;
  if (out.status == SeriesStatus::Terminated) out.tail_estimate = 0.0;
  return out;
}

}  // namespace dappell
