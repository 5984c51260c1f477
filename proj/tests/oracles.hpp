// Reference implementations used only by the tests. They share no code with
// the library's summation path.
#pragma once

#include <discrete_appell/kdf.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using LComplex = std::complex<long double>;

/// log (a)_j for j <= len in long double; entries past an exact zero factor
/// are flagged in `zero_from`.
struct LogRising {
  std::vector<LComplex> log;
  std::size_t zero_from = static_cast<std::size_t>(-1);
};

inline LogRising log_rising(std::complex<double> a, std::size_t len) {
  LogRising r;
  r.log.assign(len + 1, 0.0L);
  const LComplex al(a.real(), a.imag());
  for (std::size_t j = 0; j < len; ++j) {
    const LComplex f = al + static_cast<long double>(j);
    if (f == 0.0L) {
      r.zero_from = std::min(r.zero_from, j + 1);
      r.log[j + 1] = r.log[j];
    } else {
      r.log[j + 1] = r.log[j] + std::log(f);
    }
  }
  return r;
}

/// Term-by-term Kampe de Feriet sum in long double, each term rebuilt from
/// log-Pochhammer tables. Stops once `quiet` consecutive diagonals are below
/// 1e-30 of the running sum, or at `max_diag`.
inline LComplex kdf(const dappell::KdFSpec& s, std::complex<double> x, std::complex<double> y,
                    std::size_t max_diag = 2000, std::size_t quiet = 6) {
  const std::size_t D = max_diag + 1;
  auto tables = [&](const std::vector<std::complex<double>>& row) {
    std::vector<LogRising> out;
    for (auto p : row) out.push_back(log_rising(p, D));
    return out;
  };
  const auto A = tables(s.upper_joint), B = tables(s.upper_x), C = tables(s.upper_y);
  const auto Dj = tables(s.lower_joint), E = tables(s.lower_x), F = tables(s.lower_y);
  std::vector<long double> lfact(D + 1, 0.0L);
  for (std::size_t j = 1; j <= D; ++j) lfact[j] = lfact[j - 1] + std::log(static_cast<long double>(j));
  const LComplex xl(x.real(), x.imag()), yl(y.real(), y.imag());
  const LComplex lx = xl == 0.0L ? LComplex(0.0L) : std::log(xl);
  const LComplex ly = yl == 0.0L ? LComplex(0.0L) : std::log(yl);

  LComplex sum = 0.0L;
  std::size_t calm = 0;
  for (std::size_t d = 0; d <= max_diag; ++d) {
    long double biggest = 0.0L;
    for (std::size_t m = 0; m <= d; ++m) {
      const std::size_t n = d - m;
      if ((m > 0 && xl == 0.0L) || (n > 0 && yl == 0.0L)) continue;
      bool zero = false, pole = false;
      LComplex l = -lfact[m] - lfact[n] + static_cast<long double>(m) * lx +
                   static_cast<long double>(n) * ly;
      auto up = [&](const std::vector<LogRising>& row, std::size_t j) {
        for (const auto& t : row) {
          if (j >= t.zero_from) zero = true;
          l += t.log[j];
        }
      };
      auto down = [&](const std::vector<LogRising>& row, std::size_t j) {
        for (const auto& t : row) {
          if (j >= t.zero_from) pole = true;
          l -= t.log[j];
        }
      };
      up(A, d);
      up(B, m);
      up(C, n);
      down(Dj, d);
      down(E, m);
      down(F, n);
      if (zero) continue;
      if (pole) return LComplex(NAN, NAN);
      const LComplex term = std::exp(l);
      sum += term;
      biggest = std::max(biggest, std::abs(term));
    }
    calm = biggest <= 1e-30L * std::abs(sum) ? calm + 1 : 0;
    if (calm >= quiet) break;
  }
  return sum;
}

inline double rel(std::complex<double> a, LComplex b) {
  const std::complex<double> bd(static_cast<double>(b.real()), static_cast<double>(b.imag()));
  const double s = std::max(std::abs(a), std::abs(bd));
  return s == 0.0 ? 0.0 : std::abs(a - bd) / s;
}

inline double rel(std::complex<double> a, std::complex<double> b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

/// Twenty convergent Kampe de Feriet instances of assorted shapes.
inline std::vector<std::pair<dappell::KdFSpec, std::pair<std::complex<double>, std::complex<double>>>>
convergent_points() {
  using C = std::complex<double>;
  std::vector<std::pair<dappell::KdFSpec, std::pair<C, C>>> out;
  auto add = [&](dappell::KdFSpec s, C x, C y) { out.push_back({s, {x, y}}); };
  // F2 shapes
  add({{1.0}, {1.0}, {1.0}, {}, {2.0}, {2.0}}, 0.3, 0.3);
  add({{1.5}, {0.7}, {1.2}, {}, {2.2}, {1.9}}, 0.25, 0.2);
  add({{C(1.3, 0.4)}, {C(0.8, -0.2)}, {1.2}, {}, {C(2.1, 0.3)}, {1.7}}, 0.2, C(0.1, 0.2));
  add({{0.5}, {2.5}, {0.5}, {}, {1.5}, {3.5}}, -0.4, 0.3);
  add({{2.0}, {1.0}, {3.0}, {}, {4.0}, {2.5}}, C(0.1, 0.1), C(-0.2, 0.1));
  // Appell F1/F3/F4-like and Horn-type shapes
  add({{1.2}, {0.4}, {0.6}, {2.7}, {}, {}}, 0.5, 0.3);
  add({{}, {1.1, 0.9}, {1.3, 0.7}, {2.2}, {}, {}}, 0.4, 0.35);
  add({{1.1, 0.8}, {}, {}, {}, {1.9}, {2.4}}, 0.15, 0.1);
  add({{}, {0.5}, {1.5}, {}, {1.5}, {2.5}}, 0.6, -0.6);
  add({{}, {}, {}, {}, {}, {}}, 0.3, 0.2);
  add({{}, {}, {}, {}, {}, {}}, C(1.5, -0.5), 2.0);
  // Humbert-like confluent shapes
  add({{1.4}, {0.6}, {}, {}, {1.8}, {2.3}}, 0.5, 3.0);
  add({{1.4}, {}, {}, {}, {1.8}, {2.3}}, 2.0, -1.5);
  // Several parameters per row
  add({{1.2, 0.6}, {0.9}, {1.1}, {2.5}, {1.7}, {1.3}}, 0.2, 0.25);
  add({{0.3}, {0.4, 1.7}, {0.9, 2.2}, {}, {1.6, 2.1}, {1.4, 2.8}}, 0.3, 0.3);
  add({{C(0.7, 0.7)}, {C(1.0, -0.5)}, {C(0.5, 0.5)}, {C(2.0, 0.1)}, {}, {}}, C(0.2, -0.3), 0.3);
  add({{1.0}, {1.0}, {1.0}, {3.0}, {}, {}}, 0.6, 0.3);
  add({{2.5}, {-0.5}, {1.5}, {}, {0.25}, {3.75}}, 0.3, 0.4);
  add({{3.1}, {1.3}, {0.2}, {}, {5.2}, {0.6}}, 0.33, 0.22);
  add({{0.9}, {1.9}, {0.1}, {}, {C(2.9, -1.0)}, {C(1.1, 1.0)}}, C(0.0, 0.45), C(0.25, -0.25));
  return out;
}

}  // namespace oracle
