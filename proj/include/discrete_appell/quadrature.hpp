#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "appell.hpp"
#include "core.hpp"
#include "gamma.hpp"
#include "identity_types.hpp"
#include "kdf.hpp"
#include "params.hpp"
#include "series.hpp"

namespace dappell {

enum class RuleKind { GaussLegendre01, GaussLaguerre };

struct QuadratureNode {
  double abscissa = 0.0;
  double weight = 0.0;
};

/// Gauss rule for int_0^1 u^alpha (1-u)^beta f(u) du (GaussLegendre01) or
/// int_0^inf u^alpha e^{-u} f(u) du (GaussLaguerre). alpha = beta = 0 gives
/// the plain rules.
struct QuadratureRule {
  RuleKind kind = RuleKind::GaussLegendre01;
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t order = 0;
  std::vector<QuadratureNode> nodes;
  /// Largest moment error seen when the rule was built, relative to
  /// max(1, |moment|) on [0,1] and relative on [0,inf).
  double moment_error = 0.0;
};

namespace detail {

/// Orthonormal polynomial values p_0..p_{n} at x from monic recurrence
/// coefficients a_j (j < n) and b_j (1 <= j <= n).
inline void orthonormal_values(const std::vector<double>& a, const std::vector<double>& b,
                               double mu0, double x, std::vector<double>& p,
                               std::vector<double>& dp) {
  const std::size_t n = a.size();
  p.assign(n + 1, 0.0);
  dp.assign(n + 1, 0.0);
  p[0] = 1.0 / std::sqrt(mu0);
  double prev = 0.0, dprev = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double sb = std::sqrt(b[j + 1]);
    const double sbp = j > 0 ? std::sqrt(b[j]) : 0.0;
    p[j + 1] = ((x - a[j]) * p[j] - sbp * prev) / sb;
    dp[j + 1] = (p[j] + (x - a[j]) * dp[j] - sbp * dprev) / sb;
    prev = p[j];
    dprev = dp[j];
  }
}

inline QuadratureRule golub_welsch(RuleKind kind, double alpha, double beta, std::size_t n,
                                   const std::vector<double>& a, const std::vector<double>& b,
                                   double mu0) {
  Eigen::VectorXd diag(static_cast<Eigen::Index>(n));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(n > 1 ? n - 1 : 0));
  for (std::size_t j = 0; j < n; ++j) diag[static_cast<Eigen::Index>(j)] = a[j];
  for (std::size_t j = 1; j < n; ++j) sub[static_cast<Eigen::Index>(j - 1)] = std::sqrt(b[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("quadrature: eigenvalue solver failed");

  QuadratureRule rule;
  rule.kind = kind;
  rule.alpha = alpha;
  rule.beta = beta;
  rule.order = n;
  std::vector<double> p, dp;
  for (std::size_t i = 0; i < n; ++i) {
    double x = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    // Newton polish on p_n, then Christoffel weight 1 / sum p_j(x)^2.
    for (int it = 0; it < 3; ++it) {
      orthonormal_values(a, b, mu0, x, p, dp);
      if (dp[n] == 0.0) break;
      const double step = p[n] / dp[n];
      if (!std::isfinite(step) || std::abs(step) > 1e-6 * std::max(1.0, std::abs(x))) break;
      x -= step;
    }
    orthonormal_values(a, b, mu0, x, p, dp);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += p[j] * p[j];
    rule.nodes.push_back({x, 1.0 / s});
  }
  std::sort(rule.nodes.begin(), rule.nodes.end(),
            [](const QuadratureNode& l, const QuadratureNode& r) { return l.abscissa < r.abscissa; });
  return rule;
}

inline double log_beta(double p, double q) {
  return std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q);
}

}  // namespace detail

/// Gauss-Jacobi on (0,1) with weight u^alpha (1-u)^beta.
inline QuadratureRule gauss_jacobi01(std::size_t n, double alpha, double beta) {
  if (n < 1) throw ConfigError("quadrature order must be at least 1");
  if (!(alpha > -1.0) || !(beta > -1.0)) throw ConstraintError("Jacobi exponents must exceed -1");
  // Monic Jacobi recurrence on [-1,1] for (1-x)^A (1+x)^B, A = beta, B = alpha,
  // mapped to (0,1) by u = (1+x)/2.
  const double A = beta, B = alpha, s = A + B;
  std::vector<double> a(n), b(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double jj = static_cast<double>(j);
    double aj;
    if (j == 0) {
      aj = (B - A) / (s + 2.0);
    } else {
      aj = (B * B - A * A) / ((2.0 * jj + s) * (2.0 * jj + s + 2.0));
    }
    a[j] = (1.0 + aj) / 2.0;
  }
  for (std::size_t j = 1; j <= n; ++j) {
    const double jj = static_cast<double>(j);
    double bj;
    if (j == 1) {
      bj = 4.0 * (1.0 + A) * (1.0 + B) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
    } else {
      const double c = 2.0 * jj + s;
      bj = 4.0 * jj * (jj + A) * (jj + B) * (jj + s) / (c * c * (c + 1.0) * (c - 1.0));
    }
    b[j] = bj / 4.0;
  }
  const double mu0 = std::exp(detail::log_beta(alpha + 1.0, beta + 1.0));
  QuadratureRule rule = detail::golub_welsch(RuleKind::GaussLegendre01, alpha, beta, n, a, b, mu0);
  for (std::size_t j = 0; j < 2 * n; ++j) {
    double q = 0.0;
    for (const auto& nd : rule.nodes) q += nd.weight * std::pow(nd.abscissa, static_cast<double>(j));
    const double exact = std::exp(detail::log_beta(alpha + 1.0 + j, beta + 1.0));
    rule.moment_error = std::max(rule.moment_error, std::abs(q - exact) / std::max(1.0, exact));
  }
  return rule;
}

inline QuadratureRule gauss_legendre01(std::size_t n) { return gauss_jacobi01(n, 0.0, 0.0); }

/// Generalized Gauss-Laguerre with weight u^alpha e^{-u}.
inline QuadratureRule gauss_laguerre(std::size_t n, double alpha = 0.0) {
  if (n < 1) throw ConfigError("quadrature order must be at least 1");
  if (!(alpha > -1.0)) throw ConstraintError("Laguerre exponent must exceed -1");
  std::vector<double> a(n), b(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) a[j] = 2.0 * j + alpha + 1.0;
  for (std::size_t j = 1; j <= n; ++j) b[j] = j * (j + alpha);
  const double mu0 = std::tgamma(alpha + 1.0);
  QuadratureRule rule = detail::golub_welsch(RuleKind::GaussLaguerre, alpha, 0.0, n, a, b, mu0);
  for (std::size_t j = 0; j < 2 * n; ++j) {
    // log-sum-exp of log w + j log u against log Gamma(j + alpha + 1)
    double hi = -INFINITY;
    std::vector<double> logs;
    for (const auto& nd : rule.nodes) {
      logs.push_back(std::log(nd.weight) + j * std::log(nd.abscissa));
      hi = std::max(hi, logs.back());
    }
    double s = 0.0;
    for (double l : logs) s += std::exp(l - hi);
    const double log_q = hi + std::log(s);
    const double log_exact = std::lgamma(j + alpha + 1.0);
    rule.moment_error = std::max(rule.moment_error, std::abs(std::expm1(log_q - log_exact)));
  }
  return rule;
}

enum class IntegralRepId {
  V1_Euler,
  V1_LaplaceA,
  V1_LaplaceB1,
  V1_LaplaceB2,
  V1_LaplaceT1,
  V1_LaplaceT2,
  V2_Euler,
  V2_LaplaceA,
  V2_LaplaceB1,
  V2_LaplaceB2,
  V2_LaplaceT,
};

inline constexpr IntegralRepId kAllIntegralReps[] = {
    IntegralRepId::V1_Euler,     IntegralRepId::V1_LaplaceA,  IntegralRepId::V1_LaplaceB1,
    IntegralRepId::V1_LaplaceB2, IntegralRepId::V1_LaplaceT1, IntegralRepId::V1_LaplaceT2,
    IntegralRepId::V2_Euler,     IntegralRepId::V2_LaplaceA,  IntegralRepId::V2_LaplaceB1,
    IntegralRepId::V2_LaplaceB2, IntegralRepId::V2_LaplaceT,
};

inline const char* to_string(IntegralRepId id) {
  switch (id) {
    case IntegralRepId::V1_Euler: return "V1_Euler";
    case IntegralRepId::V1_LaplaceA: return "V1_LaplaceA";
    case IntegralRepId::V1_LaplaceB1: return "V1_LaplaceB1";
    case IntegralRepId::V1_LaplaceB2: return "V1_LaplaceB2";
    case IntegralRepId::V1_LaplaceT1: return "V1_LaplaceT1";
    case IntegralRepId::V1_LaplaceT2: return "V1_LaplaceT2";
    case IntegralRepId::V2_Euler: return "V2_Euler";
    case IntegralRepId::V2_LaplaceA: return "V2_LaplaceA";
    case IntegralRepId::V2_LaplaceB1: return "V2_LaplaceB1";
    case IntegralRepId::V2_LaplaceB2: return "V2_LaplaceB2";
    case IntegralRepId::V2_LaplaceT: return "V2_LaplaceT";
  }
  return "?";
}

inline Variant variant_of(IntegralRepId id) {
  return static_cast<int>(id) <= static_cast<int>(IntegralRepId::V1_LaplaceT2) ? Variant::V1
                                                                               : Variant::V2;
}

namespace detail {

/// (-t+i)/k for i < k.
inline std::vector<Complex> split_discrete(Complex t, unsigned k) {
  std::vector<Complex> r;
  for (unsigned i = 0; i < k; ++i) r.push_back((-t + static_cast<double>(i)) / static_cast<double>(k));
  return r;
}

inline double signed_kpow(unsigned k) {
  // (-k)^k, with 0^0 = 1
  return std::pow(-static_cast<double>(k), static_cast<double>(k));
}

inline std::vector<Complex> concat(std::vector<Complex> a, const std::vector<Complex>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline void require_positive(Complex z, const char* what) {
  if (!(z.real() > 0.0)) throw ConstraintError(std::string("integral representation needs Re(") + what + ") > 0");
}

/// u^{i Im(e)} for the part of a complex exponent the rule weight cannot carry.
inline Complex imaginary_power(double u, double im) {
  if (im == 0.0) return 1.0;
  return std::exp(Complex(0.0, im * std::log(u)));
}

}  // namespace detail

/// Tensor-product quadrature of the right-hand side of one integral
/// representation; the inner Kampe de Feriet series is summed at each node.
inline Complex eval_integral_rep(IntegralRepId id, const ParameterSet& q, const DiscreteParams& d_in,
                                 EvalPoint p, std::size_t order) {
  using detail::concat;
  using detail::split_discrete;
  const bool v1 = variant_of(id) == Variant::V1;
  if (v1 == (d_in.variant == Variant::V2))
    throw ConfigError("integral representation does not match the discrete variant");
  const DiscreteParams d = d_in.as_v1();
  SummationConfig inner;
  inner.rel_tolerance = 1e-9;

  auto kdf_value = [&](const KdFSpec& spec, Complex X, Complex Y) {
    SeriesValue v = eval_kdf(spec, X, Y, inner);
    if (!v.ok()) throw DivergenceError("inner series did not converge at a quadrature node", v);
    return v.value;
  };

  const std::vector<Complex> T1 = v1 ? split_discrete(d.t1, d.k1) : split_discrete(d.t, d.k);
  const std::vector<Complex> T2 = v1 ? split_discrete(d.t2, d.k2) : T1;
  const double s1 = v1 ? detail::signed_kpow(d.k1) : detail::signed_kpow(d.k);
  const double s2 = v1 ? detail::signed_kpow(d.k2) : s1;

  switch (id) {
    case IntegralRepId::V1_Euler:
    case IntegralRepId::V2_Euler: {
      detail::require_positive(q.b1, "b1");
      detail::require_positive(q.b2, "b2");
      detail::require_positive(q.c1 - q.b1, "c1-b1");
      detail::require_positive(q.c2 - q.b2, "c2-b2");
      const Complex e1 = q.b1 - 1.0, f1 = q.c1 - q.b1 - 1.0;
      const Complex e2 = q.b2 - 1.0, f2 = q.c2 - q.b2 - 1.0;
      const QuadratureRule U = gauss_jacobi01(order, e1.real(), f1.real());
      const QuadratureRule V = gauss_jacobi01(order, e2.real(), f2.real());
      const Complex pref = std::exp(log_gamma(q.c1) + log_gamma(q.c2) - log_gamma(q.b1) -
                                    log_gamma(q.b2) - log_gamma(q.c1 - q.b1) -
                                    log_gamma(q.c2 - q.b2));
      KdFSpec spec;
      if (v1) {
        spec.upper_joint = {q.a};
        spec.upper_x = T1;
        spec.upper_y = T2;
      } else {
        spec.upper_joint = concat({q.a}, T1);
      }
      Complex sum{};
      for (const auto& u : U.nodes) {
        const Complex wu = u.weight * detail::imaginary_power(u.abscissa, e1.imag()) *
                           detail::imaginary_power(1.0 - u.abscissa, f1.imag());
        Complex row{};
        for (const auto& v : V.nodes) {
          const Complex wv = v.weight * detail::imaginary_power(v.abscissa, e2.imag()) *
                             detail::imaginary_power(1.0 - v.abscissa, f2.imag());
          row += wv * kdf_value(spec, s1 * u.abscissa * p.x, s2 * v.abscissa * p.y);
        }
        sum += wu * row;
      }
      return pref * sum;
    }
    default: break;
  }

  // Single Laplace integral int_0^inf e^{-u} u^{w-1} K(u) du / Gamma(w).
  Complex w{};
  std::function<Complex(double)> integrand;
  KdFSpec spec;
  switch (id) {
    case IntegralRepId::V1_LaplaceA:
    case IntegralRepId::V2_LaplaceA:
      w = q.a;
      detail::require_positive(w, "a");
      if (v1) {
        spec.upper_x = concat({q.b1}, T1);
        spec.upper_y = concat({q.b2}, T2);
      } else {
        spec.upper_joint = T1;
        spec.upper_x = {q.b1};
        spec.upper_y = {q.b2};
      }
      spec.lower_x = {q.c1};
      spec.lower_y = {q.c2};
      integrand = [&](double u) { return kdf_value(spec, s1 * u * p.x, s2 * u * p.y); };
      break;
    case IntegralRepId::V1_LaplaceB1:
    case IntegralRepId::V2_LaplaceB1:
      w = q.b1;
      detail::require_positive(w, "b1");
      if (v1) {
        spec.upper_joint = {q.a};
        spec.upper_x = T1;
        spec.upper_y = concat({q.b2}, T2);
      } else {
        spec.upper_joint = concat({q.a}, T1);
        spec.upper_y = {q.b2};
      }
      spec.lower_x = {q.c1};
      spec.lower_y = {q.c2};
      integrand = [&](double u) { return kdf_value(spec, s1 * u * p.x, s2 * p.y); };
      break;
    case IntegralRepId::V1_LaplaceB2:
    case IntegralRepId::V2_LaplaceB2:
      w = q.b2;
      detail::require_positive(w, "b2");
      if (v1) {
        spec.upper_joint = {q.a};
        spec.upper_x = concat({q.b1}, T1);
        spec.upper_y = T2;
      } else {
        spec.upper_joint = concat({q.a}, T1);
        spec.upper_x = {q.b1};
      }
      spec.lower_x = {q.c1};
      spec.lower_y = {q.c2};
      integrand = [&](double v) { return kdf_value(spec, s1 * p.x, s2 * v * p.y); };
      break;
    case IntegralRepId::V1_LaplaceT1:
      w = -d.t1;
      detail::require_positive(w, "-t1");
      spec.upper_joint = {q.a};
      spec.upper_x = {q.b1};
      spec.upper_y = concat({q.b2}, T2);
      spec.lower_x = {q.c1};
      spec.lower_y = {q.c2};
      integrand = [&](double u) {
        const double g = std::pow(-u, static_cast<double>(d.k1));
        return kdf_value(spec, g * p.x, s2 * p.y);
      };
      break;
    case IntegralRepId::V1_LaplaceT2:
      w = -d.t2;
      detail::require_positive(w, "-t2");
      spec.upper_joint = {q.a};
      spec.upper_x = concat({q.b1}, T1);
      spec.upper_y = {q.b2};
      spec.lower_x = {q.c1};
      spec.lower_y = {q.c2};
      integrand = [&](double v) {
        const double g = std::pow(-v, static_cast<double>(d.k2));
        return kdf_value(spec, s1 * p.x, g * p.y);
      };
      break;
    case IntegralRepId::V2_LaplaceT:
      w = -d.t;
      detail::require_positive(w, "-t");
      spec.upper_joint = {q.a};
      spec.upper_x = {q.b1};
      spec.upper_y = {q.b2};
      spec.lower_x = {q.c1};
      spec.lower_y = {q.c2};
      integrand = [&](double v) {
        const double g = std::pow(-v, static_cast<double>(d.k));
        return kdf_value(spec, g * p.x, g * p.y);
      };
      break;
    default: break;
  }
  const Complex e = w - 1.0;
  const QuadratureRule L = gauss_laguerre(order, e.real());
  Complex sum{};
  for (const auto& nd : L.nodes)
    sum += nd.weight * detail::imaginary_power(nd.abscissa, e.imag()) * integrand(nd.abscissa);
  return sum * std::exp(-log_gamma(w));
}

/// Terminating point at which a representation's constraints hold.
struct IntegralSmokePoint {
  ParameterSet params;
  DiscreteParams discrete;
  EvalPoint point;
};

inline IntegralSmokePoint smoke_point(IntegralRepId id) {
  const ParameterSet base{1.1, 1.2, 1.3, 2.5, 2.6};
  const EvalPoint z{0.2, 0.15};
  switch (id) {
    case IntegralRepId::V1_Euler: return {base, DiscreteParams::v1(2.0, 2.0, 1, 1), z};
    case IntegralRepId::V1_LaplaceA: return {base, DiscreteParams::v1(3.0, 4.0, 1, 2), z};
    case IntegralRepId::V1_LaplaceB1: return {base, DiscreteParams::v1(4.0, 2.0, 2, 1), z};
    case IntegralRepId::V1_LaplaceB2: return {base, DiscreteParams::v1(2.0, 3.0, 1, 1), z};
    case IntegralRepId::V1_LaplaceT1: {
      // Re(-t1) > 0 rules out a terminating t1; b1 = -2 ends the series instead.
      ParameterSet q = base;
      q.b1 = -2.0;
      return {q, DiscreteParams::v1(-1.5, 3.0, 1, 1), z};
    }
    case IntegralRepId::V1_LaplaceT2: {
      ParameterSet q = base;
      q.b2 = -2.0;
      return {q, DiscreteParams::v1(4.0, -0.7, 2, 2), z};
    }
    case IntegralRepId::V2_Euler: return {base, DiscreteParams::v2(3.0, 1), z};
    case IntegralRepId::V2_LaplaceA: return {base, DiscreteParams::v2(4.0, 2), z};
    case IntegralRepId::V2_LaplaceB1: return {base, DiscreteParams::v2(2.0, 1), z};
    case IntegralRepId::V2_LaplaceB2: return {base, DiscreteParams::v2(3.0, 2), z};
    case IntegralRepId::V2_LaplaceT: {
      ParameterSet q = base;
      q.a = -2.0;
      return {q, DiscreteParams::v2(-1.5, 2), z};
    }
  }
  return {base, DiscreteParams::v1(2.0, 2.0, 1, 1), z};
}

/// Quadrature at each order in `orders` against the series value: the last
/// two orders must agree and the final residual must be within 1e-6.
inline IdentityCheckResult verify_integral_rep(IntegralRepId id, const ParameterSet& q,
                                               const DiscreteParams& d, EvalPoint p,
                                               const std::vector<std::size_t>& orders) {
  if (orders.size() < 2) throw ConfigError("verify_integral_rep needs at least two orders");
  const SeriesValue sv = eval_discrete_f2(q, d, p);
  if (!sv.ok()) throw DivergenceError("series value did not converge", sv);
  const Complex series = sv.value;
  std::vector<Complex> quad;
  std::vector<double> res;
  for (std::size_t n : orders) {
    quad.push_back(eval_integral_rep(id, q, d, p, n));
    res.push_back(std::abs(quad.back() - series));
  }
  constexpr double tol = 1e-6;
  const double scale = std::abs(series);
  // Residuals at machine-precision level cannot be ordered meaningfully.
  const double floor = 64.0 * 2.220446049250313e-16 * std::max(1.0, scale);
  const bool stable = std::abs(quad.back() - quad[quad.size() - 2]) <= tol * scale;
  const bool monotone = res.back() <= std::max(2.0 * res.front(), floor);

  IdentityId ident{Family::IntegralRep, variant_of(id), to_string(id)};
  PointRecord rec{q, d, p, {}};
  std::ostringstream os;
  for (std::size_t i = 0; i < orders.size(); ++i) os << (i ? "," : "") << orders[i];
  rec.with("orders", os.str());
  IdentityCheckResult r = judge(ident, rec, quad.back(), series, 0.0, tol);
  std::ostringstream notes;
  notes << "residuals by order:";
  for (double v : res) notes << " " << v;
  if (!stable) notes << "; not stabilized between the last two orders";
  if (!monotone) notes << "; residual grew with order";
  r.notes = notes.str();
  r.passed = r.passed && stable && monotone;
  return r;
}

}  // namespace dappell
