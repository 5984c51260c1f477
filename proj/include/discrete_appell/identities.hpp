#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <iterator>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "appell.hpp"
#include "core.hpp"
#include "gamma.hpp"
#include "identity_types.hpp"
#include "kdf.hpp"
#include "operators.hpp"
#include "params.hpp"
#include "quadrature.hpp"
#include "series.hpp"

namespace dappell {

inline constexpr double kReductionTolerance = 1e-12;

namespace detail {

inline Complex value_of(const ParameterSet& q, const DiscreteParams& d, EvalPoint p,
                        const SummationConfig& cfg) {
  SeriesValue v = eval_discrete_f2(q, d, p, cfg);
  if (!v.ok()) throw DivergenceError("series did not converge within budget", v);
  return v.value;
}

template <class W>
Complex weighted_value(const ParameterSet& q, const DiscreteParams& d, EvalPoint p,
                       const SummationConfig& cfg, W&& w) {
  SeriesValue v = eval_discrete_f2_weighted(q, d, p, cfg, w);
  if (!v.ok()) throw DivergenceError("series did not converge within budget", v);
  return v.value;
}

inline bool terminating(const DiscreteParams& d) {
  if (d.variant == Variant::V2) return d.k >= 1 && nonnegative_integer(d.t).has_value();
  const DiscreteParams v = d.as_v1();
  return v.k1 >= 1 && v.k2 >= 1 && nonnegative_integer(v.t1) && nonnegative_integer(v.t2);
}

inline double tolerance_for(const DiscreteParams& d, bool truncated) {
  return truncated || !terminating(d) ? kTruncatedTolerance : kTerminatingTolerance;
}

// Discrete data attached to the x (axis 0) or y (axis 1) direction. For the
// joint variant both directions share (t, k).
inline Complex axis_t(const DiscreteParams& d, int axis) {
  if (d.variant == Variant::V2) return d.t;
  return axis == 0 ? d.t1 : d.t2;
}
inline unsigned axis_k(const DiscreteParams& d, int axis) {
  if (d.variant == Variant::V2) return d.k;
  return axis == 0 ? d.k1 : d.k2;
}
/// (-1)^{sk} (-t)_{sk} for the direction.
inline Complex axis_factor(const DiscreteParams& d, int axis, unsigned s) {
  return discrete_factor(axis_t(d, axis), axis_k(d, axis), s);
}
/// Discrete data with the direction's t lowered by s k.
inline DiscreteParams axis_lowered(DiscreteParams d, int axis, unsigned s) {
  const double step = static_cast<double>(s) * axis_k(d, axis);
  if (d.variant == Variant::V2)
    d.t -= step;
  else if (axis == 0)
    d.t1 -= step;
  else
    d.t2 -= step;
  return d;
}

inline DiscreteParams normalized(const DiscreteParams& d) {
  return d.variant == Variant::V3 ? d.as_v1() : d;
}

inline void require_variant(Variant variant, const DiscreteParams& d) {
  if (variant == Variant::V3) throw PreconditionError("identities are catalogued for V1 and V2");
  if ((variant == Variant::V2) != (d.variant == Variant::V2))
    throw PreconditionError("discrete parameters do not match the requested variant");
}

/// Adds coef * f() unless coef vanishes. Shifted functions behind a zero
/// coefficient may sit outside their convergence region.
template <class Fn>
void accumulate(Complex& acc, double& scale, Complex coef, Fn&& f) {
  if (coef == Complex{}) return;
  const Complex v = coef * f();
  acc += v;
  scale += std::abs(v);
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

inline Complex cpow(Complex base, Complex e) {
  if (base == Complex{}) return 1.0;
  return std::pow(base, e);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Differential and difference formulas

enum class DiffFormulaId { Eq4_1, Eq_e32, theta_r, phi_r, dX_b1, dY_b2, dX_a, dY_a, dX_c1, dY_c2 };

inline constexpr DiffFormulaId kAllDiffFormulas[] = {
    DiffFormulaId::Eq4_1, DiffFormulaId::Eq_e32, DiffFormulaId::theta_r, DiffFormulaId::phi_r,
    DiffFormulaId::dX_b1, DiffFormulaId::dY_b2,  DiffFormulaId::dX_a,    DiffFormulaId::dY_a,
    DiffFormulaId::dX_c1, DiffFormulaId::dY_c2,
};

inline const char* to_string(DiffFormulaId w) {
  switch (w) {
    case DiffFormulaId::Eq4_1: return "Eq4_1";
    case DiffFormulaId::Eq_e32: return "Eq_e32";
    case DiffFormulaId::theta_r: return "theta_r";
    case DiffFormulaId::phi_r: return "phi_r";
    case DiffFormulaId::dX_b1: return "dX_b1";
    case DiffFormulaId::dY_b2: return "dY_b2";
    case DiffFormulaId::dX_a: return "dX_a";
    case DiffFormulaId::dY_a: return "dY_a";
    case DiffFormulaId::dX_c1: return "dX_c1";
    case DiffFormulaId::dY_c2: return "dY_c2";
  }
  return "?";
}

/// Operator formulas on F live in DiffFormula, derivatives of products with
/// powers of x or y in DiffOpFormula.
inline Family family_of(DiffFormulaId w) {
  switch (w) {
    case DiffFormulaId::Eq4_1:
    case DiffFormulaId::Eq_e32:
    case DiffFormulaId::theta_r:
    case DiffFormulaId::phi_r: return Family::DiffFormula;
    default: return Family::DiffOpFormula;
  }
}

/// The difference formulas exist only for the separate variant.
inline bool applies_to(DiffFormulaId w, Variant v) {
  return v == Variant::V1 || (w != DiffFormulaId::Eq4_1 && w != DiffFormulaId::Eq_e32);
}

inline IdentityCheckResult check_diff_formula(DiffFormulaId which, Variant variant, unsigned r,
                                              const ParameterSet& q, const DiscreteParams& d_in,
                                              EvalPoint p, const SummationConfig& cfg = {}) {
  using O = OperatorExpr;
  const DiscreteParams d = detail::normalized(d_in);
  detail::require_variant(variant, d);
  if (r < 1) throw PreconditionError("differential formulas need r >= 1");
  if (!applies_to(which, variant))
    throw PreconditionError("no difference formula for the joint variant");
  if (which == DiffFormulaId::Eq4_1 && d.k1 != 1)
    throw PreconditionError("the t1 difference formula needs k1 = 1");
  if (which == DiffFormulaId::Eq_e32 && d.k2 != 1)
    throw PreconditionError("the t2 difference formula needs k2 = 1");

  const double rr = r;
  IdentityId id{family_of(which), variant, std::string(to_string(which)) + "/r=" + std::to_string(r)};
  PointRecord rec{q, d, p, {}};
  rec.with("r", std::to_string(r));
  const double tol = detail::tolerance_for(d, false);
  auto F = [&](const ParameterSet& s, const DiscreteParams& e, EvalPoint at) {
    return detail::value_of(s, e, at, cfg);
  };

  switch (which) {
    case DiffFormulaId::Eq4_1:
    case DiffFormulaId::Eq_e32: {
      const bool onx = which == DiffFormulaId::Eq4_1;
      const Complex l = apply(O::power(O::delta(onx ? 0 : 1), r), make_evaluable(q, d, cfg),
                              operator_point(d, p));
      const Complex b = onx ? q.b1 : q.b2, c = onx ? q.c1 : q.c2;
      const Complex coef =
          pochhammer(q.a, r) * pochhammer(b, r) * std::pow(onx ? p.x : p.y, rr) / pochhammer(c, r);
      ParameterSet s = q;
      s.a += rr;
      (onx ? s.b1 : s.b2) += rr;
      (onx ? s.c1 : s.c2) += rr;
      const Complex rhs = coef == Complex{} ? Complex{} : coef * F(s, d, p);
      return judge(id, rec, l, rhs, 0.0, tol);
    }
    case DiffFormulaId::theta_r:
    case DiffFormulaId::phi_r: {
      const bool onx = which == DiffFormulaId::theta_r;
      const int axis = onx ? 0 : 1;
      const EvaluableFunction G = make_evaluable(q, d, cfg);
      const OperatorPoint at = operator_point(d, p);
      const O E = onx ? O::euler_x() : O::euler_y();
      const Complex l = apply(O::power(E, r), G, at);
      const Complex b = onx ? q.b1 : q.b2, c = onx ? q.c1 : q.c2;
      const Complex coef = detail::axis_factor(d, axis, r) * pochhammer(q.a, r) * pochhammer(b, r) *
                           std::pow(onx ? p.x : p.y, rr) / pochhammer(c, r);
      ParameterSet s = q;
      s.a += rr;
      (onx ? s.b1 : s.b2) += rr;
      (onx ? s.c1 : s.c2) += rr;
      const Complex rhs =
          coef == Complex{} ? Complex{} : coef * F(s, detail::axis_lowered(d, axis, r), p);
      IdentityCheckResult res = judge(id, rec, l, rhs, 0.0, tol);
      if (r >= 2) {
        // Falling product E (E - 1) ... (E - r + 1) is x^r (d/dx)^r.
        O falling = E;
        for (unsigned j = 1; j < r; ++j) falling = falling * (E - Complex(j));
        const Complex alt = apply(falling, G, at);
        const IdentityCheckResult a = judge(id, rec, alt, rhs, 0.0, tol);
        res.notes = std::string("right-hand side equals ") + (onx ? "x^r (d/dx)^r F" : "y^r (d/dy)^r F") +
                    " rather than the r-th Euler power; residual against that reading " +
                    detail::fmt(a.rel_residual);
      }
      return res;
    }
    case DiffFormulaId::dX_b1:
    case DiffFormulaId::dY_b2: {
      const bool onx = which == DiffFormulaId::dX_b1;
      const Complex b = onx ? q.b1 : q.b2;
      const Complex pre = detail::cpow(onx ? p.x : p.y, b - 1.0);
      const Complex l = pre * detail::weighted_value(q, d, p, cfg, [&](std::size_t m, std::size_t n) {
                          return pochhammer(b + static_cast<double>(onx ? m : n), r);
                        });
      ParameterSet s = q;
      (onx ? s.b1 : s.b2) += rr;
      return judge(id, rec, l, pre * pochhammer(b, r) * F(s, d, p), 0.0, tol);
    }
    case DiffFormulaId::dX_a:
    case DiffFormulaId::dY_a: {
      const bool onx = which == DiffFormulaId::dX_a;
      const EvalPoint at = onx ? EvalPoint{p.x, p.x * p.y} : EvalPoint{p.x * p.y, p.y};
      const Complex pre = detail::cpow(onx ? p.x : p.y, q.a - 1.0);
      const Complex l = pre * detail::weighted_value(q, d, at, cfg, [&](std::size_t m, std::size_t n) {
                          return pochhammer(q.a + static_cast<double>(m + n), r);
                        });
      ParameterSet s = q;
      s.a += rr;
      rec.with("argument", detail::describe_point(at));
      return judge(id, rec, l, pre * pochhammer(q.a, r) * F(s, d, at), 0.0, tol);
    }
    case DiffFormulaId::dX_c1:
    case DiffFormulaId::dY_c2: {
      const bool onx = which == DiffFormulaId::dX_c1;
      const Complex c = onx ? q.c1 : q.c2;
      if (nonpositive_integer(c - rr)) throw PreconditionError("c - r is a pole");
      const Complex pre = detail::cpow(onx ? p.x : p.y, c - rr - 1.0);
      const Complex l = pre * detail::weighted_value(q, d, p, cfg, [&](std::size_t m, std::size_t n) {
                          return pochhammer(c + static_cast<double>(onx ? m : n) - rr, r);
                        });
      ParameterSet s = q;
      (onx ? s.c1 : s.c2) -= rr;
      const double sign = r % 2 ? -1.0 : 1.0;
      return judge(id, rec, l, sign * pochhammer(1.0 - c, r) * pre * F(s, d, p), 0.0, tol);
    }
  }
  throw PreconditionError("unknown differential formula");
}

// ---------------------------------------------------------------------------
// Finite and infinite sums

enum class SummationId { e5_1, e5_2, e43, b1_series, b2_series };

inline constexpr SummationId kAllSummations[] = {SummationId::e5_1, SummationId::e5_2,
                                                 SummationId::e43, SummationId::b1_series,
                                                 SummationId::b2_series};

inline const char* to_string(SummationId s) {
  switch (s) {
    case SummationId::e5_1: return "e5_1";
    case SummationId::e5_2: return "e5_2";
    case SummationId::e43: return "e43";
    case SummationId::b1_series: return "b1_series";
    case SummationId::b2_series: return "b2_series";
  }
  return "?";
}

inline bool is_finite_sum(SummationId s) {
  return s == SummationId::e5_1 || s == SummationId::e5_2;
}

/// Finite sums take r; the infinite ones take the number of outer terms.
inline IdentityCheckResult check_summation(SummationId which, Variant variant, unsigned r_or_terms,
                                           const ParameterSet& q, const DiscreteParams& d_in,
                                           EvalPoint p, Complex z = {},
                                           const SummationConfig& cfg = {}) {
  const DiscreteParams d = detail::normalized(d_in);
  detail::require_variant(variant, d);
  auto F = [&](const ParameterSet& s, const DiscreteParams& e, EvalPoint at) {
    return detail::value_of(s, e, at, cfg);
  };
  PointRecord rec{q, d, p, {}};

  if (is_finite_sum(which)) {
    const unsigned r = r_or_terms;
    const bool onx = which == SummationId::e5_1;
    const int axis = onx ? 0 : 1;
    IdentityId id{Family::FiniteSum, variant,
                  std::string(to_string(which)) + "/r=" + std::to_string(r)};
    rec.with("r", std::to_string(r));
    ParameterSet top = q;
    (onx ? top.b1 : top.b2) += static_cast<double>(r);
    const Complex lhs = F(top, d, p);
    Complex rhs{};
    double scale = 0.0;
    double binom = 1.0;
    for (unsigned s = 0; s <= r; ++s) {
      const double ss = s;
      const Complex coef = binom * pochhammer(q.a, s) * detail::axis_factor(d, axis, s) *
                           std::pow(onx ? p.x : p.y, ss) / pochhammer(onx ? q.c1 : q.c2, s);
      detail::accumulate(rhs, scale, coef, [&] {
        ParameterSet sh = q;
        sh.a += ss;
        (onx ? sh.b1 : sh.b2) += ss;
        (onx ? sh.c1 : sh.c2) += ss;
        return F(sh, detail::axis_lowered(d, axis, s), p);
      });
      binom = binom * (r - s) / (s + 1.0);
    }
    std::string notes;
    if (variant == Variant::V1 && !onx)
      notes = "summand written with a one-variable symbol; read as the two-variable function";
    if (variant == Variant::V2)
      notes = "shifts applied to the single discrete parameter t (written with t1, t2)";
    return judge(id, rec, lhs, rhs, scale, detail::tolerance_for(d, false), notes);
  }

  if (!(std::abs(z) < 1.0)) throw PreconditionError("infinite sums need |z| < 1");
  if (r_or_terms < 1) throw PreconditionError("infinite sums need at least one outer term");
  const unsigned terms = r_or_terms;
  std::ostringstream zs;
  zs << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  IdentityId id{Family::InfiniteSum, variant,
                std::string(to_string(which)) + "/z=" + (z == Complex{} ? "0" : zs.str())};
  rec.with("z", zs.str()).with("outer_terms", std::to_string(terms));

  Complex lead{};
  std::function<void(ParameterSet&, double)> shift;
  EvalPoint moved = p;
  const Complex w = 1.0 - z;
  switch (which) {
    case SummationId::e43:
      lead = q.a;
      shift = [](ParameterSet& s, double r) { s.a += r; };
      moved = {p.x / w, p.y / w};
      break;
    case SummationId::b1_series:
      lead = q.b1;
      shift = [](ParameterSet& s, double r) { s.b1 += r; };
      moved = {p.x / w, p.y};
      break;
    default:
      lead = q.b2;
      shift = [](ParameterSet& s, double r) { s.b2 += r; };
      moved = {p.x, p.y / w};
      break;
  }
  Complex lhs{};
  double scale = 0.0;
  Complex coef = 1.0;
  for (unsigned r = 0; r < terms && coef != Complex{}; ++r) {
    detail::accumulate(lhs, scale, coef, [&] {
      ParameterSet s = q;
      shift(s, r);
      return F(s, d, p);
    });
    coef *= (lead + static_cast<double>(r)) * z / (r + 1.0);
  }
  const Complex rhs = std::pow(w, -lead) * F(q, d, moved);
  std::string notes;
  if (variant == Variant::V2 && which == SummationId::b2_series)
    notes = "right-hand side written with the separate-variant symbol; evaluated with the joint variant";
  return judge(id, rec, lhs, rhs, scale, detail::tolerance_for(d, z != Complex{}), notes);
}

// ---------------------------------------------------------------------------
// s-step recursions

enum class RecursionId { a_plus_s, a_minus_s, b1_plus_s, b1_minus_s, c1_minus_s };

inline constexpr RecursionId kAllRecursions[] = {RecursionId::a_plus_s, RecursionId::a_minus_s,
                                                 RecursionId::b1_plus_s, RecursionId::b1_minus_s,
                                                 RecursionId::c1_minus_s};

inline const char* to_string(RecursionId r) {
  switch (r) {
    case RecursionId::a_plus_s: return "a_plus_s";
    case RecursionId::a_minus_s: return "a_minus_s";
    case RecursionId::b1_plus_s: return "b1_plus_s";
    case RecursionId::b1_minus_s: return "b1_minus_s";
    case RecursionId::c1_minus_s: return "c1_minus_s";
  }
  return "?";
}

/// The x-direction pieces use (t1, k1) and the y-direction pieces (t2, k2);
/// with k1 = k2 = k this is the single-k statement.
inline IdentityCheckResult check_recursion(RecursionId which, Variant variant, unsigned s,
                                           const ParameterSet& q, const DiscreteParams& d_in,
                                           EvalPoint p, const SummationConfig& cfg = {}) {
  const DiscreteParams d = detail::normalized(d_in);
  detail::require_variant(variant, d);
  if (s < 1) throw PreconditionError("recursions need s >= 1");
  const double ss = s;
  if (which == RecursionId::c1_minus_s) {
    if (nonpositive_integer(q.c1 - ss)) throw PreconditionError("c1 - s is a pole");
    for (unsigned r = 1; r <= s + 1; ++r)
      if (std::abs(q.c1 - static_cast<double>(r) + 1.0) < kPoleTolerance)
        throw PreconditionError("c1 - r vanishes");
  }
  auto F = [&](const ParameterSet& sh, const DiscreteParams& e) {
    return detail::value_of(sh, e, p, cfg);
  };
  const DiscreteParams dx = detail::axis_lowered(d, 0, 1);
  const DiscreteParams dy = detail::axis_lowered(d, 1, 1);
  const Complex gx = detail::axis_factor(d, 0, 1);
  const Complex gy = detail::axis_factor(d, 1, 1);

  IdentityId id{Family::Recursion, variant, std::string(to_string(which)) + "/s=" + std::to_string(s)};
  PointRecord rec{q, d, p, {}};
  rec.with("s", std::to_string(s));
  const Complex base = F(q, d);
  Complex lhs{}, rhs = base;
  double scale = std::abs(base);
  std::string notes;

  switch (which) {
    case RecursionId::a_plus_s:
    case RecursionId::a_minus_s: {
      const bool up = which == RecursionId::a_plus_s;
      ParameterSet top = q;
      top.a += up ? ss : -ss;
      lhs = F(top, d);
      const double sign = up ? 1.0 : -1.0;
      const Complex cx = sign * gx * q.b1 * p.x / q.c1;
      const Complex cy = sign * gy * q.b2 * p.y / q.c2;
      for (unsigned i = 0; i < s; ++i) {
        const double ar = up ? i + 1.0 : -static_cast<double>(i);
        detail::accumulate(rhs, scale, cx, [&] {
          ParameterSet sh = q;
          sh.a += ar;
          sh.b1 += 1.0;
          sh.c1 += 1.0;
          return F(sh, dx);
        });
        detail::accumulate(rhs, scale, cy, [&] {
          ParameterSet sh = q;
          sh.a += ar;
          sh.b2 += 1.0;
          sh.c2 += 1.0;
          return F(sh, dy);
        });
      }
      break;
    }
    case RecursionId::b1_plus_s:
    case RecursionId::b1_minus_s: {
      const bool up = which == RecursionId::b1_plus_s;
      ParameterSet top = q;
      top.b1 += up ? ss : -ss;
      lhs = F(top, d);
      const Complex cx = (up ? 1.0 : -1.0) * gx * q.a * p.x / q.c1;
      for (unsigned i = 0; i < s; ++i) {
        const double br = up ? i + 1.0 : -static_cast<double>(i);
        detail::accumulate(rhs, scale, cx, [&] {
          ParameterSet sh = q;
          sh.a += 1.0;
          sh.b1 += br;
          sh.c1 += 1.0;
          return F(sh, dx);
        });
      }
      break;
    }
    case RecursionId::c1_minus_s: {
      ParameterSet top = q;
      top.c1 -= ss;
      lhs = F(top, d);
      Complex y_part{};
      double y_scale = 0.0;
      for (unsigned r = 1; r <= s; ++r) {
        const double rr = r;
        const Complex den = (q.c1 - rr) * (q.c1 - rr + 1.0);
        detail::accumulate(rhs, scale, gx * q.a * q.b1 * p.x / den, [&] {
          ParameterSet sh = q;
          sh.a += 1.0;
          sh.b1 += 1.0;
          sh.c1 += 2.0 - rr;
          return F(sh, dx);
        });
        detail::accumulate(y_part, y_scale, gy * q.a * q.b2 * p.y / den, [&] {
          ParameterSet sh = q;
          sh.a += 1.0;
          sh.b2 += 1.0;
          sh.c1 += 2.0 - rr;
          return F(sh, dy);
        });
      }
      const IdentityCheckResult without =
          judge(id, rec, lhs, rhs, scale, detail::tolerance_for(d, false));
      rhs += y_part;
      scale += y_scale;
      notes = "residual without the y-direction sum " + detail::fmt(without.rel_residual);
      break;
    }
  }
  return judge(id, rec, lhs, rhs, scale, detail::tolerance_for(d, false), notes);
}

// ---------------------------------------------------------------------------
// Ladder (contiguous) relations

enum class LadderFlavor { Differential, Difference };

inline const char* to_string(LadderFlavor f) {
  return f == LadderFlavor::Differential ? "Differential" : "Difference";
}

enum class LadderTag { APlus, AMinus, B1Plus, B1Minus, B2Plus, B2Minus, C1Plus, C1Minus, C2Plus, C2Minus };

inline constexpr LadderTag kAllLadderTags[] = {
    LadderTag::APlus,   LadderTag::AMinus, LadderTag::B1Plus,  LadderTag::B1Minus,
    LadderTag::B2Plus,  LadderTag::B2Minus, LadderTag::C1Plus, LadderTag::C1Minus,
    LadderTag::C2Plus,  LadderTag::C2Minus,
};

inline const char* to_string(LadderTag t) {
  switch (t) {
    case LadderTag::APlus: return "a+";
    case LadderTag::AMinus: return "a-";
    case LadderTag::B1Plus: return "b1+";
    case LadderTag::B1Minus: return "b1-";
    case LadderTag::B2Plus: return "b2+";
    case LadderTag::B2Minus: return "b2-";
    case LadderTag::C1Plus: return "c1+";
    case LadderTag::C1Minus: return "c1-";
    case LadderTag::C2Plus: return "c2+";
    case LadderTag::C2Minus: return "c2-";
  }
  return "?";
}

inline std::optional<LadderTag> parse_ladder_tag(const std::string& s) {
  for (LadderTag t : kAllLadderTags)
    if (s == to_string(t)) return t;
  return std::nullopt;
}

struct ParamShift {
  double a = 0, b1 = 0, b2 = 0, c1 = 0, c2 = 0;

  ParameterSet operator()(ParameterSet q) const {
    q.a += a;
    q.b1 += b1;
    q.b2 += b2;
    q.c1 += c1;
    q.c2 += c2;
    return q;
  }
};

/// One contiguous ladder. Raising type: scalar F(shift) = op F.
/// Lowering type: op F(shift) = scalar F.
struct Ladder {
  LadderTag tag{};
  bool raising = true;
  Complex scalar{};
  OperatorExpr op;
  ParamShift shift;
  std::string scalar_text, op_text, shift_text;
};

namespace detail {

struct LadderPieces {
  OperatorExpr ea, e1, e2;
  std::string ta, t1, t2;
};

inline LadderPieces ladder_pieces(LadderFlavor flavor, Variant variant, const DiscreteParams& d) {
  using O = OperatorExpr;
  LadderPieces p;
  if (flavor == LadderFlavor::Differential) {
    p.e1 = O::euler_x();
    p.e2 = O::euler_y();
    p.ea = p.e1 + p.e2;
    p.t1 = "th";
    p.t2 = "ph";
    p.ta = "th+ph";
    return p;
  }
  if (variant == Variant::V2) {
    if (d.k < 1) throw PreconditionError("difference ladders need k >= 1");
    p.e1 = O::euler_x();
    p.e2 = O::euler_y();
    p.ea = Complex(1.0 / d.k) * O::theta(0);
    p.t1 = "th";
    p.t2 = "ph";
    p.ta = "Tht/k";
    return p;
  }
  if (d.k1 < 1 || d.k2 < 1) throw PreconditionError("difference ladders need k1, k2 >= 1");
  p.e1 = Complex(1.0 / d.k1) * O::theta(0);
  p.e2 = Complex(1.0 / d.k2) * O::theta(1);
  p.ea = p.e1 + p.e2;
  p.t1 = "Th1/k1";
  p.t2 = "Th2/k2";
  p.ta = "Th1/k1+Th2/k2";
  return p;
}

}  // namespace detail

/// Builds a ladder at the given parameters. Operators for the difference
/// flavour need the discrete data; the differential flavour ignores it.
inline Ladder make_ladder(LadderTag tag, LadderFlavor flavor, Variant variant, const ParameterSet& q,
                          const DiscreteParams& d) {
  const detail::LadderPieces pc = detail::ladder_pieces(flavor, variant, d);
  Ladder L;
  L.tag = tag;
  auto raise = [&](Complex scalar, std::string st, const OperatorExpr& e, std::string et,
                   Complex shift_const, std::string name, int dir) {
    L.scalar = scalar;
    L.scalar_text = std::move(st);
    L.op = e + shift_const;
    L.op_text = std::move(et);
    L.shift_text = "F(" + name + (dir > 0 ? "+1)" : "-1)");
  };
  using T = LadderTag;
  switch (tag) {
    case T::APlus:
      L.raising = true;
      raise(q.a, "a", pc.ea, "(a+" + pc.ta + ")", q.a, "a", 1);
      L.shift.a = 1;
      break;
    case T::AMinus:
      L.raising = false;
      raise(q.a - 1.0, "(a-1)", pc.ea, "(a+" + pc.ta + "-1)", q.a - 1.0, "a", -1);
      L.shift.a = -1;
      break;
    case T::B1Plus:
      L.raising = true;
      raise(q.b1, "b1", pc.e1, "(b1+" + pc.t1 + ")", q.b1, "b1", 1);
      L.shift.b1 = 1;
      break;
    case T::B1Minus:
      L.raising = false;
      raise(q.b1 - 1.0, "(b1-1)", pc.e1, "(b1+" + pc.t1 + "-1)", q.b1 - 1.0, "b1", -1);
      L.shift.b1 = -1;
      break;
    case T::B2Plus:
      L.raising = true;
      raise(q.b2, "b2", pc.e2, "(b2+" + pc.t2 + ")", q.b2, "b2", 1);
      L.shift.b2 = 1;
      break;
    case T::B2Minus:
      L.raising = false;
      raise(q.b2 - 1.0, "(b2-1)", pc.e2, "(b2+" + pc.t2 + "-1)", q.b2 - 1.0, "b2", -1);
      L.shift.b2 = -1;
      break;
    case T::C1Plus:
      L.raising = false;
      raise(q.c1, "c1", pc.e1, "(c1+" + pc.t1 + ")", q.c1, "c1", 1);
      L.shift.c1 = 1;
      break;
    case T::C1Minus:
      L.raising = true;
      raise(q.c1 - 1.0, "(c1-1)", pc.e1, "(c1+" + pc.t1 + "-1)", q.c1 - 1.0, "c1", -1);
      L.shift.c1 = -1;
      break;
    case T::C2Plus:
      L.raising = false;
      raise(q.c2, "c2", pc.e2, "(c2+" + pc.t2 + ")", q.c2, "c2", 1);
      L.shift.c2 = 1;
      break;
    case T::C2Minus:
      L.raising = true;
      raise(q.c2 - 1.0, "(c2-1)", pc.e2, "(c2+" + pc.t2 + "-1)", q.c2 - 1.0, "c2", -1);
      L.shift.c2 = -1;
      break;
  }
  return L;
}

/// One side of a relation: scalar * op applied to F(shift).
struct RelationSide {
  Complex scalar{1.0};
  OperatorExpr op;
  ParamShift shift;
  std::string text;
};

/// lhs - rhs = 0.
struct LadderRelation {
  RelationSide lhs, rhs;
  std::string str() const { return lhs.text + " - " + rhs.text + " = 0"; }
};

namespace detail {

inline std::string join_text(std::initializer_list<std::string> parts) {
  std::string s;
  for (const std::string& p : parts) {
    if (p.empty()) continue;
    if (!s.empty()) s += "*";
    s += p;
  }
  return s;
}

}  // namespace detail

/// Basic relation of one ladder.
inline LadderRelation basic_relation(const Ladder& L) {
  LadderRelation R;
  if (L.raising) {
    R.lhs = {L.scalar, OperatorExpr::identity(), L.shift, detail::join_text({L.scalar_text, L.shift_text})};
    R.rhs = {1.0, L.op, {}, detail::join_text({L.op_text, "F"})};
  } else {
    R.lhs = {1.0, L.op, L.shift, detail::join_text({L.op_text, L.shift_text})};
    R.rhs = {L.scalar, OperatorExpr::identity(), {}, detail::join_text({L.scalar_text, "F"})};
  }
  return R;
}

/// Eliminates F between the relations of two ladders. The side that
/// carries only scalars is written first.
inline LadderRelation pairwise_relation(const Ladder& i, const Ladder& j) {
  using detail::join_text;
  LadderRelation R;
  if (i.raising && j.raising) {
    R.lhs = {i.scalar, j.op, i.shift, join_text({i.scalar_text, j.op_text, i.shift_text})};
    R.rhs = {j.scalar, i.op, j.shift, join_text({j.scalar_text, i.op_text, j.shift_text})};
  } else if (i.raising && !j.raising) {
    R.lhs = {i.scalar * j.scalar, OperatorExpr::identity(), i.shift,
             join_text({i.scalar_text, j.scalar_text, i.shift_text})};
    R.rhs = {1.0, i.op * j.op, j.shift, join_text({i.op_text, j.op_text, j.shift_text})};
  } else if (!i.raising && j.raising) {
    R.lhs = {i.scalar * j.scalar, OperatorExpr::identity(), j.shift,
             join_text({i.scalar_text, j.scalar_text, j.shift_text})};
    R.rhs = {1.0, j.op * i.op, i.shift, join_text({j.op_text, i.op_text, i.shift_text})};
  } else {
    R.lhs = {j.scalar, i.op, i.shift, join_text({j.scalar_text, i.op_text, i.shift_text})};
    R.rhs = {i.scalar, j.op, j.shift, join_text({i.scalar_text, j.op_text, j.shift_text})};
  }
  return R;
}

inline Family ladder_family(LadderFlavor flavor, bool pairwise) {
  if (flavor == LadderFlavor::Differential)
    return pairwise ? Family::PairwiseDifferential : Family::LadderDifferential;
  return pairwise ? Family::PairwiseDifference : Family::LadderDifference;
}

/// The 10 basic ladders followed by the 45 unordered pairs, in tag order.
inline std::vector<IdentityId> generate_ladder_relations(LadderFlavor flavor, Variant variant) {
  std::vector<IdentityId> out;
  for (LadderTag t : kAllLadderTags) out.push_back({ladder_family(flavor, false), variant, to_string(t)});
  constexpr std::size_t n = std::size(kAllLadderTags);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.push_back({ladder_family(flavor, true), variant,
                     std::string(to_string(kAllLadderTags[i])) + "," + to_string(kAllLadderTags[j])});
  return out;
}

inline std::vector<LadderTag> ladder_tags_of(const IdentityId& id) {
  std::vector<LadderTag> tags;
  std::string rest = id.detail;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string part = rest.substr(0, comma);
    auto t = parse_ladder_tag(part);
    if (!t) throw ConfigError("unknown ladder tag: " + part);
    tags.push_back(*t);
    rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
  }
  if (tags.empty() || tags.size() > 2) throw ConfigError("ladder id needs one or two tags");
  return tags;
}

inline LadderFlavor flavor_of(Family f) {
  return f == Family::LadderDifferential || f == Family::PairwiseDifferential
             ? LadderFlavor::Differential
             : LadderFlavor::Difference;
}

inline bool is_ladder_family(Family f) {
  return f == Family::LadderDifferential || f == Family::LadderDifference ||
         f == Family::PairwiseDifferential || f == Family::PairwiseDifference;
}

/// Relation for a ladder id at the given parameters.
inline LadderRelation ladder_relation(const IdentityId& id, const ParameterSet& q,
                                      const DiscreteParams& d) {
  if (!is_ladder_family(id.family)) throw ConfigError("not a ladder identity: " + id.str());
  const LadderFlavor flavor = flavor_of(id.family);
  const auto tags = ladder_tags_of(id);
  const Ladder first = make_ladder(tags[0], flavor, id.variant, q, d);
  if (tags.size() == 1) return basic_relation(first);
  return pairwise_relation(first, make_ladder(tags[1], flavor, id.variant, q, d));
}

/// Symbolic form; parameter values do not enter the text.
inline std::string ladder_relation_text(const IdentityId& id) {
  DiscreteParams d = id.variant == Variant::V2 ? DiscreteParams::v2(1.0, 1)
                                               : DiscreteParams::v1(1.0, 1.0, 1, 1);
  return ladder_relation(id, ParameterSet{1.0, 1.0, 1.0, 1.0, 1.0}, d).str();
}

inline Complex evaluate_side(const RelationSide& s, const ParameterSet& q, const DiscreteParams& d,
                             EvalPoint p, const SummationConfig& cfg) {
  if (s.scalar == Complex{}) return 0.0;
  const EvaluableFunction F = make_evaluable(s.shift(q), d, cfg);
  return s.scalar * apply(s.op, F, operator_point(d, p));
}

inline IdentityCheckResult check_ladder_relation(const IdentityId& id, const ParameterSet& q,
                                                 const DiscreteParams& d_in, EvalPoint p,
                                                 const SummationConfig& cfg = {}) {
  const DiscreteParams d = detail::normalized(d_in);
  detail::require_variant(id.variant, d);
  const LadderRelation R = ladder_relation(id, q, d);
  const Complex l = evaluate_side(R.lhs, q, d, p, cfg);
  const Complex r = evaluate_side(R.rhs, q, d, p, cfg);
  return judge(id, PointRecord{q, d, p, {}}, l, r, 0.0, detail::tolerance_for(d, false), R.str());
}

// ---------------------------------------------------------------------------
// Reductions to classical and Kampe de Feriet functions

namespace detail {

/// (-1)^{mk} (-t)_{mk} = ((-k)^k)^m prod_{i<k} ((-t+i)/k)_m.
inline void append_discrete_rows(std::vector<Complex>& row, Complex t, unsigned k) {
  for (unsigned i = 0; i < k; ++i) row.push_back((-t + static_cast<double>(i)) / static_cast<double>(k));
}

inline double signed_power(unsigned k) {
  return k == 0 ? 1.0 : std::pow(-static_cast<double>(k), static_cast<double>(k));
}

inline Complex kdf_value(const KdFSpec& s, Complex x, Complex y, const SummationConfig& cfg) {
  SeriesValue v = eval_kdf(s, x, y, cfg);
  if (!v.ok()) throw DivergenceError("series did not converge within budget", v);
  return v.value;
}

}  // namespace detail

inline std::vector<std::string> reduction_details(Variant v) {
  if (v == Variant::V2) return {"k0_f2", "kdf_1", "kdf_k"};
  return {"k0_f2", "kdf_01", "kdf_10", "kdf_11", "v3_kdf"};
}

/// Reductions built from the point's t values; the k values come from the
/// reduction itself except for the general-k ones, which use the point's.
inline IdentityCheckResult check_reduction(const std::string& detail_tag, Variant variant,
                                           const ParameterSet& q, const DiscreteParams& d_in,
                                           EvalPoint p, const SummationConfig& cfg = {}) {
  const DiscreteParams d = detail::normalized(d_in);
  detail::require_variant(variant, d);
  IdentityId id{Family::Reduction, variant, detail_tag};
  auto F = [&](const DiscreteParams& e) { return detail::value_of(q, e, p, cfg); };
  auto base = [&] { return KdFSpec{{q.a}, {q.b1}, {q.b2}, {}, {q.c1}, {q.c2}}; };
  Complex lhs, rhs;
  DiscreteParams used = d;

  if (variant == Variant::V1) {
    if (detail_tag == "k0_f2") {
      used = DiscreteParams::v1(d.t1, d.t2, 0, 0);
      lhs = F(used);
      SeriesValue f = eval_f2(q, p, cfg);
      if (!f.ok()) throw DivergenceError("series did not converge within budget", f);
      rhs = f.value;
    } else if (detail_tag == "kdf_01" || detail_tag == "kdf_10" || detail_tag == "kdf_11") {
      const unsigned k1 = detail_tag == "kdf_01" ? 0 : 1;
      const unsigned k2 = detail_tag == "kdf_10" ? 0 : 1;
      used = DiscreteParams::v1(d.t1, d.t2, k1, k2);
      lhs = F(used);
      KdFSpec s = base();
      if (k1) s.upper_x.push_back(-d.t1);
      if (k2) s.upper_y.push_back(-d.t2);
      rhs = detail::kdf_value(s, k1 ? -p.x : p.x, k2 ? -p.y : p.y, cfg);
    } else if (detail_tag == "v3_kdf") {
      const unsigned k = d.k1;
      used = DiscreteParams::v3(d.t1, d.t2, k);
      lhs = F(used);
      KdFSpec s = base();
      detail::append_discrete_rows(s.upper_x, d.t1, k);
      detail::append_discrete_rows(s.upper_y, d.t2, k);
      const double w = detail::signed_power(k);
      rhs = detail::kdf_value(s, w * p.x, w * p.y, cfg);
    } else {
      throw ConfigError("unknown reduction: " + detail_tag);
    }
  } else {
    if (detail_tag == "k0_f2") {
      used = DiscreteParams::v2(d.t, 0);
      lhs = F(used);
      SeriesValue f = eval_f2(q, p, cfg);
      if (!f.ok()) throw DivergenceError("series did not converge within budget", f);
      rhs = f.value;
    } else if (detail_tag == "kdf_1" || detail_tag == "kdf_k") {
      const unsigned k = detail_tag == "kdf_1" ? 1 : d.k;
      used = DiscreteParams::v2(d.t, k);
      lhs = F(used);
      KdFSpec s = base();
      detail::append_discrete_rows(s.upper_joint, d.t, k);
      const double w = detail::signed_power(k);
      rhs = detail::kdf_value(s, w * p.x, w * p.y, cfg);
    } else {
      throw ConfigError("unknown reduction: " + detail_tag);
    }
  }
  return judge(id, PointRecord{q, used, p, {}}, lhs, rhs, 0.0, kReductionTolerance);
}

// ---------------------------------------------------------------------------
// Suite runner

/// A grid point carries data for both variants.
struct GridPoint {
  std::string name;
  ParameterSet params;
  DiscreteParams v1;
  DiscreteParams v2;
  EvalPoint point;

  const DiscreteParams& discrete(Variant v) const { return v == Variant::V2 ? v2 : v1; }
};

inline std::vector<GridPoint> default_grid() {
  using C = Complex;
  return {
      {"P0", {1.3, 0.7, 1.1, 2.2, 1.9}, DiscreteParams::v1(4.0, 3.0, 1, 1), DiscreteParams::v2(4.0, 1), {0.25, 0.2}},
      {"P1", {0.9, 1.4, 0.6, 1.7, 2.4}, DiscreteParams::v1(3.0, 4.0, 2, 2), DiscreteParams::v2(4.0, 2), {0.3, 0.15}},
      {"P2", {1.8, 1.2, 2.1, 1.6, 0.8}, DiscreteParams::v1(2.0, 2.0, 1, 2), DiscreteParams::v2(3.0, 1), {0.35, 0.25}},
      {"P3", {C(1.3, 0.4), C(0.8, -0.2), C(1.2, 0.1), C(2.1, 0.3), C(1.7, -0.2)},
       DiscreteParams::v1(3.0, 2.0, 1, 1), DiscreteParams::v2(3.0, 2), {0.2, 0.3}},
  };
}

/// Moves a, b1, b2, c1, c2 of every point by independent offsets in
/// [-0.05, 0.05]. Seed 0 leaves the grid alone.
inline std::vector<GridPoint> jitter_grid(std::vector<GridPoint> grid, std::uint64_t seed) {
  if (seed == 0) return grid;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> off(-0.05, 0.05);
  for (GridPoint& g : grid)
    for (Complex* z : {&g.params.a, &g.params.b1, &g.params.b2, &g.params.c1, &g.params.c2})
      *z += off(rng);
  return grid;
}

struct SuiteOptions {
  SummationConfig summation;
  std::size_t quadrature_order = 64;
  unsigned outer_terms = 60;
  std::vector<double> humbert_eps{1e-2, 1e-3, 1e-4};
};

/// One catalogue entry. Entries with `per_point` false run once at their
/// own point and ignore the grid.
struct CatalogEntry {
  IdentityId id;
  bool per_point = true;
  std::function<IdentityCheckResult(const GridPoint&, const SuiteOptions&)> check;
};

inline std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  const Variant variants[] = {Variant::V1, Variant::V2};
  for (Family fam : kAllFamilies) {
    for (Variant v : variants) {
      switch (fam) {
        case Family::DiffFormula:
        case Family::DiffOpFormula:
          for (DiffFormulaId w : kAllDiffFormulas) {
            if (family_of(w) != fam || !applies_to(w, v)) continue;
            for (unsigned r = 1; r <= 3; ++r)
              out.push_back({{fam, v, std::string(to_string(w)) + "/r=" + std::to_string(r)}, true,
                             [w, v, r](const GridPoint& g, const SuiteOptions& o) {
                               return check_diff_formula(w, v, r, g.params, g.discrete(v), g.point,
                                                         o.summation);
                             }});
          }
          break;
        case Family::FiniteSum:
          for (SummationId w : {SummationId::e5_1, SummationId::e5_2})
            for (unsigned r = 0; r <= 3; ++r)
              out.push_back({{fam, v, std::string(to_string(w)) + "/r=" + std::to_string(r)}, true,
                             [w, v, r](const GridPoint& g, const SuiteOptions& o) {
                               return check_summation(w, v, r, g.params, g.discrete(v), g.point, {},
                                                      o.summation);
                             }});
          break;
        case Family::InfiniteSum:
          for (SummationId w : {SummationId::e43, SummationId::b1_series, SummationId::b2_series})
            for (double z : {0.0, 0.3})
              out.push_back({{fam, v, std::string(to_string(w)) + (z == 0.0 ? "/z=0" : "/z=0.3+0i")},
                             true,
                             [w, v, z](const GridPoint& g, const SuiteOptions& o) {
                               return check_summation(w, v, o.outer_terms, g.params, g.discrete(v),
                                                      g.point, z, o.summation);
                             }});
          break;
        case Family::Recursion:
          for (RecursionId w : kAllRecursions)
            for (unsigned s = 1; s <= 3; ++s)
              out.push_back({{fam, v, std::string(to_string(w)) + "/s=" + std::to_string(s)}, true,
                             [w, v, s](const GridPoint& g, const SuiteOptions& o) {
                               return check_recursion(w, v, s, g.params, g.discrete(v), g.point,
                                                      o.summation);
                             }});
          break;
        case Family::LadderDifferential:
        case Family::LadderDifference:
        case Family::PairwiseDifferential:
        case Family::PairwiseDifference: {
          const LadderFlavor flavor = flavor_of(fam);
          for (const IdentityId& id : generate_ladder_relations(flavor, v)) {
            if (id.family != fam) continue;
            out.push_back({id, true, [id](const GridPoint& g, const SuiteOptions& o) {
                             return check_ladder_relation(id, g.params, g.discrete(id.variant),
                                                          g.point, o.summation);
                           }});
          }
          break;
        }
        case Family::Reduction:
          for (const std::string& tag : reduction_details(v))
            out.push_back({{fam, v, tag}, true, [tag, v](const GridPoint& g, const SuiteOptions& o) {
                             return check_reduction(tag, v, g.params, g.discrete(v), g.point,
                                                    o.summation);
                           }});
          break;
        case Family::HumbertLimit:
          for (HumbertKind k : {HumbertKind::Psi1, HumbertKind::Psi2})
            out.push_back({{fam, v, to_string(k)}, true, [k, v](const GridPoint& g, const SuiteOptions& o) {
                             return check_humbert_limit(k, v, g.params, g.discrete(v), g.point,
                                                        o.humbert_eps, o.summation);
                           }});
          break;
        case Family::IntegralRep:
          for (IntegralRepId r : kAllIntegralReps) {
            if (variant_of(r) != v) continue;
            out.push_back({{fam, v, to_string(r)}, false, [r](const GridPoint&, const SuiteOptions& o) {
                             const IntegralSmokePoint sp = smoke_point(r);
                             const std::size_t n = o.quadrature_order;
                             std::vector<std::size_t> orders{std::max<std::size_t>(n / 4, 2),
                                                             std::max<std::size_t>(n / 2, 3), n};
                             IdentityCheckResult res = verify_integral_rep(r, sp.params, sp.discrete,
                                                                           sp.point, orders);
                             res.point.with("grid", "smoke");
                             return res;
                           }});
          }
          break;
        case Family::DifferenceEq: {
          const auto eqs = v == Variant::V2
                               ? std::array{DifferenceEquation::Eq6_V2_x, DifferenceEquation::Eq6_V2_y}
                               : std::array{DifferenceEquation::Eq1_15, DifferenceEquation::Eq1_16};
          for (DifferenceEquation e : eqs)
            out.push_back({{fam, v, to_string(e)}, true, [e](const GridPoint& g, const SuiteOptions& o) {
                             const Variant var = (e == DifferenceEquation::Eq6_V2_x ||
                                                  e == DifferenceEquation::Eq6_V2_y)
                                                     ? Variant::V2
                                                     : Variant::V1;
                             return residual_difference_equation(e, g.params, g.discrete(var), g.point,
                                                                 o.summation);
                           }});
          break;
        }
      }
    }
  }
  return out;
}

inline std::vector<IdentityId> list_identities() {
  std::vector<IdentityId> ids;
  for (const CatalogEntry& e : catalog()) ids.push_back(e.id);
  return ids;
}

using IdentityFilter = std::function<bool(const IdentityId&)>;

inline IdentityFilter family_filter(std::vector<Family> families) {
  return [families = std::move(families)](const IdentityId& id) {
    return std::find(families.begin(), families.end(), id.family) != families.end();
  };
}

inline IdentityFilter all_identities() {
  return [](const IdentityId&) { return true; };
}

namespace detail {

inline IdentityCheckResult run_entry(const CatalogEntry& e, const GridPoint& g,
                                     const SuiteOptions& o) {
  const DiscreteParams& d = g.discrete(e.id.variant);
  PointRecord rec{g.params, d, g.point, {}};
  rec.with("grid", g.name);
  try {
    IdentityCheckResult r = e.check(g, o);
    r.id = e.id;
    if (e.per_point) r.point.extra.insert(r.point.extra.begin(), {"grid", g.name});
    return r;
  } catch (const PreconditionError& ex) {
    return skipped_result(e.id, rec, std::string("precondition: ") + ex.what());
  } catch (const ConstraintError& ex) {
    return skipped_result(e.id, rec, std::string("constraint: ") + ex.what());
  } catch (const std::exception& ex) {
    IdentityCheckResult r;
    r.id = e.id;
    r.point = rec;
    r.lhs = r.rhs = Complex(std::nan(""), std::nan(""));
    r.abs_residual = r.rel_residual = std::numeric_limits<double>::infinity();
    r.passed = false;
    r.notes = std::string("evaluation failed: ") + ex.what();
    return r;
  }
}

}  // namespace detail

/// Runs every catalogued identity accepted by `filter` on every grid point,
/// in catalogue order then grid order. A null filter selects nothing.
inline std::vector<IdentityCheckResult> run_suite(const IdentityFilter& filter,
                                                  const std::vector<GridPoint>& grid,
                                                  const SuiteOptions& opts = {}) {
  std::vector<IdentityCheckResult> out;
  if (!filter) return out;
  for (const CatalogEntry& e : catalog()) {
    if (!filter(e.id)) continue;
    if (!e.per_point) {
      GridPoint smoke;
      smoke.name = "smoke";
      out.push_back(detail::run_entry(e, smoke, opts));
      continue;
    }
    for (const GridPoint& g : grid) out.push_back(detail::run_entry(e, g, opts));
  }
  return out;
}

struct SuiteSummary {
  std::size_t pass = 0, fail = 0, skip = 0;
};

inline SuiteSummary summarize(const std::vector<IdentityCheckResult>& results) {
  SuiteSummary s;
  for (const auto& r : results) {
    if (r.skipped)
      ++s.skip;
    else if (r.passed)
      ++s.pass;
    else
      ++s.fail;
  }
  return s;
}

}  // namespace dappell
