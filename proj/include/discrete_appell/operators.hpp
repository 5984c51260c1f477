#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <utility>

#include "appell.hpp"
#include "core.hpp"
#include "gamma.hpp"
#include "identity_types.hpp"
#include "params.hpp"
#include "series.hpp"

namespace dappell {

/// Point on which operators act: up to two discrete slots plus (x, y).
struct OperatorPoint {
  std::array<Complex, 2> t{};
  Complex x{}, y{};
};

/// Operand of the operator algebra. With a series handle the Euler powers
/// theta^ex phi^ey are exact term weights m^ex n^ey; without one they fall
/// back to central differences in log coordinates.
class EvaluableFunction {
 public:
  using Plain = std::function<Complex(const OperatorPoint&)>;
  using Series = std::function<Complex(const OperatorPoint&, unsigned, unsigned)>;

  static EvaluableFunction plain(Plain f, unsigned slots) {
    EvaluableFunction e;
    e.plain_ = std::move(f);
    e.slots_ = slots;
    return e;
  }

  static EvaluableFunction series(Series f, unsigned slots) {
    EvaluableFunction e;
    e.series_ = std::move(f);
    e.slots_ = slots;
    return e;
  }

  unsigned slots() const { return slots_; }
  bool has_series_handle() const { return static_cast<bool>(series_); }

  Complex operator()(const OperatorPoint& p) const { return euler(p, 0, 0); }

  Complex euler(const OperatorPoint& p, unsigned ex, unsigned ey) const {
    if (series_) return series_(p, ex, ey);
    return finite_difference(p, ex, ey);
  }

  /// Mixed central stencil of order ex + ey in s = log x, log y with one
  /// Richardson level. First order uses the fixed step kStep; higher orders
  /// use eps^{1/(e+4)} so rounding stays below the truncation error.
  Complex finite_difference(const OperatorPoint& p, unsigned ex, unsigned ey) const {
    auto value = [&](const OperatorPoint& q) { return plain_ ? plain_(q) : series_(q, 0, 0); };
    if (ex == 0 && ey == 0) return value(p);
    if ((ex > 0 && p.x == Complex{}) || (ey > 0 && p.y == Complex{})) return 0.0;
    const unsigned e = ex + ey;
    const double h = e == 1 ? kStep : std::pow(2.220446049250313e-16, 1.0 / (e + 4.0));
    auto stencil = [&](double step) {
      Complex acc{};
      for (unsigned i = 0; i <= ex; ++i)
        for (unsigned j = 0; j <= ey; ++j) {
          OperatorPoint q = p;
          q.x = p.x * std::exp((ex / 2.0 - i) * step);
          q.y = p.y * std::exp((ey / 2.0 - j) * step);
          const double c = binom(ex, i) * binom(ey, j) * (((i + j) % 2) ? -1.0 : 1.0);
          acc += c * value(q);
        }
      return acc / std::pow(step, static_cast<double>(e));
    };
    return (4.0 * stencil(h / 2.0) - stencil(h)) / 3.0;
  }

  static constexpr double kStep = 1e-5;

 private:
  static double binom(unsigned n, unsigned k) {
    double b = 1.0;
    for (unsigned j = 1; j <= k; ++j) b = b * (n - k + j) / j;
    return b;
  }

 public:

 private:
  Plain plain_;
  Series series_;
  unsigned slots_ = 0;
};

class OperatorExpr {
 public:
  enum class Kind {
    Identity,
    Delta,
    Rho,
    Theta,
    EulerX,
    EulerY,
    Scalar,
    CoordX,
    CoordY,
    DiscreteFactor,
    Add,
    Compose,
    Power,
  };

  struct Node {
    Kind kind = Kind::Identity;
    unsigned slot = 0;
    unsigned count = 0;  // Power exponent or DiscreteFactor k
    Complex scalar{};
    std::shared_ptr<const Node> lhs, rhs;
  };

  OperatorExpr() : node_(make(Kind::Identity)) {}

  static OperatorExpr identity() { return OperatorExpr(); }
  static OperatorExpr delta(unsigned slot) { return leaf(Kind::Delta, slot); }
  static OperatorExpr rho(unsigned slot) { return leaf(Kind::Rho, slot); }
  static OperatorExpr theta(unsigned slot) { return leaf(Kind::Theta, slot); }
  static OperatorExpr euler_x() { return leaf(Kind::EulerX, 0); }
  static OperatorExpr euler_y() { return leaf(Kind::EulerY, 0); }
  static OperatorExpr coord_x() { return leaf(Kind::CoordX, 0); }
  static OperatorExpr coord_y() { return leaf(Kind::CoordY, 0); }
  static OperatorExpr scalar(Complex c) {
    auto n = make(Kind::Scalar);
    n->scalar = c;
    return OperatorExpr(n);
  }
  /// Multiplication by (-1)^k (-t)_k of the given slot.
  static OperatorExpr discrete_factor(unsigned slot, unsigned k) {
    auto n = make(Kind::DiscreteFactor);
    n->slot = slot;
    n->count = k;
    return OperatorExpr(n);
  }
  static OperatorExpr power(const OperatorExpr& op, unsigned r) {
    auto n = make(Kind::Power);
    n->lhs = op.node_;
    n->count = r;
    return OperatorExpr(n);
  }

  friend OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) {
    return binary(Kind::Add, a, b);
  }
  friend OperatorExpr operator+(const OperatorExpr& a, Complex c) { return a + scalar(c); }
  friend OperatorExpr operator+(Complex c, const OperatorExpr& a) { return scalar(c) + a; }
  friend OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b) {
    return a + Complex(-1.0) * b;
  }
  friend OperatorExpr operator-(const OperatorExpr& a, Complex c) { return a + scalar(-c); }
  /// Composition: (a * b) f = a(b f).
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
    return binary(Kind::Compose, a, b);
  }
  friend OperatorExpr operator*(Complex c, const OperatorExpr& a) { return scalar(c) * a; }

  const Node& node() const { return *node_; }

  std::string str() const {
    std::ostringstream os;
    print(os, *node_);
    return os.str();
  }

 private:
  explicit OperatorExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<Node> make(Kind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
  }
  static OperatorExpr leaf(Kind k, unsigned slot) {
    auto n = make(k);
    n->slot = slot;
    return OperatorExpr(n);
  }
  static OperatorExpr binary(Kind k, const OperatorExpr& a, const OperatorExpr& b) {
    auto n = make(k);
    n->lhs = a.node_;
    n->rhs = b.node_;
    return OperatorExpr(n);
  }

  static void print(std::ostream& os, const Node& n) {
    switch (n.kind) {
      case Kind::Identity: os << "I"; break;
      case Kind::Delta: os << "D" << n.slot; break;
      case Kind::Rho: os << "rho" << n.slot; break;
      case Kind::Theta: os << "Th" << n.slot; break;
      case Kind::EulerX: os << "th"; break;
      case Kind::EulerY: os << "ph"; break;
      case Kind::Scalar: os << n.scalar; break;
      case Kind::CoordX: os << "x"; break;
      case Kind::CoordY: os << "y"; break;
      case Kind::DiscreteFactor: os << "g" << n.slot << "_" << n.count; break;
      case Kind::Add:
        os << "(";
        print(os, *n.lhs);
        os << " + ";
        print(os, *n.rhs);
        os << ")";
        break;
      case Kind::Compose:
        print(os, *n.lhs);
        os << " ";
        print(os, *n.rhs);
        break;
      case Kind::Power:
        os << "[";
        print(os, *n.lhs);
        os << "]^" << n.count;
        break;
    }
  }

  std::shared_ptr<const Node> node_;
};

namespace detail {

using Operand = std::function<Complex(const OperatorPoint&, unsigned, unsigned)>;

inline unsigned max_slot(const OperatorExpr::Node& n) {
  using K = OperatorExpr::Kind;
  switch (n.kind) {
    case K::Delta:
    case K::Rho:
    case K::Theta:
    case K::DiscreteFactor: return n.slot + 1;
    case K::Add:
    case K::Compose: return std::max(max_slot(*n.lhs), max_slot(*n.rhs));
    case K::Power: return max_slot(*n.lhs);
    default: return 0;
  }
}

inline double binomial(unsigned n, unsigned k) {
  double b = 1.0;
  for (unsigned j = 1; j <= k; ++j) b = b * (n - k + j) / j;
  return b;
}

/// Computes [theta^ex phi^ey (N g)](p). Euler powers commute with the shift
/// operators and pass through coordinates via theta^e x = x (1 + theta)^e.
inline Complex eval_node(const OperatorExpr::Node& n, const Operand& g, const OperatorPoint& p,
                         unsigned ex, unsigned ey) {
  using K = OperatorExpr::Kind;
  switch (n.kind) {
    case K::Identity: return g(p, ex, ey);
    case K::EulerX: return g(p, ex + 1, ey);
    case K::EulerY: return g(p, ex, ey + 1);
    case K::Scalar:
      if (n.scalar == Complex{}) return 0.0;
      return n.scalar * g(p, ex, ey);
    case K::CoordX:
    case K::CoordY: {
      const bool on_x = n.kind == K::CoordX;
      const Complex c = on_x ? p.x : p.y;
      if (c == Complex{}) return 0.0;
      const unsigned e = on_x ? ex : ey;
      Complex s{};
      for (unsigned j = 0; j <= e; ++j)
        s += binomial(e, j) * (on_x ? g(p, j, ey) : g(p, ex, j));
      return c * s;
    }
    case K::Delta: {
      OperatorPoint q = p;
      q.t[n.slot] += 1.0;
      return g(q, ex, ey) - g(p, ex, ey);
    }
    case K::Rho: {
      OperatorPoint q = p;
      q.t[n.slot] -= 1.0;
      return g(q, ex, ey);
    }
    case K::Theta: {
      const Complex t = p.t[n.slot];
      if (t == Complex{}) return 0.0;
      OperatorPoint q = p;
      q.t[n.slot] -= 1.0;
      return t * (g(p, ex, ey) - g(q, ex, ey));
    }
    case K::DiscreteFactor: {
      const Complex f = discrete_factor(p.t[n.slot], n.count, 1);
      if (f == Complex{}) return 0.0;
      return f * g(p, ex, ey);
    }
    case K::Add: return eval_node(*n.lhs, g, p, ex, ey) + eval_node(*n.rhs, g, p, ex, ey);
    case K::Compose: {
      const OperatorExpr::Node& inner = *n.rhs;
      Operand h = [&](const OperatorPoint& q, unsigned a, unsigned b) {
        return eval_node(inner, g, q, a, b);
      };
      return eval_node(*n.lhs, h, p, ex, ey);
    }
    case K::Power: {
      if (n.count == 0) return g(p, ex, ey);
      OperatorExpr::Node rest = n;
      rest.count = n.count - 1;
      Operand h = [&](const OperatorPoint& q, unsigned a, unsigned b) {
        return eval_node(rest, g, q, a, b);
      };
      return eval_node(*n.lhs, h, p, ex, ey);
    }
  }
  return 0.0;
}

}  // namespace detail

inline Complex apply(const OperatorExpr& expr, const EvaluableFunction& f, const OperatorPoint& p) {
  if (detail::max_slot(expr.node()) > f.slots())
    throw DomainError("operator references a discrete slot the operand does not have");
  detail::Operand leaf = [&](const OperatorPoint& q, unsigned ex, unsigned ey) -> Complex {
    try {
      return f.euler(q, ex, ey);
    } catch (const DomainError&) {
      throw;
    } catch (const Error& e) {
      std::ostringstream os;
      os << "shifted evaluation failed at t=(" << q.t[0] << "," << q.t[1] << "): " << e.what();
      throw DomainError(os.str());
    }
  };
  return detail::eval_node(expr.node(), leaf, p, 0, 0);
}

inline OperatorPoint operator_point(const DiscreteParams& d, EvalPoint p) {
  OperatorPoint q;
  q.x = p.x;
  q.y = p.y;
  if (d.variant == Variant::V2) {
    q.t = {d.t, Complex{}};
  } else {
    q.t = {d.t1, d.t2};
  }
  return q;
}

/// The discrete function with the discrete slots read from the operator
/// point and exact Euler weights.
inline EvaluableFunction make_evaluable(const ParameterSet& params, const DiscreteParams& d,
                                        const SummationConfig& cfg = {}) {
  const unsigned slots = d.variant == Variant::V2 ? 1u : 2u;
  return EvaluableFunction::series(
      [params, d, cfg](const OperatorPoint& q, unsigned ex, unsigned ey) {
        DiscreteParams s = d;
        if (s.variant == Variant::V2) {
          s.t = q.t[0];
        } else {
          s.t1 = q.t[0];
          s.t2 = q.t[1];
        }
        const EvalPoint p{q.x, q.y};
        if (ex == 0 && ey == 0) {
          SeriesValue v = eval_discrete_f2(params, s, p, cfg);
          if (!v.ok()) throw DivergenceError("series did not converge within budget", v);
          return v.value;
        }
        auto w = [ex, ey](std::size_t m, std::size_t n) {
          return Complex(std::pow(static_cast<double>(m), ex) *
                         std::pow(static_cast<double>(n), ey));
        };
        SeriesValue v = eval_discrete_f2_weighted(params, s, p, cfg, w);
        if (!v.ok()) throw DivergenceError("series did not converge within budget", v);
        return v.value;
      },
      slots);
}

enum class DifferenceEquation { Eq1_15, Eq1_16, Eq6_V2_x, Eq6_V2_y };

inline const char* to_string(DifferenceEquation e) {
  switch (e) {
    case DifferenceEquation::Eq1_15: return "Eq1_15";
    case DifferenceEquation::Eq1_16: return "Eq1_16";
    case DifferenceEquation::Eq6_V2_x: return "Eq6_V2_x";
    case DifferenceEquation::Eq6_V2_y: return "Eq6_V2_y";
  }
  return "?";
}

/// The two operator pieces L and R of an equation (L - R) F = 0.
struct EquationOperators {
  OperatorExpr lhs;
  OperatorExpr rhs;
};

/// `joint_scale` is the factor in front of the shifted term of the joint
/// variant's equations; the stated form uses k.
inline EquationOperators difference_equation_operators(DifferenceEquation which,
                                                       const ParameterSet& q,
                                                       const DiscreteParams& d,
                                                       std::optional<Complex> joint_scale = {}) {
  using O = OperatorExpr;
  const bool first = which == DifferenceEquation::Eq1_15 || which == DifferenceEquation::Eq6_V2_x;
  if (which == DifferenceEquation::Eq1_15 || which == DifferenceEquation::Eq1_16) {
    const DiscreteParams v = d.as_v1();
    const double k1 = v.k1, k2 = v.k2;
    const O T1 = O::theta(0), T2 = O::theta(1);
    const O joint = Complex(1.0 / k1) * T1 + Complex(1.0 / k2) * T2 + q.a;
    if (first) {
      const O L = T1 * (Complex(1.0 / k1) * T1 + (q.c1 - 1.0));
      const O R = Complex(k1) * O::discrete_factor(0, v.k1) * O::coord_x() *
                  O::power(O::rho(0), v.k1) * joint * (Complex(1.0 / k1) * T1 + q.b1);
      return {L, R};
    }
    const O L = T2 * (Complex(1.0 / k2) * T2 + (q.c2 - 1.0));
    const O R = Complex(k2) * O::discrete_factor(1, v.k2) * O::coord_y() *
                O::power(O::rho(1), v.k2) * joint * (Complex(1.0 / k2) * T2 + q.b2);
    return {L, R};
  }
  const double k = d.k;
  const Complex scale = joint_scale.value_or(Complex(k));
  const O joint = Complex(1.0 / k) * O::theta(0) + q.a;
  const O E = first ? O::euler_x() : O::euler_y();
  const O L = E * (E + ((first ? q.c1 : q.c2) - 1.0));
  const O R = scale * O::discrete_factor(0, d.k) * (first ? O::coord_x() : O::coord_y()) *
              O::power(O::rho(0), d.k) * joint * (E + (first ? q.b1 : q.b2));
  return {L, R};
}

/// Residual of one of the difference(-differential) equations. Passes when
/// |L F - R F| <= 1e-8 (1 + max(|L F|, |R F|)).
inline IdentityCheckResult residual_difference_equation(DifferenceEquation which,
                                                        const ParameterSet& params,
                                                        const DiscreteParams& d, EvalPoint p,
                                                        const SummationConfig& cfg = {}) {
  const bool joint = which == DifferenceEquation::Eq6_V2_x || which == DifferenceEquation::Eq6_V2_y;
  if (joint != (d.variant == Variant::V2))
    throw PreconditionError("difference equation does not match the discrete variant");
  if (joint) {
    if (d.k < 1) throw PreconditionError("difference equation needs k >= 1");
  } else {
    const DiscreteParams v = d.as_v1();
    if (v.k1 < 1 || v.k2 < 1) throw PreconditionError("difference equation needs k1, k2 >= 1");
  }
  const EvaluableFunction F = make_evaluable(params, d, cfg);
  const OperatorPoint at = operator_point(d, p);
  const EquationOperators ops = difference_equation_operators(which, params, d);
  const Complex l = apply(ops.lhs, F, at);
  const Complex r = apply(ops.rhs, F, at);
  const double scale = std::max(std::abs(l), std::abs(r));

  IdentityId id{Family::DifferenceEq, joint ? Variant::V2 : Variant::V1, to_string(which)};
  IdentityCheckResult res = judge(id, PointRecord{params, d, p, {}}, l, r, 0.0, 1e-8);
  res.rel_residual = res.abs_residual / (1.0 + scale);
  res.passed = res.rel_residual <= res.tolerance;
  res.notes = "residual relative to 1 + operand scale";
  if (joint && d.k != 1) {
    const EquationOperators alt = difference_equation_operators(which, params, d, Complex(1.0));
    const Complex r1 = apply(alt.rhs, F, at);
    std::ostringstream os;
    os << "; without the factor k in front of the shifted term the residual is "
       << std::abs(l - r1) / (1.0 + std::max(std::abs(l), std::abs(r1)));
    res.notes += os.str();
  }
  return res;
}

}  // namespace dappell
