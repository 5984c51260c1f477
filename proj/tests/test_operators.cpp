#include <catch_amalgamated.hpp>

#include <discrete_appell/gamma.hpp>
#include <discrete_appell/operators.hpp>

#include "oracles.hpp"

using namespace dappell;
using O = OperatorExpr;
using oracle::rel;

namespace {

const ParameterSet kP{1.3, 0.7, 1.1, 2.2, 1.9};

Complex term(const ParameterSet& p, Complex t1, Complex t2, unsigned k1, unsigned k2, unsigned m,
             unsigned n) {
  return pochhammer(p.a, m + n) * pochhammer(p.b1, m) * pochhammer(p.b2, n) /
         (pochhammer(p.c1, m) * pochhammer(p.c2, n) * std::tgamma(m + 1.0) * std::tgamma(n + 1.0)) *
         discrete_factor(t1, k1, m) * discrete_factor(t2, k2, n);
}

}  // namespace

TEST_CASE("shift operator primitives") {
  const auto g = EvaluableFunction::plain(
      [](const OperatorPoint& q) { return discrete_factor(q.t[0], 2, 1); }, 1);
  OperatorPoint at;
  at.t[0] = 5.0;
  CHECK(apply(O::theta(0), g, at) == 2.0 * g(at));

  const auto c = EvaluableFunction::plain([](const OperatorPoint&) { return Complex(3.5); }, 2);
  CHECK(apply(O::delta(0), c, at) == Complex(0.0));
  CHECK(apply(O::delta(1), c, at) == Complex(0.0));

  const auto sq = EvaluableFunction::plain([](const OperatorPoint& q) { return q.t[0] * q.t[0]; }, 1);
  CHECK(apply(O::delta(0), sq, at) == Complex(11.0));
  CHECK(apply(O::rho(0), sq, at) == Complex(16.0));
  CHECK(apply(O::power(O::rho(0), 3), sq, at) == Complex(4.0));
  CHECK(apply(O::power(O::rho(0), 0), sq, at) == Complex(25.0));
  // Theta t^2 = t (t^2 - (t-1)^2)
  CHECK(apply(O::theta(0), sq, at) == Complex(45.0));
  CHECK(apply(O::discrete_factor(0, 2) * O::identity(), sq, at) == Complex(20.0 * 25.0));

  CHECK_THROWS_AS(apply(O::delta(1), sq, at), DomainError);
}

TEST_CASE("Euler operators on a terminating F2") {
  const ParameterSet p{-2.0, Complex(0.6, 0.2), 1.7, 2.3, Complex(1.1, -0.4)};
  const auto F = make_evaluable(p, DiscreteParams::v1(0.0, 0.0, 0, 0));
  OperatorPoint at;
  at.x = 0.3;
  at.y = 0.4;
  const Complex x = at.x, y = at.y;
  const Complex theta_ref = -2.0 * p.b1 * x / p.c1 +
                            2.0 * p.b1 * (p.b1 + 1.0) * x * x / (p.c1 * (p.c1 + 1.0)) +
                            2.0 * p.b1 * p.b2 * x * y / (p.c1 * p.c2);
  CHECK(rel(apply(O::euler_x(), F, at), theta_ref) < 1e-12);

  // x theta commutation: theta (x G) = x (1 + theta) G
  const Complex lhs = apply(O::euler_x() * O::coord_x() * O::euler_y(), F, at);
  const Complex rhs = apply(O::coord_x() * (O::identity() + O::euler_x()) * O::euler_y(), F, at);
  CHECK(rel(lhs, rhs) < 1e-14);

  at.x = 0.0;
  for (unsigned r = 1; r <= 3; ++r) CHECK(apply(O::power(O::euler_x(), r), F, at) == Complex(0.0));
}

TEST_CASE("linearity") {
  const auto F = make_evaluable(kP, DiscreteParams::v1(4.0, 3.0, 1, 2));
  const OperatorPoint at = operator_point(DiscreteParams::v1(4.0, 3.0, 1, 2), {0.25, 0.2});
  const O E1 = O::theta(0) * O::euler_y() + O::coord_x() * O::rho(1);
  const O E2 = O::delta(1) * O::delta(0) + O::power(O::euler_x(), 2);
  const Complex alpha(0.7, -1.3);
  const Complex l = apply(alpha * E1 + E2, F, at);
  const Complex r = alpha * apply(E1, F, at) + apply(E2, F, at);
  CHECK(rel(l, r) < 1e-14);
}

TEST_CASE("Theta eigen-relation holds term by term") {
  const unsigned k1 = 2, k2 = 1;
  OperatorPoint at;
  at.t = {5.0, 3.0};
  for (unsigned m = 0; m <= 2; ++m)
    for (unsigned n = 0; n <= 3; ++n) {
      const auto f = EvaluableFunction::plain(
          [&](const OperatorPoint& q) { return term(kP, q.t[0], q.t[1], k1, k2, m, n); }, 2);
      const Complex base = f(at);
      CHECK(rel(apply(O::theta(0), f, at), static_cast<double>(m * k1) * base) < 1e-14);
      CHECK(rel(apply(O::theta(1), f, at), static_cast<double>(n * k2) * base) < 1e-14);
    }
  // and on the whole series through the weights
  const auto d = DiscreteParams::v1(5.0, 3.0, k1, k2);
  const auto F = make_evaluable(kP, d);
  const OperatorPoint p = operator_point(d, {0.3, 0.35});
  const Complex lhs = apply(O::theta(0), F, p);
  const Complex rhs = apply(Complex(double(k1)) * O::euler_x(), F, p);
  CHECK(rel(lhs, rhs) < 1e-13);
}

TEST_CASE("finite-difference fallback agrees with series weights") {
  const auto d = DiscreteParams::v1(4.0, 3.0, 1, 1);
  const auto exact = make_evaluable(kP, d);
  const auto fd = EvaluableFunction::plain([&](const OperatorPoint& q) { return exact(q); }, 2);
  CHECK_FALSE(fd.has_series_handle());
  const OperatorPoint at = operator_point(d, {0.25, 0.2});
  for (const O& e : {O::euler_x(), O::euler_y(), O::power(O::euler_x(), 2),
                     O::euler_x() * O::euler_y(), O::theta(0) * O::euler_y() * (O::euler_x() + 0.5)}) {
    INFO(e.str());
    CHECK(rel(apply(e, exact, at), apply(e, fd, at)) < 1e-6);
  }
}

TEST_CASE("difference equations of the separate variant") {
  const auto d = DiscreteParams::v1(4.0, 3.0, 1, 1);
  const EvalPoint z{0.25, 0.2};
  const IdentityCheckResult r15 = residual_difference_equation(DifferenceEquation::Eq1_15, kP, d, z);
  CHECK(r15.passed);
  CHECK(r15.rel_residual < 1e-12);

  const IdentityCheckResult r0 =
      residual_difference_equation(DifferenceEquation::Eq1_15, kP, d, {0.0, 0.0});
  CHECK(r0.abs_residual == 0.0);

  const auto d2 = DiscreteParams::v1(4.0, 5.0, 2, 1);
  const IdentityCheckResult a = residual_difference_equation(DifferenceEquation::Eq1_15, kP, d2, z);
  const ParameterSet mirror{kP.a, kP.b2, kP.b1, kP.c2, kP.c1};
  const IdentityCheckResult b = residual_difference_equation(
      DifferenceEquation::Eq1_16, mirror, DiscreteParams::v1(5.0, 4.0, 1, 2), {z.y, z.x});
  CHECK(a.passed);
  CHECK(b.passed);
  CHECK(rel(a.lhs, b.lhs) < 1e-13);
  CHECK(std::abs(a.abs_residual - b.abs_residual) <= 1e-12 * (1.0 + std::abs(a.lhs)));

  CHECK_THROWS_AS(residual_difference_equation(DifferenceEquation::Eq1_15, kP,
                                               DiscreteParams::v1(4.0, 3.0, 1, 0), z),
                  PreconditionError);
  CHECK_THROWS_AS(residual_difference_equation(DifferenceEquation::Eq6_V2_x, kP, d, z),
                  PreconditionError);
}

TEST_CASE("difference-differential equations of the joint variant") {
  const EvalPoint z{0.25, 0.2};
  const auto d1 = DiscreteParams::v2(4.0, 1);
  CHECK(residual_difference_equation(DifferenceEquation::Eq6_V2_x, kP, d1, z).passed);
  CHECK(residual_difference_equation(DifferenceEquation::Eq6_V2_y, kP, d1, z).passed);

  // As stated, the shifted term carries a factor k; for k = 2 the equation
  // only balances without it.
  const auto d2 = DiscreteParams::v2(4.0, 2);
  const IdentityCheckResult printed =
      residual_difference_equation(DifferenceEquation::Eq6_V2_x, kP, d2, z);
  CHECK_FALSE(printed.passed);
  const EquationOperators unit =
      difference_equation_operators(DifferenceEquation::Eq6_V2_x, kP, d2, Complex(1.0));
  const auto F = make_evaluable(kP, d2);
  const OperatorPoint at = operator_point(d2, z);
  CHECK(rel(apply(unit.lhs, F, at), apply(unit.rhs, F, at)) < 1e-12);
}

TEST_CASE("failed shifted evaluation surfaces as DomainError") {
  // t1 + 1 = 1.5 with k1 = 1 is a divergent series
  const auto d = DiscreteParams::v1(0.5, 2.0, 1, 1);
  const auto F = make_evaluable(kP, d);
  CHECK_THROWS_AS(apply(O::delta(0), F, operator_point(d, {0.5, 0.1})), DomainError);
}
