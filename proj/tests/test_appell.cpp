#include <catch_amalgamated.hpp>

#include <discrete_appell/appell.hpp>
#include <discrete_appell/gamma.hpp>
#include <discrete_appell/kdf.hpp>

#include "oracles.hpp"

using namespace dappell;
using oracle::rel;

namespace {

const ParameterSet kP{1.3, 0.7, 1.1, 2.2, 1.9};

}  // namespace

TEST_CASE("classical F2") {
  CHECK(eval_f2(kP, {0.0, 0.0}).value == Complex(1.0));

  SECTION("b = c collapses to the binomial series") {
    const ParameterSet p{1.5, 0.8, 1.7, 0.8, 1.7};
    const Complex ref = std::pow(1.0 - 0.2 - 0.3, -1.5);
    CHECK(rel(eval_f2(p, {0.2, 0.3}).value, ref) < 1e-13);
  }

  SECTION("terminating a = -2 is the hand-expanded polynomial") {
    const Complex b1(0.6, 0.2), b2 = 1.7, c1 = 2.3, c2(1.1, -0.4);
    const ParameterSet p{-2.0, b1, b2, c1, c2};
    for (EvalPoint z : {EvalPoint{0.3, 0.4}, EvalPoint{1.7, -2.5}, EvalPoint{Complex(0.2, 1.0), 3.0}}) {
      const Complex x = z.x, y = z.y;
      const Complex poly = 1.0 - 2.0 * b1 * x / c1 - 2.0 * b2 * y / c2 +
                           b1 * (b1 + 1.0) * x * x / (c1 * (c1 + 1.0)) +
                           2.0 * b1 * b2 * x * y / (c1 * c2) +
                           b2 * (b2 + 1.0) * y * y / (c2 * (c2 + 1.0));
      const SeriesValue v = eval_f2(p, z);
      CHECK(v.status == SeriesStatus::Terminated);
      CHECK(rel(v.value, poly) < 1e-14);
    }
  }

  SECTION("outside the region a non-terminating series is refused") {
    CHECK_THROWS_AS(eval_f2(kP, {0.6, 0.5}), DivergenceError);
    CHECK_NOTHROW(eval_f2(ParameterSet{1.3, -2.0, 1.1, 2.2, 1.9}, {5.0, 0.5}));
  }
}

TEST_CASE("discrete variants at the origin") {
  CHECK(eval_discrete_f2(kP, DiscreteParams::v1(2.0, 3.0, 1, 2), {0.0, 0.0}).value == Complex(1.0));
  CHECK(eval_discrete_f2(kP, DiscreteParams::v2(0.5, 1), {0.0, 0.0}).value == Complex(1.0));
  CHECK(eval_discrete_f2(kP, DiscreteParams::v3(2.0, 1.5, 2), {0.0, 0.0}).value == Complex(1.0));
}

TEST_CASE("reductions") {
  const EvalPoint z{0.3, 0.25};
  const Complex f2 = eval_f2(kP, z).value;
  CHECK(rel(eval_discrete_f2(kP, DiscreteParams::v1(2.7, -1.3, 0, 0), z).value, f2) < 1e-13);
  CHECK(rel(eval_discrete_f2(kP, DiscreteParams::v2(Complex(0.4, 2.0), 0), z).value, f2) < 1e-13);

  SECTION("k1 = 0, k2 = 1 is a Kampe de Feriet series") {
    const EvalPoint w{0.3, 0.4};
    const KdFSpec s{{kP.a}, {kP.b1}, {kP.b2, -2.0}, {}, {kP.c1}, {kP.c2}};
    const Complex lhs = eval_discrete_f2(kP, DiscreteParams::v1(0.0, 2.0, 0, 1), w).value;
    CHECK(rel(lhs, eval_kdf(s, w.x, -w.y).value) < 1e-13);
  }

  SECTION("V3 is V1 with equal steps") {
    for (unsigned k : {1u, 2u, 3u}) {
      const Complex a = eval_discrete_f2(kP, DiscreteParams::v1(4.0, 3.0, k, k), z).value;
      const Complex b = eval_discrete_f2(kP, DiscreteParams::v3(4.0, 3.0, k), z).value;
      CHECK(a == b);
    }
  }

  SECTION("direct sum of the defining series") {
    // t1 = 3, k1 = 1; t2 = 4, k2 = 2: m <= 3, n <= 2
    Complex s{};
    for (unsigned m = 0; m <= 3; ++m)
      for (unsigned n = 0; n <= 2; ++n)
        s += pochhammer(kP.a, m + n) * pochhammer(kP.b1, m) * pochhammer(kP.b2, n) /
             (pochhammer(kP.c1, m) * pochhammer(kP.c2, n) * std::tgamma(m + 1.0) *
              std::tgamma(n + 1.0)) *
             discrete_factor(3.0, 1, m) * discrete_factor(4.0, 2, n) * std::pow(z.x, m) *
             std::pow(z.y, n);
    const SeriesValue v = eval_discrete_f2(kP, DiscreteParams::v1(3.0, 4.0, 1, 2), z);
    CHECK(v.status == SeriesStatus::Terminated);
    CHECK(v.terms_used <= 13u);
    CHECK(rel(v.value, s) < 1e-14);
  }
}

TEST_CASE("index swap symmetry is exact") {
  const ParameterSet q{Complex(1.3, 0.2), 0.7, Complex(1.1, -0.3), 2.2, 1.9};
  const ParameterSet swapped{q.a, q.b2, q.b1, q.c2, q.c1};
  const Complex a =
      eval_discrete_f2(q, DiscreteParams::v1(4.0, 3.0, 1, 2), {0.25, Complex(0.2, 0.1)}).value;
  const Complex b =
      eval_discrete_f2(swapped, DiscreteParams::v1(3.0, 4.0, 2, 1), {Complex(0.2, 0.1), 0.25}).value;
  CHECK(rel(a, b) < 1e-15);
}

TEST_CASE("termination bounds the work") {
  for (unsigned t1 = 0; t1 <= 4; ++t1)
    for (unsigned k1 = 1; k1 <= 2; ++k1) {
      const SeriesValue v =
          eval_discrete_f2(kP, DiscreteParams::v1(t1, 3.0, k1, 1), {3.0, -7.0});
      CHECK(v.status == SeriesStatus::Terminated);
      CHECK(v.terms_used <= (t1 / k1 + 1) * (3 / 1 + 1) + (t1 / k1 + 3 + 1));
    }
}

TEST_CASE("non-terminating k >= 1 series is reported as divergent") {
  CHECK_THROWS_AS(eval_discrete_f2(kP, DiscreteParams::v1(0.5, 0.0, 1, 0), {0.5, 0.0}),
                  DivergenceError);
  try {
    eval_discrete_f2(kP, DiscreteParams::v1(0.5, 0.0, 1, 0), {0.5, 0.0});
  } catch (const DivergenceError& e) {
    CHECK(e.partial().status == SeriesStatus::DivergenceDetected);
  }
}

TEST_CASE("Humbert functions") {
  const auto d1 = DiscreteParams::v1(2.0, 3.0, 1, 1);
  CHECK(eval_humbert(HumbertKind::Psi1, Variant::V1, kP, d1, {0.0, 0.0}).value == Complex(1.0));
  CHECK(eval_humbert(HumbertKind::Psi2, Variant::V2, kP, DiscreteParams::v2(3.0, 2), {0.0, 0.0})
            .value == Complex(1.0));
  CHECK_THROWS_AS(eval_humbert(HumbertKind::Psi1, Variant::V2, kP, d1, {0.1, 0.1}), ConfigError);

  SECTION("k = 0 gives the classical series") {
    const auto d0 = DiscreteParams::v1(0.0, 0.0, 0, 0);
    const KdFSpec psi1{{kP.a}, {kP.b1}, {}, {}, {kP.c1}, {kP.c2}};
    const KdFSpec psi2{{kP.a}, {}, {}, {}, {kP.c1}, {kP.c2}};
    CHECK(rel(eval_humbert(HumbertKind::Psi1, Variant::V1, kP, d0, {0.4, 2.5}).value,
              oracle::kdf(psi1, 0.4, 2.5)) < 1e-12);
    CHECK(rel(eval_humbert(HumbertKind::Psi2, Variant::V1, kP, d0, {1.4, -2.5}).value,
              oracle::kdf(psi2, 1.4, -2.5)) < 1e-12);
  }

  SECTION("discrete Humbert against a direct sum") {
    const EvalPoint z{0.3, 0.2};
    Complex s{};
    for (unsigned m = 0; m <= 2; ++m)
      for (unsigned n = 0; n <= 3; ++n)
        s += pochhammer(kP.a, m + n) * pochhammer(kP.b1, m) /
             (pochhammer(kP.c1, m) * pochhammer(kP.c2, n) * std::tgamma(m + 1.0) *
              std::tgamma(n + 1.0)) *
             discrete_factor(2.0, 1, m) * discrete_factor(3.0, 1, n) * std::pow(z.x, m) *
             std::pow(z.y, n);
    CHECK(rel(eval_humbert(HumbertKind::Psi1, Variant::V1, kP, d1, z).value, s) < 1e-14);
  }

  SECTION("Psi2 differs from Psi1 at b1 = c1 by the missing 1/(c1)_m") {
    const ParameterSet q{1.3, 2.2, 1.1, 2.2, 1.9};
    const auto d0 = DiscreteParams::v1(0.0, 0.0, 0, 0);
    const Complex p1 = eval_humbert(HumbertKind::Psi1, Variant::V1, q, d0, {0.3, 0.2}).value;
    const Complex p2 = eval_humbert(HumbertKind::Psi2, Variant::V1, q, d0, {0.3, 0.2}).value;
    const KdFSpec no_c1{{q.a}, {}, {}, {}, {}, {q.c2}};
    CHECK(rel(p1, oracle::kdf(no_c1, 0.3, 0.2)) < 1e-12);
    CHECK(rel(p1, p2) > 1e-3);
  }
}

TEST_CASE("Humbert limits") {
  const std::vector<double> eps{1e-2, 1e-3, 1e-4};
  const auto d1 = DiscreteParams::v1(2.0, 2.0, 1, 1);
  for (HumbertKind kind : {HumbertKind::Psi1, HumbertKind::Psi2}) {
    const IdentityCheckResult r = check_humbert_limit(kind, Variant::V1, kP, d1, {0.3, 0.2}, eps);
    CHECK(r.passed);
    const IdentityCheckResult z = check_humbert_limit(kind, Variant::V1, kP, d1, {0.0, 0.0}, eps);
    CHECK(z.abs_residual == 0.0);
    const IdentityCheckResult v2 =
        check_humbert_limit(kind, Variant::V2, kP, DiscreteParams::v2(3.0, 1), {0.3, 0.2}, eps);
    CHECK(v2.passed);
  }
  const auto d0 = DiscreteParams::v1(0.0, 0.0, 0, 0);
  const IdentityCheckResult c = check_humbert_limit(HumbertKind::Psi1, Variant::V1, kP, d0,
                                                    {0.3, 0.2}, eps);
  CHECK(c.passed);
  CHECK_THROWS_AS(check_humbert_limit(HumbertKind::Psi1, Variant::V1, kP, d0, {0.3, 0.2},
                                      {1e-3, 1e-2}),
                  ConfigError);
}
