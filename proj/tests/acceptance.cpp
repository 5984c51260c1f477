// Acceptance run: one line per criterion, nonzero exit if any is red.

#include <discrete_appell/identities.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace dappell;
using oracle::rel;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= limit_s) {
    o.passed = false;
    o.detail += "; over the time limit";
  }
  if (!o.passed) ++failures;
  std::printf("criterion %d: %s  %s  [%s] (%.3f s, limit %.0f s)\n", n, o.passed ? "PASS" : "FAIL",
              title, o.detail.c_str(), secs, limit_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct RedPoint {
  ParameterSet q;
  Complex t1, t2;
  unsigned k;
  EvalPoint z;
};

// t in {2,3,4}, k in {0,1,2}, |x|+|y| <= 0.6
std::vector<RedPoint> reduction_points() {
  using C = Complex;
  return {
      {{1.3, 0.7, 1.1, 2.2, 1.9}, 2.0, 3.0, 0, {0.25, 0.2}},
      {{0.9, 1.4, 0.6, 1.7, 2.4}, 3.0, 4.0, 1, {0.3, 0.15}},
      {{1.8, 1.2, 2.1, 1.6, 0.8}, 4.0, 2.0, 2, {0.35, 0.25}},
      {{C(1.3, 0.4), C(0.8, -0.2), C(1.2, 0.1), C(2.1, 0.3), C(1.7, -0.2)}, 3.0, 2.0, 1, {0.2, 0.3}},
      {{0.6, 2.3, 1.7, 1.2, 0.9}, 4.0, 4.0, 0, {-0.3, 0.2}},
      {{2.2, 0.9, 0.8, 2.4, 1.4}, 2.0, 2.0, 2, {0.1, -0.45}},
      {{1.1, 1.6, 1.9, 0.7, 2.1}, 3.0, 3.0, 1, {C(0.2, 0.1), 0.25}},
      {{0.8, 0.6, 1.3, 1.9, 1.1}, 4.0, 3.0, 2, {0.4, 0.1}},
      {{1.6, 2.1, 0.5, 1.4, 2.3}, 2.0, 4.0, 1, {-0.2, -0.3}},
      {{1.45, 1.05, 1.35, 2.05, 0.65}, 3.0, 2.0, 0, {0.15, C(0.0, 0.3)}},
  };
}

struct DiffPoint {
  ParameterSet q;
  DiscreteParams d;
  EvalPoint z;
};

}  // namespace

int main() {
  criterion(1, "reductions to F2, the third variant and Kampe de Feriet", 1.0, [] {
    double worst = 0.0;
    int checks = 0;
    for (const RedPoint& r : reduction_points()) {
      auto track = [&](const IdentityCheckResult& c) {
        worst = std::max(worst, c.rel_residual);
        ++checks;
      };
      const DiscreteParams d1 = DiscreteParams::v1(r.t1, r.t2, r.k, r.k);
      const DiscreteParams d2 = DiscreteParams::v2(r.t1, r.k);
      for (const std::string& tag : reduction_details(Variant::V1))
        track(check_reduction(tag, Variant::V1, r.q, d1, r.z));
      for (const std::string& tag : reduction_details(Variant::V2))
        track(check_reduction(tag, Variant::V2, r.q, d2, r.z));
      const Complex sep = eval_discrete_f2(r.q, d1, r.z).value;
      const Complex eq = eval_discrete_f2(r.q, DiscreteParams::v3(r.t1, r.t2, r.k), r.z).value;
      worst = std::max(worst, rel(sep, eq));
      ++checks;
    }
    return Outcome{worst <= 1e-12, fmt("%.0f checks, worst rel %.2e, tol 1e-12", checks, worst)};
  });

  criterion(2, "difference-differential equations", 5.0, [] {
    const std::vector<DiffPoint> v1 = {
        {{1.3, 0.7, 1.1, 2.2, 1.9}, DiscreteParams::v1(4.0, 3.0, 1, 1), {0.25, 0.2}},
        {{0.9, 1.4, 0.6, 1.7, 2.4}, DiscreteParams::v1(3.0, 4.0, 2, 2), {0.3, 0.15}},
        {{1.8, 1.2, 2.1, 1.6, 0.8}, DiscreteParams::v1(2.0, 2.0, 1, 2), {0.35, 0.25}},
        {{1.1, 1.6, 1.9, 0.7, 2.1}, DiscreteParams::v1(4.0, 4.0, 2, 1), {0.2, 0.3}},
        {{0.8, 0.6, 1.3, 1.9, 1.1}, DiscreteParams::v1(3.0, 2.0, 1, 1), {-0.3, 0.2}},
    };
    const std::vector<DiffPoint> v2 = {
        {{1.3, 0.7, 1.1, 2.2, 1.9}, DiscreteParams::v2(4.0, 1), {0.25, 0.2}},
        {{0.9, 1.4, 0.6, 1.7, 2.4}, DiscreteParams::v2(4.0, 2), {0.3, 0.15}},
        {{1.8, 1.2, 2.1, 1.6, 0.8}, DiscreteParams::v2(3.0, 1), {0.35, 0.25}},
        {{1.1, 1.6, 1.9, 0.7, 2.1}, DiscreteParams::v2(2.0, 2), {0.2, 0.3}},
        {{0.8, 0.6, 1.3, 1.9, 1.1}, DiscreteParams::v2(3.0, 2), {-0.3, 0.2}},
    };
    Outcome o;
    for (DifferenceEquation e : {DifferenceEquation::Eq1_15, DifferenceEquation::Eq1_16,
                                 DifferenceEquation::Eq6_V2_x, DifferenceEquation::Eq6_V2_y}) {
      const bool joint = e == DifferenceEquation::Eq6_V2_x || e == DifferenceEquation::Eq6_V2_y;
      int pass = 0, total = 0;
      double worst = 0.0;
      for (const DiffPoint& p : joint ? v2 : v1) {
        const auto r = residual_difference_equation(e, p.q, p.d, p.z);
        worst = std::max(worst, r.rel_residual);
        pass += r.passed;
        ++total;
      }
      if (pass != total) o.passed = false;
      o.detail += std::string(o.detail.empty() ? "" : "; ") + to_string(e) +
                  fmt(" %.0f/%.0f worst %.2e", pass, total, worst);
    }
    return o;
  });

  criterion(3, "identity catalogue on the default grid", 60.0, [] {
    const std::vector<Family> fams = {
        Family::DiffFormula,        Family::DiffOpFormula,      Family::FiniteSum,
        Family::InfiniteSum,        Family::Recursion,          Family::LadderDifferential,
        Family::LadderDifference,   Family::PairwiseDifferential, Family::PairwiseDifference};
    const auto res = run_suite(family_filter(fams), default_grid());
    const SuiteSummary s = summarize(res);
    std::map<std::string, int> red;
    for (const auto& r : res)
      if (!r.passed && !r.skipped) {
        const std::string head = r.id.detail.substr(0, r.id.detail.find('/'));
        ++red[std::string(to_string(r.id.family)) + "/" + head];
      }
    Outcome o{s.fail == 0 && res.size() > 250,
              fmt("%.0f checks, %.0f pass, %.0f fail", res.size(), s.pass, s.fail) +
                  fmt(", %.0f skip", s.skip)};
    for (const auto& [k, n] : red) o.detail += "; " + k + fmt(" x%.0f", n);
    return o;
  });

  criterion(4, "integral representations at order 64", 30.0, [] {
    Outcome o;
    int pass = 0;
    double worst = 0.0;
    for (IntegralRepId id : kAllIntegralReps) {
      const IntegralSmokePoint sp = smoke_point(id);
      const auto r = verify_integral_rep(id, sp.params, sp.discrete, sp.point, {16, 32, 64});
      worst = std::max(worst, r.rel_residual);
      if (r.passed)
        ++pass;
      else
        o.detail += std::string(to_string(id)) + " red (" + r.notes + "); ";
    }
    o.passed = pass == 11;
    o.detail += fmt("%.0f/11, worst rel %.2e, tol 1e-6", pass, worst);
    return o;
  });

  criterion(5, "Humbert limits with eps_min 1e-4", 5.0, [] {
    const std::vector<double> eps{1e-2, 1e-3, 1e-4};
    const std::vector<DiffPoint> pts = {
        {{1.3, 0.7, 1.1, 2.2, 1.9}, DiscreteParams::v1(2.0, 2.0, 1, 1), {0.3, 0.2}},
        {{0.9, 1.4, 0.6, 1.7, 2.4}, DiscreteParams::v1(3.0, 4.0, 2, 1), {0.25, -0.3}},
        {{1.3, 0.7, 1.1, 2.2, 1.9}, DiscreteParams::v2(3.0, 1), {0.3, 0.2}},
        {{1.8, 1.2, 2.1, 1.6, 0.8}, DiscreteParams::v2(4.0, 2), {0.2, 0.35}},
    };
    int pass = 0, total = 0;
    double worst = 0.0;
    for (const DiffPoint& p : pts)
      for (HumbertKind k : {HumbertKind::Psi1, HumbertKind::Psi2}) {
        const auto r = check_humbert_limit(k, p.d.variant, p.q, p.d, p.z, eps);
        worst = std::max(worst, r.rel_residual);
        pass += r.passed;
        ++total;
      }
    return Outcome{pass == total, fmt("%.0f/%.0f, worst %.2e, tol 1e-3", pass, total, worst)};
  });

  criterion(6, "Kampe de Feriet oracle and Pochhammer splitting", 60.0, [] {
    double wk = 0.0;
    for (const auto& [spec, xy] : oracle::convergent_points())
      wk = std::max(wk, rel(eval_kdf(spec, xy.first, xy.second).value,
                            oracle::kdf(spec, xy.first, xy.second)));
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> re(-3.0, 3.0), im(-2.0, 2.0);
    std::uniform_int_distribution<unsigned> idx(0, 12);
    double wp = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Complex a(re(rng), im(rng));
      const unsigned m = idx(rng), n = idx(rng), r = idx(rng);
      const auto [p, q, s] = pochhammer_split(a, m, n, r);
      wp = std::max({wp, rel(p, q), rel(p, s)});
    }
    return Outcome{wk <= 1e-12 && wp <= 1e-12,
                   fmt("20 points worst %.2e; 100 splits worst %.2e; tol 1e-12", wk, wp)};
  });

  criterion(7, "divergence at k = 1, t = 0.5, x = 0.5, y = 0", 5.0, [] {
    const ParameterSet q{1.3, 0.7, 1.1, 2.2, 1.9};
    Outcome o;
    for (const DiscreteParams& d : {DiscreteParams::v1(0.5, 0.0, 1, 0), DiscreteParams::v2(0.5, 1)}) {
      const char* name = d.variant == Variant::V1 ? "separate" : "joint";
      try {
        (void)eval_discrete_f2(q, d, {0.5, 0.0});
        o.passed = false;
        o.detail += std::string(name) + ": returned a value; ";
      } catch (const DivergenceError& e) {
        const bool ok = e.partial().status == SeriesStatus::DivergenceDetected;
        o.passed = o.passed && ok;
        o.detail += std::string(name) + (ok ? ": DivergenceDetected; " : ": wrong status; ");
      }
    }
    return o;
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
