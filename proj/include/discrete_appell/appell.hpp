#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "identity_types.hpp"
#include "kdf.hpp"
#include "params.hpp"
#include "series.hpp"

namespace dappell {

enum class HumbertKind { Psi1, Psi2 };

inline const char* to_string(HumbertKind k) { return k == HumbertKind::Psi1 ? "Psi1" : "Psi2"; }

namespace detail {

enum class DiscreteMode { None, Separate, Joint };

/// Common shape of every member of the family:
///   (a)_{m+n} [(b1)_m] [(b2)_n] / ((c1)_m (c2)_n m! n!) * D(m,n) x^m y^n
/// with D = 1, g(t1,k1;m) g(t2,k2;n), or g(t1,k1;m+n) and
/// g(t,k;m) = (-1)^{mk} (-t)_{mk}.
struct FamilySeries {
  Complex a{};
  std::optional<Complex> b1, b2;
  Complex c1{}, c2{};
  DiscreteMode mode = DiscreteMode::None;
  Complex t1{}, t2{};
  unsigned k1 = 0, k2 = 0;
};

inline FamilySeries family_of(const ParameterSet& p, const DiscreteParams& d) {
  FamilySeries f;
  f.a = p.a;
  f.b1 = p.b1;
  f.b2 = p.b2;
  f.c1 = p.c1;
  f.c2 = p.c2;
  switch (d.variant) {
    case Variant::V1:
    case Variant::V3: {
      const DiscreteParams v = d.as_v1();
      f.mode = DiscreteMode::Separate;
      f.t1 = v.t1;
      f.t2 = v.t2;
      f.k1 = v.k1;
      f.k2 = v.k2;
      break;
    }
    case Variant::V2:
      f.mode = DiscreteMode::Joint;
      f.t1 = d.t;
      f.k1 = d.k;
      break;
  }
  return f;
}

/// prod_{j<k} (t - s*k - j): the ratio g(t,k;s+1)/g(t,k;s).
inline Complex falling_step(Complex t, unsigned k, std::size_t s) {
  Complex v = 1.0;
  const double base = static_cast<double>(s) * k;
  for (unsigned j = 0; j < k; ++j) v *= t - (base + j);
  return v;
}

inline void tighten(std::optional<std::size_t>& slot, std::size_t v) {
  slot = slot ? std::min(*slot, v) : v;
}

inline std::optional<std::size_t> discrete_cutoff(Complex t, unsigned k) {
  if (k == 0) return std::nullopt;
  if (auto n = nonnegative_integer(t)) return static_cast<std::size_t>(*n) / k;
  return std::nullopt;
}

inline SeriesExtent extent_of(const FamilySeries& f) {
  SeriesExtent e;
  if (auto n = nonpositive_integer(f.a)) tighten(e.max_total, static_cast<std::size_t>(*n));
  if (f.b1)
    if (auto n = nonpositive_integer(*f.b1)) tighten(e.max_m, static_cast<std::size_t>(*n));
  if (f.b2)
    if (auto n = nonpositive_integer(*f.b2)) tighten(e.max_n, static_cast<std::size_t>(*n));
  if (f.mode == DiscreteMode::Separate) {
    if (auto c = discrete_cutoff(f.t1, f.k1)) tighten(e.max_m, *c);
    if (auto c = discrete_cutoff(f.t2, f.k2)) tighten(e.max_n, *c);
  } else if (f.mode == DiscreteMode::Joint) {
    if (auto c = discrete_cutoff(f.t1, f.k1)) tighten(e.max_total, *c);
  }
  return e;
}

inline std::string describe_point(EvalPoint p) {
  std::ostringstream os;
  os << "x=" << p.x << " y=" << p.y;
  return os.str();
}

template <class Weight>
SeriesValue sum_family(FamilySeries f, EvalPoint p, const SummationConfig& cfg, Weight&& weight) {
  f.a = snap_nonpositive(f.a);
  if (f.b1) f.b1 = snap_nonpositive(*f.b1);
  if (f.b2) f.b2 = snap_nonpositive(*f.b2);
  f.c1 = snap_nonpositive(f.c1);
  f.c2 = snap_nonpositive(f.c2);
  if (f.k1 > 0) f.t1 = snap_nonnegative(f.t1);
  if (f.k2 > 0) f.t2 = snap_nonnegative(f.t2);
  const SeriesExtent extent = extent_of(f);

  // Outside the region the non-terminating sum has no meaning.
  const bool x_needed = !extent.max_total && !extent.max_m;
  const bool y_needed = !extent.max_total && !extent.max_n;
  double bound = 0.0;
  if (f.b1 && f.b2) {
    bound = (x_needed ? std::abs(p.x) : 0.0) + (y_needed ? std::abs(p.y) : 0.0);
  } else if (f.b1) {
    bound = x_needed ? std::abs(p.x) : 0.0;
  }
  if (bound >= 1.0) {
    SeriesValue v;
    v.status = SeriesStatus::DivergenceDetected;
    throw DivergenceError("point " + describe_point(p) +
                              " lies outside the convergence region of a non-terminating series",
                          v);
  }

  auto ratio = [&](bool step_m, std::size_t m, std::size_t n) -> Complex {
    const double s = static_cast<double>(m + n);
    const std::size_t own = step_m ? m : n;
    const double o = static_cast<double>(own);
    Complex num = f.a + s;
    Complex den = (step_m ? f.c1 : f.c2) + o;
    den *= o + 1.0;
    const auto& b = step_m ? f.b1 : f.b2;
    if (b) num *= *b + o;
    if (f.mode == DiscreteMode::Separate) {
      num *= step_m ? falling_step(f.t1, f.k1, own) : falling_step(f.t2, f.k2, own);
    } else if (f.mode == DiscreteMode::Joint) {
      num *= falling_step(f.t1, f.k1, m + n);
    }
    if (den == Complex{}) return pole_value();
    return num / den;
  };
  auto rm = [&](std::size_t m, std::size_t n) { return ratio(true, m, n); };
  auto rn = [&](std::size_t m, std::size_t n) { return ratio(false, m, n); };
  SeriesValue v = sum_double_series(rm, rn, p.x, p.y, cfg, extent, weight);
  if (v.status == SeriesStatus::DivergenceDetected)
    throw DivergenceError("series diverges at " + describe_point(p), v);
  return v;
}

}  // namespace detail

/// Classical Appell F2.
inline SeriesValue eval_f2(const ParameterSet& params, EvalPoint p, const SummationConfig& cfg = {}) {
  detail::FamilySeries f;
  f.a = params.a;
  f.b1 = params.b1;
  f.b2 = params.b2;
  f.c1 = params.c1;
  f.c2 = params.c2;
  return detail::sum_family(f, p, cfg, UnitWeight{});
}

/// Weighted variant: the (m,n) term is multiplied by weight(m,n).
template <class Weight>
SeriesValue eval_discrete_f2_weighted(const ParameterSet& params, const DiscreteParams& d,
                                      EvalPoint p, const SummationConfig& cfg, Weight&& weight) {
  return detail::sum_family(detail::family_of(params, d), p, cfg, weight);
}

inline SeriesValue eval_discrete_f2(const ParameterSet& params, const DiscreteParams& d,
                                    EvalPoint p, const SummationConfig& cfg = {}) {
  return eval_discrete_f2_weighted(params, d, p, cfg, UnitWeight{});
}

/// Discrete Humbert functions. Psi1 drops (b2)_n, Psi2 drops both b factors.
inline SeriesValue eval_humbert(HumbertKind kind, Variant variant, const ParameterSet& params,
                                const DiscreteParams& d, EvalPoint p,
                                const SummationConfig& cfg = {}) {
  const bool joint = d.variant == Variant::V2;
  if ((variant == Variant::V2) != joint)
    throw ConfigError("eval_humbert: discrete parameters do not match the requested variant");
  detail::FamilySeries f = detail::family_of(params, d);
  f.b2.reset();
  if (kind == HumbertKind::Psi2) f.b1.reset();
  return detail::sum_family(f, p, cfg, UnitWeight{});
}

/// Extrapolates the epsilon -> 0 limit that turns the discrete F2 into the
/// discrete Humbert function of the same variant and compares.
inline IdentityCheckResult check_humbert_limit(HumbertKind kind, Variant variant,
                                               const ParameterSet& params,
                                               const DiscreteParams& d, EvalPoint p,
                                               const std::vector<double>& eps,
                                               const SummationConfig& cfg = {}) {
  if (eps.size() < 2) throw ConfigError("check_humbert_limit needs at least two epsilons");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw ConfigError("epsilons must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw ConfigError("epsilons must decrease");
  }
  std::vector<Complex> vals;
  for (double e : eps) {
    ParameterSet q = params;
    EvalPoint s = p;
    q.b2 = 1.0 / e;
    s.y *= e;
    if (kind == HumbertKind::Psi2) {
      q.b1 = 1.0 / e;
      s.x *= e;
    }
    vals.push_back(eval_discrete_f2(q, d, s, cfg).value);
  }
  // Neville extrapolation of the values to epsilon = 0.
  std::vector<Complex> tab = vals;
  for (std::size_t lvl = 1; lvl < tab.size(); ++lvl)
    for (std::size_t i = tab.size() - 1; i >= lvl; --i) {
      const double e0 = eps[i - lvl], e1 = eps[i];
      tab[i] = (e0 * tab[i] - e1 * tab[i - 1]) / (e0 - e1);
      if (i == lvl) break;
    }
  const Complex limit = tab.back();
  const Complex target = eval_humbert(kind, variant, params, d, p, cfg).value;
  const double scale = std::max(1.0, std::abs(target));
  const double eps_min = eps.back();

  IdentityId id{Family::HumbertLimit, variant, to_string(kind)};
  PointRecord rec{params, d, p, {}};
  std::ostringstream es;
  for (std::size_t i = 0; i < eps.size(); ++i) es << (i ? "," : "") << eps[i];
  rec.with("eps", es.str());
  IdentityCheckResult r = judge(id, rec, limit, target, 0.0, 10.0 * eps_min);
  r.rel_residual = r.abs_residual / scale;
  r.passed = r.rel_residual <= r.tolerance;
  r.notes = "tolerance 10*eps_min relative to max(1,|psi|)";
  if (variant == Variant::V2)
    r.notes += "; compared with the joint-variant Humbert function (written with superscript (1))";
  return r;
}

}  // namespace dappell
