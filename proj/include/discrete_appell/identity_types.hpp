#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "params.hpp"

namespace dappell {

enum class Family {
  DiffFormula,
  DiffOpFormula,
  FiniteSum,
  InfiniteSum,
  Recursion,
  LadderDifferential,
  LadderDifference,
  PairwiseDifferential,
  PairwiseDifference,
  Reduction,
  HumbertLimit,
  IntegralRep,
  DifferenceEq,
};

inline constexpr Family kAllFamilies[] = {
    Family::DiffFormula,          Family::DiffOpFormula,      Family::FiniteSum,
    Family::InfiniteSum,          Family::Recursion,          Family::LadderDifferential,
    Family::LadderDifference,     Family::PairwiseDifferential, Family::PairwiseDifference,
    Family::Reduction,            Family::HumbertLimit,       Family::IntegralRep,
    Family::DifferenceEq,
};

inline const char* to_string(Family f) {
  switch (f) {
    case Family::DiffFormula: return "DiffFormula";
    case Family::DiffOpFormula: return "DiffOpFormula";
    case Family::FiniteSum: return "FiniteSum";
    case Family::InfiniteSum: return "InfiniteSum";
    case Family::Recursion: return "Recursion";
    case Family::LadderDifferential: return "LadderDifferential";
    case Family::LadderDifference: return "LadderDifference";
    case Family::PairwiseDifferential: return "PairwiseDifferential";
    case Family::PairwiseDifference: return "PairwiseDifference";
    case Family::Reduction: return "Reduction";
    case Family::HumbertLimit: return "HumbertLimit";
    case Family::IntegralRep: return "IntegralRep";
    case Family::DifferenceEq: return "DifferenceEq";
  }
  return "?";
}

struct IdentityId {
  Family family = Family::Reduction;
  Variant variant = Variant::V1;
  std::string detail;

  std::string str() const {
    return std::string(to_string(family)) + "/" + to_string(variant) + "/" + detail;
  }
  auto operator<=>(const IdentityId&) const = default;
  bool operator==(const IdentityId&) const = default;
};

/// Full record of where an identity was checked.
struct PointRecord {
  ParameterSet params;
  DiscreteParams discrete;
  EvalPoint point;
  std::vector<std::pair<std::string, std::string>> extra;

  PointRecord& with(std::string key, std::string value) {
    extra.emplace_back(std::move(key), std::move(value));
    return *this;
  }
};

struct IdentityCheckResult {
  IdentityId id;
  PointRecord point;
  Complex lhs{};
  Complex rhs{};
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool skipped = false;
  std::string notes;
};

inline constexpr double kTerminatingTolerance = 1e-10;
inline constexpr double kTruncatedTolerance = 1e-8;

/// Relative residual against max(|lhs|, |rhs|, scale). `scale` lets callers
/// account for cancellation between the pieces that make up a side.
inline IdentityCheckResult judge(IdentityId id, PointRecord point, Complex lhs, Complex rhs,
                                 double scale, double tol, std::string notes = {}) {
  IdentityCheckResult r;
  r.id = std::move(id);
  r.point = std::move(point);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_residual = std::abs(lhs - rhs);
  const double denom = std::max({std::abs(lhs), std::abs(rhs), scale});
  r.rel_residual = r.abs_residual == 0.0 ? 0.0 : r.abs_residual / denom;
  if (!std::isfinite(r.rel_residual)) r.rel_residual = std::numeric_limits<double>::infinity();
  r.tolerance = tol;
  r.passed = r.rel_residual <= tol;
  r.notes = std::move(notes);
  return r;
}

inline IdentityCheckResult skipped_result(IdentityId id, PointRecord point, std::string why) {
  IdentityCheckResult r;
  r.id = std::move(id);
  r.point = std::move(point);
  r.skipped = true;
  r.notes = std::move(why);
  return r;
}

}  // namespace dappell
