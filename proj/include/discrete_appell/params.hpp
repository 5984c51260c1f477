#pragma once

#include "core.hpp"

namespace dappell {

struct ParameterSet {
  Complex a{}, b1{}, b2{}, c1{}, c2{};
};

enum class Variant { V1, V2, V3 };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::V1: return "V1";
    case Variant::V2: return "V2";
    case Variant::V3: return "V3";
  }
  return "?";
}

/// Discrete data of the three variants. V1 uses (t1, t2, k1, k2), V2 uses
/// (t, k), V3 uses (t1, t2, k).
struct DiscreteParams {
  Variant variant = Variant::V1;
  Complex t1{}, t2{}, t{};
  unsigned k1 = 0, k2 = 0, k = 0;

  static DiscreteParams v1(Complex t1, Complex t2, unsigned k1, unsigned k2) {
    DiscreteParams d;
    d.variant = Variant::V1;
    d.t1 = t1;
    d.t2 = t2;
    d.k1 = k1;
    d.k2 = k2;
    return d;
  }
  static DiscreteParams v2(Complex t, unsigned k) {
    DiscreteParams d;
    d.variant = Variant::V2;
    d.t = t;
    d.k = k;
    return d;
  }
  static DiscreteParams v3(Complex t1, Complex t2, unsigned k) {
    DiscreteParams d;
    d.variant = Variant::V3;
    d.t1 = t1;
    d.t2 = t2;
    d.k = k;
    return d;
  }

  /// V3 expressed as V1.
  DiscreteParams as_v1() const {
    if (variant == Variant::V3) return v1(t1, t2, k, k);
    return *this;
  }
};

struct EvalPoint {
  Complex x{}, y{};
};

}  // namespace dappell
