// Evaluates the discrete F2 family at one point and prints how the
// pieces relate: k = 0 is the classical series, larger k truncates it.

#include <discrete_appell/appell.hpp>
#include <discrete_appell/kdf.hpp>

#include <cstdio>

using namespace dappell;

static void show(const char* label, const SeriesValue& v) {
  std::printf("%-28s % .15f %+.3ei  terms=%zu  %s\n", label, v.value.real(), v.value.imag(),
              v.terms_used, to_string(v.status));
}

int main() {
  const ParameterSet q{1.3, 0.7, 1.1, 2.2, 1.9};
  const EvalPoint z{0.25, 0.2};

  show("F2", eval_f2(q, z));
  for (unsigned k = 0; k <= 2; ++k) {
    char label[64];
    std::snprintf(label, sizeof label, "separate t=(4,3) k=%u", k);
    show(label, eval_discrete_f2(q, DiscreteParams::v1(4.0, 3.0, k, k), z));
    std::snprintf(label, sizeof label, "joint t=4 k=%u", k);
    show(label, eval_discrete_f2(q, DiscreteParams::v2(4.0, k), z));
  }

  // k = 1 of the joint variant as a Kampe de Feriet series in (-x, -y)
  const KdFSpec s{{q.a, -4.0}, {q.b1}, {q.b2}, {}, {q.c1}, {q.c2}};
  show("KdF form of joint k=1", eval_kdf(s, -z.x, -z.y));

  // Non-integer t with k >= 1: the series has zero radius of convergence.
  try {
    eval_discrete_f2(q, DiscreteParams::v1(0.5, 3.0, 1, 1), {0.5, 0.0});
  } catch (const DivergenceError& e) {
    std::printf("t1=0.5, k1=1 at x=0.5: %s after %zu terms\n", to_string(e.partial().status),
                e.partial().terms_used);
  }
}
