// Steps a up three times with the differential a+ ladder and compares
// each step with a direct evaluation at the shifted parameter.

#include <discrete_appell/identities.hpp>

#include <cstdio>

using namespace dappell;

int main() {
  ParameterSet q{1.3, 0.7, 1.1, 2.2, 1.9};
  const DiscreteParams d = DiscreteParams::v1(4.0, 3.0, 1, 1);
  const EvalPoint z{0.25, 0.2};
  const OperatorPoint at = operator_point(d, z);

  std::printf("%s\n", ladder_relation_text({Family::LadderDifferential, Variant::V1, "a+"}).c_str());
  for (int step = 0; step < 3; ++step) {
    const Ladder up = make_ladder(LadderTag::APlus, LadderFlavor::Differential, Variant::V1, q, d);
    const Complex predicted = apply(up.op, make_evaluable(q, d), at) / up.scalar;
    q.a += 1.0;
    const Complex direct = eval_discrete_f2(q, d, z).value;
    std::printf("a=%.1f  ladder % .15f  direct % .15f  diff %.2e\n", q.a.real(), predicted.real(),
                direct.real(), std::abs(predicted - direct));
  }
}
