#include <gtest/gtest.h>

#include "../support/builders.hpp"

using namespace monodromy;
using testing_support::input;
using testing_support::psi;

TEST(BuildH, Examples) {
  FieldTower t(7);
  auto kl = ConvProblem{input(t, 1, {{1, 1}}), input(t, 1, {{1, 1}}), Mode::InfInf};
  EXPECT_EQ(build_H(t, kl).to_string(), "([1]@1*t^0)*z^1 + ([1]@1*t^0)*z^-1");

  FieldTower t5(5);
  auto w = ConvProblem{input(t5, 1, {{2, 1}, {1, 1}}), input(t5, 1, {{1, 1}}), Mode::InfInf};
  EXPECT_EQ(build_H(t5, w).to_string(), "([1]@1*t^0)*z^2 + ([1]@1*t^-1)*z^1 + ([1]@1*t^0)*z^-1");

  auto q = ConvProblem{input(t, 1, {{2, 1}}), input(t, 1, {{1, 1}}), Mode::ZeroInf};
  EXPECT_EQ(build_H(t, q).to_string(), "([1]@1*t^0)*z^-1 + ([1]@1*t^0)*z^-2");
}

TEST(LcInfInf, Kloosterman) {
  for (Residue p : {5u, 7u, 11u}) {
    FieldTower t(p);
    LocalRep r = lc_inf_inf(t, input(t, 1, {{1, 1}}), input(t, 1, {{1, 1}}));
    ASSERT_EQ(r.atoms.size(), 1u);
    EXPECT_EQ(r.atoms[0], (Atom{2, psi(t, {{1, 2}}), TameChar(1, 2), 1}));
  }
}

TEST(LcInfInf, WorkedExample) {
  FieldTower t(5);
  ConvReport rep = convolve(t, ConvProblem{input(t, 1, {{2, 1}, {1, 1}}), input(t, 1, {{1, 1}}), Mode::InfInf, 8});
  ASSERT_EQ(rep.rep.atoms.size(), 1u);
  EXPECT_EQ(rep.rep.atoms[0], (Atom{3, psi(t, {{2, 2}, {1, 2}}), TameChar(0, 1), 1}));
  ASSERT_EQ(rep.stalks.size(), 1u);
  EXPECT_EQ(rep.stalks[0].z.coefficient(0), t.from_int(2));
  EXPECT_EQ(rep.stalks[0].z.coefficient(-1), t.from_int(4));
  EXPECT_GT(rep.stalks[0].residual_valuation, rep.precision);
  EXPECT_EQ(invariants(rep.rep).rank, 3);
}

TEST(LcInfInf, TwoOrbitsInCharacteristicThree) {
  FieldTower t(3);
  LocalRep r = lc_inf_inf(t, input(t, 1, {{2, 1}}), input(t, 1, {{2, 1}}));
  LocalRep expected{Point::Infinity, {Atom{2, psi(t, {{2, 2}}), {}, 1}, Atom{2, psi(t, {{2, 1}}), {}, 1}}};
  expected.sort();
  EXPECT_EQ(r, expected);
  EXPECT_EQ(invariants(r).rank, 4);
}

TEST(LcZeroInf, ZeroRuleAndQuadratic) {
  FieldTower t(7);
  EXPECT_TRUE(lc_0_inf(t, input(t, 2, {{1, 1}}), input(t, 1, {{1, 1}})).atoms.empty());
  LocalRep q = lc_0_inf(t, input(t, 1, {{2, 1}}), input(t, 1, {{1, 1}}));
  ASSERT_EQ(q.atoms.size(), 1u);
  const Fq minus_quarter = -t.from_int(4).inv();
  EXPECT_EQ(q.atoms[0].psi.terms().at(2), minus_quarter);
  EXPECT_EQ(q.atoms[0].N, 1);
  EXPECT_TRUE(q.atoms[0].tame.is_trivial());
}

TEST(LcZeroInf, UnipotentBlocks) {
  FieldTower t(7);
  LocalRep q = lc_0_inf(t, input(t, 1, {{2, 1}}, {}, 2), input(t, 1, {{1, 1}}, {}, 3));
  ASSERT_EQ(q.atoms.size(), 2u);
  EXPECT_EQ(q.atoms[0].unip, 2);
  EXPECT_EQ(q.atoms[1].unip, 4);
  EXPECT_EQ(invariants(q).rank, 6);
}

TEST(Hypotheses, Violations) {
  FieldTower t(5);
  EXPECT_THROW(lc_inf_inf(t, input(t, 5, {{1, 1}}), input(t, 1, {{1, 1}})), HypothesisViolation);
  EXPECT_THROW(lc_inf_inf(t, input(t, 1, {{5, 1}}), input(t, 1, {{1, 1}})), HypothesisViolation);
  // bd + ae = 2 + 3 = 5.
  EXPECT_THROW(lc_inf_inf(t, input(t, 1, {{2, 1}}), input(t, 1, {{3, 1}})), HypothesisViolation);
  EXPECT_THROW(lc_inf_inf(t, input(t, 2, {{1, 1}}), input(t, 2, {{1, 1}})), HypothesisViolation);
}

TEST(Reduction, ScalesPushIndex) {
  FieldTower t(7);
  ConvProblem pr{input(t, 2, {{1, 1}}), input(t, 2, {{1, 1}}), Mode::InfInf};
  Reduction red = reduce_common_pushforward(pr, 7);
  EXPECT_EQ(red.r, 2);
  EXPECT_EQ(red.reduced.F.a, 1);
  ConvReport rep = solve(t, pr);
  ASSERT_EQ(rep.rep.atoms.size(), 1u);
  EXPECT_EQ(rep.rep.atoms[0].N, 4);
  EXPECT_EQ(rep.rep.atoms[0].psi, psi(t, {{1, 2}}));
  ConvProblem pr2{input(t, 3, {{1, 1}}), input(t, 6, {{1, 1}}), Mode::InfInf};
  Reduction red2 = reduce_common_pushforward(pr2, 7);
  EXPECT_EQ(red2.r, 3);
  EXPECT_EQ(red2.reduced.F.a, 1);
  EXPECT_EQ(red2.reduced.G.a, 2);
  EXPECT_EQ(reduce_common_pushforward(ConvProblem{input(t, 1, {{1, 1}}), input(t, 2, {{1, 1}})}, 7).r, 1);
  EXPECT_THROW(reduce_common_pushforward(ConvProblem{input(t, 7, {{1, 1}}), input(t, 14, {{1, 1}})}, 7),
               HypothesisViolation);
}

TEST(LiftObserver, SeesEveryLiftAndRestores) {
  FieldTower t(7);
  std::vector<std::pair<int, int>> seen;
  const LiftObserver before = set_lift_observer([&](int r, int k) { seen.emplace_back(r, k); });
  const ConvReport rep =
      convolve(t, ConvProblem{input(t, 1, {{3, 1}}), input(t, 1, {{3, 2}}), Mode::InfInf}, ConvOptions{true});
  set_lift_observer(before);
  ASSERT_EQ(seen.size(), 6u);  // bd + ae = 6 roots, all lifted
  for (std::size_t i = 0; i < seen.size(); ++i) {
    EXPECT_EQ(seen[i].first, rep.stalks[i].residual_valuation);
    EXPECT_EQ(seen[i].second, rep.precision);
    EXPECT_GT(seen[i].first, seen[i].second);
  }
  convolve(t, ConvProblem{input(t, 1, {{1, 1}}), input(t, 1, {{1, 1}}), Mode::InfInf});
  EXPECT_EQ(seen.size(), 6u);
}
