#include <gtest/gtest.h>

#include <numeric>

#include "../support/builders.hpp"
#include "../support/oracles.hpp"

using namespace monodromy;
using testing_support::psi;

TEST(TameChar, ReducesModOne) {
  EXPECT_EQ(TameChar(7, 6).to_string(), "1/6");
  EXPECT_EQ(TameChar(-1, 3).to_string(), "2/3");
  EXPECT_EQ(TameChar(0, 5).to_string(), "0/1");
  EXPECT_EQ(TameChar::parse("3/2"), TameChar(1, 2));
  EXPECT_FALSE(TameChar(1, 10).admissible(5));
  EXPECT_TRUE(TameChar(1, 10).admissible(7));
  EXPECT_THROW(TameChar::parse("1/x"), ParseError);
  // The two ways of writing the rho exponent agree: de/2 and (de/c)/2 mod 1.
  for (int d = 1; d <= 6; ++d)
    for (int e = 1; e <= 6; ++e) {
      const int c = std::gcd(d, e);
      EXPECT_EQ(TameChar(d * e, 2), TameChar(d * e / c, 2));
    }
}

TEST(PsiArg, Canonicalize) {
  FieldTower t(5);
  std::map<int, Fq> h{{2, t.from_int(2)}, {1, t.from_int(2)}, {0, t.from_int(3)}, {-1, t.from_int(1)}};
  EXPECT_EQ(canonicalize_psi_arg(t, h).to_string(), "[2]@1*t^2 + [2]@1*t^1");
  EXPECT_EQ(psi(t, {{5, 1}}).to_string(), "[1]@1*t^1");
  EXPECT_EQ(psi(t, {{10, 2}, {2, 1}}).to_string(), "[3]@1*t^2");
  EXPECT_EQ(psi(t, {{25, 1}, {1, 4}}).to_string(), "0");
}

TEST(PsiArg, CanonicalizeIsIdempotentOverExtension) {
  FieldTower t(3);
  const Fq g = t.generator(2);
  std::map<int, Fq> h{{9, g}, {6, g * g}, {4, t.from_int(1)}, {2, g}};
  PsiArg once = canonicalize_psi_arg(t, h);
  std::map<int, Fq> again(once.terms().begin(), once.terms().end());
  EXPECT_EQ(canonicalize_psi_arg(t, again), once);
  for (const auto& [k, c] : once.terms()) EXPECT_NE(k % 3, 0);
  EXPECT_EQ(once.degree(), 4);
  // g t^9 -> pth_root(pth_root(g)) t, g^2 t^6 -> pth_root(g^2) t^2.
  EXPECT_EQ(once.terms().at(2), g + pth_root(g * g));
  EXPECT_EQ(once.terms().at(1), pth_root(pth_root(g)));
}

TEST(Jordan, Examples) {
  EXPECT_EQ(jordan_tensor(1, 4), (std::vector<int>{4}));
  EXPECT_EQ(jordan_tensor(2, 2), (std::vector<int>{3, 1}));
  EXPECT_EQ(jordan_tensor(3, 3), (std::vector<int>{5, 3, 1}));
  EXPECT_EQ(jordan_tensor(2, 3), (std::vector<int>{4, 2}));
}

TEST(Jordan, MatchesMatrixRankOracle) {
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= 6; ++m) {
      auto blocks = jordan_tensor(n, m);
      EXPECT_EQ(blocks, oracle::jordan_type_of_tensor(n, m)) << n << "x" << m;
      EXPECT_EQ(blocks, jordan_tensor(m, n));
      int sum = 0;
      for (int b : blocks) sum += b;
      EXPECT_EQ(sum, n * m);
    }
}

TEST(CanonicalAtom, Examples) {
  FieldTower t(7);
  Atom a = canonical_atom(t, 1, psi(t, {{1, 5}}), {}, 1);
  EXPECT_EQ(a.psi, psi(t, {{1, 5}}));
  Atom b = canonical_atom(t, 2, psi(t, {{1, -2}}), {}, 1);
  EXPECT_EQ(b.psi, psi(t, {{1, 2}}));
  Atom c = canonical_atom(t, 2, psi(t, {{2, 3}}), {}, 1);
  EXPECT_EQ(c.psi, psi(t, {{2, 3}}));
  EXPECT_THROW(canonical_atom(t, 7, psi(t, {{1, 1}}), {}, 1), HypothesisViolation);
}

TEST(CanonicalAtom, InvariantUnderRootOfUnitySubstitution) {
  FieldTower t(11);
  for (int N : {2, 3, 4, 5, 6}) {
    PsiArg h = psi(t, {{4, 3}, {3, 1}, {2, 7}, {1, 5}});
    Atom ref = canonical_atom(t, N, h, {}, 1);
    const Fq zeta = primitive_root_of_unity(t, static_cast<unsigned>(N));
    Fq w = t.one();
    for (int j = 0; j < N; ++j, w *= zeta) EXPECT_EQ(canonical_atom(t, N, h.substituted(w), {}, 1), ref);
  }
}

TEST(Restrict, Examples) {
  FieldTower t(7);
  Atom kl = canonical_atom(t, 2, psi(t, {{1, 2}}), TameChar(1, 2), 1);
  LocalRep r = restrict_pushforward(t, kl, 2);
  ASSERT_EQ(r.atoms.size(), 2u);
  LocalRep expected{Point::Infinity,
                    {Atom{1, psi(t, {{1, 2}}), TameChar(1, 2), 1}, Atom{1, psi(t, {{1, -2}}), TameChar(1, 2), 1}}};
  expected.sort();
  EXPECT_EQ(r, expected);
  EXPECT_THROW(restrict_pushforward(t, kl, 1), Unsupported);

  Atom one{1, psi(t, {{3, 1}}), {}, 2};
  EXPECT_EQ(restrict_pushforward(t, one, 1).atoms, std::vector<Atom>{one});

  FieldTower t5(5);
  Atom w = canonical_atom(t5, 3, psi(t5, {{2, 2}, {1, 2}}), {}, 1);
  LocalRep r3 = restrict_pushforward(t5, w, 3);
  ASSERT_EQ(r3.atoms.size(), 3u);
  EXPECT_EQ(invariants(r3).rank, 3);
  for (const auto& x : r3.atoms) EXPECT_EQ(x.psi.degree(), 2);
}

TEST(Invariants, Examples) {
  FieldTower t(7);
  LocalRep kl{Point::Infinity, {canonical_atom(t, 2, psi(t, {{1, 2}}), TameChar(1, 2), 1)}};
  auto inv = invariants(kl);
  EXPECT_EQ(inv.rank, 2);
  EXPECT_EQ(inv.swan, 1);
  EXPECT_EQ(inv.slopes, std::vector<Rational>{Rational(1, 2)});
  EXPECT_EQ(invariants(LocalRep{}).rank, 0);
  EXPECT_EQ(invariants(LocalRep{}).swan, 0);
  FieldTower t5(5);
  LocalRep w{Point::Infinity, {canonical_atom(t5, 3, psi(t5, {{2, 2}, {1, 2}}), {}, 1)}};
  EXPECT_EQ(invariants(w).rank, 3);
  EXPECT_EQ(invariants(w).swan, 2);
  EXPECT_EQ(invariants(w).slopes, std::vector<Rational>{Rational(2, 3)});
}

TEST(InputRep, Validation) {
  FieldTower t(5);
  auto r = testing_support::input(t, 1, {{1, 1}}, TameChar(1, 5));
  EXPECT_THROW(r.validate(5, "F"), ParseError);
  auto z = testing_support::input(t, 1, {{1, 1}, {2, 0}});
  try {
    z.validate(5, "F");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("degree mismatch"), std::string::npos);
  }
}
