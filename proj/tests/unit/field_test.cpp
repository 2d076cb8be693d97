#include <gtest/gtest.h>

#include <random>
#include <set>

#include "monodromy/field.hpp"

using namespace monodromy;

namespace {

Fq random_element(FieldTower& t, unsigned degree, std::mt19937& rng) {
  std::uniform_int_distribution<Residue> d(0, t.characteristic() - 1);
  std::vector<Residue> c(degree);
  for (auto& x : c) x = d(rng);
  return t.from_coeffs(c, degree);
}

// Brute force: a monic polynomial of degree 2 or 3 is irreducible iff it has
// no root in F_p.
bool no_roots(const FpPoly& f, Residue p) {
  for (Residue x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = (v * x + f[i]) % p;
    if (v == 0) return false;
  }
  return true;
}

}  // namespace

TEST(Irreducible, SmallestQuadratics) {
  EXPECT_EQ(find_irreducible(7, 2), (FpPoly{1, 0, 1}));
  EXPECT_EQ(find_irreducible(5, 2), (FpPoly{2, 0, 1}));
  EXPECT_EQ(find_irreducible(3, 1), (FpPoly{0, 1}));
}

TEST(Irreducible, AgreesWithRootTestForLowDegree) {
  for (Residue p : {3u, 5u, 7u}) {
    for (unsigned r : {2u, 3u}) {
      FpPoly f(r + 1, 0);
      f[r] = 1;
      for (unsigned n = 0; n < static_cast<unsigned>(std::pow(p, r)); ++n) {
        unsigned m = n;
        for (unsigned i = 0; i < r; ++i, m /= p) f[i] = m % p;
        EXPECT_EQ(is_irreducible(f, p), no_roots(f, p));
      }
    }
  }
}

TEST(Irreducible, CountMatchesNecklaceFormula) {
  // Degree 4 over F_3: (3^4 - 3^2) / 4 = 18.
  unsigned count = 0;
  FpPoly f(5, 0);
  f[4] = 1;
  for (unsigned n = 0; n < 81; ++n) {
    unsigned m = n;
    for (unsigned i = 0; i < 4; ++i, m /= 3) f[i] = m % 3;
    count += is_irreducible(f, 3);
  }
  EXPECT_EQ(count, 18u);
}

TEST(Fq, FieldAxioms) {
  std::mt19937 rng(1);
  for (Residue p : {3u, 5u, 13u}) {
    FieldTower t(p);
    for (unsigned r : {1u, 2u, 3u, 4u, 6u}) {
      for (int it = 0; it < 20; ++it) {
        Fq a = random_element(t, r, rng), b = random_element(t, r, rng), c = random_element(t, r, rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, t.zero(r));
        if (!a.is_zero()) EXPECT_TRUE((a * a.inv()).is_one());
        EXPECT_EQ(a.frobenius(), a.pow(static_cast<long long>(p)));
        EXPECT_EQ(a.pow(BigInt(12345)), a.pow(12345LL));
      }
    }
  }
}

TEST(Fq, DivisionByZeroThrows) {
  FieldTower t(5);
  EXPECT_THROW(t.zero(2).inv(), DivisionByZero);
}

TEST(Tower, EmbeddingsAreHomomorphismsAndCommute) {
  std::mt19937 rng(2);
  FieldTower t(5);
  for (int it = 0; it < 10; ++it) {
    Fq a = random_element(t, 2, rng), b = random_element(t, 2, rng);
    EXPECT_EQ(t.embed(a * b, 6), t.embed(a, 6) * t.embed(b, 6));
    EXPECT_EQ(t.embed(a + b, 4), t.embed(a, 4) + t.embed(b, 4));
    EXPECT_EQ(t.embed(t.embed(a, 4), 12), t.embed(a, 12));
    EXPECT_EQ(t.embed(t.embed(a, 6), 12), t.embed(a, 12));
    Fq c = random_element(t, 3, rng);
    EXPECT_EQ(t.embed(t.embed(c, 6), 12), t.embed(c, 12));
  }
}

TEST(Tower, MinimalDegreeAndNormalize) {
  std::mt19937 rng(3);
  FieldTower t(7);
  Fq g = t.generator(2);
  Fq e = t.embed(g, 6);
  EXPECT_EQ(t.minimal_degree(e), 2u);
  EXPECT_EQ(t.normalize(e).coeffs()[1], 1u);
  EXPECT_EQ(t.minimal_degree(t.embed(t.from_int(3), 4)), 1u);
  for (int it = 0; it < 5; ++it) {
    Fq x = random_element(t, 3, rng);
    Fq n = t.normalize(t.embed(x, 6));
    EXPECT_EQ(n.degree(), t.minimal_degree(x));
    EXPECT_EQ(n, x);
  }
}

TEST(Tower, ParseAndPrint) {
  FieldTower t(7);
  EXPECT_EQ(t.parse("[3,1]@2").to_string(), "[3,1]@2");
  EXPECT_EQ(t.parse("-1").to_string(), "[6]@1");
  EXPECT_EQ(t.parse("[4,0]@2").to_string(), "[4]@1");
  EXPECT_THROW(t.parse("[7,0]@2"), ParseError);
  EXPECT_THROW(t.parse("[1,2,3]@2"), ParseError);
  EXPECT_THROW(t.parse("x"), ParseError);
}

TEST(Tower, CustomModulus) {
  FieldTower t(7);
  t.set_modulus(2, {3, 1, 1});
  EXPECT_EQ(t.modulus(2), (FpPoly{3, 1, 1}));
  Fq x = t.generator(2);
  EXPECT_TRUE((x * x + x + t.from_int(3, 2)).is_zero());
  EXPECT_THROW(t.set_modulus(3, {1, 0, 0, 1}), HypothesisViolation);  // x^3 + 1 = (x + 1)(...)
}

TEST(Tower, RejectsBadCharacteristic) {
  EXPECT_THROW(FieldTower(2), HypothesisViolation);
  EXPECT_THROW(FieldTower(9), HypothesisViolation);
}

TEST(Roots, NthRootsBruteForce) {
  std::mt19937 rng(4);
  for (Residue p : {5u, 7u, 11u, 13u}) {
    for (unsigned n = 1; n <= 8; ++n) {
      if (n % p == 0) continue;
      for (unsigned r : {1u, 2u}) {
        FieldTower t(p);
        Fq c = random_element(t, r, rng);
        if (c.is_zero()) continue;
        auto roots = nth_roots(c, n);
        ASSERT_EQ(roots.size(), n);
        std::set<std::string> distinct;
        for (const auto& z : roots) {
          EXPECT_EQ(z.pow(static_cast<long long>(n)), c);
          distinct.insert(z.to_string());
        }
        EXPECT_EQ(distinct.size(), n);
        // First root is canonically smallest.
        for (const auto& z : roots) EXPECT_LE(canonical_compare(roots[0], z), 0);
        // s is minimal: no smaller admissible level holds every root.
        const unsigned s = roots[0].degree();
        for (unsigned k = 1; k < s; ++k) {
          if (s % k) continue;
          bool all = true;
          for (const auto& z : roots) all = all && (s % t.minimal_degree(z) == 0) && (k % t.minimal_degree(z) == 0);
          EXPECT_FALSE(all) << "p=" << p << " n=" << n;
        }
      }
    }
  }
}

TEST(Roots, PrimitiveRootOfUnityHasExactOrder) {
  for (Residue p : {5u, 7u, 11u}) {
    FieldTower t(p);
    for (unsigned n : {1u, 2u, 3u, 4u, 6u, 8u, 9u, 12u}) {
      if (n % p == 0) continue;
      Fq z = primitive_root_of_unity(t, n);
      EXPECT_EQ(z.degree(), multiplicative_order(p, n));
      for (unsigned k = 1; k < n; ++k) EXPECT_FALSE(z.pow(static_cast<long long>(k)).is_one());
      EXPECT_TRUE(z.pow(static_cast<long long>(n)).is_one());
    }
  }
}

TEST(Roots, Preconditions) {
  FieldTower t(5);
  EXPECT_THROW(nth_roots(t.from_int(2), 5), HypothesisViolation);
  EXPECT_THROW(nth_roots(t.zero(), 3), DivisionByZero);
}

TEST(Roots, PthRoot) {
  std::mt19937 rng(5);
  FieldTower t(7);
  for (int it = 0; it < 10; ++it) {
    Fq c = random_element(t, 3, rng);
    EXPECT_EQ(pth_root(c).pow(7LL), c);
  }
}

TEST(Roots, KnownSquareRoots) {
  // -1 is not a square mod 7, so its square roots live in F_49 = F_7[x]/(x^2+1).
  FieldTower t(7);
  auto r = nth_roots(t.from_int(-1), 2);
  EXPECT_EQ(r[0].degree(), 2u);
  EXPECT_EQ(r[0].to_string(), "[0,1]@2");
  EXPECT_EQ(r[1].to_string(), "[0,6]@2");
}
