#pragma once

// Local representations at 0 or infinity of the shape
//   direct sum of [N]_*(L_psi(h) (x) L_chi (x) U_n),
// stored as canonical atoms so that equality is multiset equality.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "monodromy/field.hpp"

namespace monodromy {

using Rational = boost::rational<long long>;

/// Finite-order tame character, as a rational number mod 1.
class TameChar {
 public:
  TameChar() = default;
  TameChar(long long num, long long den);
  explicit TameChar(Rational r);

  Rational value() const { return value_; }
  /// Denominator is prime to p.
  bool admissible(Residue p) const;
  bool is_trivial() const { return value_.numerator() == 0; }

  TameChar operator+(const TameChar& o) const { return TameChar(value_ + o.value_); }
  TameChar operator-() const { return TameChar(-value_); }
  TameChar operator*(long long k) const { return TameChar(value_ * k); }
  friend bool operator==(const TameChar& a, const TameChar& b) { return a.value_ == b.value_; }
  friend bool operator<(const TameChar& a, const TameChar& b) { return a.value_ < b.value_; }

  /// "u/v", with the trivial character written "0/1".
  std::string to_string() const;
  /// Accepts "u/v" or an integer; throws ParseError.
  static TameChar parse(const std::string& s);

 private:
  Rational value_{0};
};

/// Argument of an Artin-Schreier character: a polynomial in t with only
/// positive exponents, none divisible by p. Terms are kept by exponent.
class PsiArg {
 public:
  using Terms = std::map<int, Fq, std::greater<int>>;

  PsiArg() = default;
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }

  /// h(c t).
  PsiArg substituted(const Fq& c) const;

  friend bool operator==(const PsiArg& a, const PsiArg& b);
  std::string to_string() const;

 private:
  Terms terms_;
  friend PsiArg canonicalize_psi_arg(FieldTower& tower, const std::map<int, Fq>& h);
};

/// Drops terms of degree <= 0 and folds a t^{pm} into pth_root(a) t^m until
/// no exponent is divisible by p. Coefficients are stored at their minimal
/// level.
PsiArg canonicalize_psi_arg(FieldTower& tower, const std::map<int, Fq>& h);

/// Term-by-term from the highest exponent: smaller exponent first, then
/// canonical element order; a proper prefix sorts first.
int psi_compare(const PsiArg& a, const PsiArg& b);

/// Jordan type of U_n (x) U_m in characteristic zero.
std::vector<int> jordan_tensor(int n, int m);

struct Atom {
  int N = 1;
  PsiArg psi;
  TameChar tame;
  int unip = 1;

  long long rank() const { return static_cast<long long>(N) * unip; }
  Rational slope() const { return Rational(psi.degree(), N); }
  long long swan() const { return static_cast<long long>(unip) * psi.degree(); }

  friend bool operator==(const Atom& a, const Atom& b);
};

/// Canonical order: slope descending, then N, tame, unip, psi.
bool atom_less(const Atom& a, const Atom& b);

/// Atom with psi replaced by the least of h(zeta^j t), zeta a primitive
/// N-th root of unity. Throws HypothesisViolation if p | N.
Atom canonical_atom(FieldTower& tower, int N, const PsiArg& h, TameChar tame, int unip);

enum class Point { Zero, Infinity };

struct LocalRep {
  Point point = Point::Infinity;
  std::vector<Atom> atoms;  // sorted by atom_less

  void sort();
  friend bool operator==(const LocalRep& a, const LocalRep& b);
};

/// [N]^*[N]_* of an atom: its N conjugates L_psi(h(zeta^j t)), each with
/// push index 1. Only M == N is supported.
LocalRep restrict_pushforward(FieldTower& tower, const Atom& atom, int M, Point point = Point::Infinity);

struct Invariants {
  long long rank = 0;
  long long swan = 0;
  std::vector<Rational> slopes;  // one per atom, descending
};

Invariants invariants(const LocalRep& rep);

/// [a]_*(L_psi(f) (x) L_chi (x) U_n).
struct InputRep {
  int a = 1;
  std::map<int, Fq> f;  // exponent -> coefficient, exponents >= 0
  TameChar chi;
  int n = 1;

  int degree() const;
  Fq leading() const;
  /// Throws HypothesisViolation / ParseError naming the offending field.
  void validate(Residue p, const std::string& name) const;
};

std::string to_string(Point point);

}  // namespace monodromy
