#pragma once

// Truncated Laurent series in t^{-1} over a finite field, and Laurent
// polynomials in z with such series as coefficients.
//
// A TruncatedSeries is a_top t^top + a_{top-1} t^{top-1} + ... + O(t^order):
// every coefficient of t^k with k > order is known; nothing is known at or
// below t^order. Exact elements (finite sums) carry no error term.

#include <climits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monodromy/field.hpp"

namespace monodromy {

class TruncatedSeries {
 public:
  /// Sentinel order of exact elements.
  static constexpr int kExact = INT_MIN / 4;

  TruncatedSeries() = default;
  /// Exact zero at the given level.
  explicit TruncatedSeries(const detail::Level& level);
  /// coeffs[i] is the coefficient of t^{top - i}; order as above.
  TruncatedSeries(const detail::Level& level, int top, std::vector<Fq> coeffs, int order = kExact);

  static TruncatedSeries constant(const Fq& c);
  /// c * t^k, exact.
  static TruncatedSeries monomial(const Fq& c, int k);
  /// Polynomial in t from (exponent, coefficient) pairs, exact.
  static TruncatedSeries from_terms(const detail::Level& level, const std::map<int, Fq>& terms);

  const detail::Level& level() const { return *level_; }
  unsigned degree() const { return level_->degree; }
  FieldTower& tower() const { return *level_->tower; }

  bool is_exact() const { return order_ == kExact; }
  /// True when every known coefficient is zero (the element may still be an
  /// unknown nonzero below its order).
  bool is_zero() const { return c_.empty(); }
  int order() const { return order_; }
  /// Exact with a single nonzero term.
  bool is_monomial() const { return is_exact() && c_.size() == 1; }
  /// Exponent of the leading nonzero coefficient; throws if is_zero().
  int valuation() const;
  /// Highest exponent present (valuation), or order for inexact zero.
  int top() const { return top_; }
  Fq leading_coefficient() const;

  /// Coefficient of t^k. Throws PrecisionExhausted if k <= order.
  Fq coefficient(int k) const;
  /// Number of known coefficients at or below the leading term.
  int relative_precision() const;

  /// Same series re-expressed at a level of the given (multiple) degree.
  TruncatedSeries at_degree(unsigned degree) const;

  TruncatedSeries operator-() const;
  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  TruncatedSeries& operator+=(const TruncatedSeries& b) { return *this = *this + b; }
  TruncatedSeries& operator-=(const TruncatedSeries& b) { return *this = *this - b; }
  TruncatedSeries& operator*=(const TruncatedSeries& b) { return *this = *this * b; }

  TruncatedSeries scaled(const Fq& c) const;
  /// Multiplication by t^s.
  TruncatedSeries shifted(int s) const;
  /// Forgets every coefficient at or below t^order.
  TruncatedSeries truncated(int order) const;

  /// Multiplicative inverse. Exact inputs are inverted to `rel_prec` known
  /// coefficients; inexact inputs keep their own relative precision.
  /// Throws DivisionByZero on exact zero, PrecisionExhausted on an inexact
  /// zero.
  TruncatedSeries inverse(int rel_prec = 16) const;
  /// Integer power; negative exponents go through inverse(rel_prec).
  TruncatedSeries pow(long long e, int rel_prec = 16) const;

  /// Agreement on every coefficient known to both sides.
  bool agrees_with(const TruncatedSeries& other) const;
  /// Exact structural equality (same known coefficients and same order).
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

  /// `a*t^k + ... + O(t^m)`; zero coefficients are omitted.
  std::string to_string() const;

 private:
  const detail::Level* level_ = nullptr;
  int top_ = 0;
  std::vector<Fq> c_;
  int order_ = kExact;

  void normalize();
};

/// Finite sum of z^k * c_k(t) with TruncatedSeries coefficients.
class ZLaurentPoly {
 public:
  ZLaurentPoly() = default;
  explicit ZLaurentPoly(std::map<int, TruncatedSeries> terms);

  const std::map<int, TruncatedSeries>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int min_exponent() const;
  int max_exponent() const;

  /// Adds c * z^k (merging with an existing term).
  void add_term(int k, const TruncatedSeries& c);

  friend ZLaurentPoly operator+(const ZLaurentPoly& a, const ZLaurentPoly& b);
  ZLaurentPoly scaled(const TruncatedSeries& c) const;
  /// d/dz, term by term.
  ZLaurentPoly derivative() const;

  /// Reduction modulo t^{-1}: the t^0 coefficient of each term. Requires
  /// every coefficient to lie in k[[t^{-1}]].
  std::map<int, Fq> reduction() const;
  /// Value of the reduction at a field element.
  static Fq eval_reduction(const std::map<int, Fq>& reduced, const Fq& z);

  /// P(z0). With `cap`, every intermediate is truncated to O(t^cap).
  /// Throws DivisionByZero if negative exponents occur and z0 is not a unit.
  TruncatedSeries eval(const TruncatedSeries& z0, std::optional<int> cap = std::nullopt) const;

  std::string to_string() const;

 private:
  std::map<int, TruncatedSeries> terms_;
};

/// Lifts a simple root alpha of the reduction of P (coefficients in
/// k[[t^{-1}]]) to z(t^{-1}) with z = alpha mod t^{-1} and P(z) = 0 mod
/// t^{-(K+1)}. The result carries K + 1 known coefficients.
/// Throws PreconditionViolation if alpha is not a root of the reduction,
/// SingularRoot if it is a multiple root.
TruncatedSeries newton_lift(const ZLaurentPoly& P, const Fq& alpha, int K);

/// t^{-1}-adic valuation of P(z) as far as it is known: the exponent of
/// the first nonzero coefficient, negated, or -order when every known
/// coefficient vanishes.
int residual_valuation(const ZLaurentPoly& P, const TruncatedSeries& z);

}  // namespace monodromy
