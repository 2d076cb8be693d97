#pragma once

// Exact arithmetic in F_p and its finite extensions F_{p^r}.
//
// A FieldTower owns one level per extension degree r, each given by the
// lexicographically smallest monic irreducible polynomial of degree r over
// F_p (unless overridden). All levels live inside a single ambient level
// (the "top"), whose degree is the lcm of every degree requested so far.
// Every level carries the image of its generator in the top; embeddings
// between any two levels are derived from those images, so they commute by
// construction. When the top grows, the old top is embedded into the new
// one via the smallest root of its modulus.
//
// Elements (Fq) hold a pointer to their level and must not outlive the
// tower that created them.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "monodromy/error.hpp"

namespace monodromy {

using Residue = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;

/// Polynomial over F_p, coefficients constant term first.
using FpPoly = std::vector<Residue>;

/// Largest characteristic accepted. Keeps residue products inside 32 bits.
inline constexpr Residue kMaxCharacteristic = 65521;

bool is_prime(std::uint64_t n);

/// Rabin irreducibility test for a monic polynomial over F_p.
bool is_irreducible(const FpPoly& f, Residue p);

/// Lexicographically smallest monic irreducible polynomial of the given
/// degree. Candidates are enumerated as x^r + c_{r-1}x^{r-1} + ... + c_0 with
/// c_{r-1} the most significant digit, i.e. x^2+c before x^2+x+c.
FpPoly find_irreducible(Residue p, unsigned degree);

/// Smallest o >= 1 with p^o = 1 mod n.
unsigned multiplicative_order(Residue p, unsigned n);

class FieldTower;
class Fq;

namespace detail {

struct Embedding;

struct Level {
  FieldTower* tower = nullptr;
  Residue p = 0;
  unsigned degree = 0;
  FpPoly modulus;  // monic, size degree + 1
  // x^degree == sum over (i, r_i) of r_i x^i, nonzero terms only.
  std::vector<std::pair<unsigned, Residue>> reduction;
};

/// Unreduced product accumulator for dot products of field elements.
/// Holds 2r-1 64-bit slots; sums of many products are reduced once.
class ProductAccumulator {
 public:
  explicit ProductAccumulator(const Level& level);
  void add_product(const Fq& a, const Fq& b);
  void add(const Fq& a);
  Fq reduce() const;
  void clear();

 private:
  const Level* level_;
  std::vector<std::uint64_t> acc_;
  unsigned pending_ = 0;
  void fold();
};

}  // namespace detail

/// Element of F_{p^r}: coordinates in the power basis of the level modulus.
class Fq {
 public:
  Fq() = default;
  Fq(const detail::Level& level, std::vector<Residue> coeffs);

  bool valid() const { return level_ != nullptr; }
  const detail::Level& level() const { return *level_; }
  unsigned degree() const { return level_->degree; }
  Residue characteristic() const { return level_->p; }
  FieldTower& tower() const { return *level_->tower; }
  std::span<const Residue> coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;

  Fq operator-() const;
  Fq& operator+=(const Fq& o);
  Fq& operator-=(const Fq& o);
  Fq& operator*=(const Fq& o);
  Fq& operator/=(const Fq& o);
  friend Fq operator+(Fq a, const Fq& b) { return a += b; }
  friend Fq operator-(Fq a, const Fq& b) { return a -= b; }
  friend Fq operator*(Fq a, const Fq& b) { return a *= b; }
  friend Fq operator/(Fq a, const Fq& b) { return a /= b; }

  /// Multiplication by an integer (reduced mod p).
  Fq scaled(long long k) const;

  /// Throws DivisionByZero on zero.
  Fq inv() const;
  Fq pow(long long e) const;
  Fq pow(const BigInt& e) const;
  /// x^{p^k}.
  Fq frobenius(unsigned k = 1) const;

  /// Equality after embedding both sides into a common level.
  friend bool operator==(const Fq& a, const Fq& b);

  /// `[c_0,...,c_{m-1}]@m` at the minimal level m containing the element.
  std::string to_string() const;

 private:
  const detail::Level* level_ = nullptr;
  std::vector<Residue> c_;

  friend class FieldTower;
  friend class detail::ProductAccumulator;
};

/// Canonical element order: smaller minimal level first, then coordinates
/// at that level compared from the highest power down. Returns -1, 0, 1.
int canonical_compare(const Fq& a, const Fq& b);

struct CanonicalLess {
  bool operator()(const Fq& a, const Fq& b) const { return canonical_compare(a, b) < 0; }
};

class FieldTower {
 public:
  explicit FieldTower(Residue p);
  FieldTower(const FieldTower&) = delete;
  FieldTower& operator=(const FieldTower&) = delete;
  ~FieldTower();

  Residue characteristic() const { return p_; }

  /// Use `modulus` instead of the lex-smallest irreducible for this degree.
  /// Must be called before the level exists. Throws on reducible input.
  void set_modulus(unsigned degree, FpPoly modulus);

  /// The level of the given degree, created (and the top grown) on demand.
  const detail::Level& level(unsigned degree);

  unsigned top_degree() const;
  /// Degrees of every level present, ascending.
  std::vector<unsigned> degrees() const;
  FpPoly modulus(unsigned degree);

  Fq zero(unsigned degree = 1);
  Fq one(unsigned degree = 1);
  Fq from_int(long long v, unsigned degree = 1);
  /// The class of x at the given level.
  Fq generator(unsigned degree);
  Fq from_coeffs(std::vector<Residue> coeffs, unsigned degree);

  /// Image of `x` in the level of the given degree (a multiple of x's degree).
  Fq embed(const Fq& x, unsigned degree);
  /// Smallest degree m such that x lies in F_{p^m}.
  unsigned minimal_degree(const Fq& x);
  /// `x` re-expressed at its minimal level.
  Fq normalize(const Fq& x);

  /// Coordinates, at level `to`, of the generator of level `from`.
  std::vector<Residue> embedding_image(unsigned from, unsigned to);

  /// Parses `[c_0,...,c_{r-1}]@r` or a bare integer (prime field).
  Fq parse(std::string_view literal);

 private:
  Residue p_;
  unsigned top_ = 1;
  mutable std::recursive_mutex mutex_;
  std::map<unsigned, std::unique_ptr<detail::Level>> levels_;
  std::map<unsigned, FpPoly> requested_moduli_;
  // Generator image of each level, as coordinates at the top level.
  std::map<unsigned, std::vector<Residue>> top_images_;
  std::map<std::pair<unsigned, unsigned>, std::unique_ptr<detail::Embedding>> embeddings_;
  std::map<unsigned, std::vector<std::vector<Residue>>> frobenius_;

  detail::Level& create_level(unsigned degree);
  void grow_top(unsigned degree);
  const detail::Embedding& embedding(unsigned from, unsigned to);
  const std::vector<std::vector<Residue>>& frobenius_matrix(unsigned degree);
  // Root of the modulus of level `from` inside level `to`.
  std::vector<Residue> find_root(unsigned from, unsigned to);

  friend class Fq;
};

/// All n solutions of z^n = c, in the minimal level s holding them (s is the
/// least multiple of lcm(ord_n(p), minimal degree of c) for which c is an
/// n-th power). Ordered as alpha_0 * zeta^i, i = 0..n-1, where alpha_0 is
/// the canonically smallest root and zeta the canonically smallest
/// primitive n-th root of unity.
/// Throws HypothesisViolation if p | n, DivisionByZero if c == 0.
std::vector<Fq> nth_roots(const Fq& c, unsigned n);

/// Canonically smallest primitive n-th root of unity, in the level
/// F_{p^{ord_n(p)}}.
Fq primitive_root_of_unity(FieldTower& tower, unsigned n);

/// The unique d with d^p = c.
Fq pth_root(const Fq& c);

}  // namespace monodromy
