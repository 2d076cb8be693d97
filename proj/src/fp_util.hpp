#pragma once

// Internal helpers: dense linear algebra and polynomial arithmetic over F_p.

#include <cstdint>
#include <optional>
#include <vector>

#include "monodromy/field.hpp"

namespace monodromy::detail {

using Vec = std::vector<Residue>;
/// Row-major: m[row][col].
using Mat = std::vector<Vec>;

inline Residue add_mod(Residue a, Residue b, Residue p) {
  Residue s = a + b;
  return s >= p ? s - p : s;
}
inline Residue sub_mod(Residue a, Residue b, Residue p) { return a >= b ? a - b : a + p - b; }
inline Residue mul_mod(Residue a, Residue b, Residue p) {
  return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p);
}
Residue inv_mod(Residue a, Residue p);
Residue reduce_int(long long v, Residue p);

Mat identity(std::size_t n);
Mat mat_mul(const Mat& a, const Mat& b, Residue p);
Vec mat_vec(const Mat& a, const Vec& v, Residue p);

/// Basis of {v : a v = 0}.
std::vector<Vec> nullspace(Mat a, Residue p);

/// Solves sum_i x_i columns[i] = v for linearly independent columns.
class ColumnSolver {
 public:
  ColumnSolver(const std::vector<Vec>& columns, Residue p);
  /// Coefficients x, or nullopt if v is outside the span.
  std::optional<Vec> solve(const Vec& v) const;
  /// Faster variant that assumes v lies in the span.
  Vec solve_in_span(const Vec& v) const;

 private:
  Residue p_;
  std::vector<Vec> columns_;
  std::vector<std::size_t> pivot_rows_;
  Mat inverse_;  // k x k, inverse of the pivot-row submatrix
};

/// Incrementally grows a basis; reports the first linear dependency.
class IncrementalBasis {
 public:
  IncrementalBasis(std::size_t dim, Residue p);
  /// If v depends on the vectors added so far, returns c with
  /// v = sum c_i added_i; otherwise records v and returns nullopt.
  std::optional<Vec> add(const Vec& v);
  std::size_t size() const { return count_; }

 private:
  Residue p_;
  std::size_t count_ = 0;
  // Echelon rows with their expression in terms of the added vectors.
  std::vector<Vec> rows_;
  std::vector<Vec> combos_;
  std::vector<std::size_t> pivots_;
};

// Polynomials over F_p, constant term first, no trailing zeros (zero = {}).
void trim(FpPoly& a);
FpPoly poly_sub(FpPoly a, const FpPoly& b, Residue p);
FpPoly poly_mul(const FpPoly& a, const FpPoly& b, Residue p);
/// Remainder of a modulo the monic polynomial m.
FpPoly poly_mod(FpPoly a, const FpPoly& m, Residue p);
FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, Residue p);
FpPoly poly_powmod(FpPoly base, std::uint64_t e, const FpPoly& m, Residue p);
FpPoly poly_gcd(FpPoly a, FpPoly b, Residue p);
/// Inverse of a modulo m (gcd must be 1).
FpPoly poly_invmod(const FpPoly& a, const FpPoly& m, Residue p);

std::vector<unsigned> prime_factors(unsigned n);
std::vector<unsigned> divisors(unsigned n);

}  // namespace monodromy::detail
