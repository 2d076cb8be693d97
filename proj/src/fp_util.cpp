#include "fp_util.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace monodromy::detail {

Residue inv_mod(Residue a, Residue p) {
  long long t = 0, new_t = 1;
  long long r = p, new_r = a % p;
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw DivisionByZero("residue is not invertible");
  if (t < 0) t += p;
  return static_cast<Residue>(t);
}

Residue reduce_int(long long v, Residue p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<Residue>(r);
}

Mat identity(std::size_t n) {
  Mat m(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b, Residue p) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat out(n, Vec(m, 0));
  std::vector<std::uint64_t> row(m);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(row.begin(), row.end(), 0);
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint64_t aij = a[i][j];
      if (aij == 0) continue;
      for (std::size_t c = 0; c < m; ++c) row[c] += aij * b[j][c];
      if ((j & 0xff) == 0xff)
        for (auto& x : row) x %= p;
    }
    for (std::size_t c = 0; c < m; ++c) out[i][c] = static_cast<Residue>(row[c] % p);
  }
  return out;
}

Vec mat_vec(const Mat& a, const Vec& v, Residue p) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t s = 0;
    const Vec& row = a[i];
    for (std::size_t j = 0; j < v.size(); ++j) s += static_cast<std::uint64_t>(row[j]) * v[j];
    out[i] = static_cast<Residue>(s % p);
  }
  return out;
}

std::vector<Vec> nullspace(Mat a, Residue p) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::ptrdiff_t> pivot_of_col(cols, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    const Residue inv = inv_mod(a[r][c], p);
    for (auto& x : a[r]) x = mul_mod(x, inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Residue f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        if (a[r][j]) a[i][j] = sub_mod(a[i][j], mul_mod(f, a[r][j], p), p);
    }
    pivot_of_col[c] = static_cast<std::ptrdiff_t>(r);
    ++r;
  }
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    Vec v(cols, 0);
    v[free] = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      if (pivot_of_col[c] < 0) continue;
      v[c] = sub_mod(0, a[static_cast<std::size_t>(pivot_of_col[c])][free], p);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

ColumnSolver::ColumnSolver(const std::vector<Vec>& columns, Residue p) : p_(p), columns_(columns) {
  const std::size_t k = columns.size();
  const std::size_t n = k == 0 ? 0 : columns[0].size();
  // Row-reduce the transpose to find k independent rows.
  Mat work(n, Vec(k));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) work[i][j] = columns[j][i];
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t sel = r;
    while (sel < n && work[sel][c] == 0) ++sel;
    if (sel == n) throw std::logic_error("ColumnSolver: dependent columns");
    std::swap(work[sel], work[r]);
    std::swap(order[sel], order[r]);
    const Residue inv = inv_mod(work[r][c], p);
    for (std::size_t i = r + 1; i < n; ++i) {
      if (work[i][c] == 0) continue;
      const Residue f = mul_mod(work[i][c], inv, p);
      for (std::size_t j = c; j < k; ++j) work[i][j] = sub_mod(work[i][j], mul_mod(f, work[r][j], p), p);
    }
    ++r;
  }
  pivot_rows_.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  // Invert the k x k submatrix on the pivot rows (Gauss-Jordan).
  Mat sub(k, Vec(2 * k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) sub[i][j] = columns[j][pivot_rows_[i]];
    sub[i][k + i] = 1;
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t sel = c;
    while (sel < k && sub[sel][c] == 0) ++sel;
    std::swap(sub[sel], sub[c]);
    const Residue inv = inv_mod(sub[c][c], p);
    for (auto& x : sub[c]) x = mul_mod(x, inv, p);
    for (std::size_t i = 0; i < k; ++i) {
      if (i == c || sub[i][c] == 0) continue;
      const Residue f = sub[i][c];
      for (std::size_t j = 0; j < 2 * k; ++j) sub[i][j] = sub_mod(sub[i][j], mul_mod(f, sub[c][j], p), p);
    }
  }
  inverse_.assign(k, Vec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) inverse_[i][j] = sub[i][k + j];
}

Vec ColumnSolver::solve_in_span(const Vec& v) const {
  const std::size_t k = pivot_rows_.size();
  Vec picked(k);
  for (std::size_t i = 0; i < k; ++i) picked[i] = v[pivot_rows_[i]];
  return mat_vec(inverse_, picked, p_);
}

std::optional<Vec> ColumnSolver::solve(const Vec& v) const {
  Vec x = solve_in_span(v);
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += static_cast<std::uint64_t>(x[j]) * columns_[j][i];
    if (s % p_ != v[i]) return std::nullopt;
  }
  return x;
}

IncrementalBasis::IncrementalBasis(std::size_t, Residue p) : p_(p) {}

std::optional<Vec> IncrementalBasis::add(const Vec& v) {
  Vec row = v;
  Vec combo(count_ + 1, 0);
  combo[count_] = 1;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Residue f = row[pivots_[r]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (rows_[r][j]) row[j] = sub_mod(row[j], mul_mod(f, rows_[r][j], p_), p_);
    for (std::size_t j = 0; j < combos_[r].size(); ++j)
      if (combos_[r][j]) combo[j] = sub_mod(combo[j], mul_mod(f, combos_[r][j], p_), p_);
  }
  std::size_t piv = 0;
  while (piv < row.size() && row[piv] == 0) ++piv;
  if (piv == row.size()) {
    // 0 = combo . (added..., v)  =>  v = -sum combo_i added_i (combo[count_] == 1)
    Vec out(count_);
    for (std::size_t j = 0; j < count_; ++j) out[j] = sub_mod(0, combo[j], p_);
    return out;
  }
  const Residue inv = inv_mod(row[piv], p_);
  for (auto& x : row) x = mul_mod(x, inv, p_);
  for (auto& x : combo) x = mul_mod(x, inv, p_);
  rows_.push_back(std::move(row));
  combos_.push_back(std::move(combo));
  pivots_.push_back(piv);
  ++count_;
  for (auto& c : combos_) c.resize(count_, 0);
  return std::nullopt;
}

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly poly_sub(FpPoly a, const FpPoly& b, Residue p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = sub_mod(a[i], b[i], p);
  trim(a);
  return a;
}

FpPoly poly_mul(const FpPoly& a, const FpPoly& b, Residue p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
    if ((i & 0xfff) == 0xfff)
      for (auto& x : acc) x %= p;
  }
  FpPoly out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<Residue>(acc[i] % p);
  trim(out);
  return out;
}

FpPoly poly_mod(FpPoly a, const FpPoly& m, Residue p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  if (dm == 0) return {};
  while (a.size() > dm) {
    const Residue lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    if (lead)
      for (std::size_t i = 0; i < dm; ++i)
        a[shift + i] = sub_mod(a[shift + i], mul_mod(lead, m[i], p), p);
    a.pop_back();
    trim(a);
  }
  return a;
}

FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, Residue p) {
  return poly_mod(poly_mul(a, b, p), m, p);
}

FpPoly poly_powmod(FpPoly base, std::uint64_t e, const FpPoly& m, Residue p) {
  FpPoly result{1};
  result = poly_mod(result, m, p);
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    e >>= 1;
    if (e) base = poly_mulmod(base, base, m, p);
  }
  return result;
}

namespace {

void make_monic(FpPoly& a, Residue p) {
  if (a.empty()) return;
  const Residue inv = inv_mod(a.back(), p);
  for (auto& x : a) x = mul_mod(x, inv, p);
}

std::pair<FpPoly, FpPoly> poly_divmod(FpPoly a, const FpPoly& b, Residue p) {
  trim(a);
  FpPoly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, 0);
  const Residue inv = inv_mod(b.back(), p);
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const Residue f = mul_mod(a.back(), inv, p);
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = sub_mod(a[shift + i], mul_mod(f, b[i], p), p);
    trim(a);
  }
  return {q, a};
}

}  // namespace

FpPoly poly_gcd(FpPoly a, FpPoly b, Residue p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = poly_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a, p);
  return a;
}

FpPoly poly_invmod(const FpPoly& a, const FpPoly& m, Residue p) {
  FpPoly r0 = m, r1 = poly_mod(a, m, p);
  FpPoly s0{}, s1{1};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1, p);
    FpPoly s = poly_sub(s0, poly_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw DivisionByZero("element is not invertible");
  const Residue inv = inv_mod(r0[0], p);
  for (auto& x : s0) x = mul_mod(x, inv, p);
  return poly_mod(s0, m, p);
}

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace monodromy::detail
