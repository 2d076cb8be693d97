#include "monodromy/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace monodromy {

namespace {

constexpr int kExact = TruncatedSeries::kExact;

int clamp_order(long long order) { return order < kExact / 2 ? kExact : static_cast<int>(order); }

Fq zero_at(const detail::Level& level) { return Fq(level, std::vector<Residue>(level.degree, 0)); }

std::pair<TruncatedSeries, TruncatedSeries> unify(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.degree() == b.degree()) return {a, b};
  const unsigned d = std::lcm(a.degree(), b.degree());
  return {a.at_degree(d), b.at_degree(d)};
}

// Exponent bound of the unknown-or-leading part: valuation if nonzero,
// otherwise the order (for an inexact zero).
int top_bound(const TruncatedSeries& x) { return x.is_zero() ? x.order() : x.valuation(); }

// Lowest exponent carrying information.
int lowest(const TruncatedSeries& x, int len) {
  return x.is_exact() ? x.top() - len + 1 : x.order() + 1;
}

}  // namespace

TruncatedSeries::TruncatedSeries(const detail::Level& level) : level_(&level) {}

TruncatedSeries::TruncatedSeries(const detail::Level& level, int top, std::vector<Fq> coeffs, int order)
    : level_(&level), top_(top), c_(std::move(coeffs)), order_(order) {
  for (auto& c : c_) {
    if (c.degree() != level.degree) c = level.tower->embed(c, level.degree);
  }
  normalize();
}

void TruncatedSeries::normalize() {
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    top_ -= static_cast<int>(lead);
  }
  if (is_exact()) {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  } else if (top_ - order_ < static_cast<int>(c_.size())) {
    c_.resize(std::max(0, top_ - order_), zero_at(*level_));
  }
  if (c_.empty()) top_ = is_exact() ? 0 : order_;
}

TruncatedSeries TruncatedSeries::constant(const Fq& c) { return monomial(c, 0); }

TruncatedSeries TruncatedSeries::monomial(const Fq& c, int k) { return TruncatedSeries(c.level(), k, {c}); }

TruncatedSeries TruncatedSeries::from_terms(const detail::Level& level, const std::map<int, Fq>& terms) {
  if (terms.empty()) return TruncatedSeries(level);
  const int hi = terms.rbegin()->first, lo = terms.begin()->first;
  std::vector<Fq> c(static_cast<std::size_t>(hi - lo + 1), zero_at(level));
  for (const auto& [k, v] : terms) c[static_cast<std::size_t>(hi - k)] = level.tower->embed(v, level.degree);
  return TruncatedSeries(level, hi, std::move(c));
}

int TruncatedSeries::valuation() const {
  if (is_zero()) throw PrecisionExhausted("valuation of a series with no known nonzero coefficient");
  return top_;
}

Fq TruncatedSeries::leading_coefficient() const {
  if (is_zero()) throw PrecisionExhausted("leading coefficient of a series with no known nonzero coefficient");
  return c_.front();
}

Fq TruncatedSeries::coefficient(int k) const {
  if (!is_exact() && k <= order_)
    throw PrecisionExhausted("coefficient of t^" + std::to_string(k) + " is beyond the known precision O(t^" +
                             std::to_string(order_) + ")");
  if (c_.empty() || k > top_ || top_ - k >= static_cast<int>(c_.size())) return zero_at(*level_);
  return c_[static_cast<std::size_t>(top_ - k)];
}

int TruncatedSeries::relative_precision() const {
  if (is_exact()) return INT_MAX / 4;
  return is_zero() ? 0 : top_ - order_;
}

TruncatedSeries TruncatedSeries::at_degree(unsigned degree) const {
  if (degree == level_->degree) return *this;
  FieldTower& t = tower();
  const detail::Level& target = t.level(degree);
  std::vector<Fq> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(t.embed(x, degree));
  TruncatedSeries out(target);
  out.top_ = top_;
  out.c_ = std::move(c);
  out.order_ = order_;
  return out;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

TruncatedSeries operator+(const TruncatedSeries& x, const TruncatedSeries& y) {
  if (x.degree() != y.degree()) {
    auto [a, b] = unify(x, y);
    return a + b;
  }
  const int order = std::max(x.order_, y.order_);
  if (x.c_.empty() && y.c_.empty()) {
    TruncatedSeries out(*x.level_);
    out.order_ = order;
    out.normalize();
    return out;
  }
  int hi = INT_MIN, lo = INT_MAX;
  for (const auto* s : {&x, &y}) {
    if (s->c_.empty()) continue;
    hi = std::max(hi, s->top_);
    lo = std::min(lo, lowest(*s, static_cast<int>(s->c_.size())));
  }
  if (order != kExact) lo = order + 1;
  if (hi < lo) {
    TruncatedSeries out(*x.level_);
    out.order_ = order;
    out.normalize();
    return out;
  }
  std::vector<Fq> c(static_cast<std::size_t>(hi - lo + 1), zero_at(*x.level_));
  for (const auto* s : {&x, &y}) {
    for (std::size_t i = 0; i < s->c_.size(); ++i) {
      const int k = s->top_ - static_cast<int>(i);
      if (k < lo) break;
      c[static_cast<std::size_t>(hi - k)] += s->c_[i];
    }
  }
  return TruncatedSeries(*x.level_, hi, std::move(c), order);
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

TruncatedSeries operator*(const TruncatedSeries& x, const TruncatedSeries& y) {
  if (x.degree() != y.degree()) {
    auto [a, b] = unify(x, y);
    return a * b;
  }
  const detail::Level& level = *x.level_;
  if ((x.is_exact() && x.c_.empty()) || (y.is_exact() && y.c_.empty())) return TruncatedSeries(level);
  const long long tx = top_bound(x), ty = top_bound(y);
  const long long ox = x.is_exact() ? LLONG_MIN / 4 : x.order_;
  const long long oy = y.is_exact() ? LLONG_MIN / 4 : y.order_;
  const int order = clamp_order(std::max(tx + oy, ox + ty));
  if (x.c_.empty() || y.c_.empty()) {
    TruncatedSeries out(level);
    out.order_ = order;
    out.normalize();
    return out;
  }
  // Exact monomial factor: scale and shift.
  if (x.is_exact() && x.c_.size() == 1) return y.scaled(x.c_[0]).shifted(x.top_).truncated(order);
  if (y.is_exact() && y.c_.size() == 1) return x.scaled(y.c_[0]).shifted(y.top_).truncated(order);

  const int hi = x.top_ + y.top_;
  const std::size_t nx = x.c_.size(), ny = y.c_.size();
  std::size_t n = nx + ny - 1;
  if (order != kExact) n = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(0, hi - order)));
  std::vector<Fq> c;
  c.reserve(n);
  detail::ProductAccumulator acc(level);
  for (std::size_t k = 0; k < n; ++k) {
    acc.clear();
    const std::size_t i_lo = k >= ny ? k - ny + 1 : 0;
    const std::size_t i_hi = std::min(k, nx - 1);
    for (std::size_t i = i_lo; i <= i_hi; ++i) acc.add_product(x.c_[i], y.c_[k - i]);
    c.push_back(acc.reduce());
  }
  return TruncatedSeries(level, hi, std::move(c), order);
}

TruncatedSeries TruncatedSeries::scaled(const Fq& s) const {
  if (s.degree() != degree()) {
    const unsigned d = std::lcm(s.degree(), degree());
    return at_degree(d).scaled(tower().embed(s, d));
  }
  if (s.is_zero()) return TruncatedSeries(*level_);
  TruncatedSeries out = *this;
  for (auto& x : out.c_) x *= s;
  return out;
}

TruncatedSeries TruncatedSeries::shifted(int s) const {
  TruncatedSeries out = *this;
  out.top_ += s;
  if (!is_exact()) out.order_ += s;
  return out;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  if (order == kExact || (!is_exact() && order <= order_)) return *this;
  TruncatedSeries out = *this;
  out.order_ = order;
  out.normalize();
  return out;
}

TruncatedSeries TruncatedSeries::inverse(int rel_prec) const {
  if (c_.empty()) {
    if (is_exact()) throw DivisionByZero("inverse of the zero series");
    throw PrecisionExhausted("inverse of a series with no known nonzero coefficient");
  }
  if (is_exact() && c_.size() == 1) return monomial(c_[0].inv(), -top_);
  const int R = is_exact() ? rel_prec : relative_precision();
  if (R < 1) throw PrecisionExhausted("inverse needs at least one known coefficient");
  const Fq a0inv = c_[0].inv();
  std::vector<Fq> y;
  y.reserve(static_cast<std::size_t>(R));
  y.push_back(a0inv);
  detail::ProductAccumulator acc(*level_);
  for (int k = 1; k < R; ++k) {
    acc.clear();
    const int jmax = std::min<int>(k, static_cast<int>(c_.size()) - 1);
    for (int j = 1; j <= jmax; ++j) acc.add_product(c_[static_cast<std::size_t>(j)], y[static_cast<std::size_t>(k - j)]);
    y.push_back(-(acc.reduce() * a0inv));
  }
  return TruncatedSeries(*level_, -top_, std::move(y), -top_ - R);
}

TruncatedSeries TruncatedSeries::pow(long long e, int rel_prec) const {
  if (e < 0) return inverse(rel_prec).pow(-e, rel_prec);
  TruncatedSeries result = constant(Fq(*level_, [&] {
    std::vector<Residue> one(level_->degree, 0);
    one[0] = 1;
    return one;
  }()));
  TruncatedSeries base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool TruncatedSeries::agrees_with(const TruncatedSeries& other) const {
  const int order = std::max(order_, other.order_);
  int hi = INT_MIN, lo = INT_MAX;
  for (const auto* s : {this, &other}) {
    if (s->c_.empty()) continue;
    hi = std::max(hi, s->top_);
    lo = std::min(lo, lowest(*s, static_cast<int>(s->c_.size())));
  }
  if (hi == INT_MIN) return true;
  if (order != kExact) lo = std::max(lo, order + 1);
  for (int k = hi; k >= lo; --k)
    if (!(coefficient(k) == other.coefficient(k))) return false;
  return true;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.order_ != b.order_ || a.c_.size() != b.c_.size()) return false;
  if (!a.c_.empty() && a.top_ != b.top_) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (!(a.c_[i] == b.c_[i])) return false;
  return true;
}

std::string TruncatedSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    os << (first ? "" : " + ") << c_[i].to_string() << "*t^" << top_ - static_cast<int>(i);
    first = false;
  }
  if (!is_exact()) os << (first ? "" : " + ") << "O(t^" << order_ << ")";
  else if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------- ZLaurentPoly

ZLaurentPoly::ZLaurentPoly(std::map<int, TruncatedSeries> terms) {
  for (auto& [k, c] : terms) add_term(k, c);
}

int ZLaurentPoly::min_exponent() const {
  if (terms_.empty()) throw PreconditionViolation("empty Laurent polynomial");
  return terms_.begin()->first;
}

int ZLaurentPoly::max_exponent() const {
  if (terms_.empty()) throw PreconditionViolation("empty Laurent polynomial");
  return terms_.rbegin()->first;
}

void ZLaurentPoly::add_term(int k, const TruncatedSeries& c) {
  auto it = terms_.find(k);
  TruncatedSeries sum = it == terms_.end() ? c : it->second + c;
  if (sum.is_exact() && sum.is_zero()) {
    if (it != terms_.end()) terms_.erase(it);
    return;
  }
  terms_.insert_or_assign(k, std::move(sum));
}

ZLaurentPoly operator+(const ZLaurentPoly& a, const ZLaurentPoly& b) {
  ZLaurentPoly out = a;
  for (const auto& [k, c] : b.terms_) out.add_term(k, c);
  return out;
}

ZLaurentPoly ZLaurentPoly::scaled(const TruncatedSeries& c) const {
  ZLaurentPoly out;
  for (const auto& [k, v] : terms_) out.add_term(k, v * c);
  return out;
}

ZLaurentPoly ZLaurentPoly::derivative() const {
  ZLaurentPoly out;
  for (const auto& [k, v] : terms_) {
    if (k == 0) continue;
    Fq factor = v.tower().from_int(k, v.degree());
    out.add_term(k - 1, v.scaled(factor));
  }
  return out;
}

std::map<int, Fq> ZLaurentPoly::reduction() const {
  std::map<int, Fq> out;
  for (const auto& [k, v] : terms_) {
    if (!v.is_zero() && v.valuation() > 0)
      throw PreconditionViolation("coefficient of z^" + std::to_string(k) + " is not in k[[1/t]]");
    Fq c = v.coefficient(0);
    if (!c.is_zero()) out.emplace(k, c);
  }
  return out;
}

Fq ZLaurentPoly::eval_reduction(const std::map<int, Fq>& reduced, const Fq& z) {
  FieldTower& t = z.tower();
  unsigned d = z.degree();
  for (const auto& [k, c] : reduced) d = std::lcm(d, c.degree());
  const Fq zz = t.embed(z, d);
  Fq sum = t.zero(d);
  for (const auto& [k, c] : reduced) sum += t.embed(c, d) * zz.pow(static_cast<long long>(k));
  return sum;
}

namespace {

// Horner evaluation of sum c_k w^k over exponents k >= 0 (descending map order).
TruncatedSeries horner(const std::vector<std::pair<int, const TruncatedSeries*>>& desc, const TruncatedSeries& w,
                       std::optional<int> cap) {
  std::map<int, TruncatedSeries> powers;
  auto power = [&](int e) -> const TruncatedSeries& {
    auto it = powers.find(e);
    if (it != powers.end()) return it->second;
    TruncatedSeries p = w.pow(e);
    if (cap) p = p.truncated(*cap);
    return powers.emplace(e, std::move(p)).first->second;
  };
  auto trunc = [&](TruncatedSeries s) { return cap ? s.truncated(*cap) : s; };
  TruncatedSeries acc = trunc(*desc.front().second);
  int prev = desc.front().first;
  for (std::size_t i = 1; i < desc.size(); ++i) {
    const int k = desc[i].first;
    acc = trunc(acc * power(prev - k)) + trunc(*desc[i].second);
    prev = k;
  }
  if (prev > 0) acc = trunc(acc * power(prev));
  return acc;
}

}  // namespace

TruncatedSeries ZLaurentPoly::eval(const TruncatedSeries& z0, std::optional<int> cap) const {
  const TruncatedSeries z = cap ? z0.truncated(*cap) : z0;
  if (terms_.empty()) return TruncatedSeries(z.level());
  std::vector<std::pair<int, const TruncatedSeries*>> pos, neg;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (it->first >= 0) pos.emplace_back(it->first, &it->second);
  }
  for (const auto& [k, v] : terms_) {
    if (k < 0) neg.emplace_back(-k, &v);
  }
  // neg is ascending in k, i.e. descending in -k.
  TruncatedSeries sum(z.level());
  if (!pos.empty()) sum = horner(pos, z, cap);
  if (!neg.empty()) {
    if (z.is_zero()) throw DivisionByZero("negative powers of a series with no known nonzero coefficient");
    if (z.valuation() < 0) throw DivisionByZero("negative powers of a non-unit series");
    int rel = z.relative_precision();
    if (z.is_exact() && !z.is_monomial()) {
      if (!cap) throw PreconditionViolation("negative powers of a non-monomial exact series need a cap");
      rel = std::max(1, -z.valuation() - *cap);
    }
    const TruncatedSeries w = z.inverse(rel);
    sum = sum + horner(neg, w, cap);
  }
  return cap ? sum.truncated(*cap) : sum;
}

std::string ZLaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    os << (first ? "" : " + ") << "(" << it->second.to_string() << ")*z^" << it->first;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- Newton

TruncatedSeries newton_lift(const ZLaurentPoly& P, const Fq& alpha, int K) {
  if (K < 0) throw PreconditionViolation("negative lifting precision");
  const auto reduced = P.reduction();
  if (!ZLaurentPoly::eval_reduction(reduced, alpha).is_zero())
    throw PreconditionViolation("not a root modulo 1/t: " + alpha.to_string());
  const ZLaurentPoly dP = P.derivative();
  if (ZLaurentPoly::eval_reduction(dP.reduction(), alpha).is_zero())
    throw SingularRoot("derivative vanishes at " + alpha.to_string());

  unsigned d = alpha.degree();
  for (const auto& [k, c] : P.terms()) d = std::lcm(d, c.degree());
  FieldTower& t = alpha.tower();
  const detail::Level& level = t.level(d);

  TruncatedSeries z = TruncatedSeries::constant(t.embed(alpha, d));
  int prec = 1;
  const int target = K + 1;
  while (prec < target) {
    prec = std::min(2 * prec, target);
    const int cap = -prec;
    const TruncatedSeries r = P.eval(z, cap);
    const TruncatedSeries dz = dP.eval(z, cap);
    const TruncatedSeries next = (z - r * dz.inverse()).truncated(cap);
    // Known digits become an exact polynomial for the next round.
    std::map<int, Fq> known;
    for (int k = 0; k > cap; --k) known.emplace(k, next.coefficient(k));
    z = TruncatedSeries::from_terms(level, known);
  }
  std::vector<Fq> digits;
  for (int k = 0; k > -target; --k) digits.push_back(z.coefficient(k));
  return TruncatedSeries(level, 0, std::move(digits), -target);
}

int residual_valuation(const ZLaurentPoly& P, const TruncatedSeries& z) {
  const TruncatedSeries r = P.eval(z);
  if (r.is_zero()) {
    if (r.is_exact()) return INT_MAX / 4;
    return -r.order();
  }
  return -r.valuation();
}

}  // namespace monodromy
