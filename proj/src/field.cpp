#include "monodromy/field.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fp_util.hpp"

namespace monodromy {

using detail::Level;
using detail::Mat;
using detail::Vec;

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

bool is_irreducible(const FpPoly& f, Residue p) {
  if (f.size() < 2 || f.back() != 1) return false;
  const unsigned r = static_cast<unsigned>(f.size() - 1);
  if (r == 1) return true;
  if (f[0] == 0) return false;
  // powers[k] = x^{p^k} mod f
  std::vector<FpPoly> powers{FpPoly{0, 1}};
  for (unsigned k = 1; k <= r; ++k) powers.push_back(detail::poly_powmod(powers.back(), p, f, p));
  const FpPoly x{0, 1};
  if (detail::poly_sub(powers[r], x, p) != FpPoly{}) return false;
  for (unsigned q : detail::prime_factors(r)) {
    const FpPoly g = detail::poly_gcd(detail::poly_sub(powers[r / q], x, p), f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

FpPoly find_irreducible(Residue p, unsigned degree) {
  if (degree == 0) throw PreconditionViolation("degree must be at least 1");
  FpPoly f(degree + 1, 0);
  f[degree] = 1;
  while (true) {
    if (is_irreducible(f, p)) return f;
    // Increment the base-p counter c_0 + c_1 p + ... (c_0 least significant).
    unsigned i = 0;
    while (i < degree && ++f[i] == p) f[i++] = 0;
    if (i == degree) throw std::logic_error("no irreducible polynomial found");
  }
}

unsigned multiplicative_order(Residue p, unsigned n) {
  if (n == 0 || std::gcd(p, n) != 1) throw PreconditionViolation("order undefined");
  if (n == 1) return 1;
  unsigned o = 1;
  std::uint64_t x = p % n;
  while (x != 1) {
    x = x * p % n;
    ++o;
  }
  return o;
}

namespace detail {

struct Embedding {
  unsigned from = 0, to = 0;
  std::vector<Vec> powers;  // theta^i at level `to`, i < from
  std::unique_ptr<ColumnSolver> solver;
};

ProductAccumulator::ProductAccumulator(const Level& level)
    : level_(&level), acc_(2 * level.degree - 1, 0) {}

void ProductAccumulator::fold() {
  const Residue p = level_->p;
  for (auto& x : acc_) x %= p;
  pending_ = 0;
}

void ProductAccumulator::add_product(const Fq& a, const Fq& b) {
  const unsigned r = level_->degree;
  if (pending_ >= (1u << 20) / r) fold();
  const Residue* ac = a.c_.data();
  const Residue* bc = b.c_.data();
  for (unsigned i = 0; i < r; ++i) {
    const std::uint64_t ai = ac[i];
    if (!ai) continue;
    std::uint64_t* out = acc_.data() + i;
    for (unsigned j = 0; j < r; ++j) out[j] += ai * bc[j];
  }
  ++pending_;
}

void ProductAccumulator::add(const Fq& a) {
  for (unsigned i = 0; i < level_->degree; ++i) acc_[i] += a.c_[i];
  ++pending_;
}

void ProductAccumulator::clear() {
  std::fill(acc_.begin(), acc_.end(), 0);
  pending_ = 0;
}

Fq ProductAccumulator::reduce() const {
  const Residue p = level_->p;
  const unsigned r = level_->degree;
  std::vector<std::uint64_t> work(acc_);
  for (auto& x : work) x %= p;
  for (unsigned k = 2 * r - 2; k >= r; --k) {
    const std::uint64_t c = work[k] % p;
    if (c)
      for (const auto& [i, ri] : level_->reduction) work[k - r + i] += c * ri;
  }
  std::vector<Residue> out(r);
  for (unsigned i = 0; i < r; ++i) out[i] = static_cast<Residue>(work[i] % p);
  return Fq(*level_, std::move(out));
}

}  // namespace detail

// ---------------------------------------------------------------- Fq

Fq::Fq(const Level& level, std::vector<Residue> coeffs) : level_(&level), c_(std::move(coeffs)) {
  if (c_.size() != level.degree) throw std::logic_error("coefficient count does not match level degree");
}

bool Fq::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](Residue x) { return x == 0; });
}

bool Fq::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](Residue x) { return x == 0; });
}

namespace {

// Brings two elements to a common level (lcm of their degrees).
std::pair<Fq, Fq> unify(const Fq& a, const Fq& b) {
  if (a.degree() == b.degree()) return {a, b};
  FieldTower& t = a.tower();
  if (&t != &b.tower()) throw std::logic_error("elements from different towers");
  const unsigned d = std::lcm(a.degree(), b.degree());
  return {t.embed(a, d), t.embed(b, d)};
}

}  // namespace

Fq Fq::operator-() const {
  Fq out = *this;
  const Residue p = level_->p;
  for (auto& x : out.c_) x = x ? p - x : 0;
  return out;
}

Fq& Fq::operator+=(const Fq& o) {
  if (o.level_ != level_) {
    auto [a, b] = unify(*this, o);
    return *this = a + b;
  }
  const Residue p = level_->p;
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = detail::add_mod(c_[i], o.c_[i], p);
  return *this;
}

Fq& Fq::operator-=(const Fq& o) {
  if (o.level_ != level_) {
    auto [a, b] = unify(*this, o);
    return *this = a - b;
  }
  const Residue p = level_->p;
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = detail::sub_mod(c_[i], o.c_[i], p);
  return *this;
}

Fq& Fq::operator*=(const Fq& o) {
  if (o.level_ != level_) {
    auto [a, b] = unify(*this, o);
    return *this = a * b;
  }
  if (level_->degree == 1) {
    c_[0] = detail::mul_mod(c_[0], o.c_[0], level_->p);
    return *this;
  }
  detail::ProductAccumulator acc(*level_);
  acc.add_product(*this, o);
  return *this = acc.reduce();
}

Fq& Fq::operator/=(const Fq& o) { return *this *= o.inv(); }

Fq Fq::scaled(long long k) const {
  const Residue p = level_->p;
  const Residue kk = detail::reduce_int(k, p);
  Fq out = *this;
  for (auto& x : out.c_) x = detail::mul_mod(x, kk, p);
  return out;
}

Fq Fq::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero field element");
  const Residue p = level_->p;
  if (level_->degree == 1) return Fq(*level_, {detail::inv_mod(c_[0], p)});
  FpPoly a(c_.begin(), c_.end());
  detail::trim(a);
  FpPoly r = detail::poly_invmod(a, level_->modulus, p);
  r.resize(level_->degree, 0);
  return Fq(*level_, std::move(r));
}

Fq Fq::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  Fq result = tower().one(degree());
  Fq base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Fq Fq::pow(const BigInt& e) const {
  if (e < 0) return inv().pow(BigInt(-e));
  Fq result = tower().one(degree());
  if (e == 0) return result;
  const std::size_t bits = boost::multiprecision::msb(e) + 1;
  for (std::size_t i = bits; i-- > 0;) {
    result *= result;
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) result *= *this;
  }
  return result;
}

Fq Fq::frobenius(unsigned k) const {
  if (level_->degree == 1) return *this;
  const Mat& phi = tower().frobenius_matrix(level_->degree);
  Vec v = c_;
  k %= level_->degree;
  for (unsigned i = 0; i < k; ++i) v = detail::mat_vec(phi, v, level_->p);
  return Fq(*level_, std::move(v));
}

bool operator==(const Fq& a, const Fq& b) {
  if (a.level_ == b.level_) return a.c_ == b.c_;
  if (!a.valid() || !b.valid()) return false;
  auto [x, y] = unify(a, b);
  return x.c_ == y.c_;
}

std::string Fq::to_string() const {
  const Fq n = tower().normalize(*this);
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < n.c_.size(); ++i) os << (i ? "," : "") << n.c_[i];
  os << "]@" << n.degree();
  return os.str();
}

int canonical_compare(const Fq& a, const Fq& b) {
  FieldTower& t = a.tower();
  const Fq x = t.normalize(a);
  const Fq y = t.normalize(b);
  if (x.degree() != y.degree()) return x.degree() < y.degree() ? -1 : 1;
  const auto cx = x.coeffs(), cy = y.coeffs();
  for (std::size_t i = cx.size(); i-- > 0;)
    if (cx[i] != cy[i]) return cx[i] < cy[i] ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------- tower

FieldTower::FieldTower(Residue p) : p_(p) {
  if (p == 2 || !is_prime(p) || p > kMaxCharacteristic)
    throw HypothesisViolation("characteristic must be an odd prime below " + std::to_string(kMaxCharacteristic) +
                              ", got " + std::to_string(p));
  create_level(1);
  top_images_[1] = Vec{detail::sub_mod(0, levels_.at(1)->modulus[0], p_)};
}

FieldTower::~FieldTower() = default;

void FieldTower::set_modulus(unsigned degree, FpPoly modulus) {
  std::lock_guard lock(mutex_);
  if (levels_.count(degree)) {
    if (levels_.at(degree)->modulus == modulus) return;
    throw PreconditionViolation("level " + std::to_string(degree) + " already exists with another modulus");
  }
  if (modulus.size() != degree + 1 || !is_irreducible(modulus, p_))
    throw HypothesisViolation("modulus for degree " + std::to_string(degree) + " is not monic irreducible");
  requested_moduli_[degree] = std::move(modulus);
}

Level& FieldTower::create_level(unsigned degree) {
  auto level = std::make_unique<Level>();
  level->tower = this;
  level->p = p_;
  level->degree = degree;
  auto it = requested_moduli_.find(degree);
  level->modulus = it != requested_moduli_.end() ? it->second : find_irreducible(p_, degree);
  for (unsigned i = 0; i < degree; ++i) {
    const Residue m = level->modulus[i];
    if (m) level->reduction.emplace_back(i, p_ - m);
  }
  Level& ref = *level;
  levels_[degree] = std::move(level);
  return ref;
}

const Level& FieldTower::level(unsigned degree) {
  if (degree == 0) throw PreconditionViolation("degree must be at least 1");
  std::lock_guard lock(mutex_);
  if (auto it = levels_.find(degree); it != levels_.end()) return *it->second;
  if (top_ % degree != 0) grow_top(std::lcm(top_, degree));
  if (auto it = levels_.find(degree); it != levels_.end()) return *it->second;
  Level& l = create_level(degree);
  top_images_[degree] = find_root(degree, top_);
  return l;
}

void FieldTower::grow_top(unsigned new_top) {
  const unsigned old_top = top_;
  if (!levels_.count(new_top)) create_level(new_top);
  const Level& big = *levels_.at(new_top);
  // Image of the old top generator inside the new top.
  const Vec theta = find_root(old_top, new_top);
  std::vector<Vec> theta_powers{Vec(new_top, 0)};
  theta_powers[0][0] = 1;
  {
    Fq th(big, theta), acc = one(new_top);
    for (unsigned i = 1; i < old_top; ++i) {
      acc *= th;
      theta_powers.push_back(Vec(acc.coeffs().begin(), acc.coeffs().end()));
    }
  }
  for (auto& [deg, img] : top_images_) {
    Vec out(new_top, 0);
    for (unsigned i = 0; i < old_top; ++i) {
      if (!img[i]) continue;
      for (unsigned j = 0; j < new_top; ++j)
        out[j] = detail::add_mod(out[j], detail::mul_mod(img[i], theta_powers[i][j], p_), p_);
    }
    img = std::move(out);
  }
  Vec gen(new_top, 0);
  if (new_top == 1) gen[0] = detail::sub_mod(0, big.modulus[0], p_);
  else gen[1] = 1;
  top_images_[new_top] = gen;
  top_ = new_top;
}

unsigned FieldTower::top_degree() const {
  std::lock_guard lock(mutex_);
  return top_;
}

std::vector<unsigned> FieldTower::degrees() const {
  std::lock_guard lock(mutex_);
  std::vector<unsigned> out;
  for (const auto& [d, _] : levels_) out.push_back(d);
  return out;
}

FpPoly FieldTower::modulus(unsigned degree) { return level(degree).modulus; }

Fq FieldTower::zero(unsigned degree) { return Fq(level(degree), Vec(degree, 0)); }

Fq FieldTower::one(unsigned degree) {
  Vec v(degree, 0);
  v[0] = 1;
  return Fq(level(degree), std::move(v));
}

Fq FieldTower::from_int(long long v, unsigned degree) {
  Vec c(degree, 0);
  c[0] = detail::reduce_int(v, p_);
  return Fq(level(degree), std::move(c));
}

Fq FieldTower::generator(unsigned degree) {
  const Level& l = level(degree);
  Vec c(degree, 0);
  if (degree == 1) c[0] = detail::sub_mod(0, l.modulus[0], p_);
  else c[1] = 1;
  return Fq(l, std::move(c));
}

Fq FieldTower::from_coeffs(std::vector<Residue> coeffs, unsigned degree) {
  if (coeffs.size() != degree) throw ParseError("expected " + std::to_string(degree) + " coefficients");
  for (auto& x : coeffs)
    if (x >= p_) throw ParseError("coefficient out of range [0, p)");
  return Fq(level(degree), std::move(coeffs));
}

const Mat& FieldTower::frobenius_matrix(unsigned degree) {
  std::lock_guard lock(mutex_);
  if (auto it = frobenius_.find(degree); it != frobenius_.end()) return it->second;
  const Level& l = level(degree);
  // Column i holds (x^i)^p = (x^p)^i.
  Fq xp = Fq(l, [&] {
    Vec g(degree, 0);
    g[degree > 1 ? 1 : 0] = degree > 1 ? 1 : detail::sub_mod(0, l.modulus[0], p_);
    return g;
  }()).pow(static_cast<long long>(p_));
  Mat phi(degree, Vec(degree, 0));
  Fq acc = one(degree);
  for (unsigned i = 0; i < degree; ++i) {
    for (unsigned r = 0; r < degree; ++r) phi[r][i] = acc.coeffs()[r];
    acc *= xp;
  }
  return frobenius_[degree] = std::move(phi);
}

const detail::Embedding& FieldTower::embedding(unsigned from, unsigned to) {
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(from, to);
  if (auto it = embeddings_.find(key); it != embeddings_.end()) return *it->second;
  if (to % from != 0) throw std::logic_error("embedding between incompatible degrees");
  level(to);
  level(from);
  Vec image;
  if (to == top_) {
    image = top_images_.at(from);
  } else {
    const detail::Embedding& down = embedding(to, top_);
    image = down.solver->solve_in_span(top_images_.at(from));
  }
  auto e = std::make_unique<detail::Embedding>();
  e->from = from;
  e->to = to;
  const Level& target = level(to);
  Fq th(target, image), acc = one(to);
  for (unsigned i = 0; i < from; ++i) {
    e->powers.emplace_back(acc.coeffs().begin(), acc.coeffs().end());
    acc *= th;
  }
  e->solver = std::make_unique<detail::ColumnSolver>(e->powers, p_);
  auto& ref = *e;
  embeddings_[key] = std::move(e);
  return ref;
}

std::vector<Residue> FieldTower::embedding_image(unsigned from, unsigned to) {
  return embed(generator(from), to).c_;
}

Fq FieldTower::embed(const Fq& x, unsigned degree) {
  if (&x.tower() != this) throw std::logic_error("element from another tower");
  if (x.degree() == degree) return x;
  if (degree % x.degree() != 0)
    throw PreconditionViolation("cannot embed degree " + std::to_string(x.degree()) + " into degree " +
                                std::to_string(degree));
  const auto& e = embedding(x.degree(), degree);
  std::vector<std::uint64_t> acc(degree, 0);
  for (unsigned i = 0; i < x.degree(); ++i) {
    const std::uint64_t xi = x.c_[i];
    if (!xi) continue;
    for (unsigned j = 0; j < degree; ++j) acc[j] += xi * e.powers[i][j];
  }
  Vec out(degree);
  for (unsigned j = 0; j < degree; ++j) out[j] = static_cast<Residue>(acc[j] % p_);
  return Fq(level(degree), std::move(out));
}

unsigned FieldTower::minimal_degree(const Fq& x) {
  const unsigned r = x.degree();
  if (r == 1) return 1;
  const Mat& phi = frobenius_matrix(r);
  Vec v = x.c_;
  for (unsigned k = 1; k < r; ++k) {
    v = detail::mat_vec(phi, v, p_);
    if (r % k == 0 && v == x.c_) return k;
  }
  return r;
}

Fq FieldTower::normalize(const Fq& x) {
  const unsigned m = minimal_degree(x);
  if (m == x.degree()) return x;
  const auto& e = embedding(m, x.degree());
  return Fq(level(m), e.solver->solve_in_span(x.c_));
}

Fq FieldTower::parse(std::string_view literal) {
  auto trimmed = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  literal = trimmed(literal);
  auto parse_int = [](std::string_view s) -> long long {
    std::size_t pos = 0;
    std::string str(s);
    long long v = 0;
    try {
      v = std::stoll(str, &pos);
    } catch (const std::exception&) {
      throw ParseError("malformed integer '" + str + "'");
    }
    if (pos != str.size()) throw ParseError("malformed integer '" + str + "'");
    return v;
  };
  if (literal.empty()) throw ParseError("empty field element literal");
  if (literal.front() != '[') return from_int(parse_int(literal));
  const auto close = literal.find(']');
  const auto at = literal.find('@', close == std::string_view::npos ? 0 : close);
  if (close == std::string_view::npos || at == std::string_view::npos)
    throw ParseError("field element literal must look like [c0,...]@r: '" + std::string(literal) + "'");
  const long long deg = parse_int(trimmed(literal.substr(at + 1)));
  if (deg < 1) throw ParseError("level must be positive");
  std::vector<Residue> coeffs;
  std::string_view body = literal.substr(1, close - 1);
  while (!trimmed(body).empty()) {
    const auto comma = body.find(',');
    const long long v = parse_int(trimmed(body.substr(0, comma)));
    if (v < 0 || v >= static_cast<long long>(p_)) throw ParseError("coefficient out of range [0, p)");
    coeffs.push_back(static_cast<Residue>(v));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return from_coeffs(std::move(coeffs), static_cast<unsigned>(deg));
}

// ---------------------------------------------------------------- root finding

namespace {

// Polynomials over a single level, constant term first.
using FqPoly = std::vector<Fq>;

void trim(FqPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

FqPoly fq_mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& m) {
  if (a.empty() || b.empty()) return {};
  const Level& l = a[0].level();
  const std::size_t n = a.size() + b.size() - 1;
  FqPoly prod;
  prod.reserve(n);
  detail::ProductAccumulator acc(l);
  for (std::size_t k = 0; k < n; ++k) {
    acc.clear();
    const std::size_t lo = k >= b.size() ? k - b.size() + 1 : 0;
    const std::size_t hi = std::min(k, a.size() - 1);
    for (std::size_t i = lo; i <= hi; ++i) acc.add_product(a[i], b[k - i]);
    prod.push_back(acc.reduce());
  }
  // m is monic.
  const std::size_t dm = m.size() - 1;
  while (prod.size() > dm) {
    const Fq lead = prod.back();
    const std::size_t shift = prod.size() - 1 - dm;
    if (!lead.is_zero())
      for (std::size_t i = 0; i < dm; ++i) prod[shift + i] -= lead * m[i];
    prod.pop_back();
  }
  trim(prod);
  return prod;
}

std::pair<FqPoly, FqPoly> fq_divmod(FqPoly a, const FqPoly& b) {
  trim(a);
  FqPoly q;
  if (a.size() < b.size()) return {q, a};
  const Fq zero = a[0] - a[0];
  q.assign(a.size() - b.size() + 1, zero);
  const Fq inv = b.back().inv();
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const Fq f = a.back() * inv;
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return {q, a};
}

FqPoly fq_gcd(FqPoly a, FqPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FqPoly r = fq_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Fq inv = a.back().inv();
    for (auto& c : a) c *= inv;
  }
  return a;
}

FqPoly fq_powmod(FqPoly base, const BigInt& e, const FqPoly& m) {
  FqPoly result{base[0].tower().one(base[0].degree())};
  if (e == 0) return result;
  const std::size_t bits = boost::multiprecision::msb(e) + 1;
  for (std::size_t i = bits; i-- > 0;) {
    result = fq_mulmod(result, result, m);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) result = fq_mulmod(result, base, m);
  }
  return result;
}

BigInt field_order(Residue p, unsigned degree) {
  BigInt q = 1;
  for (unsigned i = 0; i < degree; ++i) q *= p;
  return q;
}

// One root of a polynomial over a level that splits into distinct linear
// factors there (equal-degree splitting with random shifts).
Fq split_for_root(FqPoly f, std::mt19937_64& rng) {
  const Level& l = f[0].level();
  FieldTower& t = *l.tower;
  const BigInt half = (field_order(l.p, l.degree) - 1) / 2;
  std::uniform_int_distribution<Residue> digit(0, l.p - 1);
  while (f.size() > 2) {
    Vec d(l.degree);
    for (auto& x : d) x = digit(rng);
    FqPoly lin{t.from_coeffs(d, l.degree), t.one(l.degree)};
    FqPoly h = fq_powmod(lin, half, f);
    if (h.empty()) continue;
    h[0] -= t.one(l.degree);
    trim(h);
    FqPoly g = fq_gcd(f, h);
    if (g.size() <= 1 || g.size() == f.size()) continue;
    FqPoly other = fq_divmod(f, g).first;
    f = (g.size() <= other.size()) ? g : other;
    const Fq inv = f.back().inv();
    for (auto& c : f) c *= inv;
  }
  return -(f[0] / f[1]);
}

bool raw_less(const Vec& a, const Vec& b) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace

// Root of the modulus of level `from` inside level `to` (from | to), chosen
// as the smallest Frobenius conjugate by raw coordinates at level `to`.
std::vector<Residue> FieldTower::find_root(unsigned from, unsigned to) {
  const Level& small = *levels_.at(from);
  const Level& big = *levels_.at(to);
  const unsigned m = from;
  if (m == 1) {
    Vec r(to, 0);
    r[0] = detail::sub_mod(0, small.modulus[0], p_);
    return r;
  }
  if (m == to) {
    Vec r(to, 0);
    r[1] = 1;
    return r;
  }
  std::mt19937_64 rng(0x5eed0000ULL + 1000003ULL * from + to);
  std::uniform_int_distribution<Residue> digit(0, p_ - 1);

  // Subfield F_{p^m} inside level `to`: kernel of Frobenius^m - id.
  const Mat& phi = frobenius_matrix(to);
  Mat phim = detail::identity(to);
  for (unsigned i = 0; i < m; ++i) phim = detail::mat_mul(phi, phim, p_);
  for (unsigned i = 0; i < to; ++i) phim[i][i] = detail::sub_mod(phim[i][i], 1, p_);
  const std::vector<Vec> basis = detail::nullspace(phim, p_);
  if (basis.size() != m) throw std::logic_error("unexpected subfield dimension");

  while (true) {
    // Random element of the subfield and its minimal polynomial over F_p.
    Vec y(to, 0);
    for (const Vec& b : basis) {
      const Residue c = digit(rng);
      for (unsigned j = 0; j < to; ++j) y[j] = detail::add_mod(y[j], detail::mul_mod(c, b[j], p_), p_);
    }
    const Fq yy(big, y);
    detail::IncrementalBasis ib(to, p_);
    Fq power = one(to);
    std::vector<Vec> powers;
    std::optional<Vec> dep;
    for (unsigned k = 0; k <= m && !dep; ++k) {
      Vec pv(power.coeffs().begin(), power.coeffs().end());
      dep = ib.add(pv);
      if (!dep) powers.push_back(std::move(pv));
      power *= yy;
    }
    if (!dep || dep->size() != m) continue;  // y generates a proper subfield
    // y^m = sum dep_i y^i  =>  mu(X) = X^m - sum dep_i X^i
    FqPoly mu;
    for (unsigned i = 0; i < m; ++i) mu.push_back(from_int(0, m) - Fq(small, [&] {
                                                    Vec v(m, 0);
                                                    v[0] = (*dep)[i];
                                                    return v;
                                                  }()));
    mu.push_back(one(m));
    const Fq rho = split_for_root(mu, rng);
    // Express the generator of level m as a polynomial in rho.
    std::vector<Vec> rho_powers;
    Fq rp = one(m);
    for (unsigned i = 0; i < m; ++i) {
      rho_powers.emplace_back(rp.coeffs().begin(), rp.coeffs().end());
      rp *= rho;
    }
    detail::ColumnSolver solver(rho_powers, p_);
    Vec gen(m, 0);
    gen[1] = 1;
    const Vec c = solver.solve_in_span(gen);
    Vec theta(to, 0);
    for (unsigned i = 0; i < m; ++i)
      for (unsigned j = 0; j < to; ++j)
        theta[j] = detail::add_mod(theta[j], detail::mul_mod(c[i], powers[i][j], p_), p_);
    // Smallest Frobenius conjugate.
    Vec best = theta, cur = theta;
    for (unsigned k = 1; k < m; ++k) {
      cur = detail::mat_vec(phi, cur, p_);
      if (raw_less(cur, best)) best = cur;
    }
    return best;
  }
}

// ---------------------------------------------------------------- roots

namespace {

BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
  BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = r;
    r = old_r - q * r;
    old_r = tmp;
    tmp = s;
    s = old_s - q * s;
    old_s = tmp;
    tmp = t;
    t = old_t - q * t;
    old_t = tmp;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

BigInt mod_pos(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

// Deterministic stream of nonzero elements at a level.
class ElementStream {
 public:
  ElementStream(FieldTower& t, unsigned degree, std::uint64_t seed)
      : t_(t), degree_(degree), rng_(seed), digit_(0, t.characteristic() - 1) {}
  Fq next() {
    while (true) {
      Vec v(degree_);
      for (auto& x : v) x = digit_(rng_);
      Fq e = t_.from_coeffs(v, degree_);
      if (!e.is_zero()) return e;
    }
  }

 private:
  FieldTower& t_;
  unsigned degree_;
  std::mt19937_64 rng_;
  std::uniform_int_distribution<Residue> digit_;
};

// Some ell-th root of c (ell prime), assuming one exists at c's level.
Fq ell_root(const Fq& c, unsigned ell) {
  FieldTower& t = c.tower();
  const unsigned s = c.degree();
  const BigInt q1 = field_order(t.characteristic(), s) - 1;
  unsigned e = 0;
  BigInt rest = q1;
  while (rest % ell == 0) {
    rest /= ell;
    ++e;
  }
  if (e == 0) {
    BigInt x, y;
    ext_gcd(BigInt(ell), q1, x, y);
    return c.pow(mod_pos(x, q1));
  }
  BigInt ell_e = 1;
  for (unsigned i = 0; i < e; ++i) ell_e *= ell;
  ElementStream stream(t, s, 0xA11CEULL + ell);
  Fq g = stream.next();
  while (g.pow(q1 / ell).is_one()) g = stream.next();
  const Fq y = g.pow(rest);  // generator of the ell-Sylow subgroup
  BigInt A, B;
  ext_gcd(ell_e, rest, A, B);  // A ell^e + B rest = 1
  const Fq c_ell = c.pow(mod_pos(B * rest, q1));
  const Fq c_rest = c.pow(mod_pos(A * ell_e, q1));
  Fq root_rest = t.one(s);
  if (rest > 1) {
    BigInt u, v;
    ext_gcd(BigInt(ell), rest, u, v);
    root_rest = c_rest.pow(mod_pos(u, rest));
  }
  // Discrete log of c_ell in <y>, one base-ell digit at a time.
  const Fq gamma = y.pow(ell_e / ell);
  std::vector<Fq> table{t.one(s)};
  for (unsigned d = 1; d < ell; ++d) table.push_back(table.back() * gamma);
  BigInt L = 0, ell_j = 1;
  const Fq y_inv = y.inv();
  for (unsigned j = 0; j < e; ++j) {
    BigInt exp_out = ell_e / (ell_j * ell);
    const Fq h = (c_ell * y_inv.pow(L)).pow(exp_out);
    unsigned digit = ell;
    for (unsigned d = 0; d < ell; ++d)
      if (table[d] == h) {
        digit = d;
        break;
      }
    if (digit == ell) throw std::logic_error("discrete logarithm failed");
    L += ell_j * digit;
    ell_j *= ell;
  }
  if (L % ell != 0) throw std::logic_error("element is not an ell-th power");
  return root_rest * y.pow(BigInt(L / ell));
}

// Any primitive n-th root of unity at a level containing mu_n.
Fq some_primitive_root(FieldTower& t, unsigned n, unsigned degree) {
  const BigInt q1 = field_order(t.characteristic(), degree) - 1;
  if (q1 % n != 0) throw std::logic_error("level does not contain the n-th roots of unity");
  const auto primes = detail::prime_factors(n);
  ElementStream stream(t, degree, 0x2E7AULL + n);
  while (true) {
    const Fq z = stream.next().pow(q1 / n);
    bool primitive = true;
    for (unsigned ell : primes)
      if (z.pow(static_cast<long long>(n / ell)).is_one()) {
        primitive = false;
        break;
      }
    if (primitive) return z;
  }
}

// Index of the canonically smallest element.
std::size_t canonical_argmin(FieldTower& t, const std::vector<Fq>& xs) {
  std::size_t best = 0;
  Fq best_n = t.normalize(xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    Fq n = t.normalize(xs[i]);
    bool less = false;
    if (n.degree() != best_n.degree()) {
      less = n.degree() < best_n.degree();
    } else {
      const auto a = n.coeffs(), b = best_n.coeffs();
      for (std::size_t k = a.size(); k-- > 0;)
        if (a[k] != b[k]) {
          less = a[k] < b[k];
          break;
        }
    }
    if (less) {
      best = i;
      best_n = std::move(n);
    }
  }
  return best;
}

}  // namespace

Fq primitive_root_of_unity(FieldTower& t, unsigned n) {
  if (n == 0) throw PreconditionViolation("n must be positive");
  if (n % t.characteristic() == 0)
    throw HypothesisViolation("p divides n = " + std::to_string(n) + "; no primitive n-th root of unity");
  const unsigned o = multiplicative_order(t.characteristic(), n);
  const Fq z0 = some_primitive_root(t, n, o);
  std::vector<Fq> candidates;
  Fq cur = t.one(o);
  for (unsigned k = 1; k <= n; ++k) {
    cur *= z0;
    if (std::gcd(k, n) == 1) candidates.push_back(cur);
  }
  return candidates[canonical_argmin(t, candidates)];
}

std::vector<Fq> nth_roots(const Fq& c, unsigned n) {
  if (n == 0) throw PreconditionViolation("n must be positive");
  FieldTower& t = c.tower();
  const Residue p = t.characteristic();
  if (n % p == 0) throw HypothesisViolation("p = " + std::to_string(p) + " divides n = " + std::to_string(n));
  if (c.is_zero()) throw DivisionByZero("nth_roots of zero");
  const Fq cn = t.normalize(c);
  const unsigned base = std::lcm(multiplicative_order(p, n), cn.degree());
  unsigned s = base;
  // c^((p^s - 1)/n) can be evaluated at c's own level.
  const BigInt own_order = field_order(p, cn.degree()) - 1;
  while (!cn.pow(BigInt(((field_order(p, s) - 1) / n) % own_order)).is_one()) s += base;
  const Fq cs = t.embed(cn, s);
  Fq r = cs;
  unsigned rem = n;
  for (unsigned ell = 2; rem > 1; ++ell) {
    while (rem % ell == 0) {
      r = ell_root(r, ell);
      rem /= ell;
    }
  }
  const Fq zeta = t.embed(primitive_root_of_unity(t, n), s);
  std::vector<Fq> roots;
  Fq cur = r;
  for (unsigned i = 0; i < n; ++i) {
    roots.push_back(cur);
    cur *= zeta;
  }
  const Fq alpha0 = roots[canonical_argmin(t, roots)];
  std::vector<Fq> out;
  cur = alpha0;
  for (unsigned i = 0; i < n; ++i) {
    out.push_back(cur);
    cur *= zeta;
  }
  return out;
}

Fq pth_root(const Fq& c) {
  if (c.degree() == 1) return c;
  return c.frobenius(c.degree() - 1);
}

}  // namespace monodromy
