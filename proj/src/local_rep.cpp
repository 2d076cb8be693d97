#include "monodromy/local_rep.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace monodromy {

// ---------------------------------------------------------------- TameChar

TameChar::TameChar(long long num, long long den) {
  if (den == 0) throw ParseError("tame character with zero denominator");
  *this = TameChar(Rational(num, den));
}

TameChar::TameChar(Rational r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() < 0) --q;
  value_ = r - q;
}

bool TameChar::admissible(Residue p) const { return value_.denominator() % p != 0; }

std::string TameChar::to_string() const {
  return std::to_string(value_.numerator()) + "/" + std::to_string(value_.denominator());
}

TameChar TameChar::parse(const std::string& s) {
  auto parse_ll = [&](const std::string& part) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(part, &pos);
    } catch (const std::exception&) {
      throw ParseError("malformed tame character '" + s + "'");
    }
    if (pos != part.size()) throw ParseError("malformed tame character '" + s + "'");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return TameChar(parse_ll(s), 1);
  return TameChar(parse_ll(s.substr(0, slash)), parse_ll(s.substr(slash + 1)));
}

// ---------------------------------------------------------------- PsiArg

PsiArg PsiArg::substituted(const Fq& c) const {
  PsiArg out;
  FieldTower& t = c.tower();
  for (const auto& [k, a] : terms_) out.terms_.emplace(k, t.normalize(a * c.pow(static_cast<long long>(k))));
  return out;
}

bool operator==(const PsiArg& a, const PsiArg& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
  return true;
}

std::string PsiArg::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, a] : terms_) {
    os << (first ? "" : " + ") << a.to_string() << "*t^" << k;
    first = false;
  }
  return os.str();
}

PsiArg canonicalize_psi_arg(FieldTower& tower, const std::map<int, Fq>& h) {
  const int p = static_cast<int>(tower.characteristic());
  std::map<int, Fq, std::greater<int>> work;
  auto accumulate = [&](int k, const Fq& a) {
    if (k <= 0 || a.is_zero()) return;
    auto it = work.find(k);
    if (it == work.end()) work.emplace(k, a);
    else it->second += a;
  };
  for (const auto& [k, a] : h) accumulate(k, a);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = work.begin(); it != work.end(); ++it) {
      if (it->first % p != 0) continue;
      const int k = it->first / p;
      const Fq root = pth_root(it->second);
      work.erase(it);
      accumulate(k, root);
      changed = true;
      break;
    }
  }
  PsiArg out;
  for (const auto& [k, a] : work)
    if (!a.is_zero()) out.terms_.emplace(k, tower.normalize(a));
  return out;
}

int psi_compare(const PsiArg& a, const PsiArg& b) {
  auto ia = a.terms().begin(), ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    if (const int c = canonical_compare(ia->second, ib->second)) return c;
  }
  if (ia == a.terms().end() && ib == b.terms().end()) return 0;
  return ia == a.terms().end() ? -1 : 1;
}

// ---------------------------------------------------------------- atoms

std::vector<int> jordan_tensor(int n, int m) {
  if (n < 1 || m < 1) throw PreconditionViolation("Jordan block sizes must be positive");
  std::vector<int> blocks;
  for (int k = n + m - 1; k >= std::abs(n - m) + 1; k -= 2) blocks.push_back(k);
  return blocks;
}

bool operator==(const Atom& a, const Atom& b) {
  return a.N == b.N && a.unip == b.unip && a.tame == b.tame && a.psi == b.psi;
}

bool atom_less(const Atom& a, const Atom& b) {
  if (a.slope() != b.slope()) return a.slope() > b.slope();
  if (a.N != b.N) return a.N < b.N;
  if (!(a.tame == b.tame)) return a.tame < b.tame;
  if (a.unip != b.unip) return a.unip < b.unip;
  return psi_compare(a.psi, b.psi) < 0;
}

Atom canonical_atom(FieldTower& tower, int N, const PsiArg& h, TameChar tame, int unip) {
  if (N < 1) throw PreconditionViolation("push index must be positive");
  if (N % static_cast<int>(tower.characteristic()) == 0)
    throw HypothesisViolation("p divides the push index N = " + std::to_string(N));
  Atom atom{N, h, tame, unip};
  if (N == 1 || h.is_zero()) return atom;
  const Fq zeta = primitive_root_of_unity(tower, static_cast<unsigned>(N));
  Fq w = zeta;
  for (int j = 1; j < N; ++j, w *= zeta) {
    PsiArg candidate = h.substituted(w);
    if (psi_compare(candidate, atom.psi) < 0) atom.psi = std::move(candidate);
  }
  return atom;
}

void LocalRep::sort() { std::sort(atoms.begin(), atoms.end(), atom_less); }

bool operator==(const LocalRep& a, const LocalRep& b) { return a.point == b.point && a.atoms == b.atoms; }

LocalRep restrict_pushforward(FieldTower& tower, const Atom& atom, int M, Point point) {
  if (M != atom.N)
    throw Unsupported("only the full restriction [N]^* of an [N]_* atom is supported (N = " +
                      std::to_string(atom.N) + ", M = " + std::to_string(M) + ")");
  LocalRep out{point, {}};
  if (atom.N == 1) {
    out.atoms.push_back(atom);
    return out;
  }
  const Fq zeta = primitive_root_of_unity(tower, static_cast<unsigned>(atom.N));
  Fq w = tower.one();
  for (int j = 0; j < atom.N; ++j, w *= zeta)
    out.atoms.push_back(Atom{1, atom.psi.substituted(w), atom.tame, atom.unip});
  out.sort();
  return out;
}

Invariants invariants(const LocalRep& rep) {
  Invariants inv;
  for (const auto& a : rep.atoms) {
    inv.rank += a.rank();
    inv.swan += a.swan();
    inv.slopes.push_back(a.slope());
  }
  std::sort(inv.slopes.begin(), inv.slopes.end(), std::greater<>());
  return inv;
}

// ---------------------------------------------------------------- input

int InputRep::degree() const {
  for (auto it = f.rbegin(); it != f.rend(); ++it)
    if (!it->second.is_zero()) return it->first;
  return 0;
}

Fq InputRep::leading() const {
  for (auto it = f.rbegin(); it != f.rend(); ++it)
    if (!it->second.is_zero()) return it->second;
  throw PreconditionViolation("zero polynomial has no leading coefficient");
}

void InputRep::validate(Residue p, const std::string& name) const {
  if (a < 1) throw ParseError(name + ".a must be a positive integer");
  if (n < 1) throw ParseError(name + ".n must be a positive integer");
  if (f.empty()) throw ParseError(name + ".f is empty");
  for (const auto& [k, c] : f)
    if (k < 0) throw ParseError(name + ".f has a negative exponent " + std::to_string(k));
  if (f.rbegin()->second.is_zero())
    throw ParseError(name + ".f: degree mismatch (coefficient of t^" + std::to_string(f.rbegin()->first) +
                     " is zero)");
  if (degree() < 1) throw ParseError(name + ".f must have positive degree");
  if (!chi.admissible(p))
    throw ParseError(name + ".chi: denominator " + std::to_string(chi.value().denominator()) +
                     " is divisible by p = " + std::to_string(p));
}

std::string to_string(Point point) { return point == Point::Zero ? "0" : "inf"; }

}  // namespace monodromy
