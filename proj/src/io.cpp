#include "monodromy/io.hpp"

namespace monodromy::io {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) { throw ParseError(field + ": " + what); }

const Json& member(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

long long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer, got " + j.dump());
  return j.get<long long>();
}

Fq element(FieldTower& tower, const Json& j, const std::string& path) {
  if (j.is_number_integer()) return tower.from_int(j.get<long long>());
  if (!j.is_string()) fail(path, "expected an integer or element literal, got " + j.dump());
  try {
    return tower.parse(j.get<std::string>());
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

TameChar tame(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return TameChar(j.get<long long>(), 1);
  if (!j.is_string()) fail(path, "expected \"u/v\", got " + j.dump());
  try {
    return TameChar::parse(j.get<std::string>());
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

InputRep input_rep(FieldTower& tower, const Json& j, const std::string& path) {
  InputRep r;
  r.a = static_cast<int>(integer(member(j, "a", path), path + ".a"));
  r.n = j.contains("n") ? static_cast<int>(integer(j["n"], path + ".n")) : 1;
  r.chi = j.contains("chi") ? tame(j["chi"], path + ".chi") : TameChar();
  const Json& f = member(j, "f", path);
  if (!f.is_array()) fail(path + ".f", "expected [[exp, coefficient], ...]");
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::string at = path + ".f[" + std::to_string(i) + "]";
    if (!f[i].is_array() || f[i].size() != 2) fail(at, "expected [exp, coefficient]");
    const int k = static_cast<int>(integer(f[i][0], at + "[0]"));
    Fq c = element(tower, f[i][1], at + "[1]");
    auto [it, fresh] = r.f.emplace(k, c);
    if (!fresh) it->second = it->second + c;
  }
  // The highest listed exponent must carry a nonzero coefficient; lower
  // zero terms are dropped.
  for (auto it = r.f.begin(); it != r.f.end();) {
    if (it->second.is_zero() && std::next(it) != r.f.end())
      it = r.f.erase(it);
    else
      ++it;
  }
  r.validate(tower.characteristic(), path);
  return r;
}

Json input_json(const InputRep& r) {
  Json f = Json::array();
  for (const auto& [k, c] : r.f) f.push_back(Json::array({k, c.to_string()}));
  return Json{{"a", r.a}, {"f", f}, {"chi", r.chi.to_string()}, {"n", r.n}};
}

Json poly_json(const FpPoly& m) {
  Json out = Json::array();
  for (Residue c : m) out.push_back(c);
  return out;
}

}  // namespace

Mode parse_mode(const std::string& s) {
  if (s == "inf-inf") return Mode::InfInf;
  if (s == "0-inf") return Mode::ZeroInf;
  throw ParseError("mode: expected \"inf-inf\" or \"0-inf\", got \"" + s + "\"");
}

ConvProblem ProblemFile::conv_problem(std::optional<Mode> fallback) const {
  if (!G) throw ParseError("G: missing");
  const std::optional<Mode> m = fallback ? fallback : mode;
  if (!m) throw ParseError("mode: missing");
  return ConvProblem{F, *G, *m, guard};
}

ProblemFile parse_problem(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) fail("<root>", "expected an object");
  ProblemFile out;
  const long long p = integer(member(j, "p", "<root>"), "p");
  if (p < 3 || p > kMaxCharacteristic || !is_prime(static_cast<std::uint64_t>(p)))
    fail("p", "expected an odd prime at most " + std::to_string(kMaxCharacteristic) + ", got " + std::to_string(p));
  out.tower = std::make_unique<FieldTower>(static_cast<Residue>(p));
  if (j.contains("moduli")) {
    const Json& m = j["moduli"];
    if (!m.is_object()) fail("moduli", "expected {\"degree\": [coefficients]}");
    for (const auto& [key, value] : m.items()) {
      const std::string at = "moduli." + key;
      unsigned degree = 0;
      try {
        degree = static_cast<unsigned>(std::stoul(key));
      } catch (const std::exception&) {
        fail(at, "degree is not an integer");
      }
      if (!value.is_array()) fail(at, "expected a coefficient list");
      FpPoly poly;
      for (const Json& c : value) {
        const long long v = integer(c, at);
        poly.push_back(static_cast<Residue>(((v % p) + p) % p));
      }
      try {
        out.tower->set_modulus(degree, poly);
      } catch (const Error& e) {
        fail(at, e.what());
      }
      out.moduli.emplace(degree, std::move(poly));
    }
  }
  out.F = input_rep(*out.tower, member(j, "F", "<root>"), "F");
  if (j.contains("G")) out.G = input_rep(*out.tower, j["G"], "G");
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) fail("mode", "expected a string");
    out.mode = parse_mode(j["mode"].get<std::string>());
  }
  if (j.contains("guard")) {
    out.guard = static_cast<int>(integer(j["guard"], "guard"));
    if (out.guard < 0) fail("guard", "must be non-negative");
  }
  return out;
}

Json serialize_problem(const ProblemFile& problem) {
  Json j;
  j["p"] = problem.tower->characteristic();
  if (!problem.moduli.empty()) {
    Json m = Json::object();
    for (const auto& [deg, poly] : problem.moduli) m[std::to_string(deg)] = poly_json(poly);
    j["moduli"] = m;
  }
  j["F"] = input_json(problem.F);
  if (problem.G) j["G"] = input_json(*problem.G);
  if (problem.mode) j["mode"] = to_string(*problem.mode);
  j["guard"] = problem.guard;
  return j;
}

Json to_json(const Atom& atom) {
  Json psi = Json::array();
  for (const auto& [k, c] : atom.psi.terms()) psi.push_back(Json::array({k, c.to_string()}));
  return Json{{"N", atom.N}, {"psi", psi}, {"chi", atom.tame.to_string()}, {"unip", atom.unip}};
}

Json to_json(const LocalRep& rep) {
  Json atoms = Json::array();
  for (const Atom& a : rep.atoms) atoms.push_back(to_json(a));
  return Json{{"point", to_string(rep.point)}, {"atoms", atoms}};
}

Json to_json(const Invariants& inv) {
  Json slopes = Json::array();
  for (const Rational& s : inv.slopes) slopes.push_back(std::to_string(s.numerator()) + "/" + std::to_string(s.denominator()));
  return Json{{"rank", inv.rank}, {"swan", inv.swan}, {"slopes", slopes}};
}

LocalRep local_rep_from_json(FieldTower& tower, const Json& j) {
  LocalRep rep;
  if (j.contains("point")) {
    const Json& pt = j["point"];
    if (pt == "inf")
      rep.point = Point::Infinity;
    else if (pt == "0")
      rep.point = Point::Zero;
    else
      fail("point", "expected \"inf\" or \"0\"");
  }
  const Json& atoms = member(j, "atoms", "<root>");
  if (!atoms.is_array()) fail("atoms", "expected an array");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string at = "atoms[" + std::to_string(i) + "]";
    const Json& a = atoms[i];
    const int N = static_cast<int>(integer(member(a, "N", at), at + ".N"));
    const int unip = static_cast<int>(integer(member(a, "unip", at), at + ".unip"));
    if (N < 1 || unip < 1) fail(at, "N and unip must be positive");
    std::map<int, Fq> h;
    const Json& psi = member(a, "psi", at);
    if (!psi.is_array()) fail(at + ".psi", "expected [[exp, coefficient], ...]");
    for (std::size_t k = 0; k < psi.size(); ++k) {
      const std::string pk = at + ".psi[" + std::to_string(k) + "]";
      if (!psi[k].is_array() || psi[k].size() != 2) fail(pk, "expected [exp, coefficient]");
      h.emplace(static_cast<int>(integer(psi[k][0], pk + "[0]")), element(tower, psi[k][1], pk + "[1]"));
    }
    const TameChar chi = a.contains("chi") ? tame(a["chi"], at + ".chi") : TameChar();
    rep.atoms.push_back(canonical_atom(tower, N, canonicalize_psi_arg(tower, h), chi, unip));
  }
  rep.sort();
  return rep;
}

Json moduli_json(FieldTower& tower) {
  Json m = Json::object();
  for (unsigned deg : tower.degrees()) m[std::to_string(deg)] = poly_json(tower.modulus(deg));
  return m;
}

}  // namespace monodromy::io
