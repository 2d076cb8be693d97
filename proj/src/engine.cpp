#include "monodromy/engine.hpp"

#include <numeric>

namespace monodromy {

std::string to_string(Mode mode) { return mode == Mode::InfInf ? "inf-inf" : "0-inf"; }

void require_prime_to_p(long long k, Residue p, const std::string& what) {
  if (k % static_cast<long long>(p) == 0)
    throw HypothesisViolation(what + " = " + std::to_string(k) + " is divisible by p = " + std::to_string(p));
}

namespace {

thread_local LiftObserver lift_observer;

unsigned coefficient_degree(FieldTower& tower, const InputRep& rep) {
  unsigned d = 1;
  for (const auto& [k, c] : rep.f) d = std::lcm(d, tower.minimal_degree(c));
  return d;
}

}  // namespace

LiftObserver set_lift_observer(LiftObserver observer) {
  std::swap(observer, lift_observer);
  return observer;
}

void notify_lift(int residual_valuation, int precision) {
  if (lift_observer) lift_observer(residual_valuation, precision);
}

ZLaurentPoly build_H(FieldTower& tower, const ConvProblem& pr) {
  const int a = pr.F.a, b = pr.G.a;
  const int d = pr.F.degree(), e = pr.G.degree();
  const int c = std::gcd(d, e), dp = d / c, ep = e / c;
  const int shift = d * ep;  // de/c
  const int zf = pr.mode == Mode::InfInf ? b : -b;
  ZLaurentPoly H;
  for (const auto& [j, fj] : pr.F.f) {
    if (fj.is_zero()) continue;
    H.add_term(zf * j, TruncatedSeries::monomial(tower.normalize(fj), ep * j - shift));
  }
  for (const auto& [k, gk] : pr.G.f) {
    if (gk.is_zero()) continue;
    H.add_term(-a * k, TruncatedSeries::monomial(tower.normalize(gk), dp * k - shift));
  }
  return H;
}

ConvReport convolve(FieldTower& tower, const ConvProblem& pr, const ConvOptions& options) {
  const Residue p = tower.characteristic();
  pr.F.validate(p, "F");
  pr.G.validate(p, "G");
  if (pr.guard < 0) throw PreconditionViolation("guard must be non-negative");
  const int a = pr.F.a, b = pr.G.a;
  const int d = pr.F.degree(), e = pr.G.degree();
  if (std::gcd(a, b) != 1)
    throw HypothesisViolation("gcd(a, b) = " + std::to_string(std::gcd(a, b)) +
                              " must be 1; remove the common pushforward first");
  require_prime_to_p(a, p, "a");
  require_prime_to_p(b, p, "b");
  require_prime_to_p(d, p, "d = deg f");
  require_prime_to_p(e, p, "e = deg g");

  ConvReport report;
  report.d = d;
  report.e = e;
  report.c = std::gcd(d, e);
  const int c = report.c, dp = d / c, ep = e / c;
  const bool inf = pr.mode == Mode::InfInf;
  report.rep.point = Point::Infinity;
  if (!inf && b * d <= a * e) {
    report.vanishes = true;
    return report;
  }
  report.roots_count = inf ? b * d + a * e : b * d - a * e;
  report.N = inf ? b * dp + a * ep : b * dp - a * ep;
  require_prime_to_p(report.roots_count, p, inf ? "bd + ae" : "bd - ae");
  report.precision = d * ep + pr.guard;
  report.tame = TameChar(pr.F.chi.value() * static_cast<long long>(ep) +
                         pr.G.chi.value() * static_cast<long long>(dp) + Rational(static_cast<long long>(d) * e, 2));
  report.blocks = jordan_tensor(pr.F.n, pr.G.n);

  report.H = build_H(tower, pr);
  report.H_reduced = report.H.reduction();
  const ZLaurentPoly dH = report.H.derivative();

  // Roots of dH/dz mod 1/t: z^S = ae g_e / (bd f_d), resp. -bd f_d / (ae g_e).
  const Fq fd = pr.F.leading(), ge = pr.G.leading();
  const Fq target = inf ? (ge.scaled(static_cast<long long>(a) * e)) / fd.scaled(static_cast<long long>(b) * d)
                        : -(fd.scaled(static_cast<long long>(b) * d) / ge.scaled(static_cast<long long>(a) * e));
  report.roots = nth_roots(target, static_cast<unsigned>(report.roots_count));

  const unsigned base = std::lcm(coefficient_degree(tower, pr.F), coefficient_degree(tower, pr.G));
  const int lifted = options.all_stalks ? report.roots_count : c;
  const int K = report.precision;
  for (int i = 0; i < lifted; ++i) {
    StalkTrace st;
    st.index = i;
    const Fq alpha = tower.normalize(report.roots[static_cast<std::size_t>(i)]);
    st.alpha = tower.embed(alpha, std::lcm(base, alpha.degree()));
    st.z = newton_lift(dH, st.alpha, K);
    st.residual_valuation = residual_valuation(dH, st.z);
    notify_lift(st.residual_valuation, K);
    if (st.residual_valuation <= K)
      throw PrecisionExhausted("lift of root " + std::to_string(i) + " has residual valuation " +
                               std::to_string(st.residual_valuation) + ", requested more than " +
                               std::to_string(K));
    st.h = report.H.eval(st.z).shifted(d * ep);
    std::map<int, Fq> positive;
    for (int k = 1; k <= d * ep; ++k) positive.emplace(k, st.h.coefficient(k));
    st.psi = canonicalize_psi_arg(tower, positive);
    report.stalks.push_back(std::move(st));
  }
  for (int i = 0; i < c; ++i)
    for (int block : report.blocks)
      report.rep.atoms.push_back(
          canonical_atom(tower, report.N, report.stalks[static_cast<std::size_t>(i)].psi, report.tame, block));
  report.rep.sort();
  return report;
}

LocalRep lc_inf_inf(FieldTower& tower, const InputRep& F, const InputRep& G, int guard) {
  return convolve(tower, ConvProblem{F, G, Mode::InfInf, guard}).rep;
}

LocalRep lc_0_inf(FieldTower& tower, const InputRep& F_at_0, const InputRep& G, int guard) {
  return convolve(tower, ConvProblem{F_at_0, G, Mode::ZeroInf, guard}).rep;
}

Reduction reduce_common_pushforward(const ConvProblem& problem, Residue p) {
  Reduction out{std::gcd(problem.F.a, problem.G.a), problem};
  if (out.r > 1) {
    require_prime_to_p(out.r, p, "gcd(a, b)");
    out.reduced.F.a /= out.r;
    out.reduced.G.a /= out.r;
  }
  return out;
}

ConvReport solve(FieldTower& tower, const ConvProblem& problem, const ConvOptions& options) {
  const Reduction red = reduce_common_pushforward(problem, tower.characteristic());
  ConvReport report = convolve(tower, red.reduced, options);
  report.r = red.r;
  if (red.r > 1) {
    for (auto& atom : report.rep.atoms) atom = canonical_atom(tower, atom.N * red.r, atom.psi, atom.tame, atom.unip);
    report.rep.sort();
  }
  return report;
}

}  // namespace monodromy
