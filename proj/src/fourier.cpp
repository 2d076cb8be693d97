#include "monodromy/fourier.hpp"

#include <numeric>

namespace monodromy {

namespace {

// L_psi(t) as an input representation.
InputRep psi_of_t(FieldTower& tower) {
  InputRep r;
  r.f.emplace(1, tower.one());
  return r;
}

struct Shape {
  int a, d, N;
  bool zero_side;  // FT(0, inf)
};

// Shared machinery: P(z) = sum_j j f_j t^{j-d} z^{sign*(j) + shift} + const.
FourierResult run_direct(FieldTower& tower, const InputRep& F, int guard, const Shape& s) {
  const Residue p = tower.characteristic();
  F.validate(p, "F");
  if (guard < 0) throw PreconditionViolation("guard must be non-negative");
  require_prime_to_p(s.a, p, "a");
  require_prime_to_p(s.d, p, "d = deg f");
  require_prime_to_p(s.N, p, s.zero_side ? "a + d" : "d - a");

  FourierResult out;
  FourierTrace& tr = out.trace;
  const int a = s.a, d = s.d;
  // FT(0, inf): z^{a+1} t^{-(d-1)} f'(tz) - a   = sum j f_j t^{j-d} z^{j+a} - a
  // FT(inf,inf): z^{a-1} t^{-(d-1)} f'(t/z) + a = sum j f_j t^{j-d} z^{a-j} + a
  for (const auto& [j, fj] : F.f) {
    if (j == 0 || fj.is_zero()) continue;
    const Fq coeff = tower.normalize(fj.scaled(j));
    if (coeff.is_zero()) continue;
    tr.P.add_term(s.zero_side ? j + a : a - j, TruncatedSeries::monomial(coeff, j - d));
  }
  tr.P.add_term(0, TruncatedSeries::constant(tower.from_int(s.zero_side ? -a : a)));

  // Reduction: d f_d z^{a+d} = a, resp. d f_d z^{a-d} + a = 0.
  const Fq fd = F.leading();
  const Fq target = s.zero_side ? tower.from_int(a) / fd.scaled(d) : -(fd.scaled(d) / tower.from_int(a));
  const auto roots = nth_roots(target, static_cast<unsigned>(s.N));
  unsigned base = 1;
  for (const auto& [k, c] : F.f) base = std::lcm(base, tower.minimal_degree(c));
  const Fq alpha = tower.normalize(roots.front());
  tr.alpha = tower.embed(alpha, std::lcm(base, alpha.degree()));
  tr.precision = d + guard;
  tr.z = newton_lift(tr.P, tr.alpha, tr.precision);
  tr.residual_valuation = residual_valuation(tr.P, tr.z);
  notify_lift(tr.residual_valuation, tr.precision);
  if (tr.residual_valuation <= tr.precision)
    throw PrecisionExhausted("Fourier lift residual valuation " + std::to_string(tr.residual_valuation));

  // g = f(t z^{+-1}) + t^d z^{-a}.
  ZLaurentPoly G;
  for (const auto& [j, fj] : F.f) {
    if (fj.is_zero()) continue;
    G.add_term(s.zero_side ? j : -j, TruncatedSeries::monomial(tower.normalize(fj), j));
  }
  G.add_term(-a, TruncatedSeries::monomial(tower.one(), d));
  tr.g = G.eval(tr.z);
  std::map<int, Fq> positive;
  for (int k = 1; k <= d; ++k) positive.emplace(k, tr.g.coefficient(k));
  const PsiArg psi = canonicalize_psi_arg(tower, positive);
  const TameChar chi = s.zero_side ? -F.chi : F.chi;
  const TameChar tame = chi + TameChar(d, 2);
  out.rep.point = Point::Infinity;
  out.rep.atoms.push_back(canonical_atom(tower, s.N, psi, tame, F.n));
  return out;
}

}  // namespace

FourierResult ft_0_inf_direct(FieldTower& tower, const InputRep& F, int guard) {
  const int d = F.degree();
  return run_direct(tower, F, guard, Shape{F.a, d, d + F.a, true});
}

LocalRep ft_0_inf_via_conv(FieldTower& tower, const InputRep& F, int guard) {
  InputRep conj = F;
  conj.chi = -F.chi;
  return lc_inf_inf(tower, conj, psi_of_t(tower), guard);
}

FourierResult ft_inf_inf_direct(FieldTower& tower, const InputRep& F, int guard) {
  const int d = F.degree();
  if (d <= F.a)
    throw HypothesisViolation("FT(inf, inf) needs d > a, got d = " + std::to_string(d) +
                              ", a = " + std::to_string(F.a));
  return run_direct(tower, F, guard, Shape{F.a, d, d - F.a, false});
}

LocalRep ft_inf_inf_via_conv(FieldTower& tower, const InputRep& F, int guard) {
  if (F.degree() <= F.a)
    throw HypothesisViolation("FT(inf, inf) needs d > a, got d = " + std::to_string(F.degree()) +
                              ", a = " + std::to_string(F.a));
  return lc_0_inf(tower, F, psi_of_t(tower), guard);
}

TruncatedSeries stationary_phase_residual(FieldTower& tower, const InputRep& F, const TruncatedSeries& z) {
  const int a = F.a, d = F.degree();
  // -(tz)^2 f'(tz) = -sum_j j f_j (tz)^{j+1}
  ZLaurentPoly E;
  for (const auto& [j, fj] : F.f) {
    if (j == 0 || fj.is_zero()) continue;
    E.add_term(j + 1, TruncatedSeries::monomial(-fj.scaled(j), j + 1));
  }
  E.add_term(1 - a, TruncatedSeries::monomial(tower.from_int(a), d + 1));
  return E.eval(z);
}

}  // namespace monodromy
