#pragma once

// Local monodromy at infinity of the multiplicative convolution of
//   F = [a]_*(L_psi(f) (x) L_chi (x) U_n)   and   G = [b]_*(L_psi(g) (x) L_xi (x) U_m),
// with F taken at infinity (InfInf) or at zero (ZeroInf).
//
// With d = deg f, e = deg g, c = gcd(d, e), d' = d/c, e' = e/c, let
//   H(z, t) = t^{-de/c} (f(t^{e'} z^{+-b}) + g(t^{d'} z^{-a}))
// (sign + for InfInf, - for ZeroInf). The S = bd +- ae simple roots alpha_i
// of dH/dz mod 1/t lift to roots z_i(1/t) of dH/dz, and
// h_i = t^{de/c} H(z_i, t) gives the wild part of each stalk. The output is
//   [bd' +- ae']_* of sum_{i<c} L_psi(h_i) (x) L_tame (x) U_n (x) U_m,
// tame = e' chi + d' xi + de/2 mod 1.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "monodromy/local_rep.hpp"
#include "monodromy/series.hpp"

namespace monodromy {

enum class Mode { InfInf, ZeroInf };

std::string to_string(Mode mode);

struct ConvProblem {
  InputRep F;
  InputRep G;
  Mode mode = Mode::InfInf;
  int guard = 8;
};

struct ConvOptions {
  /// Lift every root, not only the orbit representatives i < c.
  bool all_stalks = false;
};

struct StalkTrace {
  int index = 0;
  Fq alpha;
  TruncatedSeries z;
  int residual_valuation = 0;
  TruncatedSeries h;  // t^{de/c} H(z, t), with its tail
  PsiArg psi;         // canonicalized positive part
};

struct ConvReport {
  LocalRep rep;
  bool vanishes = false;  // zero rule applied
  int r = 1;              // common pushforward factor removed first
  int d = 0, e = 0, c = 0;
  int roots_count = 0;  // bd +- ae
  int N = 0;            // bd' +- ae'
  int precision = 0;    // requested lifting precision de/c + guard
  TameChar tame;
  std::vector<int> blocks;
  ZLaurentPoly H;
  std::map<int, Fq> H_reduced;
  std::vector<Fq> roots;  // alpha_i = alpha_0 zeta^i
  std::vector<StalkTrace> stalks;
};

/// H(z, t) exactly; coefficients are t-monomials. Requires valid inputs.
ZLaurentPoly build_H(FieldTower& tower, const ConvProblem& problem);

/// The convolution for gcd(a, b) = 1. Throws HypothesisViolation naming the
/// failed condition, PrecisionExhausted if a lift falls short.
ConvReport convolve(FieldTower& tower, const ConvProblem& problem, const ConvOptions& options = {});

LocalRep lc_inf_inf(FieldTower& tower, const InputRep& F, const InputRep& G, int guard = 8);
LocalRep lc_0_inf(FieldTower& tower, const InputRep& F_at_0, const InputRep& G, int guard = 8);

struct Reduction {
  int r = 1;
  ConvProblem reduced;
};

/// Splits off r = gcd(a, b). Throws HypothesisViolation if p | r.
Reduction reduce_common_pushforward(const ConvProblem& problem, Residue p);

/// convolve() after removing r = gcd(a, b); every output push index is
/// multiplied by r and the atoms are re-canonicalized.
ConvReport solve(FieldTower& tower, const ConvProblem& problem, const ConvOptions& options = {});

/// Receives (residual valuation, requested precision) after every root
/// lift, including lifts inside the Fourier transforms.
using LiftObserver = std::function<void(int, int)>;

/// Installs `observer` for the calling thread and returns the previous one.
LiftObserver set_lift_observer(LiftObserver observer);
void notify_lift(int residual_valuation, int precision);

/// Checks that `k` is prime to p, naming it in the error.
void require_prime_to_p(long long k, Residue p, const std::string& what);

}  // namespace monodromy
