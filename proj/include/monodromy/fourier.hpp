#pragma once

// Local Fourier transforms FT(0, inf) and FT(inf, inf) of
// F = [a]_*(L_psi(f) (x) L_chi (x) U_n), computed directly from the
// critical-point equation and, independently, as a special convolution
// with L_psi(t).

#include "monodromy/engine.hpp"

namespace monodromy {

struct FourierTrace {
  ZLaurentPoly P;  // critical-point equation in z
  Fq alpha;
  TruncatedSeries z;
  int residual_valuation = 0;
  TruncatedSeries g;  // f(t z^{+-1}) + t^d z^{-a}, with its tail
  int precision = 0;
};

struct FourierResult {
  LocalRep rep;
  FourierTrace trace;
};

/// FT(0, inf) of [a]_*(L_psi(f(1/t)) (x) K_{chi,n}) at 0:
///   [d+a]_*(L_psi(g) (x) K_{-chi,n} (x) L_{rho^d}), g = f(tz) + t^d z^{-a},
/// z a root of z^{a+1} t^{-(d-1)} f'(tz) - a. Requires p prime to a, d, a+d.
FourierResult ft_0_inf_direct(FieldTower& tower, const InputRep& F, int guard = 8);
LocalRep ft_0_inf_via_conv(FieldTower& tower, const InputRep& F, int guard = 8);

/// FT(inf, inf) of [a]_*(L_psi(f) (x) K_{chi,n}) with d > a:
///   [d-a]_*(L_psi(g) (x) K_{chi,n} (x) L_{rho^d}), g = f(t/z) + t^d z^{-a},
/// z a root of z^{a-1} t^{-(d-1)} f'(t/z) + a. Requires p prime to a, d, d-a.
FourierResult ft_inf_inf_direct(FieldTower& tower, const InputRep& F, int guard = 8);
LocalRep ft_inf_inf_via_conv(FieldTower& tower, const InputRep& F, int guard = 8);

/// The FT(0, inf) root z also solves the stationary-phase equation after
/// the substitution 1/T = t z(1/t):
///   -(tz)^2 f'(tz) + a t^{d+1} z^{1-a} = 0.
/// Returns that expression evaluated at the lifted z.
TruncatedSeries stationary_phase_residual(FieldTower& tower, const InputRep& F, const TruncatedSeries& z);

}  // namespace monodromy
