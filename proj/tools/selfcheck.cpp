#include "selfcheck.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <random>

#include "monodromy/fourier.hpp"

namespace monodromy::cli {

namespace {

constexpr std::array<Residue, 4> kPrimes{5, 7, 11, 13};

bool prime_to(long long k, Residue p) { return k % static_cast<long long>(p) != 0; }

InputRep random_rep(FieldTower& t, std::mt19937& rng, int a, int deg) {
  InputRep r;
  r.a = a;
  r.n = static_cast<int>(1 + rng() % 3);
  const Residue p = t.characteristic();
  for (int k = 0; k <= deg; ++k) {
    Fq c = t.from_int(static_cast<long long>(rng() % p));
    if (k == deg && c.is_zero()) c = t.one();
    if (!c.is_zero()) r.f.emplace(k, c);
  }
  const int den = static_cast<int>(1 + rng() % 4);
  r.chi = TameChar(static_cast<long long>(rng() % static_cast<unsigned>(den)), den);
  return r;
}

struct Params {
  Residue p;
  int a, b, d, e;
};

// gcd(a, b) = r, every prime-to-p hypothesis of both modes satisfied.
Params random_params(std::mt19937& rng, int r = 1) {
  for (;;) {
    Params x{kPrimes[rng() % kPrimes.size()], r * static_cast<int>(1 + rng() % (6 / r)),
             r * static_cast<int>(1 + rng() % (6 / r)), static_cast<int>(1 + rng() % 6),
             static_cast<int>(1 + rng() % 6)};
    if (std::gcd(x.a, x.b) != r || !prime_to(r, x.p)) continue;
    if (!prime_to(x.a, x.p) || !prime_to(x.b, x.p) || !prime_to(x.d, x.p) || !prime_to(x.e, x.p)) continue;
    const int ra = x.a / r, rb = x.b / r;
    if (!prime_to(rb * x.d + ra * x.e, x.p)) continue;
    if (rb * x.d > ra * x.e && !prime_to(rb * x.d - ra * x.e, x.p)) continue;
    return x;
  }
}

void check(CheckResult& out, const std::string& tag, const std::function<bool()>& body) {
  bool ok = false;
  std::string why;
  try {
    ok = body();
  } catch (const Error& e) {
    why = std::string(": ") + e.what();
  }
  if (ok) {
    ++out.passed;
  } else if (out.failed++ == 0) {
    out.first_failure = tag + why;
  }
}

// Rank of a small integer matrix over Q.
int rational_rank(std::vector<std::vector<Rational>> m) {
  int r = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t col = 0; col < cols && static_cast<std::size_t>(r) < rows; ++col) {
    std::size_t piv = static_cast<std::size_t>(r);
    while (piv < rows && m[piv][col] == Rational(0)) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(r)]);
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < rows; ++i) {
      const Rational f = m[i][col] / m[static_cast<std::size_t>(r)][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[static_cast<std::size_t>(r)][j];
    }
    ++r;
  }
  return r;
}

// Number of Jordan blocks of J_n (x) 1 + 1 (x) J_m of size >= k, k = 1, 2, ...
std::vector<int> blocks_at_least(int n, int m) {
  const int dim = n * m;
  using Mat = std::vector<std::vector<Rational>>;
  Mat N(static_cast<std::size_t>(dim), std::vector<Rational>(static_cast<std::size_t>(dim)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const auto row = static_cast<std::size_t>(i * m + j);
      if (i + 1 < n) N[row][static_cast<std::size_t>((i + 1) * m + j)] += 1;
      if (j + 1 < m) N[row][static_cast<std::size_t>(i * m + j + 1)] += 1;
    }
  std::vector<int> ranks{dim};
  Mat power = N;
  while (ranks.back() > 0) {
    ranks.push_back(rational_rank(power));
    Mat next(power.size(), std::vector<Rational>(power.size()));
    for (std::size_t i = 0; i < power.size(); ++i)
      for (std::size_t l = 0; l < power.size(); ++l)
        if (power[i][l] != Rational(0))
          for (std::size_t j = 0; j < power.size(); ++j) next[i][j] += power[i][l] * N[l][j];
    power = std::move(next);
  }
  std::vector<int> out;
  for (std::size_t k = 1; k < ranks.size(); ++k) out.push_back(ranks[k - 1] - ranks[k]);
  return out;
}

}  // namespace

std::vector<CheckResult> run_selfcheck(std::uint32_t seed, int count) {
  std::vector<CheckResult> results;
  int short_lifts = 0, lifts = 0;
  const LiftObserver previous = set_lift_observer([&](int residual, int precision) {
    ++lifts;
    if (residual <= precision) ++short_lifts;
  });

  CheckResult kl{"kloosterman"};
  for (Residue p : {3u, 5u, 7u, 11u})
    check(kl, "p=" + std::to_string(p), [p] {
      FieldTower t(p);
      InputRep F;
      F.f.emplace(1, t.one());
      const LocalRep r = solve(t, ConvProblem{F, F, Mode::InfInf}).rep;
      std::map<int, Fq> h{{1, t.from_int(2)}};
      return r.atoms.size() == 1 &&
             r.atoms[0] == canonical_atom(t, 2, canonicalize_psi_arg(t, h), TameChar(1, 2), 1);
    });
  results.push_back(kl);

  CheckResult quad{"quadratic-phase"};
  for (Residue p : {7u, 11u, 13u})
    check(quad, "p=" + std::to_string(p), [p] {
      FieldTower t(p);
      InputRep F;
      F.f.emplace(2, t.one());
      std::map<int, Fq> h{{2, -t.from_int(4).inv()}};
      const LocalRep want{Point::Infinity, {Atom{1, canonicalize_psi_arg(t, h), TameChar(), 1}}};
      return ft_inf_inf_direct(t, F).rep == want && ft_inf_inf_via_conv(t, F) == want;
    });
  results.push_back(quad);

  std::mt19937 rng(seed);
  CheckResult rank{"rank-law"}, slope{"slope-law"}, swap{"swap-symmetry"};
  for (int i = 0; i < count; ++i) {
    const Params x = random_params(rng);
    const std::uint32_t s = static_cast<std::uint32_t>(rng());
    const std::string tag = "p=" + std::to_string(x.p) + " a=" + std::to_string(x.a) + " b=" + std::to_string(x.b) +
                            " d=" + std::to_string(x.d) + " e=" + std::to_string(x.e);
    // One tower per computation: roots of unrelated orders would otherwise
    // push the shared ambient degree to their lcm.
    struct Inputs {
      FieldTower tower;
      InputRep F, G;
      Inputs(const Params& x, std::uint32_t s) : tower(x.p) {
        std::mt19937 local(s);
        F = random_rep(tower, local, x.a, x.d);
        G = random_rep(tower, local, x.b, x.e);
      }
    };
    for (Mode mode : {Mode::InfInf, Mode::ZeroInf}) {
      const int S = mode == Mode::InfInf ? x.b * x.d + x.a * x.e : x.b * x.d - x.a * x.e;
      bool slopes_ok = false;
      check(rank, tag + " " + to_string(mode), [&] {
        Inputs in(x, s);
        const LocalRep rep = convolve(in.tower, ConvProblem{in.F, in.G, mode}).rep;
        slopes_ok = std::all_of(rep.atoms.begin(), rep.atoms.end(),
                                [&](const Atom& a) { return a.slope() == Rational(x.d * x.e, S); });
        return invariants(rep).rank == (S > 0 ? static_cast<long long>(in.F.n) * in.G.n * S : 0);
      });
      check(slope, tag + " " + to_string(mode), [&] { return slopes_ok; });
    }
    check(swap, tag, [&] {
      Inputs in(x, s);
      return lc_inf_inf(in.tower, in.F, in.G) == lc_inf_inf(in.tower, in.G, in.F);
    });
  }
  results.push_back(rank);
  results.push_back(slope);
  results.push_back(swap);

  CheckResult restriction{"restriction-identity"};
  for (int i = 0; i < count; ++i) {
    const Params x = random_params(rng);
    const Mode mode = rng() % 2 ? Mode::InfInf : Mode::ZeroInf;
    const std::uint32_t s = static_cast<std::uint32_t>(rng());
    check(restriction, "p=" + std::to_string(x.p) + " " + to_string(mode), [&] {
      FieldTower t(x.p);
      std::mt19937 local(s);
      const InputRep F = random_rep(t, local, x.a, x.d);
      const InputRep G = random_rep(t, local, x.b, x.e);
      const ConvReport rep = convolve(t, ConvProblem{F, G, mode}, ConvOptions{true});
      std::vector<Atom> restricted, stalks;
      for (const Atom& a : rep.rep.atoms)
        for (const Atom& b : restrict_pushforward(t, a, a.N).atoms) restricted.push_back(b);
      for (const StalkTrace& st : rep.stalks)
        for (int block : rep.blocks) stalks.push_back(Atom{1, st.psi, rep.tame, block});
      std::sort(restricted.begin(), restricted.end(), atom_less);
      std::sort(stalks.begin(), stalks.end(), atom_less);
      return restricted == stalks;
    });
  }
  results.push_back(restriction);

  CheckResult fourier{"dual-path-fourier"};
  for (int i = 0; i < count;) {
    const Residue p = kPrimes[rng() % kPrimes.size()];
    const int a = static_cast<int>(1 + rng() % 6), d = static_cast<int>(1 + rng() % 8);
    const std::uint32_t s = static_cast<std::uint32_t>(rng());
    if (!prime_to(a, p) || !prime_to(d, p)) continue;
    ++i;
    const std::string tag = "p=" + std::to_string(p) + " a=" + std::to_string(a) + " d=" + std::to_string(d);
    if (prime_to(a + d, p))
      check(fourier, tag + " FT(0,inf)", [&] {
        FieldTower t(p);
        std::mt19937 local(s);
        const InputRep F = random_rep(t, local, a, d);
        return ft_0_inf_direct(t, F).rep == ft_0_inf_via_conv(t, F);
      });
    if (d > a && prime_to(d - a, p))
      check(fourier, tag + " FT(inf,inf)", [&] {
        FieldTower t(p);
        std::mt19937 local(s);
        const InputRep F = random_rep(t, local, a, d);
        return ft_inf_inf_direct(t, F).rep == ft_inf_inf_via_conv(t, F);
      });
  }
  results.push_back(fourier);

  CheckResult gcd{"gcd-reduction"};
  for (int i = 0; i < count; ++i) {
    const int r = i % 2 ? 3 : 2;
    const Params x = random_params(rng, r);
    const std::uint32_t s = static_cast<std::uint32_t>(rng());
    check(gcd, "p=" + std::to_string(x.p) + " r=" + std::to_string(r), [&] {
      FieldTower t(x.p);
      std::mt19937 local(s);
      const InputRep F = random_rep(t, local, x.a, x.d);
      const InputRep G = random_rep(t, local, x.b, x.e);
      ConvProblem reduced{F, G, Mode::InfInf};
      reduced.F.a /= r;
      reduced.G.a /= r;
      LocalRep want = convolve(t, reduced).rep;
      for (Atom& a : want.atoms) a = canonical_atom(t, a.N * r, a.psi, a.tame, a.unip);
      want.sort();
      return solve(t, ConvProblem{F, G, Mode::InfInf}).rep == want;
    });
  }
  results.push_back(gcd);

  CheckResult jordan{"jordan-blocks"};
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= 6; ++m)
      check(jordan, "n=" + std::to_string(n) + " m=" + std::to_string(m), [n, m] {
        const std::vector<int> blocks = jordan_tensor(n, m);
        const std::vector<int> at_least = blocks_at_least(n, m);
        for (std::size_t k = 0; k < at_least.size(); ++k) {
          const auto c = std::count_if(blocks.begin(), blocks.end(), [k](int b) { return b >= static_cast<int>(k + 1); });
          if (c != at_least[k]) return false;
        }
        return true;
      });
  results.push_back(jordan);

  set_lift_observer(previous);
  CheckResult residuals{"newton-residuals"};
  residuals.passed = lifts - short_lifts;
  residuals.failed = short_lifts;
  if (short_lifts) residuals.first_failure = "a lift stopped at or below its requested precision";
  results.push_back(residuals);
  return results;
}

}  // namespace monodromy::cli
