// Command-line front end: reads a JSON problem file, runs one of the local
// convolution or Fourier computations, prints canonical JSON on stdout.
//
// Exit codes: 0 success, 1 usage/parse/other error, 2 hypothesis violation,
// 3 precision exhausted.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "monodromy/fourier.hpp"
#include "monodromy/io.hpp"
#include "selfcheck.hpp"

using namespace monodromy;
using io::Json;

namespace {

struct Flags {
  std::string file;
  std::optional<int> guard;
  bool trace = false;
  bool pretty = false;
  std::string path = "direct";
  std::uint32_t seed = 1;
  int count = 40;
};

std::string read_input(const std::string& file) {
  if (file == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open " + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Residual valuations of every lift made while the collector is alive.
class LiftCollector {
 public:
  LiftCollector() {
    previous_ = set_lift_observer([this](int residual, int precision) {
      residuals_.push_back(residual);
      precision_ = precision;
    });
  }
  ~LiftCollector() { set_lift_observer(previous_); }
  const std::vector<int>& residuals() const { return residuals_; }
  std::optional<int> precision() const { return precision_; }

 private:
  LiftObserver previous_;
  std::vector<int> residuals_;
  std::optional<int> precision_;
};

Json header(FieldTower& tower, const std::string& command, int guard, const LiftCollector& lifts) {
  Json j;
  j["command"] = command;
  j["p"] = tower.characteristic();
  j["moduli"] = io::moduli_json(tower);
  j["guard"] = guard;
  j["precision"] = lifts.precision() ? Json(*lifts.precision()) : Json(nullptr);
  j["residual_valuations"] = lifts.residuals();
  return j;
}

Json stalk_trace(const ConvReport& rep) {
  Json stalks = Json::array();
  for (const StalkTrace& st : rep.stalks)
    stalks.push_back(Json{{"index", st.index},
                          {"alpha", st.alpha.to_string()},
                          {"z", st.z.to_string()},
                          {"residual_valuation", st.residual_valuation},
                          {"h", st.h.to_string()},
                          {"psi", st.psi.to_string()}});
  Json roots = Json::array();
  for (const Fq& r : rep.roots) roots.push_back(r.to_string());
  return Json{{"H", rep.H.to_string()},
              {"common_pushforward", rep.r},
              {"d", rep.d},
              {"e", rep.e},
              {"c", rep.c},
              {"roots", roots},
              {"N", rep.N},
              {"tame", rep.tame.to_string()},
              {"blocks", rep.blocks},
              {"stalks", stalks}};
}

Json fourier_trace(const FourierTrace& tr) {
  return Json{{"P", tr.P.to_string()},
              {"alpha", tr.alpha.to_string()},
              {"z", tr.z.to_string()},
              {"residual_valuation", tr.residual_valuation},
              {"g", tr.g.to_string()}};
}

std::string rational_string(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

void print_pretty(const Json& out, const LocalRep& rep) {
  std::cout << out["command"].get<std::string>() << " over F_" << out["p"].get<Residue>() << "\n";
  for (const auto& [deg, poly] : out["moduli"].items()) {
    if (deg == "1") continue;
    std::cout << "  level " << deg << " modulus (constant term first): " << poly.dump() << "\n";
  }
  if (!out["precision"].is_null())
    std::cout << "  lifted to precision " << out["precision"] << ", residual valuations "
              << out["residual_valuations"].dump() << "\n";
  const Invariants inv = invariants(rep);
  std::cout << "  local monodromy at " << to_string(rep.point) << ": rank " << inv.rank << ", Swan conductor "
            << inv.swan << "\n";
  if (rep.atoms.empty()) std::cout << "    0\n";
  for (const Atom& a : rep.atoms)
    std::cout << "    [" << a.N << "]_*( L_psi(" << a.psi.to_string() << ") (x) L_chi(" << a.tame.to_string()
              << ") (x) U_" << a.unip << " )   slope " << rational_string(a.slope()) << "\n";
}

void emit(const Flags& flags, Json out, const LocalRep& rep) {
  if (flags.pretty) {
    print_pretty(out, rep);
    if (flags.trace && out.contains("trace")) std::cout << out["trace"].dump(2) << "\n";
    return;
  }
  std::cout << out.dump(2) << "\n";
}

int run_conv(const Flags& flags, Mode mode, const std::string& command) {
  io::ProblemFile pf = io::parse_problem(read_input(flags.file));
  if (flags.guard) pf.guard = *flags.guard;
  LiftCollector lifts;
  const ConvReport rep = solve(*pf.tower, pf.conv_problem(mode));
  Json out = header(*pf.tower, command, pf.guard, lifts);
  out.update(io::to_json(rep.rep));
  if (flags.trace) out["trace"] = stalk_trace(rep);
  emit(flags, out, rep.rep);
  return 0;
}

int run_fourier(const Flags& flags, bool zero_side, const std::string& command) {
  io::ProblemFile pf = io::parse_problem(read_input(flags.file));
  if (flags.guard) pf.guard = *flags.guard;
  FieldTower& tower = *pf.tower;
  LiftCollector lifts;
  std::optional<FourierResult> direct;
  std::optional<LocalRep> conv;
  if (flags.path != "conv")
    direct = zero_side ? ft_0_inf_direct(tower, pf.F, pf.guard) : ft_inf_inf_direct(tower, pf.F, pf.guard);
  if (flags.path != "direct")
    conv = zero_side ? ft_0_inf_via_conv(tower, pf.F, pf.guard) : ft_inf_inf_via_conv(tower, pf.F, pf.guard);
  if (direct && conv && !(direct->rep == *conv))
    throw Error("direct and convolution paths disagree:\n" + io::to_json(direct->rep).dump() + "\n" +
                io::to_json(*conv).dump());
  const LocalRep& rep = direct ? direct->rep : *conv;
  Json out = header(tower, command, pf.guard, lifts);
  out["path"] = flags.path;
  out.update(io::to_json(rep));
  if (flags.trace && direct) out["trace"] = fourier_trace(direct->trace);
  emit(flags, out, rep);
  return 0;
}

int run_invariants(const Flags& flags) {
  const std::string text = read_input(flags.file);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  // Either a local representation (with "p" and "atoms") or a problem file.
  LocalRep rep;
  std::unique_ptr<FieldTower> owned;
  io::ProblemFile pf;
  FieldTower* tower = nullptr;
  std::string source;
  if (j.contains("atoms")) {
    if (!j.contains("p") || !j["p"].is_number_integer()) throw ParseError("p: missing");
    owned = std::make_unique<FieldTower>(j["p"].get<Residue>());
    if (j.contains("moduli"))
      for (const auto& [deg, poly] : j["moduli"].items()) {
        FpPoly m;
        for (const Json& c : poly) m.push_back(c.get<Residue>());
        const unsigned degree = static_cast<unsigned>(std::stoul(deg));
        if (degree > 1) owned->set_modulus(degree, m);
      }
    tower = owned.get();
    rep = io::local_rep_from_json(*tower, j);
    source = "local-rep";
  } else {
    pf = io::parse_problem(text);
    if (flags.guard) pf.guard = *flags.guard;
    tower = pf.tower.get();
    rep = solve(*tower, pf.conv_problem()).rep;
    source = to_string(*pf.mode);
  }
  const Invariants inv = invariants(rep);
  Json out;
  out["command"] = "invariants";
  out["source"] = source;
  out["p"] = tower->characteristic();
  out.update(io::to_json(inv));
  if (flags.pretty) {
    std::cout << "rank " << inv.rank << ", Swan conductor " << inv.swan << ", slopes";
    for (const Rational& s : inv.slopes) std::cout << " " << rational_string(s);
    std::cout << "\n";
    return 0;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_selfcheck(const Flags& flags) {
  const auto results = cli::run_selfcheck(flags.seed, flags.count);
  int passed = 0, failed = 0;
  Json checks = Json::array();
  for (const auto& r : results) {
    passed += r.passed;
    failed += r.failed;
    Json c{{"name", r.name}, {"passed", r.passed}, {"failed", r.failed}};
    if (r.failed) c["first_failure"] = r.first_failure;
    checks.push_back(c);
  }
  if (flags.pretty) {
    for (const auto& r : results)
      std::printf("%-22s %4d passed %4d failed%s%s\n", r.name.c_str(), r.passed, r.failed,
                  r.failed ? "  first: " : "", r.first_failure.c_str());
    std::printf("total %d passed, %d failed\n", passed, failed);
  } else {
    std::cout << Json{{"command", "selfcheck"}, {"seed", flags.seed}, {"count", flags.count},
                      {"checks", checks}, {"passed", passed}, {"failed", failed}}
                     .dump(2)
              << "\n";
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local monodromy of multiplicative convolutions and local Fourier transforms"};
  app.require_subcommand(1);
  Flags flags;
  int guard = 8;
  CLI::Option* guard_opt =
      app.add_option("--guard", guard, "extra t^{-1}-adic digits beyond the required precision (default 8)")
          ->check(CLI::NonNegativeNumber);
  app.add_flag("--trace", flags.trace, "include roots, lifts and stalk series in the output");
  app.add_flag("--pretty", flags.pretty, "human-readable report instead of JSON");

  auto with_file = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", flags.file, "problem file (JSON), or - for stdin")->required();
    return sub;
  };
  CLI::App* conv_ii = with_file("conv-inf-inf", "local convolution, both inputs at infinity");
  CLI::App* conv_0i = with_file("conv-0-inf", "local convolution, F at zero and G at infinity");
  CLI::App* ft0 = with_file("ft0inf", "local Fourier transform FT(0, inf) of F");
  CLI::App* ftinf = with_file("ftinfinf", "local Fourier transform FT(inf, inf) of F");
  for (CLI::App* sub : {ft0, ftinf})
    sub->add_option("--path", flags.path, "direct, conv, or both (compute twice and compare)")
        ->check(CLI::IsMember({"direct", "conv", "both"}));
  CLI::App* inv = with_file("invariants", "rank, Swan conductor and slopes of a result or problem");
  CLI::App* self = app.add_subcommand("selfcheck", "run the property suite");
  self->add_option("--seed", flags.seed, "random seed");
  self->add_option("--count", flags.count, "random instances per property")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);
  if (guard_opt->count() > 0) flags.guard = guard;

  try {
    if (conv_ii->parsed()) return run_conv(flags, Mode::InfInf, "conv-inf-inf");
    if (conv_0i->parsed()) return run_conv(flags, Mode::ZeroInf, "conv-0-inf");
    if (ft0->parsed()) return run_fourier(flags, true, "ft0inf");
    if (ftinf->parsed()) return run_fourier(flags, false, "ftinfinf");
    if (inv->parsed()) return run_invariants(flags);
    if (self->parsed()) return run_selfcheck(flags);
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 2;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
