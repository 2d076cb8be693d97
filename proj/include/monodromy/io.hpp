#pragma once

// JSON problem files and canonical JSON output.
//
// Problem file:
//   {"p": 7,
//    "moduli": {"2": [3, 1, 1]},            optional, constant term first
//    "F": {"a": 1, "f": [[1, 1]], "chi": "0/1", "n": 1},
//    "G": {...},                             absent for Fourier problems
//    "mode": "inf-inf" | "0-inf",            optional
//    "guard": 8}                             optional
// Coefficients are integers or element literals "[c_0,...,c_{r-1}]@r".

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "monodromy/engine.hpp"

namespace monodromy::io {

using Json = nlohmann::ordered_json;

struct ProblemFile {
  std::unique_ptr<FieldTower> tower;
  std::map<unsigned, FpPoly> moduli;  // as declared
  InputRep F;
  std::optional<InputRep> G;
  std::optional<Mode> mode;
  int guard = 8;

  /// F, G and mode as a convolution problem. Throws ParseError if G or
  /// the mode is missing and no default mode is given.
  ConvProblem conv_problem(std::optional<Mode> fallback = std::nullopt) const;
};

/// Throws ParseError naming the offending field (and the byte offset for
/// malformed JSON).
ProblemFile parse_problem(std::string_view text);
Json serialize_problem(const ProblemFile& problem);

Json to_json(const Atom& atom);
Json to_json(const LocalRep& rep);
Json to_json(const Invariants& inv);
LocalRep local_rep_from_json(FieldTower& tower, const Json& j);

/// {"<degree>": [modulus coefficients]} for every level of the tower.
Json moduli_json(FieldTower& tower);

Mode parse_mode(const std::string& s);

}  // namespace monodromy::io
