#include <gtest/gtest.h>

#include "../support/builders.hpp"
#include "monodromy/io.hpp"

using namespace monodromy;
using testing_support::input;
using testing_support::psi;

namespace {

const char* kKloosterman = R"({
  "p": 7,
  "F": {"a": 1, "f": [[1, 1]], "chi": "0/1", "n": 1},
  "G": {"a": 1, "f": [[1, 1]], "chi": "0/1", "n": 1}
})";

std::string parse_error_of(const std::string& text) {
  try {
    io::parse_problem(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ParseProblem, MinimalKloosterman) {
  io::ProblemFile pf = io::parse_problem(kKloosterman);
  EXPECT_EQ(pf.tower->characteristic(), 7u);
  EXPECT_EQ(pf.F.degree(), 1);
  ASSERT_TRUE(pf.G.has_value());
  EXPECT_FALSE(pf.mode.has_value());
  EXPECT_EQ(pf.guard, 8);
  const ConvProblem cp = pf.conv_problem(Mode::InfInf);
  EXPECT_EQ(cp.mode, Mode::InfInf);
  EXPECT_THROW(pf.conv_problem(), ParseError);
}

TEST(ParseProblem, RejectsChiDenominatorDivisibleByP) {
  const std::string msg = parse_error_of(R"({"p": 7, "F": {"a": 1, "f": [[1, 1]], "chi": "2/7"}})");
  EXPECT_NE(msg.find("F.chi"), std::string::npos) << msg;
}

TEST(ParseProblem, RejectsZeroLeadingCoefficient) {
  const std::string msg = parse_error_of(R"({"p": 7, "F": {"a": 1, "f": [[1, 1], [3, 7]]}})");
  EXPECT_NE(msg.find("degree mismatch"), std::string::npos) << msg;
}

TEST(ParseProblem, NamesOffendingField) {
  EXPECT_NE(parse_error_of(R"({"p": 7, "F": {"f": [[1, 1]]}})").find("F.a"), std::string::npos);
  EXPECT_NE(parse_error_of(R"({"p": 7, "F": {"a": 1, "f": [[1, "x"]]}})").find("F.f[0][1]"), std::string::npos);
  EXPECT_NE(parse_error_of(R"({"p": 8, "F": {"a": 1, "f": [[1, 1]]}})").find("p:"), std::string::npos);
  EXPECT_NE(parse_error_of(R"({"p": 7, "F": {"a": 1, "f": [[1, 1]]}, "mode": "sideways"})").find("mode"),
            std::string::npos);
  EXPECT_NE(parse_error_of(R"({"p": 7, "F": )").find("byte"), std::string::npos);
}

TEST(ParseProblem, DeclaredModuliAndLiterals) {
  io::ProblemFile pf = io::parse_problem(R"({
    "p": 7, "moduli": {"2": [3, 1, 1]},
    "F": {"a": 1, "f": [[2, "[1,2]@2"], [0, -1]], "chi": "1/3", "n": 2}})");
  EXPECT_EQ(pf.tower->modulus(2), (FpPoly{3, 1, 1}));
  EXPECT_EQ(pf.F.leading(), pf.tower->from_coeffs({1, 2}, 2));
  EXPECT_EQ(pf.F.f.at(0), pf.tower->from_int(6));
  EXPECT_EQ(pf.F.chi, TameChar(1, 3));
  // x^2 - 1 is reducible.
  EXPECT_NE(parse_error_of(R"({"p": 7, "moduli": {"2": [6, 0, 1]}, "F": {"a": 1, "f": [[1, 1]]}})")
                .find("moduli.2"),
            std::string::npos);
}

TEST(SerializeProblem, IdempotentAfterFirstNormalization) {
  const std::string raw = R"({"guard": 5, "mode": "0-inf", "p": 11,
    "G": {"f": [[1, 14], [1, 1], [0, 0]], "a": 3},
    "F": {"a": 2, "f": [[2, 1]], "chi": 3}})";
  const io::Json once = io::serialize_problem(io::parse_problem(raw));
  const io::Json twice = io::serialize_problem(io::parse_problem(once.dump()));
  EXPECT_EQ(once.dump(), twice.dump());
  EXPECT_EQ(once["G"]["f"].dump(), R"([[1,"[4]@1"]])");
  EXPECT_EQ(once["F"]["chi"], "0/1");
}

TEST(LocalRepJson, CanonicalRoundTrip) {
  FieldTower t(5);
  LocalRep rep{Point::Infinity,
               {canonical_atom(t, 3, psi(t, {{2, 2}, {1, 2}}), TameChar(), 1),
                canonical_atom(t, 2, psi(t, {{1, 3}}), TameChar(1, 2), 2)}};
  rep.sort();
  const io::Json j = io::to_json(rep);
  EXPECT_EQ(j.dump(),
            R"({"point":"inf","atoms":[{"N":3,"psi":[[2,"[2]@1"],[1,"[2]@1"]],"chi":"0/1","unip":1},)"
            R"({"N":2,"psi":[[1,"[2]@1"]],"chi":"1/2","unip":2}]})");
  EXPECT_EQ(io::local_rep_from_json(t, j), rep);
}

TEST(LocalRepJson, ReadingCanonicalizes) {
  FieldTower t(5);
  // t^5 folds to t, and 3t lies in the orbit of 2t under t -> -t.
  const io::Json j = io::Json::parse(R"({"point": "inf", "atoms": [{"N": 2, "psi": [[5, 3]], "chi": "1/2", "unip": 1}]})");
  const LocalRep rep = io::local_rep_from_json(t, j);
  ASSERT_EQ(rep.atoms.size(), 1u);
  EXPECT_EQ(rep.atoms[0], (Atom{2, psi(t, {{1, 2}}), TameChar(1, 2), 1}));
}
