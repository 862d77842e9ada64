#include "gthick/rgnf.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace gthick;

namespace {

std::string read_data(const std::string& rel) {
  std::ifstream in(std::string(GTHICK_DATA_DIR) + "/" + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Rational> ints(std::initializer_list<long> xs) {
  std::vector<Rational> r;
  for (long x : xs) r.emplace_back(x);
  return r;
}

SourcePos error_pos(const std::string& text) {
  try {
    parse_rgnf(text);
  } catch (const RgnfSyntaxError& e) {
    return e.pos();
  }
  ADD_FAILURE() << "no syntax error for:\n" << text;
  return {};
}

}  // namespace

TEST(Rgnf, ParsesAllSixForms) {
  auto p = parse_rgnf(
      "vars X1\nV1 = 1\nV2 = X1\nV3 = -V1\nV4 = -V3 + V2\nV5 = inv V2\nV6 = inv V5 * V2\nassert V1 < V6\n");
  ASSERT_EQ(p.computed(), 6u);
  EXPECT_EQ(p.defs[0].op, RgnfOp::unit);
  EXPECT_EQ(p.defs[1].op, RgnfOp::input);
  EXPECT_EQ(p.defs[2].op, RgnfOp::negation);
  EXPECT_EQ(p.defs[3].op, RgnfOp::negated_addition);
  EXPECT_EQ(p.defs[3].j, 3u);
  EXPECT_EQ(p.defs[3].k, 2u);
  EXPECT_EQ(p.defs[4].op, RgnfOp::inversion);
  EXPECT_EQ(p.defs[5].op, RgnfOp::inverted_multiplication);
  ASSERT_EQ(p.constraints.size(), 1u);
  EXPECT_TRUE(validate(p).accepted());
  auto e = evaluate(p, ints({2}));
  EXPECT_TRUE(e.verdict.accepted()) << e.verdict.summary();
  EXPECT_EQ(*e.values.v[3], Rational(3));
  EXPECT_EQ(*e.values.v[4], make_rational(1, 2));
  EXPECT_EQ(*e.values.v[5], Rational(4));
}

TEST(Rgnf, DegreeExampleProgram) {
  auto p = parse_rgnf(read_data("programs/degree_example.rgnf"));
  EXPECT_EQ(p.inputs, 3u);
  EXPECT_EQ(p.computed(), 8u);
  ASSERT_TRUE(validate(p).accepted());
  auto e = evaluate(p, ints({2, 3, 4}));
  EXPECT_TRUE(e.verdict.accepted()) << e.verdict.summary();
  EXPECT_EQ(*e.values.v[4], Rational(-1));
  EXPECT_EQ(*e.values.v[5], Rational(5));
  EXPECT_EQ(*e.values.v[6], Rational(4));
  EXPECT_EQ(*e.values.v[7], Rational(3));
  auto bad = evaluate(p, ints({1, 3, 4}));
  ASSERT_FALSE(bad.verdict.accepted());
  EXPECT_EQ(bad.verdict.violations[0].kind, "side_condition");
  EXPECT_EQ(bad.verdict.violations[0].ids, std::vector<std::string>{"V2"});
}

TEST(Rgnf, InversionOfInput) {
  auto e = evaluate(parse_rgnf("vars X1\nV1 = 1\nV2 = X1\nV3 = inv V2\n"), ints({2}));
  EXPECT_TRUE(e.verdict.accepted());
  EXPECT_EQ(*e.values.v[2], make_rational(1, 2));
}

TEST(Rgnf, IndexOrderViolations) {
  const char* head = "vars X1\nV1 = 1\nV2 = X1\n";
  for (std::string body : {"V3 = -V3\n", "V3 = -V4\nV4 = 1\n", "V3 = -V4 + V1\nV4 = 1\n", "V3 = -V1 + V4\nV4 = 1\n",
                           "V3 = inv V4\nV4 = X1\n", "V3 = inv V4 * V2\nV4 = 1\n", "V3 = inv V1 * V4\nV4 = 1\n"}) {
    auto p = parse_rgnf(head + body);
    auto v = validate(p);
    ASSERT_FALSE(v.accepted()) << body;
    EXPECT_EQ(v.violations[0].kind, "index_order") << body;
    EXPECT_THROW(evaluate(p, ints({2})), InputError);
  }
}

TEST(Rgnf, ConstraintOutOfRange) {
  auto p = parse_rgnf("V1 = 1\nassert V1 < V2\n");
  auto v = validate(p);
  ASSERT_FALSE(v.accepted());
  EXPECT_EQ(v.violations[0].kind, "constraint_range");
}

TEST(Rgnf, RuntimeSideConditions) {
  auto run = [](const std::string& text, std::vector<Rational> x) { return evaluate(parse_rgnf(text), x).verdict; };
  // negation accepts exactly 1 and rejects values below
  EXPECT_TRUE(run("V1 = 1\nV2 = -V1\n", {}).accepted());
  EXPECT_FALSE(run("vars X1\nV1 = X1\nV2 = -V1\nV3 = -V2\n", ints({2})).accepted());
  // negated addition needs V_j < 0
  EXPECT_FALSE(run("V1 = 1\nV2 = -V1 + V1\n", {}).accepted());
  // inversion needs V_j > 1; 1 itself fails
  EXPECT_FALSE(run("V1 = 1\nV2 = inv V1\n", {}).accepted());
  // inverted multiplication needs 0 < V_j < 1 and V_k > 1
  EXPECT_TRUE(run("vars X1\nV1 = X1\nV2 = inv V1\nV3 = inv V2 * V1\n", ints({3})).accepted());
  EXPECT_FALSE(run("vars X1\nV1 = X1\nV2 = inv V1 * V1\n", ints({3})).accepted());
  auto c = run("vars X1\nV1 = 1\nV2 = X1\nassert V2 < V1\n", ints({2}));
  ASSERT_EQ(c.violations.size(), 1u);
  EXPECT_EQ(c.violations[0].kind, "constraint");
}

TEST(Rgnf, SyntaxDiagnostics) {
  EXPECT_EQ(error_pos("V1 = 1\nV1 = 1\n").line, 2u);
  SourcePos p = error_pos("vars X1\nV1 = X2\n");
  EXPECT_EQ(p.line, 2u);
  EXPECT_EQ(p.column, 6u);
  p = error_pos("V1 = 1\nV2 = -V7\n");
  EXPECT_EQ(p.line, 2u);
  EXPECT_EQ(p.column, 7u);
  EXPECT_EQ(error_pos("V1 = 2\n").column, 6u);
  EXPECT_EQ(error_pos("V1 = 1 1\n").column, 8u);
  EXPECT_EQ(error_pos("V1 = -V1 +\n").column, 11u);
  EXPECT_EQ(error_pos("V1 = 1\nV3 = 1\n").line, 2u);
  EXPECT_EQ(error_pos("V1 = 1 $\n").column, 8u);
  EXPECT_EQ(error_pos("vars X2\n").column, 6u);
  EXPECT_EQ(error_pos("V0 = 1\n").column, 1u);
  EXPECT_EQ(error_pos("V1 = 1\nvars X1\n").line, 2u);
  EXPECT_NO_THROW(parse_rgnf("# only comments\n\n   # more\n"));
}

TEST(Rgnf, InputAssignments) {
  auto x = parse_inputs("X2=3/2, X1 = 2", 2);
  EXPECT_EQ(x[0], Rational(2));
  EXPECT_EQ(x[1], make_rational(3, 2));
  EXPECT_THROW(parse_inputs("X1=2", 2), InputError);
  EXPECT_THROW(parse_inputs("X1=2,X1=3", 1), InputError);
  EXPECT_THROW(parse_inputs("X3=2", 2), InputError);
  EXPECT_THROW(parse_inputs("X1=abc", 1), InputError);
}

// Random programs built so that every side condition holds.
TEST(Rgnf, RandomProgramsProperties) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 3;
    RgnfProgram p;
    p.inputs = n;
    std::vector<Rational> x;
    for (std::size_t j = 0; j < n; ++j) x.push_back(make_rational(static_cast<long>(4 + rng() % 20), 2 + rng() % 2));
    std::vector<Rational> vals;
    auto pick = [&](auto pred) -> std::size_t {
      std::vector<std::size_t> ok;
      for (std::size_t i = 0; i < vals.size(); ++i)
        if (pred(vals[i])) ok.push_back(i + 1);
      return ok.empty() ? 0 : ok[rng() % ok.size()];
    };
    for (int step = 0; step < 12; ++step) {
      RgnfInstruction ins;
      Rational val;
      int kind = step == 0 ? 0 : static_cast<int>(rng() % 6);
      auto ge1 = [](const Rational& r) { return r >= 1; };
      auto gt1 = [](const Rational& r) { return r > 1; };
      std::size_t j = 0, k = 0;
      if (kind == 2 && (j = pick(ge1))) ins = {RgnfOp::negation, j, 0, {}}, val = -vals[j - 1];
      else if (kind == 3 && (j = pick([](const Rational& r) { return r < 0; })) && (k = pick(ge1)))
        ins = {RgnfOp::negated_addition, j, k, {}}, val = -vals[j - 1] + vals[k - 1];
      else if (kind == 4 && (j = pick(gt1))) ins = {RgnfOp::inversion, j, 0, {}}, val = 1 / vals[j - 1];
      else if (kind == 5 && (j = pick([](const Rational& r) { return r > 0 && r < 1; })) && (k = pick(gt1)))
        ins = {RgnfOp::inverted_multiplication, j, k, {}}, val = vals[k - 1] / vals[j - 1];
      else if (kind == 1) {
        std::size_t xi = 1 + rng() % n;
        ins = {RgnfOp::input, xi, 0, {}}, val = x[xi - 1];
      } else ins = {RgnfOp::unit, 0, 0, {}}, val = 1;
      p.defs.push_back(ins);
      vals.push_back(val);
    }
    ASSERT_TRUE(validate(p).accepted());
    auto e = evaluate(p, x);
    ASSERT_TRUE(e.verdict.accepted()) << to_text(p) << e.verdict.summary();
    for (std::size_t i = 0; i < vals.size(); ++i) EXPECT_EQ(*e.values.v[i], vals[i]);
    // round trip through text
    auto q = parse_rgnf(to_text(p));
    EXPECT_EQ(to_text(q), to_text(p));
    // prefix evaluation agrees with the full evaluation
    std::size_t m = 1 + rng() % p.computed();
    auto pe = evaluate(prefix(p, m), x);
    for (std::size_t i = 0; i < m; ++i) EXPECT_EQ(*pe.values.v[i], *e.values.v[i]);
  }
}
