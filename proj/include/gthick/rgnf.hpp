// Normal-form programs over input variables X1..Xn and computed variables
// V1..Vm, each V defined by one of six instruction types, plus assertions
// Vi < Vj. Text format, one statement per line, '#' starts a comment:
//
//   vars X1 X2 X3
//   V1 = 1
//   V2 = X1
//   V3 = -V1            # negation
//   V4 = -V3 + V2       # negated addition
//   V5 = inv V2         # inversion
//   V6 = inv V5 * V2    # inverted multiplication
//   assert V1 < V6
#ifndef GTHICK_RGNF_HPP
#define GTHICK_RGNF_HPP

#include "gthick/geometry.hpp"
#include "gthick/verdict.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gthick {

enum class RgnfOp { unit, input, negation, negated_addition, inversion, inverted_multiplication };

inline std::string to_string(RgnfOp op) {
  switch (op) {
    case RgnfOp::unit: return "unit";
    case RgnfOp::input: return "input";
    case RgnfOp::negation: return "negation";
    case RgnfOp::negated_addition: return "negated_addition";
    case RgnfOp::inversion: return "inversion";
    case RgnfOp::inverted_multiplication: return "inverted_multiplication";
  }
  return "?";
}

struct SourcePos {
  std::size_t line = 0, column = 0;
};

// Indices are 1-based as written. For `input`, j names X_j; otherwise j and k name V's.
struct RgnfInstruction {
  RgnfOp op = RgnfOp::unit;
  std::size_t j = 0, k = 0;
  SourcePos pos;

  std::vector<std::size_t> operands() const {
    switch (op) {
      case RgnfOp::unit:
      case RgnfOp::input: return {};
      case RgnfOp::negation:
      case RgnfOp::inversion: return {j};
      default: return {j, k};
    }
  }
};

struct RgnfConstraint {
  std::size_t lhs = 0, rhs = 0;  // V_lhs < V_rhs
  SourcePos pos;
};

struct RgnfProgram {
  std::size_t inputs = 0;
  std::vector<RgnfInstruction> defs;  // defs[i-1] defines V_i
  std::vector<RgnfConstraint> constraints;

  std::size_t computed() const { return defs.size(); }
};

class RgnfSyntaxError : public InputError {
 public:
  RgnfSyntaxError(SourcePos pos, const std::string& what)
      : InputError(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + what), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

namespace detail {

struct RgnfToken {
  std::string text;
  SourcePos pos;
};

inline std::vector<RgnfToken> rgnf_tokens(const std::string& line, std::size_t lineno) {
  std::vector<RgnfToken> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char ch = line[i];
    if (ch == '#') break;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    SourcePos pos{lineno, i + 1};
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < line.size() && std::isalnum(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({line.substr(i, j - i), pos});
      i = j;
    } else if (std::string("=-+*<").find(ch) != std::string::npos) {
      out.push_back({std::string(1, ch), pos});
      ++i;
    } else {
      throw RgnfSyntaxError(pos, std::string("unexpected character '") + ch + "'");
    }
  }
  return out;
}

// Parses "V12" / "X3"; returns 0 when the token is not of that shape.
inline std::size_t rgnf_index(const std::string& tok, char prefix) {
  if (tok.size() < 2 || tok[0] != prefix || tok[1] == '0') return 0;
  for (std::size_t i = 1; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return 0;
  if (tok.size() > 10) return 0;
  return static_cast<std::size_t>(std::stoull(tok.substr(1)));
}

}  // namespace detail

inline RgnfProgram parse_rgnf(const std::string& text) {
  using detail::RgnfToken;
  RgnfProgram p;
  bool have_vars = false;
  std::map<std::size_t, RgnfInstruction> defs;
  std::vector<std::pair<std::size_t, SourcePos>> refs;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  SourcePos last_pos{1, 1};
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::rgnf_tokens(line, lineno);
    if (toks.empty()) continue;
    std::size_t at = 0;
    auto eol = SourcePos{lineno, line.size() + 1};
    auto peek = [&]() -> const RgnfToken* { return at < toks.size() ? &toks[at] : nullptr; };
    auto expect = [&](const std::string& what) -> const RgnfToken& {
      if (at >= toks.size()) throw RgnfSyntaxError(eol, "expected " + what + ", found end of line");
      return toks[at++];
    };
    auto expect_v = [&]() {
      const auto& t = expect("computed variable");
      std::size_t idx = detail::rgnf_index(t.text, 'V');
      if (idx == 0) throw RgnfSyntaxError(t.pos, "expected computed variable, found '" + t.text + "'");
      return std::make_pair(idx, t.pos);
    };
    auto expect_sym = [&](const std::string& s) {
      const auto& t = expect("'" + s + "'");
      if (t.text != s) throw RgnfSyntaxError(t.pos, "expected '" + s + "', found '" + t.text + "'");
    };
    const RgnfToken& head = toks[0];
    if (head.text == "vars") {
      if (have_vars) throw RgnfSyntaxError(head.pos, "duplicate vars header");
      if (!defs.empty()) throw RgnfSyntaxError(head.pos, "vars header must precede definitions");
      have_vars = true;
      for (at = 1; at < toks.size(); ++at) {
        std::size_t idx = detail::rgnf_index(toks[at].text, 'X');
        if (idx != p.inputs + 1)
          throw RgnfSyntaxError(toks[at].pos, "expected X" + std::to_string(p.inputs + 1) + ", found '" + toks[at].text + "'");
        ++p.inputs;
      }
      continue;
    }
    if (head.text == "assert") {
      at = 1;
      auto lhs = expect_v();
      expect_sym("<");
      auto rhs = expect_v();
      p.constraints.push_back({lhs.first, rhs.first, head.pos});
    } else {
      auto target = expect_v();
      if (defs.count(target.first))
        throw RgnfSyntaxError(target.second, "duplicate definition of V" + std::to_string(target.first));
      expect_sym("=");
      RgnfInstruction ins;
      ins.pos = head.pos;
      const auto& t = expect("expression");
      if (t.text == "1") {
        ins.op = RgnfOp::unit;
      } else if (std::size_t x = detail::rgnf_index(t.text, 'X')) {
        if (x > p.inputs) throw RgnfSyntaxError(t.pos, "undefined input variable '" + t.text + "'");
        ins.op = RgnfOp::input;
        ins.j = x;
      } else if (t.text == "-" || t.text == "inv") {
        bool neg = t.text == "-";
        auto a = expect_v();
        refs.push_back(a);
        ins.j = a.first;
        ins.op = neg ? RgnfOp::negation : RgnfOp::inversion;
        if (peek()) {
          expect_sym(neg ? "+" : "*");
          auto b = expect_v();
          refs.push_back(b);
          ins.k = b.first;
          ins.op = neg ? RgnfOp::negated_addition : RgnfOp::inverted_multiplication;
        }
      } else {
        throw RgnfSyntaxError(t.pos, "unexpected '" + t.text + "' in expression");
      }
      defs[target.first] = ins;
      last_pos = head.pos;
    }
    if (peek()) throw RgnfSyntaxError(peek()->pos, "trailing '" + peek()->text + "'");
  }
  for (const auto& [idx, pos] : refs)
    if (!defs.count(idx)) throw RgnfSyntaxError(pos, "undefined reference to V" + std::to_string(idx));
  std::size_t expected = 1;
  for (const auto& [idx, ins] : defs) {
    if (idx != expected) throw RgnfSyntaxError(last_pos, "V" + std::to_string(expected) + " is never defined");
    p.defs.push_back(ins);
    ++expected;
  }
  return p;
}

inline std::string to_text(const RgnfProgram& p) {
  std::ostringstream out;
  out << "vars";
  for (std::size_t j = 1; j <= p.inputs; ++j) out << " X" << j;
  out << '\n';
  for (std::size_t i = 1; i <= p.defs.size(); ++i) {
    const auto& d = p.defs[i - 1];
    out << 'V' << i << " = ";
    switch (d.op) {
      case RgnfOp::unit: out << '1'; break;
      case RgnfOp::input: out << 'X' << d.j; break;
      case RgnfOp::negation: out << "-V" << d.j; break;
      case RgnfOp::negated_addition: out << "-V" << d.j << " + V" << d.k; break;
      case RgnfOp::inversion: out << "inv V" << d.j; break;
      case RgnfOp::inverted_multiplication: out << "inv V" << d.j << " * V" << d.k; break;
    }
    out << '\n';
  }
  for (const auto& c : p.constraints) out << "assert V" << c.lhs << " < V" << c.rhs << '\n';
  return out.str();
}

/// Static checks only: operand indices precede the defined variable and
/// assertions name existing computed variables.
inline Verdict validate(const RgnfProgram& p) {
  Verdict v;
  const std::size_t m = p.computed();
  for (std::size_t i = 1; i <= m; ++i) {
    const auto& d = p.defs[i - 1];
    const std::string vi = "V" + std::to_string(i);
    if (d.op == RgnfOp::input && (d.j == 0 || d.j > p.inputs))
      v.reject("input_range", {vi}, "X" + std::to_string(d.j) + " is not declared");
    for (std::size_t o : d.operands()) {
      if (o == 0 || o > m) v.reject("operand_range", {vi}, "V" + std::to_string(o) + " is not defined");
      else if (o >= i) v.reject("index_order", {vi, "V" + std::to_string(o)}, to_string(d.op) + " must use earlier variables");
    }
  }
  for (const auto& c : p.constraints)
    for (std::size_t o : {c.lhs, c.rhs})
      if (o == 0 || o > m)
        v.reject("constraint_range", {"V" + std::to_string(c.lhs), "V" + std::to_string(c.rhs)},
                 "V" + std::to_string(o) + " is not defined");
  return v;
}

struct Valuation {
  std::vector<Rational> x;               // x[j-1] = X_j
  std::vector<std::optional<Rational>> v;  // v[i-1] = V_i, empty where undefined
};

struct Evaluation {
  Valuation values;
  Verdict verdict;
};

/// Exact evaluation in index order; the verdict collects every failed runtime
/// side condition and assertion.
inline Evaluation evaluate(const RgnfProgram& p, const std::vector<Rational>& x) {
  if (x.size() != p.inputs)
    throw InputError("expected " + std::to_string(p.inputs) + " input values, got " + std::to_string(x.size()));
  if (auto st = validate(p); !st.accepted()) throw InputError("program fails static checks: " + st.summary());
  Evaluation e;
  e.values.x = x;
  auto& val = e.values.v;
  val.assign(p.computed(), std::nullopt);
  auto name = [](char c, std::size_t i) { return std::string(1, c) + std::to_string(i); };
  auto require = [&](bool ok, std::size_t i, const std::string& var, const Rational& value, const std::string& cond) {
    if (!ok)
      e.verdict.reject("side_condition", {name('V', i)}, var + " " + cond + " fails (" + var + " = " + to_string(value) + ")");
  };
  for (std::size_t i = 1; i <= p.computed(); ++i) {
    const auto& d = p.defs[i - 1];
    std::optional<Rational> a, b;
    if (d.op != RgnfOp::unit && d.op != RgnfOp::input) a = val[d.j - 1];
    if (d.op == RgnfOp::negated_addition || d.op == RgnfOp::inverted_multiplication) b = val[d.k - 1];
    const std::string vj = name('V', d.j), vk = name('V', d.k);
    switch (d.op) {
      case RgnfOp::unit: val[i - 1] = Rational(1); break;
      case RgnfOp::input: {
        const Rational& xv = x[d.j - 1];
        require(xv > 1, i, name('X', d.j), xv, "> 1");
        val[i - 1] = xv;
        break;
      }
      case RgnfOp::negation:
        if (!a) break;
        require(*a >= 1, i, vj, *a, ">= 1");
        val[i - 1] = Rational(-*a);
        break;
      case RgnfOp::negated_addition:
        if (!a || !b) break;
        require(*a < 0, i, vj, *a, "< 0");
        require(*b >= 1, i, vk, *b, ">= 1");
        val[i - 1] = Rational(-*a + *b);
        break;
      case RgnfOp::inversion:
      case RgnfOp::inverted_multiplication:
        if (!a || (d.op == RgnfOp::inverted_multiplication && !b)) break;
        if (d.op == RgnfOp::inversion) {
          require(*a > 1, i, vj, *a, "> 1");
        } else {
          require(*a > 0 && *a < 1, i, vj, *a, "in (0, 1)");
          require(*b > 1, i, vk, *b, "> 1");
        }
        if (*a == 0) {
          e.verdict.reject("division_by_zero", {name('V', i)}, vj + " = 0");
          break;
        }
        val[i - 1] = d.op == RgnfOp::inversion ? Rational(1 / *a) : Rational(*b / *a);
        break;
    }
  }
  for (const auto& c : p.constraints) {
    const auto &l = val[c.lhs - 1], &r = val[c.rhs - 1];
    if (!l || !r || !(*l < *r))
      e.verdict.reject("constraint", {name('V', c.lhs), name('V', c.rhs)},
                       name('V', c.lhs) + " < " + name('V', c.rhs) + " fails" +
                           (l && r ? " (" + to_string(*l) + " vs " + to_string(*r) + ")" : " (undefined)"));
  }
  return e;
}

/// Program restricted to V1..Vm and the assertions among them.
inline RgnfProgram prefix(const RgnfProgram& p, std::size_t m) {
  RgnfProgram q;
  q.inputs = p.inputs;
  q.defs.assign(p.defs.begin(), p.defs.begin() + static_cast<std::ptrdiff_t>(std::min(m, p.defs.size())));
  for (const auto& c : p.constraints)
    if (c.lhs <= q.defs.size() && c.rhs <= q.defs.size()) q.constraints.push_back(c);
  return q;
}

/// Parses "X1=2,X2=3/2" into positional input values.
inline std::vector<Rational> parse_inputs(const std::string& text, std::size_t n) {
  std::vector<std::optional<Rational>> got(n);
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("expected Xj=value, got '" + item + "'");
    std::string lhs = item.substr(0, eq);
    lhs.erase(0, lhs.find_first_not_of(' '));
    lhs.erase(lhs.find_last_not_of(' ') + 1);
    std::size_t j = detail::rgnf_index(lhs, 'X');
    if (j == 0 || j > n) throw InputError("unknown input variable '" + lhs + "'");
    if (got[j - 1]) throw InputError("input " + lhs + " given twice");
    std::string rhs = item.substr(eq + 1);
    rhs.erase(0, rhs.find_first_not_of(' '));
    rhs.erase(rhs.find_last_not_of(' ') + 1);
    try {
      got[j - 1] = parse_rational(rhs);
    } catch (const std::invalid_argument& err) {
      throw InputError(err.what());
    }
  }
  std::vector<Rational> x;
  for (std::size_t j = 0; j < n; ++j) {
    if (!got[j]) throw InputError("missing value for X" + std::to_string(j + 1));
    x.push_back(*got[j]);
  }
  return x;
}

}  // namespace gthick

#endif
