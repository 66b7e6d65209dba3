#include <catch2/catch_amalgamated.hpp>

#include <cctype>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "orlicz/expr.hpp"

using orlicz::expr;

namespace {

double ev(const char* src, std::vector<double> p = {0.0, 0.0}) {
  return expr::parse(src)(p);
}

// Reference parser for cross-checking precedence and associativity.  Written
// straight off the grammar with char-level scanning, no token buffer, so it
// shares no code path with the library lexer.
struct ref_parser {
  std::string_view s;
  size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  char peek() {
    ws();
    return i < s.size() ? s[i] : '\0';
  }

  expr additive() {
    expr e = term();
    for (;;) {
      if (eat('+'))
        e = expr::binary(expr::binary_op::add, e, term());
      else if (eat('-'))
        e = expr::binary(expr::binary_op::sub, e, term());
      else
        return e;
    }
  }
  expr term() {
    expr e = unary();
    for (;;) {
      if (eat('*'))
        e = expr::binary(expr::binary_op::mul, e, unary());
      else if (eat('/'))
        e = expr::binary(expr::binary_op::div, e, unary());
      else
        return e;
    }
  }
  expr unary() {
    if (eat('-')) return expr::negate(unary());
    return power();
  }
  expr power() {
    expr b = atom();
    if (eat('^')) return expr::binary(expr::binary_op::pow, b, unary());
    return b;
  }
  expr atom() {
    ws();
    REQUIRE(i < s.size());
    char c = s[i];
    if (std::isdigit((unsigned char)c) || c == '.') {
      char* end = nullptr;
      std::string rest(s.substr(i));
      double v = std::strtod(rest.c_str(), &end);
      i += size_t(end - rest.c_str());
      return expr::literal(v);
    }
    if (c == '(') {
      ++i;
      expr e = additive();
      REQUIRE(eat(')'));
      return e;
    }
    std::string name;
    while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_'))
      name += s[i++];
    REQUIRE(!name.empty());
    if (name == "pi") return expr::literal(3.14159265358979323846);
    if (name == "e") return expr::literal(2.71828182845904523536);
    if (name == "t") return expr::time_variable();
    if (name[0] == 'x' && name.size() > 1)
      return expr::variable(std::stoul(name.substr(1)));
    if (name == "norm") {
      REQUIRE(eat('('));
      REQUIRE(eat('x'));
      REQUIRE(eat(')'));
      return expr::point_norm();
    }
    auto fn = [&]() -> expr::builtin {
      using b = expr::builtin;
      if (name == "sin") return b::sin;
      if (name == "cos") return b::cos;
      if (name == "exp") return b::exp;
      if (name == "log") return b::log;
      if (name == "sqrt") return b::sqrt;
      if (name == "abs") return b::abs;
      if (name == "min") return b::min;
      if (name == "max") return b::max;
      REQUIRE(name == "pow");
      return b::pow;
    }();
    REQUIRE(eat('('));
    expr a = additive();
    if (fn == expr::builtin::min || fn == expr::builtin::max || fn == expr::builtin::pow) {
      REQUIRE(eat(','));
      expr b2 = additive();
      REQUIRE(eat(')'));
      return expr::call(fn, a, b2);
    }
    REQUIRE(eat(')'));
    return expr::call(fn, a);
  }
};

expr ref_parse(std::string_view s) {
  ref_parser p{s};
  expr e = p.additive();
  p.ws();
  REQUIRE(p.i == s.size());
  return e;
}

// Random well-formed source text.  Parenthesization and whitespace vary so
// the two parsers have to agree on precedence, not just on token order.
struct source_gen {
  std::mt19937_64 g;
  explicit source_gen(uint64_t seed) : g(seed) {}

  int pick(int n) { return int(g() % uint64_t(n)); }

  std::string sp() { return pick(4) == 0 ? " " : ""; }

  std::string atom() {
    switch (pick(8)) {
      case 0: return std::to_string(pick(100));
      case 1: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%d.%02d", pick(10), pick(100));
        return buf;
      }
      case 2: return "x1";
      case 3: return "x2";
      case 4: return "x3";
      case 5: return "pi";
      case 6: return "e";
      default: return "t";
    }
  }

  std::string gen(int depth) {
    if (depth <= 0) return atom();
    switch (pick(10)) {
      case 0: return "(" + sp() + gen(depth - 1) + sp() + ")";
      case 1: return "-" + sp() + gen(depth - 1);
      case 2: {
        const char* fns[6] = {"sin", "cos", "exp", "log", "sqrt", "abs"};
        return std::string(fns[pick(6)]) + "(" + gen(depth - 1) + ")";
      }
      case 3: {
        const char* fns[3] = {"min", "max", "pow"};
        return std::string(fns[pick(3)]) + "(" + gen(depth - 1) + "," + sp() + gen(depth - 1) + ")";
      }
      case 4: return "norm(x)";
      default: {
        const char* ops[5] = {"+", "-", "*", "/", "^"};
        return gen(depth - 1) + sp() + ops[pick(5)] + sp() + gen(depth - 1);
      }
    }
  }
};

// Random trees built through the public constructors; literals nonnegative so
// every tree is reachable from the concrete syntax.
struct tree_gen {
  std::mt19937_64 g;
  explicit tree_gen(uint64_t seed) : g(seed) {}
  int pick(int n) { return int(g() % uint64_t(n)); }

  expr gen(int depth) {
    if (depth <= 0) {
      switch (pick(4)) {
        case 0: return expr::literal(pick(50));
        case 1: return expr::literal(pick(1000) / 64.0);
        case 2: return expr::variable(1 + size_t(pick(3)));
        default: return expr::time_variable();
      }
    }
    switch (pick(9)) {
      case 0: return expr::negate(gen(depth - 1));
      case 1: return expr::call(expr::builtin::sin, gen(depth - 1));
      case 2: return expr::call(expr::builtin::abs, gen(depth - 1));
      case 3: return expr::call(expr::builtin::max, gen(depth - 1), gen(depth - 1));
      case 4: return expr::point_norm();
      default: {
        auto ops = {expr::binary_op::add, expr::binary_op::sub, expr::binary_op::mul,
                    expr::binary_op::div, expr::binary_op::pow};
        return expr::binary(*(ops.begin() + pick(5)), gen(depth - 1), gen(depth - 1));
      }
    }
  }
};

} // namespace

TEST_CASE("literal arithmetic and precedence") {
  CHECK(ev("2+3*4") == 14.0);
  CHECK(ev("(2+3)*4") == 20.0);
  CHECK(ev("2^3^2") == 512.0);      // right-associative
  CHECK(ev("-2^2") == -4.0);        // ^ binds tighter than unary minus
  CHECK(ev("(-2)^2") == 4.0);
  CHECK(ev("6/3/2") == 1.0);
  CHECK(ev("6-3-2") == 1.0);
  CHECK(ev("2^-1") == 0.5);
  CHECK(ev("2*-3") == -6.0);
  CHECK(ev("exp(0)") == 1.0);
  CHECK(ev("min(2,5)") == 2.0);
  CHECK(ev("max(2,5)") == 5.0);
  CHECK(ev("pow(2,10)") == 1024.0);
  CHECK(ev("2e3") == 2000.0);
  CHECK(ev("1.5e-2") == 0.015);
  CHECK_THAT(ev("pi"), Catch::Matchers::WithinAbs(3.14159265358979, 1e-14));
  CHECK_THAT(ev("2*e"), Catch::Matchers::WithinAbs(5.43656365691809, 1e-14));
}

TEST_CASE("variables, t and norm") {
  std::vector<double> p{3.0, 4.0};
  CHECK(expr::parse("x1^2+x2^2")(p) == 25.0);
  CHECK(expr::parse("4+sin(x1)")(std::vector<double>{0.0, 0.0}) == 4.0);
  CHECK(expr::parse("norm(x)")(p) == 5.0);
  CHECK(expr::parse("t^2+x1")(p, 10.0) == 103.0);
  CHECK(expr::parse("abs(0-x2)")(p) == 4.0);

  auto e = expr::parse("x2*t");
  CHECK(e.max_variable() == 2);
  CHECK(e.uses_t());
  CHECK_FALSE(expr::parse("x1+1").uses_t());
}

TEST_CASE("parse errors carry offset and expectation") {
  using orlicz::parse_error;
  try {
    expr::parse("2++3");
    FAIL("no exception");
  } catch (const parse_error& e) {
    CHECK(e.offset() == 2);
  }
  CHECK_THROWS_AS(expr::parse(""), parse_error);
  CHECK_THROWS_AS(expr::parse("2+"), parse_error);
  CHECK_THROWS_AS(expr::parse("(2+3"), parse_error);
  CHECK_THROWS_AS(expr::parse("2 3"), parse_error);
  CHECK_THROWS_AS(expr::parse("foo(1)"), parse_error);
  CHECK_THROWS_AS(expr::parse("x"), parse_error);
  CHECK_THROWS_AS(expr::parse("x0"), parse_error);
  CHECK_THROWS_AS(expr::parse("min(2)"), parse_error);
  CHECK_THROWS_AS(expr::parse("sin(1,2)"), parse_error);
  CHECK_THROWS_AS(expr::parse("norm(x1)"), parse_error);
  CHECK_THROWS_AS(expr::parse("1e999"), parse_error);
}

TEST_CASE("evaluation never yields NaN silently") {
  using orlicz::domain_error;
  std::vector<double> p{1.0, 2.0};
  CHECK_THROWS_AS(ev("1/0"), domain_error);
  CHECK_THROWS_AS(ev("log(0)"), domain_error);
  CHECK_THROWS_AS(ev("log(0-1)"), domain_error);
  CHECK_THROWS_AS(ev("sqrt(0-4)"), domain_error);
  CHECK_THROWS_AS(ev("(0-2)^0.5"), domain_error);
  CHECK_THROWS_AS(ev("0^-1"), domain_error);
  CHECK_THROWS_AS(expr::parse("x3")(p), domain_error);      // dimension 2
  CHECK_THROWS_AS(expr::parse("t+1")(p), domain_error);     // t unbound
  CHECK_THROWS_AS(ev("exp(1000)-exp(1000)*2+exp(999)*0"), domain_error); // inf-inf
  CHECK(ev("(0-2)^3") == -8.0);
  CHECK(ev("exp(1000)") > 1e300); // overflow to inf is allowed

  try {
    ev("1/(x1-x1)", {5.0, 0.0});
    FAIL("no exception");
  } catch (const domain_error& e) {
    // message names the offending subexpression
    CHECK(std::string(e.what()).find("x1-x1") != std::string::npos);
  }
}

TEST_CASE("print round-trips and agrees with a reference parser") {
  source_gen sg(20260822u);
  int checked = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    std::string src = sg.gen(1 + sg.pick(4));
    expr a = expr::parse(src);
    expr b = ref_parse(src);
    INFO("source: " << src);
    CHECK(a.same_tree(b));

    // print -> parse is the identity on trees
    expr c = expr::parse(a.str());
    CHECK(c.same_tree(a));
    CHECK(c.str() == a.str());
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("programmatic trees survive print/parse") {
  tree_gen tg(77u);
  std::vector<double> p{0.7, -1.3, 2.1};
  for (int iter = 0; iter < 300; ++iter) {
    expr a = tg.gen(1 + tg.pick(3));
    expr b = expr::parse(a.str());
    INFO("printed: " << a.str());
    CHECK(b.same_tree(a));

    // bit-identical evaluation wherever evaluation is defined
    double va = 0, vb = 0;
    bool ta = false, tb = false;
    try {
      va = a(p, 1.25);
    } catch (const orlicz::domain_error&) {
      ta = true;
    }
    try {
      vb = b(p, 1.25);
    } catch (const orlicz::domain_error&) {
      tb = true;
    }
    CHECK(ta == tb);
    if (!ta && !tb) {
      if (std::isnan(va))
        CHECK(std::isnan(vb));
      else
        CHECK(va == vb);
    }
  }
}

TEST_CASE("canonical printing uses minimal parentheses") {
  CHECK(expr::parse("2+3*4").str() == "2+3*4");
  CHECK(expr::parse("(2+3)*4").str() == "(2+3)*4");
  CHECK(expr::parse("2^(3^2)").str() == "2^3^2");
  CHECK(expr::parse("(2^3)^2").str() == "(2^3)^2");
  CHECK(expr::parse("-(x1^2)").str() == "-x1^2");
  CHECK(expr::parse("(-x1)^2").str() == "(-x1)^2");
  CHECK(expr::parse("x1-(x2-x3)").str() == "x1-(x2-x3)");
  CHECK(expr::parse("(x1-x2)-x3").str() == "x1-x2-x3");
  CHECK(expr::parse("min(x1, max( x2 ,x3) )").str() == "min(x1,max(x2,x3))");
}
