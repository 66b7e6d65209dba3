#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz {

// Arithmetic expressions over points of R^n, used for exponent functions
// p(x), weights alpha(x), test functions u(x) and custom integrands A(x,t).
// Trees are immutable once built and safe to evaluate from several threads.
//
// Grammar (whitespace-insensitive):
//   variables  x1, x2, ..., plus the reserved scalar t where one is bound
//   constants  pi, e (folded to literals at parse time)
//   operators  + - * / ^ with the usual precedence; ^ is right-associative
//              and binds tighter than unary minus, so -x1^2 == -(x1^2)
//   functions  sin cos exp log sqrt abs min max pow norm; norm takes the
//              bare point as norm(x) and yields |x|
class expr {
public:
  enum class binary_op { add, sub, mul, div, pow };
  enum class builtin { sin, cos, exp, log, sqrt, abs, min, max, pow, norm };

  struct node;
  using node_ptr = std::shared_ptr<const node>;

  struct node {
    enum class kind { literal, variable, time_var, negate, binary, call, point_norm };
    kind k = kind::literal;
    double value = 0.0;     // literal
    std::size_t index = 0;  // variable, 1-based
    binary_op op = binary_op::add;
    builtin fn = builtin::sin;
    node_ptr lhs, rhs;      // negate and unary calls use lhs only
  };

  expr() : root_(make_literal_node(0.0)) {}

  // --- construction ------------------------------------------------------

  static expr literal(double v) { return expr(make_literal_node(v)); }

  static expr variable(std::size_t index_1based) {
    if (index_1based == 0) throw domain_error("variable index must be >= 1");
    auto n = std::make_shared<node>();
    n->k = node::kind::variable;
    n->index = index_1based;
    return expr(std::move(n));
  }

  static expr time_variable() {
    auto n = std::make_shared<node>();
    n->k = node::kind::time_var;
    return expr(std::move(n));
  }

  static expr negate(expr e) {
    auto n = std::make_shared<node>();
    n->k = node::kind::negate;
    n->lhs = std::move(e.root_);
    return expr(std::move(n));
  }

  static expr binary(binary_op op, expr a, expr b) {
    auto n = std::make_shared<node>();
    n->k = node::kind::binary;
    n->op = op;
    n->lhs = std::move(a.root_);
    n->rhs = std::move(b.root_);
    return expr(std::move(n));
  }

  static expr call(builtin fn, expr a) {
    if (arity(fn) != 1) throw domain_error("wrong arity for unary call");
    auto n = std::make_shared<node>();
    n->k = node::kind::call;
    n->fn = fn;
    n->lhs = std::move(a.root_);
    return expr(std::move(n));
  }

  static expr call(builtin fn, expr a, expr b) {
    if (arity(fn) != 2) throw domain_error("wrong arity for binary call");
    auto n = std::make_shared<node>();
    n->k = node::kind::call;
    n->fn = fn;
    n->lhs = std::move(a.root_);
    n->rhs = std::move(b.root_);
    return expr(std::move(n));
  }

  static expr point_norm() {
    auto n = std::make_shared<node>();
    n->k = node::kind::point_norm;
    return expr(std::move(n));
  }

  static expr parse(std::string_view source);

  // --- evaluation --------------------------------------------------------

  // Evaluate at a point; t is not bound and any use of it throws.
  double operator()(std::span<const double> point) const {
    return eval(*root_, point, nullptr);
  }

  // Evaluate with the scalar t bound (custom N-function bodies).
  double operator()(std::span<const double> point, double t) const {
    return eval(*root_, point, &t);
  }

  // --- inspection --------------------------------------------------------

  // Canonical rendering with minimal parentheses; parse(str()) rebuilds the
  // identical tree for any tree that itself came out of parse().
  std::string str() const {
    std::string out;
    print(*root_, out, 0);
    return out;
  }

  bool same_tree(const expr& other) const { return same(*root_, *other.root_); }

  // Largest x-index referenced, 0 when none.
  std::size_t max_variable() const { return max_var(*root_); }

  bool uses_t() const { return uses_time(*root_); }

  const node& root() const { return *root_; }

private:
  explicit expr(node_ptr n) : root_(std::move(n)) {}

  static node_ptr make_literal_node(double v) {
    if (!std::isfinite(v)) throw domain_error("literal must be finite");
    auto n = std::make_shared<node>();
    n->k = node::kind::literal;
    n->value = v;
    return n;
  }

  static int arity(builtin fn) {
    switch (fn) {
      case builtin::min:
      case builtin::max:
      case builtin::pow: return 2;
      case builtin::norm: return 0;
      default: return 1;
    }
  }

  static const char* builtin_name(builtin fn) {
    switch (fn) {
      case builtin::sin: return "sin";
      case builtin::cos: return "cos";
      case builtin::exp: return "exp";
      case builtin::log: return "log";
      case builtin::sqrt: return "sqrt";
      case builtin::abs: return "abs";
      case builtin::min: return "min";
      case builtin::max: return "max";
      case builtin::pow: return "pow";
      case builtin::norm: return "norm";
    }
    return "?";
  }

  [[noreturn]] static void eval_fail(const node& n, const std::string& reason) {
    std::string sub;
    print(n, sub, 0);
    throw domain_error(reason + " in '" + sub + "'");
  }

  static double checked_pow(double a, double b, const node& n) {
    if (a == 0.0 && b < 0.0) eval_fail(n, "zero raised to a negative power");
    if (a < 0.0) {
      // only integer exponents keep a negative base real
      if (!(std::rint(b) == b && std::abs(b) < 9.007199254740992e15))
        eval_fail(n, "negative base with non-integer exponent");
    }
    double r = std::pow(a, b);
    if (std::isnan(r)) eval_fail(n, "invalid power");
    return r;
  }

  // Results may overflow to +-inf, but an operation never hands back NaN;
  // whatever would have produced one throws with the offending subtree.
  static double no_nan(double r, const node& n) {
    if (std::isnan(r)) eval_fail(n, "operation produced NaN");
    return r;
  }

  static double eval(const node& n, std::span<const double> p, const double* t) {
    switch (n.k) {
      case node::kind::literal: return n.value;
      case node::kind::variable:
        if (n.index > p.size())
          eval_fail(n, "variable x" + std::to_string(n.index) + " exceeds point dimension " +
                           std::to_string(p.size()));
        return p[n.index - 1];
      case node::kind::time_var:
        if (!t) eval_fail(n, "t is not bound in this context");
        return *t;
      case node::kind::negate: return -eval(*n.lhs, p, t);
      case node::kind::binary: {
        double a = eval(*n.lhs, p, t);
        double b = eval(*n.rhs, p, t);
        switch (n.op) {
          case binary_op::add: return no_nan(a + b, n);
          case binary_op::sub: return no_nan(a - b, n);
          case binary_op::mul: return no_nan(a * b, n);
          case binary_op::div:
            if (b == 0.0) eval_fail(n, "division by zero");
            return no_nan(a / b, n);
          case binary_op::pow: return checked_pow(a, b, n);
        }
        return 0.0;
      }
      case node::kind::call: {
        double a = eval(*n.lhs, p, t);
        switch (n.fn) {
          case builtin::sin: return no_nan(std::sin(a), n);
          case builtin::cos: return no_nan(std::cos(a), n);
          case builtin::exp: return std::exp(a);
          case builtin::log:
            if (a <= 0.0) eval_fail(n, "log of a nonpositive value");
            return std::log(a);
          case builtin::sqrt:
            if (a < 0.0) eval_fail(n, "sqrt of a negative value");
            return std::sqrt(a);
          case builtin::abs: return std::abs(a);
          case builtin::min: return no_nan(std::fmin(a, eval(*n.rhs, p, t)), n);
          case builtin::max: return no_nan(std::fmax(a, eval(*n.rhs, p, t)), n);
          case builtin::pow: return checked_pow(a, eval(*n.rhs, p, t), n);
          case builtin::norm: break; // handled as point_norm
        }
        return 0.0;
      }
      case node::kind::point_norm: {
        double s = 0.0;
        for (double c : p) s += c * c;
        return std::sqrt(s);
      }
    }
    return 0.0;
  }

  // --- printing ----------------------------------------------------------
  // precedence ranks: add/sub 1, mul/div 2, negate 3, pow 4, atom 5

  static int precedence(const node& n) {
    switch (n.k) {
      case node::kind::negate: return 3;
      case node::kind::binary:
        switch (n.op) {
          case binary_op::add:
          case binary_op::sub: return 1;
          case binary_op::mul:
          case binary_op::div: return 2;
          case binary_op::pow: return 4;
        }
        return 5;
      default: return 5;
    }
  }

  static void print_number(double v, std::string& out) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, end);
    (void)ec;
  }

  static void print_child(const node& c, std::string& out, bool parens) {
    if (parens) out += '(';
    print(c, out, 0);
    if (parens) out += ')';
  }

  static void print(const node& n, std::string& out, int) {
    switch (n.k) {
      case node::kind::literal:
        if (n.value < 0.0) {
          // negative literals only arise from programmatic construction
          out += '(';
          print_number(n.value, out);
          out += ')';
        } else {
          print_number(n.value, out);
        }
        return;
      case node::kind::variable:
        out += 'x';
        out += std::to_string(n.index);
        return;
      case node::kind::time_var: out += 't'; return;
      case node::kind::negate:
        out += '-';
        print_child(*n.lhs, out, precedence(*n.lhs) < 3);
        return;
      case node::kind::binary: {
        int prec = precedence(n);
        const char* sym = "?";
        switch (n.op) {
          case binary_op::add: sym = "+"; break;
          case binary_op::sub: sym = "-"; break;
          case binary_op::mul: sym = "*"; break;
          case binary_op::div: sym = "/"; break;
          case binary_op::pow: sym = "^"; break;
        }
        if (n.op == binary_op::pow) {
          // right-associative; exponent re-parses at unary level
          print_child(*n.lhs, out, precedence(*n.lhs) < 5);
          out += sym;
          print_child(*n.rhs, out, precedence(*n.rhs) < 3);
        } else {
          print_child(*n.lhs, out, precedence(*n.lhs) < prec);
          out += sym;
          print_child(*n.rhs, out, precedence(*n.rhs) <= prec);
        }
        return;
      }
      case node::kind::call:
        out += builtin_name(n.fn);
        out += '(';
        print(*n.lhs, out, 0);
        if (n.rhs) {
          out += ',';
          print(*n.rhs, out, 0);
        }
        out += ')';
        return;
      case node::kind::point_norm: out += "norm(x)"; return;
    }
  }

  static bool same(const node& a, const node& b) {
    if (a.k != b.k) return false;
    switch (a.k) {
      case node::kind::literal:
        // bit comparison, so 0.0 != -0.0; literals never come out of parse
        // negative and the distinction is intentional for round trips
        return a.value == b.value && std::signbit(a.value) == std::signbit(b.value);
      case node::kind::variable: return a.index == b.index;
      case node::kind::time_var:
      case node::kind::point_norm: return true;
      case node::kind::negate: return same(*a.lhs, *b.lhs);
      case node::kind::binary:
        return a.op == b.op && same(*a.lhs, *b.lhs) && same(*a.rhs, *b.rhs);
      case node::kind::call:
        if (a.fn != b.fn) return false;
        if (!same(*a.lhs, *b.lhs)) return false;
        if (!a.rhs != !b.rhs) return false;
        return !a.rhs || same(*a.rhs, *b.rhs);
    }
    return false;
  }

  static std::size_t max_var(const node& n) {
    std::size_t m = (n.k == node::kind::variable) ? n.index : 0;
    if (n.lhs) m = std::max(m, max_var(*n.lhs));
    if (n.rhs) m = std::max(m, max_var(*n.rhs));
    return m;
  }

  static bool uses_time(const node& n) {
    if (n.k == node::kind::time_var) return true;
    if (n.lhs && uses_time(*n.lhs)) return true;
    if (n.rhs && uses_time(*n.rhs)) return true;
    return false;
  }

  node_ptr root_;
};

namespace detail {

// Hand-rolled lexer + precedence-climbing parser.  Kept out of class expr so
// the header stays readable.
class expr_parser {
public:
  explicit expr_parser(std::string_view src) : src_(src) { advance(); }

  expr::node_ptr run() {
    auto e = parse_additive();
    if (tok_.kind != token::end)
      fail("trailing input", "'+', '-', '*', '/', '^' or end of input");
    return e;
  }

private:
  struct token {
    enum kind_t { number, ident, punct, end } kind = end;
    double value = 0.0;
    std::string_view text;
    char ch = 0;
    std::size_t offset = 0;
  };

  using node = expr::node;
  using node_ptr = expr::node_ptr;

  [[noreturn]] void fail(const std::string& what, std::string expected) const {
    throw parse_error(what, tok_.offset, std::move(expected));
  }

  static bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
  static bool digit(char c) { return c >= '0' && c <= '9'; }

  void advance() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
      ++pos_;
    tok_ = token{};
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = token::end;
      return;
    }
    char c = src_[pos_];
    if (digit(c) || (c == '.' && pos_ + 1 < src_.size() && digit(src_[pos_ + 1]))) {
      std::size_t j = pos_;
      while (j < src_.size() && digit(src_[j])) ++j;
      if (j < src_.size() && src_[j] == '.') {
        ++j;
        while (j < src_.size() && digit(src_[j])) ++j;
      }
      if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
        if (k < src_.size() && digit(src_[k])) {
          while (k < src_.size() && digit(src_[k])) ++k;
          j = k;
        }
      }
      double v = 0.0;
      auto res = std::from_chars(src_.data() + pos_, src_.data() + j, v);
      if (res.ec == std::errc::result_out_of_range)
        throw parse_error("numeric literal out of range", pos_, "a representable number");
      if (res.ec != std::errc() || res.ptr != src_.data() + j)
        throw parse_error("malformed number", pos_, "a numeric literal");
      tok_.kind = token::number;
      tok_.value = v;
      pos_ = j;
      return;
    }
    if (ident_start(c)) {
      std::size_t j = pos_;
      while (j < src_.size() && ident_char(src_[j])) ++j;
      tok_.kind = token::ident;
      tok_.text = src_.substr(pos_, j - pos_);
      pos_ = j;
      return;
    }
    tok_.kind = token::punct;
    tok_.ch = c;
    ++pos_;
  }

  bool at_punct(char c) const { return tok_.kind == token::punct && tok_.ch == c; }

  void expect_punct(char c, const char* expected) {
    if (!at_punct(c)) fail("unexpected token", expected);
    advance();
  }

  static node_ptr make_binary(expr::binary_op op, node_ptr a, node_ptr b) {
    auto n = std::make_shared<node>();
    n->k = node::kind::binary;
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  node_ptr parse_additive() {
    auto lhs = parse_multiplicative();
    while (at_punct('+') || at_punct('-')) {
      auto op = at_punct('+') ? expr::binary_op::add : expr::binary_op::sub;
      advance();
      lhs = make_binary(op, std::move(lhs), parse_multiplicative());
    }
    return lhs;
  }

  node_ptr parse_multiplicative() {
    auto lhs = parse_unary();
    while (at_punct('*') || at_punct('/')) {
      auto op = at_punct('*') ? expr::binary_op::mul : expr::binary_op::div;
      advance();
      lhs = make_binary(op, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  node_ptr parse_unary() {
    if (at_punct('-')) {
      advance();
      auto n = std::make_shared<node>();
      n->k = node::kind::negate;
      n->lhs = parse_unary();
      return n;
    }
    return parse_power();
  }

  node_ptr parse_power() {
    auto base = parse_atom();
    if (at_punct('^')) {
      advance();
      // exponent parses at unary level: 2^-3 works, 2^3^2 nests right
      return make_binary(expr::binary_op::pow, std::move(base), parse_unary());
    }
    return base;
  }

  static bool lookup_builtin(std::string_view name, expr::builtin& out) {
    using b = expr::builtin;
    if (name == "sin") out = b::sin;
    else if (name == "cos") out = b::cos;
    else if (name == "exp") out = b::exp;
    else if (name == "log") out = b::log;
    else if (name == "sqrt") out = b::sqrt;
    else if (name == "abs") out = b::abs;
    else if (name == "min") out = b::min;
    else if (name == "max") out = b::max;
    else if (name == "pow") out = b::pow;
    else if (name == "norm") out = b::norm;
    else return false;
    return true;
  }

  node_ptr parse_atom() {
    if (tok_.kind == token::number) {
      auto n = std::make_shared<node>();
      n->k = node::kind::literal;
      n->value = tok_.value;
      advance();
      return n;
    }
    if (at_punct('(')) {
      advance();
      auto inner = parse_additive();
      expect_punct(')', "')'");
      return inner;
    }
    if (tok_.kind == token::ident) {
      std::string_view name = tok_.text;
      std::size_t name_off = tok_.offset;
      expr::builtin fn;
      if (lookup_builtin(name, fn)) {
        advance();
        expect_punct('(', "'('");
        if (fn == expr::builtin::norm) {
          if (tok_.kind != token::ident || tok_.text != "x")
            fail("norm takes the bare point", "'x'");
          advance();
          expect_punct(')', "')'");
          auto n = std::make_shared<node>();
          n->k = node::kind::point_norm;
          return n;
        }
        std::vector<node_ptr> args;
        args.push_back(parse_additive());
        while (at_punct(',')) {
          advance();
          args.push_back(parse_additive());
        }
        expect_punct(')', "')' or ','");
        int want = (fn == expr::builtin::min || fn == expr::builtin::max ||
                    fn == expr::builtin::pow)
                       ? 2
                       : 1;
        if ((int)args.size() != want)
          throw parse_error("wrong argument count for " + std::string(name) + ": got " +
                                std::to_string(args.size()),
                            name_off, std::to_string(want) + " argument(s)");
        auto n = std::make_shared<node>();
        n->k = node::kind::call;
        n->fn = fn;
        n->lhs = std::move(args[0]);
        if (want == 2) n->rhs = std::move(args[1]);
        return n;
      }
      if (name == "pi" || name == "e") {
        auto n = std::make_shared<node>();
        n->k = node::kind::literal;
        n->value = (name == "pi") ? std::numbers::pi : std::numbers::e;
        advance();
        return n;
      }
      if (name == "t") {
        advance();
        auto n = std::make_shared<node>();
        n->k = node::kind::time_var;
        return n;
      }
      if (name.size() >= 2 && name[0] == 'x') {
        bool all_digits = true;
        for (std::size_t i = 1; i < name.size(); ++i)
          if (!digit(name[i])) { all_digits = false; break; }
        if (all_digits && name[1] != '0') {
          std::size_t idx = 0;
          auto res = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
          if (res.ec == std::errc() && idx >= 1) {
            advance();
            auto n = std::make_shared<node>();
            n->k = node::kind::variable;
            n->index = idx;
            return n;
          }
        }
      }
      throw parse_error("unknown identifier '" + std::string(name) + "'", name_off,
                        "x<k>, t, pi, e or a function name");
    }
    fail("unexpected token", "a number, identifier, '(' or '-'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  token tok_;
};

} // namespace detail

inline expr expr::parse(std::string_view source) {
  detail::expr_parser p(source);
  return expr(p.run());
}

} // namespace orlicz
