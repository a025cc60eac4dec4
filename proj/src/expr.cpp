#include "coaxheat/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace coaxheat::expr {
namespace detail {

enum class Kind { Number, Variable, Constant, Binary, Negate, Call };
enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class Fn { Sin, Cos, Exp, Sqrt, Tanh, Abs, Log, Sgn };

struct Node {
  Kind kind;
  double value = 0.0;        // Number
  char var = 'x';            // Variable
  std::string const_name;    // Constant ("pi" / "e")
  BinOp op = BinOp::Add;     // Binary
  Fn fn = Fn::Sin;           // Call
  std::shared_ptr<const Node> lhs, rhs;  // Binary; lhs also Negate/Call child
};

using NodePtr = std::shared_ptr<const Node>;

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = v;
  return n;
}

NodePtr make_var(char c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->var = c;
  return n;
}

NodePtr make_const(std::string name, double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->const_name = std::move(name);
  n->value = v;
  return n;
}

NodePtr make_binary(BinOp op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->op = op;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

NodePtr make_neg(NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negate;
  n->lhs = std::move(a);
  return n;
}

NodePtr make_call(Fn fn, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->fn = fn;
  n->lhs = std::move(a);
  return n;
}

bool is_zero(const NodePtr& n) {
  return n->kind == Kind::Number && n->value == 0.0;
}
bool is_one(const NodePtr& n) {
  return n->kind == Kind::Number && n->value == 1.0;
}

// Light constant folding so derivatives do not balloon; no rewriting beyond
// neutral elements and literal arithmetic.
NodePtr add(NodePtr a, NodePtr b) {
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  if (a->kind == Kind::Number && b->kind == Kind::Number)
    return make_number(a->value + b->value);
  return make_binary(BinOp::Add, std::move(a), std::move(b));
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (is_zero(b)) return a;
  if (a->kind == Kind::Number && b->kind == Kind::Number)
    return make_number(a->value - b->value);
  if (is_zero(a)) return make_neg(std::move(b));
  return make_binary(BinOp::Sub, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (is_zero(a) || is_zero(b)) return make_number(0.0);
  if (is_one(a)) return b;
  if (is_one(b)) return a;
  if (a->kind == Kind::Number && b->kind == Kind::Number)
    return make_number(a->value * b->value);
  return make_binary(BinOp::Mul, std::move(a), std::move(b));
}

NodePtr divide(NodePtr a, NodePtr b) {
  if (is_zero(a)) return a;
  if (is_one(b)) return a;
  return make_binary(BinOp::Div, std::move(a), std::move(b));
}

NodePtr power(NodePtr a, NodePtr b) {
  if (is_one(b)) return a;
  if (is_zero(b)) return make_number(1.0);
  return make_binary(BinOp::Pow, std::move(a), std::move(b));
}

double eval_node(const Node& n, double x, double t) {
  switch (n.kind) {
    case Kind::Number:
    case Kind::Constant:
      return n.value;
    case Kind::Variable:
      return n.var == 'x' ? x : t;
    case Kind::Negate:
      return -eval_node(*n.lhs, x, t);
    case Kind::Binary: {
      double a = eval_node(*n.lhs, x, t);
      double b = eval_node(*n.rhs, x, t);
      switch (n.op) {
        case BinOp::Add: return a + b;
        case BinOp::Sub: return a - b;
        case BinOp::Mul: return a * b;
        case BinOp::Div:
          if (b == 0.0) throw EvalError("division by zero");
          return a / b;
        case BinOp::Pow: {
          if (a < 0.0 && b != std::floor(b))
            throw EvalError("negative base with non-integer exponent");
          if (a == 0.0 && b < 0.0) throw EvalError("zero base with negative exponent");
          return std::pow(a, b);
        }
      }
      break;
    }
    case Kind::Call: {
      double a = eval_node(*n.lhs, x, t);
      switch (n.fn) {
        case Fn::Sin: return std::sin(a);
        case Fn::Cos: return std::cos(a);
        case Fn::Exp: return std::exp(a);
        case Fn::Sqrt:
          if (a < 0.0) throw EvalError("sqrt of negative value");
          return std::sqrt(a);
        case Fn::Tanh: return std::tanh(a);
        case Fn::Abs: return std::fabs(a);
        case Fn::Log:
          if (a <= 0.0) throw EvalError("log of non-positive value");
          return std::log(a);
        case Fn::Sgn: return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
      }
      break;
    }
  }
  throw EvalError("corrupt expression node");
}

bool depends(const Node& n, char var) {
  switch (n.kind) {
    case Kind::Number:
    case Kind::Constant:
      return false;
    case Kind::Variable:
      return n.var == var;
    case Kind::Negate:
    case Kind::Call:
      return depends(*n.lhs, var);
    case Kind::Binary:
      return depends(*n.lhs, var) || depends(*n.rhs, var);
  }
  return false;
}

NodePtr diff_node(const NodePtr& n, char var) {
  switch (n->kind) {
    case Kind::Number:
    case Kind::Constant:
      return make_number(0.0);
    case Kind::Variable:
      return make_number(n->var == var ? 1.0 : 0.0);
    case Kind::Negate:
      return make_neg(diff_node(n->lhs, var));
    case Kind::Binary: {
      const NodePtr& u = n->lhs;
      const NodePtr& v = n->rhs;
      NodePtr du = diff_node(u, var);
      NodePtr dv = diff_node(v, var);
      switch (n->op) {
        case BinOp::Add: return add(du, dv);
        case BinOp::Sub: return sub(du, dv);
        case BinOp::Mul: return add(mul(du, v), mul(u, dv));
        case BinOp::Div:
          return divide(sub(mul(du, v), mul(u, dv)), power(v, make_number(2.0)));
        case BinOp::Pow: {
          if (!depends(*v, var)) {
            // d/dx u^c = c*u^(c-1)*u'
            return mul(mul(v, power(u, sub(v, make_number(1.0)))), du);
          }
          // General case d/dx u^v = u^v * (v' log u + v u'/u).
          NodePtr uv = power(u, v);
          NodePtr term = add(mul(dv, make_call(Fn::Log, u)), divide(mul(v, du), u));
          return mul(uv, term);
        }
      }
      break;
    }
    case Kind::Call: {
      const NodePtr& u = n->lhs;
      NodePtr du = diff_node(u, var);
      NodePtr outer;
      switch (n->fn) {
        case Fn::Sin: outer = make_call(Fn::Cos, u); break;
        case Fn::Cos: outer = make_neg(make_call(Fn::Sin, u)); break;
        case Fn::Exp: outer = make_call(Fn::Exp, u); break;
        case Fn::Sqrt:
          outer = divide(make_number(0.5), make_call(Fn::Sqrt, u));
          break;
        case Fn::Tanh: {
          NodePtr th = make_call(Fn::Tanh, u);
          outer = sub(make_number(1.0), mul(th, th));
          break;
        }
        case Fn::Abs:
          // Piecewise derivative; 0 at the kink.
          outer = make_call(Fn::Sgn, u);
          break;
        case Fn::Log:
          outer = divide(make_number(1.0), u);
          break;
        case Fn::Sgn:
          outer = make_number(0.0);
          break;
      }
      return mul(outer, du);
    }
  }
  throw EvalError("corrupt expression node");
}

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Exp: return "exp";
    case Fn::Sqrt: return "sqrt";
    case Fn::Tanh: return "tanh";
    case Fn::Abs: return "abs";
    case Fn::Log: return "log";
    case Fn::Sgn: return "sgn";
  }
  return "?";
}

void print_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::Number: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", n.value);
      if (n.value < 0) {
        out += '(';
        out += buf;
        out += ')';
      } else {
        out += buf;
      }
      return;
    }
    case Kind::Constant:
      out += n.const_name;
      return;
    case Kind::Variable:
      out += n.var;
      return;
    case Kind::Negate:
      out += "(-";
      print_node(*n.lhs, out);
      out += ')';
      return;
    case Kind::Binary: {
      out += '(';
      print_node(*n.lhs, out);
      switch (n.op) {
        case BinOp::Add: out += " + "; break;
        case BinOp::Sub: out += " - "; break;
        case BinOp::Mul: out += "*"; break;
        case BinOp::Div: out += "/"; break;
        case BinOp::Pow: out += "^"; break;
      }
      print_node(*n.rhs, out);
      out += ')';
      return;
    }
    case Kind::Call:
      out += fn_name(n.fn);
      out += '(';
      print_node(*n.lhs, out);
      out += ')';
      return;
  }
}

// Recursive-descent parser. Precedence (loosest first): + -, * /, unary -,
// ^ (right-associative), primary.
class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", 0);
    NodePtr e = parse_sum();
    skip_ws();
    if (pos_ < src_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  NodePtr parse_sum() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip_ws();
      if (consume('+')) {
        lhs = make_binary(BinOp::Add, lhs, parse_term());
      } else if (consume('-')) {
        lhs = make_binary(BinOp::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      skip_ws();
      if (consume('*')) {
        lhs = make_binary(BinOp::Mul, lhs, parse_unary());
      } else if (consume('/')) {
        lhs = make_binary(BinOp::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    if (consume('-')) return make_neg(parse_unary());
    if (consume('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    skip_ws();
    if (consume('^')) {
      // Right-associative; exponent may itself be signed (2^-x).
      return make_binary(BinOp::Pow, base, parse_unary());
    }
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_sum();
      skip_ws();
      if (!consume(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '.'))
      ++pos_;
    // Exponent suffix: 1e-3, 2.5E+4.
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_ + 1;
      if (mark < src_.size() && (src_[mark] == '+' || src_[mark] == '-')) ++mark;
      if (mark < src_.size() && std::isdigit(static_cast<unsigned char>(src_[mark]))) {
        pos_ = mark;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          ++pos_;
      }
    }
    std::string text(src_.substr(start, pos_ - start));
    try {
      std::size_t used = 0;
      double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return make_number(v);
    } catch (const std::exception&) {
      throw ParseError("malformed number '" + text + "'", start);
    }
  }

  NodePtr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isalnum(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    std::string name(src_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      static const std::pair<const char*, Fn> fns[] = {
          {"sin", Fn::Sin},   {"cos", Fn::Cos}, {"exp", Fn::Exp},
          {"sqrt", Fn::Sqrt}, {"tanh", Fn::Tanh}, {"abs", Fn::Abs},
          {"log", Fn::Log},   {"sgn", Fn::Sgn}};
      for (const auto& [fname, fn] : fns) {
        if (name == fname) {
          ++pos_;  // '('
          NodePtr arg = parse_sum();
          skip_ws();
          if (!consume(')')) throw ParseError("expected ')'", pos_);
          return make_call(fn, arg);
        }
      }
      throw ParseError("unknown function '" + name + "'", start);
    }
    if (name == "x") return make_var('x');
    if (name == "t") return make_var('t');
    if (name == "pi") return make_const("pi", M_PI);
    if (name == "e") return make_const("e", M_E);
    throw ParseError("unknown identifier '" + name + "'", start);
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool consume(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

using detail::NodePtr;

Expr::Expr() : node_(detail::make_number(0.0)) {}
Expr::Expr(NodePtr node) : node_(std::move(node)) {}

Expr Expr::parse(std::string_view source) {
  return Expr(detail::Parser(source).parse());
}

Expr Expr::constant(double value) { return Expr(detail::make_number(value)); }

Expr Expr::variable(const std::string& name) {
  if (name != "x" && name != "t")
    throw std::invalid_argument("variable must be \"x\" or \"t\"");
  return Expr(detail::make_var(name[0]));
}

double Expr::eval(double x, double t) const {
  return detail::eval_node(*node_, x, t);
}

Expr Expr::diff(const std::string& var) const {
  if (var != "x" && var != "t")
    throw std::invalid_argument("derivative variable must be \"x\" or \"t\"");
  return Expr(detail::diff_node(node_, var[0]));
}

std::string Expr::str() const {
  std::string out;
  detail::print_node(*node_, out);
  return out;
}

bool Expr::depends_on(const std::string& var) const {
  if (var != "x" && var != "t") return false;
  return detail::depends(*node_, var[0]);
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(detail::add(a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(detail::sub(a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(detail::mul(a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(detail::divide(a.node_, b.node_)); }
Expr operator-(const Expr& a) { return Expr(detail::make_neg(a.node_)); }
Expr pow(const Expr& a, const Expr& b) { return Expr(detail::power(a.node_, b.node_)); }
Expr sin(const Expr& a) { return Expr(detail::make_call(detail::Fn::Sin, a.node_)); }
Expr cos(const Expr& a) { return Expr(detail::make_call(detail::Fn::Cos, a.node_)); }
Expr exp(const Expr& a) { return Expr(detail::make_call(detail::Fn::Exp, a.node_)); }
Expr sqrt(const Expr& a) { return Expr(detail::make_call(detail::Fn::Sqrt, a.node_)); }
Expr tanh(const Expr& a) { return Expr(detail::make_call(detail::Fn::Tanh, a.node_)); }
Expr abs(const Expr& a) { return Expr(detail::make_call(detail::Fn::Abs, a.node_)); }
Expr log(const Expr& a) { return Expr(detail::make_call(detail::Fn::Log, a.node_)); }

}  // namespace coaxheat::expr
