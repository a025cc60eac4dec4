#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coaxheat::expr {

/// Error raised while parsing an expression string. `offset` is the byte
/// position in the source text where the problem was detected.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Error raised during evaluation (division by zero, sqrt of a negative
/// number, negative base with non-integer exponent, log of a non-positive
/// argument).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
struct Node;
}

/// Immutable arithmetic expression in the variables "x" and "t".
///
/// Grammar: +, -, *, /, ^ (right-associative), unary minus, parentheses,
/// the functions sin, cos, exp, sqrt, tanh, abs, log, sgn and the named
/// constants pi and e. Expressions are cheap to copy (shared tree) and safe
/// to evaluate concurrently from multiple threads.
class Expr {
 public:
  Expr();  // the constant 0

  static Expr parse(std::string_view source);
  static Expr constant(double value);
  static Expr variable(const std::string& name);  // "x" or "t"

  double eval(double x, double t) const;
  double operator()(double x, double t) const { return eval(x, t); }

  /// Exact symbolic derivative with respect to "x" or "t".
  Expr diff(const std::string& var) const;

  /// Re-parseable text form. parse(e.str()) is evaluation-equivalent to e.
  std::string str() const;

  /// True if the expression contains the given variable.
  bool depends_on(const std::string& var) const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, const Expr& exponent);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr exp(const Expr& a);
  friend Expr sqrt(const Expr& a);
  friend Expr tanh(const Expr& a);
  friend Expr abs(const Expr& a);
  friend Expr log(const Expr& a);

 private:
  explicit Expr(std::shared_ptr<const detail::Node> node);
  std::shared_ptr<const detail::Node> node_;
};

}  // namespace coaxheat::expr
