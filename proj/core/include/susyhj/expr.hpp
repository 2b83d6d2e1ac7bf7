#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "susyhj/errors.hpp"

namespace susyhj::expr {

/// Values for named constants appearing in an expression.
using Bindings = std::map<std::string, double>;

/// Immutable symbolic expression in the single real variable `q`.
///
/// Supported forms: literals, `q`, named constants, binary `+ - * /`,
/// `^` with an integer literal exponent, unary minus, and the functions
/// sin, cos, exp, tanh, sqrt. Trees are shared and never mutated, so an
/// Expr may be copied and evaluated concurrently.
class Expr {
 public:
  /// The literal 0.
  Expr();

  static Expr number(double value);
  static Expr variable();  // the variable q
  static Expr constant(std::string name);

  /// Evaluate at q with the given constant bindings. Throws
  /// UnboundConstantError or EvalDomainError.
  double eval(double q, const Bindings& consts = {}) const;

  /// Symbolic derivative with respect to q (0/1 identities folded).
  Expr diff() const;

  /// Replace every listed constant by its value (constant folding).
  /// Constants not present in `consts` are kept symbolic.
  Expr bind(const Bindings& consts) const;

  /// Render to text that `parse` accepts back.
  std::string str() const;

  /// Insert the names of all constants appearing in the tree.
  void collect_constants(std::set<std::string>& out) const;

  /// True when the node is exactly the literal 0 (used for fast paths).
  bool is_zero_literal() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, int exponent);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr exp(const Expr& a);
  friend Expr tanh(const Expr& a);
  friend Expr sqrt(const Expr& a);

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  explicit Expr(NodePtr node);
  const Node& node() const { return *node_; }

 private:
  NodePtr node_;
};

/// Parse expression text. Identifiers other than `q`, built-in function
/// names, and members of `constants` are rejected with
/// UnknownIdentifierError; malformed text raises SyntaxError with the
/// offending byte offset.
Expr parse(std::string_view text, const std::set<std::string>& constants = {});

}  // namespace susyhj::expr
