#include "susyhj/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

namespace susyhj::expr {

struct Expr::Node {
  enum class Kind { Number, Var, Const, Add, Sub, Mul, Div, Pow, Neg, Fn };
  enum class Fn { Sin, Cos, Exp, Tanh, Sqrt };

  Kind kind;
  double value = 0.0;   // Number
  std::string name;     // Const
  int exponent = 0;     // Pow
  Fn fn = Fn::Sin;      // Fn
  NodePtr a, b;         // children
};

namespace {

using Node = Expr::Node;
using NodePtr = Expr::NodePtr;
using Kind = Node::Kind;
using Fn = Node::Fn;

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

NodePtr num(double v) {
  Node n;
  n.kind = Kind::Number;
  n.value = v;
  return make(std::move(n));
}

bool is_num(const NodePtr& p, double v) {
  return p->kind == Kind::Number && p->value == v;
}

// Smart constructors fold literal arithmetic and the 0/1 identities so that
// diff() output stays readable and cheap to evaluate.

NodePtr add(NodePtr a, NodePtr b) {
  if (is_num(a, 0.0)) return b;
  if (is_num(b, 0.0)) return a;
  if (a->kind == Kind::Number && b->kind == Kind::Number) {
    double v = a->value + b->value;
    if (std::isfinite(v)) return num(v);
  }
  Node n;
  n.kind = Kind::Add;
  n.a = std::move(a);
  n.b = std::move(b);
  return make(std::move(n));
}

NodePtr neg(NodePtr a) {
  if (a->kind == Kind::Number) return num(-a->value);
  if (a->kind == Kind::Neg) return a->a;
  Node n;
  n.kind = Kind::Neg;
  n.a = std::move(a);
  return make(std::move(n));
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (is_num(b, 0.0)) return a;
  if (is_num(a, 0.0)) return neg(std::move(b));
  if (a->kind == Kind::Number && b->kind == Kind::Number) {
    double v = a->value - b->value;
    if (std::isfinite(v)) return num(v);
  }
  Node n;
  n.kind = Kind::Sub;
  n.a = std::move(a);
  n.b = std::move(b);
  return make(std::move(n));
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (is_num(a, 0.0) || is_num(b, 0.0)) return num(0.0);
  if (is_num(a, 1.0)) return b;
  if (is_num(b, 1.0)) return a;
  if (a->kind == Kind::Number && b->kind == Kind::Number) {
    double v = a->value * b->value;
    if (std::isfinite(v)) return num(v);
  }
  Node n;
  n.kind = Kind::Mul;
  n.a = std::move(a);
  n.b = std::move(b);
  return make(std::move(n));
}

NodePtr div(NodePtr a, NodePtr b) {
  if (is_num(b, 1.0)) return a;
  if (a->kind == Kind::Number && b->kind == Kind::Number && b->value != 0.0) {
    double v = a->value / b->value;
    if (std::isfinite(v)) return num(v);
  }
  Node n;
  n.kind = Kind::Div;
  n.a = std::move(a);
  n.b = std::move(b);
  return make(std::move(n));
}

NodePtr pw(NodePtr a, int e) {
  if (e == 0) return num(1.0);
  if (e == 1) return a;
  if (a->kind == Kind::Number && !(a->value == 0.0 && e < 0)) {
    double v = std::pow(a->value, static_cast<double>(e));
    if (std::isfinite(v)) return num(v);
  }
  Node n;
  n.kind = Kind::Pow;
  n.exponent = e;
  n.a = std::move(a);
  return make(std::move(n));
}

NodePtr fn(Fn f, NodePtr a) {
  if (a->kind == Kind::Number) {
    double x = a->value;
    double v = 0.0;
    bool ok = true;
    switch (f) {
      case Fn::Sin: v = std::sin(x); break;
      case Fn::Cos: v = std::cos(x); break;
      case Fn::Exp: v = std::exp(x); break;
      case Fn::Tanh: v = std::tanh(x); break;
      case Fn::Sqrt:
        ok = x >= 0.0;
        v = ok ? std::sqrt(x) : 0.0;
        break;
    }
    if (ok && std::isfinite(v)) return num(v);
  }
  Node n;
  n.kind = Kind::Fn;
  n.fn = f;
  n.a = std::move(a);
  return make(std::move(n));
}

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Exp: return "exp";
    case Fn::Tanh: return "tanh";
    case Fn::Sqrt: return "sqrt";
  }
  return "?";
}

double eval_node(const Node& n, double q, const Bindings& consts) {
  switch (n.kind) {
    case Kind::Number: return n.value;
    case Kind::Var: return q;
    case Kind::Const: {
      auto it = consts.find(n.name);
      if (it == consts.end())
        throw UnboundConstantError("unbound constant '" + n.name + "'");
      return it->second;
    }
    case Kind::Add: return eval_node(*n.a, q, consts) + eval_node(*n.b, q, consts);
    case Kind::Sub: return eval_node(*n.a, q, consts) - eval_node(*n.b, q, consts);
    case Kind::Mul: return eval_node(*n.a, q, consts) * eval_node(*n.b, q, consts);
    case Kind::Div: {
      double d = eval_node(*n.b, q, consts);
      if (d == 0.0) throw EvalDomainError("division by zero");
      return eval_node(*n.a, q, consts) / d;
    }
    case Kind::Pow: {
      double b = eval_node(*n.a, q, consts);
      if (b == 0.0 && n.exponent < 0)
        throw EvalDomainError("zero raised to a negative power");
      return std::pow(b, static_cast<double>(n.exponent));
    }
    case Kind::Neg: return -eval_node(*n.a, q, consts);
    case Kind::Fn: {
      double x = eval_node(*n.a, q, consts);
      switch (n.fn) {
        case Fn::Sin: return std::sin(x);
        case Fn::Cos: return std::cos(x);
        case Fn::Exp: return std::exp(x);
        case Fn::Tanh: return std::tanh(x);
        case Fn::Sqrt:
          if (x < 0.0)
            throw EvalDomainError("sqrt of negative value " + std::to_string(x));
          return std::sqrt(x);
      }
      break;
    }
  }
  throw EvalDomainError("corrupt expression node");
}

NodePtr diff_node(const NodePtr& p) {
  const Node& n = *p;
  switch (n.kind) {
    case Kind::Number:
    case Kind::Const:
      return num(0.0);
    case Kind::Var:
      return num(1.0);
    case Kind::Add: return add(diff_node(n.a), diff_node(n.b));
    case Kind::Sub: return sub(diff_node(n.a), diff_node(n.b));
    case Kind::Mul:
      return add(mul(diff_node(n.a), n.b), mul(n.a, diff_node(n.b)));
    case Kind::Div:
      return div(sub(mul(diff_node(n.a), n.b), mul(n.a, diff_node(n.b))),
                 mul(n.b, n.b));
    case Kind::Pow:
      return mul(mul(num(static_cast<double>(n.exponent)), pw(n.a, n.exponent - 1)),
                 diff_node(n.a));
    case Kind::Neg: return neg(diff_node(n.a));
    case Kind::Fn: {
      NodePtr inner = diff_node(n.a);
      switch (n.fn) {
        case Fn::Sin: return mul(fn(Fn::Cos, n.a), inner);
        case Fn::Cos: return neg(mul(fn(Fn::Sin, n.a), inner));
        case Fn::Exp: return mul(fn(Fn::Exp, n.a), inner);
        case Fn::Tanh:
          return mul(sub(num(1.0), pw(fn(Fn::Tanh, n.a), 2)), inner);
        case Fn::Sqrt:
          return div(inner, mul(num(2.0), fn(Fn::Sqrt, n.a)));
      }
      break;
    }
  }
  return num(0.0);
}

NodePtr bind_node(const NodePtr& p, const Bindings& consts) {
  const Node& n = *p;
  switch (n.kind) {
    case Kind::Number:
    case Kind::Var:
      return p;
    case Kind::Const: {
      auto it = consts.find(n.name);
      return it == consts.end() ? p : num(it->second);
    }
    case Kind::Add: return add(bind_node(n.a, consts), bind_node(n.b, consts));
    case Kind::Sub: return sub(bind_node(n.a, consts), bind_node(n.b, consts));
    case Kind::Mul: return mul(bind_node(n.a, consts), bind_node(n.b, consts));
    case Kind::Div: return div(bind_node(n.a, consts), bind_node(n.b, consts));
    case Kind::Pow: return pw(bind_node(n.a, consts), n.exponent);
    case Kind::Neg: return neg(bind_node(n.a, consts));
    case Kind::Fn: return fn(n.fn, bind_node(n.a, consts));
  }
  return p;
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Rendering precedence; parenthesize a child whenever it binds weaker than
// the parent position requires.
int precedence(const Node& n) {
  switch (n.kind) {
    case Kind::Add:
    case Kind::Sub:
      return 1;
    case Kind::Mul:
    case Kind::Div:
      return 2;
    case Kind::Neg:
      return 3;
    case Kind::Pow:
      return 4;
    case Kind::Number:
      return n.value < 0.0 ? 3 : 5;  // "-2" prints like a negation
    default:
      return 5;
  }
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& c, int min_prec, std::string& out) {
  if (precedence(c) < min_prec) {
    out += '(';
    print_node(c, out);
    out += ')';
  } else {
    print_node(c, out);
  }
}

void print_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::Number: out += format_double(n.value); return;
    case Kind::Var: out += 'q'; return;
    case Kind::Const: out += n.name; return;
    case Kind::Add:
      print_child(*n.a, 1, out);
      out += '+';
      print_child(*n.b, 2, out);
      return;
    case Kind::Sub:
      print_child(*n.a, 1, out);
      out += '-';
      print_child(*n.b, 2, out);
      return;
    case Kind::Mul:
      print_child(*n.a, 2, out);
      out += '*';
      print_child(*n.b, 3, out);
      return;
    case Kind::Div:
      print_child(*n.a, 2, out);
      out += '/';
      print_child(*n.b, 3, out);
      return;
    case Kind::Neg:
      out += '-';
      print_child(*n.a, 3, out);
      return;
    case Kind::Pow:
      print_child(*n.a, 5, out);
      out += '^';
      out += std::to_string(n.exponent);
      return;
    case Kind::Fn:
      out += fn_name(n.fn);
      out += '(';
      print_node(*n.a, out);
      out += ')';
      return;
  }
}

void collect_node(const Node& n, std::set<std::string>& out) {
  if (n.kind == Kind::Const) out.insert(n.name);
  if (n.a) collect_node(*n.a, out);
  if (n.b) collect_node(*n.b, out);
}

// ---------------------------------------------------------------------------
// Parser: tokenizing recursive descent with byte offsets for diagnostics.
// ---------------------------------------------------------------------------

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  const std::set<std::string>* constants;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                 text[pos] == '\n' || text[pos] == '\r'))
      ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  NodePtr parse_expression() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (consume('+')) {
        lhs = add(std::move(lhs), parse_term());
      } else if (consume('-')) {
        lhs = sub(std::move(lhs), parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (consume('*')) {
        lhs = mul(std::move(lhs), parse_unary());
      } else if (consume('/')) {
        lhs = div(std::move(lhs), parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (consume('-')) return neg(parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (consume('^')) {
      skip_ws();
      bool negative = consume('-');
      skip_ws();
      std::size_t start = pos;
      long long v = 0;
      bool any = false;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        if (v > 1000000) throw SyntaxError("exponent too large", start);
        ++pos;
        any = true;
      }
      if (!any) throw SyntaxError("expected an integer exponent after '^'", pos);
      return pw(std::move(base), static_cast<int>(negative ? -v : v));
    }
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos >= text.size()) throw SyntaxError("expected an operand", pos);
    char c = text[pos];

    if (c == '(') {
      ++pos;
      NodePtr inner = parse_expression();
      if (!consume(')')) throw SyntaxError("expected ')'", pos);
      return inner;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const char* begin = text.data() + pos;
      const char* end = text.data() + text.size();
      auto res = std::from_chars(begin, end, v);
      if (res.ec != std::errc{})
        throw SyntaxError("malformed number", pos);
      pos += static_cast<std::size_t>(res.ptr - begin);
      return num(v);
    }

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string ident(text.substr(start, pos - start));

      skip_ws();
      bool call = pos < text.size() && text[pos] == '(';
      if (call) {
        Fn f;
        if (ident == "sin") f = Fn::Sin;
        else if (ident == "cos") f = Fn::Cos;
        else if (ident == "exp") f = Fn::Exp;
        else if (ident == "tanh") f = Fn::Tanh;
        else if (ident == "sqrt") f = Fn::Sqrt;
        else throw UnknownIdentifierError("unknown function '" + ident + "'");
        ++pos;  // '('
        NodePtr arg = parse_expression();
        if (!consume(')')) throw SyntaxError("expected ')'", pos);
        return fn(f, std::move(arg));
      }

      if (ident == "q") {
        Node n;
        n.kind = Kind::Var;
        return make(std::move(n));
      }
      if (constants->count(ident)) {
        Node n;
        n.kind = Kind::Const;
        n.name = std::move(ident);
        return make(std::move(n));
      }
      throw UnknownIdentifierError("unknown identifier '" + ident + "'");
    }

    throw SyntaxError(std::string("unexpected character '") + c + "'", pos);
  }
};

}  // namespace

Expr::Expr() : node_(num(0.0)) {}
Expr::Expr(NodePtr node) : node_(std::move(node)) {}

Expr Expr::number(double value) { return Expr(num(value)); }

Expr Expr::variable() {
  Node n;
  n.kind = Kind::Var;
  return Expr(make(std::move(n)));
}

Expr Expr::constant(std::string name) {
  Node n;
  n.kind = Kind::Const;
  n.name = std::move(name);
  return Expr(make(std::move(n)));
}

double Expr::eval(double q, const Bindings& consts) const {
  double v = eval_node(*node_, q, consts);
  if (!std::isfinite(v))
    throw EvalDomainError("expression evaluated to a non-finite value");
  return v;
}

Expr Expr::diff() const { return Expr(diff_node(node_)); }

Expr Expr::bind(const Bindings& consts) const { return Expr(bind_node(node_, consts)); }

std::string Expr::str() const {
  std::string out;
  print_node(*node_, out);
  return out;
}

void Expr::collect_constants(std::set<std::string>& out) const {
  collect_node(*node_, out);
}

bool Expr::is_zero_literal() const {
  return node_->kind == Kind::Number && node_->value == 0.0;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(add(a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(sub(a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(mul(a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(div(a.node_, b.node_)); }
Expr operator-(const Expr& a) { return Expr(neg(a.node_)); }
Expr pow(const Expr& base, int exponent) { return Expr(pw(base.node_, exponent)); }
Expr sin(const Expr& a) { return Expr(fn(Fn::Sin, a.node_)); }
Expr cos(const Expr& a) { return Expr(fn(Fn::Cos, a.node_)); }
Expr exp(const Expr& a) { return Expr(fn(Fn::Exp, a.node_)); }
Expr tanh(const Expr& a) { return Expr(fn(Fn::Tanh, a.node_)); }
Expr sqrt(const Expr& a) { return Expr(fn(Fn::Sqrt, a.node_)); }

Expr parse(std::string_view text, const std::set<std::string>& constants) {
  Parser p{text, 0, &constants};
  NodePtr root = p.parse_expression();
  if (!p.at_end()) throw SyntaxError("unexpected trailing input", p.pos);
  return Expr(std::move(root));
}

}  // namespace susyhj::expr
