#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kloost/dyadic.hpp"
#include "kloost/errors.hpp"
#include "kloost/gf2m.hpp"

namespace kloost {

enum class NodeKind { Var, Zero, One, Add, Mul, Div, Pow };

// Immutable univariate expression over GF(2^m). Copies share structure.
// sqrt(e) is stored as e^(1/2).
class Expr {
 public:
  static Expr var(char name);
  static Expr zero();
  static Expr one();
  static Expr add(Expr lhs, Expr rhs);
  static Expr mul(Expr lhs, Expr rhs);
  static Expr div(Expr lhs, Expr rhs);
  static Expr pow(Expr base, DyadicRational exponent);
  static Expr sqrt(Expr base) { return pow(std::move(base), DyadicRational(1, 1)); }

  NodeKind kind() const;
  // Children: lhs() is the base for Pow. Only valid on binary/Pow nodes.
  const Expr& lhs() const;
  const Expr& rhs() const;
  const DyadicRational& exponent() const;
  char var_name() const;

  // The free variable, or nullopt for a constant expression.
  std::optional<char> variable() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Grammar:
//   expr     := term { "+" term }
//   term     := factor { ("*" | "/") factor }
//   factor   := base [ "^" exponent ]
//   base     := VAR | "0" | "1" | "(" expr ")" | "sqrt" "(" expr ")"
//   exponent := INT | "(" INT [ "/" POW2 ] ")"
// Throws ParseError.
Expr parse(std::string_view text);

// Inverse of parse up to whitespace: parse(format(e)) == e.
std::string format(const Expr& e);

struct EvalFailure {
  DomainErrorKind kind;
  Expr where;  // the offending Div or Pow node
};

struct Evaluated {
  Elem value = 0;
  std::optional<EvalFailure> failure;

  bool ok() const { return !failure; }
};

// Non-throwing evaluation; "value" is meaningful only when ok().
Evaluated try_eval(const Field& field, const Expr& e, Elem value);

// Throws DomainError naming the failing subexpression.
Elem eval(const Field& field, const Expr& e, Elem value);

// Subexpressions that must evaluate (successfully) to nonzero for e to be
// defined: every divisor and the base of every nonpositive power, listed
// innermost first.
std::vector<Expr> guard_subexpressions(const Expr& e);

}  // namespace kloost
