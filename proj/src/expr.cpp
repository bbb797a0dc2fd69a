#include "kloost/expr.hpp"

#include <cctype>
#include <stdexcept>

namespace kloost {

struct Expr::Node {
  NodeKind kind;
  char name = 0;
  DyadicRational exponent;
  std::optional<Expr> lhs;
  std::optional<Expr> rhs;
};

ParseError::ParseError(ParseErrorKind kind, std::size_t position, const std::string& msg)
    : std::runtime_error(msg + " (at offset " + std::to_string(position) + ")"),
      kind_(kind),
      position_(position) {}

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::Syntax: return "syntax";
    case ParseErrorKind::MultipleVariables: return "multiple_variables";
    case ParseErrorKind::NonDyadicExponent: return "non_dyadic_exponent";
  }
  return "?";
}

Expr Expr::var(char name) {
  if (!std::isalpha(static_cast<unsigned char>(name))) throw InvalidArgument("variable must be an ASCII letter");
  return Expr(std::make_shared<const Node>(Node{NodeKind::Var, name, {}, {}, {}}));
}
Expr Expr::zero() { return Expr(std::make_shared<const Node>(Node{NodeKind::Zero, 0, {}, {}, {}})); }
Expr Expr::one() { return Expr(std::make_shared<const Node>(Node{NodeKind::One, 0, {}, {}, {}})); }
Expr Expr::add(Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{NodeKind::Add, 0, {}, std::move(lhs), std::move(rhs)}));
}
Expr Expr::mul(Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{NodeKind::Mul, 0, {}, std::move(lhs), std::move(rhs)}));
}
Expr Expr::div(Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{NodeKind::Div, 0, {}, std::move(lhs), std::move(rhs)}));
}
Expr Expr::pow(Expr base, DyadicRational exponent) {
  return Expr(std::make_shared<const Node>(Node{NodeKind::Pow, 0, exponent, std::move(base), {}}));
}

NodeKind Expr::kind() const { return node_->kind; }
const Expr& Expr::lhs() const { return *node_->lhs; }
const Expr& Expr::rhs() const { return *node_->rhs; }
const DyadicRational& Expr::exponent() const { return node_->exponent; }
char Expr::var_name() const { return node_->name; }

std::optional<char> Expr::variable() const {
  switch (kind()) {
    case NodeKind::Var: return var_name();
    case NodeKind::Zero:
    case NodeKind::One: return std::nullopt;
    case NodeKind::Pow: return lhs().variable();
    default: {
      auto v = lhs().variable();
      return v ? v : rhs().variable();
    }
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case NodeKind::Var: return a.var_name() == b.var_name();
    case NodeKind::Zero:
    case NodeKind::One: return true;
    case NodeKind::Pow: return a.exponent() == b.exponent() && a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(ParseErrorKind::Syntax, pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr parse_expr() {
    Expr e = parse_term();
    while (accept('+')) e = Expr::add(e, parse_term());
    return e;
  }

  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      if (accept('*'))
        e = Expr::mul(e, parse_factor());
      else if (accept('/'))
        e = Expr::div(e, parse_factor());
      else
        return e;
    }
  }

  Expr parse_factor() {
    Expr base = parse_base();
    if (accept('^')) return Expr::pow(base, parse_exponent());
    return base;
  }

  Expr parse_base() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view digits = text_.substr(start, pos_ - start);
      if (digits == "0") return Expr::zero();
      if (digits == "1") return Expr::one();
      pos_ = start;
      fail("only the constants 0 and 1 are allowed, got '" + std::string(digits) + "'");
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "sqrt") {
        expect('(');
        Expr e = parse_expr();
        expect(')');
        return Expr::sqrt(e);
      }
      if (word.size() != 1) {
        pos_ = start;
        fail("unknown identifier '" + std::string(word) + "' (variables are single letters)");
      }
      if (variable_ && *variable_ != word[0])
        throw ParseError(ParseErrorKind::MultipleVariables, start,
                         std::string("second variable '") + word[0] + "' after '" + *variable_ + "'");
      variable_ = word[0];
      return Expr::var(word[0]);
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string read_int() {
    skip_ws();
    std::string out;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      out = "-";
      ++pos_;
      skip_ws();
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer exponent");
    out += text_.substr(digits, pos_ - digits);
    return out;
  }

  DyadicRational parse_exponent() {
    const bool paren = accept('(');
    std::string num = read_int();
    std::string text = num;
    std::size_t den_pos = pos_;
    if (paren) {
      if (accept('/')) {
        skip_ws();
        den_pos = pos_;
        const std::string den = read_int();
        if (!den.empty() && den[0] == '-') {
          pos_ = den_pos;
          fail("exponent denominator must be positive");
        }
        text += "/" + den;
      }
      expect(')');
    }
    try {
      return DyadicRational::parse(text);
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), den_pos, "exponent " + text + ": denominator is not a power of two");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::optional<char> variable_;
};

bool is_atom(const Expr& e) {
  return e.kind() == NodeKind::Var || e.kind() == NodeKind::Zero || e.kind() == NodeKind::One;
}

void format_into(const Expr& e, std::string& out);

void format_wrapped(const Expr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  format_into(e, out);
  if (wrap) out += ')';
}

void format_into(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case NodeKind::Var: out += e.var_name(); return;
    case NodeKind::Zero: out += '0'; return;
    case NodeKind::One: out += '1'; return;
    case NodeKind::Add:
      format_into(e.lhs(), out);
      out += '+';
      format_wrapped(e.rhs(), e.rhs().kind() == NodeKind::Add, out);
      return;
    case NodeKind::Mul:
    case NodeKind::Div: {
      format_wrapped(e.lhs(), e.lhs().kind() == NodeKind::Add, out);
      out += e.kind() == NodeKind::Mul ? '*' : '/';
      const NodeKind r = e.rhs().kind();
      format_wrapped(e.rhs(), r == NodeKind::Add || r == NodeKind::Mul || r == NodeKind::Div, out);
      return;
    }
    case NodeKind::Pow: {
      format_wrapped(e.lhs(), !is_atom(e.lhs()), out);
      out += '^';
      const DyadicRational& r = e.exponent();
      if (r.is_integer() && r.sign() >= 0)
        out += r.to_string();
      else
        out += "(" + r.to_string() + ")";
      return;
    }
  }
}

// Returns false on failure and fills `failure`.
bool eval_node(const Field& f, const Expr& e, Elem v, Elem& out, std::optional<EvalFailure>& failure) {
  switch (e.kind()) {
    case NodeKind::Var: out = v; return true;
    case NodeKind::Zero: out = 0; return true;
    case NodeKind::One: out = 1; return true;
    case NodeKind::Pow: {
      Elem base;
      if (!eval_node(f, e.lhs(), v, base, failure)) return false;
      if (base == 0 && e.exponent().sign() <= 0) {
        failure = EvalFailure{DomainErrorKind::ZeroToNonpositive, e};
        return false;
      }
      out = f.pow(base, e.exponent());
      return true;
    }
    default: break;
  }
  Elem a, b;
  if (!eval_node(f, e.lhs(), v, a, failure) || !eval_node(f, e.rhs(), v, b, failure)) return false;
  switch (e.kind()) {
    case NodeKind::Add: out = a ^ b; return true;
    case NodeKind::Mul: out = f.mul(a, b); return true;
    case NodeKind::Div:
      if (b == 0) {
        failure = EvalFailure{DomainErrorKind::ZeroInverse, e};
        return false;
      }
      out = f.mul(a, f.inv(b));
      return true;
    default: throw std::logic_error("unreachable expression kind");
  }
}

void collect_guards(const Expr& e, std::vector<Expr>& out) {
  switch (e.kind()) {
    case NodeKind::Var:
    case NodeKind::Zero:
    case NodeKind::One: return;
    case NodeKind::Pow:
      collect_guards(e.lhs(), out);
      if (e.exponent().sign() <= 0) out.push_back(e.lhs());
      return;
    default:
      collect_guards(e.lhs(), out);
      collect_guards(e.rhs(), out);
      if (e.kind() == NodeKind::Div) out.push_back(e.rhs());
  }
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string format(const Expr& e) {
  std::string out;
  format_into(e, out);
  return out;
}

Evaluated try_eval(const Field& field, const Expr& e, Elem value) {
  Evaluated r;
  if (!eval_node(field, e, value, r.value, r.failure)) r.value = 0;
  return r;
}

Elem eval(const Field& field, const Expr& e, Elem value) {
  Evaluated r = try_eval(field, e, value);
  if (!r.ok())
    throw DomainError(r.failure->kind, std::string(to_string(r.failure->kind)) + " in '" +
                                           format(r.failure->where) + "'");
  return r.value;
}

std::vector<Expr> guard_subexpressions(const Expr& e) {
  std::vector<Expr> out;
  collect_guards(e, out);
  return out;
}

}  // namespace kloost
