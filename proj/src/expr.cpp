#include "gendrv/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <vector>

#include "gendrv/errors.hpp"

namespace gendrv {

namespace ast {

enum class Kind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };
enum class Func { Sin, Cos, Exp, Log, Sqrt };

struct Node {
  Kind kind = Kind::Number;
  double number = 0;                 // Kind::Number
  int exponent = 0;                  // Kind::Pow
  Func func = Func::Sin;             // Kind::Call
  std::shared_ptr<const Node> lhs;   // operand / left operand / call argument
  std::shared_ptr<const Node> rhs;   // right operand of binary nodes
};

}  // namespace ast

namespace {

using ast::Func;
using ast::Kind;
using ast::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

// ---------------------------------------------------------------- lexing --

struct Token {
  enum class Type {
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
  };
  Type type = Type::End;
  double value = 0;          // Number
  bool plain_integer = false;  // Number written as bare digits
  std::string ident;         // Ident
  std::size_t offset = 0;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t pos = 0;
  const std::size_t n = text.size();
  while (pos < n) {
    char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    Token tok;
    tok.offset = pos;
    if (digit(c) || (c == '.' && pos + 1 < n && digit(text[pos + 1]))) {
      double value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + n,
                                       value, std::chars_format::general);
      if (ec != std::errc{})
        throw ParseError(pos, "a numeric literal");
      std::size_t len = static_cast<std::size_t>(ptr - (text.data() + pos));
      tok.type = Token::Type::Number;
      tok.value = value;
      tok.plain_integer = true;
      for (std::size_t i = pos; i < pos + len; ++i) {
        if (!digit(text[i])) tok.plain_integer = false;
      }
      pos += len;
    } else if (ident_start(c)) {
      std::size_t end = pos;
      while (end < n && ident_char(text[end])) ++end;
      tok.type = Token::Type::Ident;
      tok.ident.assign(text.substr(pos, end - pos));
      pos = end;
    } else {
      switch (c) {
        case '+': tok.type = Token::Type::Plus; break;
        case '-': tok.type = Token::Type::Minus; break;
        case '*': tok.type = Token::Type::Star; break;
        case '/': tok.type = Token::Type::Slash; break;
        case '^': tok.type = Token::Type::Caret; break;
        case '(': tok.type = Token::Type::LParen; break;
        case ')': tok.type = Token::Type::RParen; break;
        default:
          throw ParseError(pos, "a number, 'x', an operator, or parentheses");
      }
      ++pos;
    }
    out.push_back(std::move(tok));
  }
  Token end_tok;
  end_tok.type = Token::Type::End;
  end_tok.offset = n;
  out.push_back(std::move(end_tok));
  return out;
}

// --------------------------------------------------------------- parsing --

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  NodePtr run() {
    NodePtr root = parse_expr();
    if (peek().type != Token::Type::End)
      throw ParseError(peek().offset, "end of input or an operator");
    return root;
  }

 private:
  const Token& peek() const { return tokens_[index_]; }
  const Token& advance() { return tokens_[index_++]; }
  bool accept(Token::Type t) {
    if (peek().type != t) return false;
    ++index_;
    return true;
  }

  NodePtr parse_expr() {
    NodePtr left = parse_term();
    for (;;) {
      if (accept(Token::Type::Plus)) {
        left = make_node({.kind = Kind::Add, .lhs = left, .rhs = parse_term()});
      } else if (accept(Token::Type::Minus)) {
        left = make_node({.kind = Kind::Sub, .lhs = left, .rhs = parse_term()});
      } else {
        return left;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr left = parse_factor();
    for (;;) {
      if (accept(Token::Type::Star)) {
        left =
            make_node({.kind = Kind::Mul, .lhs = left, .rhs = parse_factor()});
      } else if (accept(Token::Type::Slash)) {
        left =
            make_node({.kind = Kind::Div, .lhs = left, .rhs = parse_factor()});
      } else {
        return left;
      }
    }
  }

  // '^' binds tighter than unary minus: -x^2 is -(x^2).
  NodePtr parse_factor() {
    if (accept(Token::Type::Minus))
      return make_node({.kind = Kind::Negate, .lhs = parse_factor()});
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (!accept(Token::Type::Caret)) return base;
    int e = parse_exponent();
    return make_node({.kind = Kind::Pow, .exponent = e, .lhs = base});
  }

  // Exponents are integer literals; chains fold right-associatively in
  // integer arithmetic, so x^2^3 is x^8.
  int parse_exponent() {
    if (accept(Token::Type::Minus)) {
      std::int64_t v = -static_cast<std::int64_t>(parse_exponent());
      return checked_exponent(v, tokens_[index_ - 1].offset);
    }
    const Token& tok = peek();
    if (tok.type != Token::Type::Number || !tok.plain_integer ||
        tok.value > 2147483647.0)
      throw ExponentError(tok.offset);
    advance();
    std::int64_t base = static_cast<std::int64_t>(tok.value);
    if (!accept(Token::Type::Caret)) return static_cast<int>(base);
    int e2 = parse_exponent();
    if (e2 < 0) throw ExponentError(tok.offset);
    std::int64_t acc = 1;
    for (int i = 0; i < e2; ++i) {
      acc *= base;
      if (acc > 2147483647 || acc < -2147483648LL)
        throw ExponentError(tok.offset);
    }
    return static_cast<int>(acc);
  }

  static int checked_exponent(std::int64_t v, std::size_t offset) {
    if (v > 2147483647 || v < -2147483648LL) throw ExponentError(offset);
    return static_cast<int>(v);
  }

  NodePtr parse_primary() {
    const Token& tok = peek();
    switch (tok.type) {
      case Token::Type::Number:
        advance();
        return make_node({.kind = Kind::Number, .number = tok.value});
      case Token::Type::Ident: {
        advance();
        if (tok.ident == "x") return make_node({.kind = Kind::Variable});
        Func func;
        if (tok.ident == "sin") func = Func::Sin;
        else if (tok.ident == "cos") func = Func::Cos;
        else if (tok.ident == "exp") func = Func::Exp;
        else if (tok.ident == "log") func = Func::Log;
        else if (tok.ident == "sqrt") func = Func::Sqrt;
        else throw ParseError(tok.offset, "'x' or a known function name");
        if (!accept(Token::Type::LParen))
          throw ParseError(peek().offset, "'(' after function name");
        NodePtr arg = parse_expr();
        if (!accept(Token::Type::RParen))
          throw ParseError(peek().offset, "')'");
        return make_node({.kind = Kind::Call, .func = func, .lhs = arg});
      }
      case Token::Type::LParen: {
        advance();
        NodePtr inner = parse_expr();
        if (!accept(Token::Type::RParen))
          throw ParseError(peek().offset, "')'");
        return inner;
      }
      default:
        throw ParseError(tok.offset, "a number, 'x', a function call, or '('");
    }
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

// ------------------------------------------------------------ evaluation --

// Binary exponentiation with the same multiplication order as jet_pow so the
// value channel of eval_jet matches eval bit for bit.
double pow_int(double base, int e) {
  if (e == 0) return 1.0;
  bool neg = e < 0;
  unsigned n = neg ? 0u - static_cast<unsigned>(e) : static_cast<unsigned>(e);
  double acc = 1.0;
  double sq = base;
  while (n > 0) {
    if (n & 1u) acc = acc * sq;
    n >>= 1u;
    if (n > 0) sq = sq * sq;
  }
  if (neg) {
    if (base == 0) throw DomainError("zero raised to a negative power");
    return 1.0 / acc;
  }
  return acc;
}

double eval_node(const Node& n, double x) {
  switch (n.kind) {
    case Kind::Number: return n.number;
    case Kind::Variable: return x;
    case Kind::Negate: return -eval_node(*n.lhs, x);
    case Kind::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case Kind::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case Kind::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case Kind::Div: {
      double num = eval_node(*n.lhs, x);
      double den = eval_node(*n.rhs, x);
      if (den == 0) throw DomainError("division by zero");
      return num / den;
    }
    case Kind::Pow: return pow_int(eval_node(*n.lhs, x), n.exponent);
    case Kind::Call: {
      double a = eval_node(*n.lhs, x);
      switch (n.func) {
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Exp: return std::exp(a);
        case Func::Log:
          if (a <= 0) throw DomainError("log of a non-positive value");
          return std::log(a);
        case Func::Sqrt:
          if (a < 0) throw DomainError("sqrt of a negative value");
          return std::sqrt(a);
      }
      break;
    }
  }
  throw Error("corrupt expression node");
}

Jet3 eval_jet_node(const Node& n, double x) {
  switch (n.kind) {
    case Kind::Number: return jet_constant(n.number);
    case Kind::Variable: return jet_variable(x);
    case Kind::Negate: return -eval_jet_node(*n.lhs, x);
    case Kind::Add: return eval_jet_node(*n.lhs, x) + eval_jet_node(*n.rhs, x);
    case Kind::Sub: return eval_jet_node(*n.lhs, x) - eval_jet_node(*n.rhs, x);
    case Kind::Mul: return eval_jet_node(*n.lhs, x) * eval_jet_node(*n.rhs, x);
    case Kind::Div: return eval_jet_node(*n.lhs, x) / eval_jet_node(*n.rhs, x);
    case Kind::Pow: return jet_pow(eval_jet_node(*n.lhs, x), n.exponent);
    case Kind::Call: {
      Jet3 a = eval_jet_node(*n.lhs, x);
      switch (n.func) {
        case Func::Sin: return jet_sin(a);
        case Func::Cos: return jet_cos(a);
        case Func::Exp: return jet_exp(a);
        case Func::Log: return jet_log(a);
        case Func::Sqrt: return jet_sqrt(a);
      }
      break;
    }
  }
  throw Error("corrupt expression node");
}

// ------------------------------------------------------------ formatting --

// Shortest decimal that round-trips to the same double.
std::string format_number(double v) {
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) break;
  }
  return buf;
}

int precedence(const Node& n) {
  switch (n.kind) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Negate: return 3;
    case Kind::Pow: return 5;
    default: return 6;
  }
}

void format_node(const Node& n, std::string& out);

void format_child(const Node& child, int min_prec, std::string& out) {
  bool parens = precedence(child) < min_prec;
  if (parens) out += '(';
  format_node(child, out);
  if (parens) out += ')';
}

void format_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::Number:
      out += format_number(n.number);
      return;
    case Kind::Variable:
      out += 'x';
      return;
    case Kind::Negate:
      out += '-';
      format_child(*n.lhs, precedence(n), out);
      return;
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div: {
      int p = precedence(n);
      format_child(*n.lhs, p, out);
      switch (n.kind) {
        case Kind::Add: out += '+'; break;
        case Kind::Sub: out += '-'; break;
        case Kind::Mul: out += '*'; break;
        default: out += '/'; break;
      }
      format_child(*n.rhs, p + 1, out);
      return;
    }
    case Kind::Pow:
      format_child(*n.lhs, 6, out);
      out += '^';
      out += std::to_string(n.exponent);
      return;
    case Kind::Call:
      switch (n.func) {
        case Func::Sin: out += "sin("; break;
        case Func::Cos: out += "cos("; break;
        case Func::Exp: out += "exp("; break;
        case Func::Log: out += "log("; break;
        case Func::Sqrt: out += "sqrt("; break;
      }
      format_node(*n.lhs, out);
      out += ')';
      return;
  }
}

bool equal_nodes(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::Number:
      return a.number == b.number ||
             (std::isnan(a.number) && std::isnan(b.number));
    case Kind::Variable: return true;
    case Kind::Negate: return equal_nodes(*a.lhs, *b.lhs);
    case Kind::Pow:
      return a.exponent == b.exponent && equal_nodes(*a.lhs, *b.lhs);
    case Kind::Call:
      return a.func == b.func && equal_nodes(*a.lhs, *b.lhs);
    default:
      return equal_nodes(*a.lhs, *b.lhs) && equal_nodes(*a.rhs, *b.rhs);
  }
}

const Node& require_root(const Expr& e, const NodePtr& root) {
  (void)e;
  if (!root) throw Error("empty expression");
  return *root;
}

}  // namespace

Expr parse(std::string_view text) { return Expr(Parser(text).run()); }

double eval(const Expr& e, double x) {
  double r = eval_node(require_root(e, e.root_), x);
  if (!std::isfinite(r))
    throw DomainError("evaluation produced a non-finite value");
  return r;
}

Jet3 eval_jet(const Expr& e, double x) {
  Jet3 j = eval_jet_node(require_root(e, e.root_), x);
  if (!std::isfinite(j.v) || !std::isfinite(j.d1) || !std::isfinite(j.d2) ||
      !std::isfinite(j.d3))
    throw DomainError("derivative evaluation produced a non-finite value");
  return j;
}

std::string format(const Expr& e) {
  std::string out;
  format_node(require_root(e, e.root_), out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (!a.root_ || !b.root_) return !a.root_ && !b.root_;
  return equal_nodes(*a.root_, *b.root_);
}

TargetFunction make_target(const Expr& e) {
  return TargetFunction(
      [e](double x) { return eval(e, x); },
      [e](double x) {
        Jet3 j = eval_jet(e, x);
        return DerivTower{j.v, j.d1, j.d2, j.d3};
      });
}

TargetFunction make_target(const std::string& text) {
  return make_target(parse(text));
}

}  // namespace gendrv
