#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "gendrv/jet.hpp"
#include "gendrv/target_function.hpp"

namespace gendrv {

namespace ast {
struct Node;
}

// Immutable parsed expression in one real variable x. Copies share the tree.
class Expr {
 public:
  Expr() = default;

  bool empty() const noexcept { return !root_; }

 private:
  explicit Expr(std::shared_ptr<const ast::Node> root)
      : root_(std::move(root)) {}
  std::shared_ptr<const ast::Node> root_;

  friend Expr parse(std::string_view text);
  friend double eval(const Expr& e, double x);
  friend Jet3 eval_jet(const Expr& e, double x);
  friend std::string format(const Expr& e);
  friend bool structurally_equal(const Expr& a, const Expr& b);
};

// Grammar: + - * / ^ with the usual precedence, '^' binding tighter than
// unary minus and right-associative; parentheses; calls sin cos exp log sqrt;
// the variable x; decimal literals (scientific notation accepted). '^' takes
// an integer literal exponent only. Throws ParseError / ExponentError with
// byte offsets.
Expr parse(std::string_view text);

// Evaluate at x. Throws DomainError on log/sqrt domain violations, division
// by zero, or a non-finite result.
double eval(const Expr& e, double x);

// Value plus first three derivatives at x, propagated exactly (no
// differencing). Same error behavior as eval.
Jet3 eval_jet(const Expr& e, double x);

// Render to text that reparses to a structurally identical tree.
std::string format(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

// Wrap as a TargetFunction whose tower comes from eval_jet.
TargetFunction make_target(const Expr& e);
TargetFunction make_target(const std::string& text);

}  // namespace gendrv
