#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "h2r1/jet.hpp"
#include "h2r1/linalg.hpp"

namespace h2r1 {

/// A scalar expression over a declared variable set, parsed from text.
///
/// Grammar:
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := unary ('^' factor)?
///   unary  := '-' unary | atom
///   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
///
/// '*' and '/' associate left, '^' right.  Note the grammar binds a leading
/// minus before '^': "-u^2" is (-u)^2.  '^' keeps jet-safe integer powers for
/// literal exponents in [-9, 9]; any other exponent lowers to exp(e*log(b))
/// and requires a positive base at evaluation time.  The names pi and e
/// resolve to numeric literals while parsing.  Functions: sin cos sinh cosh
/// tanh exp log sqrt atan abs.
class Expression {
 public:
  struct VarBinding {
    std::string name;
    Axis axis;
  };

  Expression() = default;

  static Expression parse(std::string_view source,
                          const std::vector<VarBinding>& variables);

  /// The standard chart-parameter set {u -> U, v -> V}.
  static const std::vector<VarBinding>& uv_vars();
  /// As uv_vars, plus the aliases r -> U and theta -> V for polar patches.
  static const std::vector<VarBinding>& polar_vars();

  /// Order-3 germ at the given chart point; variables are seeded as axis jets.
  Jet3 eval(const Vec2d& point) const;

  /// Plain double evaluation (same tree, ordinary arithmetic).
  double eval_value(const Vec2d& point) const;

  /// Canonical printed form; parses back to an identical tree.
  std::string str() const;

  bool empty() const { return root_ == nullptr; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
};

}  // namespace h2r1
