#pragma once

// Closed-form parameter rules: small arithmetic expressions over the
// per-stage quantities of a construction, evaluated in exact rationals.
//
// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | atom
//   atom   := INTEGER | NAME | NAME '(' expr (',' expr)* ')' | '(' expr ')'
// Functions: max, min (any arity >= 1), ceil, floor (arity 1).
// '/' is exact rational division; use ceil/floor to get back to integers.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "towerlab/exact.hpp"

namespace towerlab {

class RuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Rule {
 public:
  using Environment = std::map<std::string, Rational, std::less<>>;

  Rule() = default;
  static Rule parse(std::string_view text);

  /// Evaluates the rule; every name it references must be bound.
  Rational evaluate(const Environment& env) const;

  /// Evaluates and requires an integer result.
  BigInt evaluate_integer(const Environment& env) const;

  const std::string& text() const { return text_; }
  bool empty() const { return root_ == nullptr; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace towerlab
