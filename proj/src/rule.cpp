#include "towerlab/rule.hpp"

#include <cctype>
#include <vector>

namespace towerlab {

struct Rule::Node {
  enum class Kind { number, name, negate, add, sub, mul, div, call };
  Kind kind = Kind::number;
  Rational value;
  std::string name;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Rule::Node>;
using Kind = Rule::Node::Kind;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    auto root = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw RuleError("rule '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr binary(Kind kind, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Rule::Node>();
    n->kind = kind;
    n->args = {std::move(lhs), std::move(rhs)};
    return n;
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Kind::add, lhs, term());
      } else if (accept('-')) {
        lhs = binary(Kind::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Kind::mul, lhs, unary());
      } else if (accept('/')) {
        lhs = binary(Kind::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) {
      auto n = std::make_shared<Rule::Node>();
      n->kind = Kind::negate;
      n->args = {unary()};
      return n;
    }
    return atom();
  }

  NodePtr atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of rule");
    char c = text_[pos_];
    if (accept('(')) {
      auto inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      auto n = std::make_shared<Rule::Node>();
      n->kind = Kind::number;
      n->value = Rational(parse_bigint(text_.substr(start, pos_ - start)));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      auto n = std::make_shared<Rule::Node>();
      n->name = std::string(text_.substr(start, pos_ - start));
      if (accept('(')) {
        n->kind = Kind::call;
        if (n->name != "max" && n->name != "min" && n->name != "ceil" && n->name != "floor") {
          fail("unknown function '" + n->name + "'");
        }
        do {
          n->args.push_back(expr());
        } while (accept(','));
        if (!accept(')')) fail("expected ')' after arguments");
        if ((n->name == "ceil" || n->name == "floor") && n->args.size() != 1) {
          fail(n->name + " takes one argument");
        }
      } else {
        n->kind = Kind::name;
      }
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Rational eval(const Rule::Node& n, const Rule::Environment& env, const std::string& text) {
  switch (n.kind) {
    case Kind::number:
      return n.value;
    case Kind::name: {
      auto it = env.find(n.name);
      if (it == env.end()) throw RuleError("rule '" + text + "': unbound name '" + n.name + "'");
      return it->second;
    }
    case Kind::negate:
      return -eval(*n.args[0], env, text);
    case Kind::add:
      return eval(*n.args[0], env, text) + eval(*n.args[1], env, text);
    case Kind::sub:
      return eval(*n.args[0], env, text) - eval(*n.args[1], env, text);
    case Kind::mul:
      return eval(*n.args[0], env, text) * eval(*n.args[1], env, text);
    case Kind::div: {
      Rational den = eval(*n.args[1], env, text);
      if (den == 0) throw RuleError("rule '" + text + "': division by zero");
      Rational r = eval(*n.args[0], env, text) / den;
      r.canonicalize();
      return r;
    }
    case Kind::call: {
      if (n.name == "ceil") return Rational(ceil(eval(*n.args[0], env, text)));
      if (n.name == "floor") return Rational(floor(eval(*n.args[0], env, text)));
      Rational best = eval(*n.args[0], env, text);
      for (std::size_t i = 1; i < n.args.size(); ++i) {
        Rational v = eval(*n.args[i], env, text);
        if (n.name == "max" ? v > best : v < best) best = v;
      }
      return best;
    }
  }
  throw RuleError("corrupt rule node");
}

}  // namespace

Rule Rule::parse(std::string_view text) {
  Rule r;
  r.text_ = std::string(text);
  r.root_ = Parser(text).parse();
  return r;
}

Rational Rule::evaluate(const Environment& env) const {
  if (!root_) throw RuleError("empty rule");
  return eval(*root_, env, text_);
}

BigInt Rule::evaluate_integer(const Environment& env) const {
  Rational v = evaluate(env);
  if (v.get_den() != 1) throw RuleError("rule '" + text_ + "' produced non-integer " + to_string(v));
  return v.get_num();
}

}  // namespace towerlab
