#include "optiquad/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "optiquad/errors.hpp"

namespace optiquad::expr {

namespace {

constexpr double k_pi = 3.141592653589793238462643383279502884;
constexpr double k_e = 2.718281828459045235360287471352662498;

struct FuncName {
  std::string_view name;
  Func func;
  int arity;
};

constexpr std::array<FuncName, 9> k_functions = {{
    {"sin", Func::sin, 1},
    {"cos", Func::cos, 1},
    {"tan", Func::tan, 1},
    {"exp", Func::exp, 1},
    {"log", Func::log, 1},
    {"sqrt", Func::sqrt, 1},
    {"cbrt", Func::cbrt, 1},
    {"abs", Func::abs, 1},
    {"pow", Func::pow, 2},
}};

NodePtr make_constant(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::constant;
  n->value = v;
  return n;
}

NodePtr make_variable() {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::variable;
  return n;
}

NodePtr make_negate(NodePtr child) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::negate;
  n->children.push_back(std::move(child));
  return n;
}

NodePtr make_binary(char op, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::binary;
  n->op = op;
  n->children.push_back(std::move(lhs));
  n->children.push_back(std::move(rhs));
  return n;
}

NodePtr make_call(Func f, std::vector<NodePtr> args) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::call;
  n->func = f;
  n->children = std::move(args);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr run() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail("end of input or an operator");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) {
    std::ostringstream msg;
    msg << "syntax error at offset " << pos_ << ": expected " << expected;
    throw ParseError(ParseError::Kind::syntax, pos_, expected, msg.str());
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = make_binary('+', std::move(lhs), parse_term());
      else if (accept('-'))
        lhs = make_binary('-', std::move(lhs), parse_term());
      else
        return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = make_binary('*', std::move(lhs), parse_unary());
      else if (accept('/'))
        lhs = make_binary('/', std::move(lhs), parse_unary());
      else
        return lhs;
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make_negate(parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (accept('^')) {
      // Right-associative; the exponent may carry its own unary minus.
      NodePtr exponent = parse_unary();
      std::vector<NodePtr> args;
      args.push_back(std::move(base));
      args.push_back(std::move(exponent));
      return make_call(Func::pow, std::move(args));
    }
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("a number, 't', a function name, or '('");
    const char c = src_[pos_];

    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      if (!accept(')')) fail("')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail("a number, 't', a function name, or '('");
  }

  NodePtr parse_number() {
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    double value = 0.0;
    auto [next, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || next == begin) fail("a numeric literal");
    pos_ += static_cast<std::size_t>(next - begin);
    return make_constant(value);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isalnum(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);

    if (name == "t") return make_variable();
    if (name == "pi") return make_constant(k_pi);
    if (name == "e") return make_constant(k_e);

    for (const FuncName& fn : k_functions) {
      if (name != fn.name) continue;
      if (!accept('(')) fail("'(' after function name");
      std::vector<NodePtr> args;
      args.push_back(parse_expr());
      for (int k = 1; k < fn.arity; ++k) {
        if (!accept(',')) fail("','");
        args.push_back(parse_expr());
      }
      if (!accept(')')) fail("')'");
      return make_call(fn.func, std::move(args));
    }

    std::ostringstream msg;
    msg << "unknown identifier '" << name << "' at offset " << start;
    throw ParseError(ParseError::Kind::unknown_identifier, start,
                     "'t', 'pi', 'e', or a function name", msg.str());
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Precedence levels used by the printer: addition 1, multiplication 2,
// unary minus 3, power 4, atoms 5. Must agree with the grammar above so
// that printing and reparsing round-trips structurally.
int precedence(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::binary:
      return (n.op == '+' || n.op == '-') ? 1 : 2;
    case ExprNode::Kind::negate:
      return 3;
    case ExprNode::Kind::call:
      return n.func == Func::pow ? 4 : 5;
    default:
      return 5;
  }
}

std::string format_number(double v) {
  std::array<char, 32> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), end);
}

void render(const NodePtr& node, std::string& out, int min_prec) {
  const bool parens = precedence(*node) < min_prec;
  if (parens) out.push_back('(');
  switch (node->kind) {
    case ExprNode::Kind::constant:
      out += format_number(node->value);
      break;
    case ExprNode::Kind::variable:
      out.push_back('t');
      break;
    case ExprNode::Kind::negate:
      out.push_back('-');
      render(node->children[0], out, 3);
      break;
    case ExprNode::Kind::binary: {
      const int prec = precedence(*node);
      render(node->children[0], out, prec);
      out.push_back(node->op);
      // The right operand of -, / (and of left-associative + , *) must sit
      // strictly above this level to reparse into the same shape.
      render(node->children[1], out, prec + 1);
      break;
    }
    case ExprNode::Kind::call:
      if (node->func == Func::pow) {
        render(node->children[0], out, 5);
        out.push_back('^');
        render(node->children[1], out, 3);
      } else {
        switch (node->func) {
          case Func::sin: out += "sin"; break;
          case Func::cos: out += "cos"; break;
          case Func::tan: out += "tan"; break;
          case Func::exp: out += "exp"; break;
          case Func::log: out += "log"; break;
          case Func::sqrt: out += "sqrt"; break;
          case Func::cbrt: out += "cbrt"; break;
          case Func::abs: out += "abs"; break;
          case Func::pow: break;
        }
        out.push_back('(');
        render(node->children[0], out, 0);
        out.push_back(')');
      }
      break;
  }
  if (parens) out.push_back(')');
}

Jet2 eval_rec(const ExprNode& n, double t) {
  switch (n.kind) {
    case ExprNode::Kind::constant:
      return jet_constant(n.value);
    case ExprNode::Kind::variable:
      return jet_variable(t);
    case ExprNode::Kind::negate:
      return -eval_rec(*n.children[0], t);
    case ExprNode::Kind::binary: {
      const Jet2 a = eval_rec(*n.children[0], t);
      const Jet2 b = eval_rec(*n.children[1], t);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        default: return a / b;
      }
    }
    case ExprNode::Kind::call: {
      const Jet2 u = eval_rec(*n.children[0], t);
      switch (n.func) {
        case Func::sin: return sin(u);
        case Func::cos: return cos(u);
        case Func::tan: return tan(u);
        case Func::exp: return exp(u);
        case Func::log: return log(u);
        case Func::sqrt: return sqrt(u);
        case Func::cbrt: return cbrt(u);
        case Func::abs: return abs(u);
        case Func::pow: return pow(u, eval_rec(*n.children[1], t));
      }
    }
  }
  throw std::logic_error("corrupt expression node");
}

}  // namespace

NodePtr parse(std::string_view src) {
  if (src.empty())
    throw ParseError(ParseError::Kind::syntax, 0, "a nonempty expression",
                     "syntax error: empty expression");
  return Parser(src).run();
}

std::string to_string(const NodePtr& node) {
  std::string out;
  render(node, out, 0);
  return out;
}

Jet2 eval_jet(const NodePtr& node, double t) {
  try {
    return eval_rec(*node, t);
  } catch (const JetFault& fault) {
    std::ostringstream msg;
    msg << fault.message << " at t = " << t;
    if (fault.nondifferentiable) throw NondifferentiableError(msg.str(), t);
    throw EvalError(msg.str(), t);
  }
}

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprNode::Kind::constant:
      if (a->value != b->value) return false;
      break;
    case ExprNode::Kind::binary:
      if (a->op != b->op) return false;
      break;
    case ExprNode::Kind::call:
      if (a->func != b->func) return false;
      break;
    default:
      break;
  }
  if (a->children.size() != b->children.size()) return false;
  for (std::size_t k = 0; k < a->children.size(); ++k)
    if (!structurally_equal(a->children[k], b->children[k])) return false;
  return true;
}

}  // namespace optiquad::expr
