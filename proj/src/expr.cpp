#include "h2r1/expr.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

namespace h2r1 {

namespace {

struct Func {
  const char* name;
  Jet3 (*jet_fn)(const Jet3&);
  double (*val_fn)(double);
};

double abs_checked(double x) {
  if (x == 0.0) throw DomainError("abs at zero is not differentiable");
  return std::abs(x);
}
double log_checked(double x) {
  if (!(x > 0.0)) throw DomainError("log of non-positive value");
  return std::log(x);
}
double sqrt_checked(double x) {
  if (!(x > 0.0)) throw DomainError("sqrt of non-positive value");
  return std::sqrt(x);
}

const Func kFuncs[] = {
    {"sin", &sin, [](double x) { return std::sin(x); }},
    {"cos", &cos, [](double x) { return std::cos(x); }},
    {"sinh", &sinh, [](double x) { return std::sinh(x); }},
    {"cosh", &cosh, [](double x) { return std::cosh(x); }},
    {"tanh", &tanh, [](double x) { return std::tanh(x); }},
    {"exp", &exp, [](double x) { return std::exp(x); }},
    {"log", &log, &log_checked},
    {"sqrt", &sqrt, &sqrt_checked},
    {"atan", &atan, [](double x) { return std::atan(x); }},
    {"abs", &abs, &abs_checked},
};

int func_index(std::string_view name) {
  for (int i = 0; i < static_cast<int>(std::size(kFuncs)); ++i)
    if (name == kFuncs[i].name) return i;
  return -1;
}

std::string fmt_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

struct Expression::Node {
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind;
  double number = 0.0;
  Axis axis = Axis::U;
  int func = -1;
  bool has_int_exp = false;
  int int_exp = 0;
  std::size_t offset = 0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;
using Kind = Node::Kind;

// ---------------------------------------------------------------- printing

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
      return n.number < 0.0 ? 3 : 5;
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
    case Kind::Number:
      out += fmt_number(n.number);
      break;
    case Kind::Var:
      out += n.axis == Axis::U ? "u" : "v";
      break;
    case Kind::Neg:
      out += '-';
      // The operand of unary minus is a unary/atom in the grammar; a bare
      // power would re-bind as (-x)^n, so powers get parentheses here.
      if (n.a->kind == Kind::Pow) {
        out += '(';
        print_node(*n.a, out);
        out += ')';
      } else {
        print_child(*n.a, 3, out);
      }
      break;
    case Kind::Add:
      print_child(*n.a, 1, out);
      out += " + ";
      print_child(*n.b, 2, out);  // keep right-nested sums explicit
      break;
    case Kind::Sub:
      print_child(*n.a, 1, out);
      out += " - ";
      print_child(*n.b, 2, out);
      break;
    case Kind::Mul:
      print_child(*n.a, 2, out);
      out += '*';
      print_child(*n.b, 3, out);  // keep right-nested products explicit
      break;
    case Kind::Div:
      print_child(*n.a, 2, out);
      out += '/';
      print_child(*n.b, 3, out);
      break;
    case Kind::Pow:
      // Base must stay a unary/atom; a nested power would re-associate right.
      if (n.a->kind == Kind::Pow) {
        out += '(';
        print_node(*n.a, out);
        out += ')';
      } else {
        print_child(*n.a, 3, out);
      }
      out += '^';
      print_child(*n.b, 3, out);
      break;
    case Kind::Call:
      out += kFuncs[n.func].name;
      out += '(';
      print_node(*n.a, out);
      out += ')';
      break;
  }
}

std::string node_str(const Node& n) {
  std::string s;
  print_node(n, s);
  return s;
}

// ---------------------------------------------------------------- parsing

struct Token {
  enum class Kind { Number, Ident, Op, End } kind;
  char op = 0;
  double number = 0.0;
  std::string ident;
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t'))
      ++pos_;
    cur_ = Token{};
    cur_.offset = pos_;
    if (pos_ >= src_.size()) {
      cur_.kind = Token::Kind::End;
      return;
    }
    const char c = src_[pos_];
    if ((c >= '0' && c <= '9') || c == '.') {
      std::size_t end = pos_;
      while (end < src_.size() && src_[end] >= '0' && src_[end] <= '9') ++end;
      if (end < src_.size() && src_[end] == '.') {
        ++end;
        while (end < src_.size() && src_[end] >= '0' && src_[end] <= '9') ++end;
      }
      if (end == pos_ + 1 && c == '.')
        throw ParseError("malformed number", pos_);
      if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
        std::size_t ex = end + 1;
        if (ex < src_.size() && (src_[ex] == '+' || src_[ex] == '-')) ++ex;
        if (ex < src_.size() && src_[ex] >= '0' && src_[ex] <= '9') {
          while (ex < src_.size() && src_[ex] >= '0' && src_[ex] <= '9') ++ex;
          end = ex;
        }
      }
      const std::string text(src_.substr(pos_, end - pos_));
      cur_.kind = Token::Kind::Number;
      cur_.number = std::strtod(text.c_str(), nullptr);
      pos_ = end;
      return;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             ((src_[end] >= 'a' && src_[end] <= 'z') ||
              (src_[end] >= 'A' && src_[end] <= 'Z') ||
              (src_[end] >= '0' && src_[end] <= '9') || src_[end] == '_'))
        ++end;
      cur_.kind = Token::Kind::Ident;
      cur_.ident = std::string(src_.substr(pos_, end - pos_));
      pos_ = end;
      return;
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^' || c == '(' ||
        c == ')') {
      cur_.kind = Token::Kind::Op;
      cur_.op = c;
      ++pos_;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token cur_;
};

class Parser {
 public:
  Parser(std::string_view src, const std::vector<Expression::VarBinding>& vars)
      : lex_(src), vars_(vars) {}

  NodePtr parse() {
    NodePtr e = parse_expr();
    if (lex_.peek().kind != Token::Kind::End)
      throw ParseError("unexpected trailing input", lex_.peek().offset);
    return e;
  }

 private:
  bool at_op(char c) const {
    return lex_.peek().kind == Token::Kind::Op && lex_.peek().op == c;
  }

  NodePtr parse_expr() {
    NodePtr left = parse_term();
    while (at_op('+') || at_op('-')) {
      Token t = lex_.take();
      NodePtr right = parse_term();
      auto n = std::make_shared<Node>();
      n->kind = t.op == '+' ? Kind::Add : Kind::Sub;
      n->offset = t.offset;
      n->a = left;
      n->b = right;
      left = n;
    }
    return left;
  }

  NodePtr parse_term() {
    NodePtr left = parse_factor();
    while (at_op('*') || at_op('/')) {
      Token t = lex_.take();
      NodePtr right = parse_factor();
      auto n = std::make_shared<Node>();
      n->kind = t.op == '*' ? Kind::Mul : Kind::Div;
      n->offset = t.offset;
      n->a = left;
      n->b = right;
      left = n;
    }
    return left;
  }

  NodePtr parse_factor() {
    NodePtr base = parse_unary();
    if (at_op('^')) {
      Token t = lex_.take();
      NodePtr exp = parse_factor();  // right-associative
      auto n = std::make_shared<Node>();
      n->kind = Kind::Pow;
      n->offset = t.offset;
      n->a = base;
      n->b = exp;
      detect_int_exponent(*n);
      return n;
    }
    return base;
  }

  static void detect_int_exponent(Node& pow) {
    const Node* e = pow.b.get();
    int sign = 1;
    while (e->kind == Kind::Neg) {
      sign = -sign;
      e = e->a.get();
    }
    if (e->kind != Kind::Number) return;
    const double v = e->number;
    if (v != std::floor(v) || std::abs(v) > 9.0) return;
    pow.has_int_exp = true;
    pow.int_exp = sign * static_cast<int>(v);
  }

  NodePtr parse_unary() {
    if (at_op('-')) {
      Token t = lex_.take();
      auto n = std::make_shared<Node>();
      n->kind = Kind::Neg;
      n->offset = t.offset;
      n->a = parse_unary();
      return n;
    }
    return parse_atom();
  }

  NodePtr parse_atom() {
    const Token& p = lex_.peek();
    if (p.kind == Token::Kind::Number) {
      Token t = lex_.take();
      auto n = std::make_shared<Node>();
      n->kind = Kind::Number;
      n->number = t.number;
      n->offset = t.offset;
      return n;
    }
    if (p.kind == Token::Kind::Ident) {
      Token t = lex_.take();
      if (at_op('(')) {
        const int fi = func_index(t.ident);
        if (fi < 0)
          throw ParseError("unknown function '" + t.ident + "'", t.offset);
        lex_.take();  // '('
        NodePtr arg = parse_expr();
        expect(')');
        auto n = std::make_shared<Node>();
        n->kind = Kind::Call;
        n->func = fi;
        n->offset = t.offset;
        n->a = arg;
        return n;
      }
      if (t.ident == "pi") return number_node(std::numbers::pi, t.offset);
      if (t.ident == "e") return number_node(std::numbers::e, t.offset);
      for (const auto& vb : vars_)
        if (t.ident == vb.name) {
          auto n = std::make_shared<Node>();
          n->kind = Kind::Var;
          n->axis = vb.axis;
          n->offset = t.offset;
          return n;
        }
      throw ParseError("unknown identifier '" + t.ident + "'", t.offset);
    }
    if (p.kind == Token::Kind::Op && p.op == '(') {
      lex_.take();
      NodePtr e = parse_expr();
      expect(')');
      return e;
    }
    throw ParseError("expected expression", p.offset);
  }

  static NodePtr number_node(double v, std::size_t off) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Number;
    n->number = v;
    n->offset = off;
    return n;
  }

  void expect(char c) {
    if (!at_op(c))
      throw ParseError(std::string("expected '") + c + "'",
                       lex_.peek().offset);
    lex_.take();
  }

  Lexer lex_;
  const std::vector<Expression::VarBinding>& vars_;
};

// -------------------------------------------------------------- evaluation

[[noreturn]] void rethrow_with_context(const DomainError& e, const Node& n) {
  throw DomainError(std::string(e.what()) + " in subexpression '" +
                    node_str(n) + "' at offset " + std::to_string(n.offset));
}

Jet3 eval_node(const Node& n, const Vec2d& p) {
  switch (n.kind) {
    case Kind::Number:
      return Jet3::constant(n.number);
    case Kind::Var:
      return Jet3::variable(n.axis, n.axis == Axis::U ? p[0] : p[1]);
    case Kind::Neg:
      return -eval_node(*n.a, p);
    case Kind::Add:
      return eval_node(*n.a, p) + eval_node(*n.b, p);
    case Kind::Sub:
      return eval_node(*n.a, p) - eval_node(*n.b, p);
    case Kind::Mul:
      return eval_node(*n.a, p) * eval_node(*n.b, p);
    case Kind::Div: {
      Jet3 a = eval_node(*n.a, p);
      Jet3 b = eval_node(*n.b, p);
      try {
        return a / b;
      } catch (const DomainError& e) {
        rethrow_with_context(e, n);
      }
    }
    case Kind::Pow: {
      Jet3 a = eval_node(*n.a, p);
      try {
        if (n.has_int_exp) return pow_int(a, n.int_exp);
        Jet3 b = eval_node(*n.b, p);
        return exp(b * log(a));
      } catch (const DomainError& e) {
        rethrow_with_context(e, n);
      }
    }
    case Kind::Call: {
      Jet3 a = eval_node(*n.a, p);
      try {
        return kFuncs[n.func].jet_fn(a);
      } catch (const DomainError& e) {
        rethrow_with_context(e, n);
      }
    }
  }
  throw Error("corrupt expression node");
}

double eval_node_value(const Node& n, const Vec2d& p) {
  switch (n.kind) {
    case Kind::Number:
      return n.number;
    case Kind::Var:
      return n.axis == Axis::U ? p[0] : p[1];
    case Kind::Neg:
      return -eval_node_value(*n.a, p);
    case Kind::Add:
      return eval_node_value(*n.a, p) + eval_node_value(*n.b, p);
    case Kind::Sub:
      return eval_node_value(*n.a, p) - eval_node_value(*n.b, p);
    case Kind::Mul:
      return eval_node_value(*n.a, p) * eval_node_value(*n.b, p);
    case Kind::Div: {
      const double b = eval_node_value(*n.b, p);
      if (std::abs(b) < 1e-300) {
        try {
          throw DomainError("division by (near-)zero");
        } catch (const DomainError& e) {
          rethrow_with_context(e, n);
        }
      }
      return eval_node_value(*n.a, p) / b;
    }
    case Kind::Pow: {
      const double a = eval_node_value(*n.a, p);
      try {
        if (n.has_int_exp) return std::pow(a, n.int_exp);
        const double b = eval_node_value(*n.b, p);
        if (!(a > 0.0))
          throw DomainError("power with non-positive base");
        return std::pow(a, b);
      } catch (const DomainError& e) {
        rethrow_with_context(e, n);
      }
    }
    case Kind::Call: {
      const double a = eval_node_value(*n.a, p);
      try {
        return kFuncs[n.func].val_fn(a);
      } catch (const DomainError& e) {
        rethrow_with_context(e, n);
      }
    }
  }
  throw Error("corrupt expression node");
}

}  // namespace

Expression Expression::parse(std::string_view source,
                             const std::vector<VarBinding>& variables) {
  Parser parser(source, variables);
  Expression e;
  e.root_ = parser.parse();
  return e;
}

const std::vector<Expression::VarBinding>& Expression::uv_vars() {
  static const std::vector<VarBinding> v = {{"u", Axis::U}, {"v", Axis::V}};
  return v;
}

const std::vector<Expression::VarBinding>& Expression::polar_vars() {
  static const std::vector<VarBinding> v = {
      {"u", Axis::U}, {"v", Axis::V}, {"r", Axis::U}, {"theta", Axis::V}};
  return v;
}

Jet3 Expression::eval(const Vec2d& point) const {
  if (!root_) throw Error("empty expression");
  return eval_node(*root_, point);
}

double Expression::eval_value(const Vec2d& point) const {
  if (!root_) throw Error("empty expression");
  return eval_node_value(*root_, point);
}

std::string Expression::str() const {
  if (!root_) return "";
  return node_str(*root_);
}

}  // namespace h2r1
