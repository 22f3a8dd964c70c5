#include "isoprof/expression.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <vector>

#include "isoprof/numerics.hpp"

namespace isoprof {

namespace {

struct Node {
  virtual ~Node() = default;
  virtual double eval(double t) const = 0;
};
using NodePtr = std::shared_ptr<const Node>;

struct Num : Node {
  double v;
  explicit Num(double v) : v(v) {}
  double eval(double) const override { return v; }
};
struct Var : Node {
  double eval(double t) const override { return t; }
};
struct Bin : Node {
  char op;
  NodePtr a, b;
  Bin(char op, NodePtr a, NodePtr b) : op(op), a(a), b(b) {}
  double eval(double t) const override {
    double x = a->eval(t), y = b->eval(t);
    switch (op) {
      case '+': return x + y;
      case '-': return x - y;
      case '*': return x * y;
      case '/': return x / y;
      default: return std::pow(x, y);
    }
  }
};
struct Neg : Node {
  NodePtr a;
  explicit Neg(NodePtr a) : a(a) {}
  double eval(double t) const override { return -a->eval(t); }
};
struct Fun : Node {
  double (*f)(double);
  NodePtr a;
  Fun(double (*f)(double), NodePtr a) : f(f), a(a) {}
  double eval(double t) const override { return f(a->eval(t)); }
};

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw DomainError("expression: trailing input at '" +
                        s_.substr(pos_) + "'");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr e = term();
    for (;;) {
      if (eat('+'))
        e = std::make_shared<Bin>('+', e, term());
      else if (eat('-'))
        e = std::make_shared<Bin>('-', e, term());
      else
        return e;
    }
  }
  NodePtr term() {
    NodePtr e = unary();
    for (;;) {
      if (eat('*'))
        e = std::make_shared<Bin>('*', e, unary());
      else if (eat('/'))
        e = std::make_shared<Bin>('/', e, unary());
      else
        return e;
    }
  }
  NodePtr unary() {
    if (eat('-')) return std::make_shared<Neg>(unary());
    if (eat('+')) return unary();
    return power();
  }
  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return std::make_shared<Bin>('^', base, unary());
    return base;
  }
  NodePtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw DomainError("expression: unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) throw DomainError("expression: missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    throw DomainError(std::string("expression: unexpected character '") + c +
                      "'");
  }
  NodePtr number() {
    std::size_t end = pos_;
    while (end < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[end])) ||
            s_[end] == '.' || s_[end] == 'e' || s_[end] == 'E' ||
            ((s_[end] == '+' || s_[end] == '-') && end > pos_ &&
             (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
      ++end;
    double v = std::stod(s_.substr(pos_, end - pos_));
    pos_ = end;
    return std::make_shared<Num>(v);
  }
  NodePtr name() {
    std::size_t end = pos_;
    while (end < s_.size() &&
           std::isalnum(static_cast<unsigned char>(s_[end])))
      ++end;
    std::string id = s_.substr(pos_, end - pos_);
    pos_ = end;
    if (id == "t" || id == "x") return std::make_shared<Var>();
    if (id == "pi") return std::make_shared<Num>(M_PI);
    static const std::map<std::string, double (*)(double)> fns = {
        {"exp", std::exp}, {"log", std::log},   {"sinh", std::sinh},
        {"cosh", std::cosh}, {"tanh", std::tanh}, {"sin", std::sin},
        {"cos", std::cos}, {"sqrt", std::sqrt}};
    if (id == "pow") {
      if (!eat('(')) throw DomainError("expression: pow expects '('");
      NodePtr a = expr();
      if (!eat(',')) throw DomainError("expression: pow expects ','");
      NodePtr b = expr();
      if (!eat(')')) throw DomainError("expression: pow expects ')'");
      return std::make_shared<Bin>('^', a, b);
    }
    auto it = fns.find(id);
    if (it == fns.end())
      throw DomainError("expression: unknown identifier '" + id + "'");
    if (!eat('(')) throw DomainError("expression: '" + id + "' expects '('");
    NodePtr a = expr();
    if (!eat(')')) throw DomainError("expression: missing ')' after '" + id +
                                     "'");
    return std::make_shared<Fun>(it->second, a);
  }
};

}  // namespace

std::function<double(double)> parse_expression(const std::string& text) {
  Parser p(text);
  NodePtr root = p.parse();
  return [root](double t) { return root->eval(t); };
}

}  // namespace isoprof
