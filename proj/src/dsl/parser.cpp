#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>

#include "daff/dsl/document.hpp"
#include "daff/error.hpp"

namespace daff::dsl {

using exact::Poly;
using exact::Scalar;

const std::vector<std::string> kBlockKinds = {"space",   "double", "atlas", "special_bundle",
                                              "graded",  "level_set"};

Value Value::number(const Scalar& s) {
  Value v;
  v.expr = Poly::constant(0, s);
  return v;
}

Value Value::list(std::vector<Value> items) {
  Value v;
  v.kind = Kind::List;
  v.items = std::move(items);
  return v;
}

Value Value::name(std::string id) {
  Value v;
  v.kind = Kind::Ident;
  v.ident = std::move(id);
  return v;
}

bool Value::operator==(const Value& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Expr: return expr == o.expr;
    case Kind::List: return items == o.items;
    case Kind::Ident: return ident == o.ident;
  }
  return false;
}

const Field* Block::find(const std::string& key) const {
  for (const auto& f : fields)
    if (f.key == key) return &f;
  return nullptr;
}

const Block* Document::find(const std::string& name) const {
  for (const auto& b : blocks)
    if (b.name == name) return &b;
  return nullptr;
}

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, col;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&] {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < s.size()) {
    const char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      Token t{Tok::Ident, "", line, col};
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
        t.text += s[i];
        advance();
      }
      out.push_back(t);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      Token t{Tok::Number, "", line, col};
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        t.text += s[i];
        advance();
      }
      out.push_back(t);
    } else if (std::string_view("{}[]()=;,.+-*/^").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), line, col});
      advance();
    } else {
      throw ParseError(line, col, {}, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_variable(const std::string& id) {
  if (id.size() < 2 || id[0] != 'x' || id[1] == '0') return false;
  return std::all_of(id.begin() + 1, id.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
}

// Expression tree, evaluated once the variable count is known.
struct Node {
  enum class Op { Num, Var, Add, Sub, Mul, Div, Neg, Pow } op;
  Scalar num;
  std::size_t var = 0;
  unsigned power = 0;
  std::unique_ptr<Node> a, b;
};
using NodeP = std::unique_ptr<Node>;

NodeP leaf(Node::Op op) {
  auto n = std::make_unique<Node>();
  n->op = op;
  return n;
}

NodeP binary(Node::Op op, NodeP a, NodeP b) {
  auto n = leaf(op);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

std::size_t max_var(const Node& n) {
  std::size_t m = n.op == Node::Op::Var ? n.var + 1 : 0;
  if (n.a) m = std::max(m, max_var(*n.a));
  if (n.b) m = std::max(m, max_var(*n.b));
  return m;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Document document() {
    Document doc;
    std::set<std::string> names;
    while (peek().kind != Tok::End) {
      Block b = block();
      if (!names.insert(b.name).second)
        throw DuplicateName("block '" + b.name + "' at line " + std::to_string(b.line));
      doc.blocks.push_back(std::move(b));
    }
    return doc;
  }

 private:
  const Token& peek() const { return t_[pos_]; }
  Token next() { return t_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& msg) const {
    const Token& t = peek();
    const std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.col, std::move(expected), msg.empty() ? "unexpected " + got : msg);
  }

  bool at(const char* punct) const { return peek().kind == Tok::Punct && peek().text == punct; }

  void expect(const char* punct, const std::string& msg = "") {
    if (!at(punct)) fail({std::string("'") + punct + "'"}, msg);
    next();
  }

  Block block() {
    if (peek().kind != Tok::Ident ||
        std::find(kBlockKinds.begin(), kBlockKinds.end(), peek().text) == kBlockKinds.end())
      fail(kBlockKinds, peek().kind == Tok::End ? "" : "unknown block kind '" + peek().text + "'");
    Token kind = next();
    if (peek().kind != Tok::Ident) fail({"block name"}, "");
    Block b{kind.text, next().text, {}, kind.line, kind.col};
    expect("{");
    std::set<std::string> keys;
    while (!at("}")) {
      if (peek().kind == Tok::End) fail({"field", "'}'"}, "unterminated block '" + b.name + "'");
      Field f = field();
      if (!keys.insert(f.key).second)
        throw DuplicateName("field '" + f.key + "' repeated in block '" + b.name + "'");
      b.fields.push_back(std::move(f));
    }
    next();
    std::stable_sort(b.fields.begin(), b.fields.end(),
                     [&](const Field& x, const Field& y) { return field_less(b.kind, x.key, y.key); });
    return b;
  }

  Field field() {
    if (peek().kind != Tok::Ident) fail({"field name", "'}'"}, "");
    Token first = next();
    std::string key = first.text;
    while (at(".")) {
      next();
      if (peek().kind != Tok::Ident && peek().kind != Tok::Number) fail({"key segment"}, "");
      key += "." + next().text;
    }
    expect("=", "expected '=' after field '" + key + "'");
    key_ = key;
    Value v = value();
    expect(";", "expected ';' after field '" + key + "'");
    return {key, std::move(v), first.line, first.col};
  }

  Value value() {
    const Token start = peek();
    Value v;
    if (at("[")) {
      next();
      if (at("]")) fail({"value"}, "empty list in field '" + key_ + "'");
      std::vector<Value> items;
      items.push_back(value());
      while (at(",")) {
        next();
        items.push_back(value());
      }
      expect("]", "expected ',' or ']' in field '" + key_ + "'");
      v = Value::list(std::move(items));
    } else if (peek().kind == Tok::Ident && !is_variable(peek().text)) {
      v = Value::name(next().text);
    } else {
      NodeP n = expr();
      const std::size_t nv = max_var(*n);
      v.expr = eval(*n, nv);
    }
    v.line = start.line;
    v.col = start.col;
    return v;
  }

  NodeP expr() {
    NodeP lhs = term();
    while (at("+") || at("-")) {
      const bool plus = next().text == "+";
      lhs = binary(plus ? Node::Op::Add : Node::Op::Sub, std::move(lhs), term());
    }
    return lhs;
  }

  NodeP term() {
    NodeP lhs = unary();
    while (at("*") || at("/")) {
      const bool times = peek().text == "*";
      const Token op = next();
      NodeP rhs = unary();
      if (!times && max_var(*rhs) != 0)
        throw ParseError(op.line, op.col, {"rational divisor"}, "division by a polynomial in field '" + key_ + "'");
      if (!times && eval(*rhs, 0).is_zero())
        throw ParseError(op.line, op.col, {"nonzero divisor"}, "division by zero in field '" + key_ + "'");
      lhs = binary(times ? Node::Op::Mul : Node::Op::Div, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  NodeP unary() {
    if (at("-")) {
      next();
      auto n = leaf(Node::Op::Neg);
      n->a = unary();
      return n;
    }
    NodeP base = atom();
    if (at("^")) {
      next();
      if (peek().kind != Tok::Number) fail({"exponent"}, "");
      auto n = leaf(Node::Op::Pow);
      n->power = static_cast<unsigned>(std::stoul(next().text));
      n->a = std::move(base);
      return n;
    }
    return base;
  }

  NodeP atom() {
    if (peek().kind == Tok::Number) {
      auto n = leaf(Node::Op::Num);
      n->num = exact::parse_scalar(next().text);
      return n;
    }
    if (peek().kind == Tok::Ident) {
      if (!is_variable(peek().text))
        fail({"variable x1, x2, ..."}, "'" + peek().text + "' is not a variable");
      auto n = leaf(Node::Op::Var);
      n->var = std::stoul(next().text.substr(1)) - 1;
      return n;
    }
    if (at("(")) {
      next();
      NodeP n = expr();
      expect(")");
      return n;
    }
    fail({"number", "variable", "'('", "'['", "identifier"}, "");
  }

  Poly eval(const Node& n, std::size_t nv) {
    switch (n.op) {
      case Node::Op::Num: return Poly::constant(nv, n.num);
      case Node::Op::Var: return Poly::variable(nv, n.var);
      case Node::Op::Add: return eval(*n.a, nv) + eval(*n.b, nv);
      case Node::Op::Sub: return eval(*n.a, nv) - eval(*n.b, nv);
      case Node::Op::Mul: return eval(*n.a, nv) * eval(*n.b, nv);
      case Node::Op::Neg: return -eval(*n.a, nv);
      case Node::Op::Pow: return exact::pow(eval(*n.a, nv), n.power);
      case Node::Op::Div: {
        const Scalar d = eval(*n.b, nv).constant_term();
        return Scalar(1 / d) * eval(*n.a, nv);
      }
    }
    return Poly(nv);
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
  std::string key_;
};

// Drops trailing variables that do not occur.
Poly trim(const Poly& p) {
  std::size_t used = 0;
  for (const auto& [e, c] : p.terms())
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v]) used = std::max(used, v + 1);
  if (used == p.nvars()) return p;
  Poly out(used);
  for (const auto& [e, c] : p.terms()) out.add_term(exact::Monomial(e.begin(), e.begin() + static_cast<long>(used)), c);
  return out;
}

void normalize(Value& v) {
  if (v.kind == Value::Kind::Expr) v.expr = trim(v.expr);
  for (auto& it : v.items) normalize(it);
}

}  // namespace

Document parse(std::string_view text) {
  Document doc = Parser(lex(text)).document();
  for (auto& b : doc.blocks)
    for (auto& f : b.fields) normalize(f.value);
  return doc;
}

}  // namespace daff::dsl
