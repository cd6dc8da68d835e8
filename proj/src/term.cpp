#include "lpm/term.hpp"

#include <cctype>

namespace lpm {

TermPtr Term::unit() {
  static const TermPtr u = std::make_shared<Term>(Term{Kind::Unit});
  return u;
}
TermPtr Term::constant(Element v) {
  auto t = std::make_shared<Term>(Term{Kind::Const});
  t->value = v;
  return t;
}
TermPtr Term::generator(std::string name) {
  auto t = std::make_shared<Term>(Term{Kind::Gen});
  t->gen = std::move(name);
  return t;
}
TermPtr Term::mul(TermPtr l, TermPtr r) {
  auto t = std::make_shared<Term>(Term{Kind::Mul});
  t->left = std::move(l);
  t->right = std::move(r);
  return t;
}
TermPtr Term::ldiv(TermPtr l, TermPtr r) {
  auto t = std::make_shared<Term>(Term{Kind::Ldiv});
  t->left = std::move(l);
  t->right = std::move(r);
  return t;
}

bool term_equal(const Term& a, const Term& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Term::Kind::Unit: return true;
    case Term::Kind::Const: return a.value == b.value;
    case Term::Kind::Gen: return a.gen == b.gen;
    case Term::Kind::Mul:
    case Term::Kind::Ldiv:
      return term_equal(*a.left, *b.left) && term_equal(*a.right, *b.right);
  }
  return false;
}

int node_count(const Term& t) {
  if (t.kind == Term::Kind::Mul || t.kind == Term::Kind::Ldiv)
    return 1 + node_count(*t.left) + node_count(*t.right);
  return 1;
}

std::string print_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Unit: return "e";
    case Term::Kind::Const: return std::to_string(t.value);
    case Term::Kind::Gen: return t.gen;
    case Term::Kind::Mul:
      return "(" + print_term(*t.left) + " * " + print_term(*t.right) + ")";
    case Term::Kind::Ldiv:
      return "(" + print_term(*t.left) + " \\ " + print_term(*t.right) + ")";
  }
  return "?";
}

namespace {

class TermParser {
public:
  explicit TermParser(const std::string& s) : s_(s) {}

  TermPtr parse() {
    TermPtr t = expr();
    skip_ws();
    if (pos_ < s_.size()) fail("trailing input");
    return t;
  }

private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw EvalError("term parse error at offset " + std::to_string(pos_) +
                    ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of term");
    return s_[pos_];
  }

  TermPtr expr() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      TermPtr l = expr();
      skip_ws();
      // A closing parenthesis here means the parentheses were redundant.
      if (pos_ < s_.size() && s_[pos_] == ')') {
        ++pos_;
        return l;
      }
      char op = peek();
      if (op != '*' && op != '\\') fail("expected * or \\");
      ++pos_;
      TermPtr r = expr();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected )");
      ++pos_;
      return op == '*' ? Term::mul(l, r) : Term::ldiv(l, r);
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      if (c == '-') ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("expected digits after -");
      while (pos_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      return Term::constant(std::stoll(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "e") return Term::unit();
      return Term::generator(std::move(name));
    }
    fail("unexpected character");
  }
};

}  // namespace

TermPtr parse_term(const std::string& text) { return TermParser(text).parse(); }

Element evaluate(const Term& t, const Magma& m, const Assignment& a) {
  switch (t.kind) {
    case Term::Kind::Unit: return m.unit();
    case Term::Kind::Const:
      if (!m.in_carrier(t.value))
        throw EvalError("constant " + std::to_string(t.value) +
                        " is not in the carrier");
      return t.value;
    case Term::Kind::Gen: {
      auto it = a.find(t.gen);
      if (it == a.end()) throw EvalError("unbound generator " + t.gen);
      return it->second;
    }
    case Term::Kind::Mul:
      return m.mul(evaluate(*t.left, m, a), evaluate(*t.right, m, a));
    case Term::Kind::Ldiv:
      return m.ldiv(evaluate(*t.left, m, a), evaluate(*t.right, m, a));
  }
  throw EvalError("corrupt term");
}

namespace {

TermPtr canon_const(Element v, const Magma& m) {
  return v == m.unit() ? Term::unit() : Term::constant(v);
}

}  // namespace

// Children are normalized first, so a single bottom-up pass suffices: every
// root rule either returns an already-normal subterm or a leaf.
TermPtr normalize(const TermPtr& t, const Magma& m) {
  switch (t->kind) {
    case Term::Kind::Unit:
    case Term::Kind::Gen: return t;
    case Term::Kind::Const: return canon_const(t->value, m);
    case Term::Kind::Mul: {
      TermPtr l = normalize(t->left, m);
      TermPtr r = normalize(t->right, m);
      if (l->kind == Term::Kind::Unit) return r;                       // U1
      if (r->kind == Term::Kind::Unit) return l;                       // U2
      if (l->kind == Term::Kind::Const && r->kind == Term::Kind::Const)
        return canon_const(m.mul(l->value, r->value), m);              // T
      if (r->kind == Term::Kind::Ldiv && term_equal(*l, *r->left))
        return r->right;                                               // C
      return Term::mul(std::move(l), std::move(r));
    }
    case Term::Kind::Ldiv: {
      TermPtr l = normalize(t->left, m);
      TermPtr r = normalize(t->right, m);
      if (l->kind == Term::Kind::Unit) return r;                       // U3
      if (l->kind == Term::Kind::Const && r->kind == Term::Kind::Const)
        return canon_const(m.ldiv(l->value, r->value), m);             // T
      return Term::ldiv(std::move(l), std::move(r));
    }
  }
  throw EvalError("corrupt term");
}

bool kernel_member(const Magma& m, Element x, const Term& t) {
  return evaluate(t, m, {{"z", x}}) == m.unit();
}

}  // namespace lpm
