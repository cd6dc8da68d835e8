#include "lpm/magma.hpp"

#include <algorithm>

namespace lpm {

std::vector<Element> domain_of(const Magma& m, std::optional<Window> w) {
  Window win = w ? m.clamp(*w)
                 : (m.finite() ? Window(0, m.size() - 1)
                               : throw std::invalid_argument(
                                     "a window is required on an infinite "
                                     "carrier"));
  if (m.finite()) win = m.clamp(win);
  std::vector<Element> out;
  out.reserve(static_cast<size_t>(win.width()));
  for (Element v = win.lo; v <= win.hi; ++v) out.push_back(v);
  return out;
}

// --- FiniteMagma -----------------------------------------------------------

FiniteMagma::FiniteMagma(std::string name, Element n, Element unit,
                         std::vector<std::vector<Element>> mul,
                         std::vector<std::vector<Element>> ldiv)
    : n_(n), unit_(unit), mul_(std::move(mul)), ldiv_(std::move(ldiv)) {
  name_ = std::move(name);
  if (n_ <= 0) throw std::invalid_argument("size must be positive");
  if (unit_ < 0 || unit_ >= n_)
    throw std::invalid_argument("unit index out of range");
  for (auto* t : {&mul_, &ldiv_}) {
    if (t->size() != static_cast<size_t>(n_))
      throw std::invalid_argument("table must have n rows");
    for (auto& row : *t) {
      if (row.size() != static_cast<size_t>(n_))
        throw std::invalid_argument("table row must have n entries");
      for (Element v : row)
        if (v < 0 || v >= n_)
          throw std::invalid_argument("table entry out of range");
    }
  }
}

Element FiniteMagma::lookup(const std::vector<std::vector<Element>>& t,
                            Element a, Element b, const char* op) const {
  if (!in_carrier(a) || !in_carrier(b))
    throw EvalError(std::string(op) + ": index out of range in " + name_ +
                    " at (" + std::to_string(a) + "," + std::to_string(b) +
                    ")");
  return t[static_cast<size_t>(a)][static_cast<size_t>(b)];
}

Element FiniteMagma::mul(Element a, Element b) const {
  return lookup(mul_, a, b, "mul");
}
Element FiniteMagma::ldiv(Element a, Element b) const {
  return lookup(ldiv_, a, b, "ldiv");
}

// --- rule magmas -----------------------------------------------------------

bool Atom::holds(Element x, Element y) const {
  Element l = lhs == 'x' ? x : y;
  if (kind == Kind::Parity) {
    bool is_even = ((l % 2) + 2) % 2 == 0;
    return even ? is_even : !is_even;
  }
  Element r = rhs_is_var ? (lhs == 'x' ? y : x) : 0;
  switch (op) {
    case Op::Eq: return l == r;
    case Op::Ne: return l != r;
    case Op::Gt: return l > r;
    case Op::Lt: return l < r;
    case Op::Ge: return l >= r;
    case Op::Le: return l <= r;
  }
  return false;
}

std::string Atom::str() const {
  if (kind == Kind::Parity)
    return std::string(even ? "even" : "odd") + "(" + lhs + ")";
  static const char* ops[] = {"==", "!=", ">", "<", ">=", "<="};
  std::string rhs = rhs_is_var ? std::string(1, lhs == 'x' ? 'y' : 'x') : "0";
  return std::string(1, lhs) + " " + ops[static_cast<int>(op)] + " " + rhs;
}

Element Affine::eval(Element x, Element y) const {
  Element v = a * x + b * y + c;
  if (halve) {
    if (v % 2 != 0)
      throw EvalError("inexact division by 2 (dividend " + std::to_string(v) +
                      ")");
    v /= 2;
  }
  return v;
}

std::string Affine::str() const {
  std::string s;
  auto emit = [&s](Element coef, const char* var) {
    if (coef == 0) return;
    if (s.empty()) {
      if (coef == -1 && *var) s += "-";
      else if (coef != 1 || !*var) s += std::to_string(coef);
      if (coef != 1 && coef != -1 && *var) s += "*";
    } else {
      s += coef > 0 ? " + " : " - ";
      Element m = coef > 0 ? coef : -coef;
      if (m != 1 || !*var) s += std::to_string(m);
      if (m != 1 && *var) s += "*";
    }
    s += var;
  };
  emit(a, "x");
  emit(b, "y");
  if (c != 0) emit(c, "");
  if (s.empty()) s = "0";
  if (halve) s = "(" + s + ") / 2";
  return s;
}

bool Clause::matches(Element x, Element y) const {
  for (const Atom& at : guard)
    if (!at.holds(x, y)) return false;
  return true;
}

std::string Clause::str() const {
  std::string s;
  for (size_t i = 0; i < guard.size(); ++i) {
    if (i) s += " && ";
    s += guard[i].str();
  }
  if (s.empty()) s = "true";
  return s + " -> " + result.str();
}

RuleMagma::RuleMagma(std::string name, Carrier carrier,
                     std::vector<Clause> mul_clauses,
                     std::vector<Clause> ldiv_clauses)
    : carrier_(carrier),
      mul_clauses_(std::move(mul_clauses)),
      ldiv_clauses_(std::move(ldiv_clauses)) {
  name_ = std::move(name);
}

Element RuleMagma::apply(const std::vector<Clause>& cs, Element a, Element b,
                         const char* op) const {
  for (const Clause& c : cs) {
    if (!c.matches(a, b)) continue;
    Element v = c.result.eval(a, b);
    if (!in_carrier(v))
      throw EvalError(std::string(op) + "(" + std::to_string(a) + "," +
                      std::to_string(b) + ") = " + std::to_string(v) +
                      " lies outside the carrier of " + name_);
    return v;
  }
  throw EvalError(std::string(op) + "(" + std::to_string(a) + "," +
                  std::to_string(b) + "): no clause matches in " + name_);
}

Element RuleMagma::mul(Element a, Element b) const {
  return apply(mul_clauses_, a, b, "mul");
}
Element RuleMagma::ldiv(Element a, Element b) const {
  return apply(ldiv_clauses_, a, b, "ldiv");
}

// --- subcarriers -----------------------------------------------------------

bool Subcarrier::contains(Element v) const {
  switch (kind) {
    case Kind::All: return true;
    case Kind::Nonneg: return v >= 0;
    case Kind::Nonpos: return v <= 0;
    case Kind::Even: return ((v % 2) + 2) % 2 == 0;
    case Kind::FiniteSet:
      return std::find(elems.begin(), elems.end(), v) != elems.end();
  }
  return false;
}

std::string Subcarrier::str() const {
  switch (kind) {
    case Kind::All: return "all";
    case Kind::Nonneg: return "nonneg";
    case Kind::Nonpos: return "nonpos";
    case Kind::Even: return "even";
    case Kind::FiniteSet: {
      std::string s = "set{";
      for (size_t i = 0; i < elems.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(elems[i]);
      }
      return s + "}";
    }
  }
  return "?";
}

Subcarrier Subcarrier::parse(const std::string& text) {
  if (text == "all") return {Kind::All, {}};
  if (text == "nonneg") return {Kind::Nonneg, {}};
  if (text == "nonpos") return {Kind::Nonpos, {}};
  if (text == "even") return {Kind::Even, {}};
  if (text.rfind("set{", 0) == 0 && text.back() == '}') {
    Subcarrier s{Kind::FiniteSet, {}};
    std::string body = text.substr(4, text.size() - 5);
    size_t pos = 0;
    while (pos < body.size()) {
      size_t comma = body.find(',', pos);
      std::string tok = body.substr(pos, comma == std::string::npos
                                             ? std::string::npos
                                             : comma - pos);
      s.elems.push_back(std::stoll(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return s;
  }
  throw std::invalid_argument("unknown subcarrier predicate: " + text +
                              " (expected all|nonneg|nonpos|even|set{..})");
}

// --- restriction and construction ------------------------------------------

RestrictedMagma::RestrictedMagma(std::shared_ptr<const Magma> base,
                                 Subcarrier sub)
    : base_(std::move(base)), sub_(std::move(sub)) {
  name_ = base_->name() + "|" + sub_.str();
}

bool RestrictedMagma::finite() const {
  return base_->finite() || sub_.kind == Subcarrier::Kind::FiniteSet;
}

Element RestrictedMagma::size() const {
  if (base_->finite()) {
    Element c = 0;
    for (Element v = 0; v < base_->size(); ++v)
      if (sub_.contains(v)) ++c;
    return c;
  }
  if (sub_.kind == Subcarrier::Kind::FiniteSet)
    return static_cast<Element>(sub_.elems.size());
  return Magma::size();
}

Window RestrictedMagma::clamp(Window w) const {
  Window b = base_->clamp(w);
  if (sub_.kind == Subcarrier::Kind::Nonneg && b.lo < 0)
    b = Window(0, std::max<Element>(b.hi, 0));
  if (sub_.kind == Subcarrier::Kind::Nonpos && b.hi > 0)
    b = Window(std::min<Element>(b.lo, 0), 0);
  return b;
}

ConstructedMagma::ConstructedMagma(std::string name,
                                   std::shared_ptr<const Magma> div,
                                   const std::vector<Element>& dom)
    : div_(std::move(div)) {
  name_ = std::move(name);
  for (Element y : dom) {
    auto& inv = inv_[y];
    for (Element x : dom) {
      Element d = div_->ldiv(y, x);
      auto [it, fresh] = inv.emplace(d, x);
      if (!fresh && it->second != x)
        throw EvalError("D_" + std::to_string(y) +
                        " is not injective on the construction domain");
    }
  }
}

Element ConstructedMagma::mul(Element y, Element x) const {
  auto row = inv_.find(y);
  if (row == inv_.end())
    throw EvalError("mul: " + std::to_string(y) +
                    " is outside the construction domain of " + name_);
  auto it = row->second.find(x);
  return it == row->second.end() ? y : it->second;
}

}  // namespace lpm
