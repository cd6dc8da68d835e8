#include "lpm/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace lpm {

namespace {

struct Token {
  std::string text;
  int line, col;
};

// Whitespace-separated tokens with `#` comments; operators and parentheses
// split even without surrounding spaces.
std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto bump = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump(text[i++]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(c);
      ++i;
      continue;
    }
    int tl = line, tc = col;
    std::string tok;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_' || text[i] == '-')) {
        tok += text[i];
        bump(text[i++]);
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i]))) {
        tok += text[i];
        bump(text[i++]);
      }
    } else {
      static const std::vector<std::string> multi = {"==", "!=", ">=", "<=",
                                                     "&&", "->"};
      bool took = false;
      for (const auto& m : multi) {
        if (text.compare(i, m.size(), m) == 0) {
          tok = m;
          bump(text[i++]);
          bump(text[i++]);
          took = true;
          break;
        }
      }
      if (!took) {
        tok = std::string(1, c);
        bump(text[i++]);
      }
    }
    out.push_back({tok, tl, tc});
  }
  return out;
}

class Cursor {
public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  bool done() const { return pos_ >= toks_.size(); }
  const Token& peek() const {
    if (done()) throw ParseError(last_line(), last_col(), "unexpected end of input");
    return toks_[pos_];
  }
  Token next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }
  bool accept(const std::string& s) {
    if (!done() && toks_[pos_].text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  Token expect(const std::string& s, const std::string& what) {
    if (done() || toks_[pos_].text != s)
      fail("expected " + what + " `" + s + "`");
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    if (done()) throw ParseError(last_line(), last_col(), msg);
    throw ParseError(toks_[pos_].line, toks_[pos_].col,
                     msg + " (got `" + toks_[pos_].text + "`)");
  }
  Element integer(const std::string& what) {
    bool neg = accept("-");
    const Token& t = peek();
    if (t.text.empty() || !std::isdigit(static_cast<unsigned char>(t.text[0])))
      fail("expected " + what);
    Element v = std::stoll(next().text);
    return neg ? -v : v;
  }

private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  int last_line() const { return toks_.empty() ? 1 : toks_.back().line; }
  int last_col() const {
    return toks_.empty() ? 1
                         : toks_.back().col +
                               static_cast<int>(toks_.back().text.size());
  }
};

// result := sum [ '/' '2' ] ; affine in x and y only
Affine parse_affine(Cursor& cur);

struct Lin {
  Element a = 0, b = 0, c = 0;
};

Lin parse_sum(Cursor& cur);

Lin parse_atom_expr(Cursor& cur) {
  if (cur.accept("(")) {
    Lin v = parse_sum(cur);
    cur.expect(")", "closing");
    return v;
  }
  const Token& t = cur.peek();
  if (t.text == "x") {
    cur.next();
    return {1, 0, 0};
  }
  if (t.text == "y") {
    cur.next();
    return {0, 1, 0};
  }
  if (!t.text.empty() && std::isdigit(static_cast<unsigned char>(t.text[0])))
    return {0, 0, std::stoll(cur.next().text)};
  cur.fail("expected x, y, an integer or a parenthesized expression");
}

Lin parse_product(Cursor& cur) {
  bool neg = cur.accept("-");
  Lin v = parse_atom_expr(cur);
  while (cur.accept("*")) {
    Lin w = parse_atom_expr(cur);
    bool v_const = v.a == 0 && v.b == 0;
    bool w_const = w.a == 0 && w.b == 0;
    if (!v_const && !w_const)
      cur.fail("result expressions must be affine in x and y");
    Element k = v_const ? v.c : w.c;
    Lin lin = v_const ? w : v;
    v = {lin.a * k, lin.b * k, lin.c * k};
  }
  if (neg) v = {-v.a, -v.b, -v.c};
  return v;
}

Lin parse_sum(Cursor& cur) {
  Lin v = parse_product(cur);
  while (true) {
    if (cur.accept("+")) {
      Lin w = parse_product(cur);
      v = {v.a + w.a, v.b + w.b, v.c + w.c};
    } else if (cur.accept("-")) {
      Lin w = parse_atom_expr(cur);
      while (cur.accept("*")) {
        Lin u = parse_atom_expr(cur);
        bool wc = w.a == 0 && w.b == 0, uc = u.a == 0 && u.b == 0;
        if (!wc && !uc)
          cur.fail("result expressions must be affine in x and y");
        Element k = wc ? w.c : u.c;
        Lin lin = wc ? u : w;
        w = {lin.a * k, lin.b * k, lin.c * k};
      }
      v = {v.a - w.a, v.b - w.b, v.c - w.c};
    } else {
      break;
    }
  }
  return v;
}

Affine parse_affine(Cursor& cur) {
  Lin v = parse_sum(cur);
  Affine r{v.a, v.b, v.c, false};
  if (cur.accept("/")) {
    const Token& t = cur.peek();
    if (t.text != "2") cur.fail("only division by 2 is supported");
    cur.next();
    r.halve = true;
  }
  return r;
}

Atom parse_guard_atom(Cursor& cur) {
  const Token& t = cur.peek();
  if (t.text == "even" || t.text == "odd") {
    Atom a;
    a.kind = Atom::Kind::Parity;
    a.even = t.text == "even";
    cur.next();
    cur.expect("(", "opening");
    const Token& v = cur.peek();
    if (v.text != "x" && v.text != "y") cur.fail("expected x or y");
    a.lhs = cur.next().text[0];
    cur.expect(")", "closing");
    return a;
  }
  if (t.text != "x" && t.text != "y")
    cur.fail("expected a guard atom on x or y");
  Atom a;
  a.lhs = cur.next().text[0];
  static const std::map<std::string, Atom::Op> ops = {
      {"==", Atom::Op::Eq}, {"!=", Atom::Op::Ne}, {">", Atom::Op::Gt},
      {"<", Atom::Op::Lt},  {">=", Atom::Op::Ge}, {"<=", Atom::Op::Le}};
  auto it = cur.done() ? ops.end() : ops.find(cur.peek().text);
  if (it == ops.end()) cur.fail("expected a comparison operator");
  cur.next();
  a.op = it->second;
  const Token& rhs = cur.peek();
  if (rhs.text == "x" || rhs.text == "y") {
    if (rhs.text[0] == a.lhs) cur.fail("comparison must involve the other variable");
    a.rhs_is_var = true;
    cur.next();
  } else if (rhs.text == "0") {
    cur.next();
  } else {
    cur.fail("guards may only compare against 0 or the other variable");
  }
  return a;
}

Clause parse_clause(Cursor& cur) {
  Clause c;
  c.guard.push_back(parse_guard_atom(cur));
  while (cur.accept("&&")) c.guard.push_back(parse_guard_atom(cur));
  cur.expect("->", "arrow");
  c.result = parse_affine(cur);
  return c;
}

}  // namespace

FiniteMagma parse_table(const std::string& text) {
  Cursor cur(tokenize(text));
  if (cur.done() || cur.peek().text != "lpm-table")
    cur.fail("expected magic `lpm-table`");
  cur.next();
  cur.expect("v1", "version");
  cur.expect("name", "keyword");
  std::string name = cur.next().text;
  cur.expect("size", "keyword");
  Element n = cur.integer("size");
  if (n <= 0) cur.fail("size must be positive");
  cur.expect("unit", "keyword");
  Element unit = cur.integer("unit index");
  if (unit < 0 || unit >= n) cur.fail("unit index out of range");

  auto read_table = [&](const char* section) {
    cur.expect(section, "section");
    std::vector<std::vector<Element>> t;
    for (Element i = 0; i < n; ++i) {
      std::vector<Element> row;
      for (Element j = 0; j < n; ++j) {
        Token at = cur.peek();
        Element v = cur.integer("table entry");
        if (v < 0 || v >= n)
          throw ParseError(at.line, at.col, "entry out of range");
        row.push_back(v);
      }
      t.push_back(std::move(row));
    }
    return t;
  };
  auto mul = read_table("mul");
  auto ldiv = read_table("ldiv");
  if (!cur.done()) cur.fail("trailing input after tables");
  return FiniteMagma(std::move(name), n, unit, std::move(mul),
                     std::move(ldiv));
}

RuleMagma parse_rules(const std::string& text, bool require_mul) {
  Cursor cur(tokenize(text));
  if (cur.done() || cur.peek().text != "lpm-rules")
    cur.fail("expected magic `lpm-rules`");
  cur.next();
  cur.expect("v1", "version");
  cur.expect("name", "keyword");
  std::string name = cur.next().text;
  cur.expect("carrier", "keyword");
  const Token& ct = cur.peek();
  Carrier carrier;
  if (ct.text == "N") carrier = Carrier::N;
  else if (ct.text == "Z") carrier = Carrier::Z;
  else cur.fail("carrier must be N or Z");
  cur.next();

  std::vector<Clause> mul, ldiv;
  bool saw_mul = false, saw_ldiv = false;
  while (!cur.done()) {
    const Token& sec = cur.peek();
    std::vector<Clause>* dst = nullptr;
    if (sec.text == "mul") {
      if (saw_mul) cur.fail("duplicate mul section");
      saw_mul = true;
      dst = &mul;
    } else if (sec.text == "ldiv") {
      if (saw_ldiv) cur.fail("duplicate ldiv section");
      saw_ldiv = true;
      dst = &ldiv;
    } else {
      cur.fail("expected a `mul` or `ldiv` section");
    }
    cur.next();
    while (!cur.done() && cur.peek().text != "mul" &&
           cur.peek().text != "ldiv")
      dst->push_back(parse_clause(cur));
    if (dst->empty()) cur.fail("empty section");
  }
  if (!saw_ldiv) cur.fail("missing ldiv section");
  if (require_mul && !saw_mul) cur.fail("missing mul section");
  return RuleMagma(std::move(name), carrier, std::move(mul), std::move(ldiv));
}

std::shared_ptr<const Magma> parse_magma(const std::string& text,
                                         bool require_mul) {
  Cursor cur(tokenize(text));
  if (!cur.done() && cur.peek().text == "lpm-rules")
    return std::make_shared<RuleMagma>(parse_rules(text, require_mul));
  return std::make_shared<FiniteMagma>(parse_table(text));
}

std::string print_magma(const FiniteMagma& m) {
  std::ostringstream os;
  os << "lpm-table v1\n";
  os << "name " << m.name() << "\n";
  os << "size " << m.size() << "\n";
  os << "unit " << m.unit() << "\n";
  for (auto [label, table] :
       {std::pair{"mul", &m.mul_table()}, {"ldiv", &m.ldiv_table()}}) {
    os << label << "\n";
    for (const auto& row : *table) {
      for (size_t j = 0; j < row.size(); ++j)
        os << (j ? " " : "") << row[j];
      os << "\n";
    }
  }
  return os.str();
}

std::string print_magma(const RuleMagma& m) {
  std::ostringstream os;
  os << "lpm-rules v1\n";
  os << "name " << m.name() << "\n";
  os << "carrier " << (m.carrier() == Carrier::N ? "N" : "Z") << "\n";
  os << "ldiv\n";
  for (const auto& c : m.ldiv_clauses()) os << "  " << c.str() << "\n";
  os << "mul\n";
  for (const auto& c : m.mul_clauses()) os << "  " << c.str() << "\n";
  return os.str();
}

std::string print_magma(const Magma& m) {
  if (auto* f = dynamic_cast<const FiniteMagma*>(&m)) return print_magma(*f);
  if (auto* r = dynamic_cast<const RuleMagma*>(&m)) return print_magma(*r);
  throw std::invalid_argument("only table and rule magmas are serializable");
}

// --- builtins ---------------------------------------------------------------

namespace {

const std::map<std::string, std::pair<std::string, std::string>>& registry() {
  static const std::map<std::string, std::pair<std::string, std::string>> reg =
      {
          {"nwp-N",
           {"lpm-rules v1\n"
            "name nwp-N\n"
            "carrier N\n"
            "ldiv\n"
            "  x == 0 -> y\n"
            "  x > 0 -> y + 1\n"
            "mul\n"
            "  y == 0 -> x\n"
            "  x == 0 -> y\n"
            "  x > 0 && y > 0 -> y - 1\n",
            "naturals with shifted division; not weakly protomodular"}},
          {"pnl-N",
           {"lpm-rules v1\n"
            "name pnl-N\n"
            "carrier N\n"
            "ldiv\n"
            "  x == 0 -> y\n"
            "  x == y -> 0\n"
            "  x > 0 && x != y -> y + 1\n"
            "mul\n"
            "  y == 0 -> x\n"
            "  x == 0 -> y\n"
            "  x > 0 && y > 0 -> y - 1\n",
            "naturals with x\\x = 0; protomodular but not a left loop"}},
          {"triv",
           {"lpm-table v1\n"
            "name triv\n"
            "size 1\n"
            "unit 0\n"
            "mul\n"
            "0\n"
            "ldiv\n"
            "0\n",
            "one-element structure"}},
          {"wp-Z",
           {"lpm-rules v1\n"
            "name wp-Z\n"
            "carrier Z\n"
            "ldiv\n"
            "  x == 0 -> y\n"
            "  x > 0 && y >= 0 -> y + 1\n"
            "  x > 0 && y < 0 -> y\n"
            "  x < 0 && y >= 0 -> -2*y - 1\n"
            "  x < 0 && y < 0 && x != y -> 2*y\n"
            "  x < 0 && x == y -> 0\n"
            "mul\n"
            "  y == 0 -> x\n"
            "  x == 0 -> y\n"
            "  x > 0 && y > 0 -> y - 1\n"
            "  x > 0 && y < 0 -> y\n"
            "  x < 0 && odd(y) -> (-y - 1) / 2\n"
            "  x < 0 && y != 0 && even(y) -> y / 2\n",
            "integers; weakly protomodular but not protomodular"}},
          {"z2",
           {"lpm-table v1\n"
            "name z2\n"
            "size 2\n"
            "unit 0\n"
            "mul\n"
            "0 1\n"
            "1 0\n"
            "ldiv\n"
            "0 1\n"
            "1 0\n",
            "the unique two-element structure; a left loop"}},
      };
  return reg;
}

}  // namespace

std::shared_ptr<const Magma> builtin(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) {
    std::string names;
    for (const auto& n : builtin_names()) {
      if (!names.empty()) names += ", ";
      names += n;
    }
    throw std::invalid_argument("unknown builtin `" + name +
                                "` (available: " + names + ")");
  }
  return parse_magma(it->second.first);
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;  // map order: already sorted
}

std::string builtin_blurb(const std::string& name) {
  return registry().at(name).second;
}

const std::string& builtin_source(const std::string& name) {
  return registry().at(name).first;
}

}  // namespace lpm
