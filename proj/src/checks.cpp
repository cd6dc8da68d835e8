#include "lpm/checks.hpp"

#include <map>
#include <set>

namespace lpm {

namespace {

Window stamp(const Magma& m, std::optional<Window> w) {
  if (w) return m.clamp(*w);
  return Window(0, m.size() - 1);
}

// Row-major (x outer, y inner) scan of a binary predicate; the expected
// value is the second callable, so evaluation errors carry the pair.
template <typename F>
CheckReport scan_pairs(const Magma& m, std::optional<Window> w, F&& check) {
  CheckReport r;
  r.window = stamp(m, w);
  r.exhaustive = m.finite() && !w;
  auto dom = domain_of(m, w);
  for (Element x : dom) {
    for (Element y : dom) {
      try {
        auto [ok, observed] = check(x, y);
        if (!ok) {
          r.pass = false;
          r.counterexample = {x, y};
          r.observed = observed;
          return r;
        }
      } catch (const EvalError& e) {
        r.pass = false;
        r.counterexample = {x, y};
        r.error = e.what();
        return r;
      }
    }
  }
  return r;
}

}  // namespace

std::string CheckReport::str() const {
  std::string s = pass ? "pass" : "fail";
  if (counterexample)
    s += " at (" + std::to_string(counterexample->first) + "," +
         std::to_string(counterexample->second) + ")";
  if (observed) s += " value " + std::to_string(*observed);
  if (error) s += " [" + *error + "]";
  s += exhaustive ? " (exhaustive)" : " (window " + window.str() + ")";
  return s;
}

CheckReport check_identity1(const Magma& m, std::optional<Window> w) {
  return scan_pairs(m, w, [&m](Element x, Element y) {
    Element v = m.mul(x, m.ldiv(x, y));
    return std::pair{v == y, v};
  });
}

CheckReport check_identity2(const Magma& m, std::optional<Window> w) {
  return scan_pairs(m, w, [&m](Element x, Element y) {
    Element v = m.ldiv(x, m.mul(x, y));
    return std::pair{v == y, v};
  });
}

CheckReport check_identity3(const Magma& m, std::optional<Window> w) {
  CheckReport r;
  r.window = stamp(m, w);
  r.exhaustive = m.finite() && !w;
  Element e = m.unit();
  for (Element x : domain_of(m, w)) {
    try {
      Element l = m.mul(e, x);
      if (l != x) {
        r.pass = false;
        r.counterexample = {e, x};
        r.observed = l;
        return r;
      }
      Element rv = m.mul(x, e);
      if (rv != x) {
        r.pass = false;
        r.counterexample = {x, e};
        r.observed = rv;
        return r;
      }
    } catch (const EvalError& err) {
      r.pass = false;
      r.counterexample = {x, x};
      r.error = err.what();
      return r;
    }
  }
  return r;
}

LpmReport is_lpm(const Magma& m, std::optional<Window> w) {
  LpmReport r;
  r.id1 = check_identity1(m, w);
  r.id3 = check_identity3(m, w);
  r.ok = r.id1.pass && r.id3.pass;
  return r;
}

LeftLoopReport is_left_loop(const Magma& m, std::optional<Window> w) {
  LeftLoopReport r;
  r.id1 = check_identity1(m, w);
  r.id2 = check_identity2(m, w);
  r.id3 = check_identity3(m, w);
  r.ok = r.id1.pass && r.id2.pass && r.id3.pass;
  return r;
}

PropReport check_props(const Magma& m, std::optional<Window> w) {
  PropReport r;
  r.evidence_only = !m.finite() || w.has_value();
  auto dom = domain_of(m, w);
  Window win = stamp(m, w);
  bool exhaustive = m.finite() && !w;

  // (i) surjectivity of each M_y; on a window a true preimage may lie
  // outside, so a miss is only reported, not proof of failure.
  r.surjective.window = win;
  r.surjective.exhaustive = exhaustive;
  for (Element y : dom) {
    std::set<Element> image;
    try {
      for (Element x : dom) image.insert(m.mul(y, x));
      for (Element z : dom) {
        if (!image.count(z)) {
          r.surjective.pass = false;
          r.surjective.counterexample = {y, z};
          break;
        }
      }
    } catch (const EvalError& e) {
      r.surjective.pass = false;
      r.surjective.error = e.what();
    }
    if (!r.surjective.pass) break;
  }

  // (ii) injectivity of each D_y, and D_e = id.
  r.injective.window = win;
  r.injective.exhaustive = exhaustive;
  Element e = m.unit();
  for (Element y : dom) {
    std::map<Element, Element> seen;
    try {
      for (Element x : dom) {
        Element v = m.ldiv(y, x);
        if (y == e && v != x) {
          r.injective.pass = false;
          r.injective.counterexample = {y, x};
          r.injective.observed = v;
          break;
        }
        auto [it, fresh] = seen.emplace(v, x);
        if (!fresh) {
          r.injective.pass = false;
          r.injective.counterexample = {y, x};
          r.injective.observed = v;
          break;
        }
      }
    } catch (const EvalError& err) {
      r.injective.pass = false;
      r.injective.error = err.what();
    }
    if (!r.injective.pass) break;
  }

  // (iii) x\y = e forces x = y.
  r.diagonal = scan_pairs(m, w, [&m, e](Element x, Element y) {
    Element v = m.ldiv(x, y);
    return std::pair{!(v == e && x != y), v};
  });
  return r;
}

CheckReport check_xdivx(const Magma& m, std::optional<Window> w) {
  CheckReport r;
  r.window = stamp(m, w);
  r.exhaustive = m.finite() && !w;
  Element e = m.unit();
  for (Element x : domain_of(m, w)) {
    try {
      Element v = m.ldiv(x, x);
      if (v != e) {
        r.pass = false;
        r.counterexample = {x, x};
        r.observed = v;
        return r;
      }
    } catch (const EvalError& err) {
      r.pass = false;
      r.counterexample = {x, x};
      r.error = err.what();
      return r;
    }
  }
  return r;
}

ClosureReport check_closure(const Magma& m, const Subcarrier& s,
                            std::optional<Window> w) {
  ClosureReport r;
  r.window = stamp(m, w);
  r.unit_in = s.contains(m.unit());
  r.closed = r.unit_in;
  if (!r.unit_in) {
    r.violation = "unit not in subcarrier";
    return r;
  }
  auto dom = domain_of(m, w);
  for (Element a : dom) {
    if (!s.contains(a)) continue;
    for (Element b : dom) {
      if (!s.contains(b)) continue;
      try {
        Element p = m.mul(a, b);
        if (!s.contains(p)) {
          r.closed = false;
          r.violation = "mul(" + std::to_string(a) + "," + std::to_string(b) +
                        ") = " + std::to_string(p) + " escapes";
          return r;
        }
        Element d = m.ldiv(a, b);
        if (!s.contains(d)) {
          r.closed = false;
          r.violation = "ldiv(" + std::to_string(a) + "," + std::to_string(b) +
                        ") = " + std::to_string(d) + " escapes";
          return r;
        }
      } catch (const EvalError& e) {
        r.closed = false;
        r.violation = e.what();
        return r;
      }
    }
  }
  return r;
}

RestrictResult restrict(std::shared_ptr<const Magma> base, const Subcarrier& s,
                        std::optional<Window> w) {
  RestrictResult r;
  r.closure = check_closure(*base, s, w);
  if (r.closure.closed) {
    if (s.kind == Subcarrier::Kind::All)
      r.magma = std::move(base);  // restriction to `all` is the identity
    else
      r.magma = std::make_shared<RestrictedMagma>(std::move(base), s);
  }
  return r;
}

ConstructResult construct_mul_from_div(std::shared_ptr<const Magma> div,
                                       std::optional<Window> w,
                                       const std::string& name) {
  ConstructResult r;
  PropReport props = check_props(*div, w);
  r.precondition = props;
  if (!props.injective.pass || !props.diagonal.pass) return r;
  auto dom = domain_of(*div, w);
  r.magma = std::make_shared<ConstructedMagma>(name, std::move(div), dom);
  return r;
}

std::optional<Mismatch> magmas_differ_on(const Magma& m1, const Magma& m2,
                                         const std::vector<Element>& dom) {
  auto probe = [&](char op, Element x, Element y) -> std::optional<Mismatch> {
    auto run = [&](const Magma& m) -> std::string {
      try {
        Element v = op == '*' ? m.mul(x, y) : m.ldiv(x, y);
        return std::to_string(v);
      } catch (const EvalError& e) {
        return std::string("<error: ") + e.what() + ">";
      }
    };
    std::string a = run(m1), b = run(m2);
    if (a == b) return std::nullopt;
    return Mismatch{op, x, y, a, b};
  };
  for (Element x : dom)
    for (Element y : dom) {
      if (auto d = probe('*', x, y)) return d;
      if (auto d = probe('\\', x, y)) return d;
    }
  return std::nullopt;
}

}  // namespace lpm
