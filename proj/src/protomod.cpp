#include "lpm/protomod.hpp"

#include <algorithm>
#include <deque>

#include "lpm/dsl.hpp"

namespace lpm {

std::string WitnessChain::str() const {
  std::string s;
  for (size_t i = 0; i < elems.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(elems[i]);
  }
  return s;
}

bool verify_witness(const Magma& m, Element x, const WitnessChain& c) {
  if (c.elems.empty()) return false;
  Element v = x;
  // x_n is applied first, x_1 last (outermost).
  for (auto it = c.elems.rbegin(); it != c.elems.rend(); ++it)
    v = m.ldiv(*it, v);
  return v == m.unit();
}

std::vector<Element> divisor_scan(const Magma& m, Window w) {
  Window cw = m.clamp(w);
  std::vector<Element> out;
  out.reserve(static_cast<size_t>(cw.width()));
  for (Element v = cw.lo; v <= cw.hi; ++v) out.push_back(v);
  std::stable_sort(out.begin(), out.end(), [](Element a, Element b) {
    Element ma = a < 0 ? -a : a, mb = b < 0 ? -b : b;
    return ma != mb ? ma < mb : a < b;
  });
  return out;
}

namespace {

struct BfsState {
  std::map<Element, std::pair<Element, Element>> parent;  // state -> (prev, divisor)
  std::optional<Element> goal_hit;
};

// Breadth-first exploration of z -> y\z. `on_layer` sees each completed
// depth's frontier; returning false stops early (used once the unit is
// found for chain reconstruction).
BfsState bfs(const Magma& m, Element x, int depth,
             const std::vector<Element>& divisors, Element value_bound,
             std::set<Element>* reached) {
  BfsState st;
  Element e = m.unit();
  std::set<Element> visited{x};
  std::deque<Element> frontier{x};
  for (int d = 0; d < depth && !frontier.empty(); ++d) {
    std::deque<Element> next;
    for (Element s : frontier) {
      for (Element y : divisors) {
        Element t;
        try {
          t = m.ldiv(y, s);
        } catch (const EvalError&) {
          continue;  // divisor outside this magma's carrier
        }
        if (reached) reached->insert(t);
        if (t == e && !st.goal_hit) {
          st.parent.emplace(t, std::pair{s, y});
          st.goal_hit = s;
          if (!reached) return st;
        }
        if (t > value_bound || t < -value_bound) continue;
        if (visited.insert(t).second) {
          st.parent.emplace(t, std::pair{s, y});
          next.push_back(t);
        }
      }
      if (st.goal_hit && !reached) return st;
    }
    if (st.goal_hit) return st;
    frontier = std::move(next);
  }
  return st;
}

}  // namespace

std::optional<WitnessChain> witness_search(const Magma& m, Element x,
                                           int depth,
                                           const std::vector<Element>& divisors,
                                           Element value_bound) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (!m.in_carrier(x)) throw EvalError("element outside carrier");
  BfsState st = bfs(m, x, depth, divisors, value_bound, nullptr);
  if (!st.parent.count(m.unit()) || !st.goal_hit) return std::nullopt;
  // Walk parents back from the unit; divisors come out in application
  // order (innermost last applied first), which is chain order x_1..x_n
  // reversed, so collect then keep as-is: the last applied divisor is x_1.
  WitnessChain c;
  Element cur = m.unit();
  while (true) {
    auto it = st.parent.find(cur);
    if (it == st.parent.end()) break;
    c.elems.push_back(it->second.second);
    cur = it->second.first;
    if (cur == x && !st.parent.count(cur)) break;
    if (cur == x) break;
  }
  return c;
}

std::set<Element> reachable_set(const Magma& m, Element x, int depth,
                                const std::vector<Element>& divisors,
                                Element value_bound) {
  std::set<Element> reached;
  bfs(m, x, depth, divisors, value_bound, &reached);
  return reached;
}

bool monotone_escape_holds(const Magma& m, Element x_max, int depth,
                           Window w) {
  auto divisors = divisor_scan(m, w);
  for (Element x = 1; x <= x_max; ++x) {
    std::set<Element> cumulative;
    std::set<Element> frontier{x};
    for (int d = 1; d <= depth; ++d) {
      std::set<Element> next;
      for (Element s : frontier)
        for (Element y : divisors) next.insert(m.ldiv(y, s));
      cumulative.insert(next.begin(), next.end());
      std::set<Element> expected;
      for (Element v = x; v <= x + d; ++v) expected.insert(v);
      if (cumulative != expected) return false;
      frontier = std::move(next);
    }
  }
  return true;
}

WpVerdict is_weakly_protomodular(const Magma& m, const SearchConfig& cfg) {
  WpVerdict v;
  v.depth = cfg.depth;
  if (m.finite()) {
    // States are carrier elements, so depth = carrier size is exhaustive.
    v.exhaustive = true;
    v.range = Window(0, m.size() - 1);
    v.divisors = v.range;
    int depth = static_cast<int>(m.size());
    v.depth = depth;
    std::vector<Element> divisors;
    for (Element y = 0; y < m.size(); ++y)
      if (m.in_carrier(y)) divisors.push_back(y);
    for (Element x = 0; x < m.size(); ++x) {
      if (!m.in_carrier(x)) continue;
      auto c = witness_search(m, x, depth, divisors, cfg.value_bound);
      if (!c) {
        v.kind = WpVerdict::Kind::Refuted;
        v.failing = x;
        return v;
      }
      v.witnesses.emplace(x, std::move(*c));
    }
    v.kind = WpVerdict::Kind::Proved;
    return v;
  }

  v.range = m.clamp(cfg.element_range);
  v.divisors = m.clamp(cfg.divisor_window);
  auto divisors = divisor_scan(m, cfg.divisor_window);
  for (Element x = v.range.lo; x <= v.range.hi; ++x) {
    auto c = witness_search(m, x, cfg.depth, divisors, cfg.value_bound);
    if (!c) {
      v.kind = WpVerdict::Kind::Inconclusive;
      v.failing = x;
      v.note = "no witness within depth " + std::to_string(cfg.depth) +
               " over divisors " + v.divisors.str() +
               "; bounded search cannot prove nonexistence";
      if (m.name() == "nwp-N" &&
          monotone_escape_holds(m, std::min<Element>(v.range.hi, 20), 30,
                                Window(0, 200))) {
        v.certified = true;
        v.note = "certified (monotonicity): every positive element only "
                 "drifts upward under left division";
      }
      return v;
    }
    v.witnesses.emplace(x, std::move(*c));
  }
  v.kind = WpVerdict::Kind::Proved;
  return v;
}

std::optional<SubalgebraRefutation> refute_protomodular_by_subalgebra(
    std::shared_ptr<const Magma> m, const Subcarrier& s,
    const SearchConfig& cfg) {
  auto res = restrict(std::move(m), s, cfg.element_range);
  if (!res.closure.closed) return std::nullopt;
  WpVerdict wp = is_weakly_protomodular(*res.magma, cfg);
  if (wp.positive()) return std::nullopt;
  SubalgebraRefutation r;
  r.subcarrier = s.str();
  r.stuck = wp.failing.value_or(0);
  r.depth = wp.depth;
  r.divisors = wp.divisors;
  r.certified = wp.kind == WpVerdict::Kind::Refuted || wp.certified;
  return r;
}

ClassificationReport classify(std::shared_ptr<const Magma> m,
                              const SearchConfig& cfg,
                              std::optional<Subcarrier> sub) {
  ClassificationReport rep;
  rep.config = cfg;
  std::optional<Window> w =
      m->finite() ? std::nullopt : std::optional<Window>(cfg.element_range);
  rep.id1 = check_identity1(*m, w);
  rep.id2 = check_identity2(*m, w);
  rep.id3 = check_identity3(*m, w);
  rep.xdivx = check_xdivx(*m, w);
  rep.lpm = rep.id1.pass && rep.id3.pass;
  rep.left_loop = rep.lpm && rep.id2.pass;
  rep.wp = is_weakly_protomodular(*m, cfg);

  if (rep.xdivx.pass) {
    rep.proto = ClassificationReport::Proto::ProvedByXdivX;
    return rep;
  }
  std::vector<Subcarrier> candidates;
  if (sub) {
    candidates.push_back(*sub);
  } else {
    candidates.push_back({Subcarrier::Kind::All, {}});
    candidates.push_back({Subcarrier::Kind::Nonneg, {}});
    candidates.push_back({Subcarrier::Kind::Nonpos, {}});
    candidates.push_back({Subcarrier::Kind::Even, {}});
  }
  for (const auto& s : candidates) {
    if (auto r = refute_protomodular_by_subalgebra(m, s, cfg)) {
      rep.proto = ClassificationReport::Proto::RefutedBySubalgebra;
      rep.refutation = std::move(r);
      return rep;
    }
  }
  rep.proto = ClassificationReport::Proto::Unknown;
  return rep;
}

}  // namespace lpm
