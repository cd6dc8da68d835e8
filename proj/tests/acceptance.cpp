// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// anything fails. Criterion 8 re-runs the CLI binary and compares bytes.

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sys/wait.h>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lpm/checks.hpp"
#include "lpm/dsl.hpp"
#include "lpm/enumerate.hpp"
#include "lpm/protomod.hpp"
#include "lpm/term.hpp"
#include "support.hpp"

using namespace lpm;

namespace {

int failures = 0;
std::vector<std::string> notes;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    notes.push_back(what);
  }
}

struct Criterion {
  const char* label;
  bool (*run)();
};

// 1. Builtin fidelity against hand-computed values.
bool criterion1() {
  bool ok = true;
  auto nwp = builtin("nwp-N");
  auto wp = builtin("wp-Z");
  auto pnl = builtin("pnl-N");

  const std::vector<std::array<Element, 4>> nwp_pairs = {
      // op(a,b) == v encoded as {op, a, b, v}; op 0 = mul, 1 = ldiv
      {1, 0, 5, 5},  {1, 3, 0, 1}, {1, 2, 3, 4}, {1, 7, 7, 8}, {1, 1, 2, 3},
      {0, 0, 4, 4},  {0, 4, 0, 4}, {0, 1, 1, 0}, {0, 5, 9, 8}, {0, 6, 1, 0}};
  const std::vector<std::array<Element, 4>> wp_pairs = {
      {1, 0, 7, 7},    {1, 3, 4, 5},  {1, 3, -2, -2}, {1, -1, 3, -7},
      {1, -2, -3, -6}, {1, -4, -4, 0}, {0, 5, 0, 5},  {0, 2, 6, 5},
      {0, -1, -7, 3},  {0, -3, 6, 3}};
  const std::vector<std::array<Element, 4>> pnl_pairs = {
      {1, 0, 9, 9}, {1, 4, 4, 0}, {1, 2, 5, 6}, {1, 1, 0, 1}, {1, 5, 5, 0},
      {0, 3, 0, 3}, {0, 0, 8, 8}, {0, 2, 7, 6}, {0, 1, 2, 1}, {0, 7, 2, 1}};

  auto run_pairs = [&](const Magma& m,
                       const std::vector<std::array<Element, 4>>& pairs) {
    for (const auto& [op, a, b, v] : pairs) {
      Element got = op == 0 ? m.mul(a, b) : m.ldiv(a, b);
      if (got != v) {
        ok = false;
        notes.push_back(m.name() + ": op " + std::to_string(op) + "(" +
                        std::to_string(a) + "," + std::to_string(b) +
                        ") = " + std::to_string(got) + ", expected " +
                        std::to_string(v));
      }
    }
  };
  run_pairs(*nwp, nwp_pairs);
  run_pairs(*wp, wp_pairs);
  run_pairs(*pnl, pnl_pairs);

  ok = ok && check_identity1(*nwp, Window(0, 200)).pass;
  ok = ok && check_identity3(*nwp, Window(0, 200)).pass;
  ok = ok && check_identity1(*wp, Window(-200, 200)).pass;
  ok = ok && check_identity3(*wp, Window(-200, 200)).pass;
  ok = ok && check_identity1(*pnl, Window(0, 200)).pass;
  ok = ok && check_identity3(*pnl, Window(0, 200)).pass;

  auto id2 = check_identity2(*pnl, Window(0, 200));
  ok = ok && !id2.pass &&
       id2.counterexample == std::pair<Element, Element>{1, 2} &&
       id2.observed == 0;
  return ok;
}

// 2. Witnesses exist for the whole tested range of the integer example.
bool criterion2() {
  bool ok = true;
  auto wp = builtin("wp-Z");
  auto divisors = divisor_scan(*wp, Window(-201, 201));
  for (Element x = -100; x <= 100; ++x) {
    auto c = witness_search(*wp, x, 2, divisors);
    if (!c || !verify_witness(*wp, x, *c)) {
      ok = false;
      notes.push_back("no verified witness for x = " + std::to_string(x));
    }
    WitnessChain closed =
        x <= 0 ? WitnessChain{{x}} : WitnessChain{{-2 * x - 1, -1}};
    if (!verify_witness(*wp, x, closed)) {
      ok = false;
      notes.push_back("closed-form chain rejected at x = " +
                      std::to_string(x));
    }
  }
  return ok;
}

// 3. No witnesses for positive elements of the shifted example; the
// monotone-escape pattern certifies the verdict.
bool criterion3() {
  bool ok = true;
  auto nwp = builtin("nwp-N");
  auto divisors = divisor_scan(*nwp, Window(0, 200));
  for (Element x = 1; x <= 20; ++x)
    if (witness_search(*nwp, x, 30, divisors)) {
      ok = false;
      notes.push_back("unexpected witness at x = " + std::to_string(x));
    }
  for (Element x = 1; x <= 20; ++x) {
    std::set<Element> reach = reachable_set(*nwp, x, 30, divisors);
    std::set<Element> expected;
    for (Element v = x; v <= x + 30; ++v) expected.insert(v);
    if (reach != expected) {
      ok = false;
      notes.push_back("reachable set mismatch at x = " + std::to_string(x));
    }
  }
  ok = ok && monotone_escape_holds(*nwp, 20, 30, Window(0, 200));
  return ok;
}

// 4. The strict inclusion chain, from classification alone.
bool criterion4() {
  SearchConfig cfg;
  bool ok = true;

  auto pnl = classify(builtin("pnl-N"), cfg);
  expect(pnl.proto == ClassificationReport::Proto::ProvedByXdivX &&
             !pnl.left_loop,
         "pnl-N should be protomodular but not a left loop");
  ok = ok && pnl.proto == ClassificationReport::Proto::ProvedByXdivX &&
       !pnl.left_loop;

  auto wp = classify(builtin("wp-Z"), cfg);
  bool wp_ok = wp.wp.positive() &&
               wp.proto == ClassificationReport::Proto::RefutedBySubalgebra &&
               wp.refutation && wp.refutation->subcarrier == "nonneg";
  expect(wp_ok, "wp-Z should be weakly protomodular, refuted via nonneg");
  ok = ok && wp_ok;

  auto z2 = classify(builtin("z2"), cfg);
  expect(z2.left_loop, "z2 should be a left loop");
  ok = ok && z2.left_loop;
  return ok;
}

// 5. Finite census, cross-checked against the naive filter oracle.
bool criterion5() {
  bool ok = count_lpms(1) == 1 && count_lpms(2) == 1 && count_lpms(3) == 4;
  for (Element n = 1; n <= 3; ++n) {
    auto oracle = lpm::testing::naive_lpm_filter(n);
    EnumConfig cfg;
    cfg.order = n;
    std::set<std::pair<lpm::testing::Table, lpm::testing::Table>> got;
    for (const auto& m : enumerate_lpms(cfg))
      got.insert({m.mul_table(), m.ldiv_table()});
    if (got != oracle) {
      ok = false;
      notes.push_back("enumerator disagrees with the naive oracle at n = " +
                      std::to_string(n));
    }
  }
  for (Element n = 1; n <= 4; ++n) {
    EnumConfig cfg;
    cfg.order = n;
    for (const auto& m : enumerate_lpms(cfg)) {
      if (!check_identity2(m, std::nullopt).pass ||
          !check_props(m, std::nullopt).all_pass()) {
        ok = false;
        notes.push_back("order-" + std::to_string(n) +
                        " structure fails the left-loop corollary");
      }
    }
  }
  return ok;
}

// 6. Rebuilding mul from the division structure.
bool criterion6() {
  bool ok = true;
  for (Element n = 1; n <= 3; ++n) {
    EnumConfig cfg;
    cfg.order = n;
    for (const auto& m : enumerate_lpms(cfg)) {
      auto res = construct_mul_from_div(std::make_shared<FiniteMagma>(m),
                                        std::nullopt);
      if (!res.magma || !is_lpm(*res.magma, std::nullopt).ok) {
        ok = false;
        continue;
      }
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
          if (res.magma->mul(a, b) != m.mul(a, b)) ok = false;
    }
  }
  auto div = std::make_shared<RuleMagma>(
      parse_rules(builtin_source("nwp-N"), /*require_mul=*/false));
  auto res = construct_mul_from_div(div, Window(0, 100));
  if (!res.magma || !is_lpm(*res.magma, Window(0, 100)).ok) return false;
  auto nwp = builtin("nwp-N");
  for (Element y = 0; y <= 100; ++y)
    for (Element x = 0; x <= 100; ++x)
      if (res.magma->mul(y, x) != nwp->mul(y, x)) ok = false;
  return ok;
}

// 7. Rewriting soundness.
bool criterion7() {
  bool ok = true;
  std::mt19937 rng(41);
  for (const auto& name : builtin_names()) {
    auto m = builtin(name);
    std::vector<Element> values;
    Element lo = m->in_carrier(-1) ? -8 : 0;
    Element hi = m->finite() ? m->size() - 1 : 8;
    for (Element v = lo; v <= hi; ++v)
      if (m->in_carrier(v)) values.push_back(v);
    std::uniform_int_distribution<size_t> pick(0, values.size() - 1);
    for (int i = 0; i < 1000; ++i) {
      TermPtr t = lpm::testing::random_term(rng, values, 4);
      Assignment a{{"z", values[pick(rng)]}};
      try {
        TermPtr n = normalize(t, *m);
        if (evaluate(*t, *m, a) != evaluate(*n, *m, a)) ok = false;
        if (node_count(*n) > node_count(*t)) ok = false;
        if (!term_equal(*normalize(n, *m), *n)) ok = false;
      } catch (const EvalError&) {
        continue;
      }
    }
  }
  auto wp = builtin("wp-Z");
  ok = ok && print_term(*normalize(parse_term("(3 * (3 \\ z))"), *wp)) == "z";
  return ok;
}

// 8. CLI determinism.
std::string run_cli(const std::string& args) {
  std::string cmd = std::string(LPM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int rc = pclose(pipe);
  out += "\n[exit " + std::to_string(WEXITSTATUS(rc)) + "]";
  return out;
}

bool criterion8() {
  const std::vector<std::string> invocations = {
      "check builtin:nwp-N --window 0 100",
      "check builtin:pnl-N --window 0 100",
      "check builtin:triv",
      "classify builtin:pnl-N",
      "classify builtin:wp-Z",
      "classify builtin:z2",
      "classify builtin:nwp-N",
      "witness builtin:wp-Z --element 5",
      "witness builtin:wp-Z --element -3",
      "witness builtin:nwp-N --element 1 --depth 30 --divisor-window 0 200",
      "enumerate --order 3",
      "enumerate --order 3 --count-only",
      "eval builtin:pnl-N --term \"(1 \\\\ (1 * 2))\"",
      "kernel builtin:wp-Z --point 5 --term \"((-11) \\\\ ((-1) \\\\ z))\"",
      "construct-mul builtin:nwp-N --window 0 50",
      "examples",
  };
  bool ok = true;
  for (const auto& inv : invocations) {
    std::string a = run_cli(inv);
    std::string b = run_cli(inv);
    if (a != b || a.find("<popen") != std::string::npos) {
      ok = false;
      notes.push_back("nondeterministic output for: " + inv);
    }
  }
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1 builtin fidelity", criterion1},
      {"2 witness chains exist (integer example)", criterion2},
      {"3 witness nonexistence certified (shifted example)", criterion3},
      {"4 strict inclusion chain via classify", criterion4},
      {"5 finite census vs naive oracle", criterion5},
      {"6 mul reconstruction from division", criterion6},
      {"7 rewriting soundness", criterion7},
      {"8 CLI determinism", criterion8},
  };
  int rc = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    bool ok = c.run();
    auto secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    std::printf("criterion %s: %s (%.2fs)\n", c.label, ok ? "PASS" : "FAIL",
                secs);
    if (!ok) rc = 1;
  }
  for (const auto& n : notes) std::printf("  note: %s\n", n.c_str());
  if (failures && rc == 0) rc = 1;
  return rc;
}
