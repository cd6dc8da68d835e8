#pragma once

// Test-only helpers: independent oracles and random generators. Everything
// here is deliberately naive and kept separate from the library code paths
// it cross-checks.

#include <random>
#include <set>
#include <vector>

#include "lpm/magma.hpp"
#include "lpm/term.hpp"

namespace lpm::testing {

using Table = std::vector<std::vector<Element>>;

// Generate-and-filter oracle: all mul tables with the unit laws forced and
// free cells ranging over everything, all ldiv tables (row 0 pinned to the
// identity for n = 3 to keep the space at 3^6 * 3^4), filtered through a
// direct exhaustive check of y = x*(x\y) and x = e*x = x*e.
inline std::set<std::pair<Table, Table>> naive_lpm_filter(Element n) {
  std::set<std::pair<Table, Table>> out;
  Element mul_free = (n - 1) * (n - 1);
  bool pin_ldiv_row0 = n >= 3;
  Element ldiv_free = pin_ldiv_row0 ? n * (n - 1) : n * n;

  auto pow_count = [n](Element cells) {
    long long p = 1;
    for (Element i = 0; i < cells; ++i) p *= n;
    return p;
  };

  for (long long mc = 0; mc < pow_count(mul_free); ++mc) {
    Table mul(n, std::vector<Element>(n));
    for (Element j = 0; j < n; ++j) mul[0][j] = j;
    for (Element i = 0; i < n; ++i) mul[i][0] = i;
    long long v = mc;
    for (Element i = 1; i < n; ++i)
      for (Element j = 1; j < n; ++j) {
        mul[i][j] = v % n;
        v /= n;
      }
    for (long long dc = 0; dc < pow_count(ldiv_free); ++dc) {
      Table ldiv(n, std::vector<Element>(n));
      long long w = dc;
      for (Element i = pin_ldiv_row0 ? 1 : 0; i < n; ++i)
        for (Element j = 0; j < n; ++j) {
          ldiv[i][j] = w % n;
          w /= n;
        }
      if (pin_ldiv_row0)
        for (Element j = 0; j < n; ++j) ldiv[0][j] = j;

      bool ok = true;
      for (Element x = 0; x < n && ok; ++x) {
        if (mul[0][x] != x || mul[x][0] != x) ok = false;  // (3)
        for (Element y = 0; y < n && ok; ++y)
          if (mul[x][ldiv[x][y]] != y) ok = false;  // (1)
      }
      if (ok) out.insert({mul, ldiv});
    }
  }
  return out;
}

// Independent recursive evaluator for kernel coherence checks; mirrors the
// definition rather than the library traversal.
inline Element eval_reference(const Term& t, const Magma& m, Element z_value) {
  switch (t.kind) {
    case Term::Kind::Unit: return m.unit();
    case Term::Kind::Const: return t.value;
    case Term::Kind::Gen: return z_value;
    case Term::Kind::Mul:
      return m.mul(eval_reference(*t.left, m, z_value),
                   eval_reference(*t.right, m, z_value));
    case Term::Kind::Ldiv:
      return m.ldiv(eval_reference(*t.left, m, z_value),
                    eval_reference(*t.right, m, z_value));
  }
  throw EvalError("corrupt term");
}

// Random term over constants of M (drawn from `values`), the unit, and the
// generator z.
inline TermPtr random_term(std::mt19937& rng, const std::vector<Element>& values,
                           int max_depth) {
  std::uniform_int_distribution<int> leaf(0, 3), node(0, 1);
  std::uniform_int_distribution<size_t> pick(0, values.size() - 1);
  if (max_depth == 0 || leaf(rng) == 0) {
    switch (leaf(rng)) {
      case 0: return Term::unit();
      case 1: return Term::generator("z");
      default: return Term::constant(values[pick(rng)]);
    }
  }
  auto l = random_term(rng, values, max_depth - 1);
  auto r = random_term(rng, values, max_depth - 1);
  return node(rng) == 0 ? Term::mul(l, r) : Term::ldiv(l, r);
}

// Random structurally valid table magma (left-loop shape: every non-unit
// row a random permutation fixing nothing in particular, ldiv the row
// inverse), so identity checks and canonical forms are exercised on valid
// input.
inline FiniteMagma random_valid_table(std::mt19937& rng, Element n) {
  Table mul(n, std::vector<Element>(n));
  for (Element j = 0; j < n; ++j) mul[0][j] = j;
  for (Element x = 1; x < n; ++x) {
    std::vector<Element> rest;
    for (Element v = 0; v < n; ++v)
      if (v != x) rest.push_back(v);
    std::shuffle(rest.begin(), rest.end(), rng);
    mul[x][0] = x;
    for (Element j = 1; j < n; ++j) mul[x][j] = rest[j - 1];
  }
  Table ldiv(n, std::vector<Element>(n));
  for (Element x = 0; x < n; ++x)
    for (Element d = 0; d < n; ++d) ldiv[x][mul[x][d]] = d;
  return FiniteMagma("rand", n, 0, mul, ldiv);
}

// Random wellformed (not necessarily valid) table for round-trip tests.
inline FiniteMagma random_table(std::mt19937& rng, Element n) {
  std::uniform_int_distribution<Element> cell(0, n - 1);
  Table mul(n, std::vector<Element>(n)), ldiv(n, std::vector<Element>(n));
  for (Element i = 0; i < n; ++i)
    for (Element j = 0; j < n; ++j) {
      mul[i][j] = cell(rng);
      ldiv[i][j] = cell(rng);
    }
  return FiniteMagma("rt", n, cell(rng), mul, ldiv);
}

}  // namespace lpm::testing
