#include "lpm/enumerate.hpp"

#include <algorithm>
#include <numeric>

namespace lpm {

namespace {

using Table = std::vector<std::vector<Element>>;

// Backtracking over the non-unit mul rows. The unit row and column are
// forced by the unit laws; identity (1) then requires every row to be
// surjective with ldiv the pointwise row inverse, which is propagated as
// soon as a row is complete.
struct Search {
  Element n;
  const EnumConfig& cfg;
  const std::function<void(const FiniteMagma&)>& emit;
  Table mul;

  Search(Element n, const EnumConfig& cfg,
         const std::function<void(const FiniteMagma&)>& emit)
      : n(n), cfg(cfg), emit(emit) {
    mul.assign(n, std::vector<Element>(n, 0));
    for (Element j = 0; j < n; ++j) mul[0][j] = j;  // e*x = x
    for (Element i = 0; i < n; ++i) mul[i][0] = i;  // x*e = x
  }

  void run() { fill(1, 1); }

  void fill(Element row, Element col) {
    if (row == n) {
      finish();
      return;
    }
    if (col == n) {
      // Row complete: x*(x\y) = y for all y needs a preimage for every y.
      std::vector<bool> hit(n, false);
      for (Element j = 0; j < n; ++j) hit[mul[row][j]] = true;
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) return;
      fill(row + 1, 1);
      return;
    }
    for (Element v = 0; v < n; ++v) {
      mul[row][col] = v;
      fill(row, col + 1);
    }
    mul[row][col] = 0;
  }

  void finish() {
    Table ldiv(n, std::vector<Element>(n, 0));
    for (Element x = 0; x < n; ++x)
      for (Element d = 0; d < n; ++d) ldiv[x][mul[x][d]] = d;
    FiniteMagma m("lpm" + std::to_string(n), n, 0, mul, ldiv);
    if (cfg.require_identity2) {
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
          if (ldiv[x][mul[x][y]] != y) return;
    }
    if (cfg.up_to_iso && !(canonical_form(m) == m)) return;
    emit(m);
  }
};

}  // namespace

void enumerate_lpms(const EnumConfig& cfg,
                    const std::function<void(const FiniteMagma&)>& emit) {
  if (cfg.order < 1) throw std::invalid_argument("order must be >= 1");
  if (cfg.order > kEnumSoftLimit && !cfg.override_limit)
    throw std::invalid_argument(
        "order " + std::to_string(cfg.order) + " exceeds the soft limit " +
        std::to_string(kEnumSoftLimit) + " (use the override flag)");
  Search(cfg.order, cfg, emit).run();
}

std::vector<FiniteMagma> enumerate_lpms(const EnumConfig& cfg) {
  std::vector<FiniteMagma> out;
  enumerate_lpms(cfg, [&out](const FiniteMagma& m) { out.push_back(m); });
  return out;
}

long long count_lpms(Element order, bool up_to_iso) {
  EnumConfig cfg;
  cfg.order = order;
  cfg.up_to_iso = up_to_iso;
  long long c = 0;
  enumerate_lpms(cfg, [&c](const FiniteMagma&) { ++c; });
  return c;
}

FiniteMagma canonical_form(const FiniteMagma& m) {
  Element n = m.size();
  if (m.unit() != 0)
    throw std::invalid_argument("canonical form expects the unit at index 0");
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<Element>> best_mul = m.mul_table();
  std::vector<std::vector<Element>> best_ldiv = m.ldiv_table();

  auto relabel = [&](const std::vector<Element>& p) {
    std::vector<std::vector<Element>> rm(n, std::vector<Element>(n));
    std::vector<std::vector<Element>> rd(n, std::vector<Element>(n));
    for (Element i = 0; i < n; ++i)
      for (Element j = 0; j < n; ++j) {
        rm[p[i]][p[j]] = p[m.mul_table()[i][j]];
        rd[p[i]][p[j]] = p[m.ldiv_table()[i][j]];
      }
    return std::pair{rm, rd};
  };

  // All permutations of {1..n-1}; index 0 stays fixed.
  std::sort(perm.begin() + 1, perm.end());
  do {
    auto [rm, rd] = relabel(perm);
    if (std::tie(rm, rd) < std::tie(best_mul, best_ldiv)) {
      best_mul = std::move(rm);
      best_ldiv = std::move(rd);
    }
  } while (std::next_permutation(perm.begin() + 1, perm.end()));

  return FiniteMagma(m.name(), n, 0, std::move(best_mul),
                     std::move(best_ldiv));
}

}  // namespace lpm
