#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lpm/checks.hpp"
#include "lpm/magma.hpp"

namespace lpm {

/// Elements x_1..x_n certifying x_1\(x_2\(...(x_n\x)...)) = e; x_1 is the
/// outermost divisor.
struct WitnessChain {
  std::vector<Element> elems;

  std::string str() const;
  bool operator==(const WitnessChain&) const = default;
};

bool verify_witness(const Magma& m, Element x, const WitnessChain& c);

struct SearchConfig {
  int depth = 16;
  Window element_range{-128, 128};
  // Wide enough that the two-step chains of the integer example fit for
  // every x in the default element range.
  Window divisor_window{-257, 257};
  Element value_bound = 1'000'000;  // states beyond this are pruned
};

/// Divisor scan order: ascending absolute value, negative first on ties
/// (0, -1, 1, -2, 2, ...), restricted to the clamped window. Deterministic,
/// and it reproduces the closed-form chains of the worked examples.
std::vector<Element> divisor_scan(const Magma& m, Window w);

/// BFS over z -> y\z for y in `divisors`; returns a minimum-length chain
/// reaching the unit, or nullopt if none exists within `depth` steps.
std::optional<WitnessChain> witness_search(const Magma& m, Element x,
                                           int depth,
                                           const std::vector<Element>& divisors,
                                           Element value_bound = 1'000'000);

/// Union of the BFS frontiers at depths 1..depth (the start element only
/// appears if some divisor maps back to it).
std::set<Element> reachable_set(const Magma& m, Element x, int depth,
                                const std::vector<Element>& divisors,
                                Element value_bound = 1'000'000);

struct WpVerdict {
  enum class Kind {
    Proved,        // witness for every element of the range
    Inconclusive,  // search exhausted at some element; never a refutation
    Refuted        // finite carrier only: exact nonexistence
  };

  Kind kind = Kind::Inconclusive;
  bool exhaustive = false;  // full finite carrier
  Window range;
  int depth = 0;
  Window divisors;
  std::map<Element, WitnessChain> witnesses;
  std::optional<Element> failing;
  bool certified = false;  // monotone-escape upgrade (nwp-N)
  std::string note;

  bool positive() const { return kind == Kind::Proved; }
};

/// Finite magmas are decided exactly (BFS over the carrier, depth = size).
/// Rule magmas get a witness map over the element range or an Inconclusive
/// verdict at the first failing element.
WpVerdict is_weakly_protomodular(const Magma& m, const SearchConfig& cfg);

/// Checks reachable_set(x, d) == {x, ..., x+d} for x in [1, x_max] and every
/// d up to `depth`, over the given divisor window. When this monotone-escape
/// pattern holds, no chain of any length over the window can reach 0.
bool monotone_escape_holds(const Magma& m, Element x_max, int depth, Window w);

struct SubalgebraRefutation {
  std::string subcarrier;
  Element stuck = 0;
  int depth = 0;
  Window divisors;
  bool certified = false;  // else evidence-grade

  std::string grade() const {
    return certified ? "certified (monotonicity)" : "evidence";
  }
};

/// Contrapositive use of "subalgebras of a protomodular object are weakly
/// protomodular": a subalgebra on which witness search gets stuck refutes
/// protomodularity of the ambient magma.
std::optional<SubalgebraRefutation> refute_protomodular_by_subalgebra(
    std::shared_ptr<const Magma> m, const Subcarrier& s,
    const SearchConfig& cfg);

struct ClassificationReport {
  CheckReport id1, id2, id3, xdivx;
  bool lpm = false;
  bool left_loop = false;
  WpVerdict wp;

  enum class Proto { ProvedByXdivX, RefutedBySubalgebra, Unknown };
  Proto proto = Proto::Unknown;
  std::optional<SubalgebraRefutation> refutation;

  SearchConfig config;
};

/// Full classification. When no subcarrier is given and x\x = e fails, the
/// standard predicates (all, nonneg, nonpos, even) are tried in order for a
/// subalgebra refutation.
ClassificationReport classify(std::shared_ptr<const Magma> m,
                              const SearchConfig& cfg,
                              std::optional<Subcarrier> sub = std::nullopt);

}  // namespace lpm
