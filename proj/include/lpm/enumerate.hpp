#pragma once

#include <functional>
#include <vector>

#include "lpm/magma.hpp"

namespace lpm {

struct EnumConfig {
  Element order = 1;
  bool up_to_iso = false;
  bool count_only = false;
  bool require_identity2 = false;  // additionally filter to left loops
  bool override_limit = false;     // lift the soft order cap
};

constexpr Element kEnumSoftLimit = 5;

/// Emits every operation-table pair with the unit fixed at index 0 that
/// satisfies the unit laws and y = x*(x\y) exhaustively, in lexicographic
/// table order. With up_to_iso, only lexicographically minimal
/// representatives under unit-fixing carrier permutations are emitted.
void enumerate_lpms(const EnumConfig& cfg,
                    const std::function<void(const FiniteMagma&)>& emit);

std::vector<FiniteMagma> enumerate_lpms(const EnumConfig& cfg);

long long count_lpms(Element order, bool up_to_iso = false);

/// Minimal table pair over all carrier permutations fixing the unit index 0.
FiniteMagma canonical_form(const FiniteMagma& m);

}  // namespace lpm
