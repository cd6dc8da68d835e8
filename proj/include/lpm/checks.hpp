#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpm/magma.hpp"

namespace lpm {

/// Outcome of one identity / property scan. Every report is stamped with
/// the window actually scanned; `exhaustive` is true only when the scan
/// covered the full (finite) carrier, so a windowed pass is never
/// presented as a proof.
struct CheckReport {
  bool pass = true;
  std::optional<std::pair<Element, Element>> counterexample;  // row-major first
  std::optional<Element> observed;  // value at the counterexample
  Window window;
  bool exhaustive = false;
  std::optional<std::string> error;

  std::string str() const;
};

// Identity scans. For finite magmas `w == nullopt` means the full carrier;
// rule magmas require a window. Counterexamples are reported in row-major
// ascending (x, y) order.
CheckReport check_identity1(const Magma& m, std::optional<Window> w);  // y = x*(x\y)
CheckReport check_identity2(const Magma& m, std::optional<Window> w);  // y = x\(x*y)
CheckReport check_identity3(const Magma& m, std::optional<Window> w);  // x = e*x = x*e

struct LpmReport {
  bool ok = false;
  CheckReport id1, id3;
};
struct LeftLoopReport {
  bool ok = false;
  CheckReport id1, id2, id3;
};

LpmReport is_lpm(const Magma& m, std::optional<Window> w);
LeftLoopReport is_left_loop(const Magma& m, std::optional<Window> w);

/// The three basic consequences of the axioms: surjective left
/// multiplications, injective left divisions with D_e = id, and
/// x\y = e only on the diagonal.
struct PropReport {
  CheckReport surjective;  // (i); evidence-only on infinite carriers
  CheckReport injective;   // (ii), including D_e = id
  CheckReport diagonal;    // (iii)
  bool evidence_only = false;

  bool all_pass() const {
    return surjective.pass && injective.pass && diagonal.pass;
  }
};

PropReport check_props(const Magma& m, std::optional<Window> w);

/// Identity x\x = e over the domain.
CheckReport check_xdivx(const Magma& m, std::optional<Window> w);

struct ClosureReport {
  bool closed = false;
  bool unit_in = false;
  // first operation result escaping the subcarrier
  std::optional<std::string> violation;
  Window window;
};

ClosureReport check_closure(const Magma& m, const Subcarrier& s,
                            std::optional<Window> w);

struct RestrictResult {
  std::shared_ptr<const Magma> magma;  // null when not closed
  ClosureReport closure;
};

/// Closure-checked restriction of `base` to `s` over the domain.
RestrictResult restrict(std::shared_ptr<const Magma> base, const Subcarrier& s,
                        std::optional<Window> w);

struct ConstructResult {
  std::shared_ptr<const Magma> magma;  // null on precondition failure
  PropReport precondition;             // parts (ii) and (iii) over the domain
};

/// Builds the multiplication from a division structure: y*x is the unique
/// preimage of x under D_y when one exists in the domain, else y.
ConstructResult construct_mul_from_div(std::shared_ptr<const Magma> div,
                                       std::optional<Window> w,
                                       const std::string& name = "constructed");

struct Mismatch {
  char op;  // '*' or '\\'
  Element x, y;
  std::string lhs, rhs;  // printed values or error messages
};

/// Pointwise comparison of both operations over the domain.
std::optional<Mismatch> magmas_differ_on(const Magma& m1, const Magma& m2,
                                         const std::vector<Element>& dom);

inline bool magmas_equal_on(const Magma& m1, const Magma& m2,
                            const std::vector<Element>& dom) {
  return !magmas_differ_on(m1, m2, dom).has_value();
}

}  // namespace lpm
