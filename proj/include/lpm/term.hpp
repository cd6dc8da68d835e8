#pragma once

#include <map>
#include <memory>
#include <string>

#include "lpm/magma.hpp"

namespace lpm {

/// Immutable expression tree over the unit, constants of a magma, and named
/// generators, with binary multiplication and left-division nodes.
struct Term {
  enum class Kind { Unit, Const, Gen, Mul, Ldiv };

  Kind kind;
  Element value = 0;       // Const
  std::string gen;         // Gen
  std::shared_ptr<const Term> left, right;  // Mul / Ldiv

  static std::shared_ptr<const Term> unit();
  static std::shared_ptr<const Term> constant(Element v);
  static std::shared_ptr<const Term> generator(std::string name);
  static std::shared_ptr<const Term> mul(std::shared_ptr<const Term> l,
                                         std::shared_ptr<const Term> r);
  static std::shared_ptr<const Term> ldiv(std::shared_ptr<const Term> l,
                                          std::shared_ptr<const Term> r);
};

using TermPtr = std::shared_ptr<const Term>;

bool term_equal(const Term& a, const Term& b);
int node_count(const Term& t);
std::string print_term(const Term& t);

/// Grammar: expr := 'e' | INT | IDENT | '(' expr ('*'|'\') expr ')'.
/// Redundant parentheses around a single expression are accepted, so
/// negative constants may be written `(-11)` or `-11`.
TermPtr parse_term(const std::string& text);

using Assignment = std::map<std::string, Element>;

/// Recursive evaluation in M; throws EvalError on unbound generators and
/// propagates carrier/clause errors.
Element evaluate(const Term& t, const Magma& m, const Assignment& a = {});

/// Rewrites to normal form under the unit laws, constant folding in M, and
/// the cancellation x*(x\t) -> t, applied innermost-leftmost. Constants equal
/// to the unit collapse to the unit leaf. Never grows the term; terminates
/// because every rule strictly shrinks it.
TermPtr normalize(const TermPtr& t, const Magma& m);

/// True iff t (over the single generator z) evaluates to the unit at z = x.
bool kernel_member(const Magma& m, Element x, const Term& t);

}  // namespace lpm
