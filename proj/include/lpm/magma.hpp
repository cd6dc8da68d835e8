#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpm {

using Element = long long;

/// Raised when an operation cannot be evaluated (no matching clause,
/// result outside the carrier, inexact halving, index out of range).
class EvalError : public std::runtime_error {
public:
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Carrier { N, Z };

/// Inclusive integer interval used to finitize checks on infinite carriers.
struct Window {
  Element lo = 0;
  Element hi = 0;

  Window() = default;
  Window(Element l, Element h) : lo(l), hi(h) {
    if (lo > hi) throw std::invalid_argument("window lo > hi");
  }

  bool contains(Element v) const { return lo <= v && v <= hi; }
  Element width() const { return hi - lo + 1; }
  Window clamped_to(Carrier c) const {
    if (c == Carrier::N && lo < 0) return Window(0, hi < 0 ? 0 : hi);
    return *this;
  }
  bool operator==(const Window&) const = default;
  std::string str() const {
    return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
  }
};

class Magma {
public:
  virtual ~Magma() = default;

  virtual Element mul(Element a, Element b) const = 0;
  virtual Element ldiv(Element a, Element b) const = 0;
  virtual Element unit() const = 0;
  virtual bool finite() const = 0;
  /// Carrier size; only meaningful for finite magmas.
  virtual Element size() const { throw std::logic_error("infinite carrier"); }
  virtual bool in_carrier(Element v) const = 0;
  virtual const std::string& name() const { return name_; }
  /// Clamp a requested window to the carrier (no-op on Z and finite carriers).
  virtual Window clamp(Window w) const { return w; }

protected:
  std::string name_;
};

/// Enumerates the checking domain: the full carrier for a finite magma,
/// otherwise the given window clamped to the carrier.
std::vector<Element> domain_of(const Magma& m, std::optional<Window> w);

// ---------------------------------------------------------------------------

/// Explicit operation tables over {0..n-1}. Tables are not validated at
/// construction beyond index ranges; identity checks are separate so that
/// broken tables can be loaded and diagnosed.
class FiniteMagma final : public Magma {
public:
  FiniteMagma(std::string name, Element n, Element unit,
              std::vector<std::vector<Element>> mul,
              std::vector<std::vector<Element>> ldiv);

  Element mul(Element a, Element b) const override;
  Element ldiv(Element a, Element b) const override;
  Element unit() const override { return unit_; }
  bool finite() const override { return true; }
  Element size() const override { return n_; }
  bool in_carrier(Element v) const override { return 0 <= v && v < n_; }
  Window clamp(Window w) const override {
    return Window(std::max<Element>(w.lo, 0), std::min(w.hi, n_ - 1));
  }

  const std::vector<std::vector<Element>>& mul_table() const { return mul_; }
  const std::vector<std::vector<Element>>& ldiv_table() const { return ldiv_; }

  bool operator==(const FiniteMagma& o) const {
    return n_ == o.n_ && unit_ == o.unit_ && mul_ == o.mul_ && ldiv_ == o.ldiv_;
  }

private:
  Element n_;
  Element unit_;
  std::vector<std::vector<Element>> mul_;
  std::vector<std::vector<Element>> ldiv_;

  Element lookup(const std::vector<std::vector<Element>>& t, Element a,
                 Element b, const char* op) const;
};

// ---------------------------------------------------------------------------

/// One guard atom: a comparison of x or y against 0 or the other variable,
/// or a parity test.
struct Atom {
  enum class Kind { Cmp, Parity };
  enum class Op { Eq, Ne, Gt, Lt, Ge, Le };

  Kind kind = Kind::Cmp;
  char lhs = 'x';
  Op op = Op::Eq;
  bool rhs_is_var = false;  // compare against the other variable instead of 0
  bool even = false;        // Parity only

  bool holds(Element x, Element y) const;
  std::string str() const;
  bool operator==(const Atom&) const = default;
};

/// Result expression a*x + b*y + c, optionally halved (must be exact).
struct Affine {
  Element a = 0, b = 0, c = 0;
  bool halve = false;

  Element eval(Element x, Element y) const;
  std::string str() const;
  bool operator==(const Affine&) const = default;
};

struct Clause {
  std::vector<Atom> guard;  // conjunction
  Affine result;

  bool matches(Element x, Element y) const;
  std::string str() const;
  bool operator==(const Clause&) const = default;
};

/// Piecewise integer rules over N or Z; first matching clause wins.
/// The unit is fixed at 0.
class RuleMagma final : public Magma {
public:
  RuleMagma(std::string name, Carrier carrier, std::vector<Clause> mul_clauses,
            std::vector<Clause> ldiv_clauses);

  Element mul(Element a, Element b) const override;
  Element ldiv(Element a, Element b) const override;
  Element unit() const override { return 0; }
  bool finite() const override { return false; }
  bool in_carrier(Element v) const override {
    return carrier_ == Carrier::Z || v >= 0;
  }
  Window clamp(Window w) const override { return w.clamped_to(carrier_); }

  Carrier carrier() const { return carrier_; }
  const std::vector<Clause>& mul_clauses() const { return mul_clauses_; }
  const std::vector<Clause>& ldiv_clauses() const { return ldiv_clauses_; }

  bool operator==(const RuleMagma& o) const {
    return carrier_ == o.carrier_ && mul_clauses_ == o.mul_clauses_ &&
           ldiv_clauses_ == o.ldiv_clauses_;
  }

private:
  Carrier carrier_;
  std::vector<Clause> mul_clauses_;
  std::vector<Clause> ldiv_clauses_;

  Element apply(const std::vector<Clause>& cs, Element a, Element b,
                const char* op) const;
};

// ---------------------------------------------------------------------------

/// Subset predicate selecting a candidate subalgebra of a base magma.
/// Closure is a checkable property, not an assumption.
struct Subcarrier {
  enum class Kind { All, Nonneg, Nonpos, Even, FiniteSet };

  Kind kind = Kind::All;
  std::vector<Element> elems;  // FiniteSet only

  bool contains(Element v) const;
  std::string str() const;
  static Subcarrier parse(const std::string& text);
};

/// View of a base magma restricted to a subcarrier. Operations delegate to
/// the base; membership of results is the caller's concern (see
/// check_closure in checks.hpp).
class RestrictedMagma final : public Magma {
public:
  RestrictedMagma(std::shared_ptr<const Magma> base, Subcarrier sub);

  Element mul(Element a, Element b) const override { return base_->mul(a, b); }
  Element ldiv(Element a, Element b) const override {
    return base_->ldiv(a, b);
  }
  Element unit() const override { return base_->unit(); }
  bool finite() const override;
  Element size() const override;
  bool in_carrier(Element v) const override {
    return base_->in_carrier(v) && sub_.contains(v);
  }
  Window clamp(Window w) const override;

  const Magma& base() const { return *base_; }
  const Subcarrier& subcarrier() const { return sub_; }

private:
  std::shared_ptr<const Magma> base_;
  Subcarrier sub_;
};

/// Magma produced by the divide-then-multiply construction: ldiv delegates
/// to the division structure, mul is the inverse of each D_y where defined
/// (restricted to the construction domain) and y elsewhere.
class ConstructedMagma final : public Magma {
public:
  ConstructedMagma(std::string name, std::shared_ptr<const Magma> div,
                   const std::vector<Element>& dom);

  Element mul(Element y, Element x) const override;
  Element ldiv(Element a, Element b) const override {
    return div_->ldiv(a, b);
  }
  Element unit() const override { return div_->unit(); }
  bool finite() const override { return div_->finite(); }
  Element size() const override { return div_->size(); }
  bool in_carrier(Element v) const override { return div_->in_carrier(v); }
  Window clamp(Window w) const override { return div_->clamp(w); }

private:
  std::shared_ptr<const Magma> div_;
  // per-divisor inverse of D_y over the construction domain
  std::map<Element, std::map<Element, Element>> inv_;
};

}  // namespace lpm
