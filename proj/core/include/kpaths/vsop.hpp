#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "kpaths/bigint.hpp"
#include "kpaths/zbdd.hpp"

namespace kpaths {

/// One combination together with its integer value.
struct Term {
  Combo combo;
  std::int64_t value = 0;
  friend bool operator==(const Term&, const Term&) = default;
};

/// An integer-valued set of combinations, stored as the digit vector of a
/// base -2 expansion: digit i is the family of combinations whose value has
/// bit i set, so value(c) = sum over i of digit_i(c) * (-2)^i. Terms with
/// value 0 are not representable and silently vanish from every result.
///
/// The digit vector is normalized (highest digit nonempty) and all digits
/// live in one NodeStore, which makes Vsop equality plain handle equality.
class Vsop {
 public:
  static Vsop zero(NodeStore& store);
  static Vsop constant(NodeStore& store, std::int64_t value);
  static Vsop from_term(NodeStore& store, std::int64_t value,
                        std::span<const VarId> combo);
  static Vsop from_term(NodeStore& store, std::int64_t value,
                        std::initializer_list<VarId> combo) {
    return from_term(store, value,
                     std::span<const VarId>(combo.begin(), combo.size()));
  }
  /// Value 1 on every combination of `support`.
  static Vsop unit_over(NodeStore& store, NodeRef support);
  /// Value `value` on every combination of `support`.
  static Vsop constant_over(NodeStore& store, NodeRef support,
                            std::int64_t value);

  Vsop add(const Vsop& y) const;
  Vsop sub(const Vsop& y) const;
  Vsop neg() const;
  /// Product collecting like terms by addition; x*x = x on combinations
  /// (set union) and values multiply.
  Vsop mul(const Vsop& y) const;

  friend Vsop operator+(const Vsop& x, const Vsop& y) { return x.add(y); }
  friend Vsop operator-(const Vsop& x, const Vsop& y) { return x.sub(y); }
  friend Vsop operator-(const Vsop& x) { return x.neg(); }
  friend Vsop operator*(const Vsop& x, const Vsop& y) { return x.mul(y); }

  /// Pairwise comparisons. The result holds value 1 on each combination
  /// present in either operand whose values satisfy the relation (missing
  /// terms count as 0); combinations absent from both sides never appear.
  Vsop cmp_eq(const Vsop& y) const;
  Vsop cmp_ne(const Vsop& y) const;
  Vsop cmp_lt(const Vsop& y) const;
  Vsop cmp_le(const Vsop& y) const;
  Vsop cmp_gt(const Vsop& y) const;
  Vsop cmp_ge(const Vsop& y) const;

  /// Unit-valued selection of this expression's terms against a constant.
  Vsop filter_eq(std::int64_t k) const;
  Vsop filter_ne(std::int64_t k) const;
  Vsop filter_lt(std::int64_t k) const;
  Vsop filter_le(std::int64_t k) const;
  Vsop filter_gt(std::int64_t k) const;
  Vsop filter_ge(std::int64_t k) const;

  /// Value-preserving selection against a constant expression; throws
  /// QueryError if y is not constant.
  Vsop terms_eq(const Vsop& y) const;
  Vsop terms_ne(const Vsop& y) const;
  Vsop terms_lt(const Vsop& y) const;
  Vsop terms_le(const Vsop& y) const;
  Vsop terms_gt(const Vsop& y) const;
  Vsop terms_ge(const Vsop& y) const;

  /// Terms whose combination is contained in some combination of y.
  Vsop permit(const Vsop& y) const;
  /// Terms whose combination contains some combination of y.
  Vsop restrict(const Vsop& y) const;
  /// Terms of this expression whose combination appears in `selector`;
  /// values come from this expression.
  Vsop filter_then(const Vsop& selector) const;

  BigInt count_terms() const;
  /// Largest / smallest term value; QueryError("empty expression") if zero.
  std::int64_t max_val() const;
  std::int64_t min_val() const;
  BigInt total_val() const;
  /// A term attaining the extreme value. Ties are broken by the fixed
  /// 1-edge-first depth-first order over the attaining combinations.
  Term max_cover() const;
  Term min_cover() const;

  /// The value of a constant expression; QueryError if not constant.
  std::int64_t get_int() const;

  bool is_zero() const { return digits_.empty(); }
  bool is_constant() const;

  /// Union of all digits: every combination with a (nonzero) value.
  NodeRef support() const;
  /// Value at one combination; 0 means the combination is not a term.
  std::int64_t value_at(std::span<const VarId> combo) const;

  std::span<const NodeRef> digits() const { return digits_; }
  NodeStore& store() const { return *store_; }

  friend bool operator==(const Vsop& x, const Vsop& y) {
    return x.store_ == y.store_ && x.digits_ == y.digits_;
  }

 private:
  Vsop(NodeStore& store, std::vector<NodeRef> digits);
  /// Digit-wise intersection with `keep`: value-preserving support filter.
  Vsop keep_support(NodeRef keep) const;

  NodeStore* store_;
  std::vector<NodeRef> digits_;
};

/// Renders terms as e.g. "4*v0.v1 + -3*v2" using `namer` for variables;
/// meant for diagnostics on small expressions.
std::string to_string(const Vsop& x,
                      const std::function<std::string(VarId)>& namer = {});

}  // namespace kpaths
