#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "kpaths/bigint.hpp"
#include "kpaths/graph.hpp"
#include "kpaths/pathdb.hpp"
#include "kpaths/vsop.hpp"

namespace kpaths::oracle {

/// Map-backed model of a valued combination set. Every operation is defined
/// directly on the map, so results are trustworthy by inspection; tests use
/// it as ground truth for the diagram-backed implementation.
class ExplicitVsop {
 public:
  ExplicitVsop() = default;

  static ExplicitVsop constant(std::int64_t value);
  static ExplicitVsop from_term(std::int64_t value, Combo combo);
  static ExplicitVsop from_vsop(const Vsop& x, std::size_t limit = 1u << 20);

  Vsop to_vsop(NodeStore& store) const;

  ExplicitVsop add(const ExplicitVsop& y) const;
  ExplicitVsop sub(const ExplicitVsop& y) const;
  ExplicitVsop neg() const;
  ExplicitVsop mul(const ExplicitVsop& y) const;

  ExplicitVsop cmp_eq(const ExplicitVsop& y) const;
  ExplicitVsop cmp_ne(const ExplicitVsop& y) const;
  ExplicitVsop cmp_lt(const ExplicitVsop& y) const;
  ExplicitVsop cmp_le(const ExplicitVsop& y) const;
  ExplicitVsop cmp_gt(const ExplicitVsop& y) const;
  ExplicitVsop cmp_ge(const ExplicitVsop& y) const;

  ExplicitVsop filter_eq(std::int64_t k) const;
  ExplicitVsop filter_ne(std::int64_t k) const;
  ExplicitVsop filter_lt(std::int64_t k) const;
  ExplicitVsop filter_le(std::int64_t k) const;
  ExplicitVsop filter_gt(std::int64_t k) const;
  ExplicitVsop filter_ge(std::int64_t k) const;

  ExplicitVsop terms_eq(const ExplicitVsop& y) const;
  ExplicitVsop terms_ne(const ExplicitVsop& y) const;
  ExplicitVsop terms_lt(const ExplicitVsop& y) const;
  ExplicitVsop terms_le(const ExplicitVsop& y) const;
  ExplicitVsop terms_gt(const ExplicitVsop& y) const;
  ExplicitVsop terms_ge(const ExplicitVsop& y) const;

  ExplicitVsop permit(const ExplicitVsop& y) const;
  ExplicitVsop restrict(const ExplicitVsop& y) const;
  ExplicitVsop filter_then(const ExplicitVsop& selector) const;

  BigInt count_terms() const { return terms_.size(); }
  BigInt total_val() const;
  std::int64_t max_val() const;
  std::int64_t min_val() const;
  Term max_cover() const;
  Term min_cover() const;

  std::int64_t value_at(const Combo& combo) const;
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::int64_t get_int() const;

  const std::map<Combo, std::int64_t>& terms() const { return terms_; }
  bool operator==(const ExplicitVsop&) const = default;

 private:
  void put(Combo combo, std::int64_t value);
  template <typename Pred>
  ExplicitVsop compare_with(const ExplicitVsop& y, Pred holds) const;
  template <typename Pred>
  ExplicitVsop select_units(Pred holds) const;
  template <typename Pred>
  ExplicitVsop select_terms(Pred holds) const;

  std::map<Combo, std::int64_t> terms_;
};

/// True when `a` comes before `b` in a depth-first traversal of a diagram
/// that takes 1-edges first: the combination owning the smallest variable
/// they disagree on wins.
bool dfs_precedes(const Combo& a, const Combo& b);

struct PathListEntry {
  std::vector<VertexId> vertices;
  std::int64_t length = 0;

  friend bool operator==(const PathListEntry&, const PathListEntry&) = default;
};

/// Every source-to-sink path by explicit depth-first search, deterministic
/// order (sources and successors by name). Throws "path explosion" past
/// `limit` paths.
std::vector<PathListEntry> enumerate_paths(const Dag& dag,
                                           std::size_t limit = 1'000'000);

/// Tie-inclusive top-k of an explicit path list: sort by length for the
/// mode and keep everything tied with the k-th entry.
std::vector<PathListEntry> reference_top_k(std::vector<PathListEntry> paths,
                                           std::uint64_t k, Mode mode);

/// The expression a correct path database must equal: one term per path,
/// value length + offset, variables assigned by var_of.
Vsop paths_to_vsop(NodeStore& store, const std::vector<PathListEntry>& paths,
                   const std::vector<VarId>& var_of, std::int64_t offset);

}  // namespace kpaths::oracle
