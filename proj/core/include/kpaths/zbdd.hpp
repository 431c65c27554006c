#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "kpaths/bigint.hpp"

namespace kpaths {

/// Position of a variable in the fixed global order shared by every diagram
/// of one NodeStore. Smaller ordinals sit nearer the root.
struct VarId {
  std::uint32_t ordinal = 0;
  friend constexpr auto operator<=>(VarId, VarId) = default;
};

/// Handle to a canonical diagram node. Handle equality is family equality.
class NodeRef {
 public:
  constexpr NodeRef() = default;

  /// The empty family {}.
  static constexpr NodeRef empty() { return NodeRef{0}; }
  /// The family holding just the empty combination { {} }.
  static constexpr NodeRef unit() { return NodeRef{1}; }

  constexpr bool is_terminal() const { return index_ < 2; }
  constexpr std::uint32_t index() const { return index_; }

  friend constexpr bool operator==(NodeRef, NodeRef) = default;

 private:
  friend class NodeStore;
  explicit constexpr NodeRef(std::uint32_t index) : index_(index) {}
  std::uint32_t index_ = 0;
};

/// A combination: a set of variables, sorted by ordinal.
using Combo = std::vector<VarId>;

struct StoreConfig {
  /// Hard cap on internal nodes; 0 means unlimited. The allocating
  /// operation throws NodeLimitError when the cap would be exceeded.
  std::uint64_t max_nodes = 0;
};

/// Hash-consed storage for zero-suppressed decision diagrams plus the
/// family-algebra operations on them. Nodes are never reclaimed, so handles
/// stay valid for the lifetime of the store. Confined to a single thread.
class NodeStore {
 public:
  NodeStore();
  explicit NodeStore(const StoreConfig& config);

  NodeStore(const NodeStore&) = delete;
  NodeStore& operator=(const NodeStore&) = delete;

  /// The canonical node (var, lo, hi). Applies the zero-suppression rule,
  /// so the result may be `lo` itself. `var` must precede the top variables
  /// of both children.
  NodeRef make_node(VarId var, NodeRef lo, NodeRef hi);

  /// { {v} }
  NodeRef single(VarId v);

  NodeRef set_union(NodeRef x, NodeRef y);
  NodeRef set_intersect(NodeRef x, NodeRef y);
  NodeRef set_diff(NodeRef x, NodeRef y);
  NodeRef set_symdiff(NodeRef x, NodeRef y);

  /// { c ∪ {v} : c ∈ x }. Combinations already holding v keep a single
  /// occurrence, so distinct members of x may merge.
  NodeRef attach(NodeRef x, VarId v);

  /// Members of x that are a subset of some member of y.
  NodeRef permit(NodeRef x, NodeRef y);

  /// Members of x that are a superset of some member of y.
  NodeRef restrict(NodeRef x, NodeRef y);

  /// Exact number of combinations in x.
  BigInt count(NodeRef x);

  /// Up to `limit` combinations, in depth-first order taking 1-edges before
  /// 0-edges. The order is fixed by the variable order alone.
  std::vector<Combo> enumerate(NodeRef x, std::size_t limit);

  /// Membership test for one combination (sorted by ordinal, no duplicates).
  bool contains(NodeRef x, std::span<const VarId> combo) const;

  /// Whether x holds the empty combination.
  bool contains_empty(NodeRef x) const;

  VarId var(NodeRef x) const;  ///< top variable; x must be internal
  NodeRef lo(NodeRef x) const;
  NodeRef hi(NodeRef x) const;

  /// Internal nodes allocated so far (terminals excluded). Rebuilding an
  /// already-present family allocates nothing.
  std::uint64_t node_count() const { return nodes_.size() - 2; }

  /// Internal nodes reachable from x.
  std::uint64_t diagram_nodes(NodeRef x) const;

  /// Approximate heap footprint in bytes.
  std::size_t memory_bytes() const;

  /// Structural audit: zero-suppression, child variable ordering, unique
  /// table consistency. False on the first violation.
  bool check_invariants() const;

 private:
  struct Node {
    std::uint32_t var;
    std::uint32_t lo;
    std::uint32_t hi;
    std::uint32_t next;  // unique table chain
  };

  struct CacheSlot {
    std::uint32_t op = 0;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t result = 0;
  };

  enum Op : std::uint32_t {
    kOpUnion = 1,
    kOpIntersect,
    kOpDiff,
    kOpSymdiff,
    kOpAttach,
    kOpPermit,
    kOpRestrict,
  };

  std::uint32_t raw_var(NodeRef x) const { return nodes_[x.index_].var; }
  bool cache_get(std::uint32_t op, NodeRef a, NodeRef b, NodeRef* out) const;
  void cache_put(std::uint32_t op, NodeRef a, NodeRef b, NodeRef result);
  void rehash_buckets();
  void maybe_grow_cache();

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> buckets_;  // power-of-two sized
  std::vector<CacheSlot> cache_;        // direct mapped, lossy
  std::unordered_map<std::uint32_t, BigInt> count_cache_;
  std::uint64_t max_nodes_ = 0;
};

}  // namespace kpaths
