#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kpaths/bigint.hpp"
#include "kpaths/graph.hpp"
#include "kpaths/vsop.hpp"

namespace kpaths {

enum class Mode { kLongest, kShortest };

enum class VarOrder { kTopo, kReverse };

struct PruneOptions {
  std::uint64_t k = 1;
  Mode mode = Mode::kLongest;
};

struct BuildOptions {
  /// Replace each vertex's partial path set by its tie-inclusive top-K
  /// before extending it. Queries for the same (k, mode) are unchanged.
  std::optional<PruneOptions> prune;
  VarOrder var_order = VarOrder::kTopo;
  /// Raises the internal value offset; no externally visible effect.
  std::int64_t offset_shift = 0;
};

/// Tie-inclusive top-K selection by binary search on the value range,
/// driven only by term counts. Values here are raw (no offset handling).
struct SelectResult {
  Vsop paths;
  std::int64_t threshold = 0;
  BigInt count;
  int iterations = 0;
};

/// Requires a nonempty expression and k >= 1. Returns every term whose
/// value is >= the k-th largest (longest mode) or <= the k-th smallest
/// (shortest mode); ties at the boundary are all included, so the count
/// may exceed k. threshold is that boundary value.
SelectResult top_k_select(const Vsop& expr, std::uint64_t k, Mode mode);

struct QueryResult {
  Vsop paths;
  /// Boundary true length; empty when the result has no paths.
  std::optional<std::int64_t> threshold;
  BigInt count;
  Mode mode = Mode::kLongest;
  int iterations = 0;
};

struct MaterializedPath {
  std::vector<std::string> vertices;
  std::int64_t length = 0;
};

/// All source-to-sink paths of a DAG as one valued expression: each term is
/// the vertex set of a path, its value the path length plus a positive
/// offset. The offset keeps every stored value nonzero (zero-valued terms
/// would vanish); reported lengths always have it subtracted.
class PathDb {
 public:
  PathDb(NodeStore& store, const Dag& dag, const BuildOptions& options = {});

  BigInt count_paths() const;
  std::int64_t longest_length() const;
  std::int64_t shortest_length() const;

  QueryResult top_k_longest(std::uint64_t k) const;
  QueryResult top_k_shortest(std::uint64_t k) const;

  /// One k-th longest (shortest) path as a term with its true length. When
  /// several paths tie at the k-th length any of them is a correct answer;
  /// the choice is deterministic.
  Term kth_longest(std::uint64_t k) const;
  Term kth_shortest(std::uint64_t k) const;

  /// Expands at most `limit` result terms into vertex sequences, re-checking
  /// each against the graph's edges and weights.
  std::vector<MaterializedPath> materialize(const QueryResult& result,
                                            std::size_t limit) const;
  MaterializedPath materialize(const Term& term) const;

  const Vsop& expr() const { return paths_; }
  std::int64_t offset() const { return offset_; }
  const Dag& dag() const { return *dag_; }
  NodeStore& store() const { return *store_; }
  VarId var_of_vertex(VertexId v) const { return var_of_[v]; }
  VertexId vertex_of_var(VarId var) const { return vertex_of_[var.ordinal]; }

 private:
  QueryResult top_k(std::uint64_t k, Mode mode) const;
  Term kth(std::uint64_t k, Mode mode) const;
  MaterializedPath path_of(const Combo& combo, std::int64_t length) const;

  NodeStore* store_;
  const Dag* dag_;
  Vsop paths_;
  std::int64_t offset_ = 1;
  std::vector<VarId> var_of_;
  std::vector<VertexId> vertex_of_;
};

}  // namespace kpaths
