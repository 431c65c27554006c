#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kpaths {

using VertexId = std::uint32_t;

struct GraphEdge {
  VertexId from = 0;
  VertexId to = 0;
  std::int64_t weight = 0;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Immutable weighted DAG with a fixed topological order.
///
/// Vertices are interned names with dense ids assigned in first-seen order.
/// The topological order breaks ties by vertex name, so any two parses of
/// the same graph agree on it.
class Dag {
 public:
  Dag() = default;

  /// Parses edge-list text: one `FROM TO WEIGHT` per line, whitespace
  /// separated, `#` to end of line is a comment. Names match
  /// [A-Za-z0-9_.-]+ and weights are signed decimal 64-bit integers.
  /// Rejects cycles (self-loops included) and duplicate (from, to) pairs.
  static Dag parse(const std::string& text);

  /// Edge-list text that parses back to an equal graph.
  std::string render() const;

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return names_.empty(); }

  const std::string& name(VertexId v) const { return names_[v]; }
  std::optional<VertexId> vertex_id(const std::string& name) const;
  const std::vector<GraphEdge>& edges() const { return edges_; }

  /// Vertex ids in topological order.
  const std::vector<VertexId>& topo_order() const { return topo_order_; }
  /// Position of v within topo_order().
  std::uint32_t topo_position(VertexId v) const { return topo_pos_[v]; }

  std::span<const GraphEdge> in_edges(VertexId v) const;
  std::span<const GraphEdge> out_edges(VertexId v) const;

  bool is_source(VertexId v) const { return in_edges(v).empty(); }
  bool is_sink(VertexId v) const { return out_edges(v).empty(); }
  /// Sources (in-degree 0), sorted by name.
  std::vector<VertexId> sources() const;
  /// Sinks (out-degree 0), sorted by name.
  std::vector<VertexId> sinks() const;

  std::optional<std::int64_t> edge_weight(VertexId from, VertexId to) const;

  /// Same vertex names and the same weighted edge relation; vertex ids and
  /// input order do not matter.
  bool operator==(const Dag& other) const;

 private:
  void finalize();

  std::vector<std::string> names_;
  std::vector<GraphEdge> edges_;
  // CSR-style adjacency: edges grouped by endpoint, with offset tables.
  std::vector<GraphEdge> in_sorted_;
  std::vector<GraphEdge> out_sorted_;
  std::vector<std::uint32_t> in_offsets_;
  std::vector<std::uint32_t> out_offsets_;
  std::vector<VertexId> topo_order_;
  std::vector<std::uint32_t> topo_pos_;
};

}  // namespace kpaths
