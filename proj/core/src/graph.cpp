#include "kpaths/graph.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "kpaths/errors.hpp"

namespace kpaths {

namespace {

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& why) {
  throw ParseError("malformed line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

Dag Dag::parse(const std::string& text) {
  Dag dag;
  std::unordered_map<std::string, VertexId> ids;
  std::set<std::pair<VertexId, VertexId>> seen_pairs;

  auto intern = [&](std::string_view name) -> VertexId {
    auto [it, inserted] =
        ids.try_emplace(std::string(name), VertexId(dag.names_.size()));
    if (inserted) dag.names_.emplace_back(name);
    return it->second;
  };

  std::istringstream in(text);
  std::string raw;
  for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 3) malformed(line_no, "expected FROM TO WEIGHT");
    if (!valid_name(fields[0]))
      malformed(line_no, "bad vertex name '" + std::string(fields[0]) + "'");
    if (!valid_name(fields[1]))
      malformed(line_no, "bad vertex name '" + std::string(fields[1]) + "'");
    std::int64_t weight = 0;
    auto [end, ec] = std::from_chars(
        fields[2].data(), fields[2].data() + fields[2].size(), weight);
    if (ec != std::errc{} || end != fields[2].data() + fields[2].size())
      malformed(line_no, "bad weight '" + std::string(fields[2]) + "'");

    VertexId from = intern(fields[0]);
    VertexId to = intern(fields[1]);
    if (from == to)
      throw ParseError("cycle detected: " + dag.names_[from] + " -> " +
                       dag.names_[to]);
    if (!seen_pairs.emplace(from, to).second)
      throw ParseError("parallel edge " + dag.names_[from] + " -> " +
                       dag.names_[to] + " (line " + std::to_string(line_no) +
                       ")");
    dag.edges_.push_back({from, to, weight});
  }

  dag.finalize();
  return dag;
}

void Dag::finalize() {
  std::size_t n = names_.size();

  auto build_csr = [n](std::vector<GraphEdge> sorted,
                       std::vector<std::uint32_t>& offsets, bool by_to) {
    std::stable_sort(sorted.begin(), sorted.end(),
                     [by_to](const GraphEdge& a, const GraphEdge& b) {
                       return (by_to ? a.to : a.from) < (by_to ? b.to : b.from);
                     });
    offsets.assign(n + 1, 0);
    for (const GraphEdge& e : sorted) ++offsets[(by_to ? e.to : e.from) + 1];
    for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
    return sorted;
  };
  in_sorted_ = build_csr(edges_, in_offsets_, true);
  out_sorted_ = build_csr(edges_, out_offsets_, false);

  // Kahn's algorithm; the ready set is keyed by name so ties are
  // lexicographic.
  std::vector<std::uint32_t> indegree(n, 0);
  for (const GraphEdge& e : edges_) ++indegree[e.to];
  auto by_name = [this](VertexId a, VertexId b) { return names_[a] > names_[b]; };
  std::priority_queue<VertexId, std::vector<VertexId>, decltype(by_name)>
      ready(by_name);
  for (VertexId v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);

  topo_order_.clear();
  topo_order_.reserve(n);
  while (!ready.empty()) {
    VertexId v = ready.top();
    ready.pop();
    topo_order_.push_back(v);
    for (const GraphEdge& e : out_edges(v))
      if (--indegree[e.to] == 0) ready.push(e.to);
  }

  if (topo_order_.size() < n) {
    // Some cycle remains; every leftover vertex keeps a leftover
    // predecessor, so walking predecessors must revisit one.
    std::vector<bool> leftover(n, true);
    for (VertexId v : topo_order_) leftover[v] = false;
    VertexId start = 0;
    while (!leftover[start]) ++start;
    std::vector<VertexId> chain{start};
    std::unordered_map<VertexId, std::size_t> at{{start, 0}};
    for (;;) {
      VertexId pred = UINT32_MAX;
      for (const GraphEdge& e : in_edges(chain.back()))
        if (leftover[e.from] &&
            (pred == UINT32_MAX || names_[e.from] < names_[pred]))
          pred = e.from;
      assert(pred != UINT32_MAX);
      if (auto it = at.find(pred); it != at.end()) {
        // chain[i+1] -> chain[i] are edges; the cycle runs from pred's
        // first occurrence back to itself against the chain direction.
        std::string msg = "cycle detected: " + names_[pred];
        for (std::size_t i = chain.size(); i-- > it->second;)
          msg += " -> " + names_[chain[i]];
        throw ParseError(msg);
      }
      at.emplace(pred, chain.size());
      chain.push_back(pred);
    }
  }

  topo_pos_.assign(n, 0);
  for (std::uint32_t i = 0; i < topo_order_.size(); ++i)
    topo_pos_[topo_order_[i]] = i;
}

std::string Dag::render() const {
  std::vector<GraphEdge> sorted = edges_;
  std::sort(sorted.begin(), sorted.end(),
            [this](const GraphEdge& a, const GraphEdge& b) {
              if (names_[a.from] != names_[b.from])
                return names_[a.from] < names_[b.from];
              return names_[a.to] < names_[b.to];
            });
  std::ostringstream out;
  for (const GraphEdge& e : sorted)
    out << names_[e.from] << ' ' << names_[e.to] << ' ' << e.weight << '\n';
  return out.str();
}

std::optional<VertexId> Dag::vertex_id(const std::string& name) const {
  for (VertexId v = 0; v < names_.size(); ++v)
    if (names_[v] == name) return v;
  return std::nullopt;
}

std::span<const GraphEdge> Dag::in_edges(VertexId v) const {
  return {in_sorted_.data() + in_offsets_[v],
          in_sorted_.data() + in_offsets_[v + 1]};
}

std::span<const GraphEdge> Dag::out_edges(VertexId v) const {
  return {out_sorted_.data() + out_offsets_[v],
          out_sorted_.data() + out_offsets_[v + 1]};
}

std::vector<VertexId> Dag::sources() const {
  std::vector<VertexId> result;
  for (VertexId v = 0; v < names_.size(); ++v)
    if (is_source(v)) result.push_back(v);
  std::sort(result.begin(), result.end(), [this](VertexId a, VertexId b) {
    return names_[a] < names_[b];
  });
  return result;
}

std::vector<VertexId> Dag::sinks() const {
  std::vector<VertexId> result;
  for (VertexId v = 0; v < names_.size(); ++v)
    if (is_sink(v)) result.push_back(v);
  std::sort(result.begin(), result.end(), [this](VertexId a, VertexId b) {
    return names_[a] < names_[b];
  });
  return result;
}

std::optional<std::int64_t> Dag::edge_weight(VertexId from, VertexId to) const {
  for (const GraphEdge& e : out_edges(from))
    if (e.to == to) return e.weight;
  return std::nullopt;
}

bool Dag::operator==(const Dag& other) const {
  auto name_set = [](const Dag& d) {
    std::vector<std::string> v = d.names_;
    std::sort(v.begin(), v.end());
    return v;
  };
  auto edge_set = [](const Dag& d) {
    std::vector<std::tuple<std::string, std::string, std::int64_t>> v;
    for (const GraphEdge& e : d.edges_)
      v.emplace_back(d.names_[e.from], d.names_[e.to], e.weight);
    std::sort(v.begin(), v.end());
    return v;
  };
  return name_set(*this) == name_set(other) &&
         edge_set(*this) == edge_set(other);
}

}  // namespace kpaths
