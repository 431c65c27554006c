#include "kpaths/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "kpaths/errors.hpp"

namespace kpaths::oracle {

void ExplicitVsop::put(Combo combo, std::int64_t value) {
  if (value == 0)
    terms_.erase(combo);
  else
    terms_[std::move(combo)] = value;
}

ExplicitVsop ExplicitVsop::constant(std::int64_t value) {
  return from_term(value, {});
}

ExplicitVsop ExplicitVsop::from_term(std::int64_t value, Combo combo) {
  std::sort(combo.begin(), combo.end());
  combo.erase(std::unique(combo.begin(), combo.end()), combo.end());
  ExplicitVsop result;
  result.put(std::move(combo), value);
  return result;
}

ExplicitVsop ExplicitVsop::from_vsop(const Vsop& x, std::size_t limit) {
  if (x.count_terms() > limit)
    throw std::logic_error("expression too large to explicate");
  ExplicitVsop result;
  for (const Combo& combo : x.store().enumerate(x.support(), limit))
    result.put(combo, x.value_at(combo));
  return result;
}

Vsop ExplicitVsop::to_vsop(NodeStore& store) const {
  Vsop result = Vsop::zero(store);
  for (const auto& [combo, value] : terms_)
    result = result + Vsop::from_term(store, value, combo);
  return result;
}

ExplicitVsop ExplicitVsop::add(const ExplicitVsop& y) const {
  ExplicitVsop result = *this;
  for (const auto& [combo, value] : y.terms_)
    result.put(combo, result.value_at(combo) + value);
  return result;
}

ExplicitVsop ExplicitVsop::neg() const {
  ExplicitVsop result = *this;
  for (auto& [combo, value] : result.terms_) value = -value;
  return result;
}

ExplicitVsop ExplicitVsop::sub(const ExplicitVsop& y) const {
  return add(y.neg());
}

ExplicitVsop ExplicitVsop::mul(const ExplicitVsop& y) const {
  ExplicitVsop result;
  for (const auto& [ca, va] : terms_) {
    for (const auto& [cb, vb] : y.terms_) {
      Combo merged = ca;
      merged.insert(merged.end(), cb.begin(), cb.end());
      std::sort(merged.begin(), merged.end());
      merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
      result.put(merged, result.value_at(merged) + va * vb);
    }
  }
  return result;
}

template <typename Pred>
ExplicitVsop ExplicitVsop::compare_with(const ExplicitVsop& y,
                                        Pred holds) const {
  std::set<Combo> universe;
  for (const auto& entry : terms_) universe.insert(entry.first);
  for (const auto& entry : y.terms_) universe.insert(entry.first);
  ExplicitVsop result;
  for (const Combo& combo : universe)
    if (holds(value_at(combo), y.value_at(combo))) result.put(combo, 1);
  return result;
}

ExplicitVsop ExplicitVsop::cmp_eq(const ExplicitVsop& y) const {
  return compare_with(y, [](std::int64_t a, std::int64_t b) { return a == b; });
}
ExplicitVsop ExplicitVsop::cmp_ne(const ExplicitVsop& y) const {
  return compare_with(y, [](std::int64_t a, std::int64_t b) { return a != b; });
}
ExplicitVsop ExplicitVsop::cmp_lt(const ExplicitVsop& y) const {
  return compare_with(y, [](std::int64_t a, std::int64_t b) { return a < b; });
}
ExplicitVsop ExplicitVsop::cmp_le(const ExplicitVsop& y) const {
  return compare_with(y, [](std::int64_t a, std::int64_t b) { return a <= b; });
}
ExplicitVsop ExplicitVsop::cmp_gt(const ExplicitVsop& y) const {
  return compare_with(y, [](std::int64_t a, std::int64_t b) { return a > b; });
}
ExplicitVsop ExplicitVsop::cmp_ge(const ExplicitVsop& y) const {
  return compare_with(y, [](std::int64_t a, std::int64_t b) { return a >= b; });
}

template <typename Pred>
ExplicitVsop ExplicitVsop::select_units(Pred holds) const {
  ExplicitVsop result;
  for (const auto& [combo, value] : terms_)
    if (holds(value)) result.put(combo, 1);
  return result;
}

template <typename Pred>
ExplicitVsop ExplicitVsop::select_terms(Pred holds) const {
  ExplicitVsop result;
  for (const auto& [combo, value] : terms_)
    if (holds(value)) result.put(combo, value);
  return result;
}

ExplicitVsop ExplicitVsop::filter_eq(std::int64_t k) const {
  return select_units([k](std::int64_t v) { return v == k; });
}
ExplicitVsop ExplicitVsop::filter_ne(std::int64_t k) const {
  return select_units([k](std::int64_t v) { return v != k; });
}
ExplicitVsop ExplicitVsop::filter_lt(std::int64_t k) const {
  return select_units([k](std::int64_t v) { return v < k; });
}
ExplicitVsop ExplicitVsop::filter_le(std::int64_t k) const {
  return select_units([k](std::int64_t v) { return v <= k; });
}
ExplicitVsop ExplicitVsop::filter_gt(std::int64_t k) const {
  return select_units([k](std::int64_t v) { return v > k; });
}
ExplicitVsop ExplicitVsop::filter_ge(std::int64_t k) const {
  return select_units([k](std::int64_t v) { return v >= k; });
}

namespace {

std::int64_t require_constant(const ExplicitVsop& y) {
  if (!y.is_constant()) throw QueryError("not a constant expression");
  return y.get_int();
}

}  // namespace

ExplicitVsop ExplicitVsop::terms_eq(const ExplicitVsop& y) const {
  std::int64_t k = require_constant(y);
  return select_terms([k](std::int64_t v) { return v == k; });
}
ExplicitVsop ExplicitVsop::terms_ne(const ExplicitVsop& y) const {
  std::int64_t k = require_constant(y);
  return select_terms([k](std::int64_t v) { return v != k; });
}
ExplicitVsop ExplicitVsop::terms_lt(const ExplicitVsop& y) const {
  std::int64_t k = require_constant(y);
  return select_terms([k](std::int64_t v) { return v < k; });
}
ExplicitVsop ExplicitVsop::terms_le(const ExplicitVsop& y) const {
  std::int64_t k = require_constant(y);
  return select_terms([k](std::int64_t v) { return v <= k; });
}
ExplicitVsop ExplicitVsop::terms_gt(const ExplicitVsop& y) const {
  std::int64_t k = require_constant(y);
  return select_terms([k](std::int64_t v) { return v > k; });
}
ExplicitVsop ExplicitVsop::terms_ge(const ExplicitVsop& y) const {
  std::int64_t k = require_constant(y);
  return select_terms([k](std::int64_t v) { return v >= k; });
}

ExplicitVsop ExplicitVsop::permit(const ExplicitVsop& y) const {
  ExplicitVsop result;
  for (const auto& [combo, value] : terms_)
    for (const auto& entry : y.terms_) {
      const Combo& other = entry.first;
      if (std::includes(other.begin(), other.end(), combo.begin(),
                        combo.end())) {
        result.put(combo, value);
        break;
      }
    }
  return result;
}

ExplicitVsop ExplicitVsop::restrict(const ExplicitVsop& y) const {
  ExplicitVsop result;
  for (const auto& [combo, value] : terms_)
    for (const auto& entry : y.terms_) {
      const Combo& other = entry.first;
      if (std::includes(combo.begin(), combo.end(), other.begin(),
                        other.end())) {
        result.put(combo, value);
        break;
      }
    }
  return result;
}

ExplicitVsop ExplicitVsop::filter_then(const ExplicitVsop& selector) const {
  ExplicitVsop result;
  for (const auto& [combo, value] : terms_)
    if (selector.terms_.contains(combo)) result.put(combo, value);
  return result;
}

BigInt ExplicitVsop::total_val() const {
  BigInt total = 0;
  for (const auto& entry : terms_) total += entry.second;
  return total;
}

std::int64_t ExplicitVsop::max_val() const {
  if (terms_.empty()) throw QueryError("empty expression");
  std::int64_t best = terms_.begin()->second;
  for (const auto& entry : terms_) best = std::max(best, entry.second);
  return best;
}

std::int64_t ExplicitVsop::min_val() const {
  if (terms_.empty()) throw QueryError("empty expression");
  std::int64_t best = terms_.begin()->second;
  for (const auto& entry : terms_) best = std::min(best, entry.second);
  return best;
}

Term ExplicitVsop::max_cover() const {
  std::int64_t best = max_val();
  const Combo* pick = nullptr;
  for (const auto& [combo, value] : terms_)
    if (value == best && (!pick || dfs_precedes(combo, *pick))) pick = &combo;
  return {*pick, best};
}

Term ExplicitVsop::min_cover() const {
  std::int64_t best = min_val();
  const Combo* pick = nullptr;
  for (const auto& [combo, value] : terms_)
    if (value == best && (!pick || dfs_precedes(combo, *pick))) pick = &combo;
  return {*pick, best};
}

std::int64_t ExplicitVsop::value_at(const Combo& combo) const {
  auto it = terms_.find(combo);
  return it == terms_.end() ? 0 : it->second;
}

bool ExplicitVsop::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.empty());
}

std::int64_t ExplicitVsop::get_int() const {
  if (!is_constant()) throw QueryError("not a constant expression");
  return terms_.empty() ? 0 : terms_.begin()->second;
}

bool dfs_precedes(const Combo& a, const Combo& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  if (i == a.size()) return false;  // equal, or b continues with deeper vars
  if (i == b.size()) return true;   // a continues: its 1-branch comes first
  return a[i] < b[i];
}

std::vector<PathListEntry> enumerate_paths(const Dag& dag, std::size_t limit) {
  std::vector<PathListEntry> out;
  std::vector<VertexId> trail;

  std::function<void(VertexId, std::int64_t)> walk = [&](VertexId v,
                                                         std::int64_t length) {
    trail.push_back(v);
    if (dag.is_sink(v)) {
      if (out.size() >= limit) throw QueryError("path explosion");
      out.push_back({trail, length});
    } else {
      std::vector<GraphEdge> next(dag.out_edges(v).begin(),
                                  dag.out_edges(v).end());
      std::sort(next.begin(), next.end(),
                [&dag](const GraphEdge& a, const GraphEdge& b) {
                  return dag.name(a.to) < dag.name(b.to);
                });
      for (const GraphEdge& e : next) walk(e.to, length + e.weight);
    }
    trail.pop_back();
  };

  for (VertexId s : dag.sources())
    if (!dag.is_sink(s)) walk(s, 0);
  return out;
}

std::vector<PathListEntry> reference_top_k(std::vector<PathListEntry> paths,
                                           std::uint64_t k, Mode mode) {
  if (k == 0) throw QueryError("K must be positive");
  if (paths.empty()) return paths;
  std::stable_sort(paths.begin(), paths.end(),
                   [mode](const PathListEntry& a, const PathListEntry& b) {
                     return mode == Mode::kLongest ? a.length > b.length
                                                   : a.length < b.length;
                   });
  if (paths.size() <= k) return paths;
  std::int64_t cutoff = paths[k - 1].length;
  std::size_t end = k;
  while (end < paths.size() && paths[end].length == cutoff) ++end;
  paths.resize(end);
  return paths;
}

Vsop paths_to_vsop(NodeStore& store, const std::vector<PathListEntry>& paths,
                   const std::vector<VarId>& var_of, std::int64_t offset) {
  Vsop result = Vsop::zero(store);
  for (const PathListEntry& path : paths) {
    Combo combo;
    combo.reserve(path.vertices.size());
    for (VertexId v : path.vertices) combo.push_back(var_of[v]);
    result = result + Vsop::from_term(store, path.length + offset, combo);
  }
  return result;
}

}  // namespace kpaths::oracle
