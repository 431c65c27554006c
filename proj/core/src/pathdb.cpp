#include "kpaths/pathdb.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "kpaths/errors.hpp"

namespace kpaths {

namespace {

std::int64_t checked_int64(const BigInt& v, const char* what) {
  if (v < std::numeric_limits<std::int64_t>::min() ||
      v > std::numeric_limits<std::int64_t>::max())
    throw std::overflow_error(std::string(what) + " exceeds 64-bit range");
  return v.convert_to<std::int64_t>();
}

int iteration_budget(std::int64_t lo, std::int64_t hi) {
  int bits = 0;
  for (BigInt range = BigInt(hi) - lo + 1; range > 0; range >>= 1) ++bits;
  return bits + 2;
}

}  // namespace

SelectResult top_k_select(const Vsop& expr, std::uint64_t k, Mode mode) {
  if (k == 0) throw QueryError("K must be positive");
  BigInt total = expr.count_terms();
  if (total == 0) throw QueryError("empty expression");
  const bool longest = mode == Mode::kLongest;

  if (total <= k) {
    std::int64_t threshold = longest ? expr.min_val() : expr.max_val();
    return {expr, threshold, total, 0};
  }

  std::int64_t min = expr.min_val();
  std::int64_t max = expr.max_val();
  const int budget = iteration_budget(min, max);
  std::optional<std::int64_t> mid_prev;
  std::int64_t mid = min;
  int iterations = 0;
  for (;;) {
    ++iterations;
    if (iterations > budget)
      throw std::logic_error("top-k search failed to converge");
    std::int64_t next = min + (max - min) / 2;
    if (mid_prev && *mid_prev == next) {
      mid = next + 1;
      break;
    }
    mid = next;
    mid_prev = mid;
    BigInt c1 = expr.filter_eq(mid).count_terms();
    BigInt c2 = longest ? expr.filter_gt(mid).count_terms()
                        : expr.filter_lt(mid).count_terms();
    BigInt c3 = c1 + c2;
    if (c3 == k || (c3 > k && c2 < k)) break;
    if (c3 < k) {
      (longest ? max : min) = mid;
    } else {
      (longest ? min : max) = mid;
    }
  }

  Vsop selected = longest ? expr.filter_then(expr.filter_ge(mid))
                          : expr.filter_then(expr.filter_le(mid));

  // The search can settle strictly inside a gap between stored values, so
  // the boundary is read off the selected set, then checked: at least k
  // terms reach it and fewer than k lie strictly beyond it.
  std::int64_t threshold = longest ? selected.min_val() : selected.max_val();
  BigInt reach = longest ? expr.filter_ge(threshold).count_terms()
                         : expr.filter_le(threshold).count_terms();
  BigInt beyond = 0;
  if (longest && threshold < std::numeric_limits<std::int64_t>::max())
    beyond = expr.filter_ge(threshold + 1).count_terms();
  if (!longest && threshold > std::numeric_limits<std::int64_t>::min())
    beyond = expr.filter_le(threshold - 1).count_terms();
  if (!(reach >= k && beyond < k))
    throw std::logic_error("top-k selection violated its contract");

  return {selected, threshold, selected.count_terms(), iterations};
}

PathDb::PathDb(NodeStore& store, const Dag& dag, const BuildOptions& options)
    : store_(&store), dag_(&dag), paths_(Vsop::zero(store)) {
  if (options.offset_shift < 0)
    throw std::invalid_argument("offset shift must be nonnegative");
  if (options.prune && options.prune->k == 0)
    throw QueryError("K must be positive");

  // Offset every stored value so no path (or partial path) can reach zero
  // and silently vanish; each term picks it up exactly once, on its source
  // edge.
  BigInt offset = BigInt(1) + options.offset_shift;
  for (const GraphEdge& e : dag.edges())
    if (e.weight < 0) offset -= e.weight;
  offset_ = checked_int64(offset, "value offset");

  std::size_t n = dag.vertex_count();
  var_of_.resize(n);
  vertex_of_.resize(n);
  const auto& topo = dag.topo_order();
  for (std::uint32_t pos = 0; pos < topo.size(); ++pos) {
    std::uint32_t ordinal = options.var_order == VarOrder::kTopo
                                ? pos
                                : std::uint32_t(n) - 1 - pos;
    var_of_[topo[pos]] = VarId{ordinal};
    vertex_of_[ordinal] = topo[pos];
  }

  std::vector<Vsop> partial(n, Vsop::zero(store));
  for (VertexId v : topo) {
    if (dag.is_source(v)) continue;
    Vsop acc = Vsop::zero(store);
    for (const GraphEdge& e : dag.in_edges(v)) {
      if (dag.is_source(e.from)) {
        std::int64_t value =
            checked_int64(BigInt(e.weight) + offset_, "path value");
        acc = acc + Vsop::from_term(store, value, {var_of_[e.from]});
      } else {
        const Vsop& upstream = partial[e.from];
        acc = acc + upstream +
              Vsop::constant_over(store, upstream.support(), e.weight);
      }
    }
    if (options.prune && acc.count_terms() > options.prune->k)
      acc = top_k_select(acc, options.prune->k, options.prune->mode).paths;
    partial[v] = acc * Vsop::from_term(store, 1, {var_of_[v]});
  }

  for (VertexId v : dag.sinks()) paths_ = paths_ + partial[v];
}

BigInt PathDb::count_paths() const { return paths_.count_terms(); }

std::int64_t PathDb::longest_length() const {
  if (paths_.is_zero()) throw QueryError("empty database");
  return paths_.max_val() - offset_;
}

std::int64_t PathDb::shortest_length() const {
  if (paths_.is_zero()) throw QueryError("empty database");
  return paths_.min_val() - offset_;
}

QueryResult PathDb::top_k(std::uint64_t k, Mode mode) const {
  if (k == 0) throw QueryError("K must be positive");
  if (paths_.is_zero())
    return {Vsop::zero(*store_), std::nullopt, 0, mode, 0};
  SelectResult sel = top_k_select(paths_, k, mode);
  return {sel.paths, sel.threshold - offset_, sel.count, mode, sel.iterations};
}

QueryResult PathDb::top_k_longest(std::uint64_t k) const {
  return top_k(k, Mode::kLongest);
}

QueryResult PathDb::top_k_shortest(std::uint64_t k) const {
  return top_k(k, Mode::kShortest);
}

Term PathDb::kth(std::uint64_t k, Mode mode) const {
  if (k == 0) throw QueryError("K must be positive");
  if (paths_.is_zero()) throw QueryError("empty database");
  if (paths_.count_terms() < k) throw QueryError("K exceeds path count");
  SelectResult sel = top_k_select(paths_, k, mode);
  Term term =
      mode == Mode::kLongest ? sel.paths.min_cover() : sel.paths.max_cover();
  term.value -= offset_;
  return term;
}

Term PathDb::kth_longest(std::uint64_t k) const {
  return kth(k, Mode::kLongest);
}

Term PathDb::kth_shortest(std::uint64_t k) const {
  return kth(k, Mode::kShortest);
}

std::vector<MaterializedPath> PathDb::materialize(const QueryResult& result,
                                                  std::size_t limit) const {
  std::vector<MaterializedPath> out;
  if (result.paths.is_zero() || limit == 0) return out;
  for (const Combo& combo :
       store_->enumerate(result.paths.support(), limit)) {
    std::int64_t internal = result.paths.value_at(combo);
    out.push_back(path_of(combo, internal - offset_));
  }
  return out;
}

MaterializedPath PathDb::materialize(const Term& term) const {
  return path_of(term.combo, term.value);
}

MaterializedPath PathDb::path_of(const Combo& combo,
                                 std::int64_t length) const {
  if (combo.empty()) throw std::logic_error("term does not induce a path");
  std::vector<VertexId> seq;
  seq.reserve(combo.size());
  for (VarId var : combo) seq.push_back(vertex_of_[var.ordinal]);
  std::sort(seq.begin(), seq.end(), [this](VertexId a, VertexId b) {
    return dag_->topo_position(a) < dag_->topo_position(b);
  });
  if (!dag_->is_source(seq.front()) || !dag_->is_sink(seq.back()))
    throw std::logic_error("term does not induce a path");
  std::int64_t total = 0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    auto weight = dag_->edge_weight(seq[i], seq[i + 1]);
    if (!weight) throw std::logic_error("term does not induce a path");
    total += *weight;
  }
  if (total != length) throw std::logic_error("term does not induce a path");
  MaterializedPath path;
  path.vertices.reserve(seq.size());
  for (VertexId v : seq) path.vertices.push_back(dag_->name(v));
  path.length = length;
  return path;
}

}  // namespace kpaths
