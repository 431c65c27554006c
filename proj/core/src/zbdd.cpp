#include "kpaths/zbdd.hpp"

#include <cassert>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "kpaths/errors.hpp"

namespace kpaths {

namespace {

constexpr std::uint32_t kTerminalVar = 0xFFFFFFFFu;
constexpr std::uint32_t kNil = 0xFFFFFFFFu;
constexpr std::size_t kInitialBuckets = 1u << 12;
constexpr std::size_t kInitialCache = 1u << 14;
constexpr std::size_t kMaxCache = 1u << 22;

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t hash3(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  return mix64((std::uint64_t(a) << 32 | b) ^ mix64(c));
}

}  // namespace

NodeStore::NodeStore() : NodeStore(StoreConfig{}) {}

NodeStore::NodeStore(const StoreConfig& config)
    : buckets_(kInitialBuckets, kNil),
      cache_(kInitialCache),
      max_nodes_(config.max_nodes) {
  nodes_.push_back({kTerminalVar, 0, 0, kNil});  // empty
  nodes_.push_back({kTerminalVar, 1, 1, kNil});  // unit
}

NodeRef NodeStore::make_node(VarId var, NodeRef lo, NodeRef hi) {
  if (hi == NodeRef::empty()) return lo;  // zero-suppression
  assert(var.ordinal < raw_var(lo) && var.ordinal < raw_var(hi));
  std::uint64_t h = hash3(var.ordinal, lo.index_, hi.index_);
  std::uint32_t bucket = std::uint32_t(h & (buckets_.size() - 1));
  for (std::uint32_t i = buckets_[bucket]; i != kNil; i = nodes_[i].next) {
    const Node& n = nodes_[i];
    if (n.var == var.ordinal && n.lo == lo.index_ && n.hi == hi.index_)
      return NodeRef{i};
  }
  if (max_nodes_ != 0 && node_count() >= max_nodes_)
    throw NodeLimitError("memory guard: node limit " +
                         std::to_string(max_nodes_) + " exceeded");
  auto idx = std::uint32_t(nodes_.size());
  nodes_.push_back({var.ordinal, lo.index_, hi.index_, buckets_[bucket]});
  buckets_[bucket] = idx;
  if (nodes_.size() > buckets_.size()) rehash_buckets();
  maybe_grow_cache();
  return NodeRef{idx};
}

void NodeStore::rehash_buckets() {
  buckets_.assign(buckets_.size() * 2, kNil);
  for (std::uint32_t i = 2; i < nodes_.size(); ++i) {
    Node& n = nodes_[i];
    std::uint64_t h = hash3(n.var, n.lo, n.hi);
    std::uint32_t bucket = std::uint32_t(h & (buckets_.size() - 1));
    n.next = buckets_[bucket];
    buckets_[bucket] = i;
  }
}

void NodeStore::maybe_grow_cache() {
  if (cache_.size() < kMaxCache && nodes_.size() > cache_.size() * 4)
    cache_.assign(cache_.size() * 2, CacheSlot{});  // lossy by design
}

bool NodeStore::cache_get(std::uint32_t op, NodeRef a, NodeRef b,
                          NodeRef* out) const {
  std::uint64_t h = hash3(a.index_, b.index_, op);
  const CacheSlot& slot = cache_[h & (cache_.size() - 1)];
  if (slot.op == op && slot.a == a.index_ && slot.b == b.index_) {
    *out = NodeRef{slot.result};
    return true;
  }
  return false;
}

void NodeStore::cache_put(std::uint32_t op, NodeRef a, NodeRef b,
                          NodeRef result) {
  std::uint64_t h = hash3(a.index_, b.index_, op);
  cache_[h & (cache_.size() - 1)] = {op, a.index_, b.index_, result.index_};
}

NodeRef NodeStore::single(VarId v) {
  return make_node(v, NodeRef::empty(), NodeRef::unit());
}

VarId NodeStore::var(NodeRef x) const {
  assert(!x.is_terminal());
  return VarId{nodes_[x.index_].var};
}

NodeRef NodeStore::lo(NodeRef x) const {
  assert(!x.is_terminal());
  return NodeRef{nodes_[x.index_].lo};
}

NodeRef NodeStore::hi(NodeRef x) const {
  assert(!x.is_terminal());
  return NodeRef{nodes_[x.index_].hi};
}

NodeRef NodeStore::set_union(NodeRef x, NodeRef y) {
  if (x == y || y == NodeRef::empty()) return x;
  if (x == NodeRef::empty()) return y;
  if (y.index_ < x.index_) std::swap(x, y);
  NodeRef r;
  if (cache_get(kOpUnion, x, y, &r)) return r;
  std::uint32_t vx = raw_var(x), vy = raw_var(y);
  if (vx == vy) {
    r = make_node(VarId{vx}, set_union(lo(x), lo(y)), set_union(hi(x), hi(y)));
  } else if (vx < vy) {
    r = make_node(VarId{vx}, set_union(lo(x), y), hi(x));
  } else {
    r = make_node(VarId{vy}, set_union(x, lo(y)), hi(y));
  }
  cache_put(kOpUnion, x, y, r);
  return r;
}

NodeRef NodeStore::set_intersect(NodeRef x, NodeRef y) {
  if (x == y) return x;
  if (x == NodeRef::empty() || y == NodeRef::empty()) return NodeRef::empty();
  if (y.index_ < x.index_) std::swap(x, y);
  NodeRef r;
  if (cache_get(kOpIntersect, x, y, &r)) return r;
  std::uint32_t vx = raw_var(x), vy = raw_var(y);
  if (vx == vy) {
    r = make_node(VarId{vx}, set_intersect(lo(x), lo(y)),
                  set_intersect(hi(x), hi(y)));
  } else if (vx < vy) {
    r = set_intersect(lo(x), y);
  } else {
    r = set_intersect(x, lo(y));
  }
  cache_put(kOpIntersect, x, y, r);
  return r;
}

NodeRef NodeStore::set_diff(NodeRef x, NodeRef y) {
  if (x == NodeRef::empty() || x == y) return NodeRef::empty();
  if (y == NodeRef::empty()) return x;
  NodeRef r;
  if (cache_get(kOpDiff, x, y, &r)) return r;
  std::uint32_t vx = raw_var(x), vy = raw_var(y);
  if (vx == vy) {
    r = make_node(VarId{vx}, set_diff(lo(x), lo(y)), set_diff(hi(x), hi(y)));
  } else if (vx < vy) {
    r = make_node(VarId{vx}, set_diff(lo(x), y), hi(x));
  } else {
    r = set_diff(x, lo(y));
  }
  cache_put(kOpDiff, x, y, r);
  return r;
}

NodeRef NodeStore::set_symdiff(NodeRef x, NodeRef y) {
  if (x == y) return NodeRef::empty();
  if (x == NodeRef::empty()) return y;
  if (y == NodeRef::empty()) return x;
  if (y.index_ < x.index_) std::swap(x, y);
  NodeRef r;
  if (cache_get(kOpSymdiff, x, y, &r)) return r;
  std::uint32_t vx = raw_var(x), vy = raw_var(y);
  if (vx == vy) {
    r = make_node(VarId{vx}, set_symdiff(lo(x), lo(y)),
                  set_symdiff(hi(x), hi(y)));
  } else if (vx < vy) {
    r = make_node(VarId{vx}, set_symdiff(lo(x), y), hi(x));
  } else {
    r = make_node(VarId{vy}, set_symdiff(x, lo(y)), hi(y));
  }
  cache_put(kOpSymdiff, x, y, r);
  return r;
}

NodeRef NodeStore::attach(NodeRef x, VarId v) {
  if (x == NodeRef::empty()) return x;
  std::uint32_t vx = raw_var(x);
  if (v.ordinal < vx) return make_node(v, NodeRef::empty(), x);
  if (v.ordinal == vx)
    return make_node(v, NodeRef::empty(), set_union(lo(x), hi(x)));
  NodeRef tag{v.ordinal};  // second operand encodes the variable
  NodeRef r;
  if (cache_get(kOpAttach, x, tag, &r)) return r;
  r = make_node(VarId{vx}, attach(lo(x), v), attach(hi(x), v));
  cache_put(kOpAttach, x, tag, r);
  return r;
}

NodeRef NodeStore::permit(NodeRef x, NodeRef y) {
  if (x == NodeRef::empty() || y == NodeRef::empty()) return NodeRef::empty();
  if (x == NodeRef::unit()) return x;  // {} is a subset of anything in y
  if (y == NodeRef::unit())
    return contains_empty(x) ? NodeRef::unit() : NodeRef::empty();
  NodeRef r;
  if (cache_get(kOpPermit, x, y, &r)) return r;
  std::uint32_t vx = raw_var(x), vy = raw_var(y);
  if (vx < vy) {
    // no member of y holds vx, so members of x that do cannot qualify
    r = permit(lo(x), y);
  } else if (vy < vx) {
    r = set_union(permit(x, lo(y)), permit(x, hi(y)));
  } else {
    r = make_node(VarId{vx},
                  set_union(permit(lo(x), lo(y)), permit(lo(x), hi(y))),
                  permit(hi(x), hi(y)));
  }
  cache_put(kOpPermit, x, y, r);
  return r;
}

NodeRef NodeStore::restrict(NodeRef x, NodeRef y) {
  if (x == NodeRef::empty() || y == NodeRef::empty()) return NodeRef::empty();
  if (y == NodeRef::unit()) return x;  // {} is contained in every member
  NodeRef r;
  if (cache_get(kOpRestrict, x, y, &r)) return r;
  std::uint32_t vx = raw_var(x), vy = raw_var(y);
  if (vx < vy) {
    r = make_node(VarId{vx}, restrict(lo(x), y), restrict(hi(x), y));
  } else if (vy < vx) {
    // members of y holding vy cannot be contained in any member of x
    r = restrict(x, lo(y));
  } else {
    r = make_node(VarId{vx}, restrict(lo(x), lo(y)),
                  set_union(restrict(hi(x), lo(y)), restrict(hi(x), hi(y))));
  }
  cache_put(kOpRestrict, x, y, r);
  return r;
}

BigInt NodeStore::count(NodeRef x) {
  if (x == NodeRef::empty()) return 0;
  if (x == NodeRef::unit()) return 1;
  auto it = count_cache_.find(x.index_);
  if (it != count_cache_.end()) return it->second;
  BigInt c = count(lo(x)) + count(hi(x));
  count_cache_.emplace(x.index_, c);
  return c;
}

namespace {

void enumerate_rec(const NodeStore& store, NodeRef x, std::size_t limit,
                   Combo& prefix, std::vector<Combo>& out) {
  if (out.size() >= limit || x == NodeRef::empty()) return;
  if (x == NodeRef::unit()) {
    out.push_back(prefix);
    return;
  }
  prefix.push_back(store.var(x));
  enumerate_rec(store, store.hi(x), limit, prefix, out);
  prefix.pop_back();
  enumerate_rec(store, store.lo(x), limit, prefix, out);
}

}  // namespace

std::vector<Combo> NodeStore::enumerate(NodeRef x, std::size_t limit) {
  std::vector<Combo> out;
  Combo prefix;
  enumerate_rec(*this, x, limit, prefix, out);
  return out;
}

bool NodeStore::contains(NodeRef x, std::span<const VarId> combo) const {
  std::size_t i = 0;
  while (!x.is_terminal()) {
    std::uint32_t v = raw_var(x);
    if (i < combo.size() && combo[i].ordinal == v) {
      x = hi(x);
      ++i;
    } else if (i < combo.size() && combo[i].ordinal < v) {
      return false;  // wanted variable cannot occur below here
    } else {
      x = lo(x);
    }
  }
  return x == NodeRef::unit() && i == combo.size();
}

bool NodeStore::contains_empty(NodeRef x) const {
  while (!x.is_terminal()) x = lo(x);
  return x == NodeRef::unit();
}

std::uint64_t NodeStore::diagram_nodes(NodeRef x) const {
  if (x.is_terminal()) return 0;
  std::vector<std::uint32_t> stack{x.index_};
  std::set<std::uint32_t> seen{x.index_};
  while (!stack.empty()) {
    const Node& n = nodes_[stack.back()];
    stack.pop_back();
    for (std::uint32_t child : {n.lo, n.hi})
      if (child >= 2 && seen.insert(child).second) stack.push_back(child);
  }
  return seen.size();
}

std::size_t NodeStore::memory_bytes() const {
  return nodes_.capacity() * sizeof(Node) +
         buckets_.capacity() * sizeof(std::uint32_t) +
         cache_.capacity() * sizeof(CacheSlot) +
         count_cache_.size() * (sizeof(std::uint32_t) + sizeof(BigInt) + 32);
}

bool NodeStore::check_invariants() const {
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> seen;
  for (std::uint32_t i = 2; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.hi == NodeRef::empty().index()) return false;
    if (n.var >= nodes_[n.lo].var || n.var >= nodes_[n.hi].var) return false;
    if (!seen.emplace(n.var, n.lo, n.hi).second) return false;
  }
  return true;
}

}  // namespace kpaths
