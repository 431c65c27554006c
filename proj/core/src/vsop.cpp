#include "kpaths/vsop.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "kpaths/errors.hpp"

namespace kpaths {

namespace {

using Digits = std::vector<NodeRef>;

constexpr NodeRef kEmpty = NodeRef::empty();

void trim(Digits& d) {
  while (!d.empty() && d.back() == kEmpty) d.pop_back();
}

NodeRef digit_at(const Digits& d, std::size_t i) {
  return i < d.size() ? d[i] : kEmpty;
}

/// Base -2 bits of v, least significant first.
std::vector<std::uint8_t> negabinary_bits(std::int64_t v) {
  std::vector<std::uint8_t> bits;
  while (v != 0) {
    std::int64_t r = v & 1;
    bits.push_back(std::uint8_t(r));
    v = (v - r) / -2;
  }
  return bits;
}

BigInt pow_neg2(std::size_t i) {
  BigInt p = 1;
  for (std::size_t k = 0; k < i; ++k) p *= -2;
  return p;
}

std::int64_t to_int64_checked(const BigInt& v, const char* what) {
  if (v < std::numeric_limits<std::int64_t>::min() ||
      v > std::numeric_limits<std::int64_t>::max())
    throw std::overflow_error(std::string(what) + " exceeds 64-bit range");
  return v.convert_to<std::int64_t>();
}

NodeRef support_of(NodeStore& s, const Digits& d) {
  NodeRef u = kEmpty;
  for (NodeRef f : d) u = s.set_union(u, f);
  return u;
}

/// Digit-wise base -2 addition. Carry sets P (+1) and M (-1) stay disjoint;
/// a borrow in this base turns into a +1 carry, so the loop drains within
/// two digits past the operands.
Digits add_digits(NodeStore& s, const Digits& dx, const Digits& dy) {
  Digits out;
  NodeRef p = kEmpty, m = kEmpty;
  std::size_t n = std::max(dx.size(), dy.size());
  for (std::size_t i = 0; i < n || p != kEmpty || m != kEmpty; ++i) {
    if (i > n + 4) throw std::logic_error("digit addition failed to drain");
    NodeRef a = digit_at(dx, i);
    NodeRef b = digit_at(dy, i);
    NodeRef digit = s.set_symdiff(s.set_symdiff(a, b), s.set_symdiff(p, m));
    NodeRef ab = s.set_intersect(a, b);
    NodeRef ap = s.set_intersect(a, p);
    NodeRef bp = s.set_intersect(b, p);
    NodeRef three = s.set_intersect(ab, p);
    NodeRef two = s.set_diff(s.set_union(s.set_union(ab, ap), bp), three);
    NodeRef next_p = s.set_diff(m, s.set_union(s.set_union(a, b), p));
    NodeRef next_m = s.set_union(s.set_diff(two, m), three);
    out.push_back(digit);
    p = next_p;
    m = next_m;
  }
  trim(out);
  return out;
}

Digits shift_digits(const Digits& d, std::size_t by) {
  if (d.empty()) return d;
  Digits out(by, kEmpty);
  out.insert(out.end(), d.begin(), d.end());
  return out;
}

/// One top-down pass splitting the support against constant k: at the first
/// digit where a combination diverges from k's bit pattern, the sign of
/// (-2)^i decides the relation, because that digit outweighs all lower ones.
struct ConstSplit {
  NodeRef lt, eq, gt;
};

ConstSplit split_against(NodeStore& s, const Digits& d, std::int64_t k) {
  auto bits = negabinary_bits(k);
  std::size_t n = std::max(d.size(), bits.size());
  NodeRef tied = support_of(s, d);
  NodeRef lt = kEmpty, gt = kEmpty;
  for (std::size_t j = n; j-- > 0;) {
    NodeRef f = digit_at(d, j);
    bool kbit = j < bits.size() && bits[j] != 0;
    bool positive = (j % 2 == 0);
    if (kbit) {
      NodeRef diverge = s.set_diff(tied, f);  // combination bit 0, k bit 1
      if (positive)
        lt = s.set_union(lt, diverge);
      else
        gt = s.set_union(gt, diverge);
      tied = s.set_intersect(tied, f);
    } else {
      NodeRef diverge = s.set_intersect(tied, f);
      if (positive)
        gt = s.set_union(gt, diverge);
      else
        lt = s.set_union(lt, diverge);
      tied = s.set_diff(tied, f);
    }
  }
  return {lt, tied, gt};
}

/// Partition of the support by value sign. The highest set digit of a
/// combination decides: even index positive, odd index negative.
struct SignSplit {
  NodeRef neg, pos;
};

SignSplit sign_partition(NodeStore& s, const Digits& d) {
  NodeRef seen = kEmpty, pos = kEmpty, neg = kEmpty;
  for (std::size_t j = d.size(); j-- > 0;) {
    NodeRef tops = s.set_diff(d[j], seen);
    if (j % 2 == 0)
      pos = s.set_union(pos, tops);
    else
      neg = s.set_union(neg, tops);
    seen = s.set_union(seen, d[j]);
  }
  return {neg, pos};
}

/// Greedy extreme from the top digit down: each digit either grants the
/// preferred bit to some candidates or forces the other on all of them.
std::pair<BigInt, NodeRef> extreme(NodeStore& s, const Digits& d,
                                   bool maximize) {
  NodeRef candidates = support_of(s, d);
  BigInt value = 0;
  for (std::size_t j = d.size(); j-- > 0;) {
    bool positive = (j % 2 == 0);
    bool prefer_bit = (maximize == positive);
    NodeRef with = s.set_intersect(candidates, d[j]);
    NodeRef without = s.set_diff(candidates, d[j]);
    bool bit = prefer_bit ? (with != kEmpty) : (without == kEmpty);
    if (bit) value += pow_neg2(j);
    candidates = bit ? with : without;
  }
  return {value, candidates};
}

bool occurs_in(NodeStore& s, const Digits& d, VarId v) {
  std::vector<NodeRef> stack;
  std::set<std::uint32_t> seen;
  for (NodeRef f : d)
    if (!f.is_terminal() && seen.insert(f.index()).second) stack.push_back(f);
  while (!stack.empty()) {
    NodeRef n = stack.back();
    stack.pop_back();
    if (s.var(n) == v) return true;
    for (NodeRef child : {s.lo(n), s.hi(n)})
      if (!child.is_terminal() && seen.insert(child.index()).second)
        stack.push_back(child);
  }
  return false;
}

/// The variable v when the digits encode exactly the unit-valued term {v}.
std::optional<VarId> single_var_of(NodeStore& s, const Digits& d) {
  if (d.size() != 1 || d[0].is_terminal()) return std::nullopt;
  NodeRef f = d[0];
  if (s.lo(f) == NodeRef::empty() && s.hi(f) == NodeRef::unit())
    return s.var(f);
  return std::nullopt;
}

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint32_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

std::vector<std::uint32_t> key_of(const Digits& d) {
  std::vector<std::uint32_t> k;
  k.reserve(d.size());
  for (NodeRef f : d) k.push_back(f.index());
  return k;
}

}  // namespace

Vsop::Vsop(NodeStore& store, std::vector<NodeRef> digits)
    : store_(&store), digits_(std::move(digits)) {
  assert(digits_.empty() || digits_.back() != kEmpty);
}

Vsop Vsop::zero(NodeStore& store) { return Vsop(store, {}); }

Vsop Vsop::constant(NodeStore& store, std::int64_t value) {
  return constant_over(store, NodeRef::unit(), value);
}

Vsop Vsop::constant_over(NodeStore& store, NodeRef support,
                         std::int64_t value) {
  if (value == 0 || support == kEmpty) return zero(store);
  auto bits = negabinary_bits(value);
  Digits d(bits.size(), kEmpty);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) d[i] = support;
  return Vsop(store, std::move(d));
}

Vsop Vsop::unit_over(NodeStore& store, NodeRef support) {
  return constant_over(store, support, 1);
}

Vsop Vsop::from_term(NodeStore& store, std::int64_t value,
                     std::span<const VarId> combo) {
  Combo sorted(combo.begin(), combo.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  NodeRef product = NodeRef::unit();
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it)
    product = store.make_node(*it, kEmpty, product);
  return constant_over(store, product, value);
}

Vsop Vsop::add(const Vsop& y) const {
  assert(store_ == y.store_);
  return Vsop(*store_, add_digits(*store_, digits_, y.digits_));
}

Vsop Vsop::neg() const {
  if (is_zero()) return *this;
  // -x = (-2)x + x, and multiplying by -2 is a digit shift
  return Vsop(*store_, add_digits(*store_, shift_digits(digits_, 1), digits_));
}

Vsop Vsop::sub(const Vsop& y) const { return add(y.neg()); }

bool Vsop::is_constant() const {
  for (NodeRef f : digits_)
    if (!f.is_terminal()) return false;
  return true;
}

std::int64_t Vsop::get_int() const {
  if (!is_constant()) throw QueryError("not a constant expression");
  BigInt v = 0;
  for (std::size_t i = 0; i < digits_.size(); ++i)
    if (digits_[i] == NodeRef::unit()) v += pow_neg2(i);
  return to_int64_checked(v, "constant");
}

NodeRef Vsop::support() const { return support_of(*store_, digits_); }

std::int64_t Vsop::value_at(std::span<const VarId> combo) const {
  BigInt v = 0;
  for (std::size_t i = 0; i < digits_.size(); ++i)
    if (store_->contains(digits_[i], combo)) v += pow_neg2(i);
  return to_int64_checked(v, "term value");
}

BigInt Vsop::count_terms() const { return store_->count(support()); }

BigInt Vsop::total_val() const {
  BigInt total = 0;
  for (std::size_t i = 0; i < digits_.size(); ++i)
    total += pow_neg2(i) * store_->count(digits_[i]);
  return total;
}

std::int64_t Vsop::max_val() const {
  if (is_zero()) throw QueryError("empty expression");
  return to_int64_checked(extreme(*store_, digits_, true).first, "max value");
}

std::int64_t Vsop::min_val() const {
  if (is_zero()) throw QueryError("empty expression");
  return to_int64_checked(extreme(*store_, digits_, false).first, "min value");
}

Term Vsop::max_cover() const {
  if (is_zero()) throw QueryError("empty expression");
  auto [value, set] = extreme(*store_, digits_, true);
  return {store_->enumerate(set, 1).front(),
          to_int64_checked(value, "max value")};
}

Term Vsop::min_cover() const {
  if (is_zero()) throw QueryError("empty expression");
  auto [value, set] = extreme(*store_, digits_, false);
  return {store_->enumerate(set, 1).front(),
          to_int64_checked(value, "min value")};
}

// -- selections --------------------------------------------------------------

Vsop Vsop::keep_support(NodeRef keep) const {
  Digits out;
  out.reserve(digits_.size());
  for (NodeRef f : digits_) out.push_back(store_->set_intersect(f, keep));
  trim(out);
  return Vsop(*store_, std::move(out));
}

Vsop Vsop::filter_eq(std::int64_t k) const {
  return unit_over(*store_, split_against(*store_, digits_, k).eq);
}

Vsop Vsop::filter_ne(std::int64_t k) const {
  auto sp = split_against(*store_, digits_, k);
  return unit_over(*store_, store_->set_union(sp.lt, sp.gt));
}

Vsop Vsop::filter_lt(std::int64_t k) const {
  return unit_over(*store_, split_against(*store_, digits_, k).lt);
}

Vsop Vsop::filter_le(std::int64_t k) const {
  auto sp = split_against(*store_, digits_, k);
  return unit_over(*store_, store_->set_union(sp.lt, sp.eq));
}

Vsop Vsop::filter_gt(std::int64_t k) const {
  return unit_over(*store_, split_against(*store_, digits_, k).gt);
}

Vsop Vsop::filter_ge(std::int64_t k) const {
  auto sp = split_against(*store_, digits_, k);
  return unit_over(*store_, store_->set_union(sp.eq, sp.gt));
}

namespace {

std::int64_t constant_value(const Vsop& y) {
  if (!y.is_constant()) throw QueryError("not a constant expression");
  return y.get_int();
}

}  // namespace

Vsop Vsop::terms_eq(const Vsop& y) const {
  return filter_then(filter_eq(constant_value(y)));
}
Vsop Vsop::terms_ne(const Vsop& y) const {
  return filter_then(filter_ne(constant_value(y)));
}
Vsop Vsop::terms_lt(const Vsop& y) const {
  return filter_then(filter_lt(constant_value(y)));
}
Vsop Vsop::terms_le(const Vsop& y) const {
  return filter_then(filter_le(constant_value(y)));
}
Vsop Vsop::terms_gt(const Vsop& y) const {
  return filter_then(filter_gt(constant_value(y)));
}
Vsop Vsop::terms_ge(const Vsop& y) const {
  return filter_then(filter_ge(constant_value(y)));
}

Vsop Vsop::permit(const Vsop& y) const {
  assert(store_ == y.store_);
  return keep_support(store_->permit(support(), y.support()));
}

Vsop Vsop::restrict(const Vsop& y) const {
  assert(store_ == y.store_);
  return keep_support(store_->restrict(support(), y.support()));
}

Vsop Vsop::filter_then(const Vsop& selector) const {
  assert(store_ == selector.store_);
  return keep_support(selector.support());
}

// -- comparisons -------------------------------------------------------------

Vsop Vsop::cmp_eq(const Vsop& y) const {
  Vsop d = sub(y);
  NodeRef either = store_->set_union(support(), y.support());
  return unit_over(*store_, store_->set_diff(either, d.support()));
}

Vsop Vsop::cmp_ne(const Vsop& y) const {
  return unit_over(*store_, sub(y).support());
}

Vsop Vsop::cmp_gt(const Vsop& y) const {
  return unit_over(*store_, sign_partition(*store_, sub(y).digits_).pos);
}

Vsop Vsop::cmp_lt(const Vsop& y) const {
  return unit_over(*store_, sign_partition(*store_, sub(y).digits_).neg);
}

Vsop Vsop::cmp_ge(const Vsop& y) const {
  Vsop d = sub(y);
  NodeRef either = store_->set_union(support(), y.support());
  NodeRef eq = store_->set_diff(either, d.support());
  NodeRef gt = sign_partition(*store_, d.digits_).pos;
  return unit_over(*store_, store_->set_union(eq, gt));
}

Vsop Vsop::cmp_le(const Vsop& y) const {
  Vsop d = sub(y);
  NodeRef either = store_->set_union(support(), y.support());
  NodeRef eq = store_->set_diff(either, d.support());
  NodeRef lt = sign_partition(*store_, d.digits_).neg;
  return unit_over(*store_, store_->set_union(eq, lt));
}

// -- multiplication ----------------------------------------------------------

Vsop Vsop::mul(const Vsop& y) const {
  assert(store_ == y.store_);
  NodeStore& s = *store_;

  using Key =
      std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      VecHash h;
      return h(k.first) * 31 ^ h(k.second);
    }
  };
  std::unordered_map<Key, Digits, KeyHash> memo;

  auto is_const = [](const Digits& d) {
    for (NodeRef f : d)
      if (!f.is_terminal()) return false;
    return true;
  };
  auto const_val = [](const Digits& d) {
    BigInt v = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] == NodeRef::unit()) v += pow_neg2(i);
    return to_int64_checked(v, "constant");
  };
  auto scalar = [&s](std::int64_t k, const Digits& d) -> Digits {
    if (k == 0 || d.empty()) return {};
    if (k == 1) return d;
    if (d.size() == 1) {
      // every term has value 1, so the product digits are k's bit pattern
      auto bits = negabinary_bits(k);
      Digits out(bits.size(), kEmpty);
      for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out[i] = d[0];
      return out;
    }
    Digits acc;
    auto bits = negabinary_bits(k);
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i]) acc = add_digits(s, acc, shift_digits(d, i));
    return acc;
  };

  std::function<Digits(const Digits&, const Digits&)> rec =
      [&](const Digits& dx, const Digits& dy) -> Digits {
    if (dx.empty() || dy.empty()) return {};
    if (is_const(dx)) return scalar(const_val(dx), dy);
    if (is_const(dy)) return scalar(const_val(dy), dx);

    // multiplying by a fresh single variable only decorates combinations
    if (auto v = single_var_of(s, dy); v && !occurs_in(s, dx, *v)) {
      Digits out;
      out.reserve(dx.size());
      for (NodeRef f : dx) out.push_back(s.attach(f, *v));
      return out;
    }
    if (auto v = single_var_of(s, dx); v && !occurs_in(s, dy, *v)) {
      Digits out;
      out.reserve(dy.size());
      for (NodeRef f : dy) out.push_back(s.attach(f, *v));
      return out;
    }

    Key key{key_of(dx), key_of(dy)};
    if (key.second < key.first) std::swap(key.first, key.second);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    std::uint32_t top = 0xFFFFFFFFu;
    for (NodeRef f : dx)
      if (!f.is_terminal()) top = std::min(top, s.var(f).ordinal);
    for (NodeRef f : dy)
      if (!f.is_terminal()) top = std::min(top, s.var(f).ordinal);
    VarId v{top};

    auto cofactor = [&](const Digits& d) {
      std::pair<Digits, Digits> r;  // (without v, with v)
      for (NodeRef f : d) {
        if (!f.is_terminal() && s.var(f) == v) {
          r.first.push_back(s.lo(f));
          r.second.push_back(s.hi(f));
        } else {
          r.first.push_back(f);
          r.second.push_back(kEmpty);
        }
      }
      trim(r.first);
      trim(r.second);
      return r;
    };

    auto [x0, x1] = cofactor(dx);
    auto [y0, y1] = cofactor(dy);

    Digits with_v =
        add_digits(s, add_digits(s, rec(x1, y1), rec(x1, y0)), rec(x0, y1));
    for (NodeRef& f : with_v) f = s.attach(f, v);  // all parts are v-free
    Digits result = add_digits(s, with_v, rec(x0, y0));
    memo.emplace(std::move(key), result);
    return result;
  };

  return Vsop(s, rec(digits_, y.digits_));
}

// -- diagnostics -------------------------------------------------------------

std::string to_string(const Vsop& x,
                      const std::function<std::string(VarId)>& namer) {
  if (x.is_zero()) return "0";
  auto combos = x.store().enumerate(x.support(), 64);
  std::ostringstream out;
  bool first = true;
  for (const Combo& c : combos) {
    if (!first) out << " + ";
    first = false;
    out << x.value_at(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
      out << (i == 0 ? "*" : ".");
      if (namer)
        out << namer(c[i]);
      else
        out << "v" << c[i].ordinal;
    }
  }
  if (x.count_terms() > 64) out << " + ...";
  return out.str();
}

}  // namespace kpaths
