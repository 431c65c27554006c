#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "kpaths/errors.hpp"
#include "kpaths/generate.hpp"
#include "kpaths/oracle.hpp"
#include "kpaths/pathdb.hpp"
#include "test_util.hpp"

using namespace kpaths;
using testutil::length_groups;
using testutil::sorted_for_mode;

namespace {

Vsop lengths(NodeStore& store, std::vector<std::int64_t> values) {
  // one term per value over distinct singleton variables
  Vsop x = Vsop::zero(store);
  for (std::size_t i = 0; i < values.size(); ++i)
    x = x.add(Vsop::from_term(store, values[i],
                              {VarId{std::uint32_t(i)}}));
  return x;
}

std::vector<std::vector<std::string>> sequences(
    const std::vector<MaterializedPath>& paths) {
  std::vector<std::vector<std::string>> out;
  for (const auto& p : paths) out.push_back(p.vertices);
  std::sort(out.begin(), out.end());
  return out;
}

int budget_for(const Vsop& expr) {
  BigInt range = BigInt(expr.max_val()) - expr.min_val();
  int bits = 0;
  for (BigInt r = range; r > 0; r >>= 1) ++bits;
  return bits + 2;
}

}  // namespace

TEST_CASE("top_k_select keeps boundary ties") {
  NodeStore store;
  Vsop x = lengths(store, {5, 3, 3, 1});

  SelectResult top1 = top_k_select(x, 1, Mode::kLongest);
  CHECK(top1.count == 1);
  CHECK(top1.threshold == 5);
  CHECK(top1.paths == x.terms_ge(Vsop::constant(store, 5)));

  SelectResult top2 = top_k_select(x, 2, Mode::kLongest);
  CHECK(top2.count == 3);
  CHECK(top2.threshold == 3);
  CHECK(top2.paths == x.terms_ge(Vsop::constant(store, 3)));

  SelectResult bottom1 = top_k_select(x, 1, Mode::kShortest);
  CHECK(bottom1.count == 1);
  CHECK(bottom1.threshold == 1);

  SelectResult bottom2 = top_k_select(x, 2, Mode::kShortest);
  CHECK(bottom2.count == 3);
  CHECK(bottom2.threshold == 3);
  CHECK(bottom2.paths == x.terms_le(Vsop::constant(store, 3)));
}

TEST_CASE("top_k_select clamps k to the term count") {
  NodeStore store;
  Vsop x = lengths(store, {5, 3, 1});
  SelectResult all = top_k_select(x, 3, Mode::kLongest);
  CHECK(all.count == 3);
  CHECK(all.threshold == 1);
  CHECK(all.paths == x);
  CHECK(all.iterations == 0);
  SelectResult more = top_k_select(x, 1000, Mode::kShortest);
  CHECK(more.count == 3);
  CHECK(more.threshold == 5);
  CHECK(more.paths == x);
}

TEST_CASE("top_k_select lands on a value absent from the expression") {
  NodeStore store;
  // binary search midpoints can fall in the gap between 20 and 10
  Vsop x = lengths(store, {20, 10, 4, 4});
  SelectResult top2 = top_k_select(x, 2, Mode::kLongest);
  CHECK(top2.count == 2);
  CHECK(top2.threshold == 10);
  SelectResult bottom3 = top_k_select(x, 3, Mode::kShortest);
  CHECK(bottom3.count == 3);
  CHECK(bottom3.threshold == 10);
}

TEST_CASE("top_k_select input validation") {
  NodeStore store;
  Vsop x = lengths(store, {2, 1});
  CHECK_THROWS_WITH_AS(top_k_select(x, 0, Mode::kLongest), "K must be positive",
                       QueryError);
  CHECK_THROWS_WITH_AS(top_k_select(Vsop::zero(store), 1, Mode::kLongest),
                       "empty expression", QueryError);
}

TEST_CASE("top_k_select stays within its iteration budget") {
  std::mt19937_64 rng(1234);
  NodeStore store;
  for (int round = 0; round < 200; ++round) {
    std::size_t n = 1 + rng() % 12;
    std::vector<std::int64_t> values;
    for (std::size_t i = 0; i < n; ++i)
      values.push_back(std::int64_t(rng() % 2001) - 1000);
    Vsop x = lengths(store, values);
    int budget = budget_for(x);
    std::uint64_t count64 = std::uint64_t(x.count_terms());
    for (std::uint64_t k = 1; k <= count64; ++k) {
      for (Mode mode : {Mode::kLongest, Mode::kShortest}) {
        SelectResult r = top_k_select(x, k, mode);
        CHECK(r.iterations <= budget);
        // threshold characterization: reach >= k, strictly beyond < k
        Vsop reach = mode == Mode::kLongest ? x.filter_ge(r.threshold)
                                            : x.filter_le(r.threshold);
        Vsop beyond = mode == Mode::kLongest ? x.filter_gt(r.threshold)
                                             : x.filter_lt(r.threshold);
        CHECK(reach.count_terms() >= k);
        CHECK(beyond.count_terms() < k);
        CHECK(r.count == reach.count_terms());
      }
    }
  }
}

TEST_CASE("single edge database") {
  NodeStore store;
  for (std::int64_t w : {5LL, 0LL, -7LL}) {
    Dag dag = Dag::parse("a b " + std::to_string(w) + "\n");
    PathDb db(store, dag);
    CHECK(db.count_paths() == 1);
    CHECK(db.longest_length() == w);
    CHECK(db.shortest_length() == w);
    QueryResult top = db.top_k_longest(1);
    CHECK(top.count == 1);
    CHECK(top.threshold == w);
    auto paths = db.materialize(top, 10);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].vertices == std::vector<std::string>{"a", "b"});
    CHECK(paths[0].length == w);
    CHECK(db.kth_longest(1) ==
          db.kth_shortest(1));
  }
}

TEST_CASE("worked example queries") {
  NodeStore store;
  Dag dag = Dag::parse("v2 v7 4\nv3 v7 4\nv4 v8 4\nv7 v8 2\n");
  PathDb db(store, dag);

  CHECK(db.count_paths() == 3);
  CHECK(db.longest_length() == 6);
  CHECK(db.shortest_length() == 4);

  QueryResult top1 = db.top_k_longest(1);
  CHECK(top1.count == 2);  // two paths tie at length 6
  CHECK(top1.threshold == 6);
  CHECK(sequences(db.materialize(top1, 10)) ==
        std::vector<std::vector<std::string>>{{"v2", "v7", "v8"},
                                              {"v3", "v7", "v8"}});

  QueryResult bottom1 = db.top_k_shortest(1);
  CHECK(bottom1.count == 1);
  CHECK(bottom1.threshold == 4);
  CHECK(sequences(db.materialize(bottom1, 10)) ==
        std::vector<std::vector<std::string>>{{"v4", "v8"}});

  QueryResult all = db.top_k_longest(3);
  CHECK(all.count == 3);
  CHECK(all.threshold == 4);
  CHECK(all.paths == db.expr());

  CHECK(db.kth_longest(1).value == 6);
  CHECK(db.kth_longest(2).value == 6);
  CHECK(db.kth_longest(3).value == 4);
  CHECK(db.kth_shortest(1).value == 4);
  CHECK(db.kth_shortest(2).value == 6);
  CHECK(db.kth_shortest(3).value == 6);

  MaterializedPath kth = db.materialize(db.kth_shortest(1));
  CHECK(kth.vertices == std::vector<std::string>{"v4", "v8"});
  CHECK(kth.length == 4);
}

TEST_CASE("materialize respects its limit") {
  NodeStore store;
  Dag dag = Dag::parse("v2 v7 4\nv3 v7 4\nv4 v8 4\nv7 v8 2\n");
  PathDb db(store, dag);
  QueryResult all = db.top_k_longest(3);
  CHECK(db.materialize(all, 0).empty());
  CHECK(db.materialize(all, 2).size() == 2);
  CHECK(db.materialize(all, 99).size() == 3);
}

TEST_CASE("unit-weight layered counts follow the closed form") {
  NodeStore store;
  LayeredGraphSpec spec;
  spec.layers = 5;
  spec.width = 3;
  spec.wmin = 1;
  spec.wmax = 1;
  spec.seed = 11;
  Dag dag = Dag::parse(generate_layered(spec));
  PathDb db(store, dag);
  CHECK(db.count_paths() == 81);  // width^(layers-1)
  CHECK(db.longest_length() == 4);
  CHECK(db.shortest_length() == 4);
  QueryResult all = db.top_k_longest(81);
  CHECK(all.count == 81);
  CHECK(all.threshold == 4);
  QueryResult one = db.top_k_shortest(1);
  CHECK(one.count == 81);  // everything ties
}

TEST_CASE("empty and pathless databases") {
  NodeStore store;
  Dag dag = Dag::parse("");
  PathDb db(store, dag);
  CHECK(db.count_paths() == 0);
  CHECK_THROWS_WITH_AS(db.longest_length(), "empty database", QueryError);
  CHECK_THROWS_WITH_AS(db.shortest_length(), "empty database", QueryError);
  CHECK_THROWS_WITH_AS(db.kth_longest(1), "empty database", QueryError);
  QueryResult top = db.top_k_longest(5);
  CHECK(top.count == 0);
  CHECK(!top.threshold.has_value());
  CHECK(top.paths.is_zero());
  CHECK(db.materialize(top, 10).empty());
}

TEST_CASE("k validation") {
  NodeStore store;
  Dag dag = Dag::parse("a b 1\n");
  PathDb db(store, dag);
  CHECK_THROWS_WITH_AS(db.top_k_longest(0), "K must be positive", QueryError);
  CHECK_THROWS_WITH_AS(db.kth_longest(0), "K must be positive", QueryError);
  CHECK_THROWS_WITH_AS(db.kth_longest(2), "K exceeds path count", QueryError);
  CHECK(db.top_k_longest(2).count == 1);  // top-k clamps instead
}

TEST_CASE("negative and zero length paths are preserved") {
  NodeStore store;
  Dag dag = Dag::parse(
      "s a 2\na t -2\n"   // length 0
      "s b -4\nb t 1\n"   // length -3
      "s c 3\nc t 4\n");  // length 7
  PathDb db(store, dag);
  CHECK(db.count_paths() == 3);
  CHECK(db.longest_length() == 7);
  CHECK(db.shortest_length() == -3);
  CHECK(db.kth_longest(2).value == 0);
  CHECK(db.kth_shortest(1).value == -3);
  QueryResult bottom2 = db.top_k_shortest(2);
  CHECK(bottom2.count == 2);
  CHECK(bottom2.threshold == 0);
  auto paths = db.materialize(bottom2, 10);
  CHECK(sequences(paths) ==
        std::vector<std::vector<std::string>>{{"s", "a", "t"}, {"s", "b", "t"}});
}

TEST_CASE("prune placement leaves query results unchanged") {
  std::mt19937_64 rng(777);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomGraphSpec spec;
    spec.vertices = 3 + unsigned(seed % 10);
    spec.edge_prob = 0.45;
    spec.wmin = -6;
    spec.wmax = 6;
    spec.seed = seed;
    Dag dag = Dag::parse(generate_random(spec));
    NodeStore store;
    PathDb plain(store, dag);
    std::uint64_t count = std::uint64_t(plain.count_paths());
    if (count == 0) continue;
    std::vector<std::uint64_t> ks{1, (count + 1) / 2, count,
                                  1 + rng() % (count + 2)};
    for (std::uint64_t k : ks) {
      for (Mode mode : {Mode::kLongest, Mode::kShortest}) {
        BuildOptions options;
        options.prune = PruneOptions{k, mode};
        PathDb pruned(store, dag, options);
        QueryResult want = mode == Mode::kLongest ? plain.top_k_longest(k)
                                                  : plain.top_k_shortest(k);
        QueryResult got = mode == Mode::kLongest ? pruned.top_k_longest(k)
                                                 : pruned.top_k_shortest(k);
        CHECK(got.count == want.count);
        CHECK(got.threshold == want.threshold);
        CHECK(sequences(pruned.materialize(got, 5000)) ==
              sequences(plain.materialize(want, 5000)));
      }
    }
  }
}

TEST_CASE("offset shift changes nothing observable") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomGraphSpec spec;
    spec.vertices = 3 + unsigned(seed % 9);
    spec.edge_prob = 0.5;
    spec.wmin = -8;
    spec.wmax = 8;
    spec.seed = seed;
    Dag dag = Dag::parse(generate_random(spec));
    NodeStore store;
    PathDb base(store, dag);
    BuildOptions shifted_options;
    shifted_options.offset_shift = 7;
    PathDb shifted(store, dag, shifted_options);

    CHECK(shifted.offset() == base.offset() + 7);
    CHECK(shifted.count_paths() == base.count_paths());
    if (base.count_paths() == 0) continue;
    CHECK(shifted.longest_length() == base.longest_length());
    CHECK(shifted.shortest_length() == base.shortest_length());
    std::uint64_t count = std::uint64_t(base.count_paths());
    for (std::uint64_t k : {std::uint64_t{1}, (count + 1) / 2, count}) {
      if (k == 0) continue;
      QueryResult a = base.top_k_longest(k);
      QueryResult b = shifted.top_k_longest(k);
      CHECK(a.threshold == b.threshold);
      CHECK(a.count == b.count);
      CHECK(sequences(base.materialize(a, 5000)) ==
            sequences(shifted.materialize(b, 5000)));
      Term ta = base.kth_shortest(k);
      Term tb = shifted.kth_shortest(k);
      CHECK(ta.value == tb.value);
    }
    // the internal encoding does shift
    CHECK(!(shifted.expr() == base.expr()));
  }
}

TEST_CASE("variable order reversal changes nothing observable") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RandomGraphSpec spec;
    spec.vertices = 3 + unsigned(seed % 9);
    spec.edge_prob = 0.5;
    spec.wmin = -5;
    spec.wmax = 5;
    spec.seed = seed + 100;
    Dag dag = Dag::parse(generate_random(spec));
    NodeStore store;
    PathDb forward(store, dag);
    BuildOptions reversed_options;
    reversed_options.var_order = VarOrder::kReverse;
    PathDb reversed(store, dag, reversed_options);

    CHECK(forward.count_paths() == reversed.count_paths());
    if (forward.count_paths() == 0) continue;
    CHECK(forward.longest_length() == reversed.longest_length());
    CHECK(forward.shortest_length() == reversed.shortest_length());
    QueryResult a = forward.top_k_longest(1);
    QueryResult b = reversed.top_k_longest(1);
    CHECK(a.threshold == b.threshold);
    CHECK(a.count == b.count);
    CHECK(sequences(forward.materialize(a, 5000)) ==
          sequences(reversed.materialize(b, 5000)));
  }
}

TEST_CASE("random databases agree with the explicit enumerator") {
  int nonempty = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    RandomGraphSpec spec;
    spec.vertices = 2 + unsigned(seed % 11);
    spec.edge_prob = 0.2 + 0.05 * double(seed % 7);
    spec.wmin = -10;
    spec.wmax = 10;
    spec.seed = seed + 5000;
    Dag dag = Dag::parse(generate_random(spec));
    auto paths = oracle::enumerate_paths(dag);
    NodeStore store;
    PathDb db(store, dag);
    CHECK(db.count_paths() == paths.size());
    if (paths.empty()) continue;
    ++nonempty;

    CHECK(db.expr() == oracle::paths_to_vsop(store, paths, testutil::var_map(db),
                                             db.offset()));

    for (Mode mode : {Mode::kLongest, Mode::kShortest}) {
      auto sorted = sorted_for_mode(paths, mode);
      auto groups = length_groups(sorted);
      CHECK((mode == Mode::kLongest ? db.longest_length()
                                    : db.shortest_length()) ==
            sorted.front().length);

      Vsop expected = Vsop::zero(store);
      BigInt expected_count = 0;
      std::size_t covered = 0;
      for (const auto& group : groups) {
        for (const auto& entry : group)
          expected = expected.add(oracle::paths_to_vsop(
              store, {entry}, testutil::var_map(db), db.offset()));
        expected_count += group.size();
        std::size_t k_low = covered + 1;
        covered += group.size();
        for (std::size_t k = k_low; k <= covered; ++k) {
          QueryResult got = mode == Mode::kLongest
                                ? db.top_k_longest(k)
                                : db.top_k_shortest(k);
          CHECK(got.paths == expected);
          CHECK(got.count == expected_count);
          CHECK(got.threshold == group.front().length);
          Term kth = mode == Mode::kLongest ? db.kth_longest(k)
                                            : db.kth_shortest(k);
          CHECK(kth.value == sorted[k - 1].length);
          MaterializedPath mat = db.materialize(kth);
          CHECK(mat.length == kth.value);
        }
      }
    }
  }
  CHECK(nonempty > 60);
}
