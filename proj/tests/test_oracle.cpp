#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "kpaths/errors.hpp"
#include "kpaths/generate.hpp"
#include "kpaths/oracle.hpp"
#include "test_util.hpp"

using namespace kpaths;
using namespace kpaths::oracle;

namespace {

std::vector<std::string> path_names(const Dag& dag, const PathListEntry& p) {
  std::vector<std::string> names;
  for (VertexId v : p.vertices) names.push_back(dag.name(v));
  return names;
}

PathListEntry entry(std::vector<VertexId> vertices, std::int64_t length) {
  return PathListEntry{std::move(vertices), length};
}

}  // namespace

TEST_CASE("explicit model reproduces the worked algebra rows") {
  Combo a{VarId{0}}, b{VarId{1}}, c{VarId{2}};
  Combo ab{VarId{0}, VarId{1}}, bc{VarId{1}, VarId{2}};
  Combo abc{VarId{0}, VarId{1}, VarId{2}};

  ExplicitVsop f = ExplicitVsop::from_term(4, abc)
                       .add(ExplicitVsop::from_term(5, ab))
                       .add(ExplicitVsop::from_term(3, bc))
                       .add(ExplicitVsop::from_term(1, a));
  ExplicitVsop g =
      ExplicitVsop::from_term(5, ab).add(ExplicitVsop::from_term(-3, bc));

  CHECK(f.count_terms() == 4);
  CHECK(f.max_val() == 5);
  CHECK(f.min_val() == 1);
  CHECK(f.add(g) == ExplicitVsop::from_term(4, abc)
                        .add(ExplicitVsop::from_term(10, ab))
                        .add(ExplicitVsop::from_term(1, a)));
  CHECK(f.mul(g) == ExplicitVsop::from_term(5, abc)
                        .add(ExplicitVsop::from_term(30, ab))
                        .add(ExplicitVsop::from_term(-9, bc)));
  CHECK(f.cmp_eq(g) == ExplicitVsop::from_term(1, ab));
  CHECK(f.cmp_gt(g) == ExplicitVsop::from_term(1, abc)
                           .add(ExplicitVsop::from_term(1, bc))
                           .add(ExplicitVsop::from_term(1, a)));
  CHECK(g.cmp_gt(f).is_zero());
  CHECK(f.min_cover() == Term{a, 1});
  CHECK(f.max_cover() == Term{ab, 5});
  CHECK(f.permit(ExplicitVsop::from_term(1, ab)) ==
        ExplicitVsop::from_term(5, ab).add(ExplicitVsop::from_term(1, a)));
  CHECK(f.restrict(ExplicitVsop::from_term(1, ab)) ==
        ExplicitVsop::from_term(4, abc).add(ExplicitVsop::from_term(5, ab)));
}

TEST_CASE("dfs_precedes orders combinations as diagram enumeration does") {
  Combo a{VarId{0}}, b{VarId{1}};
  Combo ab{VarId{0}, VarId{1}};
  Combo abc{VarId{0}, VarId{1}, VarId{2}};
  Combo bc{VarId{1}, VarId{2}};

  CHECK(dfs_precedes(abc, ab));  // deeper 1-chain first
  CHECK(dfs_precedes(ab, a));
  CHECK(dfs_precedes(a, bc));  // smaller disagreeing variable wins
  CHECK(dfs_precedes(ab, b));
  CHECK(!dfs_precedes(b, ab));
  CHECK(!dfs_precedes(a, a));

  // matches actual enumeration order of {abc, ab, a, bc}
  NodeStore store;
  Vsop f = Vsop::from_term(store, 4, abc)
               .add(Vsop::from_term(store, 5, ab))
               .add(Vsop::from_term(store, 3, bc))
               .add(Vsop::from_term(store, 1, a));
  auto order = store.enumerate(f.support(), 10);
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    CHECK(dfs_precedes(order[i], order[i + 1]));
}

TEST_CASE("from_vsop round-trips and enforces its size limit") {
  NodeStore store;
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    auto [v, e] = testutil::random_expr(store, rng, 5, 8, -9, 9);
    CHECK(ExplicitVsop::from_vsop(v) == e);
    CHECK(e.to_vsop(store) == v);
  }
  Vsop wide = Vsop::unit_over(
      store, store.set_union(
                 store.set_union(store.single(VarId{0}), store.single(VarId{1})),
                 store.single(VarId{2})));
  CHECK_THROWS_WITH_AS(ExplicitVsop::from_vsop(wide, 2),
                       "expression too large to explicate", std::logic_error);
}

TEST_CASE("enumerate_paths on the worked example") {
  Dag dag = Dag::parse("v2 v7 4\nv3 v7 4\nv4 v8 4\nv7 v8 2\n");
  auto paths = enumerate_paths(dag);
  REQUIRE(paths.size() == 3);
  // sources in name order, successors in name order
  CHECK(path_names(dag, paths[0]) == std::vector<std::string>{"v2", "v7", "v8"});
  CHECK(paths[0].length == 6);
  CHECK(path_names(dag, paths[1]) == std::vector<std::string>{"v3", "v7", "v8"});
  CHECK(paths[1].length == 6);
  CHECK(path_names(dag, paths[2]) == std::vector<std::string>{"v4", "v8"});
  CHECK(paths[2].length == 4);
}

TEST_CASE("enumerate_paths skips isolated vertices and empty graphs") {
  CHECK(enumerate_paths(Dag::parse("")).empty());
  Dag dag = Dag::parse("a b 1\n");
  CHECK(enumerate_paths(dag).size() == 1);
}

TEST_CASE("enumerate_paths honors its explosion guard") {
  LayeredGraphSpec spec;
  spec.layers = 5;
  spec.width = 3;
  spec.wmin = 1;
  spec.wmax = 1;
  spec.seed = 3;
  Dag dag = Dag::parse(generate_layered(spec));
  CHECK(enumerate_paths(dag).size() == 81);
  CHECK_THROWS_WITH_AS(enumerate_paths(dag, 80), "path explosion", QueryError);
  CHECK_THROWS_WITH_AS(enumerate_paths(dag, 3), "path explosion", QueryError);
}

TEST_CASE("reference_top_k keeps boundary ties") {
  std::vector<PathListEntry> paths{
      entry({0, 1}, 5), entry({0, 2}, 3), entry({1, 2}, 3), entry({2, 3}, 1)};

  auto top1 = reference_top_k(paths, 1, Mode::kLongest);
  REQUIRE(top1.size() == 1);
  CHECK(top1[0].length == 5);

  auto top2 = reference_top_k(paths, 2, Mode::kLongest);
  REQUIRE(top2.size() == 3);  // both 3s tie at the boundary
  CHECK(top2[2].length == 3);

  auto bottom1 = reference_top_k(paths, 1, Mode::kShortest);
  REQUIRE(bottom1.size() == 1);
  CHECK(bottom1[0].length == 1);

  auto bottom2 = reference_top_k(paths, 2, Mode::kShortest);
  REQUIRE(bottom2.size() == 3);
  CHECK(bottom2[0].length == 1);

  CHECK(reference_top_k(paths, 4, Mode::kLongest).size() == 4);
  CHECK(reference_top_k(paths, 99, Mode::kLongest).size() == 4);
  CHECK_THROWS_WITH_AS(reference_top_k(paths, 0, Mode::kLongest),
                       "K must be positive", QueryError);
}

TEST_CASE("paths_to_vsop equals the database expression") {
  Dag dag = Dag::parse("v2 v7 4\nv3 v7 4\nv4 v8 4\nv7 v8 2\n");
  NodeStore store;
  PathDb db(store, dag);
  Vsop expected = paths_to_vsop(store, enumerate_paths(dag),
                                testutil::var_map(db), db.offset());
  CHECK(expected == db.expr());
}
