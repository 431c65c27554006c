#include "kpaths/selfcheck.hpp"

#include <functional>
#include <initializer_list>
#include <sstream>

#include "kpaths/graph.hpp"
#include "kpaths/pathdb.hpp"
#include "kpaths/vsop.hpp"
#include "kpaths/zbdd.hpp"

namespace kpaths {

namespace {

NodeRef combo_set(NodeStore& store, std::initializer_list<VarId> vars) {
  NodeRef r = NodeRef::unit();
  for (VarId v : vars) r = store.attach(r, v);
  return r;
}

class Checker {
 public:
  explicit Checker(std::function<std::string(VarId)> namer)
      : namer_(std::move(namer)) {}

  void is_true(const std::string& name, bool ok, const std::string& detail) {
    results_.push_back({name, ok, ok ? "" : detail});
  }

  void vsop_eq(const std::string& name, const Vsop& got,
               const Vsop& expected) {
    is_true(name, got == expected,
            "got " + to_string(got, namer_) + ", expected " +
                to_string(expected, namer_));
  }

  template <typename T>
  void value_eq(const std::string& name, const T& got, const T& expected) {
    std::ostringstream detail;
    detail << "got " << got << ", expected " << expected;
    is_true(name, got == expected, detail.str());
  }

  void term_eq(const std::string& name, const Term& got,
               const Term& expected) {
    auto show = [this](const Term& t) {
      std::string s = std::to_string(t.value) + "*";
      for (VarId v : t.combo) s += namer_(v);
      return s;
    };
    is_true(name, got.combo == expected.combo && got.value == expected.value,
            "got " + show(got) + ", expected " + show(expected));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::function<std::string(VarId)> namer_;
  std::vector<CheckResult> results_;
};

void algebra_checks(std::vector<CheckResult>& out) {
  NodeStore store;
  VarId a{0}, b{1}, c{2};
  Checker check([](VarId v) {
    return std::string(1, char('a' + v.ordinal));
  });

  auto term = [&store](std::int64_t value, std::initializer_list<VarId> vars) {
    return Vsop::from_term(store, value, vars);
  };

  Vsop f = term(4, {a, b, c}) + term(5, {a, b}) + term(3, {b, c}) +
           term(1, {a});
  Vsop g = term(5, {a, b}) + term(-3, {b, c});

  // Digits of the base -2 encoding: 4 = (100), 5 = (101), 3 = (111),
  // 1 = (001), so each digit set collects the terms with that bit on.
  auto digits = f.digits();
  check.value_eq<std::size_t>("digits of F: width", digits.size(), 3);
  if (digits.size() == 3) {
    NodeRef f0 = store.set_union(
        store.set_union(combo_set(store, {a, b}), combo_set(store, {b, c})),
        combo_set(store, {a}));
    NodeRef f1 = combo_set(store, {b, c});
    NodeRef f2 = store.set_union(
        store.set_union(combo_set(store, {a, b, c}), combo_set(store, {a, b})),
        combo_set(store, {b, c}));
    check.is_true("digits of F: F_0 = {ab, bc, a}", digits[0] == f0, "digit 0 mismatch");
    check.is_true("digits of F: F_1 = {bc}", digits[1] == f1, "digit 1 mismatch");
    check.is_true("digits of F: F_2 = {abc, ab, bc}", digits[2] == f2, "digit 2 mismatch");
  }

  check.vsop_eq("F.Restrict(a)", f.restrict(term(1, {a})),
                term(4, {a, b, c}) + term(5, {a, b}) + term(1, {a}));
  check.vsop_eq("F.Restrict(ab)", f.restrict(term(1, {a, b})),
                term(4, {a, b, c}) + term(5, {a, b}));
  check.vsop_eq("F.Restrict(a+b)", f.restrict(term(1, {a}) + term(1, {b})),
                f);
  check.vsop_eq("F.Permit(ab)", f.permit(term(1, {a, b})),
                term(5, {a, b}) + term(1, {a}));
  check.vsop_eq("F.Permit(abc)", f.permit(term(1, {a, b, c})), f);
  check.vsop_eq("F.Permit(c)", f.permit(term(1, {c})), Vsop::zero(store));
  check.value_eq<BigInt>("F.CountTerms()", f.count_terms(), BigInt(4));
  check.value_eq<std::int64_t>("F.MaxVal()", f.max_val(), 5);
  check.value_eq<std::int64_t>("F.MinVal()", f.min_val(), 1);
  check.vsop_eq("F.TermsGE(3)", f.terms_ge(Vsop::constant(store, 3)),
                term(4, {a, b, c}) + term(5, {a, b}) + term(3, {b, c}));
  check.vsop_eq("F.TermsLT(3)", f.terms_lt(Vsop::constant(store, 3)),
                term(1, {a}));
  check.vsop_eq("F+G", f + g, term(4, {a, b, c}) + term(10, {a, b}) + term(1, {a}));
  check.vsop_eq("F-G", f - g, term(4, {a, b, c}) + term(6, {b, c}) + term(1, {a}));
  check.vsop_eq("FxG", f * g,
                term(5, {a, b, c}) + term(30, {a, b}) + term(-9, {b, c}));
  check.vsop_eq("F==G", f.cmp_eq(g), term(1, {a, b}));
  check.vsop_eq("F>G", f.cmp_gt(g),
                term(1, {a, b, c}) + term(1, {b, c}) + term(1, {a}));
  check.vsop_eq("G>F", g.cmp_gt(f), Vsop::zero(store));
  check.vsop_eq("F!=G", f.cmp_ne(g),
                term(1, {a, b, c}) + term(1, {b, c}) + term(1, {a}));
  check.term_eq("F.MinCover()", f.min_cover(), Term{{a}, 1});
  check.term_eq("F.MaxCover()", f.max_cover(), Term{{a, b}, 5});

  for (CheckResult& r : check.take()) out.push_back(std::move(r));
}

void worked_example_checks(std::vector<CheckResult>& out) {
  NodeStore store;
  Dag dag = Dag::parse("v2 v7 4\nv3 v7 4\nv4 v8 4\nv7 v8 2\n");
  PathDb db(store, dag);

  Checker check([&](VarId v) { return dag.name(db.vertex_of_var(v)); });

  auto path_term = [&](std::int64_t true_length,
                       std::initializer_list<const char*> names) {
    Combo combo;
    for (const char* n : names) combo.push_back(db.var_of_vertex(*dag.vertex_id(n)));
    return Vsop::from_term(store, true_length + db.offset(),
                           std::span<const VarId>(combo.data(), combo.size()));
  };

  Vsop expected = path_term(4, {"v4", "v8"}) + path_term(6, {"v2", "v7", "v8"}) +
                  path_term(6, {"v3", "v7", "v8"});
  check.vsop_eq("example DAG: path terms", db.expr(), expected);
  check.value_eq<BigInt>("example DAG: path count", db.count_paths(), BigInt(3));
  check.value_eq<std::int64_t>("example DAG: longest length",
                               db.longest_length(), 6);
  check.value_eq<std::int64_t>("example DAG: shortest length",
                               db.shortest_length(), 4);

  for (CheckResult& r : check.take()) out.push_back(std::move(r));
}

}  // namespace

std::vector<CheckResult> run_selfchecks() {
  std::vector<CheckResult> results;
  algebra_checks(results);
  worked_example_checks(results);
  return results;
}

}  // namespace kpaths
