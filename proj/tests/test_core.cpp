#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "truecc/st.hpp"

using namespace truecc;

namespace {

const char* kFilled = "(,) (a,) (b,) (a,a) (b,b) (ab,) (ab,a) (ab,b) (ab,ab)";
const char* kEmpty = "(,) (a,) (b,) (a,a) (b,b) (ab,a) (ab,b) (ab,ab)";
const char* kTriangle = "(,) (a,) (a,a) (ab,) (ab,a) (ab,ab)";
const char* kChain = "(,) (a,) (a,a) (ab,a) (ab,ab)";

STStructure filled() { return parse_st("a b", kFilled); }
STStructure empty_square() { return parse_st("a b", kEmpty); }

std::set<std::pair<int, int>> as_set(const std::vector<EventPair>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("validate_st accepts the filled square and rejects broken inputs") {
  auto st = filled();
  CHECK(st.size() == 9);
  CHECK(st.event_count() == 2);

  try {
    parse_st("a", "(a,)");
    FAIL("expected MissingClosure");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingClosure);
  }
  try {
    validate_st({{"a", "a"}}, {{{}, {"a"}}});
    FAIL("expected ConstraintTnotSubsetS");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConstraintTnotSubsetS);
  }
  try {
    validate_st({{"a", "a"}}, {{{"z"}, {}}});
    FAIL("expected UndeclaredEvent");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UndeclaredEvent);
  }
  CHECK_THROWS_AS(validate_st({{"a", "a"}, {"a", "b"}}, {}), Error);

  auto none = validate_st({}, {});
  CHECK(none.size() == 0);
}

TEST_CASE("canonical form sorts events by id and configs by dimension") {
  auto st = validate_st({{"b", "y"}, {"a", "x"}}, {{{"b"}, {"b"}}, {{}, {}}, {{"b"}, {}}});
  CHECK(st.id(0) == "a");
  CHECK(st.label(1) == "y");
  REQUIRE(st.size() == 3);
  CHECK(st.format(st.configs()[0]) == "({},{})");
  CHECK(st.format(st.configs()[1]) == "(b,{})");
  CHECK(st.format(st.configs()[2]) == "(b,b)");
  CHECK(st.parse_config("(b,b)") == st.configs()[2]);

  auto wide = validate_st({{"x1", "a"}, {"x2", "b"}}, {{{}, {}}, {{"x1"}, {}}, {{"x1"}, {"x1"}}});
  CHECK(wide.format(wide.configs()[1]) == "({x1},{})");
  CHECK(wide.parse_config("({x1},{})") == wide.configs()[1]);
}

TEST_CASE("weak mode accepts a config whose corner is only a superset") {
  CHECK_THROWS_AS(parse_st("a b", "(,) (a,) (ab,ab)"), Error);
  auto st = parse_st("a b", "(,) (a,) (ab,ab)", Mode::Weak);
  CHECK(st.mode() == Mode::Weak);
  CHECK(property_report(st).mode == Mode::Weak);
}

TEST_CASE("property flags on the empty square") {
  auto rep = property_report(empty_square());
  CHECK(rep.rooted.holds);
  CHECK(rep.connected.holds);
  CHECK(rep.adjacent_closed.holds);
  CHECK_FALSE(rep.unions.holds);
  CHECK_FALSE(rep.intersections.holds);
  CHECK_FALSE(rep.stable());
  REQUIRE(rep.unions.witness);
  auto st = empty_square();
  CHECK(st.format(*rep.unions.witness->missing) == "(ab,{})");
}

TEST_CASE("adjacent closure and single events on small structures") {
  auto tri = parse_st("a b", kTriangle);
  auto adj = is_adjacent_closed(tri);
  CHECK_FALSE(adj.holds);
  REQUIRE(adj.witness);
  CHECK(adj.witness->rule == 1);
  CHECK(tri.format(*adj.witness->missing) == "(b,{})");

  auto single = closed_under_single_events(tri);
  CHECK_FALSE(single.holds);
  REQUIRE(single.witness);
  CHECK(tri.format(single.witness->configs[0]) == "(ab,{})");
  CHECK(tri.id(single.witness->event) == "b");
  CHECK(tri.format(*single.witness->missing) == "(ab,b)");

  CHECK(closed_under_single_events(filled()).holds);
  CHECK(is_adjacent_closed(parse_st("a", "(,) (a,) (a,a)")).holds);
  CHECK(closed_under_single_events(parse_st("a b", "(,) (a,a) (ab,ab)")).holds);
}

TEST_CASE("rooted and connected witnesses") {
  auto st = parse_st("a b", "(ab,) (ab,ab)");
  auto rep = property_report(st);
  CHECK_FALSE(rep.rooted.holds);
  CHECK_FALSE(rep.connected.holds);
  CHECK(st.format(rep.connected.witness->configs[0]) == "(ab,{})");

  auto none = property_report(validate_st({}, {}));
  CHECK_FALSE(none.rooted.holds);
  CHECK(none.connected.holds);
}

TEST_CASE("steps_from lists s-steps before t-steps") {
  auto st = filled();
  auto root = steps_from(st, {});
  REQUIRE(root.size() == 2);
  CHECK(root[0].kind == StepKind::S);
  CHECK(st.format(root[0].target) == "(a,{})");
  CHECK(st.format(root[1].target) == "(b,{})");
  CHECK(steps_from(st, st.parse_config("(ab,ab)")).empty());

  auto es = empty_square();
  auto from_a = steps_from(es, es.parse_config("(a,)"));
  REQUIRE(from_a.size() == 1);
  CHECK(from_a[0].kind == StepKind::T);
  CHECK(es.format(from_a[0].target) == "(a,a)");

  CHECK_THROWS_AS(steps_from(es, es.parse_config("(ab,)")), Error);
}

TEST_CASE("rooted paths match the permutation oracle") {
  auto st = filled();
  auto top = st.parse_config("(ab,ab)");
  CHECK(enumerate_rooted_paths(st, top).size() == 6);
  CHECK(oracle::path_count(st, top) == 6);

  auto es = empty_square();
  CHECK(enumerate_rooted_paths(es, top).size() == 2);
  CHECK(oracle::path_count(es, top) == 2);

  auto root_paths = enumerate_rooted_paths(st, {});
  REQUIRE(root_paths.size() == 1);
  CHECK(root_paths[0].steps.empty());

  for (const auto& s : {filled(), empty_square(), parse_st("a b", kTriangle), parse_st("a b", kChain)}) {
    for (const auto& c : s.configs()) {
      auto paths = enumerate_rooted_paths(s, c);
      CHECK(paths.size() == oracle::path_count(s, c));
      for (const auto& p : paths) CHECK(p.length() == static_cast<std::size_t>(c.dim()));
    }
  }
  CHECK(enumerate_rooted_paths(st, top, 4).size() == 4);
  CHECK_THROWS_AS(enumerate_rooted_paths(es, st.parse_config("(ab,)")), Error);
}

TEST_CASE("ST-traces use the 1-based position of the starting step") {
  auto st = filled();
  auto a = 0, b = 1;
  Path p1{{}, {{st.parse_config("(,)"), st.parse_config("(a,)"), StepKind::S, a},
               {st.parse_config("(a,)"), st.parse_config("(ab,)"), StepKind::S, b},
               {st.parse_config("(ab,)"), st.parse_config("(ab,a)"), StepKind::T, a},
               {st.parse_config("(ab,a)"), st.parse_config("(ab,ab)"), StepKind::T, b}}};
  CHECK(format_trace(st_trace(st, p1)) == "a^0 b^0 a^1 b^2");

  Path p2{{}, {{st.parse_config("(,)"), st.parse_config("(a,)"), StepKind::S, a},
               {st.parse_config("(a,)"), st.parse_config("(a,a)"), StepKind::T, a},
               {st.parse_config("(a,a)"), st.parse_config("(ab,a)"), StepKind::S, b},
               {st.parse_config("(ab,a)"), st.parse_config("(ab,ab)"), StepKind::T, b}}};
  CHECK(format_trace(st_trace(st, p2)) == "a^0 a^1 b^0 b^3");
  CHECK(st_trace(st, Path{}).empty());

  Path unrooted{st.parse_config("(a,)"), {}};
  CHECK_THROWS_AS(st_trace(st, unrooted), Error);
}

TEST_CASE("concurrency and causality") {
  auto es = empty_square();
  auto top = es.parse_config("(ab,ab)");
  CHECK(concurrency(es, top).empty());
  CHECK(causality(es, top).empty());

  auto st = filled();
  CHECK(as_set(concurrency(st, top)) == std::set<std::pair<int, int>>{{0, 1}});
  CHECK(causality(st, top).empty());

  auto chain = parse_st("a b", kChain);
  CHECK(concurrency(chain, top).empty());
  CHECK(as_set(causality(chain, top)) == std::set<std::pair<int, int>>{{0, 1}});

  for (const auto& s : {filled(), es, chain, parse_st("a b", kTriangle)})
    for (const auto& c : s.configs()) {
      CHECK(as_set(concurrency(s, c)) == oracle::concurrency(s, c));
      CHECK(as_set(causality(s, c)) == oracle::causality(s, c));
    }
}

TEST_CASE("global conflict") {
  auto choice = parse_st("a b", "(,) (a,) (a,a) (b,) (b,b)");
  CHECK(in_conflict(choice, std::vector<std::string>{"a", "b"}));
  CHECK_FALSE(in_conflict(choice, std::vector<std::string>{"a"}));
  CHECK_FALSE(in_conflict(choice, EventSet{0}));
  CHECK_THROWS_AS(in_conflict(choice, std::vector<std::string>{"q"}), Error);

  auto asym = parse_st("b s", "(,) (b,) (s,) (s,s) (b,b) (bs,b) (bs,bs)");
  CHECK_FALSE(in_conflict(asym, std::vector<std::string>{"b", "s"}));
}

TEST_CASE("cc-equivalence") {
  auto st = filled();
  auto top = st.parse_config("(ab,ab)");
  auto renamed = parse_st("x:a y:b", "(,) (x,) (y,) (x,x) (y,y) (xy,) (xy,x) (xy,y) (xy,xy)");
  CHECK(cc_equivalent(st, top, renamed, renamed.parse_config("(xy,xy)")));
  CHECK_FALSE(cc_equivalent(st, top, empty_square(), top));
  CHECK(cc_equivalent(st, {}, empty_square(), {}));
  CHECK(cc_simulates(st, renamed));
  CHECK(cc_simulates(renamed, st));
  CHECK_FALSE(cc_simulates(empty_square(), st));
  CHECK(cc_simulates(st, empty_square()) == false);
}

TEST_CASE("reachable part") {
  CHECK(reachable_part(filled()) == filled());
  auto st = parse_st("a b", "(,) (ab,) (ab,ab)");
  auto r = reachable_part(st);
  REQUIRE(r.size() == 1);
  CHECK(r.configs()[0] == STConfig{});
  CHECK(reachable_part(validate_st({}, {})).size() == 0);
  CHECK(reachable_part(r) == r);
  CHECK(check_connected(r).holds);

  // (ab,{}) is reachable but its corner is not, so it is dropped as well.
  auto stranded = parse_st("a b", "(,) (a,) (a,a) (ab,) (ab,ab)");
  auto rs = reachable_part(stranded);
  CHECK(rs.size() == 3);
}
