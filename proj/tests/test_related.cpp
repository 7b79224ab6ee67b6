#include <doctest.h>

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "truecc/equiv.hpp"
#include "truecc/fixtures.hpp"
#include "truecc/related.hpp"

using namespace truecc;
namespace fx = truecc::fixtures;

namespace {

// Every family of subsets of n events, as a bitmask over the 2^n subsets.
std::vector<ConfigStructure> all_config_structures(int n) {
  std::vector<Event> events;
  for (int e = 0; e < n; ++e) events.push_back({std::string(1, static_cast<char>('a' + e)), "l"});
  std::vector<ConfigStructure> out;
  const int subsets = 1 << n;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
    std::vector<EventSet> cs;
    for (int x = 0; x < subsets; ++x)
      if ((fam >> x) & 1U) cs.push_back(static_cast<EventSet>(x));
    out.push_back(make_config_structure(events, cs));
  }
  return out;
}

// A step is asynchronous when every set between its ends is a configuration.
std::set<std::pair<EventSet, EventSet>> async_oracle(const ConfigStructure& c) {
  std::set<std::pair<EventSet, EventSet>> out;
  const EventSet all = full_set(c.event_count());
  for (EventSet x : c.configs)
    for (EventSet y : c.configs) {
      if ((x & ~y) != 0) continue;
      bool ok = true;
      for (EventSet z = 0; z <= all && ok; ++z)
        if ((x & ~z) == 0 && (z & ~y) == 0)
          ok = std::find(c.configs.begin(), c.configs.end(), z) != c.configs.end();
      if (ok) out.emplace(x, y);
    }
  return out;
}

// Whether (X,X) reaches (Y,X) by s-steps and then (Y,Y) by t-steps.
bool chain_through(const STStructure& st, EventSet x, EventSet y) {
  auto reach = [&](STConfig from, STConfig to, StepKind kind) {
    if (!st.contains(from)) return false;
    std::set<std::pair<EventSet, EventSet>> seen{{from.S, from.T}};
    std::deque<STConfig> queue{from};
    while (!queue.empty()) {
      STConfig c = queue.front();
      queue.pop_front();
      if (c == to) return true;
      for (const auto& s : steps_from(st, c))
        if (s.kind == kind && config_subset(s.target, to) && seen.emplace(s.target.S, s.target.T).second)
          queue.push_back(s.target);
    }
    return false;
  };
  return reach({x, x}, {y, x}, StepKind::S) && reach({y, x}, {y, y}, StepKind::T);
}

std::vector<EventSet> left_closed_oracle(const InpureEventStructure& e) {
  std::vector<EventSet> out;
  for (EventSet x = 0; x <= full_set(e.event_count()); ++x) {
    bool ok = true;
    for (EventSet y = 0; y <= x && ok; ++y) {
      if ((y & ~x) != 0) continue;
      ok = std::any_of(e.enabling.begin(), e.enabling.end(),
                       [&](const Enabling& en) { return en.Y == y && (en.Z & ~x) == 0; });
    }
    if (ok) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

}  // namespace

TEST_CASE("asynchronous steps of configuration structures") {
  auto sq = parse_cs("a b", "{} a b ab");
  auto steps = async_steps(sq);
  CHECK(std::find(steps.begin(), steps.end(), AsyncStep{0, 3}) != steps.end());
  auto ch = parse_cs("a b", "{} a ab");
  auto chs = async_steps(ch);
  CHECK(std::find(chs.begin(), chs.end(), AsyncStep{0, 3}) == chs.end());
  CHECK(std::find(chs.begin(), chs.end(), AsyncStep{1, 3}) != chs.end());
  for (EventSet x : ch.configs) CHECK(std::find(chs.begin(), chs.end(), AsyncStep{x, x}) != chs.end());

  for (const auto& c : all_config_structures(2)) {
    std::set<std::pair<EventSet, EventSet>> got;
    for (const auto& s : async_steps(c)) got.emplace(s.from, s.to);
    CHECK(got == async_oracle(c));
  }
}

TEST_CASE("cintost keeps only corners") {
  auto st = cintost(parse_cs("a", "{} a"));
  CHECK(st == parse_st("a", "(,) (a,a)"));
  CHECK(cintost(parse_cs("a b", "{} a b ab")).size() == 4);
  CHECK(cintost(make_config_structure({}, {})).size() == 0);
}

TEST_CASE("cintost2 fills asynchronous steps") {
  CHECK(cintost2(parse_cs("a b", "{} a b ab")) == fx::filled_square());
  CHECK(cintost2(parse_cs("a b", "{} a ab")) == fx::chain_ab());
  CHECK(cintost2(make_config_structure({}, {})).size() == 0);

  for (const auto& c : all_config_structures(2)) {
    auto st = cintost2(c);
    CHECK(is_adjacent_closed(st).holds);
    for (const auto& [x, y] : async_oracle(c)) CHECK(chain_through(st, x, y));
    CHECK(config_isomorphic(stintoc(st), c));
  }
}

TEST_CASE("stintoc forgets intermediate configurations") {
  auto sq = parse_cs("a b", "{} a b ab");
  CHECK(stintoc(fx::filled_square()) == sq);
  CHECK(stintoc(fx::empty_square()) == sq);
  CHECK(stintoc(parse_st("a", "(,) (a,a)")) == parse_cs("a", "{} a"));
}

TEST_CASE("stability of configuration structures and cintost3") {
  CHECK(stability(parse_cs("a b", "{} a b ab")).stable());
  CHECK_FALSE(stability(parse_cs("a b", "{} ab")).connected);
  CHECK(cintost3(parse_cs("a b", "{} a b ab")) == fx::filled_square());
  CHECK(cintost3(parse_cs("a b", "{} a ab")) == fx::chain_ab());
  CHECK(cintost3(parse_cs("a", "{}")) == parse_st("a", "(,)"));
  try {
    cintost3(parse_cs("a b", "{} ab"));
    FAIL("expected NotStableInput");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotStableInput);
  }

  auto tri = fx::triangle();
  CHECK(property_report(tri).stable());
  CHECK_FALSE(is_adjacent_closed(tri).holds);
  CHECK_FALSE(st_isomorphic(cintost3(stintoc(tri)), tri));
  CHECK(st_isomorphic(cintost3(stintoc(fx::filled_square())), fx::filled_square()));

  for (const auto& c : all_config_structures(2)) {
    if (!stability(c).stable()) continue;
    CHECK(property_report(cintost3(c)).stable());
  }
}

TEST_CASE("cintost acts on morphisms") {
  auto a = parse_cs("a b", "{} a b ab");
  auto b = parse_cs("x:a y:b z:c", "{} x y xy xz");
  std::vector<int> f{0, 1};
  CHECK(is_config_morphism(a, b, f));
  CHECK(is_st_morphism(cintost(a), cintost(b), f));
  std::vector<int> id{0, 1};
  CHECK(is_st_morphism(cintost(a), cintost(a), id));
  // Collapsing a and b is not locally injective.
  auto c = parse_cs("x:a", "{} x");
  CHECK_FALSE(is_config_morphism(a, c, {0, 0}));
  CHECK_FALSE(is_st_morphism(cintost(a), cintost(c), {0, 0}));
  // Composition: forget b, then embed.
  auto d = parse_cs("p:a", "{} p");
  std::vector<int> g{0, -1};
  std::vector<int> h{0};
  CHECK(is_config_morphism(a, d, g));
  CHECK(is_config_morphism(d, b, h));
  std::vector<int> hg{h[g[0]], -1};
  CHECK(is_config_morphism(a, b, hg));
  CHECK(is_st_morphism(cintost(a), cintost(b), hg));
}

TEST_CASE("left-closed configurations and asynchronous transitions of event structures") {
  auto es = fx::asym_conflict_es();
  auto l = left_closed_configs(es);
  CHECK(l == std::vector<EventSet>{0, 1, 2, 3});
  CHECK(l == left_closed_oracle(es));
  auto steps = async_steps(es);
  EventSet b = 1, s = 2;
  CHECK(std::find(steps.begin(), steps.end(), AsyncStep{s, b | s}) == steps.end());
  CHECK(std::find(steps.begin(), steps.end(), AsyncStep{b, b | s}) != steps.end());
  for (EventSet x : l) CHECK(std::find(steps.begin(), steps.end(), AsyncStep{x, x}) != steps.end());

  auto trivial = make_event_structure({{"a", "a"}}, {{0, 0}});
  CHECK(left_closed_configs(trivial) == std::vector<EventSet>{0});
  CHECK(left_closed_configs(make_event_structure({{"a", "a"}}, {})).empty());

  auto indep = make_event_structure({{"a", "a"}, {"b", "b"}}, {{0, 0}, {0, 1}, {0, 2}, {0, 3}});
  auto isteps = async_steps(indep);
  CHECK(std::find(isteps.begin(), isteps.end(), AsyncStep{0, 3}) != isteps.end());
}

TEST_CASE("eintost and stintoe") {
  CHECK(eintost(fx::asym_conflict_es()) == fx::asym_conflict_2());
  auto indep = make_event_structure({{"a", "a"}, {"b", "b"}}, {{0, 0}, {0, 1}, {0, 2}, {0, 3}});
  CHECK(eintost(indep) == fx::filled_square());
  CHECK(eintost(make_event_structure({{"a", "a"}}, {{0, 0}})) == parse_st("a", "(,)"));

  auto e = stintoe(fx::filled_square());
  CHECK(left_closed_configs(e) == std::vector<EventSet>{0, 1, 2, 3});
  auto es = async_steps(e);
  CHECK(std::find(es.begin(), es.end(), AsyncStep{0, 3}) != es.end());

  CHECK(st_isomorphic(eintost(stintoe(fx::asym_conflict_2())), fx::asym_conflict_2()));
  auto root_only = stintoe(parse_st("a", "(,)"));
  REQUIRE(root_only.enabling.size() == 1);
  CHECK(root_only.enabling[0] == Enabling{0, 0});

  try {
    stintoe(fx::triangle());
    FAIL("expected PreconditionViolated");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::PreconditionViolated);
  }
}

TEST_CASE("stintoe claims on adjacent-closed structures") {
  for (const auto& c : all_config_structures(2)) {
    auto st = reachable_part(cintost2(c));
    if (st.size() == 0) continue;
    auto e = stintoe(st);
    std::vector<EventSet> diag;
    for (const auto& x : st.configs())
      if (x.S == x.T) diag.push_back(x.S);
    std::sort(diag.begin(), diag.end(), set_less);
    CHECK(left_closed_configs(e) == diag);
    for (const auto& s : async_steps(e)) CHECK(st.contains({s.to, s.from}));
    for (const auto& x : st.configs()) {
      auto steps = async_steps(e);
      CHECK(std::find(steps.begin(), steps.end(), AsyncStep{x.T, x.S}) != steps.end());
    }
  }
}

TEST_CASE("eintost on random event structures keeps rootedness and adjacency") {
  std::mt19937 rng(7);
  for (int round = 0; round < 200; ++round) {
    std::vector<Enabling> en;
    for (EventSet z = 0; z < 8; ++z)
      for (EventSet y = 0; y < 8; ++y)
        if (rng() % 6 == 0) en.push_back({z, y});
    if (rng() % 2) en.push_back({0, 0});
    auto e = make_event_structure({{"a", "a"}, {"b", "b"}, {"c", "c"}}, en);
    auto st = eintost(e);
    CHECK(is_adjacent_closed(st).holds);
    auto l = left_closed_configs(e);
    bool rooted = !l.empty() && l.front() == 0;
    CHECK(check_rooted(st).holds == rooted);
    for (const auto& s : async_steps(e)) CHECK(st.contains({s.to, s.from}));
    for (const auto& c : st.configs()) {
      auto steps = async_steps(e);
      CHECK(std::find(steps.begin(), steps.end(), AsyncStep{c.T, c.S}) != steps.end());
    }
  }
}
