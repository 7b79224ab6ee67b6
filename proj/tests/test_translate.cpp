#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hda_oracles.hpp"
#include "truecc/enumerate.hpp"
#include "truecc/equiv.hpp"
#include "truecc/fixtures.hpp"
#include "truecc/translate.hpp"

using namespace truecc;
namespace fx = truecc::fixtures;

namespace {

// a and b interleaved through a filled square, drawn by hand.
HDA hand_square() {
  return validate_hda(RawHDA{{{"00", 0}, {"10", 0}, {"01", 0}, {"11", 0}, {"A0", 1}, {"A1", 1}, {"B0", 1}, {"B1", 1}, {"X", 2}},
                             {{"A0", 1, "00"}, {"A1", 1, "01"}, {"B0", 1, "00"}, {"B1", 1, "10"}, {"X", 1, "B0"}, {"X", 2, "A0"}},
                             {{"A0", 1, "10"}, {"A1", 1, "11"}, {"B0", 1, "01"}, {"B1", 1, "11"}, {"X", 1, "B1"}, {"X", 2, "A1"}},
                             {{"A0", "a"}, {"A1", "a"}, {"B0", "b"}, {"B1", "b"}},
                             "00",
                             {}});
}

bool nice(const STStructure& st) {
  auto r = property_report(st);
  return r.rooted.holds && r.connected.holds && r.adjacent_closed.holds;
}

std::vector<STStructure> nice_sample(std::size_t count, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<STStructure> out;
  while (out.size() < count) {
    auto st = random_rooted_connected(n, rng, 0.6);
    if (nice(st)) out.push_back(st);
  }
  return out;
}

std::vector<STStructure> nice_fixtures() {
  std::vector<STStructure> out;
  for (const auto& st : {fx::filled_square(), fx::empty_square(), fx::chain_ab(), fx::choice_ab(), fx::single_a(),
                         fx::asym_conflict_2(), fx::asym_conflict_3(), fx::parallel_switch(), fx::resolved_conflict()})
    if (nice(st)) out.push_back(st);
  return out;
}

}  // namespace

TEST_CASE("stintoh on fixtures") {
  HDA fs = stintoh(fx::filled_square());
  CHECK(hda_isomorphic(fs, hand_square()));
  CHECK(stintoh(validate_st({}, {{{}, {}}})).size() == 1);
  CHECK(hda_isomorphic(stintoh(fx::asym_conflict_2()), stintoh(fx::asym_conflict_3())));
  CHECK_THROWS_AS(stintoh(fx::triangle()), Error);
  CHECK_THROWS_AS(stintoh(fx::filled_square(), {0, 0}), Error);
}

TEST_CASE("stintoh output is a valid acyclic non-degenerate HDA") {
  std::size_t checked = 0;
  for (int n = 0; n <= 2; ++n)
    for_each_rooted_connected(n, [&](const STStructure& st) {
      if (!nice(st)) return;
      HDA h = stintoh(st);
      CHECK(is_acyclic(h).holds);
      CHECK(is_non_degenerate(h).holds);
      validate_hda(h.raw());
      ++checked;
    });
  for (const auto& st : nice_sample(200, 3, 7)) {
    HDA h = stintoh(st);
    CHECK(is_acyclic(h).holds);
    CHECK(is_non_degenerate(h).holds);
  }
  CHECK(checked > 0);
}

TEST_CASE("different listings give isomorphic HDAs up to reindexing") {
  std::mt19937_64 rng(11);
  for (const auto& st : nice_sample(30, 3, 3)) {
    std::vector<int> listing(st.event_count());
    std::iota(listing.begin(), listing.end(), 0);
    std::shuffle(listing.begin(), listing.end(), rng);
    CHECK(hda_isomorphic_up_to_reindexing(stintoh(st), stintoh(st, listing)));
  }
}

TEST_CASE("isomorphic ST-structures give isomorphic HDAs") {
  auto a = fx::filled_square();
  auto b = parse_st("y:b x:a", "(,) (x,) (y,) (x,x) (y,y) (xy,) (xy,x) (xy,y) (xy,xy)");
  REQUIRE(st_isomorphic(a, b));
  CHECK(hda_isomorphic_up_to_reindexing(stintoh(a), stintoh(b)));
}

TEST_CASE("hintost on fixtures") {
  CHECK(st_isomorphic(hintost(fx::filled_square_hda()), fx::filled_square()));
  auto es = hintost(fx::empty_square_hda());
  CHECK(es.event_count() == 4);
  auto cube = fx::cube_missing_face();
  CHECK(st_isomorphic(hintost(cube), hintost(history_unfolding(cube))));
  CHECK(st_isomorphic(hintost(fx::cube_missing_face(true)), hintost(fx::cube_unfolding_dotted())));
  CHECK_THROWS_AS(hintost(fx::cylinder_hda()), Error);
}

TEST_CASE("hintost agrees with the literal path-by-path reading") {
  std::vector<HDA> hdas{fx::filled_square_hda(), fx::empty_square_hda(), fx::triangle_hda(),  fx::cube_missing_face(),
                        fx::cube_unfolding_dotted(), fx::angelic_hda(), fx::demonic_hda(), fx::speed_game_hda(),
                        fx::asym_conflict_hda_2(), make_bulk(3)};
  for (const auto& st : nice_sample(40, 3, 5)) hdas.push_back(stintoh(st));
  for (const auto& h : hdas) {
    auto fast = hintost(h);
    auto slow = oracle::literal_hintost(h);
    CHECK(st_isomorphic(fast, slow));
    CHECK(nice(fast));
  }
}

TEST_CASE("bulks") {
  CHECK(make_bulk(0).size() == 1);
  CHECK(make_bulk(2).size() == 9);
  CHECK(make_bulk(3).size() == 27);
  CHECK_THROWS_AS(make_bulk(7), Error);
  for (int n = 0; n <= 4; ++n) {
    HDA b = make_bulk(n);
    CHECK(b.cells_of_dim(n).size() == 1);
    CHECK(b.max_dim() == n);
    CHECK(is_acyclic(b).holds);
    CHECK(is_non_degenerate(b).holds);
    CHECK(hda_isomorphic(b, stintoh(fx::full_st(numbered_events(n)))));
  }
}

TEST_CASE("sculptures from ST-structures") {
  auto s2 = stintosculpture(fx::asym_conflict_2());
  auto s3 = stintosculpture(fx::asym_conflict_3());
  CHECK(s2.bulk_dim() == 2);
  CHECK(s3.bulk_dim() == 3);
  CHECK(check_sculpture(s2));
  CHECK(check_sculpture(s3));
  CHECK_FALSE(st_isomorphic(sculpintost(s2), sculpintost(s3)));
  CHECK(stintosculpture(validate_st({}, {{{}, {}}})).bulk_dim() == 0);

  CHECK(st_isomorphic(sculpintost(stintosculpture(fx::filled_square())), fx::filled_square()));
  Sculpture whole{make_bulk(2), numbered_events(2), {}};
  const auto full = fx::full_st(numbered_events(2));
  whole.embedding = full.configs();
  CHECK(sculpintost(whole).size() == 9);
  Sculpture point{make_bulk(0), {}, {STConfig{}}};
  CHECK(sculpintost(point).size() == 1);
  CHECK(hintost_sculpture(point).size() == 1);

  auto es = stintosculpture(fx::empty_square());
  auto hs = hintost_sculpture(es);
  CHECK(hs.event_count() == 2);
  CHECK(st_isomorphic(hs, fx::empty_square()));
  CHECK(st_isomorphic(hintost_sculpture(stintosculpture(fx::filled_square())), fx::filled_square()));

  CHECK_FALSE(sculptures_isomorphic(s2, s3));
  CHECK(sculptures_isomorphic(s2, stintosculpture(fx::asym_conflict_2())));
  // The filled square over-complicated into the 3-bulk simplifies back.
  Sculpture big{s2.hda, numbered_events(3), {}};
  for (const auto& k : s2.embedding) big.embedding.push_back({k.S << 1, k.T << 1});
  big.bulk_events[1].label = "b";
  big.bulk_events[2].label = "s";
  REQUIRE(check_sculpture(big));
  CHECK(simplify_sculpture(big).bulk_dim() == 2);
  CHECK(sculptures_isomorphic(big, s2));

  Sculpture bad = s2;
  std::swap(bad.embedding[1], bad.embedding[2]);
  CHECK_FALSE(check_sculpture(bad));
  CHECK_THROWS_AS(sculpintost(bad), Error);
}

TEST_CASE("sculpting round trips") {
  std::vector<STStructure> sts = nice_fixtures();
  for (int n = 0; n <= 2; ++n)
    for_each_rooted_connected(n, [&](const STStructure& st) {
      if (nice(st)) sts.push_back(st);
    });
  for (const auto& st : nice_sample(100, 3, 9)) sts.push_back(st);
  for (const auto& st : sts) {
    auto sc = stintosculpture(st);
    auto back = sculpintost(sc);
    CHECK(st_isomorphic(back, st));
    CHECK(st_isomorphic(hintost_sculpture(sc), back));
  }
}

TEST_CASE("alpha-chains") {
  using A = AlphaMap;
  AlphaChain s1s1{A{true, 1}, A{true, 1}}, s1s2{A{true, 1}, A{true, 2}};
  CHECK(alpha_chain_list(s1s1, 3) == std::vector<int>{2});
  CHECK(alpha_chain_equiv(s1s1, s1s2, 3));
  CHECK_FALSE(alpha_chain_equiv({A{true, 1}}, {A{true, 2}}, 3));
  CHECK(alpha_chain_equiv({A{true, 2}}, {A{false, 2}}, 3));
  CHECK_THROWS_AS(alpha_chain_equiv(s1s1, {A{true, 1}}, 3), Error);
  CHECK(alpha_chain_apply({A{false, 1}, A{true, 1}}, 2) == STConfig{0b10, 0b10});
}

TEST_CASE("alpha-chain equivalence matches the cubical rewrite closure") {
  for (int n = 1; n <= 4; ++n)
    for (int len = 1; len <= std::min(4, n); ++len) {
      // Index lists in composition order; position k from the end is applied at dim n-(len-1-k).
      std::vector<std::vector<int>> lists{{}};
      for (int k = len - 1; k >= 0; --k) {
        std::vector<std::vector<int>> next;
        const int dim = n - (len - 1 - k);
        for (const auto& l : lists)
          for (int i = 1; i <= dim; ++i) {
            auto m = l;
            m.insert(m.begin(), i);
            next.push_back(m);
          }
        lists = next;
      }
      for (const auto& a : lists) {
        auto closure = oracle::cubical_closure(a);
        AlphaChain ca;
        for (int i : a) ca.push_back({true, i});
        for (const auto& b : lists) {
          AlphaChain cb;
          for (int i : b) cb.push_back({true, i});
          CHECK_MESSAGE(alpha_chain_equiv(ca, cb, n) == (closure.count(b) > 0), "n=" << n << " len=" << len);
        }
      }
    }
}

TEST_CASE("sculpture search verdicts") {
  auto ang = is_sculpture(fx::angelic_hda());
  REQUIRE(ang);
  CHECK(ang->bulk_dim() == 3);
  CHECK(check_sculpture(*ang));
  CHECK_FALSE(is_sculpture(fx::demonic_hda(), {3, 6}));
  auto dem = is_sculpture(fx::demonic_hda());
  REQUIRE(dem);
  CHECK(dem->bulk_dim() == 4);
  CHECK_FALSE(is_sculpture(fx::speed_game_hda()));
  CHECK_FALSE(is_sculpture(history_unfolding(fx::speed_game_hda())));
  auto fs = is_sculpture(fx::filled_square_hda());
  REQUIRE(fs);
  CHECK(fs->bulk_dim() == 2);
  CHECK(st_isomorphic(sculpintost(*fs), fx::filled_square()));
  CHECK_THROWS_AS(is_sculpture(fx::speed_game_hda(), {8, 2}), Error);
  // The interleaving square needs two directions; its unfolding needs three.
  CHECK(is_sculpture(fx::empty_square_hda())->bulk_dim() == 2);
  CHECK(is_sculpture(history_unfolding(fx::empty_square_hda()))->bulk_dim() == 3);
}

TEST_CASE("event quotients") {
  auto st = fx::asym_conflict_3();
  std::vector<int> id(st.event_count());
  std::iota(id.begin(), id.end(), 0);
  CHECK(st_isomorphic(quotient_events(st, id), st));
  std::vector<int> merge_s(st.event_count());
  for (int e = 0; e < st.event_count(); ++e) merge_s[e] = st.label(e) == "s" ? 1 : 0;
  CHECK(st_isomorphic(quotient_events(st, merge_s), fx::asym_conflict_2()));
  CHECK_THROWS_AS(quotient_events(fx::filled_square(), {0, 0}), Error);
}
