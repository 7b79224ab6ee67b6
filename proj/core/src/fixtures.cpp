#include "truecc/fixtures.hpp"

#include <algorithm>

#include "truecc/translate.hpp"

namespace truecc::fixtures {

STStructure filled_square() {
  return parse_st("a b", "(,) (a,) (b,) (a,a) (b,b) (ab,) (ab,a) (ab,b) (ab,ab)");
}

STStructure empty_square() {
  return parse_st("a b", "(,) (a,) (b,) (a,a) (b,b) (ab,a) (ab,b) (ab,ab)");
}

STStructure triangle() { return parse_st("a b", "(,) (a,) (a,a) (ab,) (ab,a) (ab,ab)"); }

STStructure chain_ab() { return parse_st("a b", "(,) (a,) (a,a) (ab,a) (ab,ab)"); }

STStructure choice_ab() { return parse_st("a b", "(,) (a,) (a,a) (b,) (b,b)"); }

STStructure single_a() { return parse_st("a", "(,) (a,) (a,a)"); }

ConfigStructure parallel_switch_cs() { return parse_cs("0 1 b", "{} 0 1 01 0b 1b 01b"); }

STStructure parallel_switch() { return cintost2(parallel_switch_cs()); }

ConfigStructure resolved_conflict_cs() { return parse_cs("a b c", "{} a b c ac bc abc"); }

STStructure resolved_conflict() { return cintost2(resolved_conflict_cs()); }

InpureEventStructure asym_conflict_es() {
  STStructure proto = parse_st("b s", "");
  EventSet b = bit(proto.event_index("b")), s = bit(proto.event_index("s"));
  return make_event_structure(proto.events(), {{0, 0}, {0, b}, {0, s}, {b, b | s}});
}

STStructure asym_conflict_2() { return parse_st("b s", "(,) (b,) (s,) (s,s) (b,b) (bs,b) (bs,bs)"); }

STStructure asym_conflict_3() {
  return parse_st("b f:s s", "(,) (b,) (s,) (s,s) (b,b) (bf,b) (bf,bf)");
}

namespace {

struct Builder {
  RawHDA r;
  explicit Builder(std::string initial) { r.initial = std::move(initial); }
  Builder& states(std::initializer_list<const char*> ids) {
    for (const char* id : ids) r.cells.push_back({id, 0});
    return *this;
  }
  Builder& edge(const char* id, const char* from, const char* to, const char* label) {
    r.cells.push_back({id, 1});
    r.s.push_back({id, 1, from});
    r.t.push_back({id, 1, to});
    r.labels[id] = label;
    return *this;
  }
  Builder& square(const char* id, const char* s1, const char* t1, const char* s2, const char* t2) {
    r.cells.push_back({id, 2});
    r.s.push_back({id, 1, s1});
    r.t.push_back({id, 1, t1});
    r.s.push_back({id, 2, s2});
    r.t.push_back({id, 2, t2});
    return *this;
  }
  HDA build() const { return validate_hda(r); }
};

RawHDA without_cells(RawHDA r, const std::vector<std::string>& gone) {
  auto dead = [&](const std::string& id) { return std::find(gone.begin(), gone.end(), id) != gone.end(); };
  std::erase_if(r.cells, [&](const Cell& c) { return dead(c.id); });
  std::erase_if(r.s, [&](const RawHDA::MapEntry& e) { return dead(e.cell) || dead(e.to); });
  std::erase_if(r.t, [&](const RawHDA::MapEntry& e) { return dead(e.cell) || dead(e.to); });
  for (const auto& g : gone) r.labels.erase(g);
  return r;
}

void add_edge(RawHDA& r, const std::string& id, const std::string& from, const std::string& to,
              const std::string& label) {
  r.cells.push_back({to, 0});
  r.cells.push_back({id, 1});
  r.s.push_back({id, 1, from});
  r.t.push_back({id, 1, to});
  r.labels[id] = label;
}

}  // namespace

STStructure full_st(const std::vector<Event>& events) {
  const int n = static_cast<int>(events.size());
  std::vector<STConfig> configs;
  for (EventSet S = 0; S <= full_set(n); ++S)
    for (EventSet T = 0; T <= S; ++T)
      if (subset(T, S)) configs.push_back({S, T});
  return make_st(events, configs);
}

HDA filled_square_hda() { return stintoh(filled_square()); }

HDA empty_square_hda() { return stintoh(empty_square()); }

HDA triangle_hda() {
  return Builder("q0").states({"q0", "q1", "q2"}).edge("a1", "q0", "q2", "a").edge("b", "q0", "q1", "b")
      .edge("a2", "q1", "q2", "a").build();
}

HDA cube_missing_face(bool dotted) {
  RawHDA r = stintoh(full_st({{"a", "a"}, {"b", "b"}, {"c", "c"}})).raw();
  r = without_cells(r, {"(abc,{})", "(ab,{})"});
  if (dotted) {
    add_edge(r, "d", "(ab,ab)", "qd", "d");
    add_edge(r, "e", "(ab,ab)", "qe", "e");
  }
  return validate_hda(r);
}

HDA cube_unfolding_dotted() {
  RawHDA r = history_unfolding(cube_missing_face()).raw();
  add_edge(r, "d", "(ab,ab)#0", "qd", "d");
  add_edge(r, "e", "(ab,ab)#1", "qe", "e");
  return validate_hda(r);
}

HDA asym_conflict_hda_2() { return stintoh(asym_conflict_2()); }

HDA asym_conflict_hda_3() { return stintoh(asym_conflict_3()); }

HDA angelic_hda() {
  return Builder("q0").states({"q0", "q1", "q2", "q3"}).edge("d", "q0", "q1", "d").edge("e", "q1", "q2", "e")
      .edge("f", "q1", "q3", "f").build();
}

HDA demonic_hda() {
  return Builder("q0").states({"q0", "q1", "q2", "q3", "q4"}).edge("d1", "q0", "q1", "d")
      .edge("e", "q1", "q2", "e").edge("d2", "q0", "q3", "d").edge("f", "q3", "q4", "f").build();
}

HDA speed_game_hda() {
  return Builder("q0")
      .states({"q0", "qa", "qe", "qg", "qtop", "qgood", "qevil"})
      .edge("A", "q0", "qa", "a").edge("De", "q0", "qe", "d").edge("Dg", "q0", "qg", "d")
      .edge("Dp", "qa", "qtop", "d").edge("Ae", "qe", "qtop", "a").edge("Ag", "qg", "qtop", "a")
      .edge("G", "qtop", "qgood", "g").edge("E", "qtop", "qevil", "e")
      .square("Xe", "A", "Ae", "De", "Dp").square("Xg", "A", "Ag", "Dg", "Dp")
      .build();
}

HDA cylinder_hda() {
  return Builder("q0").states({"q0", "q1"}).edge("S0", "q0", "q1", "s").edge("B0", "q0", "q0", "b")
      .edge("B1", "q1", "q1", "b").square("X", "S0", "S0", "B0", "B1").build();
}

RawHDA broken_square_raw() {
  RawHDA r = filled_square_hda().raw();
  for (auto& e : r.t)
    if (e.cell == "(ab,{})") e.to = e.i == 1 ? "(ab,b)" : "(ab,a)";
  return r;
}

RawHDA mislabeled_square_raw() {
  RawHDA r = filled_square_hda().raw();
  r.labels["(ab,a)"] = "c";
  return r;
}

}  // namespace truecc::fixtures
