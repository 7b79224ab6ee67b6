#pragma once

#include "truecc/hda.hpp"
#include "truecc/related.hpp"
#include "truecc/st.hpp"

namespace truecc::fixtures {

// Two concurrent events a and b with every intermediate configuration.
STStructure filled_square();
// The filled square without (ab,{}): a and b interleave but never overlap.
STStructure empty_square();
// b may only start once a has started.
STStructure triangle();
STStructure chain_ab();
STStructure choice_ab();
STStructure single_a();

ConfigStructure parallel_switch_cs();
STStructure parallel_switch();
ConfigStructure resolved_conflict_cs();
STStructure resolved_conflict();

// Strong asymmetric conflict over events b and s.
InpureEventStructure asym_conflict_es();
STStructure asym_conflict_2();
// The same behaviour with the late s duplicated as a third event f.
STStructure asym_conflict_3();

// Every (S,T) with T a subset of S over the given events.
STStructure full_st(const std::vector<Event>& events);

HDA filled_square_hda();
// The interleaving square: four transitions, no square cell.
HDA empty_square_hda();
// One a-transition from q0 to q2, and b then a through q1.
HDA triangle_hda();
// The hollow 3-cube over a, b, c without the face where a and b run
// before c starts. With `dotted`, d and e leave the corner (ab,ab).
HDA cube_missing_face(bool dotted = false);
// The unfolding of cube_missing_face(), with d leaving one copy of the split
// corner and e the other.
HDA cube_unfolding_dotted();
HDA asym_conflict_hda_2();
HDA asym_conflict_hda_3();
// d, then a choice between e and f.
HDA angelic_hda();
// Two d-transitions, one followed by e and the other by f.
HDA demonic_hda();
// d and a run together; two squares share the a-transition from the start
// and the d-transition after a, so the demon's choice is forgotten when a ends first.
HDA speed_game_hda();
// s in parallel with a b-loop, drawn as a cylinder.
HDA cylinder_hda();
// Filled square with t1 and t2 of the square swapped.
RawHDA broken_square_raw();
// Filled square with one edge relabelled.
RawHDA mislabeled_square_raw();

}  // namespace truecc::fixtures
