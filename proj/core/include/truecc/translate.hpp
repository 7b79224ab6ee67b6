#pragma once

#include <optional>
#include <vector>

#include "truecc/hda.hpp"
#include "truecc/st.hpp"

namespace truecc {

// listing[k] is the event position ranked k; empty means the id order.
HDA stintoh(const STStructure& st, const std::vector<int>& listing = {});

// Event class per cell: an index for transitions, -1 for other cells.
std::vector<int> event_classes(const HDA& h);

STStructure hintost(const HDA& h);

// The n-cube over the given events, listed in the given order.
HDA make_bulk(const std::vector<Event>& events);
// Events x1..xn, each labelled by its id.
std::vector<Event> numbered_events(int n);
HDA make_bulk(int n);

struct Sculpture {
  HDA hda;
  // Bulk events in listing order; the bulk dimension is their count.
  std::vector<Event> bulk_events;
  // Bulk cell (S,T) per hda cell, masks over bulk_events positions.
  std::vector<STConfig> embedding;
  int bulk_dim() const { return static_cast<int>(bulk_events.size()); }
};

// Whether the embedding is an injective morphism into the bulk.
bool check_sculpture(const Sculpture& sc);

Sculpture stintosculpture(const STStructure& st);
STStructure sculpintost(const Sculpture& sc);
STStructure hintost_sculpture(const Sculpture& sc);

// Drops bulk directions that no embedded cell ever starts.
Sculpture simplify_sculpture(const Sculpture& sc);
// Same simplified bulk dimension and isomorphic HDAs.
bool sculptures_isomorphic(const Sculpture& a, const Sculpture& b);

// One face-map application; chains compose right to left, so the last
// element is applied first.
struct AlphaMap {
  bool is_s = true;
  int index = 1;
  bool operator==(const AlphaMap&) const = default;
};
using AlphaChain = std::vector<AlphaMap>;

// Residual listing of positions 0..n-1 after the chain removes its events.
std::vector<int> alpha_chain_list(const AlphaChain& chain, int n);
// The chain evaluated on (E,{}) over a listing of n events.
STConfig alpha_chain_apply(const AlphaChain& chain, int n);
bool alpha_chain_equiv(const AlphaChain& a, const AlphaChain& b, int n);

struct SculptureSearch {
  int max_dim = -1;  // -1: the number of event classes of h
  int cap = 6;
};

// Smallest bulk that h embeds into, if any within the bound.
std::optional<Sculpture> is_sculpture(const HDA& h, SculptureSearch opts = {});

// cls[e] names the class of event e; classes keep their first member's id.
STStructure quotient_events(const STStructure& st, const std::vector<int>& cls);

}  // namespace truecc
