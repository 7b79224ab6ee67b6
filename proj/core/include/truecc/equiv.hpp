#pragma once

#include <optional>
#include <string>
#include <vector>

#include "truecc/related.hpp"
#include "truecc/st.hpp"

namespace truecc {

// Event map a -> b by position.
using EventBijection = std::vector<int>;

std::optional<EventBijection> st_isomorphic(const STStructure& a, const STStructure& b);
std::optional<EventBijection> config_isomorphic(const ConfigStructure& a, const ConfigStructure& b);
std::optional<EventBijection> event_structure_isomorphic(const InpureEventStructure& a,
                                                         const InpureEventStructure& b);

struct BisimResult {
  bool holds = false;
  // Number of triples in the greatest fixpoint.
  std::size_t relation_size = 0;
  // On failure: moves from the root pair to a pair where some move cannot be
  // matched, ending with the unmatched move.
  std::vector<std::string> distinguishing;
  // Whether adding the mirrored backward clause changes the verdict.
  bool mirrored_back_agrees = true;
};

BisimResult st_h_bisimilar(const STStructure& a, const STStructure& b);
BisimResult st_hh_bisimilar(const STStructure& a, const STStructure& b);

// History-preserving bisimulations on configuration structures, with
// single-event steps and causality-preserving bijections.
BisimResult cs_hh_bisimilar(const ConfigStructure& a, const ConfigStructure& b);

struct StepGraph {
  struct Edge {
    int from = 0;
    int to = 0;
    StepKind kind = StepKind::S;
    int event = -1;
    std::string label;
  };
  std::vector<STConfig> nodes;
  std::vector<Edge> edges;
};

StepGraph oracle_step_graph(const STStructure& st);

}  // namespace truecc
