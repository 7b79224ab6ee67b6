#pragma once

// Brute-force reference computations used to cross-check the library.

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "truecc/st.hpp"

namespace oracle {

using truecc::bit;
using truecc::EventSet;
using truecc::has;
using truecc::STConfig;
using truecc::STStructure;

// Counts rooted paths to `target` by permuting its multiset of moves.
// Move code 2e is "start e", 2e+1 is "terminate e".
inline std::size_t path_count(const STStructure& st, const STConfig& target) {
  std::vector<int> moves;
  for (int e = 0; e < st.event_count(); ++e) {
    if (has(target.S, e)) moves.push_back(2 * e);
    if (has(target.T, e)) moves.push_back(2 * e + 1);
  }
  std::sort(moves.begin(), moves.end());
  std::size_t n = 0;
  do {
    STConfig c;
    bool ok = st.contains(c);
    for (int m : moves) {
      if (!ok) break;
      int e = m / 2;
      if (m % 2 == 0) {
        c.S |= bit(e);
      } else {
        if (!has(c.S, e)) {
          ok = false;
          break;
        }
        c.T |= bit(e);
      }
      ok = st.contains(c);
    }
    if (ok) ++n;
  } while (std::next_permutation(moves.begin(), moves.end()));
  return n;
}

inline std::set<std::pair<int, int>> concurrency(const STStructure& st, const STConfig& c) {
  std::set<std::pair<int, int>> out;
  for (int e = 0; e < st.event_count(); ++e)
    for (int f = e + 1; f < st.event_count(); ++f) {
      if (!has(c.S, e) || !has(c.S, f)) continue;
      for (const auto& d : st.configs()) {
        if (!truecc::config_subset(d, c)) continue;
        if (has(d.S, e) && has(d.S, f) && !has(d.T, e) && !has(d.T, f)) {
          out.emplace(e, f);
          break;
        }
      }
    }
  return out;
}

inline std::set<std::pair<int, int>> causality(const STStructure& st, const STConfig& c) {
  std::set<std::pair<int, int>> out;
  for (int e = 0; e < st.event_count(); ++e)
    for (int f = 0; f < st.event_count(); ++f) {
      if (e == f || !has(c.S, e) || !has(c.S, f)) continue;
      bool all = true;
      for (const auto& d : st.configs()) {
        if (!truecc::config_subset(d, c)) continue;
        if (has(d.S, f) && !has(d.T, e)) {
          all = false;
          break;
        }
      }
      if (all) out.emplace(e, f);
    }
  return out;
}

}  // namespace oracle
