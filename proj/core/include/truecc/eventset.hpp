#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace truecc {

// Events are numbered by their position in the id-sorted event list.
using EventSet = std::uint64_t;

inline constexpr int kMaxEvents = 64;

constexpr EventSet bit(int e) { return EventSet{1} << e; }
constexpr bool has(EventSet s, int e) { return (s >> e) & 1U; }
constexpr bool subset(EventSet a, EventSet b) { return (a & ~b) == 0; }
constexpr int count(EventSet s) { return std::popcount(s); }
constexpr EventSet full_set(int n) { return n >= 64 ? ~EventSet{0} : bit(n) - 1; }

inline std::vector<int> members(EventSet s) {
  std::vector<int> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

// Lexicographic order on the sorted index lists of two sets.
constexpr bool lex_less(EventSet a, EventSet b) {
  if (a == b) return false;
  int d = std::countr_zero(a ^ b);
  if (has(a, d)) return (b >> d) != 0;
  return (a >> d) == 0;
}

}  // namespace truecc
