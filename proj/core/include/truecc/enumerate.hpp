#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "truecc/st.hpp"

namespace truecc {

// Events "a", "b", ... each labelled by its own id.
std::vector<Event> letter_events(int n);

// Every rooted connected strict structure over letter_events(n), in a fixed order.
// Returns the number visited.
std::size_t for_each_rooted_connected(int n, const std::function<void(const STStructure&)>& fn);

// A random rooted connected strict structure over letter_events(n). Each
// config with a predecessor is kept with probability p, then the t-steps up to
// its corner are added.
STStructure random_rooted_connected(int n, std::mt19937_64& rng, double p = 0.5);

}  // namespace truecc
