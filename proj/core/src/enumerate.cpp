#include "truecc/enumerate.hpp"

#include <algorithm>

namespace truecc {

namespace {

std::vector<STConfig> all_configs(int n) {
  std::vector<STConfig> out;
  for (EventSet S = 0; S <= full_set(n); ++S)
    for (EventSet T = 0; T <= S; ++T)
      if (subset(T, S)) out.push_back({S, T});
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

bool is_step(const STConfig& from, const STConfig& to) {
  if (from.T == to.T) return subset(from.S, to.S) && count(to.S & ~from.S) == 1;
  return from.S == to.S && subset(from.T, to.T) && count(to.T & ~from.T) == 1;
}

}  // namespace

std::vector<Event> letter_events(int n) {
  if (n > 26) throw Error(Errc::InvalidArgument, "at most 26 letter events");
  std::vector<Event> out;
  for (int e = 0; e < n; ++e) {
    std::string id(1, static_cast<char>('a' + e));
    out.push_back({id, id});
  }
  return out;
}

std::size_t for_each_rooted_connected(int n, const std::function<void(const STStructure&)>& fn) {
  const auto events = letter_events(n);
  const auto cf = all_configs(n);
  const int m = static_cast<int>(cf.size());
  std::vector<std::vector<int>> pred(m);
  std::vector<int> corner(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < i; ++j)
      if (is_step(cf[j], cf[i])) pred[i].push_back(j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (cf[j].S == cf[i].S && cf[j].T == cf[i].S) corner[i] = j;

  std::vector<char> in(m, 0);
  std::size_t visited = 0;
  std::function<void(int)> rec = [&](int k) {
    if (k == m) {
      std::vector<STConfig> chosen;
      for (int i = 0; i < m; ++i) {
        if (!in[i]) continue;
        if (!in[corner[i]]) return;
        chosen.push_back(cf[i]);
      }
      ++visited;
      fn(make_st(events, std::move(chosen)));
      return;
    }
    bool reachable = k == 0;
    for (int p : pred[k]) reachable = reachable || in[p];
    if (reachable) {
      in[k] = 1;
      rec(k + 1);
      in[k] = 0;
    }
    if (k != 0) rec(k + 1);
  };
  rec(0);
  return visited;
}

STStructure random_rooted_connected(int n, std::mt19937_64& rng, double p) {
  const auto cf = all_configs(n);
  std::bernoulli_distribution keep(p);
  std::vector<STConfig> chosen{STConfig{}};
  auto present = [&](const STConfig& c) { return std::find(chosen.begin(), chosen.end(), c) != chosen.end(); };
  for (std::size_t i = 1; i < cf.size(); ++i) {
    bool reachable = std::any_of(chosen.begin(), chosen.end(), [&](const STConfig& d) { return is_step(d, cf[i]); });
    if (reachable && keep(rng)) chosen.push_back(cf[i]);
  }
  const std::size_t base = chosen.size();
  for (std::size_t i = 0; i < base; ++i) {
    const STConfig c = chosen[i];
    STConfig up = c;
    for (int e = 0; e < n; ++e)
      if (has(c.running(), e)) {
        up.T |= bit(e);
        if (!present(up)) chosen.push_back(up);
      }
  }
  return make_st(letter_events(n), std::move(chosen));
}

}  // namespace truecc
