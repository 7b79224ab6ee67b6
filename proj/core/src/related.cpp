#include "truecc/related.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace truecc {

namespace {

constexpr int kPowersetCap = 20;

std::vector<std::string_view> tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\n')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\n') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

// Visits every Z with lo <= Z <= hi.
template <class F>
bool all_between(EventSet lo, EventSet hi, F&& pred) {
  EventSet free = hi & ~lo;
  EventSet sub = 0;
  while (true) {
    if (!pred(lo | sub)) return false;
    if (sub == free) return true;
    sub = (sub - free) & free;
  }
}

template <class F>
void for_subsets(EventSet s, F&& f) {
  EventSet sub = 0;
  while (true) {
    f(sub);
    if (sub == s) return;
    sub = (sub - s) & s;
  }
}

}  // namespace

bool set_less(EventSet a, EventSet b) {
  if (count(a) != count(b)) return count(a) < count(b);
  return lex_less(a, b);
}

bool ConfigStructure::contains(EventSet x) const {
  return std::binary_search(configs.begin(), configs.end(), x, set_less);
}

ConfigStructure make_config_structure(std::vector<Event> events, std::vector<EventSet> configs) {
  auto pos = canonicalize_events(events);
  for (auto& x : configs) x = remap_set(x, pos);
  std::sort(configs.begin(), configs.end(), set_less);
  configs.erase(std::unique(configs.begin(), configs.end()), configs.end());
  return ConfigStructure{std::move(events), std::move(configs)};
}

ConfigStructure validate_config_structure(std::vector<Event> events,
                                          const std::vector<std::vector<std::string>>& configs) {
  STStructure proto = make_st(events, {});
  std::vector<EventSet> sets;
  for (const auto& ids : configs) sets.push_back(proto.to_set(ids));
  return make_config_structure(proto.events(), std::move(sets));
}

ConfigStructure parse_cs(std::string_view events, std::string_view configs) {
  STStructure proto = parse_st(events, "");
  std::vector<EventSet> sets;
  for (auto tok : tokens(configs)) {
    std::vector<std::string> ids;
    if (tok != "{}")
      for (char ch : tok) ids.emplace_back(1, ch);
    sets.push_back(proto.to_set(ids));
  }
  return make_config_structure(proto.events(), std::move(sets));
}

std::vector<AsyncStep> async_steps(const ConfigStructure& c) {
  std::vector<AsyncStep> out;
  for (EventSet x : c.configs)
    for (EventSet y : c.configs) {
      if (!subset(x, y)) continue;
      if (all_between(x, y, [&](EventSet z) { return c.contains(z); })) out.push_back({x, y});
    }
  return out;
}

StableCheck stability(const ConfigStructure& c) {
  StableCheck r;
  r.rooted = c.contains(0);
  r.connected = std::all_of(c.configs.begin(), c.configs.end(), [&](EventSet x) {
    if (x == 0) return true;
    for (int e : members(x))
      if (c.contains(x & ~bit(e))) return true;
    return false;
  });
  auto is_bounded = [&](EventSet u) {
    return std::any_of(c.configs.begin(), c.configs.end(), [&](EventSet z) { return subset(u, z); });
  };
  r.unions = r.intersections = true;
  for (EventSet x : c.configs)
    for (EventSet y : c.configs) {
      if (!is_bounded(x | y)) continue;
      if (!c.contains(x | y)) r.unions = false;
      if (!c.contains(x & y)) r.intersections = false;
    }
  return r;
}

bool is_config_morphism(const ConfigStructure& a, const ConfigStructure& b, const std::vector<int>& f) {
  if (f.size() != a.events.size()) return false;
  for (int e = 0; e < a.event_count(); ++e) {
    if (f[e] < 0) continue;
    if (f[e] >= b.event_count() || a.events[e].label != b.events[f[e]].label) return false;
  }
  for (EventSet x : a.configs) {
    EventSet img = 0;
    for (int e : members(x)) {
      if (f[e] < 0) continue;
      if (has(img, f[e])) return false;
      img |= bit(f[e]);
    }
    if (!b.contains(img)) return false;
  }
  return true;
}

STStructure cintost(const ConfigStructure& c) {
  std::vector<STConfig> out;
  for (EventSet x : c.configs) out.push_back({x, x});
  return make_st(c.events, std::move(out));
}

STStructure cintost2(const ConfigStructure& c) {
  std::vector<STConfig> out;
  for (EventSet x : c.configs) out.push_back({x, x});
  for (const auto& s : async_steps(c))
    if (s.from != s.to) out.push_back({s.to, s.from});
  return make_st(c.events, std::move(out));
}

STStructure cintost3(const ConfigStructure& c) {
  auto st = stability(c);
  if (!st.stable()) {
    std::string why = !st.rooted ? "not rooted" : !st.connected ? "not connected"
                      : !st.unions ? "not closed under bounded unions"
                                   : "not closed under bounded intersections";
    throw Error(Errc::NotStableInput, why);
  }
  std::set<std::pair<EventSet, EventSet>> cfgs;
  for (EventSet x : c.configs) {
    cfgs.emplace(x, x);
    for (int e = 0; e < c.event_count(); ++e)
      if (!has(x, e) && c.contains(x | bit(e))) cfgs.emplace(x | bit(e), x);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<EventSet, EventSet>> cur(cfgs.begin(), cfgs.end());
    auto bounded = [&](EventSet S, EventSet T) {
      return std::any_of(cur.begin(), cur.end(), [&](const auto& d) {
        return subset(S, d.first) && subset(T, d.second);
      });
    };
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        auto [S1, T1] = cur[i];
        auto [S2, T2] = cur[j];
        if (!bounded(S1 | S2, T1 | T2)) continue;
        grew |= cfgs.emplace(S1 | S2, T1 | T2).second;
        grew |= cfgs.emplace(S1 & S2, T1 & T2).second;
      }
  }
  std::vector<STConfig> out;
  for (auto [S, T] : cfgs) out.push_back({S, T});
  return make_st(c.events, std::move(out));
}

ConfigStructure stintoc(const STStructure& st) {
  std::vector<EventSet> out;
  for (const auto& c : st.configs())
    if (c.S == c.T) out.push_back(c.S);
  return make_config_structure(st.events(), std::move(out));
}

InpureEventStructure make_event_structure(std::vector<Event> events, std::vector<Enabling> enabling) {
  auto pos = canonicalize_events(events);
  for (auto& en : enabling) en = {remap_set(en.Z, pos), remap_set(en.Y, pos)};
  std::sort(enabling.begin(), enabling.end(), [](const Enabling& a, const Enabling& b) {
    if (a.Z != b.Z) return set_less(a.Z, b.Z);
    return set_less(a.Y, b.Y);
  });
  enabling.erase(std::unique(enabling.begin(), enabling.end()), enabling.end());
  return InpureEventStructure{std::move(events), std::move(enabling)};
}

namespace {

std::map<EventSet, std::vector<EventSet>> enablers(const InpureEventStructure& e) {
  std::map<EventSet, std::vector<EventSet>> by_y;
  for (const auto& en : e.enabling) by_y[en.Y].push_back(en.Z);
  return by_y;
}

// True when every Z below y is enabled by some W below x.
bool enabled_from(const std::map<EventSet, std::vector<EventSet>>& by_y, EventSet x, EventSet y) {
  bool ok = true;
  for_subsets(y, [&](EventSet z) {
    if (!ok) return;
    auto it = by_y.find(z);
    if (it == by_y.end()) {
      ok = false;
      return;
    }
    ok = std::any_of(it->second.begin(), it->second.end(),
                     [&](EventSet w) { return subset(w, x); });
  });
  return ok;
}

}  // namespace

std::vector<EventSet> left_closed_configs(const InpureEventStructure& e) {
  if (e.event_count() > kPowersetCap)
    throw Error(Errc::BudgetExceeded, "left-closed configurations need a powerset of the events");
  auto by_y = enablers(e);
  std::vector<EventSet> out;
  for_subsets(full_set(e.event_count()), [&](EventSet x) {
    if (enabled_from(by_y, x, x)) out.push_back(x);
  });
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

std::vector<AsyncStep> async_steps(const InpureEventStructure& e) {
  auto by_y = enablers(e);
  auto l = left_closed_configs(e);
  std::vector<AsyncStep> out;
  for (EventSet x : l)
    for (EventSet y : l)
      if (subset(x, y) && enabled_from(by_y, x, y)) out.push_back({x, y});
  return out;
}

STStructure eintost(const InpureEventStructure& e) {
  std::vector<STConfig> out;
  for (EventSet x : left_closed_configs(e)) out.push_back({x, x});
  for (const auto& s : async_steps(e))
    if (s.from != s.to) out.push_back({s.to, s.from});
  return make_st(e.events, std::move(out));
}

InpureEventStructure stintoe(const STStructure& st) {
  if (!check_rooted(st).holds) throw Error(Errc::PreconditionViolated, "rooted");
  if (!check_connected(st).holds) throw Error(Errc::PreconditionViolated, "connected");
  if (!is_adjacent_closed(st).holds) throw Error(Errc::PreconditionViolated, "adjacent-closed");
  std::vector<Enabling> en;
  for (const auto& c : st.configs()) {
    EventSet x = c.running();
    for_subsets(x, [&](EventSet xp) {
      for_subsets(c.T, [&](EventSet y) { en.push_back({c.T, xp | y}); });
    });
  }
  return make_event_structure(st.events(), std::move(en));
}

}  // namespace truecc
