#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "truecc/st.hpp"

namespace truecc {

struct ConfigStructure {
  std::vector<Event> events;
  // Sorted by size then lexicographically, without duplicates.
  std::vector<EventSet> configs;

  int event_count() const { return static_cast<int>(events.size()); }
  bool contains(EventSet x) const;
  bool operator==(const ConfigStructure&) const = default;
};

bool set_less(EventSet a, EventSet b);

ConfigStructure make_config_structure(std::vector<Event> events, std::vector<EventSet> configs);
ConfigStructure validate_config_structure(std::vector<Event> events,
                                          const std::vector<std::vector<std::string>>& configs);
// Events as in parse_st; configs are single-character id strings, "{}" for the empty set.
ConfigStructure parse_cs(std::string_view events, std::string_view configs);

struct AsyncStep {
  EventSet from = 0;
  EventSet to = 0;
  bool operator==(const AsyncStep&) const = default;
};

std::vector<AsyncStep> async_steps(const ConfigStructure& c);

struct StableCheck {
  bool rooted = false, connected = false, unions = false, intersections = false;
  bool stable() const { return rooted && connected && unions && intersections; }
};

StableCheck stability(const ConfigStructure& c);

bool is_config_morphism(const ConfigStructure& a, const ConfigStructure& b, const std::vector<int>& f);

STStructure cintost(const ConfigStructure& c);
STStructure cintost2(const ConfigStructure& c);
STStructure cintost3(const ConfigStructure& c);
ConfigStructure stintoc(const STStructure& st);

struct Enabling {
  EventSet Z = 0;
  EventSet Y = 0;
  bool operator==(const Enabling&) const = default;
  auto operator<=>(const Enabling&) const = default;
};

struct InpureEventStructure {
  std::vector<Event> events;
  std::vector<Enabling> enabling;

  int event_count() const { return static_cast<int>(events.size()); }
  bool operator==(const InpureEventStructure&) const = default;
};

InpureEventStructure make_event_structure(std::vector<Event> events, std::vector<Enabling> enabling);

std::vector<EventSet> left_closed_configs(const InpureEventStructure& e);
std::vector<AsyncStep> async_steps(const InpureEventStructure& e);
STStructure eintost(const InpureEventStructure& e);
InpureEventStructure stintoe(const STStructure& st);

}  // namespace truecc
