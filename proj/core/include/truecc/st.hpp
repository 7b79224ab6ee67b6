#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "truecc/error.hpp"
#include "truecc/eventset.hpp"

namespace truecc {

struct Event {
  std::string id;
  std::string label;
  bool operator==(const Event&) const = default;
};

struct STConfig {
  EventSet S = 0;
  EventSet T = 0;
  int dim() const { return count(S) + count(T); }
  EventSet running() const { return S & ~T; }
  bool operator==(const STConfig&) const = default;
};

// Dimension first, then lexicographic on S, then on T.
bool canonical_less(const STConfig& a, const STConfig& b);

inline bool config_subset(const STConfig& a, const STConfig& b) {
  return subset(a.S, b.S) && subset(a.T, b.T);
}

// Strict: every (S,T) has (S,S). Weak: some (S',S') with S a subset of S'.
enum class Mode { Strict, Weak };

const char* mode_name(Mode m);

class STStructure {
 public:
  STStructure() = default;

  const std::vector<Event>& events() const { return events_; }
  const std::vector<STConfig>& configs() const { return configs_; }
  std::size_t size() const { return configs_.size(); }
  int event_count() const { return static_cast<int>(events_.size()); }
  EventSet all_events() const { return full_set(event_count()); }
  Mode mode() const { return mode_; }

  bool contains(const STConfig& c) const;
  // Index of c in configs(), or -1.
  int index_of(const STConfig& c) const;

  int event_index(std::string_view id) const;
  const std::string& id(int e) const { return events_[e].id; }
  const std::string& label(int e) const { return events_[e].label; }

  EventSet to_set(const std::vector<std::string>& ids) const;
  std::vector<std::string> ids(EventSet s) const;

  // "(ab,a)" when every id is one character, "({x,y},{x})" otherwise; "{}" is empty.
  std::string format(EventSet s) const;
  std::string format(const STConfig& c) const;
  STConfig parse_config(std::string_view text) const;

  bool operator==(const STStructure& o) const {
    return events_ == o.events_ && configs_ == o.configs_;
  }

 private:
  friend STStructure make_st(std::vector<Event>, std::vector<STConfig>, Mode);

  std::vector<Event> events_;
  std::vector<STConfig> configs_;
  std::vector<std::pair<EventSet, EventSet>> lookup_;
  Mode mode_ = Mode::Strict;
  bool compact_ = true;
};

// Sorts events by id after validating ids and labels; returns old position -> new position.
std::vector<int> canonicalize_events(std::vector<Event>& events);
EventSet remap_set(EventSet s, const std::vector<int>& pos);

using RawConfig = std::pair<std::vector<std::string>, std::vector<std::string>>;

// Masks in `configs` refer to positions in `events` as given; the result
// re-sorts events by id and remaps every mask.
STStructure make_st(std::vector<Event> events, std::vector<STConfig> configs,
                    Mode mode = Mode::Strict);

STStructure validate_st(std::vector<Event> events, const std::vector<RawConfig>& configs,
                        Mode mode = Mode::Strict);

// Compact literal form: events "a b" or "a:label b:label", configs "(,) (a,) (a,a)".
STStructure parse_st(std::string_view events, std::string_view configs, Mode mode = Mode::Strict);

// Re-validates the same events with a different config set.
STStructure with_configs(const STStructure& st, std::vector<STConfig> configs);

struct Witness {
  int rule = 0;
  std::vector<STConfig> configs;
  std::optional<STConfig> missing;
  int event = -1;
};

struct Check {
  bool holds = true;
  std::optional<Witness> witness;
};

Check check_rooted(const STStructure& st);
Check check_connected(const STStructure& st);
Check check_bounded_unions(const STStructure& st);
Check check_bounded_intersections(const STStructure& st);
Check is_adjacent_closed(const STStructure& st);
Check closed_under_single_events(const STStructure& st);

struct PropertyReport {
  Mode mode = Mode::Strict;
  Check rooted, connected, unions, intersections, adjacent_closed, single_events;
  bool stable() const {
    return rooted.holds && connected.holds && unions.holds && intersections.holds;
  }
};

PropertyReport property_report(const STStructure& st);

enum class StepKind { S, T };

struct Step {
  STConfig source;
  STConfig target;
  StepKind kind = StepKind::S;
  int event = -1;
  bool operator==(const Step&) const = default;
};

struct Path {
  STConfig start;
  std::vector<Step> steps;
  bool rooted() const { return start == STConfig{}; }
  STConfig end() const { return steps.empty() ? start : steps.back().target; }
  std::size_t length() const { return steps.size(); }
};

std::vector<Step> steps_from(const STStructure& st, const STConfig& c);
std::vector<Step> steps_into(const STStructure& st, const STConfig& c);

std::vector<Path> enumerate_rooted_paths(const STStructure& st, const STConfig& target,
                                         std::size_t bound = 100000);

struct TraceEntry {
  std::string label;
  int n = 0;
  bool operator==(const TraceEntry&) const = default;
};

using STTrace = std::vector<TraceEntry>;

STTrace st_trace(const STStructure& st, const Path& path);
std::string format_trace(const STTrace& trace);

using EventPair = std::pair<int, int>;

// Unordered pairs reported with first < second.
std::vector<EventPair> concurrency(const STStructure& st, const STConfig& c);
// Ordered pairs (e, e') with e a cause of e'.
std::vector<EventPair> causality(const STStructure& st, const STConfig& c);

bool in_conflict(const STStructure& st, EventSet events);
bool in_conflict(const STStructure& st, const std::vector<std::string>& ids);

bool cc_equivalent(const STStructure& a, const STConfig& ca, const STStructure& b,
                   const STConfig& cb);
// Every config of b has a cc-equivalent config in a.
bool cc_simulates(const STStructure& a, const STStructure& b);

STStructure reachable_part(const STStructure& st);

// f maps event positions of a to event positions of b, -1 where undefined.
bool is_st_morphism(const STStructure& a, const STStructure& b, const std::vector<int>& f);

}  // namespace truecc
