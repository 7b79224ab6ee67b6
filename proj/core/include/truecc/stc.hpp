#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "truecc/st.hpp"

namespace truecc {

struct STCConfig {
  EventSet S = 0;
  EventSet T = 0;
  EventSet C = 0;
  STConfig st() const { return {S, T}; }
  bool operator==(const STCConfig&) const = default;
};

// (|S|+|T|+|C|, lex S, lex T, lex C).
bool stc_canonical_less(const STCConfig& a, const STCConfig& b);
// Componentwise inclusion.
inline bool stc_subset(const STCConfig& a, const STCConfig& b) {
  return subset(a.S, b.S) && subset(a.T, b.T) && subset(a.C, b.C);
}

class STCStructure {
 public:
  STCStructure() = default;

  const std::vector<Event>& events() const { return carrier_.events(); }
  const std::vector<STCConfig>& configs() const { return configs_; }
  std::size_t size() const { return configs_.size(); }
  int event_count() const { return carrier_.event_count(); }

  bool contains(const STCConfig& c) const;
  int index_of(const STCConfig& c) const;
  int event_index(std::string_view id) const { return carrier_.event_index(id); }
  const std::string& id(int e) const { return carrier_.id(e); }
  const std::string& label(int e) const { return carrier_.label(e); }
  EventSet to_set(const std::vector<std::string>& ids) const { return carrier_.to_set(ids); }
  std::vector<std::string> ids(EventSet s) const { return carrier_.ids(s); }

  std::string format(EventSet s) const { return carrier_.format(s); }
  std::string format(const STCConfig& c) const;
  STCConfig parse_config(std::string_view text) const;

  bool operator==(const STCStructure& o) const {
    return events() == o.events() && configs_ == o.configs_;
  }

 private:
  friend STCStructure make_stc(std::vector<Event>, std::vector<STCConfig>);

  // Events only; used for id lookup and formatting.
  STStructure carrier_;
  std::vector<STCConfig> configs_;
};

// Masks refer to positions in `events` as given; events are re-sorted by id.
STCStructure make_stc(std::vector<Event> events, std::vector<STCConfig> configs);

struct RawSTCConfig {
  std::vector<std::string> S, T, C;
};
STCStructure validate_stc(std::vector<Event> events, const std::vector<RawSTCConfig>& configs);

// Events as for parse_st; configs "(,,) (d,,e) (de,de,f)".
STCStructure parse_stc(std::string_view events, std::string_view configs);

enum class STCStepKind : std::uint8_t { S, T, CS1, CT1, CSn, CTn, CSpm, CTpm };
const char* stc_step_kind_name(STCStepKind k);

using STCStepMask = unsigned;
constexpr STCStepMask step_mask(STCStepKind k) { return 1U << static_cast<unsigned>(k); }
inline constexpr STCStepMask kAllSTCSteps = 0xFFU;

struct STCStep {
  STCConfig source;
  STCConfig target;
  STCStepKind kind = STCStepKind::S;
  int event = -1;
  bool operator==(const STCStep&) const = default;
};

// Whether source -> target is a step of kind k on some event; returns it or -1.
int stc_step_event(STCStepKind k, const STCConfig& source, const STCConfig& target);

// One entry per (target, kind) pair, targets in config order.
std::vector<STCStep> stc_steps(const STCStructure& stc, const STCConfig& c,
                               STCStepMask allowed = kAllSTCSteps);

STCStructure st_to_stc(const STStructure& st);
STStructure stc_project_st(const STCStructure& stc);

std::vector<STCConfig> maximal_configs(const STCStructure& stc);

enum class ChuValue : std::uint8_t { Zero, Running, Done, Cancelled };
// "0", "~", "1", "x".
const char* chu_symbol(ChuValue v);
ChuValue parse_chu_symbol(std::string_view s);

// Cancel: 0 < ~ < 1 and 0 < x. Enable: additionally x < 0.
enum class ChuOrder { Cancel, Enable };
bool chu_leq(ChuValue a, ChuValue b, ChuOrder order = ChuOrder::Cancel);

struct ChuSpace {
  int K = 3;
  std::vector<Event> events;
  // states[x][e] is the value of event e in state x.
  std::vector<std::vector<ChuValue>> states;
  bool operator==(const ChuSpace&) const = default;
};

ChuSpace chu3_encode(const STStructure& st);
STStructure chu3_decode(const ChuSpace& chu);
ChuSpace chu4_encode(const STCStructure& stc);
STCStructure chu4_decode(const ChuSpace& chu);

STCStructure gen_angelic();
STCStructure gen_demonic();
STCStructure gen_asym_stc();
// Events s, b1..bkMax.
STCStructure gen_shutdown_backup(int kMax);

}  // namespace truecc
