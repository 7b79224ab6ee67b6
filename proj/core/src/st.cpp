#include "truecc/st.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace truecc {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DuplicateEvent: return "DuplicateEvent";
    case Errc::TooManyEvents: return "TooManyEvents";
    case Errc::UndeclaredEvent: return "UndeclaredEvent";
    case Errc::ConstraintTnotSubsetS: return "ConstraintTnotSubsetS";
    case Errc::MissingClosure: return "MissingClosure";
    case Errc::ConfigNotInStructure: return "ConfigNotInStructure";
    case Errc::TargetNotInStructure: return "TargetNotInStructure";
    case Errc::NotRooted: return "NotRooted";
    case Errc::NotStableInput: return "NotStableInput";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::CubicalLawViolation: return "CubicalLawViolation";
    case Errc::LabelMismatch: return "LabelMismatch";
    case Errc::PartialMap: return "PartialMap";
    case Errc::NoInitial: return "NoInitial";
    case Errc::CellNotFound: return "CellNotFound";
    case Errc::CyclicInput: return "CyclicInput";
    case Errc::DimensionCap: return "DimensionCap";
    case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Errc::LabelConflictInClass: return "LabelConflictInClass";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::EmptyRefinementImage: return "EmptyRefinementImage";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::TnotSubsetS: return "TnotSubsetS";
    case Errc::SCOverlap: return "SCOverlap";
    case Errc::MissingDiagonalWithC: return "MissingDiagonalWithC";
    case Errc::ProjectionViolatesSTConstraint: return "ProjectionViolatesSTConstraint";
    case Errc::InvalidValuation: return "InvalidValuation";
    case Errc::ParseError: return "ParseError";
    case Errc::SchemaError: return "SchemaError";
    case Errc::UnknownSubcommand: return "UnknownSubcommand";
  }
  return "Unknown";
}

const char* mode_name(Mode m) { return m == Mode::Strict ? "strict" : "weak"; }

bool canonical_less(const STConfig& a, const STConfig& b) {
  int da = a.dim(), db = b.dim();
  if (da != db) return da < db;
  if (a.S != b.S) return lex_less(a.S, b.S);
  return lex_less(a.T, b.T);
}

bool STStructure::contains(const STConfig& c) const {
  return std::binary_search(lookup_.begin(), lookup_.end(), std::pair{c.S, c.T});
}

int STStructure::index_of(const STConfig& c) const {
  auto it = std::lower_bound(configs_.begin(), configs_.end(), c, canonical_less);
  if (it == configs_.end() || !(*it == c)) return -1;
  return static_cast<int>(it - configs_.begin());
}

int STStructure::event_index(std::string_view id) const {
  auto it = std::lower_bound(events_.begin(), events_.end(), id,
                             [](const Event& e, std::string_view v) { return e.id < v; });
  if (it == events_.end() || it->id != id) return -1;
  return static_cast<int>(it - events_.begin());
}

EventSet STStructure::to_set(const std::vector<std::string>& ids) const {
  EventSet s = 0;
  for (const auto& x : ids) {
    int e = event_index(x);
    if (e < 0) throw Error(Errc::UndeclaredEvent, "event '" + x + "' is not declared");
    s |= bit(e);
  }
  return s;
}

std::vector<std::string> STStructure::ids(EventSet s) const {
  std::vector<std::string> out;
  for (int e : members(s)) out.push_back(events_[e].id);
  return out;
}

std::string STStructure::format(EventSet s) const {
  if (s == 0) return "{}";
  std::string out;
  if (compact_) {
    for (int e : members(s)) out += events_[e].id;
    return out;
  }
  out = "{";
  bool first = true;
  for (int e : members(s)) {
    if (!first) out += ",";
    out += events_[e].id;
    first = false;
  }
  return out + "}";
}

std::string STStructure::format(const STConfig& c) const {
  return "(" + format(c.S) + "," + format(c.T) + ")";
}

namespace {

EventSet parse_set_text(const STStructure& st, std::string_view text) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
    return v;
  };
  text = trim(text);
  std::vector<std::string> ids;
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw Error(Errc::ParseError, "unbalanced braces in set");
    text = text.substr(1, text.size() - 2);
    while (!text.empty()) {
      auto comma = text.find(',');
      auto item = trim(text.substr(0, comma));
      if (!item.empty()) ids.emplace_back(item);
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
  } else {
    for (char ch : text) ids.emplace_back(1, ch);
  }
  return st.to_set(ids);
}

}  // namespace

STConfig STStructure::parse_config(std::string_view text) const {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw Error(Errc::ParseError, "config must be written as (S,T)");
  text = text.substr(1, text.size() - 2);
  int depth = 0;
  std::size_t split = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '{') ++depth;
    if (text[i] == '}') --depth;
    if (text[i] == ',' && depth == 0) {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) throw Error(Errc::ParseError, "config needs two components");
  return STConfig{parse_set_text(*this, text.substr(0, split)),
                  parse_set_text(*this, text.substr(split + 1))};
}

std::vector<int> canonicalize_events(std::vector<Event>& events) {
  const int n = static_cast<int>(events.size());
  if (n > kMaxEvents) throw Error(Errc::TooManyEvents, std::to_string(n) + " events");
  for (const auto& e : events) {
    if (e.id.empty()) throw Error(Errc::InvalidArgument, "empty event id");
    if (e.label.empty()) throw Error(Errc::InvalidArgument, "empty label for event " + e.id);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return events[a].id < events[b].id; });
  for (int k = 1; k < n; ++k)
    if (events[order[k]].id == events[order[k - 1]].id)
      throw Error(Errc::DuplicateEvent, events[order[k]].id);
  std::vector<int> pos(n);
  std::vector<Event> sorted;
  for (int k = 0; k < n; ++k) {
    pos[order[k]] = k;
    sorted.push_back(std::move(events[order[k]]));
  }
  events = std::move(sorted);
  return pos;
}

EventSet remap_set(EventSet s, const std::vector<int>& pos) {
  if (!subset(s, full_set(static_cast<int>(pos.size()))))
    throw Error(Errc::UndeclaredEvent, "set mentions an undeclared event");
  EventSet r = 0;
  for (int e : members(s)) r |= bit(pos[e]);
  return r;
}

STStructure make_st(std::vector<Event> events, std::vector<STConfig> configs, Mode mode) {
  auto pos = canonicalize_events(events);
  STStructure st;
  st.mode_ = mode;
  st.events_ = std::move(events);
  for (const auto& e : st.events_) {
    if (e.id.size() != 1 || std::string_view("{}(), ").find(e.id[0]) != std::string_view::npos)
      st.compact_ = false;
  }
  auto remap = [&](EventSet s) { return remap_set(s, pos); };
  for (auto& c : configs) {
    c = STConfig{remap(c.S), remap(c.T)};
    if (!subset(c.T, c.S))
      throw Error(Errc::ConstraintTnotSubsetS, "T is not a subset of S in " + st.format(c));
  }
  std::sort(configs.begin(), configs.end(), canonical_less);
  configs.erase(std::unique(configs.begin(), configs.end()), configs.end());
  st.configs_ = std::move(configs);
  for (const auto& c : st.configs_) st.lookup_.emplace_back(c.S, c.T);
  std::sort(st.lookup_.begin(), st.lookup_.end());

  for (const auto& c : st.configs_) {
    if (mode == Mode::Strict) {
      if (!st.contains({c.S, c.S}))
        throw Error(Errc::MissingClosure, st.format(STConfig{c.S, c.S}) + " is absent for " + st.format(c));
    } else {
      bool ok = std::any_of(st.configs_.begin(), st.configs_.end(), [&](const STConfig& d) {
        return d.S == d.T && subset(c.S, d.S);
      });
      if (!ok) throw Error(Errc::MissingClosure, "no corner above " + st.format(c));
    }
  }
  return st;
}

STStructure validate_st(std::vector<Event> events, const std::vector<RawConfig>& raw, Mode mode) {
  if (events.size() > static_cast<std::size_t>(kMaxEvents))
    throw Error(Errc::TooManyEvents, std::to_string(events.size()) + " events");
  std::vector<std::pair<std::string, int>> index;
  for (int k = 0; k < static_cast<int>(events.size()); ++k) index.emplace_back(events[k].id, k);
  std::sort(index.begin(), index.end());
  auto lookup = [&](const std::string& id) {
    auto it = std::lower_bound(index.begin(), index.end(), std::pair{id, -1});
    if (it == index.end() || it->first != id)
      throw Error(Errc::UndeclaredEvent, "event '" + id + "' is not declared");
    return it->second;
  };
  std::vector<STConfig> configs;
  for (const auto& [s, t] : raw) {
    STConfig c;
    for (const auto& id : s) c.S |= bit(lookup(id));
    for (const auto& id : t) c.T |= bit(lookup(id));
    configs.push_back(c);
  }
  return make_st(std::move(events), std::move(configs), mode);
}

namespace {

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\n' || text[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\n' && text[j] != '\t') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

STStructure parse_st(std::string_view events, std::string_view configs, Mode mode) {
  std::vector<Event> evs;
  for (auto tok : split_ws(events)) {
    auto colon = tok.find(':');
    if (colon == std::string_view::npos)
      evs.push_back({std::string(tok), std::string(tok)});
    else
      evs.push_back({std::string(tok.substr(0, colon)), std::string(tok.substr(colon + 1))});
  }
  // Parse against a configless structure to resolve ids.
  STStructure proto = make_st(evs, {}, mode);
  std::vector<STConfig> cs;
  for (auto tok : split_ws(configs)) cs.push_back(proto.parse_config(tok));
  return make_st(proto.events(), std::move(cs), mode);
}

STStructure with_configs(const STStructure& st, std::vector<STConfig> configs) {
  return make_st(st.events(), std::move(configs), st.mode());
}

Check check_rooted(const STStructure& st) {
  if (st.contains(STConfig{})) return {};
  return {false, Witness{0, {}, STConfig{}, -1}};
}

namespace {

bool has_predecessor(const STStructure& st, const STConfig& c) {
  for (int e : members(c.running()))
    if (st.contains({c.S & ~bit(e), c.T})) return true;
  for (int e : members(c.T))
    if (st.contains({c.S, c.T & ~bit(e)})) return true;
  return false;
}

bool bounded(const STStructure& st, const STConfig& u, STConfig* bound) {
  for (const auto& d : st.configs()) {
    if (config_subset(u, d)) {
      if (bound) *bound = d;
      return true;
    }
  }
  return false;
}

template <class Combine>
Check check_bounded(const STStructure& st, Combine combine) {
  const auto& cs = st.configs();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      STConfig r = combine(cs[i], cs[j]);
      if (st.contains(r)) continue;
      STConfig bound;
      if (!bounded(st, {cs[i].S | cs[j].S, cs[i].T | cs[j].T}, &bound)) continue;
      return {false, Witness{0, {cs[i], cs[j], bound}, r, -1}};
    }
  }
  return {};
}

}  // namespace

Check check_connected(const STStructure& st) {
  for (const auto& c : st.configs()) {
    if (c == STConfig{}) continue;
    if (!has_predecessor(st, c)) return {false, Witness{0, {c}, std::nullopt, -1}};
  }
  return {};
}

Check check_bounded_unions(const STStructure& st) {
  return check_bounded(st, [](const STConfig& a, const STConfig& b) {
    return STConfig{a.S | b.S, a.T | b.T};
  });
}

Check check_bounded_intersections(const STStructure& st) {
  return check_bounded(st, [](const STConfig& a, const STConfig& b) {
    return STConfig{a.S & b.S, a.T & b.T};
  });
}

Check is_adjacent_closed(const STStructure& st) {
  const int n = st.event_count();
  auto fail = [](int rule, std::vector<STConfig> premise, STConfig missing) {
    return Check{false, Witness{rule, std::move(premise), missing, -1}};
  };
  for (const auto& c : st.configs()) {
    const EventSet S = c.S, T = c.T;
    for (int e = 0; e < n; ++e) {
      if (has(S, e) || !st.contains({S | bit(e), T})) continue;
      for (int f = 0; f < n; ++f) {
        if (f == e || has(S, f)) continue;
        STConfig top{S | bit(e) | bit(f), T};
        if (st.contains(top) && !st.contains({S | bit(f), T}))
          return fail(1, {c, {S | bit(e), T}, top}, {S | bit(f), T});
      }
    }
    for (int e = 0; e < n; ++e) {
      if (has(S, e) || !st.contains({S | bit(e), T})) continue;
      for (int f = 0; f < n; ++f) {
        if (f == e || has(T, f)) continue;
        STConfig side{S | bit(e), T | bit(f)};
        if (st.contains(side) && !st.contains({S, T | bit(f)}))
          return fail(2, {c, {S | bit(e), T}, side}, {S, T | bit(f)});
      }
    }
    for (int e = 0; e < n; ++e) {
      if (has(S, e) || !st.contains({S | bit(e), T})) continue;
      for (int f = 0; f < n; ++f) {
        if (f == e || has(T, f)) continue;
        STConfig side{S, T | bit(f)};
        if (st.contains(side) && !st.contains({S | bit(e), T | bit(f)}))
          return fail(3, {c, {S | bit(e), T}, side}, {S | bit(e), T | bit(f)});
      }
    }
    for (int e = 0; e < n; ++e) {
      if (has(T, e) || !st.contains({S, T | bit(e)})) continue;
      for (int f = 0; f < n; ++f) {
        if (f == e || has(T, f)) continue;
        STConfig top{S, T | bit(e) | bit(f)};
        if (st.contains(top) && !st.contains({S, T | bit(f)}))
          return fail(4, {c, {S, T | bit(e)}, top}, {S, T | bit(f)});
      }
    }
  }
  return {};
}

Check closed_under_single_events(const STStructure& st) {
  for (const auto& c : st.configs()) {
    for (int e : members(c.running())) {
      STConfig term{c.S, c.T | bit(e)};
      if (!st.contains(term)) return {false, Witness{1, {c}, term, e}};
    }
    for (int e : members(c.running())) {
      STConfig drop{c.S & ~bit(e), c.T};
      if (!st.contains(drop)) return {false, Witness{2, {c}, drop, e}};
    }
  }
  return {};
}

PropertyReport property_report(const STStructure& st) {
  PropertyReport r;
  r.mode = st.mode();
  r.rooted = check_rooted(st);
  r.connected = check_connected(st);
  r.unions = check_bounded_unions(st);
  r.intersections = check_bounded_intersections(st);
  r.adjacent_closed = is_adjacent_closed(st);
  r.single_events = closed_under_single_events(st);
  return r;
}

std::vector<Step> steps_from(const STStructure& st, const STConfig& c) {
  if (!st.contains(c)) throw Error(Errc::ConfigNotInStructure, st.format(c));
  std::vector<Step> out;
  for (int e = 0; e < st.event_count(); ++e) {
    if (has(c.S, e)) continue;
    STConfig d{c.S | bit(e), c.T};
    if (st.contains(d)) out.push_back({c, d, StepKind::S, e});
  }
  for (int e : members(c.running())) {
    STConfig d{c.S, c.T | bit(e)};
    if (st.contains(d)) out.push_back({c, d, StepKind::T, e});
  }
  return out;
}

std::vector<Step> steps_into(const STStructure& st, const STConfig& c) {
  if (!st.contains(c)) throw Error(Errc::ConfigNotInStructure, st.format(c));
  std::vector<Step> out;
  for (int e : members(c.running())) {
    STConfig d{c.S & ~bit(e), c.T};
    if (st.contains(d)) out.push_back({d, c, StepKind::S, e});
  }
  for (int e : members(c.T)) {
    STConfig d{c.S, c.T & ~bit(e)};
    if (st.contains(d)) out.push_back({d, c, StepKind::T, e});
  }
  return out;
}

std::vector<Path> enumerate_rooted_paths(const STStructure& st, const STConfig& target,
                                         std::size_t bound) {
  if (!st.contains(target)) throw Error(Errc::TargetNotInStructure, st.format(target));
  std::vector<Path> out;
  if (!st.contains(STConfig{}) || bound == 0) return out;

  // Configs from which the target is reachable.
  std::vector<char> live(st.size(), 0);
  std::deque<STConfig> queue{target};
  live[st.index_of(target)] = 1;
  while (!queue.empty()) {
    STConfig c = queue.front();
    queue.pop_front();
    for (const auto& s : steps_into(st, c)) {
      int k = st.index_of(s.source);
      if (!live[k]) {
        live[k] = 1;
        queue.push_back(s.source);
      }
    }
  }
  if (!live[st.index_of(STConfig{})]) return out;

  Path current;
  auto dfs = [&](auto&& self, const STConfig& c) -> void {
    if (out.size() >= bound) return;
    if (c == target) {
      out.push_back(current);
      return;
    }
    for (const auto& s : steps_from(st, c)) {
      if (!config_subset(s.target, target) || !live[st.index_of(s.target)]) continue;
      current.steps.push_back(s);
      self(self, s.target);
      current.steps.pop_back();
    }
  };
  dfs(dfs, STConfig{});
  return out;
}

STTrace st_trace(const STStructure& st, const Path& path) {
  if (!path.rooted()) throw Error(Errc::NotRooted, "trace needs a path starting at the root");
  STTrace out;
  std::vector<int> started(st.event_count(), 0);
  for (std::size_t k = 0; k < path.steps.size(); ++k) {
    const Step& s = path.steps[k];
    if (s.kind == StepKind::S) {
      started[s.event] = static_cast<int>(k) + 1;
      out.push_back({st.label(s.event), 0});
    } else {
      if (started[s.event] == 0)
        throw Error(Errc::InvalidArgument, "t-step for an event never started on the path");
      out.push_back({st.label(s.event), started[s.event]});
    }
  }
  return out;
}

std::string format_trace(const STTrace& trace) {
  std::string out;
  for (const auto& t : trace) {
    if (!out.empty()) out += ' ';
    out += t.label + "^" + std::to_string(t.n);
  }
  return out;
}

namespace {

std::vector<STConfig> sub_configs(const STStructure& st, const STConfig& c) {
  if (!st.contains(c)) throw Error(Errc::ConfigNotInStructure, st.format(c));
  std::vector<STConfig> out;
  for (const auto& d : st.configs())
    if (config_subset(d, c)) out.push_back(d);
  return out;
}

// Per event e': intersection of T' over sub-configs whose S' contains e'.
std::vector<EventSet> cause_masks(const STStructure& st, const STConfig& c,
                                  const std::vector<STConfig>& subs) {
  std::vector<EventSet> m(st.event_count(), c.S);
  for (const auto& d : subs)
    for (int f : members(d.S)) m[f] &= d.T;
  return m;
}

}  // namespace

std::vector<EventPair> concurrency(const STStructure& st, const STConfig& c) {
  std::set<EventPair> pairs;
  for (const auto& d : sub_configs(st, c)) {
    auto run = members(d.running());
    for (std::size_t i = 0; i < run.size(); ++i)
      for (std::size_t j = i + 1; j < run.size(); ++j) pairs.emplace(run[i], run[j]);
  }
  return {pairs.begin(), pairs.end()};
}

std::vector<EventPair> causality(const STStructure& st, const STConfig& c) {
  auto subs = sub_configs(st, c);
  auto m = cause_masks(st, c, subs);
  std::vector<EventPair> out;
  for (int e : members(c.S))
    for (int f : members(c.S))
      if (e != f && has(m[f], e)) out.emplace_back(e, f);
  return out;
}

bool in_conflict(const STStructure& st, EventSet events) {
  if (!subset(events, st.all_events())) throw Error(Errc::UndeclaredEvent, "event set not declared");
  return std::none_of(st.configs().begin(), st.configs().end(),
                      [&](const STConfig& c) { return subset(events, c.S); });
}

bool in_conflict(const STStructure& st, const std::vector<std::string>& ids) {
  return in_conflict(st, st.to_set(ids));
}

namespace {

struct PomView {
  std::vector<int> ev;
  std::vector<std::string> labels;
  std::vector<std::vector<char>> cause;
  std::vector<std::vector<char>> par;
};

PomView pom_view(const STStructure& st, const STConfig& c) {
  PomView v;
  v.ev = members(c.S);
  const std::size_t n = v.ev.size();
  std::vector<int> local(st.event_count(), -1);
  for (std::size_t i = 0; i < n; ++i) {
    local[v.ev[i]] = static_cast<int>(i);
    v.labels.push_back(st.label(v.ev[i]));
  }
  v.cause.assign(n, std::vector<char>(n, 0));
  v.par.assign(n, std::vector<char>(n, 0));
  for (auto [e, f] : causality(st, c)) v.cause[local[e]][local[f]] = 1;
  for (auto [e, f] : concurrency(st, c)) {
    v.par[local[e]][local[f]] = 1;
    v.par[local[f]][local[e]] = 1;
  }
  return v;
}

}  // namespace

bool cc_equivalent(const STStructure& a, const STConfig& ca, const STStructure& b,
                   const STConfig& cb) {
  PomView x = pom_view(a, ca), y = pom_view(b, cb);
  const std::size_t n = x.ev.size();
  if (n != y.ev.size()) return false;
  auto lx = x.labels, ly = y.labels;
  std::sort(lx.begin(), lx.end());
  std::sort(ly.begin(), ly.end());
  if (lx != ly) return false;
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  auto extend = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || x.labels[i] != y.labels[j]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        std::size_t mk = map[k];
        ok = x.cause[i][k] == y.cause[j][mk] && x.cause[k][i] == y.cause[mk][j] &&
             x.par[i][k] == y.par[j][mk];
      }
      if (!ok) continue;
      map[i] = static_cast<int>(j);
      used[j] = 1;
      if (self(self, i + 1)) return true;
      used[j] = 0;
    }
    map[i] = -1;
    return false;
  };
  return extend(extend, 0);
}

bool cc_simulates(const STStructure& a, const STStructure& b) {
  for (const auto& cb : b.configs()) {
    bool found = std::any_of(a.configs().begin(), a.configs().end(),
                             [&](const STConfig& ca) { return cc_equivalent(a, ca, b, cb); });
    if (!found) return false;
  }
  return true;
}

STStructure reachable_part(const STStructure& st) {
  using Key = std::pair<EventSet, EventSet>;
  std::set<Key> keep;
  for (const auto& c : st.configs()) keep.emplace(c.S, c.T);
  const int n = st.event_count();
  while (true) {
    std::set<Key> reached;
    if (keep.count({0, 0})) {
      std::deque<Key> queue{{0, 0}};
      reached.insert({0, 0});
      while (!queue.empty()) {
        auto [S, T] = queue.front();
        queue.pop_front();
        for (int e = 0; e < n; ++e) {
          Key next = has(S, e) ? Key{S, T | bit(e)} : Key{S | bit(e), T};
          if (has(T, e) || !keep.count(next) || reached.count(next)) continue;
          reached.insert(next);
          queue.push_back(next);
        }
      }
    }
    // Dropping unreachable corners can strand configs that relied on them.
    std::set<Key> next;
    for (const auto& [S, T] : reached) {
      bool ok = st.mode() == Mode::Strict
                    ? reached.count({S, S}) > 0
                    : std::any_of(reached.begin(), reached.end(), [&](const Key& d) {
                        return d.first == d.second && subset(S, d.first);
                      });
      if (ok) next.insert({S, T});
    }
    if (next == keep) {
      std::vector<STConfig> out;
      for (const auto& [S, T] : next) out.push_back({S, T});
      return make_st(st.events(), std::move(out), st.mode());
    }
    keep = std::move(next);
  }
}

bool is_st_morphism(const STStructure& a, const STStructure& b, const std::vector<int>& f) {
  if (f.size() != static_cast<std::size_t>(a.event_count())) return false;
  for (int e = 0; e < a.event_count(); ++e) {
    if (f[e] < 0) continue;
    if (f[e] >= b.event_count() || a.label(e) != b.label(f[e])) return false;
  }
  auto image = [&](EventSet s, bool& ok) {
    EventSet r = 0;
    for (int e : members(s)) {
      if (f[e] < 0) continue;
      if (has(r, f[e])) ok = false;
      r |= bit(f[e]);
    }
    return r;
  };
  for (const auto& c : a.configs()) {
    bool ok = true;
    STConfig d{image(c.S, ok), image(c.T, ok)};
    if (!ok || !b.contains(d)) return false;
  }
  return true;
}

}  // namespace truecc
