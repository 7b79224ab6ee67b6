#include "truecc/stc.hpp"

#include <algorithm>

namespace truecc {

bool stc_canonical_less(const STCConfig& a, const STCConfig& b) {
  const int da = count(a.S) + count(a.T) + count(a.C);
  const int db = count(b.S) + count(b.T) + count(b.C);
  if (da != db) return da < db;
  if (a.S != b.S) return lex_less(a.S, b.S);
  if (a.T != b.T) return lex_less(a.T, b.T);
  return lex_less(a.C, b.C);
}

bool STCStructure::contains(const STCConfig& c) const { return index_of(c) >= 0; }

int STCStructure::index_of(const STCConfig& c) const {
  auto it = std::lower_bound(configs_.begin(), configs_.end(), c, stc_canonical_less);
  if (it == configs_.end() || !(*it == c)) return -1;
  return static_cast<int>(it - configs_.begin());
}

std::string STCStructure::format(const STCConfig& c) const {
  return "(" + format(c.S) + "," + format(c.T) + "," + format(c.C) + ")";
}

STCConfig STCStructure::parse_config(std::string_view text) const {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw Error(Errc::ParseError, "config must be written as (S,T,C)");
  text = text.substr(1, text.size() - 2);
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t from = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '{') ++depth;
    if (i < text.size() && text[i] == '}') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      parts.push_back(text.substr(from, i - from));
      from = i + 1;
    }
  }
  if (parts.size() != 3) throw Error(Errc::ParseError, "config needs three components");
  auto set = [&](std::string_view p) {
    return carrier_.parse_config("(" + std::string(p) + ",{})").S;
  };
  return {set(parts[0]), set(parts[1]), set(parts[2])};
}

STCStructure make_stc(std::vector<Event> events, std::vector<STCConfig> configs) {
  auto pos = canonicalize_events(events);
  STCStructure stc;
  stc.carrier_ = make_st(std::move(events), {});
  for (auto& c : configs) {
    c = {remap_set(c.S, pos), remap_set(c.T, pos), remap_set(c.C, pos)};
    if (!subset(c.T, c.S)) throw Error(Errc::TnotSubsetS, "T is not a subset of S in " + stc.format(c));
    if (c.S & c.C) throw Error(Errc::SCOverlap, "S and C overlap in " + stc.format(c));
  }
  std::sort(configs.begin(), configs.end(), stc_canonical_less);
  configs.erase(std::unique(configs.begin(), configs.end()), configs.end());
  stc.configs_ = std::move(configs);
  for (const auto& c : stc.configs_) {
    bool ok = std::any_of(stc.configs_.begin(), stc.configs_.end(), [&](const STCConfig& d) {
      return d.S == c.S && d.T == c.S && subset(c.C, d.C);
    });
    if (!ok)
      throw Error(Errc::MissingDiagonalWithC,
                  "no (S,S,C') with C' above C for " + stc.format(c));
  }
  return stc;
}

STCStructure validate_stc(std::vector<Event> events, const std::vector<RawSTCConfig>& raw) {
  STCStructure proto = make_stc(events, {});
  auto set = [&](const std::vector<std::string>& ids) {
    EventSet s = 0;
    for (const auto& id : ids) {
      int e = proto.event_index(id);
      if (e < 0) throw Error(Errc::UndeclaredEvent, "event '" + id + "' is not declared");
      s |= bit(e);
    }
    return s;
  };
  std::vector<STCConfig> cs;
  for (const auto& c : raw) cs.push_back({set(c.S), set(c.T), set(c.C)});
  return make_stc(proto.events(), std::move(cs));
}

STCStructure parse_stc(std::string_view events, std::string_view configs) {
  STCStructure proto = make_stc(parse_st(events, "").events(), {});
  std::vector<STCConfig> cs;
  std::size_t i = 0;
  while (i < configs.size()) {
    while (i < configs.size() && (configs[i] == ' ' || configs[i] == '\n' || configs[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < configs.size() && configs[j] != ' ' && configs[j] != '\n' && configs[j] != '\t') ++j;
    if (j > i) cs.push_back(proto.parse_config(configs.substr(i, j - i)));
    i = j;
  }
  return make_stc(proto.events(), std::move(cs));
}

const char* stc_step_kind_name(STCStepKind k) {
  switch (k) {
    case STCStepKind::S: return "s";
    case STCStepKind::T: return "t";
    case STCStepKind::CS1: return "1+cs";
    case STCStepKind::CT1: return "1+ct";
    case STCStepKind::CSn: return "n+cs";
    case STCStepKind::CTn: return "n+ct";
    case STCStepKind::CSpm: return "+-ncs";
    case STCStepKind::CTpm: return "+-nct";
  }
  return "?";
}

namespace {

bool strict_subset(EventSet a, EventSet b) { return a != b && subset(a, b); }

// The single event added to S (start) or to T (terminate), or -1.
int started(const STCConfig& a, const STCConfig& b) {
  if (a.T != b.T || !strict_subset(a.S, b.S) || count(b.S & ~a.S) != 1) return -1;
  return std::countr_zero(b.S & ~a.S);
}

int terminated(const STCConfig& a, const STCConfig& b) {
  if (a.S != b.S || !strict_subset(a.T, b.T) || count(b.T & ~a.T) != 1) return -1;
  return std::countr_zero(b.T & ~a.T);
}

}  // namespace

int stc_step_event(STCStepKind k, const STCConfig& a, const STCConfig& b) {
  const bool grows = strict_subset(a.C, b.C);
  const bool one_more = grows && count(b.C & ~a.C) == 1;
  const bool moves = grows || strict_subset(b.C, a.C);
  int e = -1;
  switch (k) {
    case STCStepKind::S:
      e = started(a, b);
      return a.C == b.C ? e : -1;
    case STCStepKind::T:
      e = terminated(a, b);
      return a.C == b.C ? e : -1;
    case STCStepKind::CS1: return one_more ? started(a, b) : -1;
    case STCStepKind::CT1: return one_more ? terminated(a, b) : -1;
    case STCStepKind::CSn: return grows ? started(a, b) : -1;
    case STCStepKind::CTn: return grows ? terminated(a, b) : -1;
    case STCStepKind::CSpm:
      e = moves ? started(a, b) : -1;
      return e >= 0 && !has(a.C, e) ? e : -1;
    case STCStepKind::CTpm: return moves ? terminated(a, b) : -1;
  }
  return -1;
}

std::vector<STCStep> stc_steps(const STCStructure& stc, const STCConfig& c, STCStepMask allowed) {
  if (!stc.contains(c)) throw Error(Errc::ConfigNotInStructure, stc.format(c));
  std::vector<STCStep> out;
  for (const auto& d : stc.configs()) {
    for (unsigned k = 0; k < 8; ++k) {
      if (!(allowed & (1U << k))) continue;
      auto kind = static_cast<STCStepKind>(k);
      int e = stc_step_event(kind, c, d);
      if (e >= 0) out.push_back({c, d, kind, e});
    }
  }
  return out;
}

STCStructure st_to_stc(const STStructure& st) {
  std::vector<STCConfig> cs;
  for (const auto& c : st.configs()) cs.push_back({c.S, c.T, 0});
  return make_stc(st.events(), std::move(cs));
}

STStructure stc_project_st(const STCStructure& stc) {
  std::vector<STConfig> cs;
  for (const auto& c : stc.configs()) cs.push_back(c.st());
  try {
    return make_st(stc.events(), std::move(cs));
  } catch (const Error& err) {
    if (err.code() != Errc::MissingClosure) throw;
    throw Error(Errc::ProjectionViolatesSTConstraint, err.what());
  }
}

std::vector<STCConfig> maximal_configs(const STCStructure& stc) {
  std::vector<STCConfig> out;
  const auto& cs = stc.configs();
  for (const auto& c : cs) {
    bool maximal = std::none_of(cs.begin(), cs.end(),
                                [&](const STCConfig& d) { return !(d == c) && stc_subset(c, d); });
    if (maximal) out.push_back(c);
  }
  return out;
}

const char* chu_symbol(ChuValue v) {
  switch (v) {
    case ChuValue::Zero: return "0";
    case ChuValue::Running: return "~";
    case ChuValue::Done: return "1";
    case ChuValue::Cancelled: return "x";
  }
  return "?";
}

ChuValue parse_chu_symbol(std::string_view s) {
  if (s == "0") return ChuValue::Zero;
  if (s == "~") return ChuValue::Running;
  if (s == "1") return ChuValue::Done;
  if (s == "x") return ChuValue::Cancelled;
  throw Error(Errc::InvalidValuation, "unknown value '" + std::string(s) + "'");
}

bool chu_leq(ChuValue a, ChuValue b, ChuOrder order) {
  if (a == b) return true;
  auto rank = [](ChuValue v) { return static_cast<int>(v); };
  if (a == ChuValue::Cancelled) return order == ChuOrder::Enable;
  if (b == ChuValue::Cancelled) return order == ChuOrder::Cancel && a == ChuValue::Zero;
  return rank(a) < rank(b);
}

namespace {

ChuValue value_of(EventSet S, EventSet T, EventSet C, int e) {
  if (has(C, e)) return ChuValue::Cancelled;
  if (has(T, e)) return ChuValue::Done;
  if (has(S, e)) return ChuValue::Running;
  return ChuValue::Zero;
}

STCConfig config_of(const ChuSpace& chu, const std::vector<ChuValue>& state, int K) {
  if (state.size() != chu.events.size())
    throw Error(Errc::InvalidValuation, "state does not value every event");
  STCConfig c;
  for (int e = 0; e < static_cast<int>(state.size()); ++e) {
    switch (state[e]) {
      case ChuValue::Zero: break;
      case ChuValue::Running: c.S |= bit(e); break;
      case ChuValue::Done:
        c.S |= bit(e);
        c.T |= bit(e);
        break;
      case ChuValue::Cancelled:
        if (K < 4) throw Error(Errc::InvalidValuation, "x is not a value of K=3");
        c.C |= bit(e);
        break;
    }
  }
  return c;
}

}  // namespace

ChuSpace chu3_encode(const STStructure& st) {
  ChuSpace chu{3, st.events(), {}};
  for (const auto& c : st.configs()) {
    std::vector<ChuValue> x;
    for (int e = 0; e < st.event_count(); ++e) x.push_back(value_of(c.S, c.T, 0, e));
    chu.states.push_back(std::move(x));
  }
  return chu;
}

STStructure chu3_decode(const ChuSpace& chu) {
  if (chu.K != 3) throw Error(Errc::InvalidValuation, "expected K=3");
  std::vector<STConfig> cs;
  for (const auto& x : chu.states) cs.push_back(config_of(chu, x, 3).st());
  return make_st(chu.events, std::move(cs));
}

ChuSpace chu4_encode(const STCStructure& stc) {
  ChuSpace chu{4, stc.events(), {}};
  for (const auto& c : stc.configs()) {
    std::vector<ChuValue> x;
    for (int e = 0; e < stc.event_count(); ++e) x.push_back(value_of(c.S, c.T, c.C, e));
    chu.states.push_back(std::move(x));
  }
  return chu;
}

STCStructure chu4_decode(const ChuSpace& chu) {
  if (chu.K != 4) throw Error(Errc::InvalidValuation, "expected K=4");
  std::vector<STCConfig> cs;
  for (const auto& x : chu.states) cs.push_back(config_of(chu, x, 4));
  return make_stc(chu.events, std::move(cs));
}

STCStructure gen_angelic() {
  return parse_stc("d e f", "(,,) (d,,) (d,d,) (de,d,f) (df,d,e) (de,de,f) (df,df,e)");
}

STCStructure gen_demonic() {
  return parse_stc("d e f",
                   "(,,) (d,,e) (d,,f) (d,d,e) (d,d,f) (de,d,f) (df,d,e) (de,de,f) (df,df,e)");
}

STCStructure gen_asym_stc() {
  return parse_stc("b s", "(,,) (b,,) (s,,b) (s,s,b) (b,b,) (bs,b,) (bs,bs,)");
}

STCStructure gen_shutdown_backup(int kMax) {
  if (kMax < 1) throw Error(Errc::InvalidArgument, "kMax must be at least 1");
  if (kMax + 1 > kMaxEvents) throw Error(Errc::TooManyEvents, "kMax is too large");
  // Position 0 is s, position i is b_i.
  std::vector<Event> events{{"s", "s"}};
  for (int i = 1; i <= kMax; ++i) events.push_back({"b" + std::to_string(i), "b"});
  const EventSet s = bit(0);
  const EventSet universe = full_set(kMax + 1);
  auto below = [](int k) { return full_set(k) & ~EventSet{1}; };  // b_i, i < k
  auto from = [&](int k) { return universe & ~full_set(k); };     // b_i, i >= k

  std::vector<STCConfig> cs;
  for (int k = 1; k <= kMax + 1; ++k) {
    const std::vector<STCConfig> family{
        {below(k), below(k), 0},
        {s | below(k), below(k), from(k)},
        {s | below(k), s | below(k), from(k)},
        {s | below(k), below(k), 0},
        {below(k + 1), below(k), 0},
        {s | below(k + 1), below(k), from(k + 1)},
        {s | below(k), s | below(k), 0},
        {s | below(k + 1), s | below(k), from(k + 1)},
        {s | below(k + 1), below(k + 1), from(k + 1)},
    };
    // Members that mention b_{kMax+1} fall outside the universe.
    for (const auto& c : family)
      if (subset(c.S, universe)) cs.push_back(c);
  }
  return make_stc(std::move(events), std::move(cs));
}

}  // namespace truecc
