#include "truecc/equiv.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace truecc {

namespace {

using Key = std::pair<EventSet, EventSet>;

EventSet image(EventSet s, const std::vector<int>& f) {
  EventSet r = 0;
  for (int e : members(s)) r |= bit(f[e]);
  return r;
}

std::optional<EventBijection> iso_search(const std::vector<std::string>& la, std::vector<Key> ka,
                                         const std::vector<std::string>& lb, std::vector<Key> kb) {
  const int n = static_cast<int>(la.size());
  if (n != static_cast<int>(lb.size())) return std::nullopt;
  std::sort(ka.begin(), ka.end());
  ka.erase(std::unique(ka.begin(), ka.end()), ka.end());
  std::sort(kb.begin(), kb.end());
  kb.erase(std::unique(kb.begin(), kb.end()), kb.end());
  if (ka.size() != kb.size()) return std::nullopt;

  auto signature = [](const std::vector<Key>& keys, int e) {
    std::array<int, 3> sig{0, 0, 0};
    for (const auto& [x, y] : keys) {
      if (has(x, e) && !has(y, e)) ++sig[0];
      if (has(x, e) && has(y, e)) ++sig[1];
      if (!has(x, e) && has(y, e)) ++sig[2];
    }
    return sig;
  };
  std::vector<std::array<int, 3>> sa(n), sb(n);
  for (int e = 0; e < n; ++e) {
    sa[e] = signature(ka, e);
    sb[e] = signature(kb, e);
  }

  std::vector<int> f(n, -1);
  std::vector<char> used(n, 0);
  auto consistent = [&](int k) {
    // Projections onto the assigned prefix must agree.
    EventSet pa = full_set(k + 1), pb = 0;
    for (int e = 0; e <= k; ++e) pb |= bit(f[e]);
    std::vector<Key> proj_a, proj_b;
    std::vector<int> fp(n, 0);
    for (int e = 0; e <= k; ++e) fp[e] = f[e];
    for (const auto& [x, y] : ka) proj_a.emplace_back(image(x & pa, fp), image(y & pa, fp));
    for (const auto& [x, y] : kb) proj_b.emplace_back(x & pb, y & pb);
    std::sort(proj_a.begin(), proj_a.end());
    proj_a.erase(std::unique(proj_a.begin(), proj_a.end()), proj_a.end());
    std::sort(proj_b.begin(), proj_b.end());
    proj_b.erase(std::unique(proj_b.begin(), proj_b.end()), proj_b.end());
    return proj_a == proj_b;
  };
  std::function<bool(int)> extend = [&](int e) {
    if (e == n) return true;
    for (int g = 0; g < n; ++g) {
      if (used[g] || la[e] != lb[g] || sa[e] != sb[g]) continue;
      f[e] = g;
      used[g] = 1;
      if (consistent(e) && extend(e + 1)) return true;
      used[g] = 0;
    }
    f[e] = -1;
    return false;
  };
  if (n == 0) return ka == kb ? std::optional<EventBijection>(EventBijection{}) : std::nullopt;
  if (!extend(0)) return std::nullopt;
  return f;
}

std::vector<std::string> labels_of(const std::vector<Event>& events) {
  std::vector<std::string> out;
  for (const auto& e : events) out.push_back(e.label);
  return out;
}

// Labelled state space seen by the bisimulation engine. Each state carries
// the event set on which the bijection must be defined.
struct View {
  struct Move {
    int kind = 0;
    int event = -1;
    int other = -1;
  };
  int root = -1;
  std::vector<EventSet> domain;
  std::vector<std::string> labels;
  std::vector<std::vector<Move>> fwd, bwd;
  std::vector<std::string> kind_names;
};

using Valid = std::function<bool(int, int, const std::vector<int>&)>;

BisimResult bisim(const View& a, const View& b, bool hereditary, bool mirrored, const Valid& valid) {
  BisimResult res;
  if (a.root < 0 || b.root < 0) throw Error(Errc::NotRooted, "both structures need a root");
  const int na = static_cast<int>(a.labels.size());
  using TKey = std::tuple<int, int, std::vector<int>>;
  std::map<TKey, int> ids;
  std::vector<TKey> triples;
  struct Parent {
    int from = -1;
    std::string move;
  };
  std::vector<Parent> parent;
  struct Links {
    std::vector<std::vector<int>> left, right;
    std::vector<int> left_back, right_back;
  };
  std::vector<Links> links;

  auto intern = [&](int ca, int cb, std::vector<int> f, int from, std::string move) {
    TKey key{ca, cb, std::move(f)};
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(triples.size());
    ids.emplace(key, id);
    triples.push_back(std::move(key));
    parent.push_back({from, std::move(move)});
    links.emplace_back();
    return id;
  };
  auto name = [&](const View& v, const View::Move& m, const char* prefix) {
    return std::string(prefix) + v.kind_names[m.kind] + " " + v.labels[m.event];
  };

  intern(a.root, b.root, std::vector<int>(na, -1), -1, "");
  for (std::size_t cur = 0; cur < triples.size(); ++cur) {
    auto [ca, cb, f] = triples[cur];
    std::vector<int> inv(b.labels.size(), -1);
    for (int e = 0; e < na; ++e)
      if (f[e] >= 0) inv[f[e]] = e;
    Links lk;
    for (const auto& m : a.fwd[ca]) {
      std::vector<int> matches;
      for (const auto& m2 : b.fwd[cb]) {
        if (m2.kind != m.kind || b.labels[m2.event] != a.labels[m.event]) continue;
        bool mapped = has(a.domain[ca], m.event);
        if (mapped ? f[m.event] != m2.event : inv[m2.event] >= 0) continue;
        auto f2 = f;
        f2[m.event] = m2.event;
        if (!valid(m.other, m2.other, f2)) continue;
        matches.push_back(intern(m.other, m2.other, std::move(f2), static_cast<int>(cur), name(a, m, "")));
      }
      lk.left.push_back(std::move(matches));
    }
    for (const auto& m2 : b.fwd[cb]) {
      std::vector<int> matches;
      for (const auto& m : a.fwd[ca]) {
        if (m2.kind != m.kind || b.labels[m2.event] != a.labels[m.event]) continue;
        bool mapped = has(b.domain[cb], m2.event);
        if (mapped ? inv[m2.event] != m.event : f[m.event] >= 0) continue;
        auto f2 = f;
        f2[m.event] = m2.event;
        if (!valid(m.other, m2.other, f2)) continue;
        matches.push_back(intern(m.other, m2.other, std::move(f2), static_cast<int>(cur), name(a, m, "")));
      }
      lk.right.push_back(std::move(matches));
    }
    auto back = [&](const View& x, const View& y, int cx, int cy, const std::vector<int>& fx,
                    bool left_side) {
      std::vector<int> out;
      for (const auto& m : x.bwd[cx]) {
        int target = -1;
        for (const auto& m2 : y.bwd[cy]) {
          if (m2.kind != m.kind || m2.event != fx[m.event]) continue;
          int src = left_side ? m.other : m2.other;
          int src2 = left_side ? m2.other : m.other;
          std::vector<int> f2 = f;
          for (int e = 0; e < na; ++e)
            if (!has(a.domain[src], e)) f2[e] = -1;
          if (!valid(src, src2, f2)) continue;
          target = intern(src, src2, std::move(f2), static_cast<int>(cur), name(x, m, "undo-"));
        }
        out.push_back(target);
      }
      return out;
    };
    if (hereditary || mirrored) {
      lk.left_back = back(a, b, ca, cb, f, true);
      lk.right_back = back(b, a, cb, ca, inv, false);
    }
    links[cur] = std::move(lk);
  }

  const std::size_t n = triples.size();
  std::vector<char> alive(n, 1);
  auto fails = [&](std::size_t t, bool use_mirror, std::string* why) {
    const Links& lk = links[t];
    auto [ca, cb, f] = triples[t];
    auto any_alive = [&](const std::vector<int>& v) {
      return std::any_of(v.begin(), v.end(), [&](int x) { return alive[x]; });
    };
    for (std::size_t k = 0; k < lk.left.size(); ++k)
      if (!any_alive(lk.left[k])) {
        if (why) *why = "unmatched left " + name(a, a.fwd[ca][k], "");
        return true;
      }
    for (std::size_t k = 0; k < lk.right.size(); ++k)
      if (!any_alive(lk.right[k])) {
        if (why) *why = "unmatched right " + name(b, b.fwd[cb][k], "");
        return true;
      }
    if (hereditary)
      for (std::size_t k = 0; k < lk.left_back.size(); ++k)
        if (lk.left_back[k] < 0 || !alive[lk.left_back[k]]) {
          if (why) *why = "unmatched left " + name(a, a.bwd[ca][k], "undo-");
          return true;
        }
    if (use_mirror)
      for (std::size_t k = 0; k < lk.right_back.size(); ++k)
        if (lk.right_back[k] < 0 || !alive[lk.right_back[k]]) {
          if (why) *why = "unmatched right " + name(b, b.bwd[cb][k], "undo-");
          return true;
        }
    return false;
  };
  auto fixpoint = [&](bool use_mirror) {
    std::fill(alive.begin(), alive.end(), 1);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t t = 0; t < n; ++t)
        if (alive[t] && fails(t, use_mirror, nullptr)) {
          alive[t] = 0;
          changed = true;
        }
    }
    return alive[0] != 0;
  };

  if (hereditary) res.mirrored_back_agrees = fixpoint(true) == fixpoint(false);
  res.holds = fixpoint(mirrored);
  res.relation_size = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
  if (!res.holds) {
    std::fill(alive.begin(), alive.end(), 1);
    for (std::size_t t = 0; t < n; ++t) {
      std::string why;
      if (!fails(t, mirrored, &why)) continue;
      std::vector<std::string> seq{why};
      for (int p = static_cast<int>(t); parent[p].from >= 0; p = parent[p].from)
        seq.push_back(parent[p].move);
      std::reverse(seq.begin(), seq.end());
      res.distinguishing = std::move(seq);
      break;
    }
  }
  return res;
}

View st_view(const STStructure& st) {
  View v;
  v.labels = labels_of(st.events());
  v.kind_names = {"s", "t"};
  v.root = st.index_of(STConfig{});
  for (const auto& c : st.configs()) {
    v.domain.push_back(c.S);
    std::vector<View::Move> fw, bw;
    for (const auto& s : steps_from(st, c))
      fw.push_back({s.kind == StepKind::S ? 0 : 1, s.event, st.index_of(s.target)});
    for (const auto& s : steps_into(st, c))
      bw.push_back({s.kind == StepKind::S ? 0 : 1, s.event, st.index_of(s.source)});
    v.fwd.push_back(std::move(fw));
    v.bwd.push_back(std::move(bw));
  }
  return v;
}

}  // namespace

std::optional<EventBijection> st_isomorphic(const STStructure& a, const STStructure& b) {
  std::vector<Key> ka, kb;
  for (const auto& c : a.configs()) ka.emplace_back(c.S, c.T);
  for (const auto& c : b.configs()) kb.emplace_back(c.S, c.T);
  return iso_search(labels_of(a.events()), ka, labels_of(b.events()), kb);
}

std::optional<EventBijection> config_isomorphic(const ConfigStructure& a, const ConfigStructure& b) {
  std::vector<Key> ka, kb;
  for (EventSet x : a.configs) ka.emplace_back(x, x);
  for (EventSet x : b.configs) kb.emplace_back(x, x);
  return iso_search(labels_of(a.events), ka, labels_of(b.events), kb);
}

std::optional<EventBijection> event_structure_isomorphic(const InpureEventStructure& a,
                                                         const InpureEventStructure& b) {
  std::vector<Key> ka, kb;
  for (const auto& en : a.enabling) ka.emplace_back(en.Z, en.Y);
  for (const auto& en : b.enabling) kb.emplace_back(en.Z, en.Y);
  return iso_search(labels_of(a.events), ka, labels_of(b.events), kb);
}

BisimResult st_h_bisimilar(const STStructure& a, const STStructure& b) {
  return bisim(st_view(a), st_view(b), false, false, [](int, int, const std::vector<int>&) { return true; });
}

BisimResult st_hh_bisimilar(const STStructure& a, const STStructure& b) {
  return bisim(st_view(a), st_view(b), true, false, [](int, int, const std::vector<int>&) { return true; });
}

BisimResult cs_hh_bisimilar(const ConfigStructure& a, const ConfigStructure& b) {
  auto view = [](const ConfigStructure& c) {
    View v;
    v.labels = labels_of(c.events);
    v.kind_names = {"+"};
    auto it = std::lower_bound(c.configs.begin(), c.configs.end(), EventSet{0}, set_less);
    v.root = (it != c.configs.end() && *it == 0) ? static_cast<int>(it - c.configs.begin()) : -1;
    auto index = [&](EventSet x) {
      return static_cast<int>(std::lower_bound(c.configs.begin(), c.configs.end(), x, set_less) -
                              c.configs.begin());
    };
    for (EventSet x : c.configs) {
      v.domain.push_back(x);
      std::vector<View::Move> fw, bw;
      for (int e = 0; e < c.event_count(); ++e) {
        if (!has(x, e) && c.contains(x | bit(e))) fw.push_back({0, e, index(x | bit(e))});
        if (has(x, e) && c.contains(x & ~bit(e))) bw.push_back({0, e, index(x & ~bit(e))});
      }
      v.fwd.push_back(std::move(fw));
      v.bwd.push_back(std::move(bw));
    }
    return v;
  };
  // below[x][e]: events that every sub-configuration of x containing e also contains.
  auto orders = [](const ConfigStructure& c) {
    std::vector<std::vector<EventSet>> out;
    for (EventSet x : c.configs) {
      std::vector<EventSet> below(c.event_count(), x);
      for (EventSet y : c.configs)
        if (subset(y, x))
          for (int e : members(y)) below[e] &= y;
      out.push_back(std::move(below));
    }
    return out;
  };
  auto oa = orders(a), ob = orders(b);
  Valid valid = [&](int ca, int cb, const std::vector<int>& f) {
    for (int d : members(a.configs[ca]))
      for (int e : members(a.configs[ca]))
        if (has(oa[ca][e], d) != has(ob[cb][f[e]], f[d])) return false;
    return true;
  };
  return bisim(view(a), view(b), true, false, valid);
}

StepGraph oracle_step_graph(const STStructure& st) {
  StepGraph g;
  g.nodes = st.configs();
  for (int k = 0; k < static_cast<int>(g.nodes.size()); ++k)
    for (const auto& s : steps_from(st, g.nodes[k]))
      g.edges.push_back({k, st.index_of(s.target), s.kind, s.event, st.label(s.event)});
  return g;
}

}  // namespace truecc
