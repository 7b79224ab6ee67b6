#include "truecc/translate.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace truecc {

namespace {

using Key = std::pair<EventSet, EventSet>;

void require_st_preconditions(const STStructure& st, const char* what) {
  auto rep = property_report(st);
  if (!rep.rooted.holds || !rep.connected.holds || !rep.adjacent_closed.holds)
    throw Error(Errc::PreconditionViolated,
                std::string(what) + " needs a rooted, connected, adjacent-closed structure");
}

void require_nice(const HDA& h, const char* what) {
  if (!is_acyclic(h).holds) throw Error(Errc::PreconditionViolated, std::string(what) + " needs an acyclic HDA");
  auto nd = is_non_degenerate(h);
  if (!nd.holds) throw Error(Errc::PreconditionViolated, std::string(what) + " needs a non-degenerate HDA: " + nd.reason);
}

// Events of `running` in listing order.
std::vector<int> ranked(EventSet running, const std::vector<int>& rank_of) {
  std::vector<int> out = members(running);
  std::sort(out.begin(), out.end(), [&](int a, int b) { return rank_of[a] < rank_of[b]; });
  return out;
}

// Bulk faces with masks over listing ranks.
Key bulk_face(const Key& k, bool is_s, int i) {
  auto run = members(k.first & ~k.second);
  int e = run[i - 1];
  return is_s ? Key{k.first & ~bit(e), k.second} : Key{k.first, k.second | bit(e)};
}

std::string format_ids(const std::vector<Event>& events, EventSet s) {
  bool compact = std::all_of(events.begin(), events.end(), [](const Event& e) { return e.id.size() == 1; });
  std::string out;
  for (int e : members(s)) {
    if (!compact && !out.empty()) out += ",";
    out += events[e].id;
  }
  if (compact) return out;
  return "{" + out + "}";
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<int> classes_by_squares(const HDA& h) {
  UnionFind uf(h.size());
  for (int q : h.cells_of_dim(2))
    for (int i = 1; i <= 2; ++i) uf.unite(h.s(q, i), h.t(q, i));
  std::vector<int> cls(h.size(), -1);
  std::map<int, int> number;
  for (int q : h.cells_of_dim(1)) {
    auto [it, fresh] = number.emplace(uf.find(q), static_cast<int>(number.size()));
    cls[q] = it->second;
  }
  return cls;
}

// Configurations of all rooted paths; a step into or out of direction i
// adds the class of that direction's transition.
std::vector<STConfig> path_configs(const HDA& h, const std::function<int(int)>& class_of_edge) {
  std::set<std::pair<int, Key>> seen;
  std::deque<std::pair<int, Key>> queue;
  seen.insert({h.initial(), {0, 0}});
  queue.push_back({h.initial(), {0, 0}});
  std::set<Key> configs;
  while (!queue.empty()) {
    auto [q, k] = queue.front();
    queue.pop_front();
    configs.insert(k);
    for (const auto& st : hda_steps_from(h, q)) {
      int e = class_of_edge(st.is_s ? h.edge(st.to, st.index) : h.edge(st.from, st.index));
      Key next = k;
      if (st.is_s) {
        if (has(k.first, e)) throw Error(Errc::PreconditionViolated, "an event starts twice along a path");
        next.first |= bit(e);
      } else {
        if (!has(k.first, e) || has(k.second, e))
          throw Error(Errc::PreconditionViolated, "a path terminates an event it has not started");
        next.second |= bit(e);
      }
      if (seen.insert({st.to, next}).second) queue.push_back({st.to, next});
    }
  }
  std::vector<STConfig> out;
  for (const auto& [s, t] : configs) out.push_back({s, t});
  return out;
}

}  // namespace

HDA stintoh(const STStructure& st, const std::vector<int>& listing_in) {
  require_st_preconditions(st, "stintoh");
  const int ne = st.event_count();
  std::vector<int> listing = listing_in;
  if (listing.empty()) {
    listing.resize(ne);
    std::iota(listing.begin(), listing.end(), 0);
  }
  std::vector<int> rank_of(ne, -1);
  if (static_cast<int>(listing.size()) != ne) throw Error(Errc::InvalidArgument, "listing size");
  for (int k = 0; k < ne; ++k) {
    if (listing[k] < 0 || listing[k] >= ne || rank_of[listing[k]] >= 0)
      throw Error(Errc::InvalidArgument, "listing is not a permutation");
    rank_of[listing[k]] = k;
  }
  const auto& cfgs = st.configs();
  const int n = static_cast<int>(cfgs.size());
  std::vector<Cell> cells(n);
  std::vector<std::vector<int>> s(n), t(n);
  std::vector<std::string> labels(n);
  for (int q = 0; q < n; ++q) {
    const auto& c = cfgs[q];
    cells[q] = {st.format(c), count(c.running())};
    for (int e : ranked(c.running(), rank_of)) {
      int lower = st.index_of({c.S & ~bit(e), c.T});
      int after = st.index_of({c.S, c.T | bit(e)});
      if (lower < 0 || after < 0) throw Error(Errc::PreconditionViolated, "missing face of " + cells[q].id);
      s[q].push_back(lower);
      t[q].push_back(after);
    }
    if (cells[q].dim == 1) labels[q] = st.label(members(c.running()).front());
  }
  return build_hda(std::move(cells), std::move(s), std::move(t), std::move(labels), st.index_of({0, 0}));
}

std::vector<int> event_classes(const HDA& h) { return classes_by_squares(h); }

STStructure hintost(const HDA& input) {
  require_nice(input, "hintost");
  HDA h = reachable_hda(input);
  auto cls = classes_by_squares(h);
  int nclasses = 0;
  for (int c : cls) nclasses = std::max(nclasses, c + 1);
  if (nclasses > kMaxEvents) throw Error(Errc::TooManyEvents, "more than 64 event classes");
  std::vector<Event> events(nclasses);
  for (int q = static_cast<int>(h.size()) - 1; q >= 0; --q)
    if (cls[q] >= 0) events[cls[q]] = {h.id(q), h.label(q)};
  for (int q : h.cells_of_dim(1))
    if (events[cls[q]].label != h.label(q)) throw Error(Errc::LabelConflictInClass, h.id(q));
  auto configs = path_configs(h, [&](int q) { return cls[q]; });
  return make_st(std::move(events), std::move(configs));
}

HDA make_bulk(const std::vector<Event>& events) {
  const int n = static_cast<int>(events.size());
  if (n > 6) throw Error(Errc::DimensionCap, "bulk dimension " + std::to_string(n) + " above 6");
  std::vector<Key> keys;
  for (EventSet S = 0; S <= full_set(n); ++S)
    for (EventSet T = 0; T <= S; ++T)
      if (subset(T, S)) keys.emplace_back(S, T);
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return canonical_less({a.first, a.second}, {b.first, b.second});
  });
  std::map<Key, int> index;
  for (std::size_t q = 0; q < keys.size(); ++q) index[keys[q]] = static_cast<int>(q);
  const std::size_t m = keys.size();
  std::vector<Cell> cells(m);
  std::vector<std::vector<int>> s(m), t(m);
  std::vector<std::string> labels(m);
  for (std::size_t q = 0; q < m; ++q) {
    const auto& [S, T] = keys[q];
    const int d = count(S & ~T);
    cells[q] = {"(" + format_ids(events, S) + "," + format_ids(events, T) + ")", d};
    for (int i = 1; i <= d; ++i) {
      s[q].push_back(index.at(bulk_face(keys[q], true, i)));
      t[q].push_back(index.at(bulk_face(keys[q], false, i)));
    }
    if (d == 1) labels[q] = events[members(S & ~T).front()].label;
  }
  return build_hda(std::move(cells), std::move(s), std::move(t), std::move(labels), index.at({0, 0}));
}

std::vector<Event> numbered_events(int n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "negative event count");
  std::vector<Event> events;
  for (int e = 0; e < n; ++e) events.push_back({"x" + std::to_string(e + 1), "x" + std::to_string(e + 1)});
  return events;
}

HDA make_bulk(int n) {
  if (n > 6) throw Error(Errc::DimensionCap, "bulk dimension " + std::to_string(n) + " above 6");
  return make_bulk(numbered_events(n));
}

bool check_sculpture(const Sculpture& sc) {
  const HDA& h = sc.hda;
  const int n = sc.bulk_dim();
  if (sc.embedding.size() != h.size()) return false;
  std::set<Key> used;
  for (int q = 0; q < static_cast<int>(h.size()); ++q) {
    const Key k{sc.embedding[q].S, sc.embedding[q].T};
    if (!subset(k.first, full_set(n)) || !subset(k.second, k.first)) return false;
    if (count(k.first & ~k.second) != h.dim(q) || !used.insert(k).second) return false;
    if (h.dim(q) == 1 && sc.bulk_events[members(k.first & ~k.second).front()].label != h.label(q)) return false;
    for (int i = 1; i <= h.dim(q); ++i) {
      const auto& fs = sc.embedding[h.s(q, i)];
      const auto& ft = sc.embedding[h.t(q, i)];
      if (bulk_face(k, true, i) != Key{fs.S, fs.T} || bulk_face(k, false, i) != Key{ft.S, ft.T}) return false;
    }
  }
  return sc.embedding[h.initial()] == STConfig{};
}

Sculpture stintosculpture(const STStructure& st) {
  Sculpture sc{stintoh(st), st.events(), st.configs()};
  return sc;
}

Sculpture simplify_sculpture(const Sculpture& sc) {
  if (!check_sculpture(sc)) throw Error(Errc::InvalidArgument, "embedding is not an injective morphism into the bulk");
  EventSet started = 0;
  for (const auto& k : sc.embedding) started |= k.S;
  std::vector<int> pos(sc.bulk_dim(), -1);
  Sculpture out{sc.hda, {}, {}};
  for (int e = 0; e < sc.bulk_dim(); ++e)
    if (has(started, e)) {
      pos[e] = static_cast<int>(out.bulk_events.size());
      out.bulk_events.push_back(sc.bulk_events[e]);
    }
  for (const auto& k : sc.embedding) out.embedding.push_back({remap_set(k.S, pos), remap_set(k.T, pos)});
  return out;
}

bool sculptures_isomorphic(const Sculpture& a, const Sculpture& b) {
  return simplify_sculpture(a).bulk_dim() == simplify_sculpture(b).bulk_dim() &&
         hda_isomorphic(a.hda, b.hda).has_value();
}

std::vector<int> alpha_chain_list(const AlphaChain& chain, int n) {
  std::vector<int> list(n);
  std::iota(list.begin(), list.end(), 0);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    if (it->index < 1 || it->index > static_cast<int>(list.size()))
      throw Error(Errc::InvalidArgument, "chain index out of range");
    list.erase(list.begin() + (it->index - 1));
  }
  return list;
}

STConfig alpha_chain_apply(const AlphaChain& chain, int n) {
  std::vector<int> list(n);
  std::iota(list.begin(), list.end(), 0);
  STConfig c{full_set(n), 0};
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    if (it->index < 1 || it->index > static_cast<int>(list.size()))
      throw Error(Errc::InvalidArgument, "chain index out of range");
    int e = list[it->index - 1];
    list.erase(list.begin() + (it->index - 1));
    if (it->is_s)
      c.S &= ~bit(e);
    else
      c.T |= bit(e);
  }
  return c;
}

bool alpha_chain_equiv(const AlphaChain& a, const AlphaChain& b, int n) {
  if (a.size() != b.size()) throw Error(Errc::LengthMismatch, "chains of different length");
  return alpha_chain_list(a, n) == alpha_chain_list(b, n);
}

STStructure sculpintost(const Sculpture& sc) {
  const int n = sc.bulk_dim();
  if (!check_sculpture(sc)) throw Error(Errc::InvalidArgument, "embedding is not an injective morphism into the bulk");
  std::vector<STConfig> configs;
  for (const auto& target : sc.embedding) {
    // Descend from the bulk top by face maps that keep the target below.
    Key cur{full_set(n), 0};
    AlphaChain chain;
    while (cur != Key{target.S, target.T}) {
      const int d = count(cur.first & ~cur.second);
      bool moved = false;
      for (int i = 1; i <= d && !moved; ++i)
        for (bool is_s : {true, false}) {
          Key next = bulk_face(cur, is_s, i);
          if (subset(target.S, next.first) && subset(next.second, target.T)) {
            chain.insert(chain.begin(), AlphaMap{is_s, i});
            cur = next;
            moved = true;
            break;
          }
        }
      if (!moved) throw Error(Errc::InvalidArgument, "bulk cell not below the top");
    }
    STConfig c = alpha_chain_apply(chain, n);
    configs.push_back(c);
  }
  return make_st(sc.bulk_events, std::move(configs));
}

STStructure hintost_sculpture(const Sculpture& sc) {
  if (!check_sculpture(sc)) throw Error(Errc::InvalidArgument, "embedding is not an injective morphism into the bulk");
  HDA bulk = make_bulk(sc.bulk_events);
  auto bulk_cls = classes_by_squares(bulk);
  const int n = sc.bulk_dim();
  // Bulk keys in the order make_bulk lays out cells.
  std::vector<Key> keys;
  for (EventSet S = 0; S <= full_set(n); ++S)
    for (EventSet T = 0; T <= S; ++T)
      if (subset(T, S)) keys.emplace_back(S, T);
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return canonical_less({a.first, a.second}, {b.first, b.second});
  });
  std::map<Key, int> index;
  for (std::size_t q = 0; q < keys.size(); ++q) index[keys[q]] = static_cast<int>(q);
  int nclasses = 0;
  for (int c : bulk_cls) nclasses = std::max(nclasses, c + 1);
  // Each class is named after the event its lowest transition starts.
  std::vector<Event> events(nclasses);
  for (int q = static_cast<int>(bulk.size()) - 1; q >= 0; --q)
    if (bulk_cls[q] >= 0) events[bulk_cls[q]] = sc.bulk_events[members(keys[q].first & ~keys[q].second).front()];
  const HDA& h = sc.hda;
  auto configs = path_configs(h, [&](int q) {
    const auto& k = sc.embedding[q];
    return bulk_cls[index.at({k.S, k.T})];
  });
  return make_st(std::move(events), std::move(configs));
}

std::optional<Sculpture> is_sculpture(const HDA& input, SculptureSearch opts) {
  require_nice(input, "is_sculpture");
  HDA h = reachable_hda(input);
  int bound = opts.max_dim;
  if (bound < 0) {
    auto cls = classes_by_squares(h);
    bound = 0;
    for (int c : cls) bound = std::max(bound, c + 1);
  }
  const int limit = std::min(bound, opts.cap);
  const std::size_t budget = search_budget(5'000'000);
  std::size_t nodes = 0;
  const int nc = static_cast<int>(h.size());

  std::vector<int> order;
  {
    std::vector<char> queued(nc, 0);
    std::deque<int> queue{h.initial()};
    queued[h.initial()] = 1;
    while (!queue.empty()) {
      int q = queue.front();
      queue.pop_front();
      order.push_back(q);
      std::vector<int> next;
      for (int i = 1; i <= h.dim(q); ++i) {
        next.push_back(h.s(q, i));
        next.push_back(h.t(q, i));
      }
      for (const auto& c : h.cofaces(q)) next.push_back(c.cell);
      for (int x : next)
        if (!queued[x]) {
          queued[x] = 1;
          queue.push_back(x);
        }
    }
  }

  for (int n = 0; n <= limit; ++n) {
    std::vector<Key> f(nc);
    std::vector<char> assigned(nc, 0);
    std::set<Key> used;
    std::vector<std::string> dir_label(n);

    auto consistent = [&](int q) {
      const Key& k = f[q];
      for (int i = 1; i <= h.dim(q); ++i) {
        if (assigned[h.s(q, i)] && bulk_face(k, true, i) != f[h.s(q, i)]) return false;
        if (assigned[h.t(q, i)] && bulk_face(k, false, i) != f[h.t(q, i)]) return false;
      }
      for (const auto& c : h.cofaces(q))
        if (assigned[c.cell] && bulk_face(f[c.cell], c.is_s, c.i) != k) return false;
      return true;
    };
    auto candidates = [&](int q) {
      std::vector<Key> out;
      if (q == h.initial()) return std::vector<Key>{{0, 0}};
      for (const auto& c : h.cofaces(q))
        if (assigned[c.cell]) return std::vector<Key>{bulk_face(f[c.cell], c.is_s, c.i)};
      for (int i = 1; i <= h.dim(q); ++i)
        for (bool is_s : {true, false}) {
          int face = is_s ? h.s(q, i) : h.t(q, i);
          if (!assigned[face]) continue;
          const Key& u = f[face];
          for (int e = 0; e < n; ++e) {
            Key k = is_s ? Key{u.first | bit(e), u.second} : Key{u.first, u.second & ~bit(e)};
            if (is_s && has(u.first, e)) continue;
            if (!is_s && !has(u.second, e)) continue;
            auto run = members(k.first & ~k.second);
            if (static_cast<int>(run.size()) >= i && run[i - 1] == e) out.push_back(k);
          }
          return out;
        }
      return out;
    };
    std::function<bool(std::size_t)> extend = [&](std::size_t idx) {
      if (idx == order.size()) return true;
      if (++nodes > budget) throw Error(Errc::SearchBudgetExceeded, "sculpture search budget exhausted");
      const int q = order[idx];
      for (const Key& k : candidates(q)) {
        if (used.count(k)) continue;
        f[q] = k;
        if (!consistent(q)) continue;
        std::string saved;
        int dir = -1;
        if (h.dim(q) == 1) {
          dir = members(k.first & ~k.second).front();
          if (!dir_label[dir].empty() && dir_label[dir] != h.label(q)) continue;
          saved = dir_label[dir];
          dir_label[dir] = h.label(q);
        }
        assigned[q] = 1;
        used.insert(k);
        if (extend(idx + 1)) return true;
        used.erase(k);
        assigned[q] = 0;
        if (dir >= 0) dir_label[dir] = saved;
      }
      return false;
    };
    if (extend(0)) {
      Sculpture sc;
      sc.hda = h;
      for (int e = 0; e < n; ++e)
        sc.bulk_events.push_back({"x" + std::to_string(e + 1), dir_label[e].empty() ? "_" : dir_label[e]});
      for (const auto& k : f) sc.embedding.push_back({k.first, k.second});
      return sc;
    }
  }
  if (bound > opts.cap)
    throw Error(Errc::SearchBudgetExceeded, "no embedding up to the dimension cap " + std::to_string(opts.cap));
  return std::nullopt;
}

STStructure quotient_events(const STStructure& st, const std::vector<int>& cls) {
  const int ne = st.event_count();
  if (static_cast<int>(cls.size()) != ne) throw Error(Errc::InvalidArgument, "one class per event expected");
  std::map<int, int> number;
  std::vector<int> to(ne);
  std::vector<Event> events;
  for (int e = 0; e < ne; ++e) {
    auto [it, fresh] = number.emplace(cls[e], static_cast<int>(events.size()));
    if (fresh) events.push_back(st.events()[e]);
    else if (events[it->second].label != st.label(e))
      throw Error(Errc::LabelConflictInClass, st.id(e) + " vs " + events[it->second].id);
    to[e] = it->second;
  }
  auto image = [&](EventSet s) {
    EventSet r = 0;
    for (int e : members(s)) r |= bit(to[e]);
    return r;
  };
  std::vector<STConfig> configs;
  for (const auto& c : st.configs()) configs.push_back({image(c.S), image(c.T)});
  return make_st(std::move(events), std::move(configs), st.mode());
}

}  // namespace truecc
