#include "truecc/hda.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <tuple>

namespace truecc {

namespace {

std::string law_text(int i, int j, char alpha, char beta, const std::string& cell) {
  return std::string(1, alpha) + std::to_string(i) + "." + beta + std::to_string(j) + " != " + beta +
         std::to_string(j - 1) + "." + alpha + std::to_string(i) + " at " + cell;
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

}  // namespace

std::size_t search_budget(std::size_t fallback) {
  if (const char* env = std::getenv("TRUECC_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return fallback;
}

int HDA::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

int HDA::edge(int q, int i) const {
  const int n = dim(q);
  int c = q;
  for (int k = 0; k < n - i; ++k) c = s(c, i + 1);
  for (int k = 0; k < i - 1; ++k) c = s(c, 1);
  return c;
}

std::vector<int> HDA::cells_of_dim(int n) const {
  std::vector<int> out;
  for (int q = 0; q < static_cast<int>(size()); ++q)
    if (dim(q) == n) out.push_back(q);
  return out;
}

int HDA::max_dim() const {
  int m = -1;
  for (const auto& c : cells_) m = std::max(m, c.dim);
  return m;
}

RawHDA HDA::raw() const {
  RawHDA r;
  r.cells = cells_;
  for (int q = 0; q < static_cast<int>(size()); ++q) {
    for (int i = 1; i <= dim(q); ++i) {
      r.s.push_back({id(q), i, id(s(q, i))});
      r.t.push_back({id(q), i, id(t(q, i))});
    }
    if (dim(q) == 1) r.labels[id(q)] = labels_[q];
  }
  r.initial = initial_ >= 0 ? id(initial_) : "";
  for (int f : finals_) r.finals.push_back(id(f));
  return r;
}

HDA build_hda(std::vector<Cell> cells, std::vector<std::vector<int>> s, std::vector<std::vector<int>> t,
              std::vector<std::string> labels, int initial, std::vector<int> finals) {
  const int n = static_cast<int>(cells.size());
  HDA h;
  for (int q = 0; q < n; ++q) {
    if (cells[q].dim < 0) throw Error(Errc::InvalidArgument, "negative dimension at " + cells[q].id);
    if (!h.index_.emplace(cells[q].id, q).second)
      throw Error(Errc::InvalidArgument, "duplicate cell " + cells[q].id);
  }
  s.resize(n);
  t.resize(n);
  labels.resize(n);
  for (int q = 0; q < n; ++q) {
    const int d = cells[q].dim;
    for (auto* maps : {&s[q], &t[q]}) {
      if (static_cast<int>(maps->size()) > d)
        throw Error(Errc::InvalidArgument, "map index above dimension at " + cells[q].id);
      maps->resize(d, -1);
      for (int i = 0; i < d; ++i) {
        int to = (*maps)[i];
        if (to < 0) throw Error(Errc::PartialMap, cells[q].id + " " + (maps == &s[q] ? "s" : "t") + std::to_string(i + 1));
        if (to >= n || cells[to].dim != d - 1)
          throw Error(Errc::InvalidArgument, "face of " + cells[q].id + " has the wrong dimension");
      }
    }
    if (d == 1 && labels[q].empty()) throw Error(Errc::InvalidArgument, "unlabelled transition " + cells[q].id);
    if (d != 1 && !labels[q].empty()) throw Error(Errc::InvalidArgument, "label on non-transition " + cells[q].id);
  }
  for (int q = 0; q < n; ++q) {
    const int d = cells[q].dim;
    for (int i = 1; i < d; ++i)
      for (int j = i + 1; j <= d; ++j)
        for (char alpha : {'s', 't'})
          for (char beta : {'s', 't'}) {
            auto& A = alpha == 's' ? s : t;
            auto& B = beta == 's' ? s : t;
            if (A[B[q][j - 1]][i - 1] != B[A[q][i - 1]][j - 2])
              throw Error(Errc::CubicalLawViolation, law_text(i, j, alpha, beta, cells[q].id));
          }
    if (d == 2)
      for (int i = 0; i < 2; ++i)
        if (labels[s[q][i]] != labels[t[q][i]]) throw Error(Errc::LabelMismatch, cells[q].id);
  }
  if (initial < 0 || initial >= n || cells[initial].dim != 0) throw Error(Errc::NoInitial, "no initial state");
  for (int f : finals)
    if (f < 0 || f >= n || cells[f].dim != 0) throw Error(Errc::InvalidArgument, "final cell is not a state");
  std::sort(finals.begin(), finals.end());
  finals.erase(std::unique(finals.begin(), finals.end()), finals.end());

  h.up_.assign(n, {});
  for (int q = 0; q < n; ++q)
    for (int i = 1; i <= cells[q].dim; ++i) {
      h.up_[s[q][i - 1]].push_back({q, true, i});
      h.up_[t[q][i - 1]].push_back({q, false, i});
    }
  h.cells_ = std::move(cells);
  h.s_ = std::move(s);
  h.t_ = std::move(t);
  h.labels_ = std::move(labels);
  h.initial_ = initial;
  h.finals_ = std::move(finals);
  return h;
}

HDA validate_hda(const RawHDA& raw) {
  std::map<std::string, int> idx;
  for (int q = 0; q < static_cast<int>(raw.cells.size()); ++q)
    if (!idx.emplace(raw.cells[q].id, q).second) throw Error(Errc::InvalidArgument, "duplicate cell " + raw.cells[q].id);
  auto lookup = [&](const std::string& id) {
    auto it = idx.find(id);
    if (it == idx.end()) throw Error(Errc::CellNotFound, id);
    return it->second;
  };
  const std::size_t n = raw.cells.size();
  std::vector<std::vector<int>> s(n), t(n);
  for (std::size_t q = 0; q < n; ++q) {
    s[q].assign(std::max(raw.cells[q].dim, 0), -1);
    t[q].assign(std::max(raw.cells[q].dim, 0), -1);
  }
  auto fill = [&](const std::vector<RawHDA::MapEntry>& entries, std::vector<std::vector<int>>& maps, char kind) {
    for (const auto& e : entries) {
      int q = lookup(e.cell), to = lookup(e.to);
      if (e.i < 1 || e.i > raw.cells[q].dim)
        throw Error(Errc::InvalidArgument, std::string(1, kind) + std::to_string(e.i) + " out of range at " + e.cell);
      int& slot = maps[q][e.i - 1];
      if (slot >= 0 && slot != to)
        throw Error(Errc::InvalidArgument, "conflicting " + std::string(1, kind) + std::to_string(e.i) + " at " + e.cell);
      slot = to;
    }
  };
  fill(raw.s, s, 's');
  fill(raw.t, t, 't');
  std::vector<std::string> labels(n);
  for (const auto& [cell, label] : raw.labels) labels[lookup(cell)] = label;
  if (raw.initial.empty() || !idx.count(raw.initial)) throw Error(Errc::NoInitial, "initial cell missing");
  std::vector<int> finals;
  for (const auto& f : raw.finals) finals.push_back(lookup(f));
  return build_hda(raw.cells, std::move(s), std::move(t), std::move(labels), idx.at(raw.initial), finals);
}

std::vector<HDAStep> hda_steps_from(const HDA& h, int q) {
  std::vector<HDAStep> out;
  for (const auto& c : h.cofaces(q))
    if (c.is_s) out.push_back({q, c.cell, true, c.i});
  for (int i = 1; i <= h.dim(q); ++i) out.push_back({q, h.t(q, i), false, i});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const std::string& step_label(const HDA& h, const HDAStep& st) {
  return st.is_s ? h.direction_label(st.to, st.index) : h.direction_label(st.from, st.index);
}

HDA reachable_hda(const HDA& h, std::vector<std::string>* dropped) {
  const int n = static_cast<int>(h.size());
  std::vector<char> seen(n, 0);
  std::deque<int> queue{h.initial()};
  seen[h.initial()] = 1;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (const auto& st : hda_steps_from(h, q))
      if (!seen[st.to]) {
        seen[st.to] = 1;
        queue.push_back(st.to);
      }
  }
  // Faces of reachable cells are reachable by t-steps or lie below the
  // start of some path; keep them so maps stay total.
  bool grew = true;
  while (grew) {
    grew = false;
    for (int q = 0; q < n; ++q)
      if (seen[q])
        for (int i = 1; i <= h.dim(q); ++i)
          for (int f : {h.s(q, i), h.t(q, i)})
            if (!seen[f]) seen[f] = grew = 1;
  }
  std::vector<int> pos(n, -1);
  std::vector<Cell> cells;
  for (int q = 0; q < n; ++q) {
    if (seen[q]) {
      pos[q] = static_cast<int>(cells.size());
      cells.push_back(h.cell(q));
    } else if (dropped) {
      dropped->push_back(h.id(q));
    }
  }
  std::vector<std::vector<int>> s(cells.size()), t(cells.size());
  std::vector<std::string> labels(cells.size());
  for (int q = 0; q < n; ++q) {
    if (!seen[q]) continue;
    for (int i = 1; i <= h.dim(q); ++i) {
      s[pos[q]].push_back(pos[h.s(q, i)]);
      t[pos[q]].push_back(pos[h.t(q, i)]);
    }
    labels[pos[q]] = h.label(q);
  }
  std::vector<int> finals;
  for (int f : h.finals())
    if (seen[f]) finals.push_back(pos[f]);
  return build_hda(std::move(cells), std::move(s), std::move(t), std::move(labels), pos[h.initial()], finals);
}

CellCheck is_acyclic(const HDA& h) {
  const int n = static_cast<int>(h.size());
  std::vector<int> color(n, 0), parent(n, -1);
  CellCheck res;
  std::function<bool(int)> dfs = [&](int q) {
    color[q] = 1;
    for (const auto& st : hda_steps_from(h, q)) {
      if (color[st.to] == 1) {
        std::vector<int> cycle{st.to};
        for (int c = q; c != st.to; c = parent[c]) cycle.push_back(c);
        std::reverse(cycle.begin() + 1, cycle.end());
        res.cells = cycle;
        return true;
      }
      if (color[st.to] == 0) {
        parent[st.to] = q;
        if (dfs(st.to)) return true;
      }
    }
    color[q] = 2;
    return false;
  };
  for (int q = 0; q < n; ++q)
    if (color[q] == 0 && dfs(q)) {
      res.holds = false;
      res.reason = "cycle";
      return res;
    }
  return res;
}

CellCheck is_non_degenerate(const HDA& h) {
  for (int q = 0; q < static_cast<int>(h.size()); ++q) {
    const int d = h.dim(q);
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) {
        if (i == j) continue;
        for (bool a : {true, false})
          for (bool b : {true, false}) {
            int x = a ? h.s(q, i) : h.t(q, i);
            int y = b ? h.s(q, j) : h.t(q, j);
            if (x == y)
              return {false, {q, x},
                      std::string(a ? "s" : "t") + std::to_string(i) + " = " + (b ? "s" : "t") + std::to_string(j)};
          }
      }
  }
  auto edges = h.cells_of_dim(1);
  for (std::size_t a = 0; a < edges.size(); ++a)
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      int x = edges[a], y = edges[b];
      if (h.label(x) == h.label(y) && h.s(x, 1) == h.s(y, 1) && h.t(x, 1) == h.t(y, 1))
        return {false, {x, y}, "parallel transitions with the same label"};
    }
  return {};
}

std::vector<HDAPath> hda_paths(const HDA& h, int from, int to, std::size_t bound) {
  const int n = static_cast<int>(h.size());
  if (from < 0 || from >= n) throw Error(Errc::CellNotFound, "source cell");
  if (to < 0 || to >= n) throw Error(Errc::CellNotFound, "target cell");
  std::vector<HDAPath> out;
  HDAPath cur{from, {}};
  std::function<void(int)> dfs = [&](int q) {
    if (q == to) out.push_back(cur);
    if (cur.steps.size() >= bound) return;
    for (const auto& st : hda_steps_from(h, q)) {
      cur.steps.push_back(st);
      dfs(st.to);
      cur.steps.pop_back();
    }
  };
  dfs(from);
  return out;
}

std::string format_path(const HDA& h, const HDAPath& p) {
  std::string out = h.id(p.start);
  for (const auto& st : p.steps)
    out += std::string(" -") + (st.is_s ? "s" : "t") + std::to_string(st.index) + "-> " + h.id(st.to);
  return out;
}

std::vector<Adjacent> adjacent_paths(const HDA& h, const HDAPath& p) {
  std::vector<Adjacent> out;
  for (std::size_t k = 1; k < p.steps.size(); ++k) {
    const HDAStep& a = p.steps[k - 1];
    const HDAStep& b = p.steps[k];
    const int from = a.from, to = b.to;
    auto emit = [&](HDAStep x, HDAStep y) {
      HDAPath q = p;
      q.steps[k - 1] = x;
      q.steps[k] = y;
      if (q != p) out.push_back({static_cast<int>(k), std::move(q)});
    };
    const int x = a.index, y = b.index;
    if (a.is_s && b.is_s) {
      if (x < y) {
        int m = h.s(to, x);
        if (h.s(m, y - 1) == from) emit({from, m, true, y - 1}, {m, to, true, x});
      } else {
        int m = h.s(to, x + 1);
        if (h.s(m, y) == from) emit({from, m, true, y}, {m, to, true, x + 1});
      }
    } else if (!a.is_s && !b.is_s) {
      if (x > y) {
        int m = h.t(from, y);
        if (h.t(m, x - 1) == to) emit({from, m, false, y}, {m, to, false, x - 1});
      } else {
        int m = h.t(from, y + 1);
        if (h.t(m, x) == to) emit({from, m, false, y + 1}, {m, to, false, x});
      }
    } else if (a.is_s && !b.is_s) {
      if (x < y) {
        int m = h.s(to, x);
        if (h.t(from, y - 1) == m) emit({from, m, false, y - 1}, {m, to, true, x});
      } else if (x > y) {
        int m = h.s(to, x - 1);
        if (h.t(from, y) == m) emit({from, m, false, y}, {m, to, true, x - 1});
      }
    } else {
      // t then s: search the higher cell having both ends as faces.
      for (const auto& c : h.cofaces(from)) {
        if (!c.is_s) continue;
        if (y <= x && c.i == y && h.t(c.cell, x + 1) == to)
          emit({from, c.cell, true, y}, {c.cell, to, false, x + 1});
        if (y >= x && c.i == y + 1 && h.t(c.cell, x) == to)
          emit({from, c.cell, true, y + 1}, {c.cell, to, false, x});
      }
    }
  }
  return out;
}

std::optional<int> adjacent(const HDA& h, const HDAPath& a, const HDAPath& b) {
  for (const auto& adj : adjacent_paths(h, a))
    if (adj.path == b) return adj.l;
  return std::nullopt;
}

HomotopyClass homotopy_class(const HDA& h, const HDAPath& p) {
  if (!is_acyclic(h).holds) throw Error(Errc::CyclicInput, "homotopy classes need an acyclic HDA");
  std::set<HDAPath> seen{p};
  std::deque<HDAPath> queue{p};
  while (!queue.empty()) {
    HDAPath cur = queue.front();
    queue.pop_front();
    for (auto& adj : adjacent_paths(h, cur))
      if (seen.insert(adj.path).second) queue.push_back(std::move(adj.path));
  }
  HomotopyClass c;
  c.members.assign(seen.begin(), seen.end());
  c.representative = c.members.front();
  return c;
}

namespace {

// Every rooted path of an acyclic HDA, as a prefix tree.
struct PathSpace {
  std::vector<HDAPath> paths;
  std::map<HDAPath, int> index;
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (l, partner)

  PathSpace(const HDA& h, std::size_t budget) {
    paths.push_back({h.initial(), {}});
    parent.push_back(-1);
    for (std::size_t k = 0; k < paths.size(); ++k) {
      for (const auto& st : hda_steps_from(h, paths[k].end())) {
        if (paths.size() >= budget) throw Error(Errc::BudgetExceeded, "too many rooted paths");
        HDAPath next = paths[k];
        next.steps.push_back(st);
        paths.push_back(std::move(next));
        parent.push_back(static_cast<int>(k));
      }
    }
    children.assign(paths.size(), {});
    for (std::size_t k = 0; k < paths.size(); ++k) {
      index.emplace(paths[k], static_cast<int>(k));
      if (parent[k] >= 0) children[parent[k]].push_back(static_cast<int>(k));
    }
    adj.assign(paths.size(), {});
    for (std::size_t k = 0; k < paths.size(); ++k)
      for (const auto& a : adjacent_paths(h, paths[k])) adj[k].emplace_back(a.l, index.at(a.path));
  }
};

void require_nice(const HDA& h, const char* what) {
  if (!is_acyclic(h).holds) throw Error(Errc::PreconditionViolated, std::string(what) + " needs an acyclic HDA");
  auto nd = is_non_degenerate(h);
  if (!nd.holds) throw Error(Errc::PreconditionViolated, std::string(what) + " needs a non-degenerate HDA: " + nd.reason);
}

}  // namespace

HDA history_unfolding(const HDA& input) {
  require_nice(input, "history_unfolding");
  HDA h = reachable_hda(input);
  PathSpace space(h, search_budget(2'000'000));
  const int np = static_cast<int>(space.paths.size());
  UnionFind uf(np);
  for (int k = 0; k < np; ++k)
    for (const auto& [l, other] : space.adj[k]) uf.unite(k, other);

  // Classes ordered by (dimension, representative path).
  std::map<int, int> root_to_class;
  std::vector<int> roots;
  for (int k = 0; k < np; ++k)
    if (uf.find(k) == k) roots.push_back(k);
  std::sort(roots.begin(), roots.end(), [&](int a, int b) {
    int da = h.dim(space.paths[a].end()), db = h.dim(space.paths[b].end());
    return da != db ? da < db : space.paths[a] < space.paths[b];
  });
  for (std::size_t c = 0; c < roots.size(); ++c) root_to_class[roots[c]] = static_cast<int>(c);
  auto cls = [&](int k) { return root_to_class.at(uf.find(k)); };

  const int nc = static_cast<int>(roots.size());
  std::map<int, int> per_end;
  for (int r : roots) ++per_end[space.paths[r].end()];
  std::map<int, int> seen_end;
  std::vector<Cell> cells(nc);
  for (int c = 0; c < nc; ++c) {
    int end = space.paths[roots[c]].end();
    cells[c].dim = h.dim(end);
    cells[c].id = h.id(end);
    if (per_end[end] > 1) cells[c].id += "#" + std::to_string(seen_end[end]++);
  }
  std::vector<std::vector<int>> s(nc), t(nc);
  std::vector<std::string> labels(nc);
  for (int c = 0; c < nc; ++c) {
    s[c].assign(cells[c].dim, -1);
    t[c].assign(cells[c].dim, -1);
  }
  for (int k = 0; k < np; ++k) {
    const int c = cls(k);
    const auto& p = space.paths[k];
    labels[c] = h.label(p.end());
    if (!p.steps.empty()) {
      const auto& last = p.steps.back();
      const int pc = cls(space.parent[k]);
      auto& slot = last.is_s ? s[c][last.index - 1] : t[pc][last.index - 1];
      const int value = last.is_s ? pc : c;
      if (slot >= 0 && slot != value)
        throw Error(Errc::PreconditionViolated, "induced map is not well defined at " + h.id(p.end()));
      slot = value;
    }
  }
  std::vector<int> finals;
  for (int c = 0; c < nc; ++c) {
    int end = space.paths[roots[c]].end();
    if (std::binary_search(h.finals().begin(), h.finals().end(), end)) finals.push_back(c);
  }
  return build_hda(std::move(cells), std::move(s), std::move(t), std::move(labels), cls(0), finals);
}

bool hda_morphism_check(const HDAMorphism& f, const HDA& a, const HDA& b) {
  if (f.size() != a.size()) return false;
  for (int q = 0; q < static_cast<int>(a.size()); ++q) {
    int g = f[q];
    if (g < 0 || g >= static_cast<int>(b.size()) || a.dim(q) != b.dim(g)) return false;
    if (a.dim(q) == 1 && a.label(q) != b.label(g)) return false;
    for (int i = 1; i <= a.dim(q); ++i)
      if (b.s(g, i) != f[a.s(q, i)] || b.t(g, i) != f[a.t(q, i)]) return false;
  }
  return f[a.initial()] == b.initial();
}

namespace {

using PairSet = std::vector<std::pair<int, int>>;

PairSet face_pairs(const HDA& h, int q, const std::function<int(int)>& map) {
  PairSet out;
  for (int i = 1; i <= h.dim(q); ++i) out.emplace_back(map(h.s(q, i)), map(h.t(q, i)));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<HDAMorphism> iso_search(const HDA& a, const HDA& b, bool reindex) {
  const int n = static_cast<int>(a.size());
  if (n != static_cast<int>(b.size())) return std::nullopt;
  std::vector<int> dims_a, dims_b;
  for (const auto& c : a.cells()) dims_a.push_back(c.dim);
  for (const auto& c : b.cells()) dims_b.push_back(c.dim);
  std::sort(dims_a.begin(), dims_a.end());
  std::sort(dims_b.begin(), dims_b.end());
  if (dims_a != dims_b) return std::nullopt;
  if (n == 0) return HDAMorphism{};

  // Visit order: breadth first over faces and cofaces from the initial cell.
  std::vector<int> order;
  std::vector<char> queued(n, 0);
  auto visit_from = [&](int start) {
    std::deque<int> queue{start};
    queued[start] = 1;
    while (!queue.empty()) {
      int q = queue.front();
      queue.pop_front();
      order.push_back(q);
      std::vector<int> next;
      for (int i = 1; i <= a.dim(q); ++i) {
        next.push_back(a.s(q, i));
        next.push_back(a.t(q, i));
      }
      for (const auto& c : a.cofaces(q)) next.push_back(c.cell);
      for (int x : next)
        if (!queued[x]) {
          queued[x] = 1;
          queue.push_back(x);
        }
    }
  };
  visit_from(a.initial());
  for (int q = 0; q < n; ++q)
    if (!queued[q]) visit_from(q);

  std::vector<int> f(n, -1), used(n, 0);
  auto mapped = [&](int x) { return f[x]; };
  auto local_ok = [&](int q) {
    const int g = f[q];
    if (a.dim(q) == 1 && a.label(q) != b.label(g)) return false;
    auto check_cell = [&](int x) {
      const int gx = f[x];
      bool complete = true;
      for (int i = 1; i <= a.dim(x); ++i) {
        const int fs = f[a.s(x, i)], ft = f[a.t(x, i)];
        complete = complete && fs >= 0 && ft >= 0;
        if (reindex) continue;
        if ((fs >= 0 && b.s(gx, i) != fs) || (ft >= 0 && b.t(gx, i) != ft)) return false;
      }
      if (reindex && complete) return face_pairs(a, x, mapped) == face_pairs(b, gx, [](int y) { return y; });
      return true;
    };
    if (!check_cell(q)) return false;
    for (const auto& c : a.cofaces(q))
      if (f[c.cell] >= 0 && !check_cell(c.cell)) return false;
    return true;
  };
  auto candidates = [&](int q) {
    std::vector<int> out;
    if (q == a.initial()) return std::vector<int>{b.initial()};
    for (const auto& c : a.cofaces(q)) {
      if (f[c.cell] < 0) continue;
      if (!reindex) return std::vector<int>{c.is_s ? b.s(f[c.cell], c.i) : b.t(f[c.cell], c.i)};
      for (int i = 1; i <= b.dim(f[c.cell]); ++i) out.push_back(c.is_s ? b.s(f[c.cell], i) : b.t(f[c.cell], i));
      return out;
    }
    for (int i = 1; i <= a.dim(q); ++i)
      for (bool is_s : {true, false}) {
        int face = is_s ? a.s(q, i) : a.t(q, i);
        if (f[face] < 0) continue;
        for (const auto& c : b.cofaces(f[face]))
          if (c.is_s == is_s && (reindex || c.i == i) && b.dim(c.cell) == a.dim(q)) out.push_back(c.cell);
        return out;
      }
    for (int g = 0; g < n; ++g)
      if (b.dim(g) == a.dim(q)) out.push_back(g);
    return out;
  };
  std::function<bool(std::size_t)> extend = [&](std::size_t k) {
    if (k == order.size()) return true;
    const int q = order[k];
    auto cand = candidates(q);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (int g : cand) {
      if (used[g] || b.dim(g) != a.dim(q)) continue;
      f[q] = g;
      used[g] = 1;
      if (local_ok(q) && extend(k + 1)) return true;
      used[g] = 0;
      f[q] = -1;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  if (f[a.initial()] != b.initial()) return std::nullopt;
  return f;
}

}  // namespace

std::optional<HDAMorphism> hda_isomorphic(const HDA& a, const HDA& b) {
  auto f = iso_search(a, b, false);
  if (f && !hda_morphism_check(*f, a, b)) return std::nullopt;
  return f;
}

std::optional<HDAMorphism> hda_isomorphic_up_to_reindexing(const HDA& a, const HDA& b) {
  return iso_search(a, b, true);
}

BisimResult hda_hh_bisimilar(const HDA& ain, const HDA& bin) {
  require_nice(ain, "hda_hh_bisimilar");
  require_nice(bin, "hda_hh_bisimilar");
  const HDA a = reachable_hda(ain), b = reachable_hda(bin);
  const std::size_t budget = search_budget(2'000'000);
  PathSpace pa(a, budget), pb(b, budget);

  auto move_name = [](const HDA& h, const HDAPath& p) {
    const auto& st = p.steps.back();
    return std::string(st.is_s ? "s " : "t ") + step_label(h, st);
  };
  std::vector<std::string> la(pa.paths.size()), lb(pb.paths.size());
  for (std::size_t k = 1; k < pa.paths.size(); ++k) la[k] = move_name(a, pa.paths[k]);
  for (std::size_t k = 1; k < pb.paths.size(); ++k) lb[k] = move_name(b, pb.paths[k]);

  // Candidate pairs reachable from the root pair by matched moves.
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::pair<int, std::string>> parent;
  auto add = [&](int x, int y, int from, std::string how) {
    auto [it, fresh] = ids.emplace(std::make_pair(x, y), static_cast<int>(pairs.size()));
    if (fresh) {
      pairs.emplace_back(x, y);
      parent.emplace_back(from, std::move(how));
      if (pairs.size() > budget) throw Error(Errc::BudgetExceeded, "too many path pairs");
    }
  };
  add(0, 0, -1, "");
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [x, y] = pairs[k];
    for (int cx : pa.children[x])
      for (int cy : pb.children[y])
        if (la[cx] == lb[cy]) add(cx, cy, static_cast<int>(k), la[cx]);
    for (const auto& [l, ax] : pa.adj[x])
      for (const auto& [m, by] : pb.adj[y])
        if (l == m) add(ax, by, static_cast<int>(k), "adj " + std::to_string(l));
    if (pa.parent[x] >= 0 && pb.parent[y] >= 0 && la[x] == lb[y])
      add(pa.parent[x], pb.parent[y], static_cast<int>(k), "undo " + la[x]);
  }

  std::vector<char> alive(pairs.size(), 1);
  auto in_r = [&](int x, int y) {
    auto it = ids.find({x, y});
    return it != ids.end() && alive[it->second];
  };
  auto failure = [&](int k) -> std::optional<std::string> {
    auto [x, y] = pairs[k];
    for (int cx : pa.children[x]) {
      bool ok = false;
      for (int cy : pb.children[y]) ok = ok || (la[cx] == lb[cy] && in_r(cx, cy));
      if (!ok) return "unmatched left " + la[cx];
    }
    for (int cy : pb.children[y]) {
      bool ok = false;
      for (int cx : pa.children[x]) ok = ok || (la[cx] == lb[cy] && in_r(cx, cy));
      if (!ok) return "unmatched right " + lb[cy];
    }
    for (const auto& [l, ax] : pa.adj[x]) {
      bool ok = false;
      for (const auto& [m, by] : pb.adj[y]) ok = ok || (l == m && in_r(ax, by));
      if (!ok) return "unmatched left adj " + std::to_string(l);
    }
    for (const auto& [m, by] : pb.adj[y]) {
      bool ok = false;
      for (const auto& [l, ax] : pa.adj[x]) ok = ok || (l == m && in_r(ax, by));
      if (!ok) return "unmatched right adj " + std::to_string(m);
    }
    if ((pa.parent[x] < 0) != (pb.parent[y] < 0)) return std::string("unmatched undo");
    if (pa.parent[x] >= 0 && (la[x] != lb[y] || !in_r(pa.parent[x], pb.parent[y])))
      return "unmatched undo " + la[x];
    return std::nullopt;
  };

  BisimResult res;
  int first_fail = -1;
  std::string first_reason;
  bool changed = true;
  bool first_round = true;
  while (changed) {
    changed = false;
    std::vector<int> drop;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (!alive[k]) continue;
      if (auto why = failure(static_cast<int>(k))) {
        drop.push_back(static_cast<int>(k));
        if (first_round && first_fail < 0) {
          first_fail = static_cast<int>(k);
          first_reason = *why;
        }
      }
    }
    for (int k : drop) alive[k] = 0;
    changed = !drop.empty();
    first_round = false;
  }
  res.holds = alive[0];
  res.relation_size = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
  if (!res.holds && first_fail >= 0) {
    std::vector<std::string> moves;
    for (int k = first_fail; k > 0; k = parent[k].first) moves.push_back(parent[k].second);
    std::reverse(moves.begin(), moves.end());
    moves.push_back(first_reason);
    res.distinguishing = moves;
  }
  return res;
}

}  // namespace truecc
