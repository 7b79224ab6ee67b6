#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "truecc/equiv.hpp"
#include "truecc/error.hpp"

namespace truecc {

struct Cell {
  std::string id;
  int dim = 0;
  bool operator==(const Cell&) const = default;
};

// Unvalidated input. Map entries use 1-based indexes.
struct RawHDA {
  struct MapEntry {
    std::string cell;
    int i = 0;
    std::string to;
  };
  std::vector<Cell> cells;
  std::vector<MapEntry> s, t;
  std::map<std::string, std::string> labels;
  std::string initial;
  std::vector<std::string> finals;
};

class HDA {
 public:
  std::size_t size() const { return cells_.size(); }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(int q) const { return cells_[q]; }
  int dim(int q) const { return cells_[q].dim; }
  const std::string& id(int q) const { return cells_[q].id; }
  // -1 when absent.
  int find(const std::string& id) const;
  int initial() const { return initial_; }
  const std::vector<int>& finals() const { return finals_; }

  // 1-based i.
  int s(int q, int i) const { return s_[q][i - 1]; }
  int t(int q, int i) const { return t_[q][i - 1]; }
  const std::string& label(int q) const { return labels_[q]; }

  struct Coface {
    int cell = -1;
    bool is_s = true;
    int i = 0;
  };
  const std::vector<Coface>& cofaces(int q) const { return up_[q]; }

  // The 1-cell of direction i of q, reached by lowering every other direction.
  int edge(int q, int i) const;
  const std::string& direction_label(int q, int i) const { return labels_[edge(q, i)]; }

  std::vector<int> cells_of_dim(int n) const;
  int max_dim() const;

  RawHDA raw() const;

 private:
  friend HDA validate_hda(const RawHDA& raw);
  friend HDA build_hda(std::vector<Cell>, std::vector<std::vector<int>>, std::vector<std::vector<int>>,
                       std::vector<std::string>, int, std::vector<int>);

  std::vector<Cell> cells_;
  std::vector<std::vector<int>> s_, t_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Coface>> up_;
  std::map<std::string, int> index_;
  int initial_ = -1;
  std::vector<int> finals_;
};

HDA validate_hda(const RawHDA& raw);

// Index-based constructor used by the translations; runs the same validation.
HDA build_hda(std::vector<Cell> cells, std::vector<std::vector<int>> s, std::vector<std::vector<int>> t,
              std::vector<std::string> labels, int initial, std::vector<int> finals = {});

// Cells not reachable from the initial cell by steps are dropped; their ids
// are appended to `dropped` when given.
HDA reachable_hda(const HDA& h, std::vector<std::string>* dropped = nullptr);

struct HDAStep {
  int from = -1;
  int to = -1;
  bool is_s = true;
  int index = 0;
  bool operator==(const HDAStep&) const = default;
  auto operator<=>(const HDAStep&) const = default;
};

struct HDAPath {
  int start = -1;
  std::vector<HDAStep> steps;
  int end() const { return steps.empty() ? start : steps.back().to; }
  std::size_t length() const { return steps.size(); }
  bool operator==(const HDAPath&) const = default;
  auto operator<=>(const HDAPath&) const = default;
};

std::vector<HDAStep> hda_steps_from(const HDA& h, int q);
// The label carried by a step, read from the higher cell.
const std::string& step_label(const HDA& h, const HDAStep& st);

struct CellCheck {
  bool holds = true;
  std::vector<int> cells;
  std::string reason;
};

CellCheck is_acyclic(const HDA& h);
CellCheck is_non_degenerate(const HDA& h);

// Paths of at most `bound` steps, depth first in step order.
std::vector<HDAPath> hda_paths(const HDA& h, int from, int to, std::size_t bound = 64);
std::string format_path(const HDA& h, const HDAPath& p);

// Paths obtained from p by one segment replacement with middle cell at
// position l (the middle cell is the (l+1)-th cell of the path).
struct Adjacent {
  int l = 0;
  HDAPath path;
};
std::vector<Adjacent> adjacent_paths(const HDA& h, const HDAPath& p);
std::optional<int> adjacent(const HDA& h, const HDAPath& a, const HDAPath& b);

struct HomotopyClass {
  HDAPath representative;
  std::vector<HDAPath> members;
};
HomotopyClass homotopy_class(const HDA& h, const HDAPath& p);

HDA history_unfolding(const HDA& h);

// Cell map a -> b by index.
using HDAMorphism = std::vector<int>;
bool hda_morphism_check(const HDAMorphism& f, const HDA& a, const HDA& b);
std::optional<HDAMorphism> hda_isomorphic(const HDA& a, const HDA& b);
// Bijection where each cell's (s_i, t_i) face pairs may be matched under a
// per-cell permutation of the indexes.
std::optional<HDAMorphism> hda_isomorphic_up_to_reindexing(const HDA& a, const HDA& b);

BisimResult hda_hh_bisimilar(const HDA& a, const HDA& b);

// Reads TRUECC_BUDGET, falling back to `fallback`.
std::size_t search_budget(std::size_t fallback);

}  // namespace truecc
