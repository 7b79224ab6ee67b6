#pragma once

#include <map>
#include <string>
#include <vector>

#include "truecc/st.hpp"

namespace truecc {

// Label -> refining structure. Labels without an entry are refined by a
// single event carrying the same label.
using RefinementFunction = std::map<std::string, STStructure>;

// {(,), (l,), (l,l)} over one event with id and label l.
STStructure singleton_st(const std::string& label);

// Refined events are "orig.ref". The result is validated in `mode`; in strict
// mode a missing corner raises MissingClosure.
STStructure refine(const STStructure& st, const RefinementFunction& r, Mode mode = Mode::Strict);

struct Implication {
  std::string name;
  bool hypothesis = false;
  bool conclusion = false;
  bool holds() const { return !hypothesis || conclusion; }
};

struct PreservationReport {
  bool well_defined = true;  // refine succeeded in strict mode
  std::string error;
  std::vector<Implication> implications;
  bool holds() const;
};

// Checks each preservation implication on this instance. When the strict
// result is ill-defined, the implications are evaluated on the weak result.
PreservationReport check_preservation(const STStructure& st, const RefinementFunction& r);

}  // namespace truecc
