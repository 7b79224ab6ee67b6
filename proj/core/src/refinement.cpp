#include "truecc/refinement.hpp"

#include <algorithm>

#include "truecc/hda.hpp"

namespace truecc {

namespace {

const STStructure& image_of(const RefinementFunction& r, const std::string& label,
                            std::map<std::string, STStructure>& defaults) {
  if (auto it = r.find(label); it != r.end()) return it->second;
  auto [it, fresh] = defaults.emplace(label, STStructure{});
  if (fresh) it->second = singleton_st(label);
  return it->second;
}

}  // namespace

STStructure singleton_st(const std::string& label) {
  return make_st({{label, label}}, {{0, 0}, {1, 0}, {1, 1}});
}

STStructure refine(const STStructure& st, const RefinementFunction& r, Mode mode) {
  std::map<std::string, STStructure> defaults;
  const int ne = st.event_count();
  std::vector<const STStructure*> img(ne);
  for (int e = 0; e < ne; ++e) {
    img[e] = &image_of(r, st.label(e), defaults);
    if (img[e]->size() == 0) throw Error(Errc::EmptyRefinementImage, st.label(e));
  }

  // Refined event (e, e') sits at offset[e] + e'.
  std::vector<int> offset(ne + 1, 0);
  for (int e = 0; e < ne; ++e) offset[e + 1] = offset[e] + img[e]->event_count();
  if (offset[ne] > kMaxEvents) throw Error(Errc::TooManyEvents, "refined structure has more than 64 events");
  std::vector<Event> events;
  for (int e = 0; e < ne; ++e)
    for (const auto& ev : img[e]->events()) events.push_back({st.id(e) + "." + ev.id, ev.label});

  // Per event: the non-empty non-maximal configs and the maximal ones.
  std::vector<std::vector<STConfig>> running(ne), finished(ne);
  for (int e = 0; e < ne; ++e) {
    const auto& cf = img[e]->configs();
    for (const auto& c : cf) {
      bool maximal = std::none_of(cf.begin(), cf.end(),
                                  [&](const STConfig& d) { return !(d == c) && config_subset(c, d); });
      if (maximal) {
        if (c.S != c.T) throw Error(Errc::MissingClosure, "maximal configuration with S != T in a refinement image");
        finished[e].push_back(c);
      } else if (!(c == STConfig{})) {
        running[e].push_back(c);
      }
    }
  }

  auto shift = [&](EventSet s, int e) { return s << offset[e]; };
  const std::size_t budget = search_budget(1'000'000);
  std::size_t produced = 0;
  std::vector<STConfig> out;
  for (const auto& c : st.configs()) {
    const auto evs = members(c.S);
    std::vector<const std::vector<STConfig>*> choices;
    for (int e : evs) choices.push_back(has(c.T, e) ? &finished[e] : &running[e]);
    if (std::any_of(choices.begin(), choices.end(), [](const auto* v) { return v->empty(); })) continue;
    std::vector<std::size_t> pick(evs.size(), 0);
    while (true) {
      if (++produced > budget) throw Error(Errc::BudgetExceeded, "refinement produced too many configurations");
      STConfig rc;
      for (std::size_t k = 0; k < evs.size(); ++k) {
        const STConfig& part = (*choices[k])[pick[k]];
        rc.S |= shift(part.S, evs[k]);
        rc.T |= shift(part.T, evs[k]);
      }
      out.push_back(rc);
      std::size_t k = 0;
      while (k < evs.size() && ++pick[k] == choices[k]->size()) pick[k++] = 0;
      if (k == evs.size()) break;
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return make_st(std::move(events), std::move(out), mode);
}

bool PreservationReport::holds() const {
  return std::all_of(implications.begin(), implications.end(), [](const Implication& i) { return i.holds(); });
}

PreservationReport check_preservation(const STStructure& st, const RefinementFunction& r) {
  PreservationReport rep;
  STStructure out;
  try {
    out = refine(st, r, Mode::Strict);
  } catch (const Error& e) {
    if (e.code() != Errc::MissingClosure) throw;
    rep.well_defined = false;
    rep.error = e.what();
    out = refine(st, r, Mode::Weak);
  }

  std::map<std::string, STStructure> defaults;
  std::vector<PropertyReport> images;
  for (const auto& ev : st.events()) images.push_back(property_report(image_of(r, ev.label, defaults)));
  auto all_images = [&](auto field) {
    return std::all_of(images.begin(), images.end(), [&](const PropertyReport& p) { return (p.*field).holds; });
  };
  const auto before = property_report(st);
  const auto after = property_report(out);
  rep.implications = {
      {"rooted", before.rooted.holds, after.rooted.holds},
      {"connected", before.connected.holds && all_images(&PropertyReport::connected), after.connected.holds},
      {"adjacent-closed", before.adjacent_closed.holds && all_images(&PropertyReport::adjacent_closed),
       after.adjacent_closed.holds},
      {"bounded unions", before.unions.holds && all_images(&PropertyReport::unions), after.unions.holds},
      {"bounded intersections", before.intersections.holds && all_images(&PropertyReport::intersections),
       after.intersections.holds},
  };
  return rep;
}

}  // namespace truecc
