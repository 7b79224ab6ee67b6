#include "truecc/io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include <json.hpp>

namespace truecc {

using json = nlohmann::json;

namespace {

constexpr const char* kKindNames[] = {"st", "stc", "config", "event", "hda", "sculpture", "chu"};

[[noreturn]] void schema(const std::string& msg) { throw Error(Errc::SchemaError, msg); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) schema("expected an object around '" + std::string(key) + "'");
  auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing field '") + key + "'");
  return *it;
}

const json& array_field(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) schema(std::string("field '") + key + "' must be an array");
  return a;
}

std::string string_of(const json& j, const char* what) {
  if (!j.is_string()) schema(std::string(what) + " must be a string");
  return j.get<std::string>();
}

int int_of(const json& j, const char* what) {
  if (!j.is_number_integer()) schema(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<std::string> ids_of(const json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array of event ids");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(string_of(x, what));
  return out;
}

std::vector<Event> read_events(const json& doc) {
  std::vector<Event> out;
  for (const auto& e : array_field(doc, "events"))
    out.push_back({string_of(field(e, "id"), "event id"), string_of(field(e, "label"), "event label")});
  return out;
}

json write_events(const std::vector<Event>& events) {
  json a = json::array();
  for (const auto& e : events) a.push_back({{"id", e.id}, {"label", e.label}});
  return a;
}

// Position lookup over id-sorted events.
struct Ids {
  std::vector<Event> events;
  EventSet set(const std::vector<std::string>& ids) const {
    EventSet s = 0;
    for (const auto& id : ids) {
      auto it = std::lower_bound(events.begin(), events.end(), id,
                                 [](const Event& e, const std::string& v) { return e.id < v; });
      if (it == events.end() || it->id != id) throw Error(Errc::UndeclaredEvent, "event '" + id + "' is not declared");
      s |= bit(static_cast<int>(it - events.begin()));
    }
    return s;
  }
  json names(EventSet s) const {
    json a = json::array();
    for (int e : members(s)) a.push_back(events[e].id);
    return a;
  }
};

Ids sorted_ids(std::vector<Event> events) {
  canonicalize_events(events);
  return {std::move(events)};
}

json index_list(EventSet s) {
  json a = json::array();
  for (int e : members(s)) a.push_back(e);
  return a;
}

EventSet index_set(const json& j, int dim) {
  if (!j.is_array()) schema("bulk cell components must be index arrays");
  EventSet s = 0;
  for (const auto& x : j) {
    int i = int_of(x, "bulk index");
    if (i < 0 || i >= dim) schema("bulk index " + std::to_string(i) + " out of range");
    s |= bit(i);
  }
  return s;
}

// ---- st

STStructure read_st(const json& doc) {
  Mode mode = Mode::Strict;
  if (auto it = doc.find("mode"); it != doc.end()) {
    auto m = string_of(*it, "mode");
    if (m == "weak") mode = Mode::Weak;
    else if (m != "strict") schema("mode must be 'strict' or 'weak'");
  }
  std::vector<RawConfig> cs;
  for (const auto& c : array_field(doc, "configs")) cs.push_back({ids_of(field(c, "S"), "S"), ids_of(field(c, "T"), "T")});
  return validate_st(read_events(doc), cs, mode);
}

json write_st(const STStructure& st) {
  Ids ids{st.events()};
  json cs = json::array();
  for (const auto& c : st.configs()) cs.push_back({{"S", ids.names(c.S)}, {"T", ids.names(c.T)}});
  json j{{"events", write_events(st.events())}, {"configs", cs}};
  if (st.mode() == Mode::Weak) j["mode"] = "weak";
  return j;
}

// ---- stc

STCStructure read_stc(const json& doc) {
  std::vector<RawSTCConfig> cs;
  for (const auto& c : array_field(doc, "configs"))
    cs.push_back({ids_of(field(c, "S"), "S"), ids_of(field(c, "T"), "T"), ids_of(field(c, "C"), "C")});
  return validate_stc(read_events(doc), cs);
}

json write_stc(const STCStructure& stc) {
  Ids ids{stc.events()};
  json cs = json::array();
  for (const auto& c : stc.configs())
    cs.push_back({{"S", ids.names(c.S)}, {"T", ids.names(c.T)}, {"C", ids.names(c.C)}});
  return {{"events", write_events(stc.events())}, {"configs", cs}};
}

// ---- config

ConfigStructure read_config(const json& doc) {
  std::vector<std::vector<std::string>> cs;
  for (const auto& c : array_field(doc, "configs")) cs.push_back(ids_of(c, "configuration"));
  return validate_config_structure(read_events(doc), cs);
}

json write_config(const ConfigStructure& c) {
  Ids ids{c.events};
  json cs = json::array();
  for (EventSet x : c.configs) cs.push_back(ids.names(x));
  return {{"events", write_events(c.events)}, {"configs", cs}};
}

// ---- event

InpureEventStructure read_event(const json& doc) {
  auto ids = sorted_ids(read_events(doc));
  std::vector<Enabling> en;
  for (const auto& p : array_field(doc, "enabling"))
    en.push_back({ids.set(ids_of(field(p, "Z"), "Z")), ids.set(ids_of(field(p, "Y"), "Y"))});
  return make_event_structure(ids.events, std::move(en));
}

json write_event(const InpureEventStructure& e) {
  Ids ids{e.events};
  json en = json::array();
  for (const auto& p : e.enabling) en.push_back({{"Z", ids.names(p.Z)}, {"Y", ids.names(p.Y)}});
  return {{"events", write_events(e.events)}, {"enabling", en}};
}

// ---- hda

HDA read_hda(const json& doc) {
  RawHDA raw;
  for (const auto& c : array_field(doc, "cells"))
    raw.cells.push_back({string_of(field(c, "id"), "cell id"), int_of(field(c, "dim"), "cell dim")});
  auto maps = [&](const char* key, std::vector<RawHDA::MapEntry>& out) {
    for (const auto& m : array_field(doc, key))
      out.push_back({string_of(field(m, "cell"), "map cell"), int_of(field(m, "i"), "map index"),
                     string_of(field(m, "to"), "map target")});
  };
  maps("s", raw.s);
  maps("t", raw.t);
  const json& labels = field(doc, "labels");
  if (!labels.is_object()) schema("labels must be an object");
  for (const auto& [k, v] : labels.items()) raw.labels[k] = string_of(v, "label");
  raw.initial = string_of(field(doc, "initial"), "initial");
  if (auto it = doc.find("finals"); it != doc.end()) raw.finals = ids_of(*it, "finals");
  return validate_hda(raw);
}

json write_hda(const HDA& h) {
  RawHDA raw = h.raw();
  std::vector<Cell> cells = raw.cells;
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return std::tie(a.dim, a.id) < std::tie(b.dim, b.id); });
  json cj = json::array();
  for (const auto& c : cells) cj.push_back({{"id", c.id}, {"dim", c.dim}});
  auto maps = [](std::vector<RawHDA::MapEntry> v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return std::tie(a.cell, a.i) < std::tie(b.cell, b.i); });
    json a = json::array();
    for (const auto& m : v) a.push_back({{"cell", m.cell}, {"i", m.i}, {"to", m.to}});
    return a;
  };
  std::sort(raw.finals.begin(), raw.finals.end());
  return {{"cells", cj},          {"s", maps(raw.s)},       {"t", maps(raw.t)},
          {"labels", raw.labels}, {"initial", raw.initial}, {"finals", raw.finals}};
}

// ---- sculpture

Sculpture read_sculpture(const json& doc) {
  Sculpture sc;
  sc.hda = read_hda(field(doc, "hda"));
  const int dim = int_of(field(doc, "bulkDim"), "bulkDim");
  if (dim < 0 || dim > kMaxEvents) schema("bulkDim out of range");
  if (auto it = doc.find("bulkEvents"); it != doc.end()) {
    sc.bulk_events = read_events(json{{"events", *it}});
    if (static_cast<int>(sc.bulk_events.size()) != dim) schema("bulkEvents does not match bulkDim");
  } else {
    sc.bulk_events = numbered_events(dim);
  }
  const json& emb = field(doc, "embedding");
  if (!emb.is_object()) schema("embedding must be an object");
  sc.embedding.assign(sc.hda.size(), STConfig{});
  std::vector<bool> seen(sc.hda.size(), false);
  for (const auto& [id, key] : emb.items()) {
    int q = sc.hda.find(id);
    if (q < 0) throw Error(Errc::CellNotFound, "embedding names unknown cell " + id);
    sc.embedding[q] = {index_set(field(key, "S"), dim), index_set(field(key, "T"), dim)};
    seen[q] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) schema("embedding must cover every cell");
  if (!check_sculpture(sc))
    throw Error(Errc::PreconditionViolated, "embedding is not an injective morphism into the bulk");
  return sc;
}

json write_sculpture(const Sculpture& sc) {
  json emb = json::object();
  for (int q = 0; q < static_cast<int>(sc.hda.size()); ++q)
    emb[sc.hda.id(q)] = {{"S", index_list(sc.embedding[q].S)}, {"T", index_list(sc.embedding[q].T)}};
  return {{"hda", write_hda(sc.hda)},
          {"bulkDim", sc.bulk_dim()},
          {"bulkEvents", write_events(sc.bulk_events)},
          {"embedding", emb}};
}

// ---- chu

ChuSpace read_chu(const json& doc) {
  ChuSpace chu;
  chu.K = int_of(field(doc, "K"), "K");
  if (chu.K != 3 && chu.K != 4) schema("K must be 3 or 4");
  auto ids = sorted_ids(read_events(doc));
  chu.events = ids.events;
  for (const auto& x : array_field(doc, "states")) {
    if (!x.is_object()) schema("a state must be an object from event ids to values");
    std::vector<ChuValue> v(chu.events.size(), ChuValue::Zero);
    std::vector<bool> set(chu.events.size(), false);
    for (const auto& [id, val] : x.items()) {
      int e = members(ids.set({id})).front();
      v[e] = parse_chu_symbol(string_of(val, "value"));
      if (chu.K == 3 && v[e] == ChuValue::Cancelled)
        throw Error(Errc::InvalidValuation, "x is not a value of K=3");
      set[e] = true;
    }
    if (std::find(set.begin(), set.end(), false) != set.end())
      throw Error(Errc::InvalidValuation, "a state must value every event");
    chu.states.push_back(std::move(v));
  }
  std::sort(chu.states.begin(), chu.states.end());
  chu.states.erase(std::unique(chu.states.begin(), chu.states.end()), chu.states.end());
  return chu;
}

json write_chu(const ChuSpace& chu) {
  auto states = chu.states;
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  json xs = json::array();
  for (const auto& x : states) {
    json o = json::object();
    for (std::size_t e = 0; e < x.size(); ++e) o[chu.events[e].id] = chu_symbol(x[e]);
    xs.push_back(o);
  }
  return {{"K", chu.K}, {"events", write_events(chu.events)}, {"states", xs}};
}

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

const char* kind_name(DocKind k) { return kKindNames[static_cast<int>(k)]; }

DocKind parse_kind(std::string_view name) {
  for (int k = 0; k < 7; ++k)
    if (name == kKindNames[k]) return static_cast<DocKind>(k);
  throw Error(Errc::SchemaError, "unknown kind '" + std::string(name) + "'");
}

Document parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, location(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) schema("a document must be a JSON object");
  if (auto it = doc.find("version"); it != doc.end() && int_of(*it, "version") != kDocumentVersion)
    schema("unsupported version " + it->dump());
  try {
    switch (parse_kind(string_of(field(doc, "kind"), "kind"))) {
      case DocKind::ST: return {read_st(doc)};
      case DocKind::STC: return {read_stc(doc)};
      case DocKind::Config: return {read_config(doc)};
      case DocKind::Event: return {read_event(doc)};
      case DocKind::HDA: return {read_hda(doc)};
      case DocKind::Sculpture: return {read_sculpture(doc)};
      case DocKind::Chu: return {read_chu(doc)};
    }
  } catch (const json::exception& e) {
    schema(e.what());
  }
  schema("unreachable kind");
}

std::string save_document(const Document& doc) {
  json j = std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, STStructure>) return write_st(v);
        else if constexpr (std::is_same_v<T, STCStructure>) return write_stc(v);
        else if constexpr (std::is_same_v<T, ConfigStructure>) return write_config(v);
        else if constexpr (std::is_same_v<T, InpureEventStructure>) return write_event(v);
        else if constexpr (std::is_same_v<T, HDA>) return write_hda(v);
        else if constexpr (std::is_same_v<T, Sculpture>) return write_sculpture(v);
        else return write_chu(v);
      },
      doc.value);
  j["kind"] = kind_name(doc.kind());
  j["version"] = kDocumentVersion;
  return j.dump(2) + "\n";
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document load_document(const std::string& path) { return parse_document(read_input(path)); }

}  // namespace truecc
