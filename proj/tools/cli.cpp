#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>

#include "truecc/equiv.hpp"
#include "truecc/fixtures.hpp"
#include "truecc/io.hpp"
#include "truecc/refinement.hpp"

namespace truecc {

using json = nlohmann::json;
namespace fx = fixtures;

namespace {

const std::vector<std::string> kSubcommands{"check", "translate", "compare", "refine",
                                            "trace", "sculpt",    "generate", "encode"};

template <class T>
const T& as(const Document& d, const char* what) {
  if (auto* p = std::get_if<T>(&d.value)) return *p;
  throw Error(Errc::InvalidArgument, std::string(what) + " cannot take a " + kind_name(d.kind()) + " document");
}

void print(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

json check_json(const STStructure& st, const Check& c) {
  json j{{"holds", c.holds}};
  if (c.witness) {
    json w{{"rule", c.witness->rule}};
    json cs = json::array();
    for (const auto& x : c.witness->configs) cs.push_back(st.format(x));
    w["configs"] = cs;
    if (c.witness->missing) w["missing"] = st.format(*c.witness->missing);
    if (c.witness->event >= 0) w["event"] = st.id(c.witness->event);
    j["witness"] = w;
  }
  return j;
}

json cell_check_json(const HDA& h, const CellCheck& c) {
  json cells = json::array();
  for (int q : c.cells) cells.push_back(h.id(q));
  json j{{"holds", c.holds}, {"cells", cells}};
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string dot_of(const Document& doc) {
  std::string out = "digraph steps {\n";
  auto edge = [&](const std::string& a, const std::string& b, const std::string& label) {
    out += "  " + quoted(a) + " -> " + quoted(b) + " [label=" + quoted(label) + "];\n";
  };
  auto node = [&](const std::string& a) { out += "  " + quoted(a) + ";\n"; };
  auto hda_dot = [&](const HDA& h) {
    for (int q = 0; q < static_cast<int>(h.size()); ++q) node(h.id(q));
    for (int q = 0; q < static_cast<int>(h.size()); ++q)
      for (const auto& s : hda_steps_from(h, q))
        edge(h.id(s.from), h.id(s.to), step_label(h, s) + (s.is_s ? "+" : "-"));
  };
  switch (doc.kind()) {
    case DocKind::ST: {
      const auto& st = std::get<STStructure>(doc.value);
      for (const auto& c : st.configs()) node(st.format(c));
      for (const auto& c : st.configs())
        for (const auto& s : steps_from(st, c))
          edge(st.format(s.source), st.format(s.target), st.label(s.event) + (s.kind == StepKind::S ? "+" : "-"));
      break;
    }
    case DocKind::STC: {
      const auto& stc = std::get<STCStructure>(doc.value);
      for (const auto& c : stc.configs()) node(stc.format(c));
      for (const auto& c : stc.configs())
        for (const auto& s : stc_steps(stc, c))
          edge(stc.format(s.source), stc.format(s.target),
               stc.label(s.event) + " " + stc_step_kind_name(s.kind));
      break;
    }
    case DocKind::HDA: hda_dot(std::get<HDA>(doc.value)); break;
    case DocKind::Sculpture: hda_dot(std::get<Sculpture>(doc.value).hda); break;
    default: throw Error(Errc::InvalidArgument, std::string("no step graph for ") + kind_name(doc.kind()));
  }
  return out + "}\n";
}

json check_document(const Document& doc, int& code) {
  json j{{"kind", "report"}, {"of", kind_name(doc.kind())}};
  switch (doc.kind()) {
    case DocKind::ST: {
      const auto& st = std::get<STStructure>(doc.value);
      auto r = property_report(st);
      j["mode"] = mode_name(r.mode);
      j["rooted"] = check_json(st, r.rooted);
      j["connected"] = check_json(st, r.connected);
      j["unions"] = check_json(st, r.unions);
      j["intersections"] = check_json(st, r.intersections);
      j["adjacentClosed"] = check_json(st, r.adjacent_closed);
      j["singleEvents"] = check_json(st, r.single_events);
      j["stable"] = r.stable();
      break;
    }
    case DocKind::STC: {
      const auto& stc = std::get<STCStructure>(doc.value);
      json max = json::array();
      for (const auto& c : maximal_configs(stc)) max.push_back(stc.format(c));
      j["valid"] = true;
      j["maximal"] = max;
      break;
    }
    case DocKind::Config: {
      auto s = stability(std::get<ConfigStructure>(doc.value));
      j["rooted"] = s.rooted;
      j["connected"] = s.connected;
      j["unions"] = s.unions;
      j["intersections"] = s.intersections;
      j["stable"] = s.stable();
      break;
    }
    case DocKind::Event: {
      const auto& e = std::get<InpureEventStructure>(doc.value);
      auto st = eintost(e);
      json l = json::array();
      for (EventSet x : left_closed_configs(e)) l.push_back(st.format(x));
      j["leftClosed"] = l;
      break;
    }
    case DocKind::HDA: {
      const auto& h = std::get<HDA>(doc.value);
      j["valid"] = true;
      j["acyclic"] = cell_check_json(h, is_acyclic(h));
      j["nonDegenerate"] = cell_check_json(h, is_non_degenerate(h));
      break;
    }
    case DocKind::Sculpture: {
      const auto& sc = std::get<Sculpture>(doc.value);
      j["embedding"] = check_sculpture(sc);
      j["bulkDim"] = sc.bulk_dim();
      if (!check_sculpture(sc)) code = 1;
      break;
    }
    case DocKind::Chu: {
      const auto& chu = std::get<ChuSpace>(doc.value);
      if (chu.K == 3) chu3_decode(chu);
      else chu4_decode(chu);
      j["K"] = chu.K;
      j["decodes"] = true;
      break;
    }
  }
  return j;
}

Document translate(const Document& in, const std::string& map) {
  static const std::map<std::string, std::function<Document(const Document&)>> maps{
      {"cintost", [](const Document& d) { return Document{cintost(as<ConfigStructure>(d, "cintost"))}; }},
      {"cintost2", [](const Document& d) { return Document{cintost2(as<ConfigStructure>(d, "cintost2"))}; }},
      {"cintost3", [](const Document& d) { return Document{cintost3(as<ConfigStructure>(d, "cintost3"))}; }},
      {"stintoc", [](const Document& d) { return Document{stintoc(as<STStructure>(d, "stintoc"))}; }},
      {"eintost", [](const Document& d) { return Document{eintost(as<InpureEventStructure>(d, "eintost"))}; }},
      {"stintoe", [](const Document& d) { return Document{stintoe(as<STStructure>(d, "stintoe"))}; }},
      {"stintoh", [](const Document& d) { return Document{stintoh(as<STStructure>(d, "stintoh"))}; }},
      {"hintost", [](const Document& d) { return Document{hintost(as<HDA>(d, "hintost"))}; }},
      {"sculpintost", [](const Document& d) { return Document{sculpintost(as<Sculpture>(d, "sculpintost"))}; }},
      {"stintosculpture",
       [](const Document& d) { return Document{stintosculpture(as<STStructure>(d, "stintosculpture"))}; }},
      {"unfold", [](const Document& d) { return Document{history_unfolding(as<HDA>(d, "unfold"))}; }},
  };
  auto it = maps.find(map);
  if (it == maps.end()) throw Error(Errc::InvalidArgument, "unknown map '" + map + "'");
  return it->second(in);
}

std::string default_map(DocKind from, DocKind to) {
  static const std::map<std::pair<DocKind, DocKind>, std::string> table{
      {{DocKind::Config, DocKind::ST}, "cintost2"},   {{DocKind::ST, DocKind::Config}, "stintoc"},
      {{DocKind::Event, DocKind::ST}, "eintost"},     {{DocKind::ST, DocKind::Event}, "stintoe"},
      {{DocKind::ST, DocKind::HDA}, "stintoh"},       {{DocKind::HDA, DocKind::ST}, "hintost"},
      {{DocKind::Sculpture, DocKind::ST}, "sculpintost"}, {{DocKind::ST, DocKind::Sculpture}, "stintosculpture"},
      {{DocKind::HDA, DocKind::HDA}, "unfold"},
  };
  auto it = table.find({from, to});
  if (it == table.end())
    throw Error(Errc::InvalidArgument,
                std::string("no translation from ") + kind_name(from) + " to " + kind_name(to));
  return it->second;
}

json bijection_json(const std::vector<Event>& a, const std::vector<Event>& b, const EventBijection& f) {
  json m = json::object();
  for (std::size_t e = 0; e < f.size(); ++e) m[a[e].id] = b[f[e]].id;
  return m;
}

json compare(const Document& a, const Document& b, const std::string& mode) {
  if (a.kind() != b.kind())
    throw Error(Errc::InvalidArgument, std::string("cannot compare ") + kind_name(a.kind()) + " with " +
                                           kind_name(b.kind()));
  json j{{"mode", mode}};
  auto bisim = [&](const BisimResult& r) {
    j["verdict"] = r.holds;
    j["relationSize"] = r.relation_size;
    if (!r.holds) j["distinguishing"] = r.distinguishing;
  };
  if (mode == "iso") {
    std::optional<EventBijection> f;
    const std::vector<Event>* ea = nullptr;
    const std::vector<Event>* eb = nullptr;
    switch (a.kind()) {
      case DocKind::ST: {
        const auto &x = std::get<STStructure>(a.value), &y = std::get<STStructure>(b.value);
        f = st_isomorphic(x, y);
        ea = &x.events();
        eb = &y.events();
        break;
      }
      case DocKind::Config: {
        const auto &x = std::get<ConfigStructure>(a.value), &y = std::get<ConfigStructure>(b.value);
        f = config_isomorphic(x, y);
        ea = &x.events;
        eb = &y.events;
        break;
      }
      case DocKind::Event: {
        const auto &x = std::get<InpureEventStructure>(a.value), &y = std::get<InpureEventStructure>(b.value);
        f = event_structure_isomorphic(x, y);
        ea = &x.events;
        eb = &y.events;
        break;
      }
      case DocKind::HDA: {
        const auto &x = std::get<HDA>(a.value), &y = std::get<HDA>(b.value);
        auto m = hda_isomorphic(x, y);
        j["verdict"] = m.has_value();
        if (m) {
          json cells = json::object();
          for (std::size_t q = 0; q < m->size(); ++q) cells[x.id(static_cast<int>(q))] = y.id((*m)[q]);
          j["cells"] = cells;
        }
        return j;
      }
      default: throw Error(Errc::InvalidArgument, std::string("iso is not defined on ") + kind_name(a.kind()));
    }
    j["verdict"] = f.has_value();
    if (f) j["bijection"] = bijection_json(*ea, *eb, *f);
  } else if (mode == "h") {
    bisim(st_h_bisimilar(as<STStructure>(a, "h"), as<STStructure>(b, "h")));
  } else if (mode == "hh") {
    if (a.kind() == DocKind::HDA) bisim(hda_hh_bisimilar(std::get<HDA>(a.value), std::get<HDA>(b.value)));
    else if (a.kind() == DocKind::Config)
      bisim(cs_hh_bisimilar(std::get<ConfigStructure>(a.value), std::get<ConfigStructure>(b.value)));
    else bisim(st_hh_bisimilar(as<STStructure>(a, "hh"), as<STStructure>(b, "hh")));
  } else if (mode == "cc") {
    const auto& x = as<STStructure>(a, "cc");
    const auto& y = as<STStructure>(b, "cc");
    bool ab = cc_simulates(x, y), ba = cc_simulates(y, x);
    j["verdict"] = ab && ba;
    j["leftCoversRight"] = ab;
    j["rightCoversLeft"] = ba;
  } else {
    throw Error(Errc::InvalidArgument, "unknown mode '" + mode + "'");
  }
  return j;
}

Document generate(const std::string& name, int k) {
  static const std::map<std::string, std::function<Document(int)>> examples{
      {"filled-square", [](int) { return Document{fx::filled_square()}; }},
      {"empty-square", [](int) { return Document{fx::empty_square()}; }},
      {"triangle", [](int) { return Document{fx::triangle()}; }},
      {"chain", [](int) { return Document{fx::chain_ab()}; }},
      {"choice", [](int) { return Document{fx::choice_ab()}; }},
      {"single", [](int) { return Document{fx::single_a()}; }},
      {"winskel", [](int) { return Document{fx::parallel_switch()}; }},
      {"winskel-config", [](int) { return Document{fx::parallel_switch_cs()}; }},
      {"resolved-conflict", [](int) { return Document{fx::resolved_conflict()}; }},
      {"resolved-conflict-config", [](int) { return Document{fx::resolved_conflict_cs()}; }},
      {"asym-conflict-2", [](int) { return Document{fx::asym_conflict_2()}; }},
      {"asym-conflict-3", [](int) { return Document{fx::asym_conflict_3()}; }},
      {"asym-conflict-event", [](int) { return Document{fx::asym_conflict_es()}; }},
      {"filled-square-hda", [](int) { return Document{fx::filled_square_hda()}; }},
      {"empty-square-hda", [](int) { return Document{fx::empty_square_hda()}; }},
      {"triangle-hda", [](int) { return Document{fx::triangle_hda()}; }},
      {"cube-missing-face", [](int) { return Document{fx::cube_missing_face(false)}; }},
      {"cube-missing-face-dotted", [](int) { return Document{fx::cube_missing_face(true)}; }},
      {"cube-unfolding-dotted", [](int) { return Document{fx::cube_unfolding_dotted()}; }},
      {"asym-conflict-hda-2", [](int) { return Document{fx::asym_conflict_hda_2()}; }},
      {"asym-conflict-hda-3", [](int) { return Document{fx::asym_conflict_hda_3()}; }},
      {"angelic-hda", [](int) { return Document{fx::angelic_hda()}; }},
      {"demonic-hda", [](int) { return Document{fx::demonic_hda()}; }},
      {"speed-game", [](int) { return Document{fx::speed_game_hda()}; }},
      {"cylinder", [](int) { return Document{fx::cylinder_hda()}; }},
      {"bulk", [](int n) { return Document{make_bulk(n)}; }},
      {"angelic", [](int) { return Document{gen_angelic()}; }},
      {"demonic", [](int) { return Document{gen_demonic()}; }},
      {"asym-stc", [](int) { return Document{gen_asym_stc()}; }},
      {"shutdown-backup", [](int n) { return Document{gen_shutdown_backup(n)}; }},
  };
  auto it = examples.find(name);
  if (it == examples.end()) {
    std::string known;
    for (const auto& [n, _] : examples) known += (known.empty() ? "" : ", ") + n;
    throw Error(Errc::InvalidArgument, "unknown example '" + name + "'; known: " + known);
  }
  return it->second(k);
}

Document encode(const Document& in, int K) {
  switch (in.kind()) {
    case DocKind::ST:
      if (K == 4) return {chu4_encode(st_to_stc(std::get<STStructure>(in.value)))};
      return {chu3_encode(std::get<STStructure>(in.value))};
    case DocKind::STC:
      if (K == 3) throw Error(Errc::InvalidArgument, "an stc document needs --chu 4");
      return {chu4_encode(std::get<STCStructure>(in.value))};
    case DocKind::Chu: {
      const auto& chu = std::get<ChuSpace>(in.value);
      if (K != 0 && K != chu.K) throw Error(Errc::InvalidArgument, "--chu does not match the document's K");
      if (chu.K == 3) return {chu3_decode(chu)};
      return {chu4_decode(chu)};
    }
    default: throw Error(Errc::InvalidArgument, std::string("encode cannot take a ") + kind_name(in.kind()) + " document");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto fail = [&](const std::string& code, const std::string& msg) {
    print(err, json{{"error", code}, {"message", msg}});
    return 2;
  };
  if (args.empty()) return fail(errc_name(Errc::UnknownSubcommand), "expected one of: check translate compare refine trace sculpt generate encode");
  if (args[0] != "-h" && args[0] != "--help" &&
      std::find(kSubcommands.begin(), kSubcommands.end(), args[0]) == kSubcommands.end())
    return fail(errc_name(Errc::UnknownSubcommand), "unknown subcommand '" + args[0] + "'");

  CLI::App app{"truecc: ST-structures, HDAs and related models"};
  app.require_subcommand(1);
  std::string file, file2, map, to, from, mode = "hh", target, example;
  bool dot = false, weak = false;
  int k = 2, chu = 0, max_dim = -1, cap = 6;
  std::size_t bound = 64;

  auto* check = app.add_subcommand("check", "Validate a document and report its properties");
  check->add_option("file", file, "Document path or -")->required();
  check->add_flag("--dot", dot, "Emit the step graph in dot format");

  auto* tr = app.add_subcommand("translate", "Apply a translation map");
  tr->add_option("file", file, "Document path or -")->required();
  tr->add_option("--map", map, "cintost, cintost2, cintost3, stintoc, eintost, stintoe, stintoh, hintost, "
                               "sculpintost, stintosculpture, unfold");
  tr->add_option("--from", from, "Expected input kind");
  tr->add_option("--to", to, "Output kind; picks the map when --map is absent");
  tr->add_flag("--dot", dot, "Emit the step graph of the result in dot format");

  auto* cmp = app.add_subcommand("compare", "Compare two documents");
  cmp->add_option("left", file, "Document path")->required();
  cmp->add_option("right", file2, "Document path")->required();
  cmp->add_option("--mode", mode, "iso | h | hh | cc")->check(CLI::IsMember({"iso", "h", "hh", "cc"}));

  auto* ref = app.add_subcommand("refine", "Refine labels by structures");
  ref->add_option("file", file, "ST document")->required();
  ref->add_option("map", file2, "JSON object from labels to ST documents")->required();
  ref->add_flag("--weak", weak, "Validate the result in weak mode");

  auto* trc = app.add_subcommand("trace", "List rooted paths and their ST-traces");
  trc->add_option("file", file, "ST document")->required();
  trc->add_option("--target", target, "Target configuration, e.g. (ab,a)")->required();
  trc->add_option("--bound", bound, "Maximum number of paths");

  auto* sc = app.add_subcommand("sculpt", "Search a bulk embedding");
  sc->add_option("file", file, "HDA document")->required();
  sc->add_option("--max-dim", max_dim, "Largest bulk dimension tried; default the number of event classes");
  sc->add_option("--cap", cap, "Hard dimension cap");

  auto* gen = app.add_subcommand("generate", "Emit a named example");
  gen->add_option("--example", example, "Example name")->required();
  gen->add_option("--k", k, "Size parameter for bulk and shutdown-backup");

  auto* enc = app.add_subcommand("encode", "Chu encodings; decodes chu documents");
  enc->add_option("file", file, "Document path or -")->required();
  enc->add_option("--chu", chu, "3 or 4")->check(CLI::IsMember({3, 4}));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail("UsageError", e.what());
  }

  try {
    if (*check) {
      Document doc = load_document(file);
      if (dot) {
        out << dot_of(doc);
        return 0;
      }
      int code = 0;
      print(out, check_document(doc, code));
      return code;
    }
    if (*tr) {
      Document doc = load_document(file);
      if (!from.empty() && parse_kind(from) != doc.kind())
        throw Error(Errc::InvalidArgument, "input is a " + std::string(kind_name(doc.kind())) + " document");
      if (map.empty()) {
        if (to.empty()) throw Error(Errc::InvalidArgument, "translate needs --map or --to");
        map = default_map(doc.kind(), parse_kind(to));
      }
      Document res = translate(doc, map);
      if (!to.empty() && parse_kind(to) != res.kind())
        throw Error(Errc::InvalidArgument, map + " does not produce a " + to + " document");
      if (dot) out << dot_of(res);
      else out << save_document(res);
      return 0;
    }
    if (*cmp) {
      json j = compare(load_document(file), load_document(file2), mode);
      print(out, j);
      return j["verdict"].get<bool>() ? 0 : 1;
    }
    if (*ref) {
      Document base_doc = load_document(file);
      const auto& base = as<STStructure>(base_doc, "refine");
      json m;
      try {
        m = json::parse(read_input(file2));
      } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, e.what());
      }
      if (!m.is_object()) throw Error(Errc::SchemaError, "the refinement map must be an object");
      RefinementFunction r;
      for (const auto& [label, d] : m.items()) r[label] = as<STStructure>(parse_document(d.dump()), "refine");
      out << save_document({refine(base, r, weak ? Mode::Weak : Mode::Strict)});
      return 0;
    }
    if (*trc) {
      Document doc = load_document(file);
      const auto& st = as<STStructure>(doc, "trace");
      json paths = json::array();
      for (const auto& p : enumerate_rooted_paths(st, st.parse_config(target), bound)) {
        json cs = json::array({st.format(p.start)});
        for (const auto& s : p.steps) cs.push_back(st.format(s.target));
        paths.push_back({{"configs", cs}, {"trace", format_trace(st_trace(st, p))}});
      }
      print(out, json{{"target", st.format(st.parse_config(target))}, {"paths", paths}});
      return paths.empty() ? 1 : 0;
    }
    if (*sc) {
      Document doc = load_document(file);
      const auto& h = as<HDA>(doc, "sculpt");
      auto res = is_sculpture(h, SculptureSearch{max_dim, cap});
      if (!res) {
        print(out, json{{"sculpture", false}});
        return 1;
      }
      out << save_document({*res});
      return 0;
    }
    if (*gen) {
      out << save_document(generate(example, k));
      return 0;
    }
    if (*enc) {
      out << save_document(encode(load_document(file), chu));
      return 0;
    }
  } catch (const Error& e) {
    return fail(errc_name(e.code()), e.what());
  }
  return fail(errc_name(Errc::UnknownSubcommand), "no subcommand");
}

}  // namespace truecc
