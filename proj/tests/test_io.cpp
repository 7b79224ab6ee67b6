#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "truecc/equiv.hpp"
#include "truecc/fixtures.hpp"
#include "truecc/io.hpp"

using namespace truecc;
using json = nlohmann::json;
namespace fs = std::filesystem;
namespace fx = truecc::fixtures;

namespace {

const fs::path kFixtures = TRUECC_FIXTURE_DIR;

std::string fixture(const std::string& name) { return (kFixtures / name).string(); }

struct Run {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::optional<Errc> error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("every shipped fixture round-trips byte for byte") {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(kFixtures)) {
    const auto path = entry.path().string();
    if (entry.path().filename() == "broken-square.hda.json") continue;
    CAPTURE(path);
    const auto text = read_input(path);
    CHECK(save_document(parse_document(text)) == text);
    ++seen;
  }
  CHECK(seen >= 25);
}

TEST_CASE("generated examples match the shipped files") {
  CHECK(cli({"generate", "--example", "winskel"}).out == read_input(fixture("winskel.st.json")));
  CHECK(cli({"generate", "--example", "shutdown-backup", "--k", "2"}).out ==
        read_input(fixture("shutdown-backup-2.stc.json")));
  auto doc = parse_document(cli({"generate", "--example", "shutdown-backup", "--k", "2"}).out);
  CHECK(doc.kind() == DocKind::STC);
  CHECK(std::get<STCStructure>(doc.value) == gen_shutdown_backup(2));
}

TEST_CASE("documents keep the module semantics") {
  auto st = std::get<STStructure>(load_document(fixture("filled.st.json")).value);
  CHECK(st == fx::filled_square());
  auto h = std::get<HDA>(load_document(fixture("speed-game.hda.json")).value);
  CHECK(hda_isomorphic(h, fx::speed_game_hda()).has_value());
  auto sc = std::get<Sculpture>(load_document(fixture("angelic.sculpture.json")).value);
  CHECK(check_sculpture(sc));
  auto es = std::get<InpureEventStructure>(load_document(fixture("asym-conflict.event.json")).value);
  CHECK(es == fx::asym_conflict_es());
  auto text = save_document({make_st(fx::triangle().events(), fx::triangle().configs(), Mode::Weak)});
  CHECK(text.find("\"mode\": \"weak\"") != std::string::npos);
  CHECK(std::get<STStructure>(parse_document(text).value).mode() == Mode::Weak);
}

TEST_CASE("load errors") {
  try {
    parse_document("{\n  \"kind\": \"st\",\n  \"events\": [ ,\n}");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(error_of([] { parse_document("[]"); }) == Errc::SchemaError);
  CHECK(error_of([] { parse_document(R"({"events":[],"configs":[]})"); }) == Errc::SchemaError);
  CHECK(error_of([] { parse_document(R"({"kind":"poset"})"); }) == Errc::SchemaError);
  CHECK(error_of([] { parse_document(R"({"kind":"st","events":[{"id":"a"}],"configs":[]})"); }) ==
        Errc::SchemaError);
  CHECK(error_of([] { parse_document(R"({"kind":"st","events":[],"configs":[],"version":7})"); }) ==
        Errc::SchemaError);
  CHECK(error_of([] {
          parse_document(R"({"kind":"st","events":[{"id":"a","label":"a"}],"configs":[{"S":["z"],"T":[]}]})");
        }) == Errc::UndeclaredEvent);
  CHECK(error_of([] {
          parse_document(R"({"kind":"st","events":[{"id":"a","label":"a"}],"configs":[{"S":["a"],"T":[]}]})");
        }) == Errc::MissingClosure);
  CHECK(error_of([] {
          parse_document(R"({"kind":"chu","K":3,"events":[{"id":"a","label":"a"}],"states":[{"a":"x"}]})");
        }) == Errc::InvalidValuation);
  try {
    load_document(fixture("broken-square.hda.json"));
    FAIL("expected a cubical law violation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CubicalLawViolation);
    CHECK(std::string(e.what()).find("(ab,{})") != std::string::npos);
  }
}

TEST_CASE("cli check verdicts on the shipped fixtures") {
  auto w = cli({"check", fixture("winskel.st.json")});
  CHECK(w.code == 0);
  CHECK(w.j()["intersections"]["holds"] == false);
  CHECK(w.j()["unions"]["holds"] == true);
  auto r = cli({"check", fixture("resolved-conflict.st.json")}).j();
  CHECK(r["unions"]["holds"] == false);
  CHECK(r["intersections"]["holds"] == true);
  auto e = cli({"check", fixture("empty.st.json")}).j();
  CHECK(e["unions"]["holds"] == false);
  CHECK(e["intersections"]["holds"] == false);
  CHECK(e["adjacentClosed"]["holds"] == true);
  auto cyl = cli({"check", fixture("cylinder.hda.json")}).j();
  CHECK(cyl["acyclic"]["holds"] == false);
  CHECK(cyl["nonDegenerate"]["holds"] == true);
  auto asym = cli({"check", fixture("asym.stc.json")}).j();
  CHECK(asym["maximal"] == json::array({"(s,s,b)", "(bs,bs,{})"}));
  auto broken = cli({"check", fixture("broken-square.hda.json")});
  CHECK(broken.code == 2);
  CHECK(json::parse(broken.err)["error"] == "CubicalLawViolation");
  for (const auto& entry : fs::directory_iterator(kFixtures)) {
    if (entry.path().filename() == "broken-square.hda.json") continue;
    CAPTURE(entry.path().string());
    CHECK(cli({"check", entry.path().string()}).code == 0);
  }
}

TEST_CASE("cli compare, translate, encode, sculpt, trace, refine") {
  auto hh = cli({"compare", "--mode", "hh", fixture("filled.st.json"), fixture("empty.st.json")});
  CHECK(hh.code == 1);
  CHECK_FALSE(hh.j()["distinguishing"].empty());
  CHECK(cli({"compare", "--mode", "hh", fixture("asym-conflict-2.st.json"), fixture("asym-conflict-3.st.json")})
            .code == 0);
  CHECK(cli({"compare", "--mode", "iso", fixture("asym-conflict-2.st.json"), fixture("asym-conflict-3.st.json")})
            .code == 1);
  CHECK(cli({"compare", "--mode", "iso", fixture("filled.hda.json"), fixture("filled.hda.json")}).code == 0);
  CHECK(cli({"compare", "--mode", "cc", fixture("filled.st.json"), fixture("filled.st.json")}).code == 0);
  CHECK(cli({"compare", "--mode", "iso", fixture("filled.st.json"), fixture("filled.hda.json")}).code == 2);

  auto t = cli({"translate", "--map", "cintost2", fixture("winskel.config.json")});
  REQUIRE(t.code == 0);
  CHECK(t.out == read_input(fixture("winskel.st.json")));
  auto h = cli({"translate", "--to", "hda", fixture("filled.st.json")});
  CHECK(h.out == read_input(fixture("filled.hda.json")));
  CHECK(cli({"translate", "--from", "hda", fixture("filled.st.json"), "--to", "st"}).code == 2);
  auto dot = cli({"translate", "--map", "stintoh", "--dot", fixture("filled.st.json")});
  CHECK(dot.out.rfind("digraph", 0) == 0);
  CHECK(cli({"check", "--dot", fixture("demonic.stc.json")}).out.find("1+cs") != std::string::npos);

  auto chu = cli({"encode", "--chu", "4", fixture("demonic.stc.json")});
  CHECK(chu.out == read_input(fixture("demonic.chu.json")));
  auto back = cli({"encode", fixture("demonic.chu.json")});
  CHECK(back.out == read_input(fixture("demonic.stc.json")));
  CHECK(cli({"encode", "--chu", "3", fixture("demonic.stc.json")}).code == 2);

  CHECK(cli({"sculpt", fixture("angelic.hda.json")}).out == read_input(fixture("angelic.sculpture.json")));
  CHECK(cli({"sculpt", "--max-dim", "3", fixture("demonic.hda.json")}).code == 1);

  auto tr = cli({"trace", fixture("triangle.st.json"), "--target", "(ab,ab)"});
  CHECK(tr.code == 0);
  CHECK_FALSE(tr.j()["paths"].empty());
  CHECK(cli({"trace", fixture("triangle.st.json"), "--target", "(b,{})"}).code == 2);

  auto dir = fs::temp_directory_path() / "truecc_refine_map.json";
  {
    std::ofstream m(dir);
    m << R"({"a": )" << save_document({parse_st("x y", "(,) (x,) (x,x) (xy,x) (xy,xy)")}) << "}";
  }
  auto ref = cli({"refine", fixture("no-such-file.json"), dir.string()});
  CHECK(ref.code == 2);
  auto ok = cli({"refine", fixture("filled.st.json"), dir.string()});
  REQUIRE(ok.code == 0);
  CHECK(std::get<STStructure>(parse_document(ok.out).value).event_count() == 3);
}

TEST_CASE("cli errors, stdin and budget") {
  auto u = cli({"frobnicate"});
  CHECK(u.code == 2);
  CHECK(json::parse(u.err)["error"] == "UnknownSubcommand");
  CHECK(cli({}).code == 2);
  CHECK(cli({"generate", "--example", "nope"}).code == 2);
  CHECK(cli({"compare", "--mode", "bogus", "a", "b"}).code == 2);

  std::istringstream in(read_input(fixture("filled.st.json")));
  auto* old = std::cin.rdbuf(in.rdbuf());
  auto r = cli({"check", "-"});
  std::cin.rdbuf(old);
  CHECK(r.code == 0);
  CHECK(r.j()["stable"] == true);

  setenv("TRUECC_BUDGET", "3", 1);
  auto b = cli({"sculpt", fixture("demonic.hda.json")});
  unsetenv("TRUECC_BUDGET");
  CHECK(b.code == 2);
  CHECK(json::parse(b.err)["error"] == "SearchBudgetExceeded");
}
