#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "gcr/engine.hpp"
#include "gcr/scenario.hpp"
#include "support.hpp"

using namespace gcr;
using namespace gcr::scenario;
using nlohmann::json;

namespace {

const char* kShipped[] = {"triality.scenario", "wreath_pgl2_q5.scenario", "missing_facts.scenario"};

json shipped(const std::string& name) { return read_json_file(test::source_path("scenarios/" + name)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_tool(const std::string& args) {
  const std::string cmd = std::string(GCR_TOOL) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string error_of(const json& doc) {
  try {
    parse_scenario(doc);
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("shipped scenarios round-trip through the emitter") {
  for (const char* name : kShipped) {
    CAPTURE(name);
    const Scenario s = parse_scenario(shipped(name));
    const auto emitted = emit_scenario(s);
    const Scenario back = parse_scenario(json::parse(emitted.dump()));
    CHECK(back.pair == s.pair);
    CHECK(back.config.second_reduction == s.config.second_reduction);
    CHECK(back.config.bounds.max_group_order == s.config.bounds.max_group_order);
    CHECK(emit_scenario(back).dump() == emitted.dump());
  }
}

TEST_CASE("shipped scenarios match the built-in demos") {
  CHECK(parse_scenario(shipped("triality.scenario")).pair == parse_scenario(json::parse(demo::triality().dump())).pair);
  CHECK(parse_scenario(shipped("wreath_pgl2_q5.scenario")).pair == parse_scenario(json::parse(demo::wreath(5).dump())).pair);
  CHECK(parse_scenario(shipped("missing_facts.scenario")).pair ==
        parse_scenario(json::parse(demo::missing_facts().dump())).pair);
}

TEST_CASE("triality scenario describes H = <sigma>K in Aut(D4)") {
  const auto s = parse_scenario(shipped("triality.scenario"));
  CHECK(s.pair.ambient.characteristic == 3);
  CHECK(s.pair.ambient.components.size() == 1);
  CHECK(s.pair.ambient.components[0].type.name() == "D4");
  CHECK(s.pair.ambient.component_group.order() == 6);
  CHECK(model::image_of(s.pair)->size() == 3);
  CHECK(model::intersection_label(s.pair) == "K");
}

TEST_CASE("wreath scenario describes PGL2(5) on the projective line") {
  const auto s = parse_scenario(shipped("wreath_pgl2_q5.scenario"));
  CHECK(s.pair.ambient.components.size() == 6);
  CHECK(s.pair.ambient.component_group.order() == 120);
  const auto& h = std::get<model::MatrixSubgroup>(s.pair.subgroup);
  CHECK(h.elements.size() == 120);
  CHECK(std::count_if(h.elements.begin(), h.elements.end(), [](const auto& e) { return e.c == 0; }) == 1);
  // One orbit on the six points, with point stabilizer of order 20.
  const auto os = model::compute_orbit_stabilizers(s.pair);
  REQUIRE(os->size() == 1);
  CHECK((*os)[0].stabilizer.size() == 20);
}

TEST_CASE("schema errors carry the field path") {
  auto doc = shipped("triality.scenario");
  SUBCASE("unknown top-level field") {
    doc["colour"] = "red";
    CHECK(error_of(doc).find("$.colour: unknown field") == 0);
  }
  SUBCASE("unknown nested field") {
    doc["ambient"]["components"][0]["rnak"] = 4;
    CHECK(error_of(doc).find("$.ambient.components[0].rnak: unknown field") == 0);
  }
  SUBCASE("version") {
    doc["version"] = 2;
    CHECK(error_of(doc).find("$.version") == 0);
  }
  SUBCASE("missing field") {
    doc.erase("characteristic");
    CHECK(error_of(doc).find("$.characteristic: missing") == 0);
  }
  SUBCASE("bad type") {
    doc["ambient"]["components"][0]["type"] = "Q7";
    CHECK(error_of(doc).find("$.ambient.components[0].type") == 0);
  }
  SUBCASE("unknown image element") {
    doc["subgroup"]["image"] = json::array({"1", "rho"});
    CHECK(error_of(doc).find("$.subgroup.image[1]") == 0);
  }
  SUBCASE("contradictory facts") {
    doc["subgroup"]["facts"].push_back({{"query", "trivial[K]"}, {"answer", true}});
    CHECK(error_of(doc).find("$.subgroup.facts[3]") == 0);
  }
}

TEST_CASE("invariant violations name the invariant") {
  auto doc = shipped("triality.scenario");
  SUBCASE("mismatched component-group permutation") {
    doc["ambient"]["component_group"]["generators"][0]["permutation"] = json::array({1});
    CHECK(error_of(doc).find("permutation") != std::string::npos);
  }
  SUBCASE("permutation mapping a component to one of another type") {
    doc["ambient"]["components"].push_back({{"type", "A1"}});
    doc["ambient"]["component_group"]["generators"].erase(1);
    doc["ambient"]["component_group"]["generators"][0]["permutation"] = json::array({1, 0});
    doc["ambient"]["component_group"]["generators"][0]["diagram"] = json::array({{2, 1, 3, 0}, {0}});
    CHECK_THROWS_AS(parse_scenario(doc), model::ModelError);
  }
  SUBCASE("diagram map that is not an automorphism") {
    doc["ambient"]["component_group"]["generators"][0]["diagram"] = json::array({{1, 0, 2, 3}});
    const std::string e = error_of(doc);
    CHECK(e.find("Cartan") != std::string::npos);
  }
  SUBCASE("image that is not a subgroup") {
    doc["subgroup"]["image"] = json::array({"1", "sigma"});
    CHECK(error_of(doc).find("invariant violated") != std::string::npos);
  }
  SUBCASE("composition table that is not a group") {
    auto table = nlohmann::json::parse(emit_scenario(parse_scenario(doc)).dump());
    std::swap(table["ambient"]["component_group"]["table"][1][2], table["ambient"]["component_group"]["table"][1][3]);
    CHECK(error_of(table).find("invariant violated") != std::string::npos);
  }
}

TEST_CASE("matrix scenarios: field specification") {
  auto doc = shipped("wreath_pgl2_q5.scenario");
  SUBCASE("prime power without modulus") {
    doc["subgroup"]["field"] = {{"q", 25}};
    CHECK(error_of(doc).find("$.subgroup.field.modulus") == 0);
  }
  SUBCASE("not a prime power") {
    doc["subgroup"]["field"] = {{"q", 6}};
    CHECK(error_of(doc).find("$.subgroup.field.q") == 0);
  }
  SUBCASE("reducible modulus") {
    doc["subgroup"]["field"] = {{"q", 25}, {"modulus", {1, 0, 1}}};
    CHECK(error_of(doc).find("$.subgroup.field") == 0);
  }
  SUBCASE("wrong characteristic") {
    doc["subgroup"]["field"] = {{"q", 7}};
    CHECK(error_of(doc).find("$.subgroup.field") == 0);
  }
  SUBCASE("singular generator") {
    doc["subgroup"]["generators"][0]["parts"][0] = {1, 1, 1, 1};
    CHECK_THROWS_AS(parse_scenario(doc), model::ModelError);
  }
}

TEST_CASE("extension-field matrix scenario parses and decides") {
  // PGL2 over F_4 = F_2[x]/(x^2+x+1); the upper unitriangular group is not cr.
  const json doc = json::parse(R"({
    "version": 1, "characteristic": 2,
    "ambient": {"components": [{"type": "A1"}]},
    "subgroup": {"kind": "matrix", "field": {"q": 4, "modulus": [1, 1, 1]},
                 "generators": [{"parts": [[1, 1, 0, 1]]}, {"parts": [[1, 2, 0, 1]]}]}
  })");
  const auto s = parse_scenario(doc);
  CHECK(std::get<model::MatrixSubgroup>(s.pair.subgroup).elements.size() == 4);
  CHECK(engine::decide(s.pair).verdict == engine::Verdict::not_cr());
  CHECK(parse_scenario(json::parse(emit_scenario(s).dump())).pair == s.pair);
}

TEST_CASE("matrix files") {
  const auto m = parse_matrix_file(std::filesystem::path(test::source_path("data/borel_gl2_f5.mat")));
  CHECK(m.field->order() == 5);
  CHECK(m.n == 2);
  CHECK(m.generators.size() == 3);
  CHECK_THROWS_AS(parse_matrix_file(json{{"q", 5}, {"n", 2}, {"generators", {{1, 1, 1, 1}}}}), ScenarioError);
  CHECK_THROWS_AS(parse_matrix_file(json{{"q", 5}, {"n", 2}, {"generators", {{1, 0, 1}}}}), ScenarioError);
  CHECK_THROWS_AS(parse_matrix_file(json{{"q", 5}, {"n", 2}, {"gens", json::array()}}), ScenarioError);
}

TEST_CASE("golden traces for the shipped examples") {
  for (const std::string name : {"triality", "wreath_pgl2_q5"}) {
    CAPTURE(name);
    const auto s = parse_scenario_file(test::source_path("scenarios/" + name + ".scenario"));
    const std::string trace = engine::explain(engine::decide(s.pair, s.config).trace, "json");
    CHECK(trace == read_file(test::source_path("tests/golden/" + name + ".json")));
  }
}

TEST_CASE("command-line exit codes and messages") {
  const std::string sc = test::source_path("scenarios/");
  const std::string data = test::source_path("data/");
  CHECK(run_tool("decide " + sc + "triality.scenario").code == 0);
  CHECK(run_tool("decide " + sc + "wreath_pgl2_q5.scenario").code == 1);
  const auto missing = run_tool("decide " + sc + "missing_facts.scenario");
  CHECK(missing.code == 2);
  CHECK(missing.out.find("reductive[C_G0(H)]") != std::string::npos);
  CHECK(run_tool("decide " + sc + "does_not_exist.scenario").code > 2);
  CHECK(run_tool("decide").code > 2);

  const auto json_trace = run_tool("decide " + sc + "triality.scenario --trace-format json");
  CHECK(json_trace.out == read_file(test::source_path("tests/golden/triality.json")));

  CHECK(run_tool("oracle semisimple " + data + "borel_gl2_f5.mat").out == "socle dim 1 of 2; NOT semisimple\n");
  CHECK(run_tool("oracle centralizer " + data + "unipotent_gl2_f5.mat").out ==
        "commutant dim 2, radical dim 1; NOT reductive\n");
  CHECK(run_tool("oracle order " + data + "identity.mat").out == "1\n");
  const auto bounded = run_tool("oracle semisimple " + data + "borel_gl2_f5.mat --max-spin 3");
  CHECK(bounded.out == "socle dim 1 of 2; NOT semisimple\n");

  const auto roots = run_tool("roots G 2 --cochar 0,1");
  CHECK(roots.code == 0);
  CHECK(roots.out.find("5 unipotent roots") != std::string::npos);
  CHECK(run_tool("roots A 1").out.find("A1: 1 positive roots") == 0);
  const auto d4 = run_tool("roots D 4");
  CHECK(d4.out.find("D4: 12 positive roots") == 0);
  CHECK(d4.out.find("(1,2,1,1)") != std::string::npos);
  CHECK(run_tool("roots Q 3").code > 2);

  CHECK(run_tool("demo triality").code == 0);
  CHECK(run_tool("demo wreath --q 5").code == 1);
  CHECK(run_tool("demo wreath --q 7").code == 1);
}
