#pragma once

// Scenario files (JSON) describing a pair (H, G) plus engine options, matrix
// files for the oracle commands, and the built-in demo scenarios.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcr/engine.hpp"
#include "gcr/fq.hpp"
#include "gcr/groupmodel.hpp"
#include "json.hpp"

namespace gcr::scenario {

inline constexpr int kVersion = 1;

/// Schema violation; the message starts with the offending field path.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  model::Pair pair;
  engine::EngineConfig config;
  std::string trace_format = "text";
};

/// Structural invariant violations from the group model surface as
/// model::ModelError; schema problems as ScenarioError.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario_file(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Canonical form: component groups as tables, subgroups with explicit generators.
nlohmann::ordered_json emit_scenario(const Scenario& s);

struct MatrixFile {
  fq::FieldPtr field;
  int n = 0;
  std::vector<fq::Matrix> generators;
};

/// {"q": .., "n": .., "modulus"?: [..], "generators": [[row-major entries], ..]}
MatrixFile parse_matrix_file(const nlohmann::json& doc);
MatrixFile parse_matrix_file(const std::filesystem::path& path);

/// Parses "D4", "A1", ... into a Cartan type.
rootdata::CartanType parse_type(const std::string& text);

namespace demo {
/// Aut(D4) in characteristic 3 with H = <sigma>K, K = C_D4(sigma) of type G2.
nlohmann::ordered_json triality();
/// PGL2(q) permuting the q+1 points of the projective line, acting on A1^(q+1),
/// with H the graph of the canonical embedding into PGL2. q prime.
nlohmann::ordered_json wreath(int q);
/// Aut(D4), p = 3, H = <sigma> with trivial intersection and no asserted facts.
nlohmann::ordered_json missing_facts();
}  // namespace demo

}  // namespace gcr::scenario
