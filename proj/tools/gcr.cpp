// Command-line front end: decide scenarios, inspect root data, run the
// linear-algebra oracles on matrix files, and run the built-in demos.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gcr/engine.hpp"
#include "gcr/matgroup.hpp"
#include "gcr/oracles.hpp"
#include "gcr/rootdata.hpp"
#include "gcr/scenario.hpp"

namespace {

using namespace gcr;

enum Exit { kCR = 0, kNotCR = 1, kUnknown = 2, kInputError = 3, kModelError = 4, kInternalError = 5 };

struct DecideFlags {
  std::string trace_format;
  std::string out;
  std::size_t max_group_order = 0;
  std::size_t max_spin = 0;
  bool second_reduction = false;
};

void apply_flags(nlohmann::json& doc, const DecideFlags& f) {
  if (!doc.is_object()) return;
  auto& o = doc["options"];
  if (o.is_null()) o = nlohmann::json::object();
  if (f.max_group_order) o["max_group_order"] = f.max_group_order;
  if (f.max_spin) o["max_spin"] = f.max_spin;
  if (f.second_reduction) o["second_reduction"] = true;
  if (!f.trace_format.empty()) o["trace_format"] = f.trace_format;
}

int run_decision(nlohmann::json doc, const DecideFlags& flags) {
  apply_flags(doc, flags);
  const scenario::Scenario s = scenario::parse_scenario(doc);
  const engine::Decision d = engine::decide(s.pair, s.config);
  const std::string text = engine::explain(d.trace, s.trace_format);
  const std::string verdict = "verdict: " + engine::to_string(d.verdict.value) + "\n";
  if (!flags.out.empty()) {
    std::ofstream out(flags.out);
    if (!out) throw scenario::ScenarioError(flags.out + ": cannot write");
    out << text;
    std::cout << verdict;
  } else {
    std::cout << text;
    if (s.trace_format == "text") std::cout << verdict;
  }
  switch (d.verdict.value) {
    case engine::VerdictValue::CR: return kCR;
    case engine::VerdictValue::NotCR: return kNotCR;
    case engine::VerdictValue::Unknown: return kUnknown;
  }
  return kInternalError;
}

std::string root_text(const rootdata::Root& r, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (r[i] != 1) s += std::to_string(r[i]);
    s += names[i];
  }
  return s;
}

std::string coords(const rootdata::Root& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + ")";
}

int cmd_roots(const std::string& family, int rank, const std::string& cochar) {
  const auto type = rootdata::CartanType::parse(family, rank);
  const rootdata::RootSystem sys(type);
  const auto& names = sys.simple_root_names();
  std::cout << type.name() << ": " << sys.positive_roots().size() << " positive roots\n";
  for (const auto& r : sys.positive_roots()) std::cout << "  " << coords(r) << "  " << root_text(r, names) << "\n";
  if (cochar.empty()) return 0;
  rootdata::Cocharacter lambda;
  std::stringstream in(cochar);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      lambda.coords.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--cochar", "expected comma-separated integers");
    }
  }
  if (static_cast<int>(lambda.coords.size()) != rank)
    throw CLI::ValidationError("--cochar", "expected " + std::to_string(rank) + " entries");
  const auto pd = rootdata::parabolic_data(sys, lambda);
  std::cout << "cocharacter " << coords(lambda.coords) << ": " << pd.levi_roots.size() << " Levi roots, "
            << pd.unipotent_roots.size() << " unipotent roots\n";
  std::cout << "Levi roots:\n";
  for (const auto& r : pd.levi_roots) std::cout << "  " << coords(r) << "\n";
  std::cout << "unipotent roots:\n";
  for (const auto& r : pd.unipotent_roots) std::cout << "  " << coords(r) << "  " << root_text(r, names) << "\n";
  return 0;
}

int cmd_oracle(const std::string& which, const std::string& path, const oracles::OracleBounds& bounds) {
  const auto file = scenario::parse_matrix_file(std::filesystem::path(path));
  const oracles::ModuleDescriptor module(file.field, file.n, file.generators);
  if (which == "order") {
    const auto g = fq::enumerate_group(file.generators, bounds.max_group_order);
    if (!g.complete) {
      std::cout << "order exceeds " << bounds.max_group_order << "; Unknown\n";
      return kUnknown;
    }
    std::cout << g.order() << "\n";
    return 0;
  }
  if (which == "semisimple") {
    const auto s = oracles::socle(module, bounds);
    if (!s.socle) {
      std::cout << "socle bounds exceeded; Unknown\n";
      return kUnknown;
    }
    const bool ss = s.socle->dim() == file.n;
    std::cout << "socle dim " << s.socle->dim() << " of " << file.n << "; " << (ss ? "semisimple" : "NOT semisimple")
              << "\n";
    return ss ? 0 : 1;
  }
  // centralizer
  std::optional<std::size_t> order;
  const auto g = fq::enumerate_group(file.generators, bounds.max_group_order);
  if (g.complete) order = g.order();
  const auto r = oracles::centralizer_report(module, order);
  std::cout << "commutant dim " << r.commutant_dim << ", radical dim " << r.radical_dim << "; "
            << (r.reductive ? "reductive" : "NOT reductive") << "\n";
  return r.reductive ? 0 : 1;
}

template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const scenario::ScenarioError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const CLI::Error&) {
    throw;
  } catch (const model::ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kModelError;
  } catch (const fq::FieldError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const rootdata::RootDataError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complete reducibility in non-connected reductive groups"};
  app.require_subcommand(1);
  int code = 0;

  DecideFlags flags;
  auto add_decide_flags = [&flags](CLI::App* c) {
    c->add_option("--trace-format", flags.trace_format, "text or json")->check(CLI::IsMember({"text", "json"}));
    c->add_option("--out", flags.out, "write the trace to this file");
    c->add_option("--max-group-order", flags.max_group_order, "closure cap for matrix groups");
    c->add_option("--max-spin", flags.max_spin, "q^n limit for exhaustive socle spinning");
    c->add_flag("--second-reduction", flags.second_reduction, "enable the second reduction");
  };

  std::string scenario_path;
  auto* decide = app.add_subcommand("decide", "decide complete reducibility for a scenario file");
  decide->add_option("scenario", scenario_path)->required();
  add_decide_flags(decide);
  decide->callback([&] {
    code = guarded([&] { return run_decision(scenario::read_json_file(scenario_path), flags); });
  });

  std::string family;
  int rank = 0;
  std::string cochar;
  auto* roots = app.add_subcommand("roots", "print positive roots and parabolic data");
  roots->add_option("type", family, "family letter A-G")->required();
  roots->add_option("rank", rank)->required();
  roots->add_option("--cochar", cochar, "cocharacter pairings with the simple roots, e.g. 0,1");
  roots->callback([&] { code = guarded([&] { return cmd_roots(family, rank, cochar); }); });

  std::string which, matrix_path;
  oracles::OracleBounds bounds;
  auto* oracle = app.add_subcommand("oracle", "run a linear-algebra oracle on a matrix file");
  oracle->add_option("kind", which)->required()->check(CLI::IsMember({"semisimple", "centralizer", "order"}));
  oracle->add_option("file", matrix_path)->required();
  oracle->add_option("--max-group-order", bounds.max_group_order);
  oracle->add_option("--max-spin", bounds.max_spin);
  oracle->callback([&] { code = guarded([&] { return cmd_oracle(which, matrix_path, bounds); }); });

  std::string demo_name;
  int q = 5;
  bool emit = false;
  auto* demo = app.add_subcommand("demo", "decide a built-in example");
  demo->add_option("name", demo_name)->required()->check(CLI::IsMember({"triality", "wreath"}));
  demo->add_option("--q", q, "field order for the wreath demo (prime)");
  demo->add_flag("--emit", emit, "print the scenario file instead of deciding it");
  add_decide_flags(demo);
  demo->callback([&] {
    code = guarded([&] {
      const nlohmann::ordered_json doc =
          demo_name == "triality" ? scenario::demo::triality() : scenario::demo::wreath(q);
      if (emit) {
        std::cout << doc.dump(2) << "\n";
        return 0;
      }
      return run_decision(nlohmann::json::parse(doc.dump()), flags);
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : std::max(rc, static_cast<int>(kInputError));
  }
  return code;
}
