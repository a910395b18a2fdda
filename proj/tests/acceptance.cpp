// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "fuzz.hpp"
#include "gcr/engine.hpp"
#include "gcr/matgroup.hpp"
#include "gcr/oracles.hpp"
#include "gcr/rootdata.hpp"
#include "gcr/scenario.hpp"
#include "support.hpp"

using namespace gcr;
using rootdata::CartanType;
using rootdata::Family;
using rootdata::Root;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Checker {
  bool ok = true;
  std::string first_failure;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

scenario::Scenario load(const std::string& name) {
  return scenario::parse_scenario_file(test::source_path("scenarios/" + name));
}

std::string json_trace(const scenario::Scenario& s) {
  return engine::explain(engine::decide(s.pair, s.config).trace, "json");
}

// ---------------------------------------------------------------------------

Outcome triality_data() {
  Checker c;
  const auto f = rootdata::fold_d4_triality();
  c.expect(f.tilde_cartan == rootdata::cartan_matrix(CartanType::make(Family::G, 2)), "folded Cartan matrix is G2");
  c.expect(rootdata::pairing({1, 0}, f.tilde_lambda) == 0, "<alpha~, lambda~> = 0");
  c.expect(rootdata::pairing({0, 1}, f.tilde_lambda) == 1, "<beta~, lambda~> = 1");
  const rootdata::RootSystem g2(CartanType::make(Family::G, 2));
  const auto pd = rootdata::parabolic_data(g2, f.tilde_lambda);
  const std::set<Root> got(pd.unipotent_roots.begin(), pd.unipotent_roots.end());
  c.expect(pd.unipotent_roots.size() == 5 && got == std::set<Root>{{0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}},
           "unipotent roots of P_lambda~");
  const auto m2 = rootdata::m2_structure_check();
  c.expect(m2.total == 8 && m2.unipotent_radical == 5 && m2.reductive_part == 3, "M2 dimensions (8, 5, 3)");
  const auto lim = rootdata::triality_limit_check();
  c.expect(lim.pairing == 2 && lim.exists && lim.unipotent_collapses, "limit pairing 2 with limit sigma");
  return {c.ok, c.ok ? "G2 Cartan, pairings (0,1), 5 unipotent roots, dims (8,5,3), pairing 2 -> sigma"
                     : c.first_failure};
}

Outcome example_triality() {
  Checker c;
  const auto s = load("triality.scenario");
  const auto d = engine::decide(s.pair, s.config);
  c.expect(d.verdict == engine::Verdict::cr(), "verdict CR");
  const auto& st = d.trace.steps;
  c.expect(d.trace.children.empty() && st.size() == 4, "four step events on one node");
  if (st.size() == 4) {
    c.expect(st[0].label == "Shortcuts" && st[0].note == "none fired", "shortcuts none fired");
    c.expect(st[1].label == "Step 1" && st[1].note.rfind("skipped", 0) == 0, "Step 1 skipped");
    c.expect(st[2].label == "Step 2" && st[2].note == "n=3=p", "Step 2 n=3=p");
    c.expect(st[3].label == "Step 5", "Step 5 leaf");
  }
  c.expect(engine::verify_trace(d.trace, s.config).ok, "trace replays");
  c.expect(json_trace(s) == read_file(test::source_path("tests/golden/triality.json")), "golden trace");
  return {c.ok, c.ok ? "CR via [none fired, Step 1 skipped, Step 2 n=3=p, Step 5]; golden match" : c.first_failure};
}

Outcome example_wreath() {
  Checker c;
  const auto s = load("wreath_pgl2_q5.scenario");
  const auto d = engine::decide(s.pair, s.config);
  c.expect(d.verdict == engine::Verdict::not_cr(), "verdict NotCR");
  // Walk the single path and count Step 1 firings.
  const engine::TraceNode* n = &d.trace;
  int step1 = 0;
  while (true) {
    if (n->rule == engine::rule::kStep1O1 || n->rule == engine::rule::kStep1O2) ++step1;
    if (n->children.size() != 1) break;
    n = &n->children.front();
  }
  c.expect(step1 == 2, "Step 1 fired twice along the path");
  c.expect(n->children.empty() && n->rule == engine::rule::kStep2, "leaf decided at Step 2");
  bool socle1 = false;
  for (const auto& f : n->facts)
    socle1 = socle1 || (!f.answer && f.reference.rfind("socle dim 1 of 2", 0) == 0);
  c.expect(socle1, "leaf oracle reports socle dimension 1");
  c.expect(engine::verify_trace(d.trace, s.config).ok, "trace replays");
  c.expect(json_trace(s) == read_file(test::source_path("tests/golden/wreath_pgl2_q5.json")), "golden trace");
  return {c.ok, c.ok ? "NotCR; Step 1 twice; leaf socle dim 1 of 2 over F_5; golden match" : c.first_failure};
}

std::vector<CartanType> all_types_up_to(int max_rank) {
  std::vector<CartanType> out;
  for (int n = 1; n <= max_rank; ++n) out.push_back(CartanType::make(Family::A, n));
  for (int n = 2; n <= max_rank; ++n) out.push_back(CartanType::make(Family::B, n));
  for (int n = 3; n <= max_rank; ++n) out.push_back(CartanType::make(Family::C, n));
  for (int n = 4; n <= max_rank; ++n) out.push_back(CartanType::make(Family::D, n));
  for (int n = 6; n <= std::min(8, max_rank); ++n) out.push_back(CartanType::make(Family::E, n));
  out.push_back(CartanType::make(Family::F, 4));
  out.push_back(CartanType::make(Family::G, 2));
  return out;
}

Outcome out_table() {
  Checker c;
  auto expected = [](const CartanType& t) -> std::size_t {
    switch (t.family) {
      case Family::A: return t.rank == 1 ? 1 : 2;
      case Family::D: return t.rank == 4 ? 6 : 2;
      case Family::E: return t.rank == 6 ? 2 : 1;
      default: return 1;
    }
  };
  int n = 0;
  for (const auto& t : all_types_up_to(8)) {
    const std::size_t got = rootdata::diagram_automorphism_group(t).size();
    c.expect(got == expected(t), "|Out(" + t.name() + ")| = " + std::to_string(got));
    c.expect(6 % got == 0 && (got == 1 || got == 2 || got == 3 || got == 6), t.name() + " order in {1,2,3,6}");
    ++n;
  }
  return {c.ok, c.ok ? std::to_string(n) + " types, all orders match and divide 6" : c.first_failure};
}

Outcome root_counts() {
  Checker c;
  auto formula = [](const CartanType& t) -> std::size_t {
    const std::size_t n = t.rank;
    switch (t.family) {
      case Family::A: return n * (n + 1) / 2;
      case Family::B:
      case Family::C: return n * n;
      case Family::D: return n * (n - 1);
      case Family::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
      case Family::F: return 24;
      case Family::G: return 6;
    }
    return 0;
  };
  int n = 0;
  for (const auto& t : all_types_up_to(8)) {
    const rootdata::RootSystem rs(t);
    c.expect(rs.positive_roots().size() == formula(t), t.name() + ": " + std::to_string(rs.positive_roots().size()));
    ++n;
  }
  return {c.ok, c.ok ? std::to_string(n) + " types up to rank 8 match" : c.first_failure};
}

// ---------------------------------------------------------------------------
// Random matrix groups over F_q, q in {2,3,5,7}, n <= 4, order cap 5000.

struct RandomGroup {
  fq::FieldPtr field;
  int n = 0;
  std::vector<fq::Matrix> gens;
  std::size_t order = 0;
  bool cyclic = false;
};

fq::Matrix random_invertible(const fq::FieldPtr& f, int n, std::mt19937& rng) {
  for (;;) {
    std::vector<long long> e(n * n);
    for (auto& x : e) x = rng() % f->order();
    auto m = fq::Matrix::from_ints(f, n, e);
    if (m.invertible()) return m;
  }
}

fq::Matrix random_monomial(const fq::FieldPtr& f, int n, std::mt19937& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<long long> e(n * n, 0);
  for (int i = 0; i < n; ++i) e[i * n + perm[i]] = 1 + rng() % (f->order() - 1);
  return fq::Matrix::from_ints(f, n, e);
}

fq::Matrix random_upper(const fq::FieldPtr& f, int n, std::mt19937& rng) {
  std::vector<long long> e(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) e[i * n + j] = i == j ? 1 + rng() % (f->order() - 1) : rng() % f->order();
  return fq::Matrix::from_ints(f, n, e);
}

std::optional<RandomGroup> random_group(std::mt19937& rng, bool force_cyclic) {
  static const int qs[] = {2, 3, 5, 7};
  RandomGroup g;
  g.field = fq::Field::prime(qs[rng() % 4]);
  g.n = 1 + static_cast<int>(rng() % 4);
  const int kind = force_cyclic ? static_cast<int>(rng() % 3) : static_cast<int>(rng() % 4);
  const int k = force_cyclic ? 1 : 1 + static_cast<int>(rng() % 2);
  for (int j = 0; j < k; ++j) {
    switch (kind) {
      case 0: g.gens.push_back(random_invertible(g.field, g.n, rng)); break;
      case 1: g.gens.push_back(random_monomial(g.field, g.n, rng)); break;
      case 2: g.gens.push_back(random_upper(g.field, g.n, rng)); break;
      default: g.gens.push_back(j == 0 ? random_invertible(g.field, g.n, rng) : random_monomial(g.field, g.n, rng));
    }
  }
  const auto p = random_invertible(g.field, g.n, rng);
  const auto pinv = p.inverse();
  for (auto& x : g.gens) x = p * x * pinv;
  const auto e = fq::enumerate_group(g.gens, 5000);
  if (!e.complete) return std::nullopt;
  g.order = e.order();
  g.cyclic = k == 1;
  return g;
}

std::vector<RandomGroup> corpus(std::uint32_t seed, std::size_t count, const std::function<bool(const RandomGroup&)>& keep,
                                bool force_cyclic) {
  std::mt19937 rng(seed);
  std::vector<RandomGroup> out;
  for (int attempt = 0; attempt < 200000 && out.size() < count; ++attempt) {
    auto g = random_group(rng, force_cyclic);
    if (g && keep(*g)) out.push_back(std::move(*g));
  }
  return out;
}

oracles::ModuleDescriptor module_of(const RandomGroup& g) { return oracles::ModuleDescriptor(g.field, g.n, g.gens); }

Outcome maschke() {
  const auto groups = corpus(601, 250, [](const RandomGroup& g) {
    return std::gcd(g.order, static_cast<std::size_t>(g.field->characteristic())) == 1;
  }, false);
  int failures = 0, undecided = 0;
  std::set<int> qs, ns;
  for (const auto& g : groups) {
    const auto r = oracles::is_glncr(module_of(g));
    if (!r) ++undecided;
    else if (!*r) ++failures;
    qs.insert(g.field->order());
    ns.insert(g.n);
  }
  const bool ok = groups.size() >= 200 && failures == 0 && undecided == 0;
  return {ok, std::to_string(groups.size()) + " coprime groups, " + std::to_string(failures) + " failures, " +
                  std::to_string(undecided) + " undecided, q in " + std::to_string(qs.size()) + " fields, " +
                  std::to_string(ns.size()) + " dimensions"};
}

Outcome gm_cyclic() {
  const auto groups = corpus(701, 250, [](const RandomGroup&) { return true; }, true);
  int failures = 0, undecided = 0, not_cr = 0;
  for (const auto& g : groups) {
    const auto m = module_of(g);
    const auto cr = oracles::is_glncr(m);
    if (!cr) {
      ++undecided;
      continue;
    }
    // No group order passed: the commutant radical is always computed.
    const bool red = oracles::centralizer_is_reductive(m);
    if (*cr != red) ++failures;
    if (!*cr) ++not_cr;
  }
  const bool ok = groups.size() >= 200 && failures == 0 && undecided == 0 && not_cr > 0;
  return {ok, std::to_string(groups.size()) + " cyclic groups (" + std::to_string(not_cr) + " not cr), " +
                  std::to_string(failures) + " disagreements"};
}

Outcome necessary_direction() {
  const auto groups = corpus(801, 250, [](const RandomGroup&) { return true; }, false);
  int failures = 0, undecided = 0, cr_count = 0, non_cyclic = 0;
  for (const auto& g : groups) {
    const auto m = module_of(g);
    const auto cr = oracles::is_glncr(m);
    if (!cr) {
      ++undecided;
      continue;
    }
    non_cyclic += g.cyclic ? 0 : 1;
    if (*cr) {
      ++cr_count;
      if (!oracles::centralizer_is_reductive(m)) ++failures;
    }
  }
  const bool ok = groups.size() >= 200 && failures == 0 && undecided == 0;
  return {ok, std::to_string(groups.size()) + " groups (" + std::to_string(non_cyclic) + " on two generators, " +
                  std::to_string(cr_count) + " cr), " + std::to_string(failures) + " violations"};
}

// ---------------------------------------------------------------------------

int step6_depth(const engine::TraceNode& t) {
  int best = 0;
  for (const auto& c : t.children) best = std::max(best, step6_depth(c));
  return best + (t.rule == engine::rule::kStep6 ? 1 : 0);
}

model::FactTable& facts_ref(model::Pair& p) {
  return std::holds_alternative<model::AbstractSubgroup>(p.subgroup) ? std::get<model::AbstractSubgroup>(p.subgroup).facts
                                                                     : std::get<model::MatrixSubgroup>(p.subgroup).facts;
}

// Erasing asserted facts never flips a decided verdict; restoring them gives it back.
bool monotone(const model::Pair& pair, const engine::EngineConfig& cfg, std::mt19937& rng, int& checks) {
  const auto base = engine::decide(pair, cfg).verdict;
  const auto entries = facts_ref(const_cast<model::Pair&>(pair)).entries();
  std::vector<std::string> keys;
  for (const auto& [k, v] : entries) keys.push_back(k);
  const std::size_t subsets = keys.size() <= 5 ? (1u << keys.size()) : 32;
  for (std::size_t s = 0; s < subsets; ++s) {
    const std::size_t mask = keys.size() <= 5 ? s : rng();
    model::Pair erased = pair;
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (mask >> i & 1) facts_ref(erased).erase(keys[i]);
    const auto v = engine::decide(erased, cfg).verdict;
    ++checks;
    if (v.value != engine::VerdictValue::Unknown && v != base) return false;
    model::Pair restored = erased;
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (mask >> i & 1) facts_ref(restored).insert(keys[i], entries.at(keys[i]));
    if (engine::decide(restored, cfg).verdict != base) return false;
  }
  return true;
}

Outcome engine_laws() {
  std::mt19937 rng(909);
  int scenarios = 0, traces = 0, verify_failures = 0, metric_violations = 0, step6_violations = 0, errors = 0;
  int monotone_checks = 0, monotone_failures = 0;
  std::map<std::string, int> rules;
  std::function<void(const engine::TraceNode&)> tally = [&](const engine::TraceNode& t) {
    ++rules[t.rule];
    for (const auto& c : t.children) tally(c);
  };
  for (; scenarios < 150; ++scenarios) {
    auto fc = test::random_case(rng);
    for (int round = 0; round < 6; ++round) {
      try {
        const auto d = engine::decide(fc.pair, fc.config);
        ++traces;
        tally(d.trace);
        if (!engine::verify_trace(d.trace, fc.config).ok) ++verify_failures;
        if (step6_depth(d.trace) > 1) ++step6_violations;
        if (d.verdict.value != engine::VerdictValue::Unknown || !test::fill_missing(fc.pair, d.verdict.missing, rng))
          break;
      } catch (const oracles::InternalError&) {
        ++metric_violations;
        break;
      } catch (const std::exception&) {
        ++errors;
        break;
      }
    }
    try {
      if (!monotone(fc.pair, fc.config, rng, monotone_checks)) ++monotone_failures;
    } catch (const std::exception&) {
      ++errors;
    }
  }
  for (const char* name : {"triality.scenario", "wreath_pgl2_q5.scenario", "missing_facts.scenario"}) {
    const auto s = load(name);
    if (!monotone(s.pair, s.config, rng, monotone_checks)) ++monotone_failures;
  }
  const bool ok = scenarios >= 100 && verify_failures == 0 && metric_violations == 0 && step6_violations == 0 &&
                  errors == 0 && monotone_failures == 0 && rules.size() >= 8;
  return {ok, std::to_string(scenarios) + " fuzzed scenarios, " + std::to_string(traces) + " traces, " +
                  std::to_string(rules.size()) + " distinct rules; verify failures " + std::to_string(verify_failures) +
                  ", metric " + std::to_string(metric_violations) + ", Step 6 " + std::to_string(step6_violations) +
                  ", errors " + std::to_string(errors) + ", monotone " + std::to_string(monotone_failures) + "/" +
                  std::to_string(monotone_checks)};
}

Outcome determinism() {
  Checker c;
  for (const std::string name : {"triality", "wreath_pgl2_q5"}) {
    const std::string golden = read_file(test::source_path("tests/golden/" + name + ".json"));
    for (int run = 0; run < 5; ++run) {
      const auto s = load(name + ".scenario");
      c.expect(json_trace(s) == golden, name + " run " + std::to_string(run + 1));
    }
  }
  return {c.ok, c.ok ? "5 runs each, byte-identical to the golden traces" : c.first_failure};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"triality data", triality_data},
      {"example 1 end-to-end", example_triality},
      {"example 2 end-to-end (q=5)", example_wreath},
      {"Out table", out_table},
      {"root counts", root_counts},
      {"Maschke suite", maschke},
      {"cyclic centralizer criterion", gm_cyclic},
      {"necessary direction", necessary_direction},
      {"engine laws", engine_laws},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2zu %-30s %s  %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
