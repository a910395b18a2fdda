#include "gcr/engine.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gcr/linalg.hpp"

namespace gcr::engine {

using model::AbstractSubgroup;
using model::Intersection;
using model::MatrixElement;
using model::MatrixSubgroup;
using model::ModelError;
using model::Pair;
using model::Provenance;

std::string to_string(VerdictValue v) {
  switch (v) {
    case VerdictValue::CR: return "CR";
    case VerdictValue::NotCR: return "NotCR";
    case VerdictValue::Unknown: return "Unknown";
  }
  return "Unknown";
}

Verdict combine(const std::vector<Verdict>& children) {
  std::vector<std::string> missing;
  bool any_unknown = false;
  for (const auto& v : children) {
    if (v.value == VerdictValue::NotCR) return Verdict::not_cr();
    if (v.value == VerdictValue::Unknown) {
      any_unknown = true;
      for (const auto& q : v.missing)
        if (std::find(missing.begin(), missing.end(), q) == missing.end()) missing.push_back(q);
    }
  }
  if (any_unknown) return Verdict::unknown(std::move(missing));
  return Verdict::cr();
}

Metric metric_of(const Pair& pair, bool step6_used, bool second_used) {
  Metric m;
  m.step6_unused = step6_used ? 0 : 1;
  m.second_unused = second_used ? 0 : 1;
  m.components = static_cast<int>(pair.ambient.components.size());
  m.dimension = pair.ambient.dimension();
  m.component_group_order = pair.ambient.component_group.order();
  return m;
}

// ---------------------------------------------------------------------------
// Computed answers.

namespace {

std::string field_name(const fq::FieldPtr& f) { return "F_" + std::to_string(f->order()); }

const std::string kBaseChange = "answer over a finite (perfect) field, stable under extension to the algebraic closure";

std::vector<fq::Matrix> independent_subset(const std::vector<fq::Matrix>& ms) {
  std::vector<fq::Matrix> out;
  if (ms.empty()) return out;
  const int n = ms.front().rows();
  fq::Subspace span(ms.front().field(), n * n);
  for (const auto& m : ms)
    if (span.insert(fq::flatten(m))) out.push_back(m);
  return out;
}

oracles::ModuleDescriptor module_on(const fq::FieldPtr& field, int degree, const std::vector<fq::Matrix>& parts) {
  auto gens = independent_subset(parts);
  if (gens.empty()) gens.push_back(fq::Matrix::identity(field, degree));
  return oracles::ModuleDescriptor(field, degree, std::move(gens));
}

std::vector<fq::Matrix> component_parts(const MatrixSubgroup& m, std::size_t i, bool identity_component_only) {
  std::vector<fq::Matrix> out;
  for (const auto& e : m.elements)
    if (!identity_component_only || e.c == 0) out.push_back(e.parts[i]);
  return out;
}

std::optional<ConsumedFact> matrix_intersection_cr(const Pair& p, const MatrixSubgroup& m, const std::string& q,
                                                   const oracles::OracleBounds& bounds) {
  bool all = true;
  std::vector<std::string> refs;
  for (std::size_t i = 0; i < p.ambient.components.size(); ++i) {
    const int d = p.ambient.components[i].type.rank + 1;
    const auto module = module_on(m.field, d, component_parts(m, i, true));
    const auto s = oracles::socle(module, bounds);
    if (!s.socle) return std::nullopt;
    all = all && s.socle->dim() == d;
    std::string r = "socle dim " + std::to_string(s.socle->dim()) + " of " + std::to_string(d) + " over " +
                    field_name(m.field);
    if (p.ambient.components.size() > 1) r = "component " + std::to_string(i) + ": " + r;
    refs.push_back(r);
  }
  std::string ref;
  for (const auto& r : refs) ref += r + "; ";
  return ConsumedFact{q, all, Provenance::Computed, ref + kBaseChange};
}

std::optional<ConsumedFact> matrix_centralizer_reductive(const Pair& p, const MatrixSubgroup& m, const std::string& q,
                                                         const oracles::OracleBounds& bounds) {
  if (p.ambient.radical_rank != 0) return std::nullopt;
  for (const auto& e : m.elements)
    if (!p.ambient.component_group.action(e.c).is_trivial()) return std::nullopt;
  bool all = true;
  std::string ref;
  for (std::size_t i = 0; i < p.ambient.components.size(); ++i) {
    const int d = p.ambient.components[i].type.rank + 1;
    if (static_cast<std::size_t>(d) * d * m.field->degree() > bounds.max_algebra_dim) return std::nullopt;
    auto parts = component_parts(m, i, false);
    std::set<std::vector<fq::Elem>> distinct;
    for (const auto& x : parts) distinct.insert(x.entries());
    const auto rep = oracles::centralizer_report(module_on(m.field, d, parts), distinct.size());
    all = all && rep.reductive;
    if (p.ambient.components.size() > 1) ref += "component " + std::to_string(i) + ": ";
    ref += "commutant dim " + std::to_string(rep.commutant_dim) + ", radical dim " + std::to_string(rep.radical_dim) +
           " over " + field_name(m.field) + "; ";
  }
  return ConsumedFact{q, all, Provenance::Computed, ref + kBaseChange};
}

MatrixElement element_power(const model::GroupShape& g, const MatrixElement& x, std::uint64_t e,
                            const fq::FieldPtr& field) {
  MatrixElement result = model::identity_element(g, field);
  MatrixElement base = x;
  while (e) {
    if (e & 1) result = model::multiply(g, result, base);
    e >>= 1;
    if (e) base = model::multiply(g, base, base);
  }
  return result;
}

bool matrix_cyclic(const Pair& p, const MatrixSubgroup& m) {
  const std::uint64_t n = m.elements.size();
  std::vector<std::uint64_t> primes;
  std::uint64_t rest = n;
  for (std::uint64_t r = 2; r * r <= rest; ++r)
    if (rest % r == 0) {
      primes.push_back(r);
      while (rest % r == 0) rest /= r;
    }
  if (rest > 1) primes.push_back(rest);
  const MatrixElement id = model::identity_element(p.ambient, m.field);
  for (const auto& x : m.elements) {
    bool generates = true;
    for (std::uint64_t r : primes)
      if (element_power(p.ambient, x, n / r, m.field) == id) {
        generates = false;
        break;
      }
    if (generates) return true;
  }
  return false;
}

std::optional<ConsumedFact> compute(const Pair& p, const std::string& q, const oracles::OracleBounds& bounds) {
  namespace qy = model::query;
  if (const auto* m = std::get_if<MatrixSubgroup>(&p.subgroup)) {
    if (q == qy::intersection_cr(p)) return matrix_intersection_cr(p, *m, q, bounds);
    if (q == qy::centralizer_reductive(p)) return matrix_centralizer_reductive(p, *m, q, bounds);
    if (q == qy::intersection_trivial(p)) {
      const auto k = std::count_if(m->elements.begin(), m->elements.end(), [](const auto& e) { return e.c == 0; });
      return ConsumedFact{q, k == 1, Provenance::Computed, "|" + model::intersection_label(p) + "| = " + std::to_string(k)};
    }
    if (q == qy::identity_component_reductive(p) || q == qy::reductive(p))
      return ConsumedFact{q, true, Provenance::Computed, "finite group of order " + std::to_string(m->elements.size())};
    if (q == qy::cyclic(p))
      return ConsumedFact{q, matrix_cyclic(p, *m), Provenance::Computed,
                          "element orders in a group of order " + std::to_string(m->elements.size())};
    return std::nullopt;
  }
  const auto& a = std::get<AbstractSubgroup>(p.subgroup);
  if (a.intersection.kind != Intersection::Kind::Trivial) return std::nullopt;
  if (q == qy::intersection_cr(p)) return ConsumedFact{q, true, Provenance::Computed, "trivial group"};
  if (q == qy::intersection_trivial(p)) return ConsumedFact{q, true, Provenance::Computed, "trivial intersection"};
  if (!a.image) return std::nullopt;
  const std::string finite = "finite: isomorphic to its image of order " + std::to_string(a.image->size());
  if (q == qy::identity_component_reductive(p) || q == qy::reductive(p))
    return ConsumedFact{q, true, Provenance::Computed, finite};
  if (q == qy::cyclic(p))
    return ConsumedFact{q, p.ambient.component_group.is_cyclic(*a.image), Provenance::Computed,
                        "isomorphic to its image of order " + std::to_string(a.image->size())};
  return std::nullopt;
}

}  // namespace

std::optional<ConsumedFact> resolve(const Pair& pair, const std::string& query, const oracles::OracleBounds& bounds) {
  auto computed = compute(pair, query, bounds);
  const auto asserted = model::asserted_oracle(model::facts_of(pair), query);
  if (computed && asserted && computed->answer != asserted->answer)
    throw ModelError("asserted fact '" + query + "' contradicts the computed answer (" + computed->reference + ")");
  if (computed) return computed;
  if (asserted) return ConsumedFact{query, asserted->answer, asserted->provenance, asserted->reference};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The procedure.

namespace {

std::string identity_component_name(const model::GroupShape& g) {
  std::vector<std::string> parts;
  if (g.radical_rank > 0) parts.push_back("T" + std::to_string(g.radical_rank));
  for (std::size_t i = 0; i < g.components.size();) {
    std::size_t j = i;
    while (j < g.components.size() && g.components[j].type == g.components[i].type) ++j;
    std::string s = g.components[i].type.name();
    if (j - i > 1) s += "^" + std::to_string(j - i);
    parts.push_back(s);
    i = j;
  }
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " x " + parts[i];
  return out;
}

std::string fact_text(const ConsumedFact& f) {
  std::string s = f.query + " = " + (f.answer ? "true" : "false") + " (";
  s += f.provenance == Provenance::Asserted ? "asserted" : "computed";
  if (!f.reference.empty()) s += ": " + f.reference;
  return s + ")";
}

bool is_s3(const model::ComponentGroup& cg, const std::vector<int>& image) {
  return image.size() == 6 && !cg.is_abelian(image);
}

class Runner {
 public:
  explicit Runner(const EngineConfig& cfg) : cfg_(cfg) {}

  TraceNode run(std::shared_ptr<const Pair> pair, bool step6_used, bool second_used, const Metric* parent) {
    TraceNode node;
    node.pair = pair;
    node.step6_used = step6_used;
    node.second_used = second_used;
    node.metric = metric_of(*pair, step6_used, second_used);
    if (parent && !(node.metric < *parent))
      throw oracles::InternalError("termination metric failed to decrease at a recursive call");
    pair->ambient.validate();
    const Pair& p = *pair;
    const std::string A = p.ambient.label;
    const int ch = p.ambient.characteristic;

    auto consult = [&](const std::string& q) -> std::optional<ConsumedFact> {
      auto f = resolve(p, q, cfg_.bounds);
      if (f && std::none_of(node.facts.begin(), node.facts.end(), [&](const auto& x) { return x.query == q; }))
        node.facts.push_back(*f);
      return f;
    };
    auto leaf = [&](const std::string& rule, const std::string& label, const std::string& note, Verdict v) {
      node.rule = rule;
      node.steps.push_back({label, note});
      node.verdict = std::move(v);
    };
    auto decided = [&](const std::string& rule, const std::string& prefix, const std::string& q) {
      const auto f = consult(q);
      if (f)
        leaf(rule, rule, prefix + fact_text(*f), Verdict::of(f->answer));
      else
        leaf(rule, rule, prefix + "missing " + q, Verdict::unknown({q}));
    };

    // Shortcuts.
    const auto image = model::image_of(p);
    if (ch == 0) {
      if (const auto f = consult(model::query::reductive(p))) {
        leaf(rule::kShortcutA, rule::kShortcutA, "p = 0, cr iff reductive: " + fact_text(*f), Verdict::of(f->answer));
        return node;
      }
    }
    if (const auto f = consult(model::query::identity_component_reductive(p)); f && !f->answer) {
      leaf(rule::kShortcutB, rule::kShortcutB, "identity component not reductive: " + fact_text(*f), Verdict::not_cr());
      return node;
    }
    if (const auto f = consult(model::query::cyclic(p)); f && f->answer) {
      if (const auto g = consult(model::query::centralizer_reductive(p))) {
        leaf(rule::kShortcutC, rule::kShortcutC, "cyclic, cr iff centralizer reductive: " + fact_text(*g),
             Verdict::of(g->answer));
        return node;
      }
    }
    if (image && image->size() > 1 && (ch == 0 || std::gcd<long>(image->size(), ch) == 1)) {
      if (const auto f = consult(model::query::intersection_cr(p))) {
        leaf(rule::kShortcutD, rule::kShortcutD,
             "quotient of order " + std::to_string(image->size()) + " is linearly reductive: " + fact_text(*f),
             Verdict::of(f->answer));
        return node;
      }
    }
    node.steps.push_back({"Shortcuts", "none fired"});

    // Optional second reduction.
    if (cfg_.second_reduction && !second_used) {
      const auto it = model::shapes_of(p).find(model::query::double_centralizer_shape(p));
      if (it != model::shapes_of(p).end()) {
        if (const auto f = consult(model::query::centralizer_cr(p)); f && f->answer) {
          auto child = std::make_shared<const Pair>(
              model::second_reduction(p, {f->answer, f->provenance, f->reference}, it->second));
          node.rule = rule::kSecondReduction;
          node.steps.push_back({rule::kSecondReduction, "ambient replaced by " + child->ambient.label + " = H C_" + A +
                                                            "0(C_" + A + "0(H))"});
          node.children.push_back(run(child, step6_used, true, &node.metric));
          node.verdict = node.children.back().verdict;
          return node;
        }
      }
    }

    // Step 1.
    if (!p.ambient.identity_component_simple()) {
      if (!image) {
        const std::string q = "image[" + model::subgroup_label(p) + "]";
        leaf(rule::kStep1O2, rule::kStep1O2, "missing " + q, Verdict::unknown({q}));
        return node;
      }
      const auto pairs = model::op2_decompose(p);
      std::string reps;
      for (const auto& c : pairs) reps += (reps.empty() ? "" : ", ") + c.ambient.label;
      node.rule = rule::kStep1O2;
      node.steps.push_back({rule::kStep1O2, A + "0 = " + identity_component_name(p.ambient) + " is not simple; " +
                                                std::to_string(pairs.size()) + " orbit pair(s)" +
                                                (pairs.empty() ? "" : ": " + reps)});
      std::vector<Verdict> vs;
      for (const auto& c : pairs) {
        node.children.push_back(run(std::make_shared<const Pair>(c), step6_used, second_used, &node.metric));
        vs.push_back(node.children.back().verdict);
      }
      node.verdict = combine(vs);
      return node;
    }
    if (!p.ambient.centralizer_trivial()) {
      auto child = std::make_shared<const Pair>(model::op1_quotient_by_centralizer(p));
      node.rule = rule::kStep1O1;
      node.steps.push_back({rule::kStep1O1, A + "0 = " + identity_component_name(p.ambient) + " is simple; C_" + A + "(" +
                                                A + "0) contains the action kernel of order " +
                                                std::to_string(p.ambient.component_group.kernel().size())});
      node.children.push_back(run(child, step6_used, second_used, &node.metric));
      node.verdict = node.children.back().verdict;
      return node;
    }
    node.steps.push_back({"Step 1", "skipped: " + A + "0 = " + identity_component_name(p.ambient) +
                                        " is simple and C_" + A + "(" + A + "0) = 1"});

    // Step 2.
    if (!image) {
      const std::string q = "image[" + model::subgroup_label(p) + "]";
      leaf(rule::kStep2, rule::kStep2, "missing " + q, Verdict::unknown({q}));
      return node;
    }
    const int n = static_cast<int>(image->size());
    const auto& type = p.ambient.components.front().type;
    const int out = model::out_order(type);
    if (out % n != 0)
      throw ModelError("image of order " + std::to_string(n) + " cannot embed in Out(" + type.name() + ") of order " +
                       std::to_string(out));
    const std::string n_text = "n=" + std::to_string(n);
    if (ch == 0 || n % ch != 0) {
      decided(rule::kStep2, n_text + ", p=" + std::to_string(ch) + " does not divide n; ",
              model::query::intersection_cr(p));
      return node;
    }
    node.steps.push_back({rule::kStep2, n == ch ? n_text + "=p" : n_text + ", p=" + std::to_string(ch) + " divides n"});

    // Step 3.
    const std::string q_cr = model::query::intersection_cr(p);
    const auto cr = consult(q_cr);
    if (!cr) {
      leaf(rule::kStep3, rule::kStep3, "missing " + q_cr, Verdict::unknown({q_cr}));
      return node;
    }
    if (!cr->answer) {
      leaf(rule::kStep3, rule::kStep3, fact_text(*cr), Verdict::not_cr());
      return node;
    }

    // Step 4.
    const std::string q_triv = model::query::intersection_trivial(p);
    const auto triv = consult(q_triv);
    if (!triv) {
      leaf(rule::kStep4, rule::kStep4, "missing " + q_triv, Verdict::unknown({q_triv}));
      return node;
    }
    if (triv->answer) {
      decided(rule::kStep4, model::subgroup_label(p) + " cap " + A + "0 = 1; ", model::query::centralizer_reductive(p));
      return node;
    }

    // Steps 5 and 6.
    const auto& cg = p.ambient.component_group;
    if (n == 6 && cg.is_abelian(*image)) throw ModelError("cyclic image of order 6 cannot embed in Out(" + type.name() + ")");
    if (!is_s3(cg, *image)) {
      decided(rule::kStep5, "", model::query::quotient_centralizer_cr(p));
      return node;
    }
    if (step6_used) throw ModelError("Step 6 reached a second time on one path; the asserted shapes are inconsistent");
    const std::string shape_key = model::query::collapse_shape(p);
    const auto it = model::shapes_of(p).find(shape_key);
    if (it == model::shapes_of(p).end()) {
      const std::string q = "shape[" + shape_key + "]";
      leaf(rule::kStep6, rule::kStep6, "missing " + q, Verdict::unknown({q}));
      return node;
    }
    auto child = std::make_shared<const Pair>(model::op3_collapse(p, {cr->answer, cr->provenance, cr->reference}, it->second));
    if (!(child->ambient.dimension() < p.ambient.dimension()))
      throw ModelError("shape of " + shape_key + " must have smaller dimension than " + A);
    node.rule = rule::kStep6;
    node.steps.push_back({rule::kStep6, "image is S3; restart with (" + model::subgroup_label(*child) + ", " +
                                            child->ambient.label + "), " + child->ambient.label + "0 = " +
                                            identity_component_name(child->ambient)});
    node.children.push_back(run(child, true, second_used, &node.metric));
    node.verdict = node.children.back().verdict;
    return node;
  }

 private:
  const EngineConfig& cfg_;
};

}  // namespace

Decision decide(const Pair& pair, const EngineConfig& config) {
  Runner runner(config);
  TraceNode trace = runner.run(std::make_shared<const Pair>(pair), false, false, nullptr);
  Verdict v = trace.verdict;
  return {std::move(v), std::move(trace)};
}

// ---------------------------------------------------------------------------
// Replay checker.

namespace {

class Verifier {
 public:
  explicit Verifier(const EngineConfig& cfg) : cfg_(cfg) {}

  VerifyResult check(const TraceNode& node, const std::string& path, bool step6_used, bool second_used,
                     const Metric* parent) {
    auto fail = [&](const std::string& why) { return VerifyResult{false, path, why}; };
    if (!node.pair) return fail("node carries no pair");
    const Pair& p = *node.pair;
    if (node.step6_used != step6_used || node.second_used != second_used) return fail("path flags do not match");
    const Metric m = metric_of(p, step6_used, second_used);
    if (!(m == node.metric)) return fail("recorded metric differs from the pair");
    if (parent && !(m < *parent)) return fail("metric does not decrease");

    std::map<std::string, bool> facts;
    for (const auto& f : node.facts) {
      std::optional<ConsumedFact> again;
      try {
        again = resolve(p, f.query, cfg_.bounds);
      } catch (const std::exception& e) {
        return fail(std::string("fact replay failed: ") + e.what());
      }
      if (!again) return fail("consumed fact '" + f.query + "' is not available for this pair");
      if (again->answer != f.answer) return fail("consumed fact '" + f.query + "' has the wrong answer");
      facts[f.query] = f.answer;
    }
    auto fact = [&](const std::string& q) -> std::optional<bool> {
      const auto it = facts.find(q);
      if (it == facts.end()) return std::nullopt;
      return it->second;
    };
    // A leaf decided by query q: the verdict equals the fact, or is Unknown listing q.
    auto leaf_matches = [&](const std::string& q) {
      if (!node.children.empty()) return false;
      if (const auto a = fact(q)) return node.verdict == Verdict::of(*a);
      return node.verdict == Verdict::unknown({q});
    };

    if (node.verdict.value == VerdictValue::Unknown && node.verdict.missing.empty())
      return fail("Unknown verdict without missing facts");
    if (node.verdict.value != VerdictValue::Unknown && !node.verdict.missing.empty())
      return fail("decided verdict lists missing facts");

    // Shortcut (b) must have preempted everything else.
    if (node.rule != rule::kShortcutA && node.rule != rule::kShortcutB) {
      if (const auto r = fact(model::query::identity_component_reductive(p)); r && !*r)
        return fail("non-reductive identity component recorded but shortcut (b) did not fire");
    }

    const auto image = model::image_of(p);
    const int ch = p.ambient.characteristic;
    const bool simple = p.ambient.identity_component_simple();
    const bool faithful = p.ambient.centralizer_trivial();
    const int n = image ? static_cast<int>(image->size()) : -1;
    const bool divides = image && ch != 0 && n % ch == 0;
    namespace qy = model::query;

    std::vector<Pair> expected_children;
    bool child_step6 = step6_used, child_second = second_used;
    const std::string& r = node.rule;
    if (r == rule::kShortcutA) {
      if (ch != 0) return fail("shortcut (a) needs p = 0");
      if (!fact(qy::reductive(p)) || !leaf_matches(qy::reductive(p))) return fail("shortcut (a) verdict mismatch");
    } else if (r == rule::kShortcutB) {
      const auto f = fact(qy::identity_component_reductive(p));
      if (!f || *f || node.verdict != Verdict::not_cr() || !node.children.empty()) return fail("shortcut (b) mismatch");
    } else if (r == rule::kShortcutC) {
      const auto c = fact(qy::cyclic(p));
      if (!c || !*c || !fact(qy::centralizer_reductive(p)) || !leaf_matches(qy::centralizer_reductive(p)))
        return fail("shortcut (c) mismatch");
    } else if (r == rule::kShortcutD) {
      if (!image || n <= 1 || (ch != 0 && std::gcd(n, ch) != 1)) return fail("shortcut (d) precondition fails");
      if (!fact(qy::intersection_cr(p)) || !leaf_matches(qy::intersection_cr(p))) return fail("shortcut (d) mismatch");
    } else if (r == rule::kSecondReduction) {
      if (!cfg_.second_reduction || second_used) return fail("second reduction not permitted here");
      const auto f = fact(qy::centralizer_cr(p));
      const auto it = model::shapes_of(p).find(qy::double_centralizer_shape(p));
      if (!f || !*f || it == model::shapes_of(p).end()) return fail("second reduction precondition fails");
      expected_children.push_back(model::second_reduction(p, {true, Provenance::Asserted, ""}, it->second));
      child_second = true;
    } else if (r == rule::kStep1O2) {
      if (simple) return fail("Step 1 (O2) applied to a simple identity component");
      if (!image) {
        if (!node.children.empty() || node.verdict.value != VerdictValue::Unknown) return fail("O2 without image");
      } else {
        expected_children = model::op2_decompose(p);
      }
    } else if (r == rule::kStep1O1) {
      if (!simple || faithful) return fail("Step 1 (O1 only) precondition fails");
      expected_children.push_back(model::op1_quotient_by_centralizer(p));
    } else {
      // Numbered steps from Step 2 on run on simple G0 with trivial centralizer.
      if (!simple || !faithful) return fail(r + " reached while Step 1 applies");
      if (r == rule::kStep2) {
        if (!image) {
          if (node.verdict.value != VerdictValue::Unknown) return fail("Step 2 without image");
        } else {
          if (divides) return fail("Step 2 stopped although p divides n");
          if (!leaf_matches(qy::intersection_cr(p))) return fail("Step 2 verdict differs from the consumed fact");
        }
      } else {
        if (!divides) return fail(r + " reached although p does not divide n");
        const auto cr = fact(qy::intersection_cr(p));
        if (r == rule::kStep3) {
          if (!leaf_matches(qy::intersection_cr(p)) || (cr && *cr)) return fail("Step 3 mismatch");
        } else {
          if (!cr || !*cr) return fail(r + " reached without a positive cr fact for the intersection");
          const auto triv = fact(qy::intersection_trivial(p));
          if (r == rule::kStep4) {
            if (!triv) {
              if (!leaf_matches(qy::intersection_trivial(p))) return fail("Step 4 mismatch");
            } else if (!*triv || !leaf_matches(qy::centralizer_reductive(p))) {
              return fail("Step 4 mismatch");
            }
          } else {
            if (!triv || *triv) return fail(r + " reached without a negative triviality fact");
            const bool s3 = n == 6 && !p.ambient.component_group.is_abelian(*image);
            if (r == rule::kStep5) {
              if (s3 || !leaf_matches(qy::quotient_centralizer_cr(p))) return fail("Step 5 mismatch");
            } else if (r == rule::kStep6) {
              if (!s3) return fail("Step 6 applied to an image that is not S3");
              if (step6_used) return fail("Step 6 appears twice on one path");
              const auto it = model::shapes_of(p).find(qy::collapse_shape(p));
              if (it == model::shapes_of(p).end()) {
                if (node.verdict != Verdict::unknown({"shape[" + qy::collapse_shape(p) + "]"}) || !node.children.empty())
                  return fail("Step 6 without a shape must be Unknown");
              } else {
                expected_children.push_back(model::op3_collapse(p, {true, Provenance::Asserted, ""}, it->second));
              }
              child_step6 = true;
            } else {
              return fail("unknown rule '" + r + "'");
            }
          }
        }
      }
    }

    if (!expected_children.empty() || !node.children.empty()) {
      if (expected_children.size() != node.children.size()) return fail("child count differs from replay");
      std::vector<Verdict> vs;
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (!node.children[i].pair || !(*node.children[i].pair == expected_children[i]))
          return fail("child " + std::to_string(i) + " differs from re-applying " + r);
        const auto sub =
            check(node.children[i], path + "/" + std::to_string(i), child_step6, child_second, &node.metric);
        if (!sub.ok) return sub;
        vs.push_back(node.children[i].verdict);
      }
      const Verdict want = (r == rule::kStep1O2) ? combine(vs) : vs.front();
      if (!(node.verdict == want)) return fail("verdict violates the propagation law");
    } else if (r == rule::kStep1O2 && image && node.verdict != Verdict::cr()) {
      return fail("no orbit pairs: the verdict must be CR");
    }
    return {};
  }

 private:
  const EngineConfig& cfg_;
};

}  // namespace

VerifyResult verify_trace(const TraceNode& trace, const EngineConfig& config) {
  Verifier v(config);
  try {
    return v.check(trace, "root", false, false, nullptr);
  } catch (const std::exception& e) {
    return {false, "root", std::string("replay raised: ") + e.what()};
  }
}

// ---------------------------------------------------------------------------
// Output.

nlohmann::ordered_json pair_summary(const Pair& p) {
  nlohmann::ordered_json j;
  j["subgroup"] = model::subgroup_label(p);
  j["ambient"] = p.ambient.label;
  j["p"] = p.ambient.characteristic;
  j["identity_component"] = identity_component_name(p.ambient);
  j["dimension"] = p.ambient.dimension();
  j["component_group_order"] = p.ambient.component_group.order();
  j["centralizer_trivial"] = p.ambient.centralizer_trivial();
  const auto image = model::image_of(p);
  if (image)
    j["image_order"] = image->size();
  else
    j["image_order"] = nullptr;
  j["intersection"] = model::intersection_label(p);
  if (const auto* m = std::get_if<MatrixSubgroup>(&p.subgroup)) {
    j["kind"] = "matrix";
    j["field"] = field_name(m->field);
    j["order"] = m->elements.size();
  } else {
    j["kind"] = "abstract";
  }
  auto notes = nlohmann::ordered_json::array();
  for (const auto& c : p.ambient.components)
    if (c.declared_isogeny != "adjoint")
      notes.push_back("component " + std::to_string(c.id) + " declared " + c.declared_isogeny + ", treated as adjoint");
  j["notes"] = notes;
  return j;
}

nlohmann::ordered_json trace_to_json(const TraceNode& t) {
  nlohmann::ordered_json j;
  j["rule"] = t.rule;
  auto steps = nlohmann::ordered_json::array();
  for (const auto& s : t.steps) steps.push_back({{"label", s.label}, {"note", s.note}});
  j["step"] = steps;
  j["pair"] = t.pair ? pair_summary(*t.pair) : nlohmann::ordered_json();
  auto facts = nlohmann::ordered_json::array();
  for (const auto& f : t.facts)
    facts.push_back({{"query", f.query},
                     {"answer", f.answer},
                     {"provenance", f.provenance == Provenance::Asserted ? "asserted" : "computed"},
                     {"reference", f.reference}});
  j["facts"] = facts;
  auto children = nlohmann::ordered_json::array();
  for (const auto& c : t.children) children.push_back(trace_to_json(c));
  j["children"] = children;
  j["verdict"] = {{"value", to_string(t.verdict.value)}, {"missing", t.verdict.missing}};
  return j;
}

namespace {

void explain_into(const TraceNode& t, int depth, std::ostringstream& out) {
  const std::string indent(2 * depth, ' ');
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    out << indent << t.steps[i].label << ": " << t.steps[i].note;
    if (i + 1 == t.steps.size() && t.children.empty()) out << " -> " << to_string(t.verdict.value);
    out << "\n";
  }
  for (const auto& c : t.children) explain_into(c, depth + 1, out);
}

}  // namespace

std::string explain_text(const TraceNode& trace) {
  std::ostringstream out;
  explain_into(trace, 0, out);
  if (trace.verdict.value == VerdictValue::Unknown) {
    out << "missing facts:\n";
    for (const auto& q : trace.verdict.missing) out << "  " << q << "\n";
  }
  return out.str();
}

std::string explain(const TraceNode& trace, const std::string& format) {
  if (format == "json") return trace_to_json(trace).dump(2) + "\n";
  if (format == "text") return explain_text(trace);
  throw std::invalid_argument("unknown trace format '" + format + "' (expected text or json)");
}

}  // namespace gcr::engine
