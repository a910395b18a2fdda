#pragma once

// The reduction procedure for complete reducibility of H in a non-connected
// reductive G: shortcuts, then Steps 1-6, producing a trace tree whose
// leaves consume connected-case facts (asserted or computed).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcr/groupmodel.hpp"
#include "gcr/oracles.hpp"
#include "json.hpp"

namespace gcr::engine {

enum class VerdictValue { CR, NotCR, Unknown };

struct Verdict {
  VerdictValue value = VerdictValue::Unknown;
  std::vector<std::string> missing;  // non-empty iff Unknown

  static Verdict cr() { return {VerdictValue::CR, {}}; }
  static Verdict not_cr() { return {VerdictValue::NotCR, {}}; }
  static Verdict unknown(std::vector<std::string> missing) { return {VerdictValue::Unknown, std::move(missing)}; }
  static Verdict of(bool cr) { return cr ? Verdict::cr() : Verdict::not_cr(); }
  bool operator==(const Verdict&) const = default;
};

std::string to_string(VerdictValue v);

/// Combination law for a node with children.
Verdict combine(const std::vector<Verdict>& children);

namespace rule {
inline const std::string kShortcutA = "Shortcut (a)";
inline const std::string kShortcutB = "Shortcut (b)";
inline const std::string kShortcutC = "Shortcut (c)";
inline const std::string kShortcutD = "Shortcut (d)";
inline const std::string kSecondReduction = "Second reduction";
inline const std::string kStep1O2 = "Step 1 (O2)";
inline const std::string kStep1O1 = "Step 1 (O1 only)";
inline const std::string kStep2 = "Step 2";
inline const std::string kStep3 = "Step 3";
inline const std::string kStep4 = "Step 4";
inline const std::string kStep5 = "Step 5";
inline const std::string kStep6 = "Step 6 (O3)";
}  // namespace rule

struct StepEvent {
  std::string label;
  std::string note;
};

struct ConsumedFact {
  std::string query;
  bool answer = false;
  model::Provenance provenance = model::Provenance::Asserted;
  std::string reference;
};

/// Lexicographic recursion measure; strictly decreases from parent to child.
struct Metric {
  int step6_unused = 1;
  int second_unused = 1;
  int components = 0;
  long dimension = 0;
  int component_group_order = 1;
  auto operator<=>(const Metric&) const = default;
};

Metric metric_of(const model::Pair& pair, bool step6_used, bool second_used);

struct TraceNode {
  std::string rule;
  std::vector<StepEvent> steps;
  std::shared_ptr<const model::Pair> pair;
  std::vector<ConsumedFact> facts;
  std::vector<TraceNode> children;
  Verdict verdict;
  bool step6_used = false;   // Step 6 applied above this node
  bool second_used = false;  // second reduction applied above this node
  Metric metric;
};

struct EngineConfig {
  oracles::OracleBounds bounds;
  bool second_reduction = false;
};

struct Decision {
  Verdict verdict;
  TraceNode trace;
};

/// Throws model::ModelError on a malformed pair.
Decision decide(const model::Pair& pair, const EngineConfig& config = {});

/// Answer to a query about a pair: computed when the pair is concrete enough,
/// else looked up among the asserted facts. Empty when neither applies.
std::optional<ConsumedFact> resolve(const model::Pair& pair, const std::string& query,
                                    const oracles::OracleBounds& bounds = {});

struct VerifyResult {
  bool ok = true;
  std::string path;    // e.g. "root/0/0"
  std::string reason;
};

/// Independent replay of every node: rule preconditions, recomputed child
/// pairs, consumed facts, verdict propagation, Step 6 at most once per path,
/// strictly decreasing metric.
VerifyResult verify_trace(const TraceNode& trace, const EngineConfig& config = {});

nlohmann::ordered_json pair_summary(const model::Pair& pair);
nlohmann::ordered_json trace_to_json(const TraceNode& trace);
/// One line per step event, children indented; leaves end with the verdict.
std::string explain_text(const TraceNode& trace);
/// format is "text" or "json".
std::string explain(const TraceNode& trace, const std::string& format);

}  // namespace gcr::engine
