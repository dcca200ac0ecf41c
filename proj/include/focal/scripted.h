#ifndef FOCAL_SCRIPTED_H_
#define FOCAL_SCRIPTED_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "focal/bargaining.h"
#include "json.hpp"

namespace focal {

// Deterministic stand-in for a model, used as a test oracle.
struct ScriptedPolicy {
  enum class Rule { kFixedLabel, kFirstDisplayed, kDistribution };

  Rule rule = Rule::kFirstDisplayed;
  std::string label;                                        // kFixedLabel
  std::vector<std::pair<std::string, double>> distribution;  // kDistribution
  std::uint64_t seed = 0;                                   // kDistribution

  static ScriptedPolicy FixedLabel(std::string label);
  static ScriptedPolicy FirstDisplayed();
  static ScriptedPolicy Distribution(std::vector<std::pair<std::string, double>> weights,
                                     std::uint64_t seed);

  std::string Describe() const;
};

std::string_view ScriptedRuleName(ScriptedPolicy::Rule rule);

// Throws kPolicy unless distribution weights are non-negative and sum to 1
// within 1e-9.
void validate_policy(const ScriptedPolicy& policy);
ScriptedPolicy policy_from_json(const nlohmann::json& doc);

// "<answer>label</answer>" for the displayed options. Distribution draws use
// `draw_seed` mixed with the policy seed. Throws kPolicy when the chosen or
// fixed label is not displayed.
std::string scripted_respond(const std::vector<std::string>& displayed_options,
                             const ScriptedPolicy& policy, std::uint64_t draw_seed);

// Board answers use colors as labels ("blue", "yellow"/"orange"): a fixed
// color for every disc, blue (the first color named in the prompt) for
// first-displayed, or an independent draw per disc.
std::string scripted_respond(const BargainingBoard& board, Player self,
                             const ScriptedPolicy& policy, std::uint64_t draw_seed);

}  // namespace focal

#endif  // FOCAL_SCRIPTED_H_
