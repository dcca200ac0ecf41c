#ifndef FOCAL_STRATEGIES_H_
#define FOCAL_STRATEGIES_H_

#include <optional>
#include <string>
#include <string_view>

#include "focal/bargaining.h"

namespace focal {

// Angles above this (in degrees) count as prosocial.
inline constexpr double kSvoProsocialThreshold = 22.45;

enum class StrategyType { kGreedy, kCooperative, kSvo, kScripted, kLlm };

std::string_view StrategyTypeName(StrategyType type);
std::optional<StrategyType> ParseStrategyType(std::string_view name);

struct StrategyKind {
  StrategyType type = StrategyType::kGreedy;
  double svo_angle = 0.0;  // degrees, kSvo only

  std::string Describe() const;
};

// Every disc to `self`.
Assignment strategy_greedy(const BargainingBoard& board, Player self);

// Every disc to the player whose square is closer in Euclidean distance;
// exact ties go to blue so both players compute the same attribution.
Assignment strategy_cooperative(const BargainingBoard& board, Player self);

// Cooperative above kSvoProsocialThreshold, greedy at or below it.
Assignment strategy_svo(const BargainingBoard& board, Player self, double angle_degrees);

// Dispatches the rule-based kinds; kInvalidParameter for scripted and llm,
// which need an agent.
Assignment apply_rule_strategy(const BargainingBoard& board, Player self,
                               const StrategyKind& kind);

}  // namespace focal

#endif  // FOCAL_STRATEGIES_H_
