#include "focal/strategies.h"

#include <cmath>

#include "focal/error.h"
#include "focal/format.h"

namespace focal {
namespace {

int SquaredDistance(Coord a, Coord b) {
  const int dr = a.row - b.row;
  const int dc = a.col - b.col;
  return dr * dr + dc * dc;
}

}  // namespace

std::string_view StrategyTypeName(StrategyType type) {
  switch (type) {
    case StrategyType::kGreedy: return "greedy";
    case StrategyType::kCooperative: return "cooperative";
    case StrategyType::kSvo: return "svo";
    case StrategyType::kScripted: return "scripted";
    case StrategyType::kLlm: return "llm";
  }
  return "";
}

std::optional<StrategyType> ParseStrategyType(std::string_view name) {
  for (auto type : {StrategyType::kGreedy, StrategyType::kCooperative, StrategyType::kSvo,
                    StrategyType::kScripted, StrategyType::kLlm}) {
    if (StrategyTypeName(type) == name) return type;
  }
  return std::nullopt;
}

std::string StrategyKind::Describe() const {
  std::string name(StrategyTypeName(type));
  if (type == StrategyType::kSvo) name += "(" + FormatNumber(svo_angle) + ")";
  return name;
}

Assignment strategy_greedy(const BargainingBoard& board, Player self) {
  return Assignment::All(board.num_discs(), self);
}

Assignment strategy_cooperative(const BargainingBoard& board, Player /*self*/) {
  Assignment out;
  const Coord blue = board.square(Player::kBlue);
  const Coord orange = board.square(Player::kOrange);
  for (const auto& disc : board.discs()) {
    // Integer squared distances compare exactly.
    out.attribution.push_back(SquaredDistance(disc.pos, orange) <
                                      SquaredDistance(disc.pos, blue)
                                  ? Player::kOrange
                                  : Player::kBlue);
  }
  return out;
}

Assignment strategy_svo(const BargainingBoard& board, Player self, double angle_degrees) {
  if (!std::isfinite(angle_degrees)) {
    throw Error(ErrorKind::kInvalidParameter, "SVO angle must be finite");
  }
  return angle_degrees > kSvoProsocialThreshold ? strategy_cooperative(board, self)
                                                : strategy_greedy(board, self);
}

Assignment apply_rule_strategy(const BargainingBoard& board, Player self,
                               const StrategyKind& kind) {
  switch (kind.type) {
    case StrategyType::kGreedy: return strategy_greedy(board, self);
    case StrategyType::kCooperative: return strategy_cooperative(board, self);
    case StrategyType::kSvo: return strategy_svo(board, self, kind.svo_angle);
    case StrategyType::kScripted:
    case StrategyType::kLlm: break;
  }
  throw Error(ErrorKind::kInvalidParameter,
              "strategy '" + kind.Describe() + "' is not rule-based");
}

}  // namespace focal
