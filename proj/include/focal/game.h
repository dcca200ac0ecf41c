#ifndef FOCAL_GAME_H_
#define FOCAL_GAME_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace focal {

using StrategyId = std::string;

// One pure strategy per player, in player order.
struct StrategyProfile {
  std::vector<StrategyId> choices;

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
  friend auto operator<=>(const StrategyProfile&, const StrategyProfile&) = default;
};

inline constexpr std::uint64_t kDefaultProfileCap = 10'000'000;

// Finite normal-form game with a dense payoff table. Joint profiles are laid
// out row-major with the last player's strategy varying fastest.
class NormalFormGame {
 public:
  using PayoffFn = std::function<std::vector<double>(std::span<const std::size_t>)>;

  // `payoffs` holds one vector of num_players reals per joint profile.
  NormalFormGame(std::vector<std::vector<StrategyId>> strategies,
                 std::vector<std::vector<double>> payoffs);

  // Fills the table by evaluating `payoff` on every joint profile (given as
  // per-player strategy indices). Throws kCapacity if the product exceeds cap.
  static NormalFormGame FromFunction(std::vector<std::vector<StrategyId>> strategies,
                                     const PayoffFn& payoff,
                                     std::uint64_t cap = kDefaultProfileCap);

  int num_players() const { return static_cast<int>(strategies_.size()); }
  const std::vector<StrategyId>& strategies(int player) const { return strategies_[player]; }
  std::size_t num_profiles() const { return payoffs_.size(); }
  std::size_t stride(int player) const { return strides_[player]; }

  std::size_t FlatIndex(std::span<const std::size_t> indices) const;
  std::vector<std::size_t> Unflatten(std::size_t flat) const;
  const std::vector<double>& PayoffAt(std::size_t flat) const { return payoffs_[flat]; }

  // Maps a profile to per-player strategy indices; kInvalidProfile on unknown
  // identifiers or wrong arity.
  std::vector<std::size_t> Indices(const StrategyProfile& profile) const;
  StrategyProfile ProfileAt(std::size_t flat) const;

 private:
  NormalFormGame() = default;
  void ComputeStrides();

  std::vector<std::vector<StrategyId>> strategies_;
  std::vector<std::vector<double>> payoffs_;
  std::vector<std::size_t> strides_;
};

std::vector<double> payoff_of_profile(const NormalFormGame& game,
                                      const StrategyProfile& profile);

// All pure profiles at which no player has a strictly improving unilateral
// deviation, in row-major profile order.
std::vector<StrategyProfile> enumerate_pure_nash(const NormalFormGame& game,
                                                 std::uint64_t cap = kDefaultProfileCap);

}  // namespace focal

#endif  // FOCAL_GAME_H_
