#include "focal/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "focal/error.h"

namespace focal {
namespace {

std::uint64_t ProfileCount(const std::vector<std::vector<StrategyId>>& strategies,
                           std::uint64_t cap) {
  std::uint64_t product = 1;
  for (const auto& list : strategies) {
    if (product > cap / list.size()) {
      throw Error(ErrorKind::kCapacity,
                  "profile product exceeds cap of " + std::to_string(cap));
    }
    product *= list.size();
  }
  if (product > cap) {
    throw Error(ErrorKind::kCapacity,
                "profile product exceeds cap of " + std::to_string(cap));
  }
  return product;
}

void ValidateStrategies(const std::vector<std::vector<StrategyId>>& strategies) {
  if (strategies.empty()) {
    throw Error(ErrorKind::kInvalidParameter, "game needs at least one player");
  }
  for (std::size_t p = 0; p < strategies.size(); ++p) {
    if (strategies[p].empty()) {
      throw Error(ErrorKind::kInvalidParameter,
                  "player " + std::to_string(p) + " has no strategies");
    }
    std::set<StrategyId> seen(strategies[p].begin(), strategies[p].end());
    if (seen.size() != strategies[p].size()) {
      throw Error(ErrorKind::kInvalidParameter,
                  "player " + std::to_string(p) + " has duplicate strategy ids");
    }
  }
}

}  // namespace

NormalFormGame::NormalFormGame(std::vector<std::vector<StrategyId>> strategies,
                               std::vector<std::vector<double>> payoffs)
    : strategies_(std::move(strategies)), payoffs_(std::move(payoffs)) {
  ValidateStrategies(strategies_);
  const std::uint64_t count =
      ProfileCount(strategies_, std::numeric_limits<std::uint64_t>::max());
  if (payoffs_.size() != count) {
    throw Error(ErrorKind::kInvalidParameter,
                "payoff table has " + std::to_string(payoffs_.size()) +
                    " entries, expected " + std::to_string(count));
  }
  for (const auto& entry : payoffs_) {
    if (entry.size() != strategies_.size()) {
      throw Error(ErrorKind::kInvalidParameter,
                  "payoff vector length differs from player count");
    }
  }
  ComputeStrides();
}

NormalFormGame NormalFormGame::FromFunction(
    std::vector<std::vector<StrategyId>> strategies, const PayoffFn& payoff,
    std::uint64_t cap) {
  ValidateStrategies(strategies);
  const std::uint64_t count = ProfileCount(strategies, cap);
  NormalFormGame game;
  game.strategies_ = std::move(strategies);
  game.ComputeStrides();
  game.payoffs_.reserve(count);
  for (std::size_t flat = 0; flat < count; ++flat) {
    auto entry = payoff(game.Unflatten(flat));
    if (entry.size() != game.strategies_.size()) {
      throw Error(ErrorKind::kInvalidParameter,
                  "payoff vector length differs from player count");
    }
    game.payoffs_.push_back(std::move(entry));
  }
  return game;
}

void NormalFormGame::ComputeStrides() {
  strides_.assign(strategies_.size(), 1);
  for (std::size_t p = strategies_.size(); p-- > 1;) {
    strides_[p - 1] = strides_[p] * strategies_[p].size();
  }
}

std::size_t NormalFormGame::FlatIndex(std::span<const std::size_t> indices) const {
  std::size_t flat = 0;
  for (std::size_t p = 0; p < indices.size(); ++p) flat += indices[p] * strides_[p];
  return flat;
}

std::vector<std::size_t> NormalFormGame::Unflatten(std::size_t flat) const {
  std::vector<std::size_t> indices(strategies_.size());
  for (std::size_t p = 0; p < strategies_.size(); ++p) {
    indices[p] = flat / strides_[p];
    flat %= strides_[p];
  }
  return indices;
}

std::vector<std::size_t> NormalFormGame::Indices(const StrategyProfile& profile) const {
  if (profile.choices.size() != strategies_.size()) {
    throw Error(ErrorKind::kInvalidProfile,
                "profile has " + std::to_string(profile.choices.size()) +
                    " choices for " + std::to_string(strategies_.size()) + " players");
  }
  std::vector<std::size_t> indices(strategies_.size());
  for (std::size_t p = 0; p < strategies_.size(); ++p) {
    const auto& list = strategies_[p];
    std::size_t i = 0;
    while (i < list.size() && list[i] != profile.choices[p]) ++i;
    if (i == list.size()) {
      throw Error(ErrorKind::kInvalidProfile, "unknown strategy '" +
                                                  profile.choices[p] + "' for player " +
                                                  std::to_string(p));
    }
    indices[p] = i;
  }
  return indices;
}

StrategyProfile NormalFormGame::ProfileAt(std::size_t flat) const {
  StrategyProfile profile;
  const auto indices = Unflatten(flat);
  for (std::size_t p = 0; p < indices.size(); ++p) {
    profile.choices.push_back(strategies_[p][indices[p]]);
  }
  return profile;
}

std::vector<double> payoff_of_profile(const NormalFormGame& game,
                                      const StrategyProfile& profile) {
  return game.PayoffAt(game.FlatIndex(game.Indices(profile)));
}

std::vector<StrategyProfile> enumerate_pure_nash(const NormalFormGame& game,
                                                 std::uint64_t cap) {
  if (game.num_profiles() > cap) {
    throw Error(ErrorKind::kCapacity, "profile count " +
                                          std::to_string(game.num_profiles()) +
                                          " exceeds cap of " + std::to_string(cap));
  }
  const int players = game.num_players();

  // best[p][slice] caches the highest payoff player p can reach by changing
  // only their own strategy; a slice fixes every other player's strategy.
  std::vector<std::vector<double>> best(players);
  for (int p = 0; p < players; ++p) {
    best[p].assign(game.num_profiles() / game.strategies(p).size(),
                   std::numeric_limits<double>::quiet_NaN());
  }

  std::vector<StrategyProfile> equilibria;
  for (std::size_t flat = 0; flat < game.num_profiles(); ++flat) {
    bool stable = true;
    for (int p = 0; p < players && stable; ++p) {
      const std::size_t stride = game.stride(p);
      const std::size_t width = game.strategies(p).size();
      const std::size_t outer = flat / (stride * width);
      const std::size_t inner = flat % stride;
      double& slice_best = best[p][outer * stride + inner];
      if (std::isnan(slice_best)) {
        const std::size_t base = outer * stride * width + inner;
        slice_best = -std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < width; ++s) {
          slice_best = std::max(slice_best, game.PayoffAt(base + s * stride)[p]);
        }
      }
      if (game.PayoffAt(flat)[p] < slice_best) stable = false;
    }
    if (stable) equilibria.push_back(game.ProfileAt(flat));
  }
  return equilibria;
}

}  // namespace focal
