#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "focal/coordination.h"
#include "focal/error.h"
#include "focal/game.h"
#include "oracles.h"

namespace focal {
namespace {

NormalFormGame MatchingGame(int options, double prize) {
  std::vector<StrategyId> ids;
  for (int i = 1; i <= options; ++i) ids.push_back(std::to_string(i));
  return NormalFormGame::FromFunction({ids, ids}, [prize](std::span<const std::size_t> idx) {
    const double u = idx[0] == idx[1] ? prize : 0.0;
    return std::vector<double>{u, u};
  });
}

NormalFormGame TwoByTwo() {
  return NormalFormGame({{"A", "B"}, {"A", "B"}}, {{3, 3}, {0, 0}, {0, 0}, {1, 1}});
}

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::kConfig;
}

TEST_CASE("payoff_of_profile returns stored vectors") {
  const auto matching = MatchingGame(2, 10);
  CHECK(payoff_of_profile(matching, {{"1", "1"}}) == std::vector<double>{10, 10});
  CHECK(payoff_of_profile(matching, {{"1", "2"}}) == std::vector<double>{0, 0});
  CHECK(payoff_of_profile(TwoByTwo(), {{"B", "B"}}) == std::vector<double>{1, 1});
}

TEST_CASE("payoff_of_profile rejects unknown strategies") {
  CHECK(KindOf([] { payoff_of_profile(TwoByTwo(), {{"A", "C"}}); }) ==
        ErrorKind::kInvalidProfile);
  CHECK(KindOf([] { payoff_of_profile(TwoByTwo(), {{"A"}}); }) == ErrorKind::kInvalidProfile);
}

TEST_CASE("game construction validates shape") {
  CHECK(KindOf([] { NormalFormGame({{"A"}, {}}, {}); }) == ErrorKind::kInvalidParameter);
  CHECK(KindOf([] { NormalFormGame({{"A", "B"}}, {{1}}); }) == ErrorKind::kInvalidParameter);
  CHECK(KindOf([] { NormalFormGame({{"A", "A"}}, {{1}, {1}}); }) ==
        ErrorKind::kInvalidParameter);
}

TEST_CASE("pick-a-number game has exactly the 100 diagonal equilibria") {
  const auto game = MatchingGame(100, 1);
  const auto nash = enumerate_pure_nash(game);
  REQUIRE(nash.size() == 100);
  for (const auto& profile : nash) CHECK(profile.choices[0] == profile.choices[1]);
}

TEST_CASE("constant game: every profile is Nash") {
  const auto game = NormalFormGame::FromFunction(
      {{"a", "b", "c"}, {"x", "y"}, {"u", "v"}},
      [](std::span<const std::size_t>) { return std::vector<double>{2, 2, 2}; });
  CHECK(enumerate_pure_nash(game).size() == 12);
}

TEST_CASE("2x2 coordination game has both diagonal equilibria") {
  const auto nash = enumerate_pure_nash(TwoByTwo());
  CHECK(nash == std::vector<StrategyProfile>{{{"A", "A"}}, {{"B", "B"}}});
}

TEST_CASE("capacity guard") {
  CHECK(KindOf([] { enumerate_pure_nash(MatchingGame(10, 1), 99); }) == ErrorKind::kCapacity);
  std::vector<StrategyId> big(5000);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = std::to_string(i);
  CHECK(KindOf([&] {
          NormalFormGame::FromFunction({big, big}, [](std::span<const std::size_t>) {
            return std::vector<double>{0, 0};
          });
        }) == ErrorKind::kCapacity);
}

TEST_CASE("enumerate_pure_nash agrees with brute-force deviation checking") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    const int players = 2 + static_cast<int>(rng() % 2);
    std::vector<std::vector<StrategyId>> strategies;
    std::size_t product = 1;
    for (int p = 0; p < players; ++p) {
      const std::size_t width = 1 + rng() % (players == 2 ? 14 : 5);
      std::vector<StrategyId> ids;
      for (std::size_t s = 0; s < width; ++s) ids.push_back("s" + std::to_string(s));
      product *= width;
      strategies.push_back(ids);
    }
    if (product > 200) continue;
    // Few distinct payoff levels so ties are common.
    const auto game = NormalFormGame::FromFunction(
        strategies, [&](std::span<const std::size_t>) {
          std::vector<double> u;
          for (int p = 0; p < players; ++p) u.push_back(static_cast<double>(rng() % 4));
          return u;
        });
    const auto fast = enumerate_pure_nash(game);
    const std::set<StrategyProfile> fast_set(fast.begin(), fast.end());
    CHECK(fast_set.size() == fast.size());
    CHECK(fast_set == oracle::BruteForceNash(game));
  }
}

TEST_CASE("random 3x3 games with distinct payoffs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> values(18);
    std::iota(values.begin(), values.end(), 0.0);
    std::shuffle(values.begin(), values.end(), rng);
    std::vector<std::vector<double>> table;
    for (int i = 0; i < 9; ++i) table.push_back({values[2 * i], values[2 * i + 1]});
    const NormalFormGame game({{"T", "M", "B"}, {"L", "C", "R"}}, table);
    const auto fast = enumerate_pure_nash(game);
    CHECK(std::set<StrategyProfile>(fast.begin(), fast.end()) == oracle::BruteForceNash(game));
  }
}

TEST_CASE("coordination index examples") {
  CHECK(coordination_index(ChoiceTally::FromCounts({6, 0, 0})) == 1.0);
  CHECK(coordination_index(ChoiceTally::FromCounts({1, 1, 1, 1, 1})) == 0.0);
  // Pair enumeration: 4 same-choice pairs out of C(6,2) = 15.
  CHECK(coordination_index(ChoiceTally::FromCounts({3, 2, 1})) == doctest::Approx(8.0 / 30).epsilon(1e-15));
}

TEST_CASE("normalized coordination index examples") {
  CHECK(normalized_ci(ChoiceTally::FromCounts({6, 0, 0, 0, 0})) == 5.0);
  CHECK(normalized_ci(ChoiceTally::FromCounts({3, 2, 1, 0, 0})) == doctest::Approx(4.0 / 3).epsilon(1e-15));
  CHECK(normalized_ci(ChoiceTally::FromCounts({2, 2, 2, 2, 2})) == doctest::Approx(5.0 / 9).epsilon(1e-15));
}

TEST_CASE("coordination metrics error paths") {
  CHECK(KindOf([] { coordination_index(ChoiceTally::FromCounts({1, 0})); }) ==
        ErrorKind::kUndefinedMetric);
  CHECK(KindOf([] { normalized_ci(ChoiceTally::FromCounts({4})); }) ==
        ErrorKind::kUndefinedMetric);
  CHECK(KindOf([] { ChoiceTally::FromCounts({1, -1}); }) == ErrorKind::kInvalidParameter);
}

TEST_CASE("CI properties over random tallies") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t m = 1 + rng() % 8;
    std::vector<std::int64_t> counts(m, 0);
    const int n = 2 + static_cast<int>(rng() % 11);
    for (int r = 0; r < n; ++r) ++counts[rng() % m];
    const auto tally = ChoiceTally::FromCounts(counts);
    const double ci = coordination_index(tally);

    CHECK(ci >= 0.0);
    CHECK(ci <= 1.0);
    CHECK(std::abs(ci - oracle::PairEnumerationCi(counts)) <= 1e-12);
    const auto nonzero = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; });
    CHECK((ci == 1.0) == (nonzero == 1));
    CHECK((ci == 0.0) == std::all_of(counts.begin(), counts.end(), [](auto c) { return c <= 1; }));

    auto shuffled = counts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(coordination_index(ChoiceTally::FromCounts(shuffled)) == ci);

    // One more respondent on the modal option never lowers CI.
    auto grown = counts;
    ++*std::max_element(grown.begin(), grown.end());
    CHECK(coordination_index(ChoiceTally::FromCounts(grown)) >= ci);
  }
}

}  // namespace
}  // namespace focal
