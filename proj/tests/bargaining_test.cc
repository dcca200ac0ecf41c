#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "focal/bargaining.h"
#include "focal/bargaining_io.h"
#include "focal/error.h"
#include "focal/session.h"
#include "focal/strategies.h"
#include "oracles.h"

namespace focal {
namespace {

using fixtures::GameOne;

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::kConfig;
}

ParseFailure FailureOf(const std::string& text, const BargainingBoard& board) {
  try {
    parse_assignment_json(text, board);
  } catch (const AssignmentParseError& e) {
    return e.failure();
  }
  FAIL("expected a parse failure for " << text);
  return ParseFailure::kMissingAnswer;
}

TEST_CASE("game one ledger") {
  const auto board = GameOne();
  const auto blue_all = Assignment::All(5, Player::kBlue);
  const auto orange_all = Assignment::All(5, Player::kOrange);

  const auto both_blue = score_joint(board, blue_all, blue_all);
  CHECK(both_blue.blue_payoff == 12.0);
  CHECK(both_blue.orange_payoff == 0.0);
  CHECK(both_blue.conflicted_discs.empty());

  const auto greedy = score_joint(board, strategy_greedy(board, Player::kBlue),
                                  strategy_greedy(board, Player::kOrange));
  CHECK(greedy.blue_payoff == -2.4);
  CHECK(greedy.orange_payoff == -2.4);
  CHECK(greedy.welfare() == -4.8);
  CHECK(greedy.conflicted_discs.size() == 5);

  const auto coop = score_joint(board, strategy_cooperative(board, Player::kBlue),
                                strategy_cooperative(board, Player::kOrange));
  CHECK(coop.blue_payoff == 6.0);
  CHECK(coop.orange_payoff == 6.0);
  CHECK(coop.welfare() == 12.0);
  CHECK(coop.conflicted_discs.empty());

  const SessionRound round{board, strategy_greedy(board, Player::kBlue),
                           strategy_greedy(board, Player::kOrange)};
  const auto metrics = session_metrics(std::span<const SessionRound>(&round, 1));
  CHECK(metrics.cumulative_payoff_lost == 4.8);
  CHECK(metrics.welfare == -4.8);
}

TEST_CASE("cooperative split of game one") {
  const auto coop = strategy_cooperative(GameOne(), Player::kOrange);
  CHECK(coop.attribution == std::vector<Player>{Player::kBlue, Player::kBlue, Player::kOrange,
                                                Player::kOrange, Player::kOrange});
  CHECK(strategy_cooperative(GameOne(), Player::kBlue) == coop);
}

TEST_CASE("cooperative ties go to blue") {
  const BargainingBoard board({5, 1}, {5, 9}, {{4, {1, 5}}, {2, {9, 5}}, {1, {5, 4}}});
  const auto coop = strategy_cooperative(board, Player::kOrange);
  CHECK(coop.attribution == std::vector<Player>{Player::kBlue, Player::kBlue, Player::kBlue});
}

TEST_CASE("svo threshold") {
  const auto board = GameOne();
  const auto coop = strategy_cooperative(board, Player::kOrange);
  const auto greedy = strategy_greedy(board, Player::kOrange);
  CHECK(strategy_svo(board, Player::kOrange, 22.45) == greedy);
  CHECK(strategy_svo(board, Player::kOrange, 22.46) == coop);
  CHECK(strategy_svo(board, Player::kOrange, 45.0) == coop);
  CHECK(strategy_svo(board, Player::kOrange, -10.0) == greedy);
  CHECK(apply_rule_strategy(board, Player::kBlue, {StrategyType::kSvo, 30.0}) ==
        strategy_cooperative(board, Player::kBlue));
  CHECK(KindOf([&] { apply_rule_strategy(board, Player::kBlue, {StrategyType::kLlm}); }) ==
        ErrorKind::kInvalidParameter);
  CHECK(StrategyKind{StrategyType::kSvo, 30.0}.Describe() == "svo(30)");
}

TEST_CASE("score_joint matches the restated rule") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t k = 1 + rng() % 8;
    const auto board = oracle::RandomBoard(rng, k);
    const auto b = oracle::Bits(static_cast<std::uint32_t>(rng()), k);
    const auto o = oracle::Bits(static_cast<std::uint32_t>(rng()), k);
    Assignment blue;
    Assignment orange;
    for (std::size_t i = 0; i < k; ++i) {
      blue.attribution.push_back(b[i] ? Player::kOrange : Player::kBlue);
      orange.attribution.push_back(o[i] ? Player::kOrange : Player::kBlue);
    }
    const auto outcome = score_joint(board, blue, orange);
    const auto [eb, eo] = oracle::ScoreByRule(board, b, o);
    CHECK(std::abs(outcome.blue_payoff - eb) < 1e-9);
    CHECK(std::abs(outcome.orange_payoff - eo) < 1e-9);

    // Value conservation: agreed plus disputed covers the board.
    CHECK(outcome.blue_agreed_value + outcome.orange_agreed_value + outcome.conflicted_value ==
          board.total_value());
    CHECK(outcome.welfare() <= board.total_value());

    // Swapping roles and colors mirrors the payoffs.
    Assignment blue_mirror;
    Assignment orange_mirror;
    for (std::size_t i = 0; i < k; ++i) {
      blue_mirror.attribution.push_back(Opponent(orange.attribution[i]));
      orange_mirror.attribution.push_back(Opponent(blue.attribution[i]));
    }
    const BargainingBoard mirrored(board.square(Player::kOrange), board.square(Player::kBlue),
                                   board.discs());
    const auto swapped = score_joint(mirrored, blue_mirror, orange_mirror);
    CHECK(swapped.blue_payoff == outcome.orange_payoff);
    CHECK(swapped.orange_payoff == outcome.blue_payoff);
  }
}

TEST_CASE("score_joint rejects mismatched assignments") {
  const auto board = GameOne();
  CHECK(KindOf([&] {
          score_joint(board, Assignment::All(4, Player::kBlue), Assignment::All(5, Player::kBlue));
        }) == ErrorKind::kInvalidAssignment);
}

TEST_CASE("bargaining Nash equals brute force and counts 2^k") {
  std::mt19937_64 rng(23);
  for (std::size_t k = 1; k <= 4; ++k) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto board = oracle::RandomBoard(rng, k);
      const auto nash = enumerate_bargaining_nash(board);
      std::set<std::pair<std::uint32_t, std::uint32_t>> found;
      for (const auto& joint : nash) {
        found.emplace(oracle::MaskOf(joint.blue), oracle::MaskOf(joint.orange));
      }
      CHECK(found.size() == nash.size());
      CHECK(found == oracle::BruteForceBargainingNash(board));
      CHECK(nash.size() == (std::size_t{1} << k));
    }
  }
  const auto game_one = enumerate_bargaining_nash(GameOne());
  CHECK(game_one.size() == 32);
  for (const auto& joint : game_one) CHECK(joint.blue == joint.orange);
}

TEST_CASE("bargaining Nash capacity") {
  std::mt19937_64 rng(1);
  const auto board = oracle::RandomBoard(rng, 13);
  CHECK(KindOf([&] { enumerate_bargaining_nash(board); }) == ErrorKind::kCapacity);
  CHECK(enumerate_bargaining_nash(board, 13).size() == 8192);
}

TEST_CASE("board validation") {
  CHECK(KindOf([] { BargainingBoard({1, 1}, {1, 1}, {{1, {2, 2}}}); }) ==
        ErrorKind::kInvalidBoard);
  CHECK(KindOf([] { BargainingBoard({0, 1}, {1, 2}, {{1, {2, 2}}}); }) ==
        ErrorKind::kInvalidBoard);
  CHECK(KindOf([] { BargainingBoard({1, 1}, {1, 2}, {{1, {1, 2}}}); }) ==
        ErrorKind::kInvalidBoard);
  CHECK(KindOf([] { BargainingBoard({1, 1}, {1, 2}, {{1, {3, 3}}, {2, {3, 3}}}); }) ==
        ErrorKind::kInvalidBoard);
  CHECK(KindOf([] { BargainingBoard({1, 1}, {1, 2}, {{0, {3, 3}}}); }) ==
        ErrorKind::kInvalidBoard);
  CHECK(KindOf([] { BargainingBoard({1, 1}, {1, 2}, {}); }) == ErrorKind::kInvalidBoard);
}

TEST_CASE("assignment answers round-trip") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 1 + rng() % 10;
    const auto board = oracle::RandomBoard(rng, k);
    Assignment a;
    for (std::size_t i = 0; i < k; ++i) {
      a.attribution.push_back(rng() % 2 ? Player::kOrange : Player::kBlue);
    }
    CHECK(parse_assignment_json(render_assignment_answer(board, a), board) == a);
  }
}

TEST_CASE("assignment parsing") {
  const auto board = GameOne();
  const std::string full =
      R"j({"(8,1)": "blue", "(4, 4)": "Blue", "( 1,7 )": "yellow", "(1,8)": "orange", "(9,8)": "YELLOW"})j";
  const auto parsed = parse_assignment_json("thinking <answer>" + full + "</answer>", board);
  CHECK(parsed == strategy_cooperative(board, Player::kBlue));
  // The last span wins.
  CHECK(parse_assignment_json("<answer>{}</answer> then <answer>" + full + "</answer>", board) ==
        parsed);

  CHECK(FailureOf("no tags " + full, board) == ParseFailure::kMissingAnswer);
  CHECK(FailureOf("<answer>{\"(8,1)\": </answer>", board) == ParseFailure::kMalformedJson);
  CHECK(FailureOf("<answer>[1,2]</answer>", board) == ParseFailure::kMalformedJson);
  CHECK(FailureOf(R"j(<answer>{"8,1": "blue"}</answer>)j", board) == ParseFailure::kBadKey);
  CHECK(FailureOf(R"j(<answer>{"(8,1)": "blue"}</answer>)j", board) == ParseFailure::kMissingDisc);
  CHECK(FailureOf(R"j(<answer>{"(2,2)": "blue", "(8,1)": "blue", "(4,4)": "blue", "(1,7)": "blue", "(1,8)": "blue", "(9,8)": "blue"}</answer>)j",
                  board) == ParseFailure::kExtraDisc);
  CHECK(FailureOf(R"j(<answer>{"(8,1)": "blue", "(8,1)": "yellow", "(4,4)": "blue", "(1,7)": "blue", "(1,8)": "blue", "(9,8)": "blue"}</answer>)j",
                  board) == ParseFailure::kDuplicateDisc);
  CHECK(FailureOf(R"j(<answer>{"(8,1)": "blue", "(8, 1)": "blue", "(4,4)": "blue", "(1,7)": "blue", "(1,8)": "blue", "(9,8)": "blue"}</answer>)j",
                  board) == ParseFailure::kDuplicateDisc);
  CHECK(FailureOf(R"j(<answer>{"(8,1)": "green", "(4,4)": "blue", "(1,7)": "blue", "(1,8)": "blue", "(9,8)": "blue"}</answer>)j",
                  board) == ParseFailure::kUnknownColor);
}

TEST_CASE("board json round-trip") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto board = oracle::RandomBoard(rng, 1 + rng() % 10);
    CHECK(board_from_json(board_to_json(board)) == board);
  }
  CHECK(KindOf([] { board_from_json(nlohmann::json::parse(R"({"blue_square":[1,1]})")); }) ==
        ErrorKind::kInvalidBoard);
}

TEST_CASE("board state description") {
  CHECK(describe_board_state(GameOne(), Player::kBlue) ==
        "You are the Blue player, and your square is located at (6, 2). The other player's "
        "square (Yellow) is located at (6, 9). There are 5 discs on the board: a value-3 disc "
        "at (8, 1), a value-3 disc at (4, 4), a value-3 disc at (1, 7), a value-1 disc at "
        "(1, 8), and a value-2 disc at (9, 8).");
  const auto orange = describe_board_state(GameOne(), Player::kOrange);
  CHECK(orange.rfind("You are the Yellow player, and your square is located at (6, 9).", 0) == 0);
}

TEST_CASE("bargaining prompt variants") {
  const auto board = GameOne();
  const auto vanilla = render_bargaining_prompt(board, Player::kBlue,
                                                BargainingPromptVariant::kVanilla);
  CHECK(vanilla.find(describe_board_state(board, Player::kBlue)) != std::string::npos);
  CHECK(vanilla.find("<answer></answer>") != std::string::npos);
  for (auto variant : {BargainingPromptVariant::kGreedy, BargainingPromptVariant::kCooperative,
                       BargainingPromptVariant::kAllFeatures, BargainingPromptVariant::kSaliency}) {
    const auto text = render_bargaining_prompt(board, Player::kBlue, variant);
    CHECK(text != vanilla);
    CHECK(text.size() > vanilla.size());
    const auto name = BargainingPromptVariantName(variant);
    CHECK(ParseBargainingPromptVariant(name) == variant);
  }
}

TEST_CASE("session metrics over repeated greedy play") {
  const auto board = GameOne();
  std::vector<SessionRound> history(
      100, SessionRound{board, strategy_greedy(board, Player::kBlue),
                        strategy_greedy(board, Player::kOrange)});
  const auto m = session_metrics(history);
  CHECK(m.iterations == 100);
  CHECK(m.welfare == -480.0);
  CHECK(m.blue.total == -240.0);
  CHECK(m.blue.mean == -2.4);
  CHECK(m.blue.median == -2.4);
  CHECK(m.missed_nash_iterations == 100);
  CHECK(m.conflicted_disc_count == 500);
  CHECK(m.cumulative_payoff_lost == 480.0);
  CHECK(m.cumulative_shortfall == 1680.0);
  CHECK(m.missed_nash_series.back() == 100);
  CHECK(KindOf([] { session_metrics(std::span<const SessionRound>{}); }) ==
        ErrorKind::kEmptyInput);
}

TEST_CASE("session metrics mixed rounds") {
  const auto board = GameOne();
  const auto coop = strategy_cooperative(board, Player::kBlue);
  std::vector<SessionRound> history = {
      {board, coop, coop},
      {board, strategy_greedy(board, Player::kBlue), coop},
      {board, Assignment::All(5, Player::kBlue), Assignment::All(5, Player::kBlue)},
  };
  const auto m = session_metrics(history);
  // Round two: blue claims the three orange discs (value 6), so 6 is disputed.
  CHECK(m.missed_nash_iterations == 1);
  CHECK(m.missed_nash_series == std::vector<std::size_t>{0, 1, 1});
  CHECK(m.conflicted_disc_count == 3);
  CHECK(m.cumulative_payoff_lost == 2.4);
  CHECK(m.blue.total == 6.0 + 4.8 + 12.0);
  CHECK(m.orange.total == 6.0 - 1.2 + 0.0);
  CHECK(m.blue.median == 6.0);
  CHECK(Median({1.0, 4.0}) == 2.5);
}

}  // namespace
}  // namespace focal
