// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.h"
#include "focal/bargaining.h"
#include "focal/coordination.h"
#include "focal/error.h"
#include "focal/format.h"
#include "focal/game.h"
#include "focal/orbits.h"
#include "focal/prompt.h"
#include "focal/records.h"
#include "focal/report.h"
#include "focal/runner.h"
#include "focal/salience.h"
#include "focal/session.h"
#include "focal/strategies.h"
#include "oracles.h"

namespace {

namespace fs = std::filesystem;
using namespace focal;

struct Verdict {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("focal_acceptance_" + name);
  fs::remove_all(dir);
  return dir;
}

Verdict CiOracle() {
  Verdict v;
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t m = 2 + rng() % 7;         // 2..8 options
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 11);  // 2..12 respondents
    std::vector<std::int64_t> counts(m, 0);
    for (std::int64_t r = 0; r < n; ++r) ++counts[rng() % m];
    const auto tally = ChoiceTally::FromCounts(counts);
    const double expected = oracle::PairEnumerationCi(counts);
    v.Require(std::abs(coordination_index(tally) - expected) <= 1e-12, "CI differs");
    v.Require(std::abs(normalized_ci(tally) - static_cast<double>(m) * expected) <= 1e-12,
              "NCI differs");
  }
  v.detail = v.pass ? "10000 tallies within 1e-12" : v.detail;
  return v;
}

Verdict NashOracle() {
  Verdict v;
  std::mt19937_64 rng(99);
  int games = 0;
  while (games < 200) {
    const std::size_t a = 1 + rng() % 20;
    const std::size_t b = 1 + rng() % 20;
    if (a * b > 200) continue;
    std::vector<StrategyId> rows;
    std::vector<StrategyId> cols;
    for (std::size_t i = 0; i < a; ++i) rows.push_back("r" + std::to_string(i));
    for (std::size_t j = 0; j < b; ++j) cols.push_back("c" + std::to_string(j));
    const auto game = NormalFormGame::FromFunction({rows, cols}, [&](std::span<const std::size_t>) {
      return std::vector<double>{static_cast<double>(rng() % 5), static_cast<double>(rng() % 5)};
    });
    const auto fast = enumerate_pure_nash(game);
    const std::set<StrategyProfile> fast_set(fast.begin(), fast.end());
    v.Require(fast_set.size() == fast.size() && fast_set == oracle::BruteForceNash(game),
              "normal-form game " + std::to_string(games) + " differs");
    ++games;
  }
  // Every board with 1..4 discs and values in 1..5, at fixed positions.
  std::size_t boards = 0;
  const std::vector<Coord> cells = {{2, 3}, {7, 7}, {5, 5}, {1, 9}};
  for (std::size_t k = 1; k <= 4; ++k) {
    std::vector<int> values(k, 1);
    for (;;) {
      std::vector<Disc> discs;
      for (std::size_t i = 0; i < k; ++i) discs.push_back({static_cast<double>(values[i]), cells[i]});
      const BargainingBoard board({6, 2}, {6, 9}, discs);
      const auto nash = enumerate_bargaining_nash(board);
      std::set<std::pair<std::uint32_t, std::uint32_t>> found;
      for (const auto& joint : nash) {
        found.emplace(oracle::MaskOf(joint.blue), oracle::MaskOf(joint.orange));
      }
      v.Require(found.size() == nash.size() && found == oracle::BruteForceBargainingNash(board),
                "bargaining board differs from brute force");
      v.Require(nash.size() == (std::size_t{1} << k), "bargaining Nash count is not 2^k");
      ++boards;
      std::size_t i = 0;
      while (i < k && values[i] == 5) values[i++] = 1;
      if (i == k) break;
      ++values[i];
    }
  }
  v.Require(enumerate_bargaining_nash(fixtures::GameOne()).size() == 32, "game one count");
  if (v.pass) v.detail = "200 games, " + std::to_string(boards) + " boards, count 2^k";
  return v;
}

Verdict GameOneLedger() {
  Verdict v;
  const auto board = fixtures::GameOne();
  const auto both_blue = score_joint(board, Assignment::All(5, Player::kBlue),
                                     Assignment::All(5, Player::kBlue));
  v.Require(both_blue.blue_payoff == 12.0 && both_blue.orange_payoff == 0.0, "both-blue");
  const auto greedy = score_joint(board, strategy_greedy(board, Player::kBlue),
                                  strategy_greedy(board, Player::kOrange));
  v.Require(greedy.blue_payoff == -2.4 && greedy.orange_payoff == -2.4, "greedy payoffs");
  const SessionRound round{board, strategy_greedy(board, Player::kBlue),
                           strategy_greedy(board, Player::kOrange)};
  v.Require(session_metrics(std::span<const SessionRound>(&round, 1)).cumulative_payoff_lost ==
                4.8,
            "greedy payoff lost");
  const auto coop = score_joint(board, strategy_cooperative(board, Player::kBlue),
                                strategy_cooperative(board, Player::kOrange));
  v.Require(coop.blue_payoff == 6.0 && coop.orange_payoff == 6.0 && coop.welfare() == 12.0 &&
                coop.conflicted_discs.empty(),
            "cooperative");
  if (v.pass) v.detail = "(12,0) (-2.4,-2.4) lost 4.8 (6,6) welfare 12, exact";
  return v;
}

Verdict SoftmaxProperties() {
  Verdict v;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<EquilibriumId, double> scores;
    const int k = 2 + static_cast<int>(rng() % 10);
    std::set<double> used;
    while (static_cast<int>(scores.size()) < k) {
      const double s = static_cast<double>(rng() % 1000) / 10.0;
      if (used.insert(s).second) scores["e" + std::to_string(scores.size())] = s;
    }
    const SalienceAssignment salience(scores);
    const auto top = std::max_element(scores.begin(), scores.end(), [](auto& x, auto& y) {
                       return x.second < y.second;
                     })->first;
    double previous = -1.0;
    for (double beta = 0.0; beta <= 1000.0; beta += 12.5) {
      const auto dist = softmax_distribution(salience, beta);
      double total = 0.0;
      for (const auto& [id, p] : dist.probabilities) total += p;
      v.Require(std::abs(total - 1.0) <= 1e-9, "not normalized");
      if (beta == 0.0) {
        for (const auto& [id, p] : dist.probabilities) {
          v.Require(std::abs(p - 1.0 / k) <= 1e-15, "beta 0 not uniform");
        }
      }
      v.Require(dist.probabilities.at(top) >= previous, "argmax probability not monotone");
      previous = dist.probabilities.at(top);
    }
    const auto winner = select_focal(salience, 0.0, 0);
    const double shift = static_cast<double>(rng() % 1000);
    const std::vector<std::function<double(double)>> transforms = {
        [shift](double s) { return s + shift; }, [](double s) { return s * s * s; },
        [](double s) { return std::exp(s / 20.0); }, [](double s) { return std::sqrt(s); }};
    for (const auto& f : transforms) {
      std::map<EquilibriumId, double> moved;
      for (const auto& [id, s] : scores) moved[id] = f(s);
      v.Require(select_focal(SalienceAssignment(moved), 0.0, 0) == winner,
                "argmax changed under a monotone transform");
    }
  }
  if (v.pass) v.detail = "200 assignments, beta in [0, 1000]";
  return v;
}

Verdict OrbitsPartition() {
  Verdict v;
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 64;
    std::vector<EquilibriumId> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("e" + std::to_string(i));
    std::vector<IndexPermutation> generators(1 + rng() % 3);
    for (auto& g : generators) {
      g.resize(n);
      std::iota(g.begin(), g.end(), std::size_t{0});
      const std::size_t swaps = rng() % 5;
      for (std::size_t s = 0; s < swaps; ++s) std::swap(g[rng() % n], g[rng() % n]);
    }
    const auto partition = orbit_partition(ids, generators);
    std::set<EquilibriumId> covered;
    std::size_t total = 0;
    for (const auto& orbit : partition.orbits) {
      v.Require(!orbit.empty(), "empty orbit");
      total += orbit.size();
      covered.insert(orbit.begin(), orbit.end());
    }
    v.Require(total == n && covered.size() == n, "orbits overlap or miss an equilibrium");
  }
  std::vector<EquilibriumId> numbers;
  for (int i = 1; i <= 100; ++i) numbers.push_back(std::to_string(i));
  IndexPermutation reflect(100);
  for (std::size_t i = 0; i < 100; ++i) reflect[i] = 99 - i;
  const auto pairs = orbit_partition(numbers, std::vector<IndexPermutation>{reflect});
  bool all_pairs = pairs.orbits.size() == 50;
  for (const auto& orbit : pairs.orbits) {
    all_pairs = all_pairs && orbit.size() == 2 && std::stoi(orbit[0]) + std::stoi(orbit[1]) == 101;
  }
  v.Require(all_pairs, "reflection does not give 50 pairs");
  if (v.pass) v.detail = "100 generator sets partitioned; 1-100 reflection gives 50 pairs";
  return v;
}

Verdict TieMeasureZero() {
  Verdict v;
  const SalienceAssignment distinct({{"a", 1}, {"b", 2}, {"c", 3}, {"d", 4}, {"e", 5}});
  int errors = 0;
  for (std::uint64_t seed = 0; seed < 100000; ++seed) {
    try {
      select_focal(distinct, 0.75, seed);
    } catch (const Error&) {
      ++errors;
    }
  }
  v.Require(errors == 0, std::to_string(errors) + " ambiguous draws");
  const SalienceAssignment tied({{"a", 3}, {"b", 3}, {"c", 1}});
  int a_wins = 0;
  const int draws = 10000;
  for (int seed = 0; seed < draws; ++seed) {
    if (select_focal(tied, 0.5, static_cast<std::uint64_t>(seed)) == "a") ++a_wins;
  }
  const double share = a_wins / static_cast<double>(draws);
  v.Require(std::abs(share - 0.5) <= 0.02, "tied share " + std::to_string(share));
  if (v.pass) v.detail = "0 errors in 1e5 draws; tied share " + FormatFixed(share, 4);
  return v;
}

Verdict PromptGoldens() {
  Verdict v;
  int files = 0;
  for (auto task : kAllTaskVariants) {
    for (auto variant : kAllPromptVariants) {
      const std::string name = "tn1_" + std::string(TaskVariantName(task)) + "_" +
                               std::string(PromptVariantName(variant)) + ".txt";
      const auto expected = ReadFile(fixtures::SourcePath("tests/golden/" + name));
      v.Require(!expected.empty() && render_prompt(fixtures::Tn1(), task, variant,
                                                   fixtures::Tn1().options) == expected,
                name + " differs");
      ++files;
    }
  }
  if (v.pass) v.detail = std::to_string(files) + " files byte-identical";
  return v;
}

TaskExperimentConfig Tn1Run(const fs::path& out, nlohmann::json policy) {
  TaskExperimentConfig c;
  c.questions = fixtures::SourcePath("data/questions_tn1.json");
  c.agents = {{"scripted", {{"type", "scripted"}, {"policy", std::move(policy)}}}};
  c.tasks = {TaskVariant::kCoordinate};
  c.permutations = 3;
  c.trials_per_permutation = 30;
  c.permutation_seeds = {0, 1, 9};
  c.seed = 17;
  c.output = out;
  return c;
}

std::optional<double> FirstNci(const fs::path& records) {
  const auto bundle = emit_task_report(read_trial_file(records));
  const auto* table = bundle.Find("nci");
  const auto col = std::find(table->columns.begin(), table->columns.end(), "nci") -
                   table->columns.begin();
  return table->rows.at(0).at(col).number;
}

Verdict ScriptedPipeline() {
  Verdict v;
  const auto first = Tn1Run(FreshDir("first"), {{"rule", "first-displayed"}});
  const auto summary = run_task_experiment(first);
  v.Require(summary.complete() && summary.persisted == 90, "first-displayed run incomplete");
  std::map<std::string, std::int64_t> induced;
  for (auto seed : first.permutation_seeds) {
    induced[permute_options(fixtures::Tn1(), seed)[0].label] += 30;
  }
  // Closed form m * sum c(c-1) / (n(n-1)) over the induced tally.
  std::int64_t same = 0;
  for (const auto& [label, c] : induced) same += c * (c - 1);
  const double analytic = 5.0 * static_cast<double>(same) / (90.0 * 89.0);
  const auto nci = FirstNci(summary.records_file);
  v.Require(nci && *nci == analytic && *nci == 1.62921348314606742, "first-displayed NCI " + (nci ? FormatNumber(*nci) : "-") +
                                         " vs " + FormatNumber(analytic));
  const auto fixed = Tn1Run(FreshDir("fixed"), {{"rule", "fixed-label"}, {"label", "Sunday night"}});
  const auto fixed_nci = FirstNci(run_task_experiment(fixed).records_file);
  v.Require(fixed_nci && *fixed_nci == 5.0, "fixed-label NCI is not 5");
  if (v.pass) {
    v.detail = "NCI " + FormatNumber(*nci) + " (" + std::to_string(induced.size()) +
               "-way tally), fixed-label 5";
  }
  return v;
}

Verdict DeterminismAndResume() {
  Verdict v;
  const nlohmann::json policy = {
      {"rule", "distribution"},
      {"seed", 21},
      {"distribution", {{"Saturday night", 0.4}, {"Sunday night", 0.4}, {"Monday morning", 0.2}}}};
  auto a = Tn1Run(FreshDir("det_a"), policy);
  a.prompt_variants = {PromptVariant::kVanilla, PromptVariant::kSaliency};
  auto b = a;
  b.output = FreshDir("det_b");
  const auto ra = run_task_experiment(a);
  const auto rb = run_task_experiment(b);
  v.Require(ReadFile(ra.records_file) == ReadFile(rb.records_file), "trial files differ");
  v.Require(ReadFile(ra.report_dir / "report.txt") == ReadFile(rb.report_dir / "report.txt"),
            "reports differ");
  auto c = a;
  c.output = FreshDir("det_c");
  const auto killed = run_task_experiment(c, {71});
  {
    std::ofstream torn(killed.records_file, std::ios::binary | std::ios::app);
    torn << "{\"agent_id\":\"scri";
  }
  const auto resumed = run_task_experiment(c);
  v.Require(killed.limited && resumed.resumed == 71, "resume did not pick up the records");
  v.Require(ReadFile(resumed.records_file) == ReadFile(ra.records_file),
            "resumed trial file differs");
  v.Require(resumed.issued == resumed.persisted + resumed.lost, "accounting");
  auto d = a;
  d.output = FreshDir("det_d");
  BargainingExperimentConfig bargaining;
  bargaining.boards = fixtures::SourcePath("data/board_game1.json");
  bargaining.iterations = 60;
  bargaining.seed = 4;
  RoleBinding mixed;
  mixed.kind = RoleBinding::Kind::kScripted;
  mixed.agent = {{"type", "scripted"},
                 {"policy", {{"rule", "distribution"},
                             {"seed", 2},
                             {"distribution", {{"blue", 0.3}, {"yellow", 0.7}}}}}};
  RoleBinding coop;
  coop.strategy.type = StrategyType::kCooperative;
  bargaining.matchups = {{"mixed", mixed, coop}};
  bargaining.output = FreshDir("bdet_a");
  const auto ba = run_bargaining_experiment(bargaining);
  bargaining.output = FreshDir("bdet_b");
  run_bargaining_experiment(bargaining, {17});
  const auto bb = run_bargaining_experiment(bargaining);
  v.Require(ReadFile(ba.records_file) == ReadFile(bb.records_file),
            "bargaining resume differs");
  if (v.pass) v.detail = "two runs identical; resume after 71 trials identical";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Verdict()> check;
    double time_limit_s;  // 0: none
  };
  const std::vector<Criterion> criteria = {
      {"CI/NCI oracle equivalence", CiOracle, 5.0},
      {"Nash oracle equivalence", NashOracle, 10.0},
      {"Game-1 ledger", GameOneLedger, 0.0},
      {"Softmax properties", SoftmaxProperties, 0.0},
      {"Orbit partition", OrbitsPartition, 0.0},
      {"Tie measure-zero check", TieMeasureZero, 0.0},
      {"Prompt golden files", PromptGoldens, 0.0},
      {"End-to-end scripted pipeline", ScriptedPipeline, 10.0},
      {"Determinism and resume", DeterminismAndResume, 0.0},
  };
  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict verdict;
    try {
      verdict = criterion.check();
    } catch (const std::exception& e) {
      verdict.pass = false;
      verdict.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.time_limit_s > 0 && seconds >= criterion.time_limit_s) {
      verdict.pass = false;
      verdict.detail = "took " + FormatFixed(seconds, 2) + " s, limit " +
                       FormatFixed(criterion.time_limit_s, 0) + " s";
    }
    if (!verdict.pass) ++failures;
    std::cout << (verdict.pass ? "PASS" : "FAIL") << "  " << criterion.name << "  ("
              << verdict.detail << "; " << FormatFixed(seconds, 2) << " s)" << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
