#ifndef FOCAL_RUNNER_H_
#define FOCAL_RUNNER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "focal/bargaining_io.h"
#include "focal/prompt.h"
#include "focal/report.h"
#include "focal/strategies.h"
#include "json.hpp"

namespace focal {

// Trial timestamps. kAuto is wall-clock time when any agent is remote and the
// fixed epoch string otherwise, so scripted runs are byte-reproducible.
enum class TimestampMode { kAuto, kWall, kFixed };
inline constexpr const char* kFixedTimestamp = "1970-01-01T00:00:00Z";

struct AgentBinding {
  std::string id;
  nlohmann::json spec;  // as accepted by make_agent
};

struct TaskExperimentConfig {
  std::filesystem::path questions;
  std::vector<AgentBinding> agents;
  std::vector<TaskVariant> tasks = {std::begin(kAllTaskVariants), std::end(kAllTaskVariants)};
  std::vector<PromptVariant> prompt_variants = {PromptVariant::kVanilla};
  int trials_per_permutation = 30;
  int permutations = 3;
  // Explicit per-permutation shuffle seeds; derived from `seed` when empty.
  // Seed 0 keeps the file order.
  std::vector<std::uint64_t> permutation_seeds;
  std::uint64_t seed = 0;
  std::filesystem::path output = "out";
  TimestampMode timestamps = TimestampMode::kAuto;
  std::optional<std::filesystem::path> human_tallies;
  std::optional<std::filesystem::path> focality_labels;
};

// One side of a bargaining matchup.
struct RoleBinding {
  enum class Kind { kStrategy, kScripted, kLlm, kHuman };
  Kind kind = Kind::kStrategy;
  StrategyKind strategy;          // kStrategy
  nlohmann::json agent;           // kScripted, kLlm: make_agent spec
  BargainingPromptVariant prompt_variant = BargainingPromptVariant::kVanilla;  // kLlm
  std::filesystem::path history;  // kHuman

  std::string Describe() const;
};

struct Matchup {
  std::string name;
  RoleBinding blue;
  RoleBinding orange;
};

struct BargainingExperimentConfig {
  std::optional<std::filesystem::path> boards;  // needed unless every matchup replays a human
  std::vector<Matchup> matchups;
  int iterations = 100;
  std::uint64_t seed = 0;
  std::filesystem::path output = "out";
  TimestampMode timestamps = TimestampMode::kAuto;
  PayoffLostMode payoff_lost = PayoffLostMode::kPenalty;
};

// Relative paths resolve against `base_dir`. Throws kConfig.
TaskExperimentConfig task_config_from_json(const nlohmann::json& doc,
                                           const std::filesystem::path& base_dir);
BargainingExperimentConfig bargaining_config_from_json(const nlohmann::json& doc,
                                                       const std::filesystem::path& base_dir);
// Reads a JSON config file; paths in it are relative to the file.
nlohmann::json load_config_json(const std::filesystem::path& path);

struct RunOptions {
  // Stop after persisting this many new records, as if interrupted.
  std::optional<std::size_t> limit;
};

// issued == persisted + lost always holds. `failed` counts persisted
// bargaining iterations whose answers could not be parsed.
struct RunSummary {
  std::size_t planned = 0;
  std::size_t resumed = 0;  // already in the records file
  std::size_t issued = 0;
  std::size_t persisted = 0;
  std::size_t failed = 0;
  std::size_t lost = 0;  // issued but dropped by an abort
  bool aborted = false;
  bool limited = false;
  std::string abort_message;
  std::filesystem::path records_file;
  std::filesystem::path report_dir;

  bool complete() const { return !aborted && !limited && failed == 0; }
};

// Issues every (agent, question, task, variant, permutation, trial) prompt in
// that order, appends one TrialRecord per line to <output>/trials.jsonl and
// writes the report under <output>/report. Records already in the file are
// skipped, so an interrupted run resumes where it stopped. Transport,
// provider and policy errors abort the run; finished records stay on disk.
RunSummary run_task_experiment(const TaskExperimentConfig& config,
                               const RunOptions& options = {});

// Plays `iterations` games per matchup into <output>/outcomes.jsonl. Boards
// cycle through the board set, or follow the history of a replayed human.
RunSummary run_bargaining_experiment(const BargainingExperimentConfig& config,
                                     const RunOptions& options = {});

// Seed of permutation `p` of a question: StableHash("perm|seed|question|p"),
// never 0.
std::uint64_t DerivePermutationSeed(std::uint64_t seed, const std::string& question_id,
                                    std::size_t p);
std::uint64_t DeriveTrialSeed(std::uint64_t seed, const std::string& question_id,
                              TaskVariant task, PromptVariant variant, std::size_t p,
                              std::size_t t);

}  // namespace focal

#endif  // FOCAL_RUNNER_H_
