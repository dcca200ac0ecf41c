#ifndef FOCAL_RECORDS_H_
#define FOCAL_RECORDS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "focal/bargaining.h"
#include "focal/trial.h"
#include "json.hpp"

namespace focal {

// One persisted Bargaining Table iteration. Failed iterations keep whatever
// was obtained and carry no payoffs.
struct BargainingOutcome {
  BargainingOutcome(std::string matchup, std::size_t iteration, std::size_t board_index,
                    BargainingBoard board)
      : matchup(std::move(matchup)),
        iteration(iteration),
        board_index(board_index),
        board(std::move(board)) {}

  std::string matchup;
  std::size_t iteration = 0;
  std::size_t board_index = 0;
  BargainingBoard board;
  std::optional<Assignment> blue;
  std::optional<Assignment> orange;
  std::string blue_agent;
  std::string orange_agent;
  std::string blue_raw;  // model or scripted text; empty for rule strategies
  std::string orange_raw;
  int blue_attempts = 0;
  int orange_attempts = 0;
  bool ok = true;
  std::string failure;
  std::string timestamp;

  std::string Key() const { return matchup + "|" + std::to_string(iteration); }
};

nlohmann::json outcome_to_json(const BargainingOutcome& outcome);
BargainingOutcome outcome_from_json(const nlohmann::json& doc);

enum class RecordKind { kTasks, kBargaining };

// Reads a JSON-lines file. A final line without its newline is the trace of
// an interrupted write: with `repair` it is cut from the file, otherwise it
// is ignored. Any other malformed line throws kLoad.
std::vector<nlohmann::json> ReadJsonLines(const std::filesystem::path& path, bool repair);

// The "kind" of the first record; kLoad on an empty or unrecognized file.
RecordKind DetectRecordKind(const std::vector<nlohmann::json>& records);

std::vector<TrialRecord> read_trial_file(const std::filesystem::path& path);
std::vector<BargainingOutcome> read_outcome_file(const std::filesystem::path& path);

}  // namespace focal

#endif  // FOCAL_RECORDS_H_
