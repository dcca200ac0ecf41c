#include "focal/records.h"

#include <fstream>

#include "focal/bargaining_io.h"
#include "focal/error.h"

namespace focal {
namespace {

using nlohmann::json;

json AssignmentOrNull(const BargainingBoard& board, const std::optional<Assignment>& a) {
  if (!a) return nullptr;
  return json::parse(assignment_json_text(board, *a));
}

std::optional<Assignment> AssignmentFrom(const json& value, const BargainingBoard& board) {
  if (value.is_null()) return std::nullopt;
  return assignment_from_json(value, board);
}

}  // namespace

json outcome_to_json(const BargainingOutcome& o) {
  json doc = {{"kind", "bargaining"},
              {"matchup", o.matchup},
              {"iteration", o.iteration},
              {"board_index", o.board_index},
              {"board", board_to_json(o.board)},
              {"blue", AssignmentOrNull(o.board, o.blue)},
              {"orange", AssignmentOrNull(o.board, o.orange)},
              {"blue_agent", o.blue_agent},
              {"orange_agent", o.orange_agent},
              {"blue_raw", o.blue_raw},
              {"orange_raw", o.orange_raw},
              {"blue_attempts", o.blue_attempts},
              {"orange_attempts", o.orange_attempts},
              {"status", o.ok ? "ok" : "failed"},
              {"failure", o.failure},
              {"timestamp", o.timestamp}};
  if (o.ok && o.blue && o.orange) {
    // Stored for readers of the raw file; reports recompute from assignments.
    const JointOutcome scored = score_joint(o.board, *o.blue, *o.orange);
    doc["blue_payoff"] = scored.blue_payoff;
    doc["orange_payoff"] = scored.orange_payoff;
  } else {
    doc["blue_payoff"] = nullptr;
    doc["orange_payoff"] = nullptr;
  }
  return doc;
}

BargainingOutcome outcome_from_json(const json& doc) {
  try {
    BargainingOutcome o{doc.at("matchup").get<std::string>(),
                        doc.at("iteration").get<std::size_t>(),
                        doc.at("board_index").get<std::size_t>(),
                        board_from_json(doc.at("board"))};
    o.blue = AssignmentFrom(doc.at("blue"), o.board);
    o.orange = AssignmentFrom(doc.at("orange"), o.board);
    o.blue_agent = doc.at("blue_agent").get<std::string>();
    o.orange_agent = doc.at("orange_agent").get<std::string>();
    o.blue_raw = doc.at("blue_raw").get<std::string>();
    o.orange_raw = doc.at("orange_raw").get<std::string>();
    o.blue_attempts = doc.at("blue_attempts").get<int>();
    o.orange_attempts = doc.at("orange_attempts").get<int>();
    const auto status = doc.at("status").get<std::string>();
    if (status != "ok" && status != "failed") {
      throw Error(ErrorKind::kParse, "unknown outcome status '" + status + "'");
    }
    o.ok = status == "ok";
    if (o.ok && (!o.blue || !o.orange)) {
      throw Error(ErrorKind::kParse, "ok outcome without both assignments");
    }
    o.failure = doc.at("failure").get<std::string>();
    o.timestamp = doc.at("timestamp").get<std::string>();
    return o;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed outcome record: ") + e.what());
  }
}

std::vector<json> ReadJsonLines(const std::filesystem::path& path, bool repair) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kLoad, "cannot open " + path.string());
  const std::string content((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  in.close();
  std::vector<json> out;
  std::size_t start = 0;
  std::size_t line = 0;
  while (start < content.size()) {
    const std::size_t end = content.find('\n', start);
    if (end == std::string::npos) {
      // Interrupted write: drop the partial line.
      if (repair) std::filesystem::resize_file(path, start);
      break;
    }
    ++line;
    const std::string_view text(content.data() + start, end - start);
    start = end + 1;
    if (text.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
      throw Error(ErrorKind::kLoad,
                  path.string() + ":" + std::to_string(line) + ": not a JSON record");
    }
    out.push_back(std::move(doc));
  }
  return out;
}

RecordKind DetectRecordKind(const std::vector<json>& records) {
  if (records.empty()) throw Error(ErrorKind::kEmptyInput, "no records");
  const auto kind = records.front().value("kind", std::string());
  if (kind == "task") return RecordKind::kTasks;
  if (kind == "bargaining") return RecordKind::kBargaining;
  throw Error(ErrorKind::kLoad, "unrecognized record kind '" + kind + "'");
}

std::vector<TrialRecord> read_trial_file(const std::filesystem::path& path) {
  std::vector<TrialRecord> out;
  for (const auto& doc : ReadJsonLines(path, false)) out.push_back(trial_from_json(doc));
  return out;
}

std::vector<BargainingOutcome> read_outcome_file(const std::filesystem::path& path) {
  std::vector<BargainingOutcome> out;
  for (const auto& doc : ReadJsonLines(path, false)) out.push_back(outcome_from_json(doc));
  return out;
}

}  // namespace focal
