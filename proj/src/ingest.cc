#include "focal/ingest.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "focal/bargaining_io.h"
#include "focal/error.h"
#include "focal/format.h"
#include "json.hpp"

namespace focal {
namespace {

using nlohmann::json;

std::string ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIngestion, "cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

[[noreturn]] void Fail(std::size_t line, const std::string& message) {
  throw Error(ErrorKind::kIngestion, "line " + std::to_string(line) + ": " + message);
}

std::int64_t ParseCount(std::string_view text, std::size_t line) {
  text = Trim(text);
  std::int64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    Fail(line, "count '" + std::string(text) + "' is not an integer");
  }
  if (value < 0) Fail(line, "count " + std::to_string(value) + " is negative");
  return value;
}

}  // namespace

void HumanTallies::Add(const std::string& question_id, std::optional<TaskVariant> task,
                       const std::string& label, std::int64_t count) {
  const int task_index = task ? static_cast<int>(*task) : -1;
  tallies_[{question_id, task_index}][label] += count;
}

const HumanTallies::Counts* HumanTallies::Find(const std::string& question_id,
                                               TaskVariant task) const {
  auto it = tallies_.find({question_id, static_cast<int>(task)});
  if (it != tallies_.end()) return &it->second;
  it = tallies_.find({question_id, -1});
  return it == tallies_.end() ? nullptr : &it->second;
}

std::vector<HumanTallies::Entry> HumanTallies::Entries() const {
  std::vector<Entry> out;
  for (const auto& [key, counts] : tallies_) {
    std::optional<TaskVariant> task;
    if (key.second >= 0) task = static_cast<TaskVariant>(key.second);
    out.push_back({key.first, task, &counts});
  }
  return out;
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

HumanTallies parse_human_tallies(std::string_view csv_text,
                                 const std::vector<Question>* questions) {
  HumanTallies tallies;
  std::set<std::tuple<std::string, int, std::string>> seen;
  std::istringstream in{std::string(csv_text)};
  std::string raw;
  std::size_t line = 0;
  std::size_t expected_fields = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (Trim(raw).empty()) continue;
    auto fields = SplitCsvLine(raw);
    if (line == 1 && ToLower(Trim(fields[0])) == "question_id") {
      expected_fields = fields.size();
      continue;
    }
    if (fields.size() != 3 && fields.size() != 4) {
      Fail(line, "expected 3 or 4 fields, found " + std::to_string(fields.size()));
    }
    if (expected_fields != 0 && fields.size() != expected_fields) {
      Fail(line, "field count differs from the header");
    }
    expected_fields = fields.size();
    std::string question_id(Trim(fields[0]));
    std::optional<TaskVariant> task;
    if (fields.size() == 4) {
      task = ParseTaskVariant(ToLower(Trim(fields[1])));
      if (!task) Fail(line, "unknown task '" + fields[1] + "'");
    }
    std::string label(Trim(fields[fields.size() - 2]));
    const std::int64_t count = ParseCount(fields.back(), line);
    if (question_id.empty()) Fail(line, "empty question id");
    if (label.empty()) Fail(line, "empty option label");
    if (questions != nullptr) {
      const Question* question = nullptr;
      for (const auto& q : *questions) {
        if (q.id == question_id) question = &q;
      }
      if (question == nullptr) Fail(line, "unknown question '" + question_id + "'");
      bool found = false;
      for (const auto& option : question->options) {
        if (ToLower(option.label) == ToLower(label)) {
          label = option.label;
          found = true;
        }
      }
      if (!found) Fail(line, "'" + label + "' is not an option of " + question_id);
    }
    const int task_index = task ? static_cast<int>(*task) : -1;
    if (!seen.emplace(question_id, task_index, label).second) {
      Fail(line, "duplicate row for " + question_id + " / " + label);
    }
    tallies.Add(question_id, task, label, count);
  }
  if (tallies.empty()) throw Error(ErrorKind::kIngestion, "no tally rows");
  return tallies;
}

HumanTallies load_human_tallies(const std::filesystem::path& path,
                                const std::vector<Question>* questions) {
  return parse_human_tallies(ReadAll(path), questions);
}

std::vector<HistoryRecord> parse_bargaining_history(std::string_view text) {
  // (record position, line number for messages, value)
  std::vector<std::pair<std::size_t, json>> docs;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorKind::kIngestion, "empty history");
  if (text[first] == '[') {
    json all = json::parse(text, nullptr, false);
    if (all.is_discarded()) throw Error(ErrorKind::kIngestion, "history is not valid JSON");
    for (std::size_t i = 0; i < all.size(); ++i) docs.emplace_back(i + 1, all[i]);
  } else {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
      ++line;
      if (Trim(raw).empty()) continue;
      json doc = json::parse(raw, nullptr, false);
      if (doc.is_discarded()) Fail(line, "not valid JSON");
      docs.emplace_back(line, std::move(doc));
    }
  }
  const std::string unit = text[first] == '[' ? "record " : "line ";
  std::vector<HistoryRecord> out;
  std::set<std::size_t> iterations;
  for (const auto& [where, doc] : docs) {
    auto fail = [&, where = where](const std::string& message) {
      throw Error(ErrorKind::kIngestion, unit + std::to_string(where) + ": " + message);
    };
    if (!doc.is_object()) fail("record is not an object");
    if (!doc.contains("board")) fail("record has no board");
    std::optional<BargainingBoard> board;
    try {
      board.emplace(board_from_json(doc["board"]));
    } catch (const Error& e) {
      fail(e.what());
    }
    HistoryRecord record{out.size(), *board, std::nullopt, std::nullopt};
    if (doc.contains("iteration")) {
      if (!doc["iteration"].is_number_unsigned()) fail("iteration must be a non-negative integer");
      record.iteration = doc["iteration"].get<std::size_t>();
    }
    if (!iterations.insert(record.iteration).second) {
      fail("iteration " + std::to_string(record.iteration) + " repeats");
    }
    for (const char* side : {"blue", "orange"}) {
      if (!doc.contains(side) || doc[side].is_null()) continue;
      try {
        Assignment a = assignment_from_json(doc[side], *board);
        (std::string(side) == "blue" ? record.blue : record.orange) = std::move(a);
      } catch (const Error& e) {
        fail(std::string(side) + " assignment: " + e.what());
      }
    }
    if (!record.blue && !record.orange) fail("record has neither a blue nor an orange assignment");
    out.push_back(std::move(record));
  }
  if (out.empty()) throw Error(ErrorKind::kIngestion, "empty history");
  return out;
}

std::vector<HistoryRecord> load_bargaining_history(const std::filesystem::path& path) {
  return parse_bargaining_history(ReadAll(path));
}

}  // namespace focal
