#ifndef FOCAL_INGEST_H_
#define FOCAL_INGEST_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "focal/bargaining.h"
#include "focal/prompt.h"
#include "focal/question.h"

namespace focal {

// Imported human respondent counts. Rows may name a task; rows without one
// apply to every task of the question.
class HumanTallies {
 public:
  using Counts = std::map<std::string, std::int64_t>;

  void Add(const std::string& question_id, std::optional<TaskVariant> task,
           const std::string& label, std::int64_t count);
  // Task-specific counts when present, otherwise the task-agnostic ones.
  const Counts* Find(const std::string& question_id, TaskVariant task) const;
  bool empty() const { return tallies_.empty(); }
  std::size_t size() const { return tallies_.size(); }

  struct Entry {
    std::string question_id;
    std::optional<TaskVariant> task;
    const Counts* counts;
  };
  // In question id order, task-agnostic first.
  std::vector<Entry> Entries() const;

 private:
  // Task index, or -1 for rows without a task.
  std::map<std::pair<std::string, int>, Counts> tallies_;
};

// CSV rows "question_id,option_label,count", or
// "question_id,task,option_label,count". A header row starting with
// "question_id" is optional; fields may be double-quoted. When `questions` is
// given, ids and labels are checked against it and labels are canonicalized.
// Throws kIngestion naming the line.
HumanTallies parse_human_tallies(std::string_view csv_text,
                                 const std::vector<Question>* questions = nullptr);
HumanTallies load_human_tallies(const std::filesystem::path& path,
                                const std::vector<Question>* questions = nullptr);

// One recorded Bargaining Table game. At least one side is present.
struct HistoryRecord {
  std::size_t iteration = 0;
  BargainingBoard board;
  std::optional<Assignment> blue;
  std::optional<Assignment> orange;
};

// JSON-lines, or a JSON array, of {iteration?, board, blue?, orange?} where
// the assignments use the answer format ({"(r,c)": "blue"|"yellow"}).
// Iterations default to the record position and must be unique. Throws
// kIngestion naming the record.
std::vector<HistoryRecord> parse_bargaining_history(std::string_view text);
std::vector<HistoryRecord> load_bargaining_history(const std::filesystem::path& path);

// Splits one CSV line; quotes may wrap fields and "" escapes a quote.
std::vector<std::string> SplitCsvLine(std::string_view line);

}  // namespace focal

#endif  // FOCAL_INGEST_H_
