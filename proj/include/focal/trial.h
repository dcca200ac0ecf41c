#ifndef FOCAL_TRIAL_H_
#define FOCAL_TRIAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "focal/coordination.h"
#include "focal/prompt.h"
#include "focal/question.h"
#include "json.hpp"

namespace focal {

// Label chosen in the last <answer> span, matched case-insensitively after
// trimming and dropping a trailing ": <score>". nullopt means invalid.
std::optional<std::string> parse_answer(std::string_view raw, const Question& question);
std::optional<std::string> parse_answer(std::string_view raw,
                                        const std::vector<std::string>& labels);

// One prompted decision on a multi-answer question.
struct TrialRecord {
  std::string question_id;
  TaskVariant task = TaskVariant::kPick;
  PromptVariant prompt_variant = PromptVariant::kVanilla;
  std::size_t permutation_index = 0;
  std::size_t trial_index = 0;
  std::uint64_t permutation_seed = 0;
  std::vector<std::string> displayed_options;
  std::string rendered_prompt;
  std::string raw_response;
  std::optional<std::string> parsed_choice;
  std::string agent_id;
  std::string timestamp;

  // Identity used for resume: one record per key in a trial file.
  std::string Key() const;
};

nlohmann::json trial_to_json(const TrialRecord& record);
TrialRecord trial_from_json(const nlohmann::json& doc);

struct QuestionStats {
  ChoiceTally tally;
  double ci = 0.0;
  double nci = 0.0;
  std::int64_t invalid_count = 0;
};

// Tallies valid choices over the question's options; invalid responses are
// only counted. Throws kInvalidParameter if a trial is for another question
// and kUndefinedMetric with fewer than 2 valid trials.
QuestionStats aggregate_question_stats(std::span<const TrialRecord> trials,
                                       const Question& question);

}  // namespace focal

#endif  // FOCAL_TRIAL_H_
