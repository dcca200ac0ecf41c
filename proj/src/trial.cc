#include "focal/trial.h"

#include <algorithm>
#include <regex>

#include "focal/error.h"
#include "focal/format.h"

namespace focal {

using nlohmann::json;

std::optional<std::string> parse_answer(std::string_view raw,
                                        const std::vector<std::string>& labels) {
  std::string_view inner;
  if (!LastAnswerSpan(raw, &inner)) return std::nullopt;
  std::string candidate(Trim(inner));
  const auto match = [&labels](const std::string& text) -> std::optional<std::string> {
    const std::string lower = ToLower(text);
    for (const auto& label : labels) {
      if (ToLower(label) == lower) return label;
    }
    return std::nullopt;
  };
  if (auto hit = match(candidate)) return hit;
  static const std::regex kTrailingScore(R"(^(.*?)\s*:\s*[-+]?\d+(\.\d+)?$)");
  std::smatch parts;
  if (std::regex_match(candidate, parts, kTrailingScore)) {
    return match(std::string(Trim(parts[1].str())));
  }
  return std::nullopt;
}

std::optional<std::string> parse_answer(std::string_view raw, const Question& question) {
  return parse_answer(raw, question.labels());
}

std::string TrialRecord::Key() const {
  return agent_id + "|" + question_id + "|" + std::string(TaskVariantName(task)) + "|" +
         std::string(PromptVariantName(prompt_variant)) + "|" +
         std::to_string(permutation_index) + "|" + std::to_string(trial_index);
}

json trial_to_json(const TrialRecord& r) {
  // Field order is fixed by nlohmann's sorted object keys, which keeps trial
  // files byte-stable.
  return {{"kind", "task"},
          {"question_id", r.question_id},
          {"task", TaskVariantName(r.task)},
          {"prompt_variant", PromptVariantName(r.prompt_variant)},
          {"permutation_index", r.permutation_index},
          {"trial_index", r.trial_index},
          {"permutation_seed", r.permutation_seed},
          {"displayed_options", r.displayed_options},
          {"rendered_prompt", r.rendered_prompt},
          {"raw_response", r.raw_response},
          {"parsed_choice", r.parsed_choice ? json(*r.parsed_choice) : json(nullptr)},
          {"agent_id", r.agent_id},
          {"timestamp", r.timestamp}};
}

TrialRecord trial_from_json(const json& doc) {
  try {
    TrialRecord r;
    r.question_id = doc.at("question_id").get<std::string>();
    const auto task = ParseTaskVariant(doc.at("task").get<std::string>());
    const auto variant = ParsePromptVariant(doc.at("prompt_variant").get<std::string>());
    if (!task || !variant) throw Error(ErrorKind::kParse, "unknown task or prompt variant");
    r.task = *task;
    r.prompt_variant = *variant;
    r.permutation_index = doc.at("permutation_index").get<std::size_t>();
    r.trial_index = doc.at("trial_index").get<std::size_t>();
    r.permutation_seed = doc.at("permutation_seed").get<std::uint64_t>();
    r.displayed_options = doc.at("displayed_options").get<std::vector<std::string>>();
    r.rendered_prompt = doc.at("rendered_prompt").get<std::string>();
    r.raw_response = doc.at("raw_response").get<std::string>();
    if (!doc.at("parsed_choice").is_null()) {
      r.parsed_choice = doc.at("parsed_choice").get<std::string>();
    }
    r.agent_id = doc.at("agent_id").get<std::string>();
    r.timestamp = doc.at("timestamp").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed trial record: ") + e.what());
  }
}

QuestionStats aggregate_question_stats(std::span<const TrialRecord> trials,
                                       const Question& question) {
  QuestionStats stats;
  stats.tally = ChoiceTally(question.labels(),
                            std::vector<std::int64_t>(question.options.size(), 0));
  for (const auto& trial : trials) {
    if (trial.question_id != question.id) {
      throw Error(ErrorKind::kInvalidParameter, "trial for '" + trial.question_id +
                                                    "' aggregated under '" + question.id + "'");
    }
    const auto labels = question.labels();
    if (trial.parsed_choice &&
        std::find(labels.begin(), labels.end(), *trial.parsed_choice) != labels.end()) {
      stats.tally.Add(*trial.parsed_choice);
    } else {
      ++stats.invalid_count;
    }
  }
  if (stats.tally.n() < 2) {
    throw Error(ErrorKind::kUndefinedMetric,
                "question '" + question.id + "' has " + std::to_string(stats.tally.n()) +
                    " valid responses; at least 2 are needed");
  }
  stats.ci = coordination_index(stats.tally);
  stats.nci = normalized_ci(stats.tally);
  return stats;
}

}  // namespace focal
