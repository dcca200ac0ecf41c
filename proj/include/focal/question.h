#ifndef FOCAL_QUESTION_H_
#define FOCAL_QUESTION_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace focal {

enum class Locale { kAmsterdam, kNottingham };

std::string_view LocaleName(Locale locale);
std::optional<Locale> ParseLocale(std::string_view name);

struct QuestionOption {
  std::string label;
  double score = 0.0;

  friend bool operator==(const QuestionOption&, const QuestionOption&) = default;
};

// A multi-answer question: at least two options with unique labels and
// positive scores.
struct Question {
  std::string id;
  Locale locale = Locale::kNottingham;
  std::vector<QuestionOption> options;

  std::vector<std::string> labels() const;
};

// Throws kLoad naming the offending question.
void validate_question(const Question& question);
Question question_from_json(const nlohmann::json& doc);
nlohmann::json question_to_json(const Question& question);

// JSON [{id, locale, options:[{label, score}]}]; file order is kept.
std::vector<Question> parse_question_set(std::string_view json_text);
std::vector<Question> load_question_set(const std::filesystem::path& path);

// Seeded Fisher-Yates shuffle of the options. Seed 0 is reserved for the
// original order.
std::vector<QuestionOption> permute_options(const Question& question, std::uint64_t seed);

}  // namespace focal

#endif  // FOCAL_QUESTION_H_
