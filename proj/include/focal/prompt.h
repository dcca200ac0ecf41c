#ifndef FOCAL_PROMPT_H_
#define FOCAL_PROMPT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "focal/question.h"

namespace focal {

enum class TaskVariant { kPick, kGuess, kCoordinate };
enum class PromptVariant { kVanilla, kSaliency, kAllFeatures, kCulture };

inline constexpr TaskVariant kAllTaskVariants[] = {TaskVariant::kPick, TaskVariant::kGuess,
                                                   TaskVariant::kCoordinate};
inline constexpr PromptVariant kAllPromptVariants[] = {
    PromptVariant::kVanilla, PromptVariant::kSaliency, PromptVariant::kAllFeatures,
    PromptVariant::kCulture};

std::string_view TaskVariantName(TaskVariant task);
std::optional<TaskVariant> ParseTaskVariant(std::string_view name);
std::string_view PromptVariantName(PromptVariant variant);
std::optional<PromptVariant> ParsePromptVariant(std::string_view name);

// "{label: score, label: score, ...}" in the given order.
std::string format_objects(const std::vector<QuestionOption>& options);

// Base task text with @objects@ filled from `permutation`, followed by the
// variant's guidance (a single space apart). Culture wording follows the
// question's locale. Throws kTemplate when `permutation` is not a
// permutation of the question's options or the pairing has no template.
std::string render_prompt(const Question& question, TaskVariant task, PromptVariant variant,
                          const std::vector<QuestionOption>& permutation);

}  // namespace focal

#endif  // FOCAL_PROMPT_H_
