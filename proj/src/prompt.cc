#include "focal/prompt.h"

#include <algorithm>

#include "focal/error.h"
#include "focal/format.h"

namespace focal {
namespace {

constexpr std::string_view kObjectsPlaceholder = "@objects@";
constexpr std::string_view kLocalePlaceholder = "@place@";

constexpr std::string_view kPickBase =
    "In this task, you have to choose one of the following options. This is the list of "
    "options and their score: @objects@. You will earn the number of points shown on the "
    "option you choose. Your earnings are determined by your decisions alone. Return the "
    "option you chose, without the score, between <answer></answer> tags.";

constexpr std::string_view kGuessBase =
    "In this task, you have to choose one of the following options. This is the list of "
    "options and their score: @objects@. You will earn the number of points shown on the "
    "option you choose. You have been paired with another LLM and you have to guess what it "
    "chooses. If you guess correctly, you will receive the number of points indicated on that "
    "option. If not, you will receive nothing for that task. Return the option you chose, "
    "without the score, between <answer></answer> tags.";

constexpr std::string_view kCoordinateBase =
    "In this task, you have to choose one of the following options. This is the list of "
    "options and their score: @objects@. You have been paired with another LLM. If you "
    "choose the same object as your partner, you will both receive the number of points "
    "indicated on that option. If not, neither will receive anything. Return the option you "
    "chose, without the score, between <answer></answer> tags.";

constexpr std::string_view kSaliencyText =
    "Choosing an option that is entirely different from the others is highly recommended "
    "(for example, in a different category).";

constexpr std::string_view kAllFeaturesText =
    "There are four intuitive properties that make a choice desirable:\n"
    "(i) uniqueness: it is the only object with a given property;\n"
    "(ii) uniqueness complement: it is the only object without a given property;\n"
    "(iii) centrality: it is a central point around which a domain is symmetric;\n"
    "(iv) extremeness: it is an object that has the largest or the smallest feature among "
    "all the others.\n"
    "Now, you have to prioritise the selection of the only object that satisfies one of the "
    "above mentioned properties, i.e., it is the only object with that property in the list. "
    "If there are multiple objects that satisfy one or more of the above mentioned "
    "properties, select the one that is unique, then extreme, then central, and eventually "
    "unique complement.";

constexpr std::string_view kCulturePick =
    "You are in @place@, so make your decision based on the activity or object that you "
    "would like to do or obtain as a person from that place.";

constexpr std::string_view kCultureGuess =
    "You have been paired with another human from @place@. You have to guess what he/she "
    "chooses: remember that you and your partner are both in @place@, so make your decision "
    "based on the activity or object you think your partner would like to do or obtain as a "
    "person from that place.";

constexpr std::string_view kCultureCoordinate =
    "You are from @place@ and you have been paired with another human from @place@. If you "
    "choose the same object as your partner, you will both receive the number of points "
    "indicated on that option. If not, neither will receive anything. Make your decision "
    "based on the activity or object that you and your partner would like to do or obtain as "
    "a person from @place@.";

std::string ReplaceAll(std::string_view text, std::string_view from, std::string_view to) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = text.find(from, pos);
    if (hit == std::string_view::npos) break;
    out.append(text.substr(pos, hit - pos));
    out.append(to);
    pos = hit + from.size();
  }
  out.append(text.substr(pos));
  return out;
}

std::optional<std::string_view> BaseText(TaskVariant task) {
  switch (task) {
    case TaskVariant::kPick: return kPickBase;
    case TaskVariant::kGuess: return kGuessBase;
    case TaskVariant::kCoordinate: return kCoordinateBase;
  }
  return std::nullopt;
}

std::optional<std::string_view> GuidanceText(TaskVariant task, PromptVariant variant) {
  switch (variant) {
    case PromptVariant::kVanilla: return std::string_view{};
    case PromptVariant::kSaliency: return kSaliencyText;
    case PromptVariant::kAllFeatures: return kAllFeaturesText;
    case PromptVariant::kCulture:
      switch (task) {
        case TaskVariant::kPick: return kCulturePick;
        case TaskVariant::kGuess: return kCultureGuess;
        case TaskVariant::kCoordinate: return kCultureCoordinate;
      }
      break;
  }
  return std::nullopt;
}

}  // namespace

std::string_view TaskVariantName(TaskVariant task) {
  switch (task) {
    case TaskVariant::kPick: return "pick";
    case TaskVariant::kGuess: return "guess";
    case TaskVariant::kCoordinate: return "coordinate";
  }
  return "";
}

std::optional<TaskVariant> ParseTaskVariant(std::string_view name) {
  for (TaskVariant task : kAllTaskVariants) {
    if (TaskVariantName(task) == name) return task;
  }
  return std::nullopt;
}

std::string_view PromptVariantName(PromptVariant variant) {
  switch (variant) {
    case PromptVariant::kVanilla: return "vanilla";
    case PromptVariant::kSaliency: return "saliency";
    case PromptVariant::kAllFeatures: return "all-features";
    case PromptVariant::kCulture: return "culture";
  }
  return "";
}

std::optional<PromptVariant> ParsePromptVariant(std::string_view name) {
  for (PromptVariant variant : kAllPromptVariants) {
    if (PromptVariantName(variant) == name) return variant;
  }
  return std::nullopt;
}

std::string format_objects(const std::vector<QuestionOption>& options) {
  std::string out = "{";
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (i > 0) out += ", ";
    out += options[i].label + ": " + FormatNumber(options[i].score);
  }
  return out + "}";
}

std::string render_prompt(const Question& question, TaskVariant task, PromptVariant variant,
                          const std::vector<QuestionOption>& permutation) {
  auto expected = question.options;
  auto given = permutation;
  const auto by_label = [](const QuestionOption& a, const QuestionOption& b) {
    return a.label < b.label;
  };
  std::sort(expected.begin(), expected.end(), by_label);
  std::sort(given.begin(), given.end(), by_label);
  if (expected != given) {
    throw Error(ErrorKind::kTemplate, "displayed options are not a permutation of question '" +
                                          question.id + "'");
  }
  const auto base = BaseText(task);
  const auto guidance = GuidanceText(task, variant);
  if (!base || !guidance) {
    throw Error(ErrorKind::kTemplate, "no template for this task/variant pairing");
  }
  std::string out = ReplaceAll(*base, kObjectsPlaceholder, format_objects(permutation));
  if (!guidance->empty()) {
    out += " ";
    out += ReplaceAll(*guidance, kLocalePlaceholder, LocaleName(question.locale));
  }
  return out;
}

}  // namespace focal
