#include "focal/question.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "focal/error.h"
#include "focal/format.h"
#include "focal/rng.h"

namespace focal {

using nlohmann::json;

std::string_view LocaleName(Locale locale) {
  return locale == Locale::kAmsterdam ? "Amsterdam" : "Nottingham";
}

std::optional<Locale> ParseLocale(std::string_view name) {
  const std::string lower = ToLower(name);
  if (lower == "amsterdam") return Locale::kAmsterdam;
  if (lower == "nottingham") return Locale::kNottingham;
  return std::nullopt;
}

std::vector<std::string> Question::labels() const {
  std::vector<std::string> out;
  for (const auto& option : options) out.push_back(option.label);
  return out;
}

void validate_question(const Question& question) {
  const std::string where = "question '" + question.id + "'";
  if (question.id.empty()) throw Error(ErrorKind::kLoad, "question without an id");
  if (question.options.size() < 2) {
    throw Error(ErrorKind::kLoad, where + " needs at least 2 options");
  }
  std::set<std::string> seen;
  for (const auto& option : question.options) {
    if (Trim(option.label).empty()) throw Error(ErrorKind::kLoad, where + " has an empty label");
    if (!seen.insert(ToLower(option.label)).second) {
      throw Error(ErrorKind::kLoad, where + " repeats label '" + option.label + "'");
    }
    if (!std::isfinite(option.score) || option.score <= 0.0) {
      throw Error(ErrorKind::kLoad,
                  where + " option '" + option.label + "' needs a positive score");
    }
  }
}

Question question_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string()) {
    throw Error(ErrorKind::kLoad, "question entry needs a string id");
  }
  Question q;
  q.id = doc["id"].get<std::string>();
  const std::string where = "question '" + q.id + "'";
  if (!doc.contains("locale") || !doc["locale"].is_string()) {
    throw Error(ErrorKind::kLoad, where + " needs a locale");
  }
  const auto locale = ParseLocale(doc["locale"].get<std::string>());
  if (!locale) throw Error(ErrorKind::kLoad, where + " has an unknown locale");
  q.locale = *locale;
  if (!doc.contains("options") || !doc["options"].is_array()) {
    throw Error(ErrorKind::kLoad, where + " needs an options array");
  }
  for (const auto& item : doc["options"]) {
    if (!item.is_object() || !item.contains("label") || !item["label"].is_string() ||
        !item.contains("score") || !item["score"].is_number()) {
      throw Error(ErrorKind::kLoad, where + " has an option without label/score");
    }
    q.options.push_back({item["label"].get<std::string>(), item["score"].get<double>()});
  }
  validate_question(q);
  return q;
}

json question_to_json(const Question& question) {
  json options = json::array();
  for (const auto& o : question.options) options.push_back({{"label", o.label}, {"score", o.score}});
  return {{"id", question.id}, {"locale", LocaleName(question.locale)}, {"options", options}};
}

std::vector<Question> parse_question_set(std::string_view json_text) {
  const json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) {
    throw Error(ErrorKind::kLoad, "question set must be a JSON array");
  }
  std::vector<Question> out;
  std::set<std::string> ids;
  for (const auto& item : doc) {
    out.push_back(question_from_json(item));
    if (!ids.insert(out.back().id).second) {
      throw Error(ErrorKind::kLoad, "question '" + out.back().id + "' appears twice");
    }
  }
  return out;
}

std::vector<Question> load_question_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kLoad, "cannot open question set " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_question_set(buffer.str());
  } catch (const Error& e) {
    throw Error(ErrorKind::kLoad, path.string() + ": " + e.what());
  }
}

std::vector<QuestionOption> permute_options(const Question& question, std::uint64_t seed) {
  std::vector<QuestionOption> order = question.options;
  if (seed == 0) return order;
  Rng rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = rng.UniformIndex(i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

}  // namespace focal
