#include "focal/focality.h"

#include <fstream>
#include <sstream>

#include "focal/error.h"
#include "json.hpp"

namespace focal {
namespace {

LabelSet ParseLabelArray(const nlohmann::json& array, const std::string& where) {
  if (!array.is_array()) {
    throw Error(ErrorKind::kLoad, "labels for '" + where + "' must be an array");
  }
  LabelSet out;
  for (const auto& item : array) {
    const auto label =
        item.is_string() ? ParseFocalityLabel(item.get<std::string>()) : std::nullopt;
    if (!label) {
      throw Error(ErrorKind::kLoad, "unknown focality label " + item.dump() + " for '" +
                                        where + "'");
    }
    out.insert(*label);
  }
  return out;
}

}  // namespace

std::string_view FocalityLabelName(FocalityLabel label) {
  switch (label) {
    case FocalityLabel::kUniqueness: return "uniqueness";
    case FocalityLabel::kUniquenessComplement: return "uniqueness-complement";
    case FocalityLabel::kCentrality: return "centrality";
    case FocalityLabel::kExtremeness: return "extremeness";
  }
  return "";
}

std::optional<FocalityLabel> ParseFocalityLabel(std::string_view name) {
  for (FocalityLabel label : kAllFocalityLabels) {
    if (FocalityLabelName(label) == name) return label;
  }
  return std::nullopt;
}

std::map<FocalityLabel, double> focality_distribution(const ChoiceTally& choices,
                                                      const LabelMap& labels) {
  std::map<FocalityLabel, std::int64_t> mass;
  for (FocalityLabel label : kAllFocalityLabels) mass[label] = 0;
  for (std::size_t j = 0; j < choices.num_options(); ++j) {
    const std::int64_t count = choices.counts()[j];
    if (count == 0) continue;
    const auto it = labels.find(choices.option_ids()[j]);
    if (it == labels.end()) {
      throw Error(ErrorKind::kMissingLabel,
                  "chosen option '" + choices.option_ids()[j] + "' has no focality labels");
    }
    for (FocalityLabel label : it->second) mass[label] += count;
  }
  if (choices.n() == 0) {
    throw Error(ErrorKind::kUndefinedMetric, "focality shares need at least one choice");
  }
  std::map<FocalityLabel, double> shares;
  for (const auto& [label, total] : mass) {
    shares[label] = static_cast<double>(total) / static_cast<double>(choices.n());
  }
  return shares;
}

FocalityLabels FocalityLabels::Parse(std::string_view json_text) {
  const auto doc = nlohmann::json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorKind::kLoad, "focality label file must be a JSON object");
  }
  FocalityLabels out;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      auto& nested = out.per_question_[key];
      for (const auto& [option, labels] : value.items()) {
        nested[option] = ParseLabelArray(labels, key + "/" + option);
      }
    } else {
      out.shared_[key] = ParseLabelArray(value, key);
    }
  }
  return out;
}

FocalityLabels FocalityLabels::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kLoad, "cannot open label file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

LabelMap FocalityLabels::ForQuestion(const std::string& question_id) const {
  LabelMap merged = shared_;
  if (const auto it = per_question_.find(question_id); it != per_question_.end()) {
    for (const auto& [option, labels] : it->second) merged[option] = labels;
  }
  return merged;
}

}  // namespace focal
