#ifndef FOCAL_FOCALITY_H_
#define FOCAL_FOCALITY_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "focal/coordination.h"

namespace focal {

enum class FocalityLabel {
  kUniqueness,
  kUniquenessComplement,
  kCentrality,
  kExtremeness,
};

inline constexpr std::array<FocalityLabel, 4> kAllFocalityLabels = {
    FocalityLabel::kUniqueness, FocalityLabel::kUniquenessComplement,
    FocalityLabel::kCentrality, FocalityLabel::kExtremeness};

std::string_view FocalityLabelName(FocalityLabel label);
std::optional<FocalityLabel> ParseFocalityLabel(std::string_view name);

using LabelSet = std::set<FocalityLabel>;
using LabelMap = std::map<std::string, LabelSet>;

// share(L) = (sum of counts over options carrying L) / n. An option with
// several labels counts fully towards each, so shares may sum above 1.
// Every chosen option must be present in `labels` (kMissingLabel).
std::map<FocalityLabel, double> focality_distribution(const ChoiceTally& choices,
                                                      const LabelMap& labels);

// Label files map option id -> array of label names. A file may instead nest
// one such mapping per question id; flat mappings apply to every question.
class FocalityLabels {
 public:
  static FocalityLabels Parse(std::string_view json_text);
  static FocalityLabels Load(const std::filesystem::path& path);

  LabelMap ForQuestion(const std::string& question_id) const;

 private:
  LabelMap shared_;
  std::map<std::string, LabelMap> per_question_;
};

}  // namespace focal

#endif  // FOCAL_FOCALITY_H_
