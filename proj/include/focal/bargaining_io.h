#ifndef FOCAL_BARGAINING_IO_H_
#define FOCAL_BARGAINING_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "focal/bargaining.h"
#include "focal/error.h"
#include "json.hpp"

namespace focal {

enum class ParseFailure {
  kMissingAnswer,
  kMalformedJson,
  kBadKey,
  kMissingDisc,
  kExtraDisc,
  kDuplicateDisc,
  kUnknownColor,
};

std::string_view ParseFailureName(ParseFailure failure);

class AssignmentParseError : public Error {
 public:
  AssignmentParseError(ParseFailure failure, const std::string& message)
      : Error(ErrorKind::kParse, message), failure_(failure) {}

  ParseFailure failure() const { return failure_; }

 private:
  ParseFailure failure_;
};

// Reads the last <answer>...</answer> span as a JSON object mapping "(row,col)"
// to "blue" or "yellow" ("orange" is accepted too). Every disc must appear
// exactly once. Throws AssignmentParseError.
Assignment parse_assignment_json(std::string_view text, const BargainingBoard& board);

// Same mapping without the answer tags, from an already-parsed JSON value.
Assignment assignment_from_json(const nlohmann::json& object, const BargainingBoard& board);

// {"(r,c)":"blue"|"yellow", ...} in disc order, compact, no tags.
std::string assignment_json_text(const BargainingBoard& board, const Assignment& assignment);
// The same object wrapped in <answer></answer>.
std::string render_assignment_answer(const BargainingBoard& board,
                                     const Assignment& assignment);

// Board files: {blue_square:[r,c], orange_square:[r,c], discs:[{value, pos:[r,c]}]}.
nlohmann::json board_to_json(const BargainingBoard& board);
BargainingBoard board_from_json(const nlohmann::json& doc);
// A single board object, an array of boards, or {"boards": [...]}.
std::vector<BargainingBoard> load_board_set(const std::filesystem::path& path);

enum class BargainingPromptVariant { kVanilla, kGreedy, kCooperative, kAllFeatures, kSaliency };

std::string_view BargainingPromptVariantName(BargainingPromptVariant variant);
std::optional<BargainingPromptVariant> ParseBargainingPromptVariant(std::string_view name);

// Natural-language board description from `self`'s point of view.
std::string describe_board_state(const BargainingBoard& board, Player self);

// The one-shot Bargaining Table prompt for `self`.
std::string render_bargaining_prompt(const BargainingBoard& board, Player self,
                                     BargainingPromptVariant variant);

}  // namespace focal

#endif  // FOCAL_BARGAINING_IO_H_
