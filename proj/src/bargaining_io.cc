#include "focal/bargaining_io.h"

#include <fstream>
#include <regex>
#include <sstream>

#include "focal/format.h"

namespace focal {
namespace {

using nlohmann::json;

std::string CoordKey(Coord c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

std::optional<Coord> ParseCoordKey(const std::string& key) {
  static const std::regex kPattern(R"(^\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$)");
  std::smatch match;
  if (!std::regex_match(key, match, kPattern)) return std::nullopt;
  if (match[1].length() > 3 || match[2].length() > 3) return std::nullopt;
  return Coord{std::stoi(match[1].str()), std::stoi(match[2].str())};
}

// Color word used in prompts and answer logs.
std::string_view AnswerColor(Player player) {
  return player == Player::kBlue ? "blue" : "yellow";
}

std::string_view PromptName(Player player) {
  return player == Player::kBlue ? "Blue" : "Yellow";
}

Coord CoordFromJson(const json& value, const std::string& what) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
      !value[1].is_number_integer()) {
    throw Error(ErrorKind::kInvalidBoard, what + " must be an array [row, col]");
  }
  return Coord{value[0].get<int>(), value[1].get<int>()};
}

constexpr std::string_view kRulesText =
    "Bargaining Table is a tacit coordination game played on a 9x9 board with two special "
    "squares, one representing each player (e.g., a blue square and a yellow square). "
    "Several discs are scattered on the board, and each disc has a numeric value. Without "
    "communicating and without knowing the other player's choices, each player must decide, "
    "for every disc, which of the two player-squares the disc should be assigned to. A "
    "disc's value is awarded only if both players assign that disc to the same player: if "
    "both assign it to Blue, Blue receives the disc's value (and Yellow receives nothing for "
    "that disc), and if both assign it to Yellow, Yellow receives the disc's value (and Blue "
    "receives nothing for that disc). If the two players assign the same disc to different "
    "players, then both players are penalized by losing 20% of that disc's value. The total "
    "score for each player is the sum of outcomes over all discs.\n"
    "The coordinates are written as (row, column) on a 9x9 grid, where row 1 is the top row "
    "and column 1 is the leftmost column. You will have to play that game in the following "
    "state:\n";

constexpr std::string_view kOutputText =
    "\nInside <answer></answer> tags, output only a JSON object where each key is a disc "
    "coordinate in the form \"(row,col)\" and each value is either \"blue\" or \"yellow\", "
    "indicating which player you assign that disc to. Include every disc exactly once and no "
    "extra text. For example:\n"
    "<answer>{\"(row,col)\":\"blue\",\"(row,col)\":\"yellow\"}</answer>\n";

constexpr std::string_view kClosingText = "Start the solution below.";

std::string_view VariantDirective(BargainingPromptVariant variant) {
  switch (variant) {
    case BargainingPromptVariant::kVanilla: return "";
    case BargainingPromptVariant::kGreedy: return "Try to maximize your own payoff.";
    case BargainingPromptVariant::kCooperative:
      return "Try to be cooperative: aim to maximize the total payoff of both players (joint "
             "outcome), not just your own.";
    case BargainingPromptVariant::kAllFeatures:
      return "There are four intuitive properties that make a choice desirable:\n"
             "- uniqueness: it is the only object with a given property.\n"
             "- uniqueness complement: it is the only object *without* a given property.\n"
             "- centrality: it is a central point around which a domain is symmetric.\n"
             "- extremeness: it is an object that has the largest or the smallest property "
             "among all the others.\n"
             "Now, you have to prioritise the selection of your discs based on the mentioned "
             "properties.";
    case BargainingPromptVariant::kSaliency:
      return "Anticipate the other player's moves and prefer discs he is unlikely to pick for "
             "himself.";
  }
  return "";
}

}  // namespace

std::string_view ParseFailureName(ParseFailure failure) {
  switch (failure) {
    case ParseFailure::kMissingAnswer: return "missing-answer";
    case ParseFailure::kMalformedJson: return "malformed-json";
    case ParseFailure::kBadKey: return "bad-key";
    case ParseFailure::kMissingDisc: return "missing-disc";
    case ParseFailure::kExtraDisc: return "extra-disc";
    case ParseFailure::kDuplicateDisc: return "duplicate-disc";
    case ParseFailure::kUnknownColor: return "unknown-color";
  }
  return "";
}

Assignment assignment_from_json(const json& object, const BargainingBoard& board) {
  if (!object.is_object()) {
    throw AssignmentParseError(ParseFailure::kMalformedJson, "answer is not a JSON object");
  }
  std::vector<std::optional<Player>> seen(board.num_discs());
  for (const auto& [key, value] : object.items()) {
    const auto coord = ParseCoordKey(key);
    if (!coord) {
      throw AssignmentParseError(ParseFailure::kBadKey, "key '" + key + "' is not \"(row,col)\"");
    }
    const auto disc = board.DiscAt(*coord);
    if (!disc) {
      throw AssignmentParseError(ParseFailure::kExtraDisc, "no disc at " + CoordKey(*coord));
    }
    if (seen[*disc]) {
      throw AssignmentParseError(ParseFailure::kDuplicateDisc,
                                 "disc " + CoordKey(*coord) + " listed twice");
    }
    const auto player = value.is_string() ? ParsePlayer(value.get<std::string>()) : std::nullopt;
    if (!player) {
      throw AssignmentParseError(ParseFailure::kUnknownColor,
                                 "disc " + CoordKey(*coord) + " has color " + value.dump());
    }
    seen[*disc] = *player;
  }
  Assignment out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw AssignmentParseError(ParseFailure::kMissingDisc,
                                 "disc " + CoordKey(board.discs()[i].pos) + " is not assigned");
    }
    out.attribution.push_back(*seen[i]);
  }
  return out;
}

Assignment parse_assignment_json(std::string_view text, const BargainingBoard& board) {
  std::string_view inner;
  if (!LastAnswerSpan(text, &inner)) {
    throw AssignmentParseError(ParseFailure::kMissingAnswer, "no <answer>...</answer> span");
  }
  // nlohmann keeps only the last duplicate key, so record top-level keys as
  // the parser meets them.
  std::vector<std::string> keys;
  json::parser_callback_t record = [&keys](int depth, json::parse_event_t event, json& parsed) {
    if (depth == 1 && event == json::parse_event_t::key) keys.push_back(parsed.get<std::string>());
    return true;
  };
  const json doc = json::parse(inner, record, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    throw AssignmentParseError(ParseFailure::kMalformedJson, "answer is not valid JSON");
  }
  if (doc.is_object() && keys.size() != doc.size()) {
    // Distinguish a repeated disc from two spellings of one disc.
    throw AssignmentParseError(ParseFailure::kDuplicateDisc, "answer repeats a key");
  }
  std::vector<Coord> coords;
  for (const auto& key : keys) {
    if (const auto c = ParseCoordKey(key)) {
      for (const auto& other : coords) {
        if (other == *c) {
          throw AssignmentParseError(ParseFailure::kDuplicateDisc,
                                     "disc " + CoordKey(*c) + " listed twice");
        }
      }
      coords.push_back(*c);
    }
  }
  return assignment_from_json(doc, board);
}

std::string assignment_json_text(const BargainingBoard& board, const Assignment& assignment) {
  if (assignment.attribution.size() != board.num_discs()) {
    throw Error(ErrorKind::kInvalidAssignment, "assignment does not match the board");
  }
  std::string out = "{";
  for (std::size_t i = 0; i < board.num_discs(); ++i) {
    if (i > 0) out += ",";
    out += "\"" + CoordKey(board.discs()[i].pos) + "\":\"";
    out += AnswerColor(assignment.attribution[i]);
    out += "\"";
  }
  return out + "}";
}

std::string render_assignment_answer(const BargainingBoard& board,
                                     const Assignment& assignment) {
  return "<answer>" + assignment_json_text(board, assignment) + "</answer>";
}

json board_to_json(const BargainingBoard& board) {
  json discs = json::array();
  for (const auto& disc : board.discs()) {
    discs.push_back({{"value", disc.value}, {"pos", {disc.pos.row, disc.pos.col}}});
  }
  const Coord blue = board.square(Player::kBlue);
  const Coord orange = board.square(Player::kOrange);
  return {{"blue_square", {blue.row, blue.col}},
          {"orange_square", {orange.row, orange.col}},
          {"discs", discs}};
}

BargainingBoard board_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("blue_square") || !doc.contains("discs") ||
      !(doc.contains("orange_square") || doc.contains("yellow_square"))) {
    throw Error(ErrorKind::kInvalidBoard,
                "board needs blue_square, orange_square and discs fields");
  }
  const Coord blue = CoordFromJson(doc["blue_square"], "blue_square");
  const Coord orange = CoordFromJson(
      doc.contains("orange_square") ? doc["orange_square"] : doc["yellow_square"],
      "orange_square");
  if (!doc["discs"].is_array()) throw Error(ErrorKind::kInvalidBoard, "discs must be an array");
  std::vector<Disc> discs;
  for (const auto& item : doc["discs"]) {
    if (!item.is_object() || !item.contains("value") || !item["value"].is_number() ||
        !item.contains("pos")) {
      throw Error(ErrorKind::kInvalidBoard, "disc needs a numeric value and a pos");
    }
    discs.push_back({item["value"].get<double>(), CoordFromJson(item["pos"], "disc pos")});
  }
  return BargainingBoard(blue, orange, std::move(discs));
}

std::vector<BargainingBoard> load_board_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kLoad, "cannot open board file " + path.string());
  const json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorKind::kLoad, path.string() + " is not valid JSON");
  const json* list = &doc;
  if (doc.is_object() && doc.contains("boards")) list = &doc["boards"];
  std::vector<BargainingBoard> boards;
  try {
    if (list->is_array()) {
      for (const auto& item : *list) boards.push_back(board_from_json(item));
    } else {
      boards.push_back(board_from_json(*list));
    }
  } catch (const Error& e) {
    throw Error(ErrorKind::kLoad, path.string() + ": board " + std::to_string(boards.size()) +
                                      ": " + e.what());
  }
  if (boards.empty()) throw Error(ErrorKind::kLoad, path.string() + " contains no boards");
  return boards;
}

std::string_view BargainingPromptVariantName(BargainingPromptVariant variant) {
  switch (variant) {
    case BargainingPromptVariant::kVanilla: return "vanilla";
    case BargainingPromptVariant::kGreedy: return "greedy";
    case BargainingPromptVariant::kCooperative: return "cooperative";
    case BargainingPromptVariant::kAllFeatures: return "all-features";
    case BargainingPromptVariant::kSaliency: return "saliency";
  }
  return "";
}

std::optional<BargainingPromptVariant> ParseBargainingPromptVariant(std::string_view name) {
  for (auto v : {BargainingPromptVariant::kVanilla, BargainingPromptVariant::kGreedy,
                 BargainingPromptVariant::kCooperative, BargainingPromptVariant::kAllFeatures,
                 BargainingPromptVariant::kSaliency}) {
    if (BargainingPromptVariantName(v) == name) return v;
  }
  return std::nullopt;
}

std::string describe_board_state(const BargainingBoard& board, Player self) {
  const auto at = [](Coord c) {
    return "(" + std::to_string(c.row) + ", " + std::to_string(c.col) + ")";
  };
  std::ostringstream out;
  out << "You are the " << PromptName(self) << " player, and your square is located at "
      << at(board.square(self)) << ". The other player's square (" << PromptName(Opponent(self))
      << ") is located at " << at(board.square(Opponent(self))) << ". ";
  const std::size_t k = board.num_discs();
  out << (k == 1 ? "There is 1 disc on the board: " : "There are " + std::to_string(k) +
                                                           " discs on the board: ");
  for (std::size_t i = 0; i < k; ++i) {
    if (i > 0) out << (i + 1 == k ? (k == 2 ? " and " : ", and ") : ", ");
    out << "a value-" << FormatNumber(board.discs()[i].value) << " disc at "
        << at(board.discs()[i].pos);
  }
  out << ".";
  return out.str();
}

std::string render_bargaining_prompt(const BargainingBoard& board, Player self,
                                     BargainingPromptVariant variant) {
  std::string out(kRulesText);
  out += describe_board_state(board, self);
  out += kOutputText;
  const std::string_view directive = VariantDirective(variant);
  if (!directive.empty()) {
    out += directive;
    out += " ";
  }
  out += kClosingText;
  return out;
}

}  // namespace focal
