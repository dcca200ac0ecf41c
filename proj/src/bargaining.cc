#include "focal/bargaining.h"

#include <cmath>
#include <set>
#include <string>

#include "focal/error.h"
#include "focal/format.h"

namespace focal {
namespace {

bool OnGrid(Coord c) {
  return c.row >= 1 && c.row <= BargainingBoard::kGridSize && c.col >= 1 &&
         c.col <= BargainingBoard::kGridSize;
}

std::string CoordText(Coord c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

void CheckAssignment(const BargainingBoard& board, const Assignment& a,
                     std::string_view who) {
  if (a.attribution.size() != board.num_discs()) {
    throw Error(ErrorKind::kInvalidAssignment,
                std::string(who) + " assignment covers " +
                    std::to_string(a.attribution.size()) + " discs, board has " +
                    std::to_string(board.num_discs()));
  }
}

// Payoff to `player` from one disc given both choices.
double DiscPayoff(double value, Player blue_choice, Player orange_choice, Player player) {
  if (blue_choice != orange_choice) return -value / kConflictPenaltyDivisor;
  return blue_choice == player ? value : 0.0;
}

}  // namespace

std::string_view PlayerName(Player player) {
  return player == Player::kBlue ? "blue" : "orange";
}

std::optional<Player> ParsePlayer(std::string_view name) {
  const std::string lower = ToLower(name);
  if (lower == "blue") return Player::kBlue;
  if (lower == "orange" || lower == "yellow") return Player::kOrange;
  return std::nullopt;
}

BargainingBoard::BargainingBoard(Coord blue_square, Coord orange_square,
                                 std::vector<Disc> discs)
    : blue_square_(blue_square), orange_square_(orange_square), discs_(std::move(discs)) {
  if (!OnGrid(blue_square_) || !OnGrid(orange_square_)) {
    throw Error(ErrorKind::kInvalidBoard, "player square off the 9x9 grid");
  }
  if (blue_square_ == orange_square_) {
    throw Error(ErrorKind::kInvalidBoard, "blue and orange squares coincide");
  }
  if (discs_.empty()) throw Error(ErrorKind::kInvalidBoard, "board has no discs");
  std::set<Coord> taken = {blue_square_, orange_square_};
  for (const auto& disc : discs_) {
    if (!OnGrid(disc.pos)) {
      throw Error(ErrorKind::kInvalidBoard, "disc at " + CoordText(disc.pos) + " is off the grid");
    }
    if (!taken.insert(disc.pos).second) {
      throw Error(ErrorKind::kInvalidBoard,
                  "disc at " + CoordText(disc.pos) + " overlaps another disc or a square");
    }
    if (!std::isfinite(disc.value) || disc.value <= 0.0) {
      throw Error(ErrorKind::kInvalidBoard,
                  "disc at " + CoordText(disc.pos) + " must have a positive value");
    }
  }
}

double BargainingBoard::total_value() const {
  double total = 0.0;
  for (const auto& disc : discs_) total += disc.value;
  return total;
}

std::optional<std::size_t> BargainingBoard::DiscAt(Coord pos) const {
  for (std::size_t i = 0; i < discs_.size(); ++i) {
    if (discs_[i].pos == pos) return i;
  }
  return std::nullopt;
}

JointOutcome score_joint(const BargainingBoard& board, const Assignment& blue,
                         const Assignment& orange) {
  CheckAssignment(board, blue, "blue");
  CheckAssignment(board, orange, "orange");
  JointOutcome out;
  for (std::size_t i = 0; i < board.num_discs(); ++i) {
    const double value = board.discs()[i].value;
    const Player b = blue.attribution[i];
    const Player o = orange.attribution[i];
    if (b != o) {
      out.conflicted_discs.push_back(i);
      out.conflicted_value += value;
    } else if (b == Player::kBlue) {
      out.blue_agreed_value += value;
    } else {
      out.orange_agreed_value += value;
    }
  }
  const double penalty = out.conflicted_value / kConflictPenaltyDivisor;
  out.blue_payoff = out.blue_agreed_value - penalty;
  out.orange_payoff = out.orange_agreed_value - penalty;
  return out;
}

std::vector<JointAssignment> enumerate_bargaining_nash(const BargainingBoard& board,
                                                       std::size_t max_discs) {
  const std::size_t k = board.num_discs();
  if (k > max_discs) {
    throw Error(ErrorKind::kCapacity, "board has " + std::to_string(k) +
                                          " discs; Nash enumeration is capped at " +
                                          std::to_string(max_discs));
  }
  constexpr Player kChoices[] = {Player::kBlue, Player::kOrange};

  // Stable (blue, orange) choices of each disc's sub-game.
  std::vector<std::vector<std::pair<Player, Player>>> stable(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double value = board.discs()[i].value;
    for (Player b : kChoices) {
      for (Player o : kChoices) {
        const bool blue_ok = DiscPayoff(value, b, o, Player::kBlue) >=
                             DiscPayoff(value, Opponent(b), o, Player::kBlue);
        const bool orange_ok = DiscPayoff(value, b, o, Player::kOrange) >=
                               DiscPayoff(value, b, Opponent(o), Player::kOrange);
        if (blue_ok && orange_ok) stable[i].emplace_back(b, o);
      }
    }
  }

  std::vector<JointAssignment> out;
  JointAssignment current{Assignment::All(k, Player::kBlue), Assignment::All(k, Player::kBlue)};
  auto extend = [&](auto&& self, std::size_t disc) -> void {
    if (disc == k) {
      out.push_back(current);
      return;
    }
    for (const auto& [b, o] : stable[disc]) {
      current.blue.attribution[disc] = b;
      current.orange.attribution[disc] = o;
      self(self, disc + 1);
    }
  };
  extend(extend, 0);
  return out;
}

}  // namespace focal
