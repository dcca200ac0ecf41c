#ifndef FOCAL_BARGAINING_H_
#define FOCAL_BARGAINING_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace focal {

enum class Player { kBlue, kOrange };

std::string_view PlayerName(Player player);
// Accepts "blue", "orange" and the prompt alias "yellow", case-insensitively.
std::optional<Player> ParsePlayer(std::string_view name);
inline Player Opponent(Player player) {
  return player == Player::kBlue ? Player::kOrange : Player::kBlue;
}

// Board coordinates are (row, col), 1-based, row 1 at the top.
struct Coord {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Coord&, const Coord&) = default;
};

struct Disc {
  double value = 0.0;
  Coord pos;
  friend bool operator==(const Disc&, const Disc&) = default;
};

class BargainingBoard {
 public:
  static constexpr int kGridSize = 9;

  // Throws kInvalidBoard unless coordinates are on the grid, the player
  // squares differ, disc positions are distinct and off the player squares,
  // there is at least one disc, and every value is positive.
  BargainingBoard(Coord blue_square, Coord orange_square, std::vector<Disc> discs);

  Coord square(Player player) const {
    return player == Player::kBlue ? blue_square_ : orange_square_;
  }
  const std::vector<Disc>& discs() const { return discs_; }
  std::size_t num_discs() const { return discs_.size(); }
  double total_value() const;
  std::optional<std::size_t> DiscAt(Coord pos) const;

  friend bool operator==(const BargainingBoard&, const BargainingBoard&) = default;

 private:
  Coord blue_square_;
  Coord orange_square_;
  std::vector<Disc> discs_;
};

// Which player each disc is attributed to, indexed like board.discs().
struct Assignment {
  std::vector<Player> attribution;

  static Assignment All(std::size_t num_discs, Player player) {
    return {std::vector<Player>(num_discs, player)};
  }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Disputed discs cost each player a fifth (20%) of their value. Penalties are
// computed as value / kConflictPenaltyDivisor so integer-valued boards score
// to the correctly rounded decimal (12 / 5 == 2.4).
inline constexpr double kConflictPenalty = 0.2;
inline constexpr double kConflictPenaltyDivisor = 5.0;
inline constexpr std::size_t kMaxNashDiscs = 12;

struct JointOutcome {
  double blue_payoff = 0.0;
  double orange_payoff = 0.0;
  std::vector<std::size_t> conflicted_discs;
  // Sum of values the players agreed on, per recipient, and of disputed values.
  double blue_agreed_value = 0.0;
  double orange_agreed_value = 0.0;
  double conflicted_value = 0.0;

  double payoff(Player player) const {
    return player == Player::kBlue ? blue_payoff : orange_payoff;
  }
  double welfare() const { return blue_payoff + orange_payoff; }
};

// Agreed discs pay their value to the agreed player; each disputed disc costs
// both players kConflictPenalty times its value.
JointOutcome score_joint(const BargainingBoard& board, const Assignment& blue,
                         const Assignment& orange);

struct JointAssignment {
  Assignment blue;
  Assignment orange;

  friend bool operator==(const JointAssignment&, const JointAssignment&) = default;
};

// Pure Nash profiles of the board. Payoffs are additive over discs, so a
// profile is stable iff every disc's 2x2 sub-game is; the stable per-disc
// choices are found by deviation checks and combined. Output is ordered by
// disc 0 varying slowest, blue before orange. Throws kCapacity when the board
// has more than `max_discs` discs.
std::vector<JointAssignment> enumerate_bargaining_nash(const BargainingBoard& board,
                                                       std::size_t max_discs = kMaxNashDiscs);

}  // namespace focal

#endif  // FOCAL_BARGAINING_H_
