#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace warmstart {

enum class GameKind : std::uint8_t { Othello = 0, ConnectFour = 1, Gobang = 2 };

std::string_view to_string(GameKind kind);
/// Accepts "othello", "connect4"/"connectfour", "gobang" (case-insensitive).
GameKind parse_game_kind(std::string_view name);

enum class Player : std::int8_t { First = 1, Second = -1 };

constexpr Player opponent(Player p) { return p == Player::First ? Player::Second : Player::First; }
constexpr int sign(Player p) { return static_cast<int>(p); }

/// Cell index for Othello/Gobang, column index for Connect Four.
/// Othello additionally has a pass move with index boardSize².
using Move = int;

struct Outcome {
  enum class Kind : std::uint8_t { Ongoing, Win, Draw };
  Kind kind = Kind::Ongoing;
  Player winner = Player::First;  // meaningful only for Win

  static Outcome ongoing() { return {}; }
  static Outcome draw() { return {Kind::Draw, Player::First}; }
  static Outcome win(Player p) { return {Kind::Win, p}; }

  bool terminal() const { return kind != Kind::Ongoing; }
  /// +1 / 0 / -1 from the point of view of `p`. Zero while ongoing.
  int value_for(Player p) const {
    if (kind != Kind::Win) return 0;
    return winner == p ? 1 : -1;
  }
  friend bool operator==(const Outcome& a, const Outcome& b) {
    if (a.kind != b.kind) return false;
    return a.kind != Kind::Win || a.winner == b.winner;
  }
};

struct GameSpec {
  GameKind kind = GameKind::Gobang;
  int board_size = 6;
  int win_length = 4;

  /// Throws ConfigError on an invalid dimension combination.
  void validate() const;
  int cells() const { return board_size * board_size; }
  int action_count() const;
  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

/// Canonical single-plane state encoding (mover's pieces are +1).
using Encoding = std::vector<float>;

/// Immutable board position. All members are const; apply() returns a new state.
class GameState {
 public:
  static GameState initial(const GameSpec& spec);
  /// Arbitrary position; the outcome is computed from a full board scan.
  static GameState from_board(const GameSpec& spec, std::vector<std::int8_t> cells, Player to_move);

  const GameSpec& spec() const { return spec_; }
  GameKind kind() const { return spec_.kind; }
  int board_size() const { return spec_.board_size; }
  int action_count() const { return spec_.action_count(); }
  Player to_move() const { return to_move_; }
  int plies() const { return plies_; }
  const std::vector<std::int8_t>& cells() const { return cells_; }
  int at(int row, int col) const { return cells_[row * spec_.board_size + col]; }
  int piece_count() const;

  /// Pass index for Othello; -1 for the other games.
  Move pass_move() const;

  /// Never empty for a non-terminal state. Empty for a terminal state.
  std::vector<Move> legal_moves() const;
  bool is_legal(Move m) const;
  /// Throws IllegalMoveError for an illegal move or a terminal state.
  GameState apply(Move m) const;

  const Outcome& outcome() const { return outcome_; }
  bool terminal() const { return outcome_.terminal(); }

  /// Board in the mover's perspective, one byte per cell. Colour-swapped
  /// positions with opposite movers share a key.
  std::string key() const;
  /// Rows of 'X' (first player), 'O' (second player) and '.'; row 0 first.
  std::string render() const;

 private:
  GameState(GameSpec spec, std::vector<std::int8_t> cells, Player to_move, int plies)
      : spec_(spec), cells_(std::move(cells)), to_move_(to_move), plies_(plies) {}

  bool othello_has_flip(int cell, int colour) const;
  bool othello_any_flip(int colour) const;
  bool line_through(int cell) const;
  Outcome scan_outcome() const;
  Outcome othello_outcome() const;

  GameSpec spec_;
  std::vector<std::int8_t> cells_;
  Player to_move_ = Player::First;
  int plies_ = 0;
  Outcome outcome_;
};

// Free-function surface mirroring the rule-engine operations.
GameState new_game(GameKind kind, int board_size, int win_length);
inline std::vector<Move> legal_moves(const GameState& s) { return s.legal_moves(); }
inline GameState apply_move(const GameState& s, Move m) { return s.apply(m); }
inline Outcome outcome(const GameState& s) { return s.outcome(); }

Encoding encode_state(const GameState& s);
/// Inverse of encode_state up to perspective: the result has Player::First to move.
GameState decode_state(const GameSpec& spec, const Encoding& encoding);

/// Dihedral images of (encoding, policy): 8 for square-placement games,
/// identity plus left/right mirror for Connect Four. The Othello pass slot is fixed.
std::vector<std::pair<Encoding, std::vector<float>>> symmetries(
    const GameSpec& spec, const Encoding& encoding, const std::vector<float>& policy);

}  // namespace warmstart
