#include "warmstart/game.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "warmstart/errors.hpp"

namespace warmstart {
namespace {

constexpr std::array<std::pair<int, int>, 8> kAllDirections{{
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}};
constexpr std::array<std::pair<int, int>, 4> kLineDirections{{{0, 1}, {1, 0}, {1, 1}, {1, -1}}};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

}  // namespace

std::string_view to_string(GameKind kind) {
  switch (kind) {
    case GameKind::Othello: return "othello";
    case GameKind::ConnectFour: return "connect4";
    case GameKind::Gobang: return "gobang";
  }
  return "unknown";
}

GameKind parse_game_kind(std::string_view name) {
  const std::string n = lower(name);
  if (n == "othello") return GameKind::Othello;
  if (n == "connect4" || n == "connectfour" || n == "connect_four") return GameKind::ConnectFour;
  if (n == "gobang") return GameKind::Gobang;
  throw ConfigError("unknown game '" + std::string(name) + "' (expected othello, connect4 or gobang)");
}

void GameSpec::validate() const {
  if (board_size < 1 || board_size > 8)
    throw ConfigError("board_size must be in [1, 8], got " + std::to_string(board_size));
  if (kind == GameKind::Othello) {
    if (board_size < 4 || board_size % 2 != 0)
      throw ConfigError("othello board_size must be even and >= 4, got " + std::to_string(board_size));
    return;
  }
  if (win_length < 1 || win_length > board_size)
    throw ConfigError("win_length must be in [1, board_size], got " + std::to_string(win_length));
}

int GameSpec::action_count() const {
  switch (kind) {
    case GameKind::Othello: return cells() + 1;
    case GameKind::ConnectFour: return board_size;
    case GameKind::Gobang: return cells();
  }
  return 0;
}

GameState GameState::initial(const GameSpec& spec) {
  spec.validate();
  std::vector<std::int8_t> cells(spec.cells(), 0);
  if (spec.kind == GameKind::Othello) {
    const int n = spec.board_size, h = n / 2;
    cells[(h - 1) * n + (h - 1)] = -1;
    cells[(h - 1) * n + h] = 1;
    cells[h * n + (h - 1)] = 1;
    cells[h * n + h] = -1;
  }
  GameState s(spec, std::move(cells), Player::First, 0);
  s.outcome_ = Outcome::ongoing();
  return s;
}

GameState GameState::from_board(const GameSpec& spec, std::vector<std::int8_t> cells, Player to_move) {
  spec.validate();
  if (static_cast<int>(cells.size()) != spec.cells())
    throw ConfigError("board has " + std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(spec.cells()));
  for (auto v : cells)
    if (v < -1 || v > 1) throw ConfigError("board entries must be in {-1, 0, +1}");
  const int n = spec.board_size;
  if (spec.kind == GameKind::ConnectFour) {
    for (int c = 0; c < n; ++c)
      for (int r = 0; r + 1 < n; ++r)
        if (cells[r * n + c] != 0 && cells[(r + 1) * n + c] == 0)
          throw ConfigError("connect four column " + std::to_string(c) + " has a floating piece");
  }
  int pieces = 0;
  for (auto v : cells) pieces += v != 0;
  const int plies = spec.kind == GameKind::Othello ? std::max(0, pieces - 4) : pieces;
  GameState s(spec, std::move(cells), to_move, plies);
  s.outcome_ = s.scan_outcome();
  return s;
}

int GameState::piece_count() const {
  return static_cast<int>(std::count_if(cells_.begin(), cells_.end(), [](auto v) { return v != 0; }));
}

Move GameState::pass_move() const { return spec_.kind == GameKind::Othello ? spec_.cells() : -1; }

bool GameState::othello_has_flip(int cell, int colour) const {
  if (cells_[cell] != 0) return false;
  const int n = spec_.board_size, r0 = cell / n, c0 = cell % n;
  for (auto [dr, dc] : kAllDirections) {
    int r = r0 + dr, c = c0 + dc, seen = 0;
    while (r >= 0 && r < n && c >= 0 && c < n && cells_[r * n + c] == -colour) {
      r += dr;
      c += dc;
      ++seen;
    }
    if (seen > 0 && r >= 0 && r < n && c >= 0 && c < n && cells_[r * n + c] == colour) return true;
  }
  return false;
}

bool GameState::othello_any_flip(int colour) const {
  for (int i = 0; i < spec_.cells(); ++i)
    if (othello_has_flip(i, colour)) return true;
  return false;
}

std::vector<Move> GameState::legal_moves() const {
  std::vector<Move> moves;
  if (terminal()) return moves;
  const int n = spec_.board_size;
  switch (spec_.kind) {
    case GameKind::Othello:
      for (int i = 0; i < spec_.cells(); ++i)
        if (othello_has_flip(i, sign(to_move_))) moves.push_back(i);
      if (moves.empty()) moves.push_back(pass_move());
      break;
    case GameKind::ConnectFour:
      for (int c = 0; c < n; ++c)
        if (cells_[c] == 0) moves.push_back(c);
      break;
    case GameKind::Gobang:
      for (int i = 0; i < spec_.cells(); ++i)
        if (cells_[i] == 0) moves.push_back(i);
      break;
  }
  return moves;
}

bool GameState::is_legal(Move m) const {
  if (terminal() || m < 0 || m >= action_count()) return false;
  switch (spec_.kind) {
    case GameKind::Othello:
      if (m == pass_move()) return !othello_any_flip(sign(to_move_));
      return othello_has_flip(m, sign(to_move_));
    case GameKind::ConnectFour: return cells_[m] == 0;
    case GameKind::Gobang: return cells_[m] == 0;
  }
  return false;
}

bool GameState::line_through(int cell) const {
  const int n = spec_.board_size, colour = cells_[cell];
  if (colour == 0) return false;
  const int r0 = cell / n, c0 = cell % n;
  for (auto [dr, dc] : kLineDirections) {
    int run = 1;
    for (int dir : {1, -1}) {
      int r = r0 + dir * dr, c = c0 + dir * dc;
      while (r >= 0 && r < n && c >= 0 && c < n && cells_[r * n + c] == colour) {
        ++run;
        r += dir * dr;
        c += dir * dc;
      }
    }
    if (run >= spec_.win_length) return true;
  }
  return false;
}

Outcome GameState::othello_outcome() const {
  const bool full = std::none_of(cells_.begin(), cells_.end(), [](auto v) { return v == 0; });
  if (!full && (othello_any_flip(1) || othello_any_flip(-1))) return Outcome::ongoing();
  int balance = 0;
  for (auto v : cells_) balance += v;
  if (balance > 0) return Outcome::win(Player::First);
  if (balance < 0) return Outcome::win(Player::Second);
  return Outcome::draw();
}

Outcome GameState::scan_outcome() const {
  if (spec_.kind == GameKind::Othello) return othello_outcome();
  bool first = false, second = false;
  for (int i = 0; i < spec_.cells(); ++i) {
    if (cells_[i] != 0 && line_through(i)) (cells_[i] > 0 ? first : second) = true;
  }
  // Both colours having a line cannot arise in play; the player who moved last is credited.
  if (first && second) return Outcome::win(opponent(to_move_));
  if (first) return Outcome::win(Player::First);
  if (second) return Outcome::win(Player::Second);
  if (std::none_of(cells_.begin(), cells_.end(), [](auto v) { return v == 0; })) return Outcome::draw();
  return Outcome::ongoing();
}

GameState GameState::apply(Move m) const {
  if (terminal()) throw IllegalMoveError("move " + std::to_string(m) + " played in a terminal position");
  if (!is_legal(m))
    throw IllegalMoveError("illegal move " + std::to_string(m) + " for " + std::string(to_string(kind())));
  const int n = spec_.board_size, colour = sign(to_move_);
  GameState next(spec_, cells_, opponent(to_move_), plies_ + 1);
  auto& b = next.cells_;
  switch (spec_.kind) {
    case GameKind::Othello: {
      if (m != pass_move()) {
        const int r0 = m / n, c0 = m % n;
        b[m] = static_cast<std::int8_t>(colour);
        for (auto [dr, dc] : kAllDirections) {
          int r = r0 + dr, c = c0 + dc, seen = 0;
          while (r >= 0 && r < n && c >= 0 && c < n && b[r * n + c] == -colour) {
            r += dr;
            c += dc;
            ++seen;
          }
          if (seen == 0 || r < 0 || r >= n || c < 0 || c >= n || b[r * n + c] != colour) continue;
          for (int k = 1; k <= seen; ++k) b[(r0 + k * dr) * n + (c0 + k * dc)] = static_cast<std::int8_t>(colour);
        }
      }
      next.outcome_ = next.othello_outcome();
      break;
    }
    case GameKind::ConnectFour:
    case GameKind::Gobang: {
      int cell = m;
      if (spec_.kind == GameKind::ConnectFour) {
        int row = n - 1;
        while (b[row * n + m] != 0) --row;
        cell = row * n + m;
      }
      b[cell] = static_cast<std::int8_t>(colour);
      if (next.line_through(cell)) {
        next.outcome_ = Outcome::win(to_move_);
      } else if (std::none_of(b.begin(), b.end(), [](auto v) { return v == 0; })) {
        next.outcome_ = Outcome::draw();
      } else {
        next.outcome_ = Outcome::ongoing();
      }
      break;
    }
  }
  return next;
}

std::string GameState::key() const {
  std::string k(cells_.size(), '\0');
  const int s = sign(to_move_);
  for (std::size_t i = 0; i < cells_.size(); ++i) k[i] = static_cast<char>(cells_[i] * s + 1);
  return k;
}

std::string GameState::render() const {
  std::string out;
  const int n = spec_.board_size;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int v = at(r, c);
      out += v > 0 ? 'X' : v < 0 ? 'O' : '.';
    }
    out += '\n';
  }
  return out;
}

GameState new_game(GameKind kind, int board_size, int win_length) {
  return GameState::initial(GameSpec{kind, board_size, win_length});
}

Encoding encode_state(const GameState& s) {
  Encoding e(s.cells().size());
  const int m = sign(s.to_move());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<float>(s.cells()[i] * m);
  return e;
}

GameState decode_state(const GameSpec& spec, const Encoding& encoding) {
  std::vector<std::int8_t> cells(encoding.size());
  for (std::size_t i = 0; i < encoding.size(); ++i)
    cells[i] = static_cast<std::int8_t>(encoding[i] > 0.5f ? 1 : encoding[i] < -0.5f ? -1 : 0);
  return GameState::from_board(spec, std::move(cells), Player::First);
}

std::vector<std::pair<Encoding, std::vector<float>>> symmetries(
    const GameSpec& spec, const Encoding& encoding, const std::vector<float>& policy) {
  const int n = spec.board_size;
  std::vector<std::pair<Encoding, std::vector<float>>> out;
  if (spec.kind == GameKind::ConnectFour) {
    out.emplace_back(encoding, policy);
    Encoding e(encoding.size());
    std::vector<float> p(policy.size());
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) e[r * n + (n - 1 - c)] = encoding[r * n + c];
    for (int c = 0; c < n; ++c) p[n - 1 - c] = policy[c];
    out.emplace_back(std::move(e), std::move(p));
    return out;
  }
  // Transform t: rotate t%4 quarter turns, then mirror columns when t>=4.
  for (int t = 0; t < 8; ++t) {
    Encoding e(encoding.size());
    std::vector<float> p(policy);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        int rr = r, cc = c;
        for (int q = 0; q < t % 4; ++q) {
          const int tmp = rr;
          rr = cc;
          cc = n - 1 - tmp;
        }
        if (t >= 4) cc = n - 1 - cc;
        e[rr * n + cc] = encoding[r * n + c];
        p[rr * n + cc] = policy[r * n + c];
      }
    }
    out.emplace_back(std::move(e), std::move(p));
  }
  return out;
}

}  // namespace warmstart
