#include "stabilis/game.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace stabilis {

MixedProfile MixedProfile::pure(std::span<const int> action_counts,
                                std::span<const int> actions) {
  if (action_counts.size() != actions.size()) {
    throw std::invalid_argument("pure profile: player count mismatch");
  }
  MixedProfile x;
  x.strategies.resize(action_counts.size());
  for (std::size_t i = 0; i < action_counts.size(); ++i) {
    if (actions[i] < 0 || actions[i] >= action_counts[i]) {
      throw std::invalid_argument("pure profile: action index out of range");
    }
    x.strategies[i].assign(action_counts[i], Rational(0));
    x.strategies[i][actions[i]] = 1;
  }
  return x;
}

void MixedProfile::validate() const {
  for (const auto& strat : strategies) {
    if (strat.empty()) throw std::invalid_argument("profile: empty strategy vector");
    Rational sum(0);
    for (const auto& p : strat) {
      if (p < 0) throw std::invalid_argument("profile: negative probability");
      sum += p;
    }
    if (sum != 1) throw std::invalid_argument("profile: probabilities do not sum to 1");
  }
}

std::size_t Game::num_pure_profiles() const {
  std::size_t n = 1;
  for (int c : action_counts) n *= static_cast<std::size_t>(c);
  return n;
}

std::size_t Game::flat_index(std::span<const int> actions) const {
  std::size_t idx = 0;
  for (int i = 0; i < num_players; ++i) {
    idx = idx * static_cast<std::size_t>(action_counts[i]) +
          static_cast<std::size_t>(actions[i]);
  }
  return idx;
}

const Rational& Game::utility(int player, std::span<const int> actions) const {
  return utilities[player][flat_index(actions)];
}

std::vector<std::vector<Rational>> Game::payoff_matrix(int player) const {
  if (num_players != 2) throw std::invalid_argument("payoff_matrix: two-player games only");
  std::vector<std::vector<Rational>> m(action_counts[0]);
  for (int r = 0; r < action_counts[0]; ++r) {
    m[r].resize(action_counts[1]);
    for (int c = 0; c < action_counts[1]; ++c) {
      m[r][c] = utilities[player][static_cast<std::size_t>(r) * action_counts[1] + c];
    }
  }
  return m;
}

void Game::validate() const {
  if (num_players < 2) throw std::invalid_argument("game: at least two players required");
  if (static_cast<int>(action_counts.size()) != num_players ||
      static_cast<int>(utilities.size()) != num_players) {
    throw std::invalid_argument("game: per-player field count mismatch");
  }
  for (int c : action_counts) {
    if (c < 1) throw std::invalid_argument("game: every player needs at least one action");
  }
  const std::size_t cells = num_pure_profiles();
  for (const auto& tensor : utilities) {
    if (tensor.size() != cells) throw std::invalid_argument("game: utility tensor entry count mismatch");
  }
}

void check_profile_shape(const Game& g, const MixedProfile& x) {
  if (x.num_players() != g.num_players) {
    throw std::invalid_argument("profile/game shape mismatch: player count");
  }
  for (int i = 0; i < g.num_players; ++i) {
    if (static_cast<int>(x.strategies[i].size()) != g.action_counts[i]) {
      throw std::invalid_argument("profile/game shape mismatch: action count");
    }
  }
  x.validate();
}

namespace {

// Tokenized line with comments stripped.
struct Line {
  std::string text;
  std::vector<std::string> tokens;
};

std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    const auto hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line;
    line.text = std::string(raw);
    std::istringstream iss(line.text);
    std::string tok;
    while (iss >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return out;
}

int parse_positive_int(const std::string& tok, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size() || v < 1) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("game file: bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

Game parse_game(std::string_view text) {
  const auto lines = significant_lines(text);
  std::size_t ln = 0;
  auto need_line = [&]() -> const Line& {
    if (ln >= lines.size()) throw std::invalid_argument("game file: unexpected end of input");
    return lines[ln];
  };

  Game g;
  {
    const Line& header = need_line();
    if (header.tokens.size() != 2 || header.tokens[0] != "players:") {
      throw std::invalid_argument("game file: expected 'players: m'");
    }
    g.num_players = parse_positive_int(header.tokens[1], "player count");
    ++ln;
  }
  {
    const Line& header = need_line();
    if (header.tokens.empty() || header.tokens[0] != "actions:") {
      throw std::invalid_argument("game file: expected 'actions: n1 ... nm'");
    }
    if (static_cast<int>(header.tokens.size()) != g.num_players + 1) {
      throw std::invalid_argument("game file: actions line must list one count per player");
    }
    for (int i = 1; i <= g.num_players; ++i) {
      g.action_counts.push_back(parse_positive_int(header.tokens[i], "action count"));
    }
    ++ln;
  }

  std::size_t cells = 1;
  for (int c : g.action_counts) cells *= static_cast<std::size_t>(c);

  for (int player = 0; player < g.num_players; ++player) {
    const Line& header = need_line();
    if (header.tokens.size() != 2 || header.tokens[0] != "utility" ||
        header.tokens[1] != std::to_string(player) + ":") {
      throw std::invalid_argument("game file: expected 'utility " + std::to_string(player) + ":'");
    }
    ++ln;
    std::vector<Rational> tensor;
    tensor.reserve(cells);
    while (tensor.size() < cells) {
      const Line& row = need_line();
      if (row.tokens[0] == "utility" || row.tokens[0] == "players:" || row.tokens[0] == "actions:") {
        throw std::invalid_argument("game file: utility tensor for player " +
                                    std::to_string(player) + " has too few entries");
      }
      for (const auto& tok : row.tokens) {
        if (tensor.size() == cells) {
          throw std::invalid_argument("game file: utility tensor for player " +
                                      std::to_string(player) + " has too many entries");
        }
        tensor.push_back(parse_rational(tok));
      }
      ++ln;
    }
    g.utilities.push_back(std::move(tensor));
  }
  if (ln != lines.size()) {
    throw std::invalid_argument("game file: trailing content after last tensor");
  }
  g.validate();
  return g;
}

std::string serialize_game(const Game& g) {
  std::string out = "players: " + std::to_string(g.num_players) + "\n";
  out += "actions:";
  for (int c : g.action_counts) out += " " + std::to_string(c);
  out += "\n";
  const int row_len = g.action_counts.back();
  for (int player = 0; player < g.num_players; ++player) {
    out += "utility " + std::to_string(player) + ":\n";
    const auto& tensor = g.utilities[player];
    for (std::size_t i = 0; i < tensor.size(); ++i) {
      out += to_string(tensor[i]);
      out += (static_cast<int>(i % row_len) == row_len - 1) ? '\n' : ' ';
    }
  }
  return out;
}

MixedProfile parse_profile(std::string_view text) {
  const auto lines = significant_lines(text);
  if (lines.empty() || lines[0].tokens.size() != 1 || lines[0].tokens[0] != "profile:") {
    throw std::invalid_argument("profile file: expected 'profile:' header");
  }
  MixedProfile x;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    std::vector<Rational> strat;
    for (const auto& tok : lines[ln].tokens) strat.push_back(parse_rational(tok));
    x.strategies.push_back(std::move(strat));
  }
  if (x.strategies.empty()) throw std::invalid_argument("profile file: no strategy vectors");
  x.validate();
  return x;
}

std::string serialize_profile(const MixedProfile& x) {
  std::string out = "profile:\n";
  for (const auto& strat : x.strategies) {
    for (std::size_t i = 0; i < strat.size(); ++i) {
      out += to_string(strat[i]);
      out += (i + 1 == strat.size()) ? '\n' : ' ';
    }
  }
  return out;
}

namespace {

// Walks the product of the players' supports, accumulating probability-
// weighted utilities for all players at once.
void accumulate_expectations(const Game& g,
                             const std::vector<std::vector<std::pair<int, Rational>>>& supports,
                             std::vector<Rational>& totals) {
  const int m = g.num_players;
  std::vector<int> actions(m, 0);
  auto walk = [&](auto&& self, int level, const Rational& prob) -> void {
    if (level == m) {
      const std::size_t idx = g.flat_index(actions);
      for (int j = 0; j < m; ++j) totals[j] += prob * g.utilities[j][idx];
      return;
    }
    for (const auto& [action, p] : supports[level]) {
      actions[level] = action;
      self(self, level + 1, prob * p);
    }
  };
  walk(walk, 0, Rational(1));
}

std::vector<std::vector<std::pair<int, Rational>>> supports_of(const MixedProfile& x) {
  std::vector<std::vector<std::pair<int, Rational>>> supports(x.strategies.size());
  for (std::size_t i = 0; i < x.strategies.size(); ++i) {
    for (std::size_t a = 0; a < x.strategies[i].size(); ++a) {
      if (x.strategies[i][a] != 0) supports[i].emplace_back(static_cast<int>(a), x.strategies[i][a]);
    }
  }
  return supports;
}

}  // namespace

std::vector<Rational> expected_utilities(const Game& g, const MixedProfile& x) {
  check_profile_shape(g, x);
  std::vector<Rational> totals(g.num_players, Rational(0));
  accumulate_expectations(g, supports_of(x), totals);
  return totals;
}

Rational expected_utility(const Game& g, const MixedProfile& x, int player) {
  if (player < 0 || player >= g.num_players) {
    throw std::invalid_argument("expected_utility: player index out of range");
  }
  return expected_utilities(g, x)[player];
}

MixedProfile deviate(const Game& g, const MixedProfile& x,
                     std::span<const int> deviators,
                     std::span<const int> deviation) {
  if (deviators.empty()) throw std::invalid_argument("deviation: empty deviator set");
  if (deviators.size() != deviation.size()) {
    throw std::invalid_argument("deviation: deviator/action arity mismatch");
  }
  MixedProfile out = x;
  for (std::size_t s = 0; s < deviators.size(); ++s) {
    const int i = deviators[s];
    if (i < 0 || i >= g.num_players) throw std::invalid_argument("deviation: player index out of range");
    const int a = deviation[s];
    if (a < 0 || a >= g.action_counts[i]) throw std::invalid_argument("deviation: action index out of range");
    out.strategies[i].assign(g.action_counts[i], Rational(0));
    out.strategies[i][a] = 1;
  }
  return out;
}

Rational deviation_value(const Game& g, const MixedProfile& x,
                         std::span<const int> deviators,
                         std::span<const int> deviation, int observer) {
  if (observer < 0 || observer >= g.num_players) {
    throw std::invalid_argument("deviation_value: observer index out of range");
  }
  return expected_utilities(g, deviate(g, x, deviators, deviation))[observer];
}

namespace {

void require_two_players(const Game& g, const char* op) {
  if (g.num_players != 2) {
    throw std::invalid_argument(std::string(op) + ": two-player games only");
  }
}

}  // namespace

Game swap_negate(const Game& g) {
  require_two_players(g, "swap_negate");
  Game out = g;
  out.utilities[0].clear();
  out.utilities[1].clear();
  for (const auto& u : g.utilities[1]) out.utilities[0].push_back(-u);
  for (const auto& u : g.utilities[0]) out.utilities[1].push_back(-u);
  return out;
}

Game difference_game(const Game& g) {
  require_two_players(g, "difference_game");
  Game out = g;
  for (std::size_t i = 0; i < g.utilities[0].size(); ++i) {
    out.utilities[0][i] = g.utilities[0][i] - g.utilities[1][i];
    out.utilities[1][i] = g.utilities[1][i] - g.utilities[0][i];
  }
  return out;
}

Game paired_zero_sum(const Game& g, int b) {
  require_two_players(g, "paired_zero_sum");
  if (b != 0 && b != 1) throw std::invalid_argument("paired_zero_sum: player must be 0 or 1");
  Game out = g;
  for (std::size_t i = 0; i < g.utilities[b].size(); ++i) {
    out.utilities[b][i] = g.utilities[b][i];
    out.utilities[1 - b][i] = -g.utilities[b][i];
  }
  return out;
}

}  // namespace stabilis
