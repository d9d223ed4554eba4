#include "warmstart/config.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "warmstart/errors.hpp"

namespace warmstart {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) throw ConfigError(key + "=" + v + ": expected an integer");
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  if (v.empty()) throw ConfigError(key + "=: expected a number");
  char* end = nullptr;
  errno = 0;
  const double out = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || errno == ERANGE) throw ConfigError(key + "=" + v + ": expected a number");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError(key + "=" + v + ": expected true or false");
}

ConfigKey int_key(std::string name, std::string desc, int PipelineConfig::*field) {
  const std::string n = name;
  return {std::move(name), std::move(desc), true,
          [n, field](RunConfig& c, const std::string& v) {
            c.pipeline.*field = static_cast<int>(parse_int(n, v));
          },
          [field](const RunConfig& c) { return std::to_string(c.pipeline.*field); }};
}

ConfigKey real_key(std::string name, std::string desc, double PipelineConfig::*field) {
  const std::string n = name;
  return {std::move(name), std::move(desc), true,
          [n, field](RunConfig& c, const std::string& v) { c.pipeline.*field = parse_real(n, v); },
          [field](const RunConfig& c) { return format_double(c.pipeline.*field); }};
}

void require(bool ok, const std::string& key, const std::string& value, const std::string& range) {
  if (!ok) throw ConfigError(key + "=" + value + " out of range: expected " + range);
}

std::uint64_t fnv1a(const std::string& text) { return tag_of(text); }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, p);
}

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> k;
    k.push_back(int_key("I", "number of iterations", &PipelineConfig::iterations));
    k.push_back(int_key("Iprime", "iteration threshold: enhancements active while i < Iprime",
                        &PipelineConfig::warm_iterations));
    k.push_back(int_key("E", "number of self-play episodes per iteration", &PipelineConfig::episodes));
    k.push_back(int_key("Tprime", "step threshold: sample from pi before, argmax after",
                        &PipelineConfig::temperature_moves));
    k.push_back(int_key("m", "MCTS simulations per move", &PipelineConfig::simulations));
    k.push_back(real_key("c", "exploration weight in P-UCT", &PipelineConfig::c_puct));
    k.push_back(int_key("rs", "number of retained (retrain) iterations in the replay buffer",
                        &PipelineConfig::retrain_iterations));
    k.push_back(int_key("ep", "training epochs per iteration", &PipelineConfig::epochs));
    k.push_back(int_key("bs", "minibatch size", &PipelineConfig::batch_size));
    k.push_back(real_key("lr", "learning rate", &PipelineConfig::learning_rate));
    k.push_back(real_key("d", "dropout probability", &PipelineConfig::dropout));
    k.push_back(int_key("n", "number of arena comparison games", &PipelineConfig::arena_games));
    k.push_back(real_key("u", "update threshold: accept when wins/(wins+losses) > u",
                         &PipelineConfig::update_threshold));
    k.push_back({"game", "othello, connect4 or gobang", true,
                 [](RunConfig& c, const std::string& v) { c.pipeline.game.kind = parse_game_kind(v); },
                 [](const RunConfig& c) { return std::string(to_string(c.pipeline.game.kind)); }});
    k.push_back({"board_size", "board edge length", true,
                 [](RunConfig& c, const std::string& v) {
                   c.pipeline.game.board_size = static_cast<int>(parse_int("board_size", v));
                 },
                 [](const RunConfig& c) { return std::to_string(c.pipeline.game.board_size); }});
    k.push_back({"win_length", "stones in a row needed to win (connect4, gobang)", true,
                 [](RunConfig& c, const std::string& v) {
                   c.pipeline.game.win_length = static_cast<int>(parse_int("win_length", v));
                 },
                 [](const RunConfig& c) { return std::to_string(c.pipeline.game.win_length); }});
    k.push_back({"enhancement", "baseline, rollout, rave, rora, wro or wrora", true,
                 [](RunConfig& c, const std::string& v) { c.pipeline.enhancement = parse_enhancement(v); },
                 [](const RunConfig& c) { return std::string(to_string(c.pipeline.enhancement)); }});
    k.push_back({"seed", "master random seed", true,
                 [](RunConfig& c, const std::string& v) {
                   const long long s = parse_int("seed", v);
                   require(s >= 0, "seed", v, "a non-negative integer");
                   c.pipeline.seed = static_cast<std::uint64_t>(s);
                 },
                 [](const RunConfig& c) { return std::to_string(c.pipeline.seed); }});
    k.push_back({"symmetry", "augment training examples with board symmetries", true,
                 [](RunConfig& c, const std::string& v) { c.pipeline.symmetry = parse_bool("symmetry", v); },
                 [](const RunConfig& c) { return std::string(c.pipeline.symmetry ? "true" : "false"); }});
    k.push_back({"equivalence", "RAVE equivalence parameter (default: m)", true,
                 [](RunConfig& c, const std::string& v) {
                   if (v == "auto" || v.empty()) {
                     c.pipeline.equivalence.reset();
                   } else {
                     c.pipeline.equivalence = parse_real("equivalence", v);
                   }
                 },
                 [](const RunConfig& c) {
                   return c.pipeline.equivalence ? format_double(*c.pipeline.equivalence) : std::string("auto");
                 }});
    k.push_back(int_key("opening_plies", "plies sampled from pi at the start of arena and evaluation games",
                        &PipelineConfig::opening_plies));
    k.push_back({"workers", "parallel episode/match workers", false,
                 [](RunConfig& c, const std::string& v) { c.workers = static_cast<int>(parse_int("workers", v)); },
                 [](const RunConfig& c) { return std::to_string(c.workers); }});
    k.push_back({"output_dir", "run directory", false,
                 [](RunConfig& c, const std::string& v) { c.output_dir = v; },
                 [](const RunConfig& c) { return c.output_dir; }});
    return k;
  }();
  return keys;
}

void validate(const RunConfig& cfg) {
  const auto& p = cfg.pipeline;
  auto check_int = [](const char* key, long long v, long long lo, const std::string& range) {
    require(v >= lo, key, std::to_string(v), range);
  };
  check_int("I", p.iterations, 1, "an integer >= 1");
  check_int("Iprime", p.warm_iterations, 0, "an integer >= 0");
  check_int("E", p.episodes, 1, "an integer >= 1");
  check_int("Tprime", p.temperature_moves, 0, "an integer >= 0");
  check_int("m", p.simulations, 1, "an integer >= 1");
  require(p.c_puct > 0.0, "c", format_double(p.c_puct), "a positive real");
  check_int("rs", p.retrain_iterations, 1, "an integer >= 1");
  check_int("ep", p.epochs, 1, "an integer >= 1");
  check_int("bs", p.batch_size, 1, "an integer >= 1");
  require(p.learning_rate > 0.0, "lr", format_double(p.learning_rate), "a positive real");
  require(p.dropout >= 0.0 && p.dropout < 1.0, "d", format_double(p.dropout), "a probability in [0, 1)");
  check_int("n", p.arena_games, 1, "an integer >= 1");
  require(p.update_threshold >= 0.0 && p.update_threshold <= 1.0, "u", format_double(p.update_threshold),
          "a fraction in [0, 1]");
  if (p.equivalence)
    require(*p.equivalence > 0.0, "equivalence", format_double(*p.equivalence), "a positive real or auto");
  check_int("opening_plies", p.opening_plies, 0, "an integer >= 0");
  check_int("workers", cfg.workers, 1, "an integer >= 1");
  p.game.validate();
}

RunConfig parse_config_text(const std::string& text, const ConfigOverrides& overrides) {
  RunConfig cfg;
  auto apply = [&](const std::string& key, const std::string& value) {
    for (const auto& k : config_keys()) {
      if (k.name == key) {
        k.set(cfg, value);
        return;
      }
    }
    throw ConfigError("unknown configuration key '" + key + "'");
  };
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    if (key == "config_hash") continue;
    apply(key, trim(line.substr(eq + 1)));
  }
  for (const auto& [key, value] : overrides) apply(key, value);
  validate(cfg);
  return cfg;
}

RunConfig parse_config(const std::optional<std::filesystem::path>& file, const ConfigOverrides& overrides) {
  std::string text;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ConfigError("cannot read config file " + file->string());
    std::ostringstream os;
    os << in.rdbuf();
    text = os.str();
  }
  return parse_config_text(text, overrides);
}

std::uint64_t config_hash(const RunConfig& cfg) {
  std::string text;
  for (const auto& k : config_keys())
    if (k.hashed) text += k.name + "=" + k.get(cfg) + "\n";
  return fnv1a(text);
}

std::string config_snapshot(const RunConfig& cfg) {
  std::string text;
  for (const auto& k : config_keys()) text += k.name + "=" + k.get(cfg) + "\n";
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  text += "config_hash=" + std::string(hex) + "\n";
  return text;
}

std::uint64_t read_snapshot_hash(const std::filesystem::path& snapshot) {
  std::ifstream in(snapshot);
  if (!in) throw ConfigError("cannot read " + snapshot.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("config_hash=", 0) == 0) return std::stoull(line.substr(12), nullptr, 16);
  }
  throw ConfigError(snapshot.string() + " has no config_hash line");
}

}  // namespace warmstart
