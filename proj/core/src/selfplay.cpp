#include "warmstart/selfplay.hpp"

#include <chrono>
#include <fstream>

#include "warmstart/checkpoint.hpp"
#include "warmstart/csv.hpp"
#include "warmstart/errors.hpp"
#include "warmstart/parallel.hpp"

namespace warmstart {
namespace fs = std::filesystem;

std::vector<TrainingExample> run_episode(const SearchStrategy& strategy, std::shared_ptr<const Model> model,
                                         const PipelineConfig& cfg, Rng& rng) {
  Mcts mcts(cfg.search(), strategy, network_evaluator(std::move(model)));
  struct Step {
    Encoding state;
    std::vector<float> policy;
    Player mover;
  };
  std::vector<Step> steps;
  GameState s = GameState::initial(cfg.game);
  while (!s.terminal()) {
    const auto pi = mcts.search(s, rng);
    steps.push_back({encode_state(s), std::vector<float>(pi.begin(), pi.end()), s.to_move()});
    const Move m = s.plies() < cfg.temperature_moves ? rng.categorical(pi) : argmax(pi);
    s = s.apply(m);
  }
  std::vector<TrainingExample> out;
  for (auto& step : steps) {
    const float z = static_cast<float>(s.outcome().value_for(step.mover));
    if (cfg.symmetry) {
      for (auto& [enc, pol] : symmetries(cfg.game, step.state, step.policy))
        out.push_back({std::move(enc), std::move(pol), z});
    } else {
      out.push_back({std::move(step.state), std::move(step.policy), z});
    }
  }
  return out;
}

bool arena_accepts(int wins, int losses, double u) {
  if (wins + losses == 0) return false;
  return static_cast<double>(wins) / (wins + losses) > u;
}

ArenaResult arena_compare(std::shared_ptr<const Model> candidate, std::shared_ptr<const Model> incumbent,
                          const PipelineConfig& cfg, std::uint64_t seed, int workers) {
  if (!(candidate->shape() == incumbent->shape()))
    throw std::invalid_argument("arena models have different architectures");
  auto spec_for = [&](const char* name) {
    AgentSpec spec;
    spec.kind = AgentKind::NeuralMcts;
    spec.name = name;
    spec.simulations = cfg.simulations;
    spec.c_puct = cfg.c_puct;
    spec.opening_plies = cfg.opening_plies;
    return spec;
  };
  const AgentFactory a(spec_for("candidate"), std::move(candidate));
  const AgentFactory b(spec_for("incumbent"), std::move(incumbent));
  ArenaResult result;
  result.record = play_match(cfg.game, a, b, cfg.arena_games, seed, workers);
  result.wins = result.record.wins_a;
  result.losses = result.record.wins_b;
  result.draws = result.record.draws;
  result.accepted = arena_accepts(result.wins, result.losses, cfg.update_threshold);
  return result;
}

namespace {

Model initial_model(const PipelineConfig& cfg) {
  Rng rng = Rng::derive(cfg.seed, {tag_of("init")});
  return Model(architecture_for(cfg.game), rng);
}

}  // namespace

Pipeline::Pipeline(RunConfig cfg) : Pipeline(cfg, initial_model(cfg.pipeline), ReplayBuffer(cfg.pipeline.retrain_iterations)) {}

Pipeline::Pipeline(RunConfig cfg, Model incumbent, ReplayBuffer buffer)
    : cfg_(std::move(cfg)), incumbent_(std::make_shared<const Model>(std::move(incumbent))), buffer_(std::move(buffer)) {
  validate(cfg_);
}

SearchStrategy Pipeline::strategy_for(int i) const {
  const auto& p = cfg_.pipeline;
  return make_enhanced_searcher(p.enhancement, i, p.warm_iterations, p.rave_equivalence());
}

IterationReport Pipeline::run_iteration(int i,
                                        const std::function<void(const std::vector<TrainingExample>&)>& after_selfplay) {
  const auto& p = cfg_.pipeline;
  if (i < 0 || i >= p.iterations) throw std::invalid_argument("iteration index out of range");
  const auto start = std::chrono::steady_clock::now();
  IterationReport report;
  report.iteration = i;

  const SearchStrategy strategy = strategy_for(i);
  std::vector<std::vector<TrainingExample>> episodes(p.episodes);
  parallel_for(p.episodes, cfg_.workers, [&](int e) {
    Rng rng = Rng::derive(p.seed, {tag_of("episode"), static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(e)});
    episodes[e] = run_episode(strategy, incumbent_, p, rng);
  });
  std::vector<TrainingExample> examples;
  for (auto& ep : episodes)
    for (auto& ex : ep) examples.push_back(std::move(ex));
  report.examples = examples.size();
  if (after_selfplay) after_selfplay(examples);
  buffer_.append(std::move(examples));

  Rng train_rng = Rng::derive(p.seed, {tag_of("train"), static_cast<std::uint64_t>(i)});
  TrainResult trained = train(*incumbent_, buffer_, p.train(), train_rng);
  report.losses = trained.epoch_losses;
  report.mean_loss = report.losses.empty() ? 0.0 : report.losses.back();

  auto candidate = std::make_shared<const Model>(std::move(trained.model));
  const std::uint64_t arena_seed = Rng::derive(p.seed, {tag_of("arena"), static_cast<std::uint64_t>(i)}).engine()();
  const ArenaResult arena = arena_compare(candidate, incumbent_, p, arena_seed, cfg_.workers);
  report.arena_wins = arena.wins;
  report.arena_draws = arena.draws;
  report.arena_losses = arena.losses;
  report.accepted = arena.accepted;
  if (arena.accepted) incumbent_ = candidate;

  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

fs::path checkpoint_path(const fs::path& run_dir, int iteration) {
  return run_dir / "checkpoints" / ("iter_" + std::to_string(iteration) + ".ckpt");
}

fs::path examples_path(const fs::path& run_dir, int iteration) {
  return run_dir / "buffer" / ("iter_" + std::to_string(iteration) + ".examples");
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void append_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

TrainLoopResult train_loop(const RunConfig& cfg, const TrainLoopOptions& options) {
  validate(cfg);
  const auto& p = cfg.pipeline;
  const fs::path dir = cfg.output_dir;
  const fs::path snapshot = dir / "config.snapshot";
  const fs::path reports_csv = dir / "reports.csv";
  const fs::path timing_csv = dir / "timing.csv";

  std::vector<IterationReport> done;
  std::optional<Pipeline> pipeline;
  if (fs::exists(snapshot)) {
    const std::uint64_t stored = read_snapshot_hash(snapshot);
    if (stored != config_hash(cfg))
      throw ConfigError("refusing to resume " + dir.string() + ": its configuration hash differs from this run");
    if (fs::exists(reports_csv)) done = parse_reports(read_csv(reports_csv));
    for (std::size_t k = 0; k < done.size(); ++k)
      if (done[k].iteration != static_cast<int>(k))
        throw CorruptFileError(reports_csv.string() + ": iterations are not consecutive from 0");
  }
  if (done.empty()) {
    fs::create_directories(dir / "checkpoints");
    fs::create_directories(dir / "buffer");
    write_text(snapshot, config_snapshot(cfg));
    write_text(reports_csv, to_csv_text(CsvTable{report_header(), {}}));
    write_text(timing_csv, csv_line({"i", "seconds"}));
    pipeline.emplace(cfg);
  } else {
    const int last = done.back().iteration;
    Model incumbent = load_checkpoint(checkpoint_path(dir, last), p.game);
    ReplayBuffer buffer(p.retrain_iterations);
    for (int k = std::max(0, last - p.retrain_iterations + 1); k <= last; ++k)
      buffer.append(load_examples(examples_path(dir, k)));
    pipeline.emplace(cfg, std::move(incumbent), std::move(buffer));
  }

  TrainLoopResult result{pipeline->incumbent(), {}, static_cast<int>(done.size())};
  int ran = 0;
  for (int i = result.resumed_from; i < p.iterations; ++i) {
    if (options.max_new_iterations && ran >= *options.max_new_iterations) break;
    IterationReport report = pipeline->run_iteration(
        i, [&](const std::vector<TrainingExample>& examples) { save_examples(examples_path(dir, i), examples); });
    save_checkpoint(checkpoint_path(dir, i), p.game, pipeline->incumbent());
    append_text(reports_csv, csv_line(report_row(report)));
    append_text(timing_csv, csv_line({std::to_string(i), format_double(report.seconds)}));
    if (options.on_report) options.on_report(report);
    result.reports.push_back(std::move(report));
    ++ran;
  }
  result.model = pipeline->incumbent();
  return result;
}

}  // namespace warmstart
