// Command-line front end: generate graphs, optimize fusion-based generation
// schedules, compute success-probability distributions, and run parameter
// sweeps over random graphs.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fusegraph/families.hpp"
#include "fusegraph/io.hpp"
#include "fusegraph/optimizer.hpp"
#include "fusegraph/succprob.hpp"

namespace fg = fusegraph;
namespace fs = std::filesystem;

namespace {

struct GraphInput {
  fg::Graph graph;
  std::string description;  // family spec or file path
  std::uint64_t content_hash = 0;
};

GraphInput load_graph(const std::string& arg, std::uint64_t seed) {
  GraphInput in;
  in.description = arg;
  if (fs::exists(arg) && fs::is_regular_file(arg)) {
    std::ifstream file(arg);
    std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    in.graph = fg::graph_from_json(fg::json::parse(text));
    in.content_hash = fg::fnv1a64(text);
  } else {
    fg::FamilySpec spec = fg::FamilySpec::parse(arg);
    fg::Rng rng(seed);
    in.graph = fg::generate(spec, rng);
    in.content_hash = fg::fnv1a64(fg::to_json(in.graph).dump());
  }
  return in;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path.string());
  out << content;
}

// Common optimize options shared by `optimize` and `succprob`.
struct OptimizeOptions {
  std::string graph_arg;
  double p_succ = 0.5;
  std::optional<double> loss;
  std::string measure = "overhead";
  std::string strategy = "full";
  std::uint64_t seed = 0;
  std::uint64_t fixed = 0;
  std::uint64_t adaptive = 0;
  unsigned threads = 0;

  void attach(CLI::App* cmd, bool graph_required) {
    auto* graph_opt = cmd->add_option("graph", graph_arg,
                                      "graph family spec (e.g. star:6, rhg:2,2,2, "
                                      "parity:3star,4,4, er:12,40) or graph JSON file");
    if (graph_required) graph_opt->required();
    cmd->add_option("--p-succ", p_succ, "fusion success probability in (0, 1]");
    cmd->add_option("--loss", loss,
                    "per-photon loss; sets p-succ = (1 - loss)^2 / 2")
        ->excludes("--p-succ");
    cmd->add_option("--measure", measure, "overhead | fusions")
        ->check(CLI::IsMember({"overhead", "fusions"}));
    cmd->add_option("--strategy", strategy, "full | s1 (no unraveling) | s2 (random order)")
        ->check(CLI::IsMember({"full", "s1", "s2"}));
    cmd->add_option("--seed", seed, "master seed for all randomness");
    cmd->add_option("--fixed", fixed, "run exactly N trials");
    cmd->add_option("--adaptive", adaptive, "adaptive iteration with initial batch size M")
        ->excludes("--fixed");
    cmd->add_option("--threads", threads, "worker threads (default: FUSEGRAPH_THREADS or all)");
  }

  fg::StrategyConfig config() const {
    fg::StrategyConfig cfg;
    cfg.p_succ = loss ? fg::p_succ_from_loss(*loss) : p_succ;
    cfg.measure = measure == "fusions" ? fg::Measure::Fusions : fg::Measure::Overhead;
    cfg.master_seed = seed;
    return fg::StrategyConfig::with_strategy(cfg, strategy);
  }

  fg::IterationPlan plan() const {
    if (adaptive > 0) return fg::IterationPlan::adaptive(adaptive);
    return fg::IterationPlan::fixed(fixed > 0 ? fixed : 100);
  }
};

fg::json make_manifest(const std::string& command, const std::vector<std::string>& argv,
                       const GraphInput& input, const fg::json& config_echo, double wall_ms,
                       const std::vector<std::string>& written) {
  return fg::json{{"tool", fg::kToolName},
                  {"version", fg::kToolVersion},
                  {"command", command},
                  {"argv", argv},
                  {"input", {{"spec", input.description}, {"fnv64", fg::hex64(input.content_hash)}}},
                  {"config", config_echo},
                  {"wall_ms", wall_ms},
                  {"written", written}};
}

std::vector<std::string> collect_argv(int argc, char** argv) {
  return std::vector<std::string>(argv, argv + argc);
}

int run_gen(const std::string& graph_arg, std::uint64_t seed, const std::string& out,
            const std::string& dot) {
  GraphInput in = load_graph(graph_arg, seed);
  std::cout << "vertices = " << in.graph.vertex_count() << "\n"
            << "edges = " << in.graph.edge_count() << "\n";
  if (!out.empty()) write_file(out, fg::to_json(in.graph).dump(2) + "\n");
  if (!dot.empty()) write_file(dot, fg::to_dot(in.graph));
  return 0;
}

int run_optimize(const OptimizeOptions& opts, const std::string& out_dir, bool dot,
                 const std::vector<std::string>& argv) {
  auto t0 = std::chrono::steady_clock::now();
  GraphInput in = load_graph(opts.graph_arg, opts.seed);
  fg::StrategyConfig cfg = opts.config();
  fg::Outcome outcome = fg::optimize(in.graph, cfg, opts.plan(), opts.threads);

  // Expected number of fusion attempts for the chosen schedule, reported
  // alongside the optimized measure.
  double fusion_attempts =
      fg::evaluate_order(outcome.network, outcome.schedule.flattened(), cfg.p_succ,
                         fg::Measure::Fusions);

  std::cout << "Q_opt = " << outcome.q_opt << " (" << fg::to_string(cfg.measure)
            << " measure)\n"
            << "fusions = " << fusion_attempts << " (expected attempts)\n"
            << "trials = " << outcome.trials_run << " (best at trial " << outcome.trial_index
            << ")\n";

  if (!out_dir.empty()) {
    fs::path dir(out_dir);
    std::vector<std::string> written;
    auto emit = [&](const std::string& name, const std::string& content) {
      write_file(dir / name, content);
      written.push_back(name);
    };
    emit("outcome.json", fg::to_json(outcome, cfg).dump(2) + "\n");
    emit("schedule.json", fg::to_json(outcome.schedule).dump(2) + "\n");
    if (dot) {
      emit("graph.dot", fg::to_dot(outcome.unravel_result.original));
      emit("unraveled.dot", fg::to_dot(outcome.unravel_result));
      emit("network.dot", fg::to_dot(outcome.network, &outcome.schedule));
    }
    double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    write_file(dir / "manifest.json",
               make_manifest("optimize", argv, in, fg::to_json(cfg), wall_ms, written).dump(2) +
                   "\n");
  }
  return 0;
}

int run_succprob(const OptimizeOptions& opts, const std::string& outcome_file,
                 std::uint64_t c_max, std::optional<double> target, const std::string& out_csv,
                 const std::vector<std::string>& argv) {
  auto t0 = std::chrono::steady_clock::now();
  fg::Outcome outcome;
  fg::StrategyConfig cfg;
  GraphInput in;
  if (!outcome_file.empty()) {
    std::ifstream file(outcome_file);
    if (!file) throw std::invalid_argument("cannot read " + outcome_file);
    std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    std::tie(outcome, cfg) = fg::outcome_from_json(fg::json::parse(text));
    in.description = outcome_file;
    in.content_hash = fg::fnv1a64(text);
  } else {
    if (opts.graph_arg.empty())
      throw std::invalid_argument("need a graph spec or --outcome file");
    in = load_graph(opts.graph_arg, opts.seed);
    cfg = opts.config();
    outcome = fg::optimize(in.graph, cfg, opts.plan(), opts.threads);
  }

  fg::OverheadDistribution dist =
      fg::distribution(outcome.network, outcome.schedule, cfg.p_succ, c_max);
  std::cout << "min_count = " << dist.min_count << "\n"
            << "q = " << outcome.q_opt << "\n"
            << "tail_mass_beyond_cmax = " << dist.unassigned_tail() << "\n";
  if (target) std::cout << "quantile(" << *target << ") = " << fg::quantile(dist, *target) << "\n";

  if (!out_csv.empty()) {
    std::ostringstream csv;
    csv << "c,pmf,cmf\n";
    csv.precision(17);
    for (std::size_t c = dist.min_count; c <= dist.c_max; ++c)
      csv << c << "," << dist.pmf_at(c) + 0.0 << "," << dist.cmf_at(c) + 0.0 << "\n";
    write_file(out_csv, csv.str());
    fs::path manifest = fs::path(out_csv).replace_extension(".manifest.json");
    double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    write_file(manifest, make_manifest("succprob", argv, in, fg::to_json(cfg), wall_ms,
                                       {fs::path(out_csv).filename().string()})
                             .dump(2) +
                             "\n");
  }
  return 0;
}

int run_sweep(const std::vector<std::uint64_t>& sizes, const std::vector<double>& ratios,
              const std::vector<double>& probs, std::uint64_t samples,
              const std::string& strategies_arg, std::uint64_t trials, std::uint64_t adaptive,
              std::uint64_t seed, unsigned threads, const std::string& out_csv,
              const std::vector<std::string>& argv) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> strategies;
  {
    std::istringstream sin(strategies_arg);
    std::string tok;
    while (std::getline(sin, tok, ',')) strategies.push_back(tok);
  }
  std::ostringstream csv;
  csv << "vertices,edges,ratio,p_succ,sample,strategy,q_opt,trials,millis\n";
  csv.precision(12);

  for (std::uint64_t n : sizes)
    for (double ratio : ratios) {
      std::uint64_t edges = static_cast<std::uint64_t>(ratio * fg::max_edges(n) + 0.5);
      if (edges > fg::max_edges(n)) {
        std::cerr << "warning: skipping infeasible |E| for |V| = " << n << "\n";
        continue;
      }
      for (std::uint64_t sample = 0; sample < samples; ++sample) {
        // Resample until every component can host a 3-qubit resource state.
        fg::Rng sample_rng(fg::Rng::splitmix64(seed + 1) ^
                           fg::Rng::splitmix64((n << 32) + (edges << 8) + sample));
        fg::Graph graph;
        bool ok = false;
        for (int attempt = 0; attempt < 500 && !ok; ++attempt) {
          graph = fg::generate(fg::FamilySpec::er(n, edges), sample_rng);
          ok = true;
          for (const auto& comp : graph.connected_components()) ok = ok && comp.size() >= 3;
        }
        if (!ok) {
          std::cerr << "warning: no usable sample for |V| = " << n << ", |E| = " << edges
                    << "; skipping\n";
          continue;
        }
        for (double p : probs)
          for (const std::string& strategy : strategies) {
            fg::StrategyConfig cfg;
            cfg.p_succ = p;
            cfg.master_seed = seed + sample;
            cfg = fg::StrategyConfig::with_strategy(cfg, strategy);
            fg::IterationPlan plan = adaptive > 0 ? fg::IterationPlan::adaptive(adaptive)
                                                  : fg::IterationPlan::fixed(trials);
            auto trial_t0 = std::chrono::steady_clock::now();
            fg::Outcome out = fg::optimize(graph, cfg, plan, threads);
            double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - trial_t0)
                            .count();
            csv << n << "," << edges << "," << ratio << "," << p << "," << sample << ","
                << strategy << "," << out.q_opt << "," << out.trials_run << "," << ms << "\n";
          }
      }
    }

  if (out_csv.empty()) {
    std::cout << csv.str();
  } else {
    write_file(out_csv, csv.str());
    GraphInput pseudo;
    pseudo.description = "er sweep";
    fs::path manifest = fs::path(out_csv).replace_extension(".manifest.json");
    double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    write_file(manifest,
               make_manifest("sweep", argv, pseudo, fg::json{{"seed", seed}}, wall_ms,
                             {fs::path(out_csv).filename().string()})
                   .dump(2) +
                   "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fusion-based graph state generation: schedules, overheads and "
               "success probabilities"};
  app.require_subcommand(1);
  std::vector<std::string> argv_copy = collect_argv(argc, argv);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph and write it as JSON/DOT");
  std::string gen_graph, gen_out, gen_dot;
  std::uint64_t gen_seed = 0;
  gen->add_option("graph", gen_graph, "family spec or graph JSON file")->required();
  gen->add_option("--seed", gen_seed, "seed for randomized families");
  gen->add_option("--out", gen_out, "output JSON path");
  gen->add_option("--dot", gen_dot, "output DOT path");

  // optimize
  auto* opt = app.add_subcommand("optimize", "search for a resource-efficient schedule");
  OptimizeOptions opt_opts;
  opt_opts.attach(opt, true);
  std::string opt_out;
  bool opt_dot = false;
  opt->add_option("--out", opt_out, "output directory for outcome/schedule/manifest");
  opt->add_flag("--dot", opt_dot, "also write graph/unraveled/network DOT files");

  // succprob
  auto* sp = app.add_subcommand("succprob",
                                "success probability distribution of the resource count");
  OptimizeOptions sp_opts;
  sp_opts.attach(sp, false);
  std::string sp_outcome, sp_csv;
  std::uint64_t sp_cmax = 0;
  std::optional<double> sp_target;
  sp->add_option("--outcome", sp_outcome, "outcome JSON produced by optimize");
  sp->add_option("--cmax", sp_cmax, "largest resource count to expand")->required();
  sp->add_option("--target", sp_target, "print the smallest c with P_succ(c) >= target");
  sp->add_option("--out", sp_csv, "CSV output path (c,pmf,cmf)");

  // sweep
  auto* sw = app.add_subcommand("sweep", "optimize random graphs over a parameter grid");
  std::vector<std::uint64_t> sw_sizes;
  std::vector<double> sw_ratios, sw_probs = {0.5};
  std::uint64_t sw_samples = 10, sw_trials = 100, sw_adaptive = 0, sw_seed = 0;
  unsigned sw_threads = 0;
  std::string sw_strategies = "full", sw_out;
  sw->add_option("--sizes", sw_sizes, "vertex counts")->required();
  sw->add_option("--ratios", sw_ratios, "edge densities |E| / |E|_max")->required();
  sw->add_option("--p-succ", sw_probs, "fusion success probabilities");
  sw->add_option("--samples", sw_samples, "graphs per grid cell");
  sw->add_option("--strategies", sw_strategies, "comma list of full,s1,s2");
  sw->add_option("--trials", sw_trials, "fixed trials per graph");
  sw->add_option("--adaptive", sw_adaptive, "adaptive iteration instead of fixed trials");
  sw->add_option("--seed", sw_seed, "master seed");
  sw->add_option("--threads", sw_threads, "worker threads");
  sw->add_option("--out", sw_out, "CSV output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return run_gen(gen_graph, gen_seed, gen_out, gen_dot);
    if (opt->parsed()) return run_optimize(opt_opts, opt_out, opt_dot, argv_copy);
    if (sp->parsed())
      return run_succprob(sp_opts, sp_outcome, sp_cmax, sp_target, sp_csv, argv_copy);
    if (sw->parsed())
      return run_sweep(sw_sizes, sw_ratios, sw_probs, sw_samples, sw_strategies, sw_trials,
                       sw_adaptive, sw_seed, sw_threads, sw_out, argv_copy);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const fg::NumericDegeneracyError& e) {
    std::cerr << "numeric degeneracy: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
