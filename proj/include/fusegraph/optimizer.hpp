#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fusegraph/fusion_network.hpp"
#include "fusegraph/ordering.hpp"
#include "fusegraph/unravel.hpp"

namespace fusegraph {

// Knobs for one optimization run. The two ablation switches reproduce the
// deficient strategies: s1 disables unraveling, s2 replaces the
// min-weight-matching order by a uniformly random one.
struct StrategyConfig {
  double p_succ = 0.5;
  Measure measure = Measure::Overhead;
  bool unraveling = true;
  bool min_weight_ordering = true;
  std::uint64_t master_seed = 0;

  static StrategyConfig with_strategy(StrategyConfig base, const std::string& name) {
    if (name == "full") {
      base.unraveling = true;
      base.min_weight_ordering = true;
    } else if (name == "s1") {
      base.unraveling = false;
      base.min_weight_ordering = true;
    } else if (name == "s2") {
      base.unraveling = true;
      base.min_weight_ordering = false;
    } else {
      throw std::invalid_argument("unknown strategy '" + name + "' (use full, s1 or s2)");
    }
    return base;
  }
};

struct Outcome {
  double q_opt = 0.0;
  UnravelResult unravel_result;
  FusionNetwork network;
  FusionSchedule schedule;
  std::uint64_t trial_index = 0;
  std::uint64_t trials_run = 0;
};

// One randomized pass of unravel -> build network -> order fusions.
// Deterministic in (graph, config, trial_index).
inline Outcome run_trial(const Graph& g, const StrategyConfig& cfg, std::uint64_t trial_index) {
  Rng rng = Rng::for_trial(cfg.master_seed, trial_index);
  Outcome out;
  out.trial_index = trial_index;
  out.unravel_result = unravel(g, rng, cfg.unraveling);
  out.network = build_network(out.unravel_result, rng);
  if (cfg.min_weight_ordering) {
    out.schedule = determine_order(out.network, cfg.p_succ, cfg.measure, rng);
  } else {
    std::vector<int> order(out.network.links.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    ContractionState state(out.network, cfg.p_succ, cfg.measure);
    out.schedule.measure = cfg.measure;
    out.schedule.p_succ = cfg.p_succ;
    for (int l : order) {
      state.contract(static_cast<std::size_t>(l));
      out.schedule.rounds.push_back({l});
    }
    out.schedule.q_value = state.total_weight();
  }
  out.q_opt = out.schedule.q_value;
  return out;
}

struct IterationPlan {
  enum class Mode { Fixed, Adaptive };
  Mode mode = Mode::Fixed;
  std::uint64_t count = 1;  // trial count (fixed) or initial batch size (adaptive)

  static IterationPlan fixed(std::uint64_t m) { return {Mode::Fixed, m}; }
  static IterationPlan adaptive(std::uint64_t m_init) { return {Mode::Adaptive, m_init}; }
};

namespace detail {

inline unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FUSEGRAPH_THREADS")) {
    long n = std::atol(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

struct BestTrial {
  double q = std::numeric_limits<double>::infinity();
  std::uint64_t index = 0;
  bool valid = false;

  // Ties break toward the smallest trial index so that the winner does not
  // depend on scheduling.
  void offer(double q_new, std::uint64_t index_new) {
    if (!valid || q_new < q || (q_new == q && index_new < index)) {
      q = q_new;
      index = index_new;
      valid = true;
    }
  }
};

// Runs trials [begin, end) across workers and reports the batch minimum.
inline BestTrial run_batch(const Graph& g, const StrategyConfig& cfg, std::uint64_t begin,
                           std::uint64_t end, unsigned threads) {
  BestTrial best;
  std::mutex merge_mutex;
  std::atomic<std::uint64_t> cursor{begin};
  std::exception_ptr failure;
  auto worker = [&] {
    BestTrial local;
    try {
      for (;;) {
        std::uint64_t i = cursor.fetch_add(1);
        if (i >= end) break;
        local.offer(run_trial(g, cfg, i).q_opt, i);
      }
    } catch (...) {
      std::scoped_lock lock(merge_mutex);
      if (!failure) failure = std::current_exception();
      return;
    }
    std::scoped_lock lock(merge_mutex);
    if (local.valid) best.offer(local.q, local.index);
  };
  unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(threads, end - begin));
  if (n == 0) n = 1;
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return best;
}

}  // namespace detail

// Repeats randomized trials and returns the best outcome. Fixed mode runs
// exactly `count` trials. Adaptive mode runs batches of size m, 2m, 4m, ...
// and stops once a batch fails to improve on the previous batch's minimum;
// the best outcome over all batches is returned. Results are independent of
// the number of worker threads.
inline Outcome optimize(const Graph& g, const StrategyConfig& cfg, const IterationPlan& plan,
                        unsigned threads = 0) {
  if (plan.count < 1) throw std::invalid_argument("iteration count must be at least 1");
  if (!(cfg.p_succ > 0.0 && cfg.p_succ <= 1.0))
    throw std::invalid_argument("fusion success probability must lie in (0, 1]");
  require_components_of_three(g);
  const unsigned n_threads = detail::resolve_thread_count(threads);

  detail::BestTrial best;
  std::uint64_t next_trial = 0;
  if (plan.mode == IterationPlan::Mode::Fixed) {
    best = detail::run_batch(g, cfg, 0, plan.count, n_threads);
    next_trial = plan.count;
  } else {
    double previous_batch_min = std::numeric_limits<double>::infinity();
    std::uint64_t batch_size = plan.count;
    for (bool first = true;; first = false) {
      detail::BestTrial batch =
          detail::run_batch(g, cfg, next_trial, next_trial + batch_size, n_threads);
      next_trial += batch_size;
      best.offer(batch.q, batch.index);
      if (!first && previous_batch_min <= batch.q) break;
      previous_batch_min = batch.q;
      batch_size *= 2;
    }
  }

  Outcome out = run_trial(g, cfg, best.index);
  out.trials_run = next_trial;
  return out;
}

}  // namespace fusegraph
