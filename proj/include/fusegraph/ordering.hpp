#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "fusegraph/fusion_network.hpp"
#include "fusegraph/matching.hpp"
#include "fusegraph/rng.hpp"

namespace fusegraph {

enum class Measure { Overhead, Fusions };

inline const char* to_string(Measure m) {
  return m == Measure::Overhead ? "overhead" : "fusions";
}

// Weighted multigraph view of a fusion network during link contraction.
// Under the overhead measure a node weight is the expected number of basic
// resource states behind it; under the fusions measure it is the expected
// number of fusion attempts.
class ContractionState {
 public:
  ContractionState(const FusionNetwork& net, double p_succ, Measure measure)
      : p_succ_(p_succ), measure_(measure) {
    if (!(p_succ > 0.0 && p_succ <= 1.0))
      throw std::invalid_argument("fusion success probability must lie in (0, 1]");
    weight_.assign(net.nodes.size(), measure == Measure::Overhead ? 1.0 : 0.0);
    node_alive_.assign(net.nodes.size(), true);
    for (const NetworkLink& l : net.links) links_.push_back({l.a, l.b, true});
  }

  std::size_t link_count() const { return links_.size(); }
  bool link_alive(std::size_t l) const { return links_[l].alive; }
  std::pair<int, int> link_ends(std::size_t l) const { return {links_[l].a, links_[l].b}; }
  bool is_loop(std::size_t l) const { return links_[l].a == links_[l].b; }
  double node_weight(int n) const { return weight_[n]; }

  std::size_t alive_link_count() const {
    std::size_t c = 0;
    for (const LinkState& l : links_) c += l.alive;
    return c;
  }

  // Weight the merged node would get if this link were contracted now.
  double prospective_weight(std::size_t l) const {
    const LinkState& link = checked(l);
    double extra = measure_ == Measure::Fusions ? 1.0 : 0.0;
    if (link.a == link.b) return (weight_[link.a] + extra) / p_succ_;
    return (weight_[link.a] + weight_[link.b] + extra) / p_succ_;
  }

  // Merge the link's endpoints; parallel links become multi-links and links
  // between the merged pair become loops.
  void contract(std::size_t l) {
    const LinkState link = checked(l);
    links_[l].alive = false;
    double extra = measure_ == Measure::Fusions ? 1.0 : 0.0;
    if (link.a == link.b) {
      weight_[link.a] = (weight_[link.a] + extra) / p_succ_;
      return;
    }
    weight_[link.a] = (weight_[link.a] + weight_[link.b] + extra) / p_succ_;
    node_alive_[link.b] = false;
    for (LinkState& other : links_) {
      if (!other.alive) continue;
      if (other.a == link.b) other.a = link.a;
      if (other.b == link.b) other.b = link.a;
    }
  }

  // Sum of the surviving node weights.
  double total_weight() const {
    double q = 0.0;
    for (std::size_t i = 0; i < weight_.size(); ++i)
      if (node_alive_[i]) q += weight_[i];
    return q;
  }

 private:
  struct LinkState {
    int a, b;
    bool alive;
  };

  const LinkState& checked(std::size_t l) const {
    if (l >= links_.size() || !links_[l].alive)
      throw std::invalid_argument("link is not present in the contraction state");
    return links_[l];
  }

  double p_succ_;
  Measure measure_;
  std::vector<double> weight_;
  std::vector<bool> node_alive_;
  std::vector<LinkState> links_;
};

// Fusion order: each round holds link indices that are contracted in
// parallel, and q_value is the final total weight.
struct FusionSchedule {
  std::vector<std::vector<int>> rounds;
  double q_value = 0.0;
  Measure measure = Measure::Overhead;
  double p_succ = 0.5;

  std::vector<int> flattened() const {
    std::vector<int> out;
    for (const auto& round : rounds) out.insert(out.end(), round.begin(), round.end());
    return out;
  }
};

// Relative tolerance used to group links of (numerically) minimal weight.
inline constexpr double kWeightTieTolerance = 1e-9;

// Min-weight-maximum-matching-first order: each round contracts a maximum
// matching of the subgraph induced by the links of minimal prospective
// weight; when only loops remain at the minimum, one of them is contracted.
inline FusionSchedule determine_order(const FusionNetwork& net, double p_succ, Measure measure,
                                      Rng& rng) {
  ContractionState state(net, p_succ, measure);
  FusionSchedule schedule;
  schedule.measure = measure;
  schedule.p_succ = p_succ;

  while (state.alive_link_count() > 0) {
    double min_weight = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < state.link_count(); ++l)
      if (state.link_alive(l)) min_weight = std::min(min_weight, state.prospective_weight(l));
    std::vector<int> minimal;
    for (std::size_t l = 0; l < state.link_count(); ++l)
      if (state.link_alive(l) &&
          state.prospective_weight(l) <= min_weight * (1.0 + kWeightTieTolerance))
        minimal.push_back(static_cast<int>(l));

    // Random relabeling of the induced subgraph so that matching ties break
    // differently from trial to trial.
    std::vector<int> involved;
    for (int l : minimal) {
      auto [a, b] = state.link_ends(l);
      involved.push_back(a);
      involved.push_back(b);
    }
    std::sort(involved.begin(), involved.end());
    involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
    rng.shuffle(involved);
    std::vector<int> local(involved.size());
    std::map<int, int> to_local;
    for (std::size_t i = 0; i < involved.size(); ++i) to_local[involved[i]] = static_cast<int>(i);

    std::vector<int> nonloop = minimal;
    nonloop.erase(std::remove_if(nonloop.begin(), nonloop.end(),
                                 [&](int l) { return state.is_loop(l); }),
                  nonloop.end());
    rng.shuffle(nonloop);
    std::vector<std::pair<int, int>> edges;
    for (int l : nonloop) {
      auto [a, b] = state.link_ends(l);
      edges.emplace_back(to_local.at(a), to_local.at(b));
    }

    std::vector<int> round;
    for (int e : maximum_matching(static_cast<int>(involved.size()), edges))
      round.push_back(nonloop[e]);
    if (round.empty()) round.push_back(minimal[rng.index(minimal.size())]);
    std::sort(round.begin(), round.end());
    for (int l : round) state.contract(l);
    schedule.rounds.push_back(std::move(round));
  }
  schedule.q_value = state.total_weight();
  return schedule;
}

// Scores an explicit fusion order (one link per step). The order must be a
// permutation of all links.
inline double evaluate_order(const FusionNetwork& net, const std::vector<int>& order,
                             double p_succ, Measure measure) {
  if (order.size() != net.links.size())
    throw std::invalid_argument("order is not a permutation of the network links");
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<int>(i))
      throw std::invalid_argument("order is not a permutation of the network links");
  ContractionState state(net, p_succ, measure);
  for (int l : order) state.contract(static_cast<std::size_t>(l));
  return state.total_weight();
}

}  // namespace fusegraph
