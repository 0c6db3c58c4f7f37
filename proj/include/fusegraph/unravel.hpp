#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <variant>
#include <vector>

#include "fusegraph/graph.hpp"
#include "fusegraph/rng.hpp"

namespace fusegraph {

// Bipartitely-complete subgraph: two disjoint parts with every cross edge
// present. Edges inside a part are allowed.
struct Bcs {
  VertexSet part1;
  VertexSet part2;
};

struct BcsUnravelEvent {
  VertexSet part1, part2;
  Vertex w1, w2;  // fresh vertices attached to part1 / part2
};

struct CliqueUnravelEvent {
  VertexSet clique;
  Vertex v0;
  std::optional<Vertex> v1, v2;  // fresh vertices, absent when only an LC was applied
  Vertex lc_vertex;
};

using UnravelEvent = std::variant<BcsUnravelEvent, CliqueUnravelEvent>;

struct UnravelResult {
  Graph original;
  Graph unraveled;
  std::vector<UnravelEvent> journal;
  std::set<Edge> external_fusions;  // pairs still to be fused, normalized
  CliffordRecord cliffords;
};

namespace detail {

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

}  // namespace detail

// Scans the graph in random order for vertex-disjoint bipartitely-complete
// subgraphs. For each unclaimed vertex and each unchecked pair of its
// neighbors, the candidate parts are the common neighborhood of the pair and
// the common neighborhood of that set; a candidate is kept when its first
// part has more than one vertex and neither part touches an earlier find.
inline std::vector<Bcs> find_bcss(const Graph& g, Rng& rng) {
  std::vector<Bcs> found;
  VertexSet claimed;
  std::set<Edge> checked;

  std::vector<Vertex> order = g.vertices();
  rng.shuffle(order);
  for (Vertex v : order) {
    if (claimed.count(v)) continue;
    std::vector<Vertex> unchecked;
    for (Vertex u : g.neighbors(v))
      if (!checked.count(make_edge(v, u))) unchecked.push_back(u);

    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (std::size_t i = 0; i < unchecked.size(); ++i)
      for (std::size_t j = i + 1; j < unchecked.size(); ++j)
        pairs.emplace_back(unchecked[i], unchecked[j]);
    rng.shuffle(pairs);

    for (const auto& [v1, v2] : pairs) {
      if (claimed.count(v1) || claimed.count(v2)) continue;
      VertexSet part1 = detail::set_intersection(g.neighbors(v1), g.neighbors(v2));
      if (part1.size() < 2) continue;
      VertexSet part2;
      bool first = true;
      for (Vertex u : part1) {
        part2 = first ? g.neighbors(u) : detail::set_intersection(part2, g.neighbors(u));
        first = false;
      }
      bool overlap = false;
      for (Vertex u : part1) overlap = overlap || claimed.count(u);
      for (Vertex u : part2) overlap = overlap || claimed.count(u);
      if (overlap) continue;
      claimed.insert(part1.begin(), part1.end());
      claimed.insert(part2.begin(), part2.end());
      found.push_back(Bcs{std::move(part1), std::move(part2)});
    }
    for (Vertex u : g.neighbors(v))
      if (!claimed.count(u)) checked.insert(make_edge(v, u));
  }
  return found;
}

// All maximal cliques with at least three vertices (Bron-Kerbosch with
// pivoting over a degeneracy ordering).
inline std::vector<VertexSet> find_maximal_cliques(const Graph& g) {
  const std::vector<Vertex> verts = g.vertices();
  const std::size_t n = verts.size();
  std::map<Vertex, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx[verts[i]] = i;

  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (Vertex u : g.neighbors(verts[i])) adj[i].push_back(idx.at(u));

  // Degeneracy ordering by repeatedly removing a minimum-degree vertex.
  std::vector<std::size_t> deg(n), order;
  std::vector<bool> removed(n, false);
  for (std::size_t i = 0; i < n; ++i) deg[i] = adj[i].size();
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!removed[i] && (best == n || deg[i] < deg[best])) best = i;
    removed[best] = true;
    order.push_back(best);
    for (std::size_t u : adj[best])
      if (!removed[u]) --deg[u];
  }

  using Bits = std::vector<std::uint64_t>;
  const std::size_t words = (n + 63) / 64;
  auto make_bits = [&] { return Bits(words, 0); };
  auto set_bit = [](Bits& b, std::size_t i) { b[i >> 6] |= 1ULL << (i & 63); };
  auto test_bit = [](const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1; };
  auto count_and = [&](const Bits& a, const Bits& b) {
    std::size_t c = 0;
    for (std::size_t w = 0; w < words; ++w) c += std::popcount(a[w] & b[w]);
    return c;
  };
  std::vector<Bits> nbr(n, make_bits());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t u : adj[i]) set_bit(nbr[i], u);

  std::vector<VertexSet> cliques;
  std::vector<std::size_t> current;

  auto emit = [&] {
    if (current.size() < 3) return;
    VertexSet c;
    for (std::size_t i : current) c.insert(verts[i]);
    cliques.push_back(std::move(c));
  };

  std::function<void(Bits, Bits)> expand = [&](Bits cand, Bits excl) {
    bool cand_empty = true, excl_empty = true;
    for (std::size_t w = 0; w < words; ++w) {
      cand_empty = cand_empty && cand[w] == 0;
      excl_empty = excl_empty && excl[w] == 0;
    }
    if (cand_empty && excl_empty) {
      emit();
      return;
    }
    if (cand_empty) return;
    // Pivot: vertex of cand|excl with most neighbors inside cand.
    std::size_t pivot = n, pivot_score = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (test_bit(cand, i) || test_bit(excl, i)) {
        std::size_t score = count_and(nbr[i], cand);
        if (pivot == n || score > pivot_score) pivot = i, pivot_score = score;
      }
    for (std::size_t i = 0; i < n; ++i) {
      if (!test_bit(cand, i) || test_bit(nbr[pivot], i)) continue;
      Bits next_cand = make_bits(), next_excl = make_bits();
      for (std::size_t w = 0; w < words; ++w) {
        next_cand[w] = cand[w] & nbr[i][w];
        next_excl[w] = excl[w] & nbr[i][w];
      }
      current.push_back(i);
      expand(std::move(next_cand), std::move(next_excl));
      current.pop_back();
      cand[i >> 6] &= ~(1ULL << (i & 63));
      set_bit(excl, i);
    }
  };

  Bits cand = make_bits(), excl = make_bits();
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  for (std::size_t i = 0; i < n; ++i) set_bit(cand, i);
  for (std::size_t v : order) {
    Bits next_cand = make_bits(), next_excl = make_bits();
    for (std::size_t u : adj[v]) {
      if (pos[u] > pos[v]) set_bit(next_cand, u);
      else set_bit(next_excl, u);
    }
    current.push_back(v);
    expand(std::move(next_cand), std::move(next_excl));
    current.pop_back();
  }
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

// Disconnects the two parts of a BCS: all cross edges are removed and two
// fresh vertices w1, w2 are attached to part1 and part2; fusing (w1, w2)
// restores the original graph.
inline std::pair<Graph, BcsUnravelEvent> unravel_bcs(const Graph& g, const Bcs& bcs) {
  if (bcs.part1.size() < 2 || bcs.part2.size() < 2)
    throw std::invalid_argument("BCS parts need at least two vertices each");
  for (Vertex a : bcs.part1) {
    if (bcs.part2.count(a)) throw std::invalid_argument("BCS parts overlap");
    for (Vertex b : bcs.part2)
      if (!g.has_edge(a, b)) throw std::invalid_argument("BCS is missing a cross edge");
  }
  Graph out = g;
  for (Vertex a : bcs.part1)
    for (Vertex b : bcs.part2) out.remove_edge(a, b);
  Vertex w1 = out.mint_fresh();
  Vertex w2 = out.mint_fresh();
  for (Vertex a : bcs.part1) out.add_edge(w1, a);
  for (Vertex b : bcs.part2) out.add_edge(w2, b);
  return {std::move(out), BcsUnravelEvent{bcs.part1, bcs.part2, w1, w2}};
}

// Unravels one maximal clique. Vertices whose whole neighborhood lies inside
// the clique allow a pure local complementation; otherwise a randomly chosen
// member is detached and re-linked through two fresh vertices plus an LC.
inline std::tuple<Graph, CliqueUnravelEvent, CliffordRecord> unravel_clique(
    const Graph& g, const VertexSet& clique, Rng& rng, const CliffordRecord& record) {
  if (clique.size() < 3) throw std::invalid_argument("clique must have more than two vertices");
  for (Vertex a : clique)
    for (Vertex b : clique)
      if (a < b && !g.has_edge(a, b)) throw std::invalid_argument("clique is missing an edge");

  std::vector<Vertex> no_outer;
  for (Vertex a : clique) {
    bool outer = false;
    for (Vertex u : g.neighbors(a)) outer = outer || !clique.count(u);
    if (!outer) no_outer.push_back(a);
  }

  Graph out = g;
  CliffordRecord rec = record;
  CliqueUnravelEvent ev;
  ev.clique = clique;

  if (!no_outer.empty()) {
    ev.v0 = rng.pick(no_outer);
    ev.lc_vertex = ev.v0;
    local_complement_in_place(out, ev.v0, &rec);
  } else {
    std::vector<Vertex> members(clique.begin(), clique.end());
    ev.v0 = rng.pick(members);
    Vertex v1 = out.mint_fresh();
    Vertex v2 = out.mint_fresh();
    for (Vertex a : clique)
      if (a != ev.v0) {
        out.remove_edge(ev.v0, a);
        out.add_edge(v1, a);
      }
    out.add_edge(v2, ev.v0);
    ev.v1 = v1;
    ev.v2 = v2;
    ev.lc_vertex = v1;
    local_complement_in_place(out, v1, &rec);
  }
  return {std::move(out), std::move(ev), std::move(rec)};
}

inline void require_components_of_three(const Graph& g) {
  for (const auto& comp : g.connected_components())
    if (comp.size() < 3)
      throw std::invalid_argument(
          "graph has a connected component with fewer than 3 vertices (vertex " +
          comp.front().name() + "); the basic resource state has 3 qubits");
}

// Repeatedly unravels BCSs and maximal cliques until a full pass finds
// nothing. Each round processes the two kinds in a random order; instances
// within a pass are vertex-disjoint. With enabled=false the graph is passed
// through untouched.
inline UnravelResult unravel(const Graph& g, Rng& rng, bool enabled = true) {
  require_components_of_three(g);
  UnravelResult result;
  result.original = g;
  result.unraveled = g;
  if (!enabled) return result;

  Graph& cur = result.unraveled;
  const std::size_t max_rounds = 64 + 8 * g.vertex_count();
  for (std::size_t round = 0;; ++round) {
    if (round >= max_rounds)
      throw std::runtime_error("unraveling did not converge");
    std::size_t events = 0;

    bool bcs_first = rng.coin();
    for (int phase = 0; phase < 2; ++phase) {
      if ((phase == 0) == bcs_first) {
        for (const Bcs& bcs : find_bcss(cur, rng)) {
          auto [next, ev] = unravel_bcs(cur, bcs);
          cur = std::move(next);
          result.external_fusions.insert(make_edge(ev.w1, ev.w2));
          result.journal.emplace_back(std::move(ev));
          ++events;
        }
      } else {
        std::vector<VertexSet> cliques = find_maximal_cliques(cur);
        rng.shuffle(cliques);
        VertexSet taken;
        for (const VertexSet& c : cliques) {
          bool overlap = false;
          for (Vertex v : c) overlap = overlap || taken.count(v);
          if (overlap) continue;
          taken.insert(c.begin(), c.end());
          auto [next, ev, rec] = unravel_clique(cur, c, rng, result.cliffords);
          cur = std::move(next);
          result.cliffords = std::move(rec);
          if (ev.v1) result.external_fusions.insert(make_edge(*ev.v1, *ev.v2));
          result.journal.emplace_back(std::move(ev));
          ++events;
        }
      }
    }
    if (events == 0) break;
  }
  return result;
}

// Verification oracle: replays the journal backwards (LCs are involutions,
// deferred fusions are applied) and returns a graph equal to the original.
inline Graph recover(const UnravelResult& r) {
  Graph g = r.unraveled;
  for (auto it = r.journal.rbegin(); it != r.journal.rend(); ++it) {
    if (const auto* bcs = std::get_if<BcsUnravelEvent>(&*it)) {
      fuse_vertices_in_place(g, bcs->w1, bcs->w2);
    } else {
      const auto& cl = std::get<CliqueUnravelEvent>(*it);
      if (!g.has_vertex(cl.lc_vertex))
        throw std::invalid_argument("journal references a missing vertex");
      local_complement_in_place(g, cl.lc_vertex);
      if (cl.v1) fuse_vertices_in_place(g, *cl.v1, *cl.v2);
    }
  }
  return g;
}

}  // namespace fusegraph
