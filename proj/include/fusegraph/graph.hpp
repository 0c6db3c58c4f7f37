#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fusegraph/clifford.hpp"

namespace fusegraph {

// Stable vertex identifier. Plain vertices print as decimal numbers;
// vertices minted during unraveling live in a separate "w" namespace so they
// can never collide with input names.
class Vertex {
 public:
  constexpr Vertex() : code_(0) {}
  constexpr explicit Vertex(std::uint64_t plain_index) : code_(plain_index) {
    if (plain_index & kFreshBit) throw std::invalid_argument("vertex index too large");
  }

  static constexpr Vertex fresh(std::uint64_t k) {
    Vertex v;
    v.code_ = k | kFreshBit;
    return v;
  }

  static Vertex parse(std::string_view s) {
    bool is_fresh = !s.empty() && s.front() == 'w';
    if (is_fresh) s.remove_prefix(1);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw std::invalid_argument("bad vertex name");
    return is_fresh ? fresh(value) : Vertex(value);
  }

  bool is_fresh() const { return code_ & kFreshBit; }
  std::uint64_t index() const { return code_ & ~kFreshBit; }

  std::string name() const {
    return is_fresh() ? "w" + std::to_string(index()) : std::to_string(index());
  }

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;

 private:
  static constexpr std::uint64_t kFreshBit = 1ULL << 63;
  std::uint64_t code_;
};

using VertexSet = std::set<Vertex>;
using Edge = std::pair<Vertex, Vertex>;  // normalized: first < second

inline Edge make_edge(Vertex a, Vertex b) {
  if (a == b) throw std::invalid_argument("self-loop edge");
  return a < b ? Edge{a, b} : Edge{b, a};
}

// Simple undirected graph over stable vertex ids. Iteration order over
// vertices and neighbor sets is always sorted, which keeps every randomized
// algorithm downstream reproducible.
class Graph {
 public:
  Graph() = default;

  void add_vertex(Vertex v) {
    adj_.try_emplace(v);
    if (v.is_fresh()) fresh_watermark_ = std::max(fresh_watermark_, v.index() + 1);
  }

  bool has_vertex(Vertex v) const { return adj_.count(v) != 0; }

  void add_edge(Vertex a, Vertex b) {
    Edge e = make_edge(a, b);
    auto ia = adj_.find(e.first), ib = adj_.find(e.second);
    if (ia == adj_.end() || ib == adj_.end())
      throw std::invalid_argument("edge endpoint not in graph");
    if (ia->second.insert(e.second).second) {
      ib->second.insert(e.first);
      ++edge_count_;
    }
  }

  bool has_edge(Vertex a, Vertex b) const {
    auto it = adj_.find(a);
    return it != adj_.end() && it->second.count(b) != 0;
  }

  void remove_edge(Vertex a, Vertex b) {
    auto ia = adj_.find(a), ib = adj_.find(b);
    if (ia == adj_.end() || ib == adj_.end()) return;
    if (ia->second.erase(b)) {
      ib->second.erase(a);
      --edge_count_;
    }
  }

  void toggle_edge(Vertex a, Vertex b) {
    has_edge(a, b) ? remove_edge(a, b) : add_edge(a, b);
  }

  void remove_vertex(Vertex v) {
    auto it = adj_.find(v);
    if (it == adj_.end()) return;
    for (Vertex u : it->second) {
      adj_.at(u).erase(v);
      --edge_count_;
    }
    adj_.erase(it);
  }

  const VertexSet& neighbors(Vertex v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw std::invalid_argument("unknown vertex " + v.name());
    return it->second;
  }

  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    out.reserve(adj_.size());
    for (const auto& [v, _] : adj_) out.push_back(v);
    return out;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (const auto& [v, nbrs] : adj_)
      for (Vertex u : nbrs)
        if (v < u) out.emplace_back(v, u);
    return out;
  }

  // First unused index in the "w" namespace; monotone over the graph's life.
  std::uint64_t fresh_watermark() const { return fresh_watermark_; }

  Vertex mint_fresh() {
    Vertex v = Vertex::fresh(fresh_watermark_);
    add_vertex(v);
    return v;
  }

  std::vector<std::vector<Vertex>> connected_components() const {
    std::vector<std::vector<Vertex>> comps;
    VertexSet seen;
    for (const auto& [start, _] : adj_) {
      if (seen.count(start)) continue;
      std::vector<Vertex> comp, stack = {start};
      seen.insert(start);
      while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (Vertex u : adj_.at(v))
          if (seen.insert(u).second) stack.push_back(u);
      }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
    return comps;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  std::map<Vertex, VertexSet> adj_;
  std::size_t edge_count_ = 0;
  std::uint64_t fresh_watermark_ = 0;
};

// Per-vertex single-qubit Clifford bookkeeping. Vertices without an entry
// carry the identity.
class CliffordRecord {
 public:
  const Clifford& at(Vertex v) const {
    static const Clifford kIdentity = Clifford::identity();
    auto it = labels_.find(v);
    return it == labels_.end() ? kIdentity : it->second;
  }

  bool is_identity(Vertex v) const { return labels_.find(v) == labels_.end(); }

  // Compose g after whatever is already recorded on v.
  void apply_after(Vertex v, const Clifford& g) {
    Clifford combined = g * at(v);
    if (combined.is_identity())
      labels_.erase(v);
    else
      labels_[v] = combined;
  }

  std::vector<Vertex> non_identity_vertices() const {
    std::vector<Vertex> out;
    out.reserve(labels_.size());
    for (const auto& [v, _] : labels_) out.push_back(v);
    return out;
  }

  const std::map<Vertex, Clifford>& entries() const { return labels_; }

  friend bool operator==(const CliffordRecord&, const CliffordRecord&) = default;

 private:
  std::map<Vertex, Clifford> labels_;
};

// Toggles every edge among the neighbors of v.
inline void local_complement_in_place(Graph& g, Vertex v, CliffordRecord* record = nullptr) {
  const std::vector<Vertex> nbrs(g.neighbors(v).begin(), g.neighbors(v).end());
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) g.toggle_edge(nbrs[i], nbrs[j]);
  if (record) {
    record->apply_after(v, Clifford::rx_dag());
    for (Vertex u : nbrs) record->apply_after(u, Clifford::rz());
  }
}

inline std::pair<Graph, CliffordRecord> local_complement(const Graph& g, Vertex v,
                                                         const CliffordRecord& record) {
  std::pair<Graph, CliffordRecord> out{g, record};
  local_complement_in_place(out.first, v, &out.second);
  return out;
}

inline Graph local_complement(const Graph& g, Vertex v) {
  Graph out = g;
  local_complement_in_place(out, v);
  return out;
}

// Graph part of a type-II fusion on two unconnected vertices: toggle the
// complete bipartite pattern between their neighborhoods, then delete both.
// Pairs inside the common neighborhood are visited twice and cancel.
inline void fuse_vertices_in_place(Graph& g, Vertex v1, Vertex v2) {
  if (v1 == v2) throw std::invalid_argument("fusion needs two distinct vertices");
  if (!g.has_vertex(v1) || !g.has_vertex(v2))
    throw std::invalid_argument("fusion vertex not in graph");
  if (g.has_edge(v1, v2))
    throw std::invalid_argument("fusion requires unconnected vertices");
  const std::vector<Vertex> a(g.neighbors(v1).begin(), g.neighbors(v1).end());
  const std::vector<Vertex> b(g.neighbors(v2).begin(), g.neighbors(v2).end());
  for (Vertex u1 : a)
    for (Vertex u2 : b)
      if (u1 != u2) g.toggle_edge(u1, u2);
  g.remove_vertex(v1);
  g.remove_vertex(v2);
}

inline Graph fuse_vertices(const Graph& g, Vertex v1, Vertex v2) {
  Graph out = g;
  fuse_vertices_in_place(out, v1, v2);
  return out;
}

// Success probability of a linear-optical Bell measurement when each photon
// is lost with probability eta.
inline double p_succ_from_loss(double eta) {
  if (!(eta >= 0.0 && eta < 1.0))
    throw std::invalid_argument("loss probability must lie in [0, 1)");
  return (1.0 - eta) * (1.0 - eta) / 2.0;
}

}  // namespace fusegraph
