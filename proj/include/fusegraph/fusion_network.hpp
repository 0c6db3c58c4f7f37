#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusegraph/rng.hpp"
#include "fusegraph/unravel.hpp"

namespace fusegraph {

// One 3-qubit star resource state: a root qubit plus two leaf qubits.
struct NetworkNode {
  std::string name;      // seed nodes take their origin vertex's name, others "<seed>-<j>"
  Vertex group;          // origin vertex in the unraveled graph
  bool is_seed = false;
  int free_leaf_slots = 2;
  bool root_used = false;
};

enum class LinkOrigin { IntraGroup, InterGroup, External };
enum class LinkKind { RootRoot, RootLeaf, LeafLeaf };

// A required fusion between two resource states. The root indicators say
// whether the fusion consumes the root qubit on each side.
struct NetworkLink {
  int a = -1, b = -1;
  bool root_a = false, root_b = false;
  LinkOrigin origin = LinkOrigin::IntraGroup;
  bool clifford = false;  // fusion must be preceded by single-qubit Cliffords

  LinkKind kind() const {
    if (root_a && root_b) return LinkKind::RootRoot;
    if (root_a || root_b) return LinkKind::RootLeaf;
    return LinkKind::LeafLeaf;
  }
};

inline const char* to_string(LinkKind k) {
  switch (k) {
    case LinkKind::RootRoot: return "RR";
    case LinkKind::RootLeaf: return "RL";
    case LinkKind::LeafLeaf: return "LL";
  }
  return "?";
}

inline const char* to_string(LinkOrigin o) {
  switch (o) {
    case LinkOrigin::IntraGroup: return "intra";
    case LinkOrigin::InterGroup: return "inter";
    case LinkOrigin::External: return "external";
  }
  return "?";
}

struct FusionNetwork {
  std::vector<NetworkNode> nodes;
  std::vector<NetworkLink> links;
  std::map<Vertex, std::vector<int>> groups;  // origin vertex -> node indices, chain order
  std::map<Vertex, int> hosted;               // degree-1 vertex -> node carrying its qubit
};

// Decomposes the unraveled graph into chains of 3-qubit resource states and
// wires up all required fusions. Every vertex of degree >= 2 becomes a chain
// of deg-1 nodes; every edge between two such vertices becomes a leaf-to-leaf
// link; a degree-1 vertex rides along as a leaf qubit in its neighbor's
// group; an external fusion consumes the seed root on sides of degree >= 2
// and the hosted leaf qubit on sides of degree 1.
inline FusionNetwork build_network(const UnravelResult& r, Rng& rng) {
  const Graph& g = r.unraveled;
  FusionNetwork net;

  for (Vertex v : g.vertices()) {
    std::size_t deg = g.degree(v);
    if (deg < 2) continue;
    const std::size_t size = deg - 1;
    const std::size_t seed_pos = rng.index(size);
    std::vector<int>& chain = net.groups[v];
    std::size_t tag = 0;
    for (std::size_t k = 0; k < size; ++k) {
      NetworkNode node;
      node.group = v;
      node.is_seed = (k == seed_pos);
      node.name = node.is_seed ? v.name() : v.name() + "-" + std::to_string(++tag);
      chain.push_back(static_cast<int>(net.nodes.size()));
      net.nodes.push_back(std::move(node));
    }
    for (std::size_t k = 0; k + 1 < size; ++k) {
      // The link consumes a leaf on the side nearer the seed and the root on
      // the farther side, so only the seed's root survives as the star root.
      int nearer = chain[k + 1 <= seed_pos ? k + 1 : k];
      int farther = chain[k + 1 <= seed_pos ? k : k + 1];
      NetworkLink link;
      link.a = nearer;
      link.b = farther;
      link.root_a = false;
      link.root_b = true;
      link.origin = LinkOrigin::IntraGroup;
      net.nodes[nearer].free_leaf_slots--;
      net.nodes[farther].root_used = true;
      net.links.push_back(link);
    }
  }

  auto take_free_leaf = [&](Vertex v) {
    std::vector<int> candidates;
    for (int idx : net.groups.at(v))
      if (net.nodes[idx].free_leaf_slots > 0) candidates.push_back(idx);
    if (candidates.empty()) throw std::runtime_error("leaf slot exhaustion in group " + v.name());
    int idx = candidates[rng.index(candidates.size())];
    net.nodes[idx].free_leaf_slots--;
    return idx;
  };

  std::vector<Edge> plain_edges;
  for (const Edge& e : g.edges())
    if (g.degree(e.first) >= 2 && g.degree(e.second) >= 2) plain_edges.push_back(e);
  rng.shuffle(plain_edges);
  for (const Edge& e : plain_edges) {
    NetworkLink link;
    link.a = take_free_leaf(e.first);
    link.b = take_free_leaf(e.second);
    link.origin = LinkOrigin::InterGroup;
    net.links.push_back(link);
  }

  std::vector<Vertex> leaf_vertices;
  for (Vertex v : g.vertices())
    if (g.degree(v) == 1) leaf_vertices.push_back(v);
  rng.shuffle(leaf_vertices);
  for (Vertex v : leaf_vertices) {
    Vertex hub = *g.neighbors(v).begin();
    if (g.degree(hub) < 2)
      throw std::invalid_argument("isolated two-vertex component around " + v.name());
    net.hosted[v] = take_free_leaf(hub);
  }

  for (const Edge& pair : r.external_fusions) {
    NetworkLink link;
    link.origin = LinkOrigin::External;
    auto attach = [&](Vertex v, int& node_out, bool& root_out) {
      if (!g.has_vertex(v))
        throw std::invalid_argument("external fusion references missing vertex " + v.name());
      if (g.degree(v) >= 2) {
        int seed = -1;
        for (int idx : net.groups.at(v))
          if (net.nodes[idx].is_seed) seed = idx;
        if (net.nodes[seed].root_used)
          throw std::runtime_error("seed root of " + v.name() + " consumed twice");
        net.nodes[seed].root_used = true;
        node_out = seed;
        root_out = true;
      } else {
        node_out = net.hosted.at(v);
        root_out = false;
      }
    };
    attach(pair.first, link.a, link.root_a);
    attach(pair.second, link.b, link.root_b);
    if (net.nodes[link.a].group == net.nodes[link.b].group)
      throw std::runtime_error("external fusion landed inside one group");
    // The fused qubits sit at the paired vertices themselves, so unraveling
    // Cliffords recorded there must be applied before this fusion.
    link.clifford = !r.cliffords.is_identity(pair.first) || !r.cliffords.is_identity(pair.second);
    net.links.push_back(link);
  }

  for (const NetworkNode& node : net.nodes)
    if (node.free_leaf_slots != 0)
      throw std::runtime_error("leaf slot accounting is off for node " + node.name);
  return net;
}

}  // namespace fusegraph
