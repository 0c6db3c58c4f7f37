#pragma once

#include <map>
#include <queue>
#include <utility>
#include <vector>

namespace fusegraph {

// Maximum-cardinality matching in a general graph (blossom contraction over
// an alternating BFS forest, O(V^3)). Nodes are 0..n-1.
class MaxMatching {
 public:
  explicit MaxMatching(int n) : n_(n), adj_(n) {}

  void add_edge(int a, int b) {
    if (a == b) return;  // loops are never matchable
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }

  // Returns match[v] = partner or -1.
  std::vector<int> solve() {
    match_.assign(n_, -1);
    parent_.assign(n_, -1);
    base_.resize(n_);
    for (int v = 0; v < n_; ++v)
      if (match_[v] == -1)
        for (int to : adj_[v])
          if (match_[to] == -1) {
            match_[v] = to;
            match_[to] = v;
            break;
          }
    for (int v = 0; v < n_; ++v)
      if (match_[v] == -1) augment_from(v);
    return match_;
  }

 private:
  int lowest_common_base(int a, int b) const {
    std::vector<bool> seen(n_, false);
    for (;;) {
      a = base_[a];
      seen[a] = true;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_blossom_path(int v, int b, int child, std::vector<bool>& in_blossom) {
    while (base_[v] != b) {
      in_blossom[base_[v]] = true;
      in_blossom[base_[match_[v]]] = true;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  bool augment_from(int root) {
    used_.assign(n_, false);
    parent_.assign(n_, -1);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          // Odd cycle: contract the blossom down to the common base.
          int cur_base = lowest_common_base(v, to);
          std::vector<bool> in_blossom(n_, false);
          mark_blossom_path(v, cur_base, to, in_blossom);
          mark_blossom_path(to, cur_base, v, in_blossom);
          for (int i = 0; i < n_; ++i)
            if (in_blossom[base_[i]]) {
              base_[i] = cur_base;
              if (!used_[i]) {
                used_[i] = true;
                q.push(i);
              }
            }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) {
            for (int u = to; u != -1;) {  // flip the augmenting path
              int pv = parent_[u], ppv = match_[pv];
              match_[u] = pv;
              match_[pv] = u;
              u = ppv;
            }
            return true;
          }
          used_[match_[to]] = true;
          q.push(match_[to]);
        }
      }
    }
    return false;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_, parent_, base_;
  std::vector<bool> used_;
};

// Maximum matching over an edge list; loops and parallel duplicates are
// tolerated (at most one edge per node pair can be matched). Returns indices
// into `edges` forming the matching.
inline std::vector<int> maximum_matching(int n_nodes,
                                         const std::vector<std::pair<int, int>>& edges) {
  MaxMatching solver(n_nodes);
  std::map<std::pair<int, int>, int> representative;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    auto [a, b] = edges[i];
    if (a == b) continue;
    std::pair<int, int> key = a < b ? std::pair{a, b} : std::pair{b, a};
    if (representative.emplace(key, i).second) solver.add_edge(a, b);
  }
  std::vector<int> match = solver.solve();
  std::vector<int> picked;
  for (int v = 0; v < n_nodes; ++v) {
    int u = match[v];
    if (u > v) picked.push_back(representative.at({v, u}));
  }
  return picked;
}

}  // namespace fusegraph
