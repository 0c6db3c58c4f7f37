#include <doctest.h>

#include <map>
#include <set>

#include "fusegraph/families.hpp"
#include "fusegraph/fusion_network.hpp"
#include "fusegraph/io.hpp"

using namespace fusegraph;

namespace {

Graph from_edges(std::uint64_t n, std::initializer_list<std::pair<int, int>> edges) {
  Graph g;
  for (std::uint64_t i = 0; i < n; ++i) g.add_vertex(Vertex(i));
  for (auto [a, b] : edges) g.add_edge(Vertex(a), Vertex(b));
  return g;
}

UnravelResult pass_through(const Graph& g) {
  UnravelResult r;
  r.original = g;
  r.unraveled = g;
  return r;
}

std::size_t count_kind(const FusionNetwork& net, LinkKind kind) {
  std::size_t c = 0;
  for (const NetworkLink& l : net.links) c += l.kind() == kind;
  return c;
}

void check_slot_budget(const FusionNetwork& net) {
  // Each node has one root and two leaves. Roots are consumed at most once;
  // across a group the intra links eat 2 * (size - 1) qubits.
  std::map<Vertex, int> group_size, intra_links;
  for (const NetworkNode& n : net.nodes) group_size[n.group]++;
  std::map<int, int> root_links, leaf_links;
  for (std::size_t i = 0; i < net.links.size(); ++i) {
    const NetworkLink& l = net.links[i];
    // A leaf-side endpoint of an external fusion is the hosted qubit of a
    // degree-1 vertex, so its slot is already counted via net.hosted.
    auto tally = [&](int node, bool root) {
      if (root) root_links[node]++;
      else if (l.origin != LinkOrigin::External) leaf_links[node]++;
    };
    tally(l.a, l.root_a);
    tally(l.b, l.root_b);
    if (l.origin == LinkOrigin::IntraGroup) intra_links[net.nodes[l.a].group]++;
  }
  std::map<int, int> hosted_per_node;
  for (const auto& [v, node] : net.hosted) hosted_per_node[node]++;
  for (int i = 0; i < static_cast<int>(net.nodes.size()); ++i) {
    CHECK(root_links[i] <= 1);
    CHECK(leaf_links[i] + hosted_per_node[i] <= 2);
  }
  for (const auto& [v, size] : group_size)
    CHECK(intra_links[v] == size - 1);
}

}  // namespace

TEST_CASE("star networks are chains") {
  Rng rng(5);
  UnravelResult r = pass_through(generate(FamilySpec::parse("star:5"), rng));
  FusionNetwork net = build_network(r, rng);
  CHECK(net.nodes.size() == 3);
  CHECK(net.links.size() == 2);
  CHECK(count_kind(net, LinkKind::RootLeaf) == 2);
  int seeds = 0;
  for (const NetworkNode& n : net.nodes) seeds += n.is_seed;
  CHECK(seeds == 1);
  // All four star leaves ride along as hosted qubits.
  CHECK(net.hosted.size() == 4);
  check_slot_budget(net);
}

TEST_CASE("the 3-star is a single resource state") {
  Rng rng(5);
  UnravelResult r = pass_through(generate(FamilySpec::parse("star:3"), rng));
  FusionNetwork net = build_network(r, rng);
  CHECK(net.nodes.size() == 1);
  CHECK(net.links.empty());
  CHECK(net.nodes[0].is_seed);
}

TEST_CASE("unraveled 4-cycle becomes two nodes and a root-to-root link") {
  Graph g = from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  Rng rng(17);
  UnravelResult r = unravel(g, rng);
  REQUIRE(r.external_fusions.size() == 1);
  FusionNetwork net = build_network(r, rng);
  CHECK(net.nodes.size() == 2);
  REQUIRE(net.links.size() == 1);
  CHECK(net.links[0].kind() == LinkKind::RootRoot);
  CHECK(net.links[0].origin == LinkOrigin::External);
  CHECK(net.nodes[net.links[0].a].group != net.nodes[net.links[0].b].group);
}

TEST_CASE("raw 4-cycle becomes a cycle of leaf-to-leaf links") {
  Graph g = from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  Rng rng(17);
  FusionNetwork net = build_network(pass_through(g), rng);
  CHECK(net.nodes.size() == 4);
  CHECK(net.links.size() == 4);
  CHECK(count_kind(net, LinkKind::LeafLeaf) == 4);
  check_slot_budget(net);
}

TEST_CASE("link census matches the unraveled graph") {
  Rng rng(97);
  for (int iter = 0; iter < 60; ++iter) {
    std::uint64_t n = 6 + rng.below(9);
    std::uint64_t e = n + rng.below(max_edges(n) - n + 1);
    Graph g = generate(FamilySpec::er(n, e), rng);
    bool valid = true;
    for (const auto& comp : g.connected_components()) valid = valid && comp.size() >= 3;
    if (!valid) continue;
    UnravelResult r = unravel(g, rng);
    FusionNetwork net = build_network(r, rng);

    std::size_t expected_nodes = 0, plain_edges = 0;
    for (Vertex v : r.unraveled.vertices())
      if (r.unraveled.degree(v) >= 2) expected_nodes += r.unraveled.degree(v) - 1;
    for (const Edge& edge : r.unraveled.edges())
      if (r.unraveled.degree(edge.first) >= 2 && r.unraveled.degree(edge.second) >= 2)
        ++plain_edges;
    std::size_t intra = 0;
    for (const auto& [v, chain] : net.groups) intra += chain.size() - 1;

    CHECK(net.nodes.size() == expected_nodes);
    CHECK(net.links.size() == intra + plain_edges + r.external_fusions.size());
    check_slot_budget(net);

    // External fusions always join different groups.
    for (const NetworkLink& l : net.links)
      if (l.origin == LinkOrigin::External)
        CHECK(net.nodes[l.a].group != net.nodes[l.b].group);
  }
}

TEST_CASE("seed nodes carry the vertex name and the chain indexes the rest") {
  Rng rng(12);
  UnravelResult r = pass_through(generate(FamilySpec::parse("star:6"), rng));
  FusionNetwork net = build_network(r, rng);
  std::set<std::string> names;
  for (const NetworkNode& n : net.nodes) names.insert(n.name);
  CHECK(names.count("0") == 1);
  CHECK(names.count("0-1") == 1);
  CHECK(names.count("0-3") == 1);
}

TEST_CASE("same seed gives an identical network") {
  Rng gen_rng(1);
  Graph g = generate(FamilySpec::parse("lattice:3,3"), gen_rng);
  Rng a(33), b(33);
  UnravelResult ra = unravel(g, a), rb = unravel(g, b);
  FusionNetwork na = build_network(ra, a), nb = build_network(rb, b);
  CHECK(to_json(na).dump() == to_json(nb).dump());
}

TEST_CASE("degree-one islands around a single edge are rejected") {
  UnravelResult r = pass_through(from_edges(2, {{0, 1}}));
  Rng rng(3);
  CHECK_THROWS_AS(build_network(r, rng), std::invalid_argument);
}
