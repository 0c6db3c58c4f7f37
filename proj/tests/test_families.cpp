#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "fusegraph/families.hpp"

using namespace fusegraph;

namespace {

std::pair<std::size_t, std::size_t> counts(const FamilySpec& spec) {
  Rng rng(1);
  Graph g = generate(spec, rng);
  return {g.vertex_count(), g.edge_count()};
}

FamilySpec spec_of(std::string_view text) { return FamilySpec::parse(text); }

// Canonical form of a graph on n <= 8 plain vertices: the minimum adjacency
// bitmask over all vertex permutations.
std::uint64_t canonical_form(const Graph& g) {
  std::vector<Vertex> vs = g.vertices();
  const std::size_t n = vs.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~0ULL;
  do {
    std::uint64_t mask = 0;
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++bit)
        if (g.has_edge(vs[perm[i]], vs[perm[j]])) mask |= 1ULL << bit;
    best = std::min(best, mask);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("reference vertex and edge counts for the standard families") {
  // (spec string, |V|, |E|)
  const std::vector<std::tuple<const char*, std::size_t, std::size_t>> rows = {
      {"star:6", 6, 5},
      {"star:12", 12, 11},
      {"star:18", 18, 17},
      {"star:24", 24, 23},
      {"lattice:3,3", 9, 12},
      {"lattice:4,4", 16, 24},
      {"lattice:5,5", 25, 40},
      {"lattice:6,6", 36, 60},
      {"rhg:1,1,1", 18, 24},
      {"rhg:2,2,2", 90, 144},
      {"tree:2,2", 7, 6},
      {"tree:2,2,2", 15, 14},
      {"tree:2,2,2,2", 31, 30},
      {"tree:3,3,3", 40, 39},
      {"tree:4,4,4", 85, 84},
      {"tree:8,2,2", 57, 56},
      {"repeater:3", 12, 21},
      {"repeater:4", 16, 36},
      {"repeater:6", 24, 78},
      {"parity:3star,2,2", 12, 17},
      {"parity:3star,3,3", 27, 48},
      {"parity:3star,4,4", 48, 95},
      {"parity:3star,5,5", 75, 158},
      {"parity:6cycle,2,2", 24, 42},
      {"parity:6cycle,3,3", 54, 114},
      {"parity:6cycle,4,4", 96, 222},
  };
  for (const auto& [text, nv, ne] : rows) {
    CAPTURE(text);
    auto [v, e] = counts(spec_of(text));
    CHECK(v == nv);
    CHECK(e == ne);
  }
}

TEST_CASE("rhg counts match the cell-complex closed forms") {
  for (std::uint64_t lx = 1; lx <= 3; ++lx)
    for (std::uint64_t ly = 1; ly <= 2; ++ly)
      for (std::uint64_t lz = 1; lz <= 2; ++lz) {
        auto [v, e] = counts(FamilySpec::of(FamilySpec::Kind::Rhg, {lx, ly, lz}));
        std::uint64_t faces =
            lx * ly * (lz + 1) + ly * lz * (lx + 1) + lz * lx * (ly + 1);
        std::uint64_t cell_edges = lx * (ly + 1) * (lz + 1) + ly * (lz + 1) * (lx + 1) +
                                   lz * (lx + 1) * (ly + 1);
        CHECK(v == faces + cell_edges);
        CHECK(e == 4 * faces);
      }
}

TEST_CASE("basic families have the expected shape") {
  Rng rng(3);
  Graph star = generate(spec_of("star:5"), rng);
  for (int i = 1; i < 5; ++i) CHECK(star.has_edge(Vertex(0), Vertex(i)));

  Graph cyc = generate(spec_of("cycle:6"), rng);
  CHECK(cyc.edge_count() == 6);
  for (Vertex v : cyc.vertices()) CHECK(cyc.degree(v) == 2);

  Graph complete = generate(spec_of("complete:5"), rng);
  CHECK(complete.edge_count() == 10);

  Graph repeater = generate(spec_of("repeater:3"), rng);
  for (int i = 0; i < 6; ++i) CHECK(repeater.degree(Vertex(i)) == 6);
  for (int i = 6; i < 12; ++i) CHECK(repeater.degree(Vertex(i)) == 1);
}

TEST_CASE("invalid family parameters are rejected") {
  Rng rng(1);
  CHECK_THROWS_AS(generate(spec_of("star:2"), rng), std::invalid_argument);
  CHECK_THROWS_AS(generate(spec_of("er:5,11"), rng), std::invalid_argument);
  CHECK_THROWS_AS(spec_of("lattice:3"), std::invalid_argument);
  CHECK_THROWS_AS(spec_of("rhg:0,1,1"), std::invalid_argument);
  CHECK_THROWS_AS(spec_of("frobnicate:3"), std::invalid_argument);
  CHECK_THROWS_AS(spec_of("parity:3blob,2,2"), std::invalid_argument);
  CHECK_THROWS_AS(spec_of("star:x"), std::invalid_argument);
}

TEST_CASE("er sampler hits the requested counts exactly") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t n = 2 + rng.below(12);
    std::uint64_t e = rng.below(max_edges(n) + 1);
    Graph g = generate(FamilySpec::er(n, e), rng);
    CHECK(g.vertex_count() == n);
    CHECK(g.edge_count() == e);
  }
}

TEST_CASE("er sampler reaches every isomorphism class of (5,4) graphs") {
  Rng rng(2024);
  std::map<std::uint64_t, int> classes;
  for (int i = 0; i < 10000; ++i) {
    Graph g = generate(FamilySpec::er(5, 4), rng);
    classes[canonical_form(g)]++;
  }
  // Exactly six isomorphism classes of graphs with 5 vertices and 4 edges,
  // and a uniform sampler visits all of them easily in 10^4 draws.
  CHECK(classes.size() == 6);
  for (const auto& [form, count] : classes) CHECK(count > 50);
}

TEST_CASE("family specs print back to their parseable form") {
  CHECK(spec_of("rhg:2,2,2").to_string() == "rhg:2,2,2");
  CHECK(spec_of("parity:3star,4,4").to_string() == "parity:3star,4,4");
  CHECK(spec_of("tree:8,2,2").to_string() == "tree:8,2,2");
}
