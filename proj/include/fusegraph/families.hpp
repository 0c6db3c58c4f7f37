#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fusegraph/graph.hpp"
#include "fusegraph/rng.hpp"

namespace fusegraph {

inline std::uint64_t max_edges(std::uint64_t n) { return n * (n - 1) / 2; }

// Named graph family plus its size parameters, e.g. parsed from "rhg:2,2,2".
struct FamilySpec {
  enum class Kind { Star, Cycle, Complete, Lattice, Rhg, Tree, Repeater, ParityEncoded, RandomEr };

  Kind kind = Kind::Star;
  std::vector<std::uint64_t> params;
  std::optional<Graph> logical;   // ParityEncoded only: the logical-level graph
  std::string logical_label;      // ParityEncoded only: e.g. "3star"

  static FamilySpec parse(std::string_view text);
  static FamilySpec of(Kind kind, std::vector<std::uint64_t> params) {
    FamilySpec spec;
    spec.kind = kind;
    spec.params = std::move(params);
    return spec;
  }
  static FamilySpec er(std::uint64_t vertices, std::uint64_t edges) {
    return of(Kind::RandomEr, {vertices, edges});
  }
  void validate() const;
  std::string to_string() const;
};

namespace detail {

inline Graph path_free_graph(std::uint64_t n) {
  Graph g;
  for (std::uint64_t i = 0; i < n; ++i) g.add_vertex(Vertex(i));
  return g;
}

inline Graph star_graph(std::uint64_t m) {
  Graph g = path_free_graph(m);
  for (std::uint64_t i = 1; i < m; ++i) g.add_edge(Vertex(0), Vertex(i));
  return g;
}

inline Graph cycle_graph(std::uint64_t m) {
  Graph g = path_free_graph(m);
  for (std::uint64_t i = 0; i < m; ++i) g.add_edge(Vertex(i), Vertex((i + 1) % m));
  return g;
}

inline Graph complete_graph(std::uint64_t m) {
  Graph g = path_free_graph(m);
  for (std::uint64_t i = 0; i < m; ++i)
    for (std::uint64_t j = i + 1; j < m; ++j) g.add_edge(Vertex(i), Vertex(j));
  return g;
}

inline Graph lattice_graph(std::uint64_t mx, std::uint64_t my) {
  Graph g = path_free_graph(mx * my);
  auto id = [my](std::uint64_t x, std::uint64_t y) { return Vertex(x * my + y); };
  for (std::uint64_t x = 0; x < mx; ++x)
    for (std::uint64_t y = 0; y < my; ++y) {
      if (x + 1 < mx) g.add_edge(id(x, y), id(x + 1, y));
      if (y + 1 < my) g.add_edge(id(x, y), id(x, y + 1));
    }
  return g;
}

// Cuboid cell complex in doubled coordinates: points with exactly two odd
// coordinates are faces, points with exactly one odd coordinate are lattice
// edges, and each face connects to the four edges bounding it.
inline Graph rhg_lattice(std::uint64_t lx, std::uint64_t ly, std::uint64_t lz) {
  struct P {
    std::uint64_t x, y, z;
    auto operator<=>(const P&) const = default;
  };
  std::map<P, Vertex> ids;
  auto odd_count = [](const P& p) {
    return int(p.x % 2) + int(p.y % 2) + int(p.z % 2);
  };
  std::uint64_t next = 0;
  for (std::uint64_t x = 0; x <= 2 * lx; ++x)
    for (std::uint64_t y = 0; y <= 2 * ly; ++y)
      for (std::uint64_t z = 0; z <= 2 * lz; ++z) {
        P p{x, y, z};
        int odd = odd_count(p);
        if (odd == 1 || odd == 2) ids.emplace(p, Vertex(next++));
      }
  Graph g;
  for (const auto& [p, v] : ids) g.add_vertex(v);
  for (const auto& [p, v] : ids) {
    if (odd_count(p) != 2) continue;
    // Step +/-1 along each of the two odd directions to reach bounding edges.
    std::vector<P> sides;
    if (p.x % 2) sides.push_back({p.x - 1, p.y, p.z}), sides.push_back({p.x + 1, p.y, p.z});
    if (p.y % 2) sides.push_back({p.x, p.y - 1, p.z}), sides.push_back({p.x, p.y + 1, p.z});
    if (p.z % 2) sides.push_back({p.x, p.y, p.z - 1}), sides.push_back({p.x, p.y, p.z + 1});
    for (const P& s : sides) g.add_edge(v, ids.at(s));
  }
  return g;
}

inline Graph tree_graph(const std::vector<std::uint64_t>& branching) {
  Graph g;
  std::uint64_t next = 0;
  std::vector<Vertex> level = {Vertex(next++)};
  g.add_vertex(level.front());
  for (std::uint64_t b : branching) {
    std::vector<Vertex> children;
    for (Vertex parent : level)
      for (std::uint64_t k = 0; k < b; ++k) {
        Vertex c(next++);
        g.add_vertex(c);
        g.add_edge(parent, c);
        children.push_back(c);
      }
    level = std::move(children);
  }
  return g;
}

inline Graph repeater_graph(std::uint64_t m) {
  // 2m mutually connected inner vertices, each with one pendant leaf.
  Graph g = complete_graph(2 * m);
  for (std::uint64_t i = 0; i < 2 * m; ++i) {
    Vertex leaf(2 * m + i);
    g.add_vertex(leaf);
    g.add_edge(Vertex(i), leaf);
  }
  return g;
}

// Physical-level expansion of a graph state whose qubits are encoded with the
// (n, m) parity code. Each logical vertex becomes n blocks of m qubits.
// Block 0 is the port block and carries no internal edges; the root of every
// other block connects to its own m-1 tail qubits and to all m port qubits.
// Each logical edge becomes a complete bipartite pattern between the two port
// blocks. The representative was cross-checked against the stabilizer
// description of the encoded state (it is local-complementation equivalent on
// small instances) and reproduces the reference vertex/edge counts.
inline Graph parity_encoded_graph(const Graph& logical, std::uint64_t n, std::uint64_t m) {
  const std::vector<Vertex> lv = logical.vertices();
  std::map<Vertex, std::uint64_t> base;
  std::uint64_t next = 0;
  for (Vertex v : lv) {
    base[v] = next;
    next += n * m;
  }
  Graph g = path_free_graph(next);
  auto qubit = [&](Vertex v, std::uint64_t block, std::uint64_t j) {
    return Vertex(base.at(v) + block * m + j);
  };
  for (Vertex v : lv)
    for (std::uint64_t i = 1; i < n; ++i) {
      for (std::uint64_t j = 1; j < m; ++j) g.add_edge(qubit(v, i, 0), qubit(v, i, j));
      for (std::uint64_t j = 0; j < m; ++j) g.add_edge(qubit(v, i, 0), qubit(v, 0, j));
    }
  for (const Edge& e : logical.edges())
    for (std::uint64_t j1 = 0; j1 < m; ++j1)
      for (std::uint64_t j2 = 0; j2 < m; ++j2)
        g.add_edge(qubit(e.first, 0, j1), qubit(e.second, 0, j2));
  return g;
}

// Uniform sample over simple graphs with exactly nv vertices and ne edges.
inline Graph random_er_graph(std::uint64_t nv, std::uint64_t ne, Rng& rng) {
  Graph g = path_free_graph(nv);
  const std::uint64_t total = max_edges(nv);
  std::set<std::uint64_t> chosen;
  while (chosen.size() < ne) chosen.insert(rng.below(total));
  for (std::uint64_t code : chosen) {
    // Decode pair index: row r spans indices [r(r-1)/2, r(r+1)/2) for r >= 1.
    std::uint64_t r = 1;
    while ((r + 1) * r / 2 <= code) ++r;
    std::uint64_t c = code - r * (r - 1) / 2;
    g.add_edge(Vertex(r), Vertex(c));
  }
  return g;
}

}  // namespace detail

inline void FamilySpec::validate() const {
  auto need = [&](std::size_t k) {
    if (params.size() != k) throw std::invalid_argument("wrong parameter count for family");
  };
  auto positive = [&] {
    for (std::uint64_t p : params)
      if (p < 1) throw std::invalid_argument("family size parameters must be >= 1");
  };
  switch (kind) {
    case Kind::Star:
      need(1);
      if (params[0] < 3) throw std::invalid_argument("star graphs need at least 3 vertices");
      break;
    case Kind::Cycle:
      need(1);
      if (params[0] < 3) throw std::invalid_argument("cycle graphs need at least 3 vertices");
      break;
    case Kind::Complete:
      need(1);
      positive();
      break;
    case Kind::Lattice:
      need(2);
      positive();
      break;
    case Kind::Rhg:
      need(3);
      positive();
      break;
    case Kind::Tree:
      if (params.empty()) throw std::invalid_argument("tree needs at least one branching factor");
      positive();
      break;
    case Kind::Repeater:
      need(1);
      positive();
      break;
    case Kind::ParityEncoded:
      need(2);
      positive();
      if (!logical || logical->vertex_count() == 0)
        throw std::invalid_argument("parity encoding needs a logical graph");
      break;
    case Kind::RandomEr:
      need(2);
      if (params[0] < 1) throw std::invalid_argument("random graph needs at least one vertex");
      if (params[1] > max_edges(params[0]))
        throw std::invalid_argument("requested edge count exceeds the simple-graph maximum");
      break;
  }
}

inline Graph generate(const FamilySpec& spec, Rng& rng) {
  spec.validate();
  switch (spec.kind) {
    case FamilySpec::Kind::Star: return detail::star_graph(spec.params[0]);
    case FamilySpec::Kind::Cycle: return detail::cycle_graph(spec.params[0]);
    case FamilySpec::Kind::Complete: return detail::complete_graph(spec.params[0]);
    case FamilySpec::Kind::Lattice: return detail::lattice_graph(spec.params[0], spec.params[1]);
    case FamilySpec::Kind::Rhg:
      return detail::rhg_lattice(spec.params[0], spec.params[1], spec.params[2]);
    case FamilySpec::Kind::Tree: return detail::tree_graph(spec.params);
    case FamilySpec::Kind::Repeater: return detail::repeater_graph(spec.params[0]);
    case FamilySpec::Kind::ParityEncoded:
      return detail::parity_encoded_graph(*spec.logical, spec.params[0], spec.params[1]);
    case FamilySpec::Kind::RandomEr:
      return detail::random_er_graph(spec.params[0], spec.params[1], rng);
  }
  throw std::logic_error("unreachable");
}

inline FamilySpec FamilySpec::parse(std::string_view text) {
  auto colon = text.find(':');
  std::string name(text.substr(0, colon));
  std::vector<std::string> args;
  if (colon != std::string_view::npos) {
    std::string rest(text.substr(colon + 1));
    std::istringstream in(rest);
    std::string tok;
    while (std::getline(in, tok, ',')) args.push_back(tok);
  }
  auto parse_number = [](const std::string& tok) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
      throw std::invalid_argument("bad size parameter '" + tok + "' in family spec");
    return value;
  };
  auto numbers = [&](std::size_t from = 0) {
    std::vector<std::uint64_t> out;
    for (std::size_t i = from; i < args.size(); ++i) out.push_back(parse_number(args[i]));
    return out;
  };

  FamilySpec spec;
  if (name == "star") spec.kind = Kind::Star;
  else if (name == "cycle") spec.kind = Kind::Cycle;
  else if (name == "complete") spec.kind = Kind::Complete;
  else if (name == "lattice") spec.kind = Kind::Lattice;
  else if (name == "rhg") spec.kind = Kind::Rhg;
  else if (name == "tree") spec.kind = Kind::Tree;
  else if (name == "repeater") spec.kind = Kind::Repeater;
  else if (name == "er") spec.kind = Kind::RandomEr;
  else if (name == "parity") {
    // e.g. parity:3star,4,4 or parity:6cycle,2,2
    if (args.size() != 3) throw std::invalid_argument("parity spec needs logical,n,m");
    spec.kind = Kind::ParityEncoded;
    std::string logical = args[0];
    auto suffix_at = logical.find_first_not_of("0123456789");
    if (suffix_at == 0 || suffix_at == std::string::npos)
      throw std::invalid_argument("bad logical graph '" + logical + "' (use e.g. 3star, 6cycle)");
    std::uint64_t size = parse_number(logical.substr(0, suffix_at));
    std::string shape = logical.substr(suffix_at);
    if (shape == "star") spec.logical = detail::star_graph(size);
    else if (shape == "cycle") spec.logical = detail::cycle_graph(size);
    else if (shape == "complete") spec.logical = detail::complete_graph(size);
    else throw std::invalid_argument("bad logical graph shape '" + shape + "'");
    spec.logical_label = logical;
    spec.params = numbers(1);
    spec.validate();
    return spec;
  } else {
    throw std::invalid_argument("unknown graph family '" + name + "'");
  }
  spec.params = numbers();
  spec.validate();
  return spec;
}

inline std::string FamilySpec::to_string() const {
  std::string name;
  switch (kind) {
    case Kind::Star: name = "star"; break;
    case Kind::Cycle: name = "cycle"; break;
    case Kind::Complete: name = "complete"; break;
    case Kind::Lattice: name = "lattice"; break;
    case Kind::Rhg: name = "rhg"; break;
    case Kind::Tree: name = "tree"; break;
    case Kind::Repeater: name = "repeater"; break;
    case Kind::ParityEncoded: name = "parity"; break;
    case Kind::RandomEr: name = "er"; break;
  }
  std::string out = name + ":";
  if (kind == Kind::ParityEncoded)
    out += (logical_label.empty() ? std::to_string(logical->vertex_count()) + "v" : logical_label) + ",";
  for (std::size_t i = 0; i < params.size(); ++i)
    out += (i ? "," : "") + std::to_string(params[i]);
  return out;
}

}  // namespace fusegraph
