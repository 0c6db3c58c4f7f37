#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fusegraph/optimizer.hpp"
#include "fusegraph/succprob.hpp"

namespace fusegraph {

inline constexpr std::string_view kToolName = "fusegraph";
inline constexpr std::string_view kToolVersion = "1.0.0";

using nlohmann::json;

// ---- JSON ------------------------------------------------------------

inline json to_json(const Graph& g) {
  json vertices = json::array();
  for (Vertex v : g.vertices()) vertices.push_back(v.name());
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.first.name(), e.second.name()});
  return json{{"vertices", vertices}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
  Graph g;
  for (const auto& name : j.at("vertices")) g.add_vertex(Vertex::parse(name.get<std::string>()));
  for (const auto& e : j.at("edges")) {
    if (e.size() != 2) throw std::invalid_argument("edge entries must be pairs");
    Vertex a = Vertex::parse(e[0].get<std::string>());
    Vertex b = Vertex::parse(e[1].get<std::string>());
    if (!g.has_edge(a, b)) g.add_edge(a, b);
  }
  return g;
}

inline json to_json(const CliffordRecord& record) {
  json out = json::object();
  for (const auto& [v, c] : record.entries()) out[v.name()] = c.word();
  return out;
}

inline CliffordRecord clifford_record_from_json(const json& j) {
  CliffordRecord record;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string word = it.value().get<std::string>();
    // Words are products of table entries; look the value up by brute force.
    bool found = false;
    for (const auto& [c, w] : clifford_word_table())
      if (w == word) {
        record.apply_after(Vertex::parse(it.key()), c);
        found = true;
        break;
      }
    if (!found) throw std::invalid_argument("unknown Clifford word '" + word + "'");
  }
  return record;
}

inline json to_json(const UnravelEvent& event) {
  if (const auto* bcs = std::get_if<BcsUnravelEvent>(&event)) {
    json part1 = json::array(), part2 = json::array();
    for (Vertex v : bcs->part1) part1.push_back(v.name());
    for (Vertex v : bcs->part2) part2.push_back(v.name());
    return json{{"type", "bcs"},
                {"part1", part1},
                {"part2", part2},
                {"w1", bcs->w1.name()},
                {"w2", bcs->w2.name()}};
  }
  const auto& cl = std::get<CliqueUnravelEvent>(event);
  json clique = json::array();
  for (Vertex v : cl.clique) clique.push_back(v.name());
  json out{{"type", "clique"}, {"clique", clique}, {"v0", cl.v0.name()}, {"lc", cl.lc_vertex.name()}};
  if (cl.v1) {
    out["v1"] = cl.v1->name();
    out["v2"] = cl.v2->name();
  }
  return out;
}

inline UnravelEvent unravel_event_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "bcs") {
    BcsUnravelEvent ev;
    for (const auto& v : j.at("part1")) ev.part1.insert(Vertex::parse(v.get<std::string>()));
    for (const auto& v : j.at("part2")) ev.part2.insert(Vertex::parse(v.get<std::string>()));
    ev.w1 = Vertex::parse(j.at("w1").get<std::string>());
    ev.w2 = Vertex::parse(j.at("w2").get<std::string>());
    return ev;
  }
  if (type != "clique") throw std::invalid_argument("unknown journal event type '" + type + "'");
  CliqueUnravelEvent ev;
  for (const auto& v : j.at("clique")) ev.clique.insert(Vertex::parse(v.get<std::string>()));
  ev.v0 = Vertex::parse(j.at("v0").get<std::string>());
  ev.lc_vertex = Vertex::parse(j.at("lc").get<std::string>());
  if (j.contains("v1")) {
    ev.v1 = Vertex::parse(j.at("v1").get<std::string>());
    ev.v2 = Vertex::parse(j.at("v2").get<std::string>());
  }
  return ev;
}

inline json to_json(const UnravelResult& r) {
  json fusions = json::array();
  for (const Edge& e : r.external_fusions) fusions.push_back({e.first.name(), e.second.name()});
  json journal = json::array();
  for (const UnravelEvent& ev : r.journal) journal.push_back(to_json(ev));
  return json{{"original", to_json(r.original)},
              {"unraveled", to_json(r.unraveled)},
              {"external_fusions", fusions},
              {"cliffords", to_json(r.cliffords)},
              {"journal", journal}};
}

inline UnravelResult unravel_result_from_json(const json& j) {
  UnravelResult r;
  r.original = graph_from_json(j.at("original"));
  r.unraveled = graph_from_json(j.at("unraveled"));
  for (const auto& e : j.at("external_fusions"))
    r.external_fusions.insert(make_edge(Vertex::parse(e[0].get<std::string>()),
                                        Vertex::parse(e[1].get<std::string>())));
  r.cliffords = clifford_record_from_json(j.at("cliffords"));
  for (const auto& ev : j.at("journal")) r.journal.push_back(unravel_event_from_json(ev));
  return r;
}

// Order indices (1-based round numbers) per link, when a schedule is known.
inline std::vector<int> link_order_labels(const FusionNetwork& net,
                                          const FusionSchedule& schedule) {
  std::vector<int> order(net.links.size(), 0);
  for (std::size_t round = 0; round < schedule.rounds.size(); ++round)
    for (int l : schedule.rounds[round]) {
      if (l < 0 || l >= static_cast<int>(order.size()))
        throw std::invalid_argument("schedule references an unknown link");
      order[l] = static_cast<int>(round) + 1;
    }
  return order;
}

inline json to_json(const FusionNetwork& net, const FusionSchedule* schedule = nullptr) {
  json nodes = json::array();
  for (const NetworkNode& n : net.nodes)
    nodes.push_back(json{{"name", n.name}, {"group", n.group.name()}, {"seed", n.is_seed}});
  std::vector<int> order;
  if (schedule) order = link_order_labels(net, *schedule);
  json links = json::array();
  for (std::size_t i = 0; i < net.links.size(); ++i) {
    const NetworkLink& l = net.links[i];
    json entry{{"a", net.nodes[l.a].name},
               {"b", net.nodes[l.b].name},
               {"type", to_string(l.kind())},
               {"roots", {l.root_a, l.root_b}},
               {"origin", to_string(l.origin)},
               {"clifford", l.clifford}};
    if (schedule) entry["order"] = order[i];
    links.push_back(entry);
  }
  json hosted = json::object();
  for (const auto& [v, node] : net.hosted) hosted[v.name()] = net.nodes[node].name;
  return json{{"nodes", nodes}, {"links", links}, {"hosted", hosted}};
}

inline FusionNetwork network_from_json(const json& j) {
  FusionNetwork net;
  std::map<std::string, int> index;
  for (const auto& n : j.at("nodes")) {
    NetworkNode node;
    node.name = n.at("name").get<std::string>();
    node.group = Vertex::parse(n.at("group").get<std::string>());
    node.is_seed = n.at("seed").get<bool>();
    node.free_leaf_slots = 0;
    index[node.name] = static_cast<int>(net.nodes.size());
    net.groups[node.group].push_back(static_cast<int>(net.nodes.size()));
    net.nodes.push_back(std::move(node));
  }
  for (const auto& l : j.at("links")) {
    NetworkLink link;
    link.a = index.at(l.at("a").get<std::string>());
    link.b = index.at(l.at("b").get<std::string>());
    link.root_a = l.at("roots")[0].get<bool>();
    link.root_b = l.at("roots")[1].get<bool>();
    const std::string origin = l.at("origin").get<std::string>();
    link.origin = origin == "intra"     ? LinkOrigin::IntraGroup
                  : origin == "inter"   ? LinkOrigin::InterGroup
                                        : LinkOrigin::External;
    link.clifford = l.at("clifford").get<bool>();
    if (link.root_a) net.nodes[link.a].root_used = true;
    if (link.root_b) net.nodes[link.b].root_used = true;
    net.links.push_back(link);
  }
  if (j.contains("hosted"))
    for (auto it = j.at("hosted").begin(); it != j.at("hosted").end(); ++it)
      net.hosted[Vertex::parse(it.key())] = index.at(it.value().get<std::string>());
  return net;
}

inline json to_json(const FusionSchedule& s) {
  return json{{"p_succ", s.p_succ},
              {"measure", to_string(s.measure)},
              {"q", s.q_value},
              {"rounds", s.rounds}};
}

inline FusionSchedule schedule_from_json(const json& j) {
  FusionSchedule s;
  s.p_succ = j.at("p_succ").get<double>();
  s.measure = j.at("measure").get<std::string>() == "fusions" ? Measure::Fusions
                                                              : Measure::Overhead;
  s.q_value = j.at("q").get<double>();
  s.rounds = j.at("rounds").get<std::vector<std::vector<int>>>();
  return s;
}

inline json to_json(const StrategyConfig& cfg) {
  return json{{"p_succ", cfg.p_succ},
              {"measure", to_string(cfg.measure)},
              {"unraveling", cfg.unraveling},
              {"min_weight_ordering", cfg.min_weight_ordering},
              {"master_seed", cfg.master_seed}};
}

inline StrategyConfig strategy_config_from_json(const json& j) {
  StrategyConfig cfg;
  cfg.p_succ = j.at("p_succ").get<double>();
  cfg.measure = j.at("measure").get<std::string>() == "fusions" ? Measure::Fusions
                                                                : Measure::Overhead;
  cfg.unraveling = j.at("unraveling").get<bool>();
  cfg.min_weight_ordering = j.at("min_weight_ordering").get<bool>();
  cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  return cfg;
}

inline json to_json(const Outcome& out, const StrategyConfig& cfg) {
  return json{{"q_opt", out.q_opt},
              {"trial_index", out.trial_index},
              {"trials_run", out.trials_run},
              {"config", to_json(cfg)},
              {"unravel", to_json(out.unravel_result)},
              {"network", to_json(out.network, &out.schedule)},
              {"schedule", to_json(out.schedule)}};
}

inline std::pair<Outcome, StrategyConfig> outcome_from_json(const json& j) {
  Outcome out;
  out.q_opt = j.at("q_opt").get<double>();
  out.trial_index = j.at("trial_index").get<std::uint64_t>();
  out.trials_run = j.at("trials_run").get<std::uint64_t>();
  out.unravel_result = unravel_result_from_json(j.at("unravel"));
  out.network = network_from_json(j.at("network"));
  out.schedule = schedule_from_json(j.at("schedule"));
  return {std::move(out), strategy_config_from_json(j.at("config"))};
}

// ---- DOT -------------------------------------------------------------

inline std::string quote(const std::string& s) { return "\"" + s + "\""; }

inline std::string to_dot(const Graph& g, const std::string& name = "G") {
  std::ostringstream out;
  out << "graph " << name << " {\n  node [shape=circle];\n";
  for (Vertex v : g.vertices()) out << "  " << quote(v.name()) << ";\n";
  for (const Edge& e : g.edges())
    out << "  " << quote(e.first.name()) << " -- " << quote(e.second.name()) << ";\n";
  out << "}\n";
  return out.str();
}

// Unraveled graph: orange vertices carry non-trivial Cliffords, red dashed
// edges are pending external fusions.
inline std::string to_dot(const UnravelResult& r) {
  std::ostringstream out;
  out << "graph unraveled {\n  node [shape=circle];\n";
  for (Vertex v : r.unraveled.vertices()) {
    out << "  " << quote(v.name());
    if (!r.cliffords.is_identity(v)) out << " [style=filled fillcolor=orange]";
    out << ";\n";
  }
  for (const Edge& e : r.unraveled.edges())
    out << "  " << quote(e.first.name()) << " -- " << quote(e.second.name()) << ";\n";
  for (const Edge& e : r.external_fusions)
    out << "  " << quote(e.first.name()) << " -- " << quote(e.second.name())
        << " [style=dashed color=red];\n";
  out << "}\n";
  return out.str();
}

// Fusion network: leaf-to-leaf links are solid black, root-to-root links red
// dashed, root-to-leaf links blue arrows pointing from the leaf-side node to
// the root-side node. Labels carry the fusion round and a trailing "C" when
// the fusion needs preceding single-qubit Cliffords.
inline std::string to_dot(const FusionNetwork& net, const FusionSchedule* schedule = nullptr) {
  std::vector<int> order;
  if (schedule) order = link_order_labels(net, *schedule);
  std::ostringstream out;
  out << "digraph network {\n  node [shape=circle];\n";
  for (const NetworkNode& n : net.nodes) {
    out << "  " << quote(n.name);
    if (n.is_seed) out << " [penwidth=2]";
    out << ";\n";
  }
  for (std::size_t i = 0; i < net.links.size(); ++i) {
    const NetworkLink& l = net.links[i];
    std::string label;
    if (schedule) label = std::to_string(order[i]) + (l.clifford ? "C" : "");
    else if (l.clifford) label = "C";
    std::string attrs;
    switch (l.kind()) {
      case LinkKind::LeafLeaf: attrs = "dir=none"; break;
      case LinkKind::RootRoot: attrs = "dir=none style=dashed color=red"; break;
      case LinkKind::RootLeaf: attrs = "color=blue"; break;
    }
    if (!label.empty()) attrs += " label=" + quote(label);
    int from = l.a, to = l.b;
    if (l.kind() == LinkKind::RootLeaf && l.root_a) std::swap(from, to);
    out << "  " << quote(net.nodes[from].name) << " -> " << quote(net.nodes[to].name) << " ["
        << attrs << "];\n";
  }
  out << "}\n";
  return out.str();
}

// ---- misc ------------------------------------------------------------

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t x) {
  std::ostringstream out;
  out << "0x" << std::hex << x;
  return out.str();
}

}  // namespace fusegraph
