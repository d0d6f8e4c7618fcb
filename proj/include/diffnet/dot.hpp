#pragma once

#include "diffnet/network.hpp"
#include "diffnet/structure.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace diffnet {

// Deterministic Graphviz rendering. Nodes are labeled "name:theta:{choices}";
// nodes holding a single product are filled with that product's color. When a
// level certificate is supplied, nodes of equal level share a rank.
inline std::string emit_dot(const Network& net, const ProductAssignment* state = nullptr,
                            const LevelCertificate* levels = nullptr) {
  static const char* kPalette[] = {"lightblue", "lightcoral", "palegreen",
                                   "gold",      "plum",       "khaki"};
  constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);
  const ProductAssignment& shown = state ? *state : net.initial();

  std::ostringstream out;
  out << "digraph diffusion {\n";
  out << "  rankdir=LR;\n";
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const ProductSet& s = shown.at(i);
    out << "  n" << i << " [label=\"" << net.node_name(i) << ':'
        << net.threshold(i).str() << ":{";
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k > 0) out << ',';
      out << net.product_name(s[k]);
    }
    out << "}\"";
    if (s.size() == 1) out << ",style=filled,fillcolor=" << kPalette[s.front() % kPaletteSize];
    out << "];\n";
  }
  std::vector<Edge> edges = net.edges();
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
  });
  for (const Edge& e : edges)
    out << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.weight.str() << "\"];\n";
  if (levels) {
    std::map<std::size_t, std::vector<NodeId>> by_level;
    for (NodeId i = 0; i < net.node_count(); ++i) by_level[levels->level[i]].push_back(i);
    for (const auto& [level, members] : by_level) {
      out << "  { rank=same;";
      for (NodeId i : members) out << " n" << i << ';';
      out << " }  // level " << level << '\n';
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace diffnet
