#pragma once

#include <string>
#include <vector>

#include "shifteq/quiver.hpp"

namespace shifteq {

/// Leveled multigraph with dimension labels: level n+1 labels are the
/// incidence matrix applied to level n labels, and the edge multiplicity
/// between consecutive levels is the incidence matrix itself.
struct BratteliDiagram {
  Quiver quiver;
  IntMatrix edges;                      // incidence matrix of quiver
  std::vector<std::vector<Int>> labels; // [level][vertex], levels 0..N
};

/// Bratteli diagram of depth N for the quiver, starting from d0 (all
/// ones when omitted, one per vertex).
inline BratteliDiagram bratteli(const Quiver& q, std::size_t levels,
                                const std::vector<Int>& d0 = {}) {
  const std::size_t nv = q.vertices().size();
  std::vector<Int> start = d0;
  if (start.empty()) start.assign(nv, Int(1));
  if (start.size() != nv)
    throw std::invalid_argument("bratteli: d0 length must match vertex count");
  BratteliDiagram d{q, incidence_matrix(q), {}};
  d.labels.push_back(start);
  for (std::size_t n = 0; n < levels; ++n)
    d.labels.push_back(d.edges.apply(d.labels.back()));
  return d;
}

/// Deterministic DOT rendering: one ranked subgraph per level, vertices
/// labeled "id:dim", parallel edges repeated per multiplicity.
inline std::string emit_dot(const BratteliDiagram& d) {
  const std::size_t nv = d.quiver.vertices().size();
  std::string out = "digraph bratteli {\nrankdir=LR;\nnode [shape=plaintext];\n";
  for (std::size_t n = 0; n < d.labels.size(); ++n) {
    out += "subgraph level" + std::to_string(n) + " {\nrank=same;\n";
    for (std::size_t v = 0; v < nv; ++v) {
      out += "\"L" + std::to_string(n) + "_" + d.quiver.vertices()[v] +
             "\" [label=\"" + d.quiver.vertices()[v] + ":" +
             d.labels[n][v].str() + "\"];\n";
    }
    out += "}\n";
  }
  for (std::size_t n = 0; n + 1 < d.labels.size(); ++n)
    for (std::size_t j = 0; j < nv; ++j)
      for (std::size_t i = 0; i < nv; ++i)
        for (Int k = 0; k < d.edges(i, j); ++k)
          out += "\"L" + std::to_string(n) + "_" + d.quiver.vertices()[j] +
                 "\" -> \"L" + std::to_string(n + 1) + "_" +
                 d.quiver.vertices()[i] + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace shifteq
