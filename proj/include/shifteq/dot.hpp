#pragma once

#include <string>

#include "shifteq/quiver.hpp"

namespace shifteq {

/// Deterministic DOT for a directed multigraph: one edge statement per
/// arrow, the arrow id as edge label, vertices and arrows in stored order.
inline std::string quiver_to_dot(const Quiver& q) {
  std::string out = "digraph quiver {\n";
  for (const auto& v : q.vertices()) out += "\"" + v + "\";\n";
  for (const Arrow& a : q.arrows())
    out += "\"" + a.src + "\" -> \"" + a.dst + "\" [label=\"" + a.id + "\"];\n";
  out += "}\n";
  return out;
}

}  // namespace shifteq
