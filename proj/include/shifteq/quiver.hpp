#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "shifteq/matrix.hpp"

namespace shifteq {

struct Arrow {
  std::string id;
  std::string src;
  std::string dst;

  bool operator==(const Arrow&) const = default;
};

/// Finite directed multigraph. Loops and parallel arrows are allowed.
/// The stored vertex order is significant: it fixes matrix indexing in
/// every operation that produces or consumes an incidence matrix.
class Quiver {
 public:
  Quiver() = default;

  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
      : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (!vertex_index_.emplace(vertices_[i], i).second)
        throw std::invalid_argument("duplicate vertex id: " + vertices_[i]);
    }
    std::map<std::string, std::size_t> seen;
    for (std::size_t a = 0; a < arrows_.size(); ++a) {
      const Arrow& ar = arrows_[a];
      if (!seen.emplace(ar.id, a).second)
        throw std::invalid_argument("duplicate arrow id: " + ar.id);
      if (!vertex_index_.count(ar.src))
        throw std::invalid_argument("arrow " + ar.id + ": unknown source " + ar.src);
      if (!vertex_index_.count(ar.dst))
        throw std::invalid_argument("arrow " + ar.id + ": unknown target " + ar.dst);
    }
  }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  bool has_vertex(const std::string& id) const { return vertex_index_.count(id) > 0; }

  std::size_t vertex_index(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end())
      throw std::invalid_argument("unknown vertex id: " + id);
    return it->second;
  }

  /// Indices of arrows ending at v, in stored arrow order.
  std::vector<std::size_t> in_arrows(const std::string& v) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < arrows_.size(); ++a)
      if (arrows_[a].dst == v) out.push_back(a);
    return out;
  }

  /// Indices of arrows starting at v, in stored arrow order.
  std::vector<std::size_t> out_arrows(const std::string& v) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < arrows_.size(); ++a)
      if (arrows_[a].src == v) out.push_back(a);
    return out;
  }

  bool operator==(const Quiver& o) const {
    return vertices_ == o.vertices_ && arrows_ == o.arrows_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, std::size_t> vertex_index_;
};

/// A path, stored in traversal order (first arrow traversed first).
/// `base` is the start vertex; it carries the whole information for the
/// trivial path of length zero.
struct Path {
  std::string base;
  std::vector<std::string> arrows;

  std::size_t length() const { return arrows.size(); }
  bool operator==(const Path&) const = default;
};

inline std::string path_source(const Path& p) { return p.base; }

inline std::string path_target(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return p.base;
  for (const Arrow& a : q.arrows())
    if (a.id == p.arrows.back()) return a.dst;
  throw std::invalid_argument("path uses unknown arrow: " + p.arrows.back());
}

/// Composition label: arrows written right-to-left, so the path
/// "first a then b" prints as "ba". Trivial paths print their vertex.
inline std::string path_label(const Path& p) {
  if (p.arrows.empty()) return p.base;
  std::string s;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) s += *it;
  return s;
}

/// Incidence matrix: entry (i, j) counts the arrows from vertex j to
/// vertex i, rows and columns in stored vertex order.
inline IntMatrix incidence_matrix(const Quiver& q) {
  const std::size_t n = q.vertices().size();
  IntMatrix c(n, n);
  for (const Arrow& a : q.arrows())
    c(q.vertex_index(a.dst), q.vertex_index(a.src)) += 1;
  return c;
}

/// Quiver with the given incidence matrix: vertices "v1".."vn", the k-th
/// arrow from vertex j to vertex i named "a_<j>_<i>_<k>" (1-based), arrows
/// ordered by (source, target, copy).
inline Quiver quiver_from_matrix(const IntMatrix& c) {
  if (!c.is_square())
    throw std::invalid_argument("incidence matrix must be square");
  require_nonnegative(c, "incidence matrix");
  const std::size_t n = c.rows();
  std::vector<std::string> vertices;
  vertices.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    vertices.push_back("v" + std::to_string(i + 1));
  std::vector<Arrow> arrows;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (Int k = 1; k <= c(i, j); ++k)
        arrows.push_back(Arrow{"a_" + std::to_string(j + 1) + "_" +
                                   std::to_string(i + 1) + "_" + k.str(),
                               vertices[j], vertices[i]});
  return Quiver(std::move(vertices), std::move(arrows));
}

/// All paths of length n, ordered lexicographically by their arrow-id
/// sequence in traversal order. For n = 0 this is one trivial path per
/// vertex, in stored vertex order.
inline std::vector<Path> enumerate_paths(const Quiver& q, std::size_t n) {
  std::vector<Path> result;
  if (n == 0) {
    for (const auto& v : q.vertices()) result.push_back(Path{v, {}});
    return result;
  }
  // Arrow indices sorted by id, grouped by source vertex, so that the
  // depth-first extension below emits paths already in lex order.
  std::vector<std::size_t> order(q.arrows().size());
  for (std::size_t a = 0; a < order.size(); ++a) order[a] = a;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return q.arrows()[a].id < q.arrows()[b].id;
  });
  std::map<std::string, std::vector<std::size_t>> from;
  for (std::size_t a : order) from[q.arrows()[a].src].push_back(a);

  std::vector<std::string> current;
  auto extend = [&](auto&& self, const std::string& at, std::size_t remaining) -> void {
    if (remaining == 0) {
      result.push_back(Path{{}, current});  // base filled in below
      return;
    }
    auto it = from.find(at);
    if (it == from.end()) return;
    for (std::size_t a : it->second) {
      current.push_back(q.arrows()[a].id);
      self(self, q.arrows()[a].dst, remaining - 1);
      current.pop_back();
    }
  };
  for (std::size_t a : order) {
    current.push_back(q.arrows()[a].id);
    extend(extend, q.arrows()[a].dst, n - 1);
    current.pop_back();
  }
  // Fill in the base vertex (source of the first arrow).
  std::map<std::string, const Arrow*> by_id;
  for (const Arrow& a : q.arrows()) by_id[a.id] = &a;
  for (Path& p : result)
    if (!p.arrows.empty()) p.base = by_id[p.arrows.front()]->src;
  return result;
}

/// Number of paths of length n from `from` to `to`; equals the (to, from)
/// entry of the n-th power of the incidence matrix.
inline Int count_paths(const Quiver& q, std::size_t n, const std::string& from,
                       const std::string& to) {
  std::size_t fi = q.vertex_index(from);
  std::size_t ti = q.vertex_index(to);
  return incidence_matrix(q).pow(n)(ti, fi);
}

/// Same quiver with every arrow reversed; ids and orders unchanged.
inline Quiver reverse_quiver(const Quiver& q) {
  std::vector<Arrow> arrows = q.arrows();
  for (Arrow& a : arrows) std::swap(a.src, a.dst);
  return Quiver(q.vertices(), std::move(arrows));
}

}  // namespace shifteq
