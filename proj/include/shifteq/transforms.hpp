#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "shifteq/quiver.hpp"

namespace shifteq {

namespace detail {

// A quiver together with, per arrow, the sequence of original arrows it
// stands for. Iterating the higher-edge construction on this carries the
// canonical path labeling along: ids stay equal to composition labels.
struct EdgeGraphState {
  Quiver graph;
  std::vector<std::vector<std::string>> arrow_seqs;
};

inline std::string seq_label(const std::vector<std::string>& seq) {
  std::string s;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) s += *it;
  return s;
}

inline EdgeGraphState higher_edge_step(const EdgeGraphState& st) {
  const auto& arrows = st.graph.arrows();
  std::vector<std::string> vertices;
  vertices.reserve(arrows.size());
  for (const Arrow& a : arrows) vertices.push_back(a.id);

  std::vector<Arrow> out_arrows;
  std::vector<std::vector<std::string>> out_seqs;
  for (std::size_t a = 0; a < arrows.size(); ++a)
    for (std::size_t b = 0; b < arrows.size(); ++b) {
      if (arrows[a].dst != arrows[b].src) continue;
      std::vector<std::string> seq = st.arrow_seqs[a];
      seq.push_back(st.arrow_seqs[b].back());
      out_arrows.push_back(Arrow{seq_label(seq), arrows[a].id, arrows[b].id});
      out_seqs.push_back(std::move(seq));
    }
  return EdgeGraphState{Quiver(std::move(vertices), std::move(out_arrows)),
                        std::move(out_seqs)};
}

inline EdgeGraphState initial_state(const Quiver& q) {
  std::vector<std::vector<std::string>> seqs;
  seqs.reserve(q.arrows().size());
  for (const Arrow& a : q.arrows()) seqs.push_back({a.id});
  return EdgeGraphState{q, std::move(seqs)};
}

}  // namespace detail

/// Higher edge graph: vertices are the arrows of Q, with one arrow a -> b
/// for every length-two path "first a then b". Arrow ids are the
/// composition labels of those paths, so the incidence matrix is 0-1.
inline Quiver higher_edge_graph(const Quiver& q) {
  return detail::higher_edge_step(detail::initial_state(q)).graph;
}

/// (n-1)-fold iterate of higher_edge_graph, carrying the canonical path
/// labeling: vertices are the paths of length n-1, arrows the paths of
/// length n, both named by composition labels.
inline Quiver higher_edge_graph_n(const Quiver& q, std::size_t n) {
  if (n < 2) throw std::invalid_argument("higher_edge_graph_n requires n >= 2");
  detail::EdgeGraphState st = detail::initial_state(q);
  for (std::size_t k = 1; k < n; ++k) st = detail::higher_edge_step(st);
  return st.graph;
}

/// Higher power graph: the canonical quiver whose incidence matrix is the
/// l-th power of the incidence matrix of Q.
inline Quiver power_graph(const Quiver& q, std::size_t l) {
  if (l < 1) throw std::invalid_argument("power_graph requires l >= 1");
  return quiver_from_matrix(incidence_matrix(q).pow(l));
}

/// The target/source indicator factorization: L is |Q0| x |Q1| with
/// L(i, a) = 1 iff a ends at i, R is |Q1| x |Q0| with R(a, i) = 1 iff a
/// starts at i. Then LR is the incidence matrix of Q and RL the incidence
/// matrix of the higher edge graph.
inline std::pair<IntMatrix, IntMatrix> split_LR(const Quiver& q) {
  const std::size_t nv = q.vertices().size();
  const std::size_t na = q.arrows().size();
  IntMatrix l(nv, na), r(na, nv);
  for (std::size_t a = 0; a < na; ++a) {
    l(q.vertex_index(q.arrows()[a].dst), a) = 1;
    r(a, q.vertex_index(q.arrows()[a].src)) = 1;
  }
  return {l, r};
}

/// Ordered partition of the in-arrows (for an in-split) or out-arrows
/// (for an out-split) of one vertex into nonempty classes.
struct SplitSpec {
  std::string vertex;
  std::vector<std::vector<std::string>> classes;
};

struct SplitResult {
  Quiver quiver;
  IntMatrix l;
  IntMatrix r;
};

namespace detail {

// Validates the partition and returns, per arrow index, its class (or
// npos for arrows not incident the required way).
inline std::vector<std::size_t> partition_classes(const Quiver& q,
                                                  const SplitSpec& spec,
                                                  bool split_in) {
  const auto incident =
      split_in ? q.in_arrows(spec.vertex) : q.out_arrows(spec.vertex);
  std::set<std::string> incident_ids;
  for (std::size_t a : incident) incident_ids.insert(q.arrows()[a].id);

  std::map<std::string, std::size_t> cls;
  for (std::size_t c = 0; c < spec.classes.size(); ++c) {
    if (spec.classes[c].empty())
      throw std::invalid_argument("split: empty partition class");
    for (const std::string& id : spec.classes[c]) {
      if (!incident_ids.count(id))
        throw std::invalid_argument("split: arrow " + id +
                                    " is not incident to " + spec.vertex);
      if (!cls.emplace(id, c).second)
        throw std::invalid_argument("split: arrow " + id +
                                    " appears in two classes");
    }
  }
  if (cls.size() != incident_ids.size())
    throw std::invalid_argument("split: partition does not cover all arrows");

  std::vector<std::size_t> out(q.arrows().size(), static_cast<std::size_t>(-1));
  for (std::size_t a : incident) out[a] = cls.at(q.arrows()[a].id);
  return out;
}

inline std::vector<std::string> split_vertex_ids(const std::string& v,
                                                 std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i)
    out.push_back(v + "#" + std::to_string(i));
  return out;
}

inline std::vector<std::string> replace_vertex(
    const std::vector<std::string>& vertices, const std::string& v,
    const std::vector<std::string>& copies) {
  std::vector<std::string> out;
  for (const auto& w : vertices) {
    if (w == v)
      out.insert(out.end(), copies.begin(), copies.end());
    else
      out.push_back(w);
  }
  return out;
}

}  // namespace detail

/// In-split at spec.vertex. The split vertex v becomes one copy per
/// partition class; an in-arrow lands at the copy of its class, an
/// out-arrow is replicated to all copies, and a loop does both. The
/// returned (L, R) witness the elementary strong shift equivalence
/// between the two incidence matrices and are re-verified by
/// multiplication before returning.
inline SplitResult in_split(const Quiver& q, const SplitSpec& spec) {
  q.vertex_index(spec.vertex);  // throws on unknown vertex
  const auto cls = detail::partition_classes(q, spec, /*split_in=*/true);
  const std::size_t n = spec.classes.size();
  const std::string& v = spec.vertex;
  const auto copies = detail::split_vertex_ids(v, n);

  std::vector<Arrow> arrows;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& ar = q.arrows()[a];
    const bool loop = ar.src == v && ar.dst == v;
    if (loop) {
      for (std::size_t j = 0; j < n; ++j)
        arrows.push_back(Arrow{ar.id + "#" + std::to_string(j + 1),
                               copies[j], copies[cls[a]]});
    } else if (ar.dst == v) {
      arrows.push_back(Arrow{ar.id, ar.src, copies[cls[a]]});
    } else if (ar.src == v) {
      for (std::size_t j = 0; j < n; ++j)
        arrows.push_back(Arrow{ar.id + "#" + std::to_string(j + 1),
                               copies[j], ar.dst});
    } else {
      arrows.push_back(ar);
    }
  }
  Quiver split(detail::replace_vertex(q.vertices(), v, copies), std::move(arrows));

  const IntMatrix c = incidence_matrix(q);
  IntMatrix l(q.vertices().size(), split.vertices().size());
  IntMatrix r(split.vertices().size(), q.vertices().size());
  for (std::size_t w = 0; w < q.vertices().size(); ++w)
    for (std::size_t x = 0; x < split.vertices().size(); ++x) {
      const std::string& wid = q.vertices()[w];
      const std::string& xid = split.vertices()[x];
      const bool copy_of =
          wid == v ? std::find(copies.begin(), copies.end(), xid) != copies.end()
                   : xid == wid;
      if (copy_of) l(w, x) = 1;
    }
  for (std::size_t x = 0; x < split.vertices().size(); ++x) {
    const std::string& xid = split.vertices()[x];
    auto copy_it = std::find(copies.begin(), copies.end(), xid);
    for (std::size_t u = 0; u < q.vertices().size(); ++u) {
      if (copy_it == copies.end()) {
        r(x, u) = c(q.vertex_index(xid), u);
      } else {
        const std::size_t i = copy_it - copies.begin();
        Int count = 0;
        for (std::size_t a = 0; a < q.arrows().size(); ++a)
          if (cls[a] == i && q.arrows()[a].src == q.vertices()[u]) count += 1;
        r(x, u) = count;
      }
    }
  }

  if (l * r != c || r * l != incidence_matrix(split))
    throw std::logic_error("in_split: witness verification failed");
  return SplitResult{std::move(split), std::move(l), std::move(r)};
}

/// Out-split at spec.vertex: the dual construction, based on the arrows
/// leaving the vertex. Witnesses verified by multiplication as above.
inline SplitResult out_split(const Quiver& q, const SplitSpec& spec) {
  q.vertex_index(spec.vertex);
  const auto cls = detail::partition_classes(q, spec, /*split_in=*/false);
  const std::size_t n = spec.classes.size();
  const std::string& v = spec.vertex;
  const auto copies = detail::split_vertex_ids(v, n);

  std::vector<Arrow> arrows;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& ar = q.arrows()[a];
    const bool loop = ar.src == v && ar.dst == v;
    if (loop) {
      for (std::size_t j = 0; j < n; ++j)
        arrows.push_back(Arrow{ar.id + "#" + std::to_string(j + 1),
                               copies[cls[a]], copies[j]});
    } else if (ar.src == v) {
      arrows.push_back(Arrow{ar.id, copies[cls[a]], ar.dst});
    } else if (ar.dst == v) {
      for (std::size_t j = 0; j < n; ++j)
        arrows.push_back(Arrow{ar.id + "#" + std::to_string(j + 1),
                               ar.src, copies[j]});
    } else {
      arrows.push_back(ar);
    }
  }
  Quiver split(detail::replace_vertex(q.vertices(), v, copies), std::move(arrows));

  const IntMatrix c = incidence_matrix(q);
  IntMatrix l(q.vertices().size(), split.vertices().size());
  IntMatrix r(split.vertices().size(), q.vertices().size());
  for (std::size_t x = 0; x < split.vertices().size(); ++x) {
    const std::string& xid = split.vertices()[x];
    auto copy_it = std::find(copies.begin(), copies.end(), xid);
    for (std::size_t u = 0; u < q.vertices().size(); ++u) {
      const std::string& uid = q.vertices()[u];
      const bool copy_of = uid == v ? copy_it != copies.end() : xid == uid;
      if (copy_of) r(x, u) = 1;
    }
  }
  for (std::size_t w = 0; w < q.vertices().size(); ++w) {
    const std::string& wid = q.vertices()[w];
    for (std::size_t x = 0; x < split.vertices().size(); ++x) {
      const std::string& xid = split.vertices()[x];
      auto copy_it = std::find(copies.begin(), copies.end(), xid);
      if (copy_it == copies.end()) {
        l(w, x) = c(w, q.vertex_index(xid));
      } else {
        const std::size_t i = copy_it - copies.begin();
        Int count = 0;
        for (std::size_t a = 0; a < q.arrows().size(); ++a)
          if (cls[a] == i && q.arrows()[a].dst == wid) count += 1;
        l(w, x) = count;
      }
    }
  }

  if (l * r != c || r * l != incidence_matrix(split))
    throw std::logic_error("out_split: witness verification failed");
  return SplitResult{std::move(split), std::move(l), std::move(r)};
}

}  // namespace shifteq
