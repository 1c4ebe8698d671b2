#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "shifteq/matrix.hpp"
#include "shifteq/quiver.hpp"

namespace shifteq {

/// One copy of a matrix entry realized as an edge: an l-edge q -> p
/// stands for a basis element of the (p, q) component of the left
/// bimodule, an r-edge t -> s for one of the (s, t) component of the
/// right one.
struct BimoduleEdge {
  std::size_t src = 0;
  std::size_t dst = 0;

  bool operator==(const BimoduleEdge&) const = default;
};

/// Everything derived from one factorization pair (L, R): the two
/// quivers with incidence LR and RL, the edge enumerations realizing L
/// and R, and the bijections between arrows and composable edge pairs.
///
/// Arrows of the LR quiver t -> p correspond to pairs (r-edge t -> q,
/// l-edge q -> p); arrows of the RL quiver q -> s to pairs (l-edge
/// q -> p, r-edge p -> s). Pairs are enumerated by (first edge, second
/// edge) index and matched to arrow copies in that order.
class FactorizationContext {
 public:
  FactorizationContext(IntMatrix l, IntMatrix r)
      : l_(std::move(l)), r_(std::move(r)) {
    require_nonnegative(l_, "FactorizationContext L");
    require_nonnegative(r_, "FactorizationContext R");
    if (l_.rows() != r_.cols() || l_.cols() != r_.rows())
      throw std::invalid_argument("FactorizationContext: L, R shape mismatch");
    const std::size_t i = l_.rows();
    const std::size_t j = l_.cols();

    // Edge enumerations, lexicographic by (dst, src, copy).
    for (std::size_t p = 0; p < i; ++p)
      for (std::size_t q = 0; q < j; ++q)
        for (Int c = 0; c < l_(p, q); ++c) l_edges_.push_back({q, p});
    for (std::size_t s = 0; s < j; ++s)
      for (std::size_t t = 0; t < i; ++t)
        for (Int c = 0; c < r_(s, t); ++c) r_edges_.push_back({t, s});

    quiver_lr_ = quiver_from_matrix(l_ * r_);
    quiver_rl_ = quiver_from_matrix(r_ * l_);

    // Composable pairs (r-edge f: t -> q, l-edge e: q -> p), grouped per
    // (t, p) in (f, e) order, matched to the arrow copies of the LR
    // quiver, which quiver_from_matrix orders the same way.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>
        arrows_by_ends;
    for (std::size_t a = 0; a < quiver_lr_.arrows().size(); ++a) {
      const Arrow& ar = quiver_lr_.arrows()[a];
      arrows_by_ends[{quiver_lr_.vertex_index(ar.src),
                      quiver_lr_.vertex_index(ar.dst)}]
          .push_back(a);
    }
    lr_pair_of_arrow_.resize(quiver_lr_.arrows().size());
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> used;
    for (std::size_t f = 0; f < r_edges_.size(); ++f)
      for (std::size_t e = 0; e < l_edges_.size(); ++e) {
        if (r_edges_[f].dst != l_edges_[e].src) continue;
        auto ends = std::make_pair(r_edges_[f].src, l_edges_[e].dst);
        std::size_t a = arrows_by_ends.at(ends).at(used[ends]++);
        lr_pair_of_arrow_[a] = {f, e};
        lr_arrow_of_pair_[{f, e}] = a;
      }

    // Composable pairs (l-edge e: q -> p, r-edge f: p -> s) against the
    // arrows of the RL quiver, same scheme.
    arrows_by_ends.clear();
    used.clear();
    for (std::size_t a = 0; a < quiver_rl_.arrows().size(); ++a) {
      const Arrow& ar = quiver_rl_.arrows()[a];
      arrows_by_ends[{quiver_rl_.vertex_index(ar.src),
                      quiver_rl_.vertex_index(ar.dst)}]
          .push_back(a);
    }
    rl_pair_of_arrow_.resize(quiver_rl_.arrows().size());
    for (std::size_t e = 0; e < l_edges_.size(); ++e)
      for (std::size_t f = 0; f < r_edges_.size(); ++f) {
        if (l_edges_[e].dst != r_edges_[f].src) continue;
        auto ends = std::make_pair(l_edges_[e].src, r_edges_[f].dst);
        std::size_t a = arrows_by_ends.at(ends).at(used[ends]++);
        rl_pair_of_arrow_[a] = {e, f};
        rl_arrow_of_pair_[{e, f}] = a;
      }
  }

  const IntMatrix& l() const { return l_; }
  const IntMatrix& r() const { return r_; }
  const Quiver& quiver_lr() const { return quiver_lr_; }
  const Quiver& quiver_rl() const { return quiver_rl_; }
  const std::vector<BimoduleEdge>& l_edges() const { return l_edges_; }
  const std::vector<BimoduleEdge>& r_edges() const { return r_edges_; }

  /// (r-edge, l-edge) pair labeling the given LR-quiver arrow.
  std::pair<std::size_t, std::size_t> lr_pair(std::size_t arrow) const {
    return lr_pair_of_arrow_.at(arrow);
  }
  /// (l-edge, r-edge) pair labeling the given RL-quiver arrow.
  std::pair<std::size_t, std::size_t> rl_pair(std::size_t arrow) const {
    return rl_pair_of_arrow_.at(arrow);
  }
  std::size_t lr_arrow(std::size_t r_edge, std::size_t l_edge) const {
    return lr_arrow_of_pair_.at({r_edge, l_edge});
  }
  std::size_t rl_arrow(std::size_t l_edge, std::size_t r_edge) const {
    return rl_arrow_of_pair_.at({l_edge, r_edge});
  }

  /// The same data with the roles of L and R swapped; composing the two
  /// functors in the other order is an application over the mirror.
  FactorizationContext mirrored() const { return FactorizationContext(r_, l_); }

 private:
  IntMatrix l_, r_;
  Quiver quiver_lr_, quiver_rl_;
  std::vector<BimoduleEdge> l_edges_, r_edges_;
  std::vector<std::pair<std::size_t, std::size_t>> lr_pair_of_arrow_;
  std::vector<std::pair<std::size_t, std::size_t>> rl_pair_of_arrow_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> lr_arrow_of_pair_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> rl_arrow_of_pair_;
};

inline FactorizationContext build_context(IntMatrix l, IntMatrix r) {
  return FactorizationContext(std::move(l), std::move(r));
}

/// A graded left module over the path algebra of `quiver`, truncated to
/// degrees 0..N: a dimension for every (degree, vertex) and, for every
/// arrow u -> v and degree n < N, a rational matrix of shape
/// dims(n+1, v) x dims(n, u). Over a tensor algebra any such data is a
/// module; there are no relations to satisfy.
class TruncatedGradedModule {
 public:
  TruncatedGradedModule(Quiver quiver, std::size_t trunc,
                        std::vector<std::vector<std::size_t>> dims,
                        std::vector<std::vector<RatMatrix>> action)
      : quiver_(std::move(quiver)), trunc_(trunc), dims_(std::move(dims)),
        action_(std::move(action)) {
    if (dims_.size() != trunc_ + 1)
      throw std::invalid_argument("module: dims table must cover degrees 0..N");
    for (const auto& row : dims_)
      if (row.size() != quiver_.vertices().size())
        throw std::invalid_argument("module: dims row has wrong width");
    if (action_.size() != quiver_.arrows().size())
      throw std::invalid_argument("module: one action list per arrow required");
    for (std::size_t a = 0; a < action_.size(); ++a) {
      if (action_[a].size() != trunc_)
        throw std::invalid_argument("module: action list must cover degrees 0..N-1");
      const Arrow& ar = quiver_.arrows()[a];
      const std::size_t u = quiver_.vertex_index(ar.src);
      const std::size_t v = quiver_.vertex_index(ar.dst);
      for (std::size_t n = 0; n < trunc_; ++n)
        if (action_[a][n].rows() != dims_[n + 1][v] ||
            action_[a][n].cols() != dims_[n][u])
          throw std::invalid_argument("module: action matrix for arrow " +
                                      ar.id + " at degree " +
                                      std::to_string(n) + " has wrong shape");
    }
  }

  const Quiver& quiver() const { return quiver_; }
  std::size_t trunc() const { return trunc_; }
  std::size_t dim(std::size_t degree, std::size_t vertex) const {
    return dims_[degree][vertex];
  }
  const std::vector<std::vector<std::size_t>>& dims() const { return dims_; }
  const RatMatrix& action(std::size_t arrow, std::size_t degree) const {
    return action_[arrow][degree];
  }

 private:
  Quiver quiver_;
  std::size_t trunc_;
  std::vector<std::vector<std::size_t>> dims_;
  std::vector<std::vector<RatMatrix>> action_;
};

/// Per-degree, per-vertex dimension table (the Hilbert data of the
/// truncation).
inline std::vector<std::vector<std::size_t>> hilbert(
    const TruncatedGradedModule& m) {
  return m.dims();
}

/// Degree-preserving homomorphism of truncated graded modules over one
/// quiver. The commuting squares against every arrow action are checked
/// exactly at construction; that check is precisely what being a module
/// homomorphism means here.
class GradedMorphism {
 public:
  GradedMorphism(TruncatedGradedModule source, TruncatedGradedModule target,
                 std::vector<std::vector<RatMatrix>> components)
      : source_(std::move(source)), target_(std::move(target)),
        components_(std::move(components)) {
    if (!(source_.quiver() == target_.quiver()) ||
        source_.trunc() != target_.trunc())
      throw std::invalid_argument("morphism: source and target do not match");
    const Quiver& q = source_.quiver();
    const std::size_t nv = q.vertices().size();
    if (components_.size() != source_.trunc() + 1)
      throw std::invalid_argument("morphism: component table must cover 0..N");
    for (std::size_t n = 0; n <= source_.trunc(); ++n) {
      if (components_[n].size() != nv)
        throw std::invalid_argument("morphism: component row has wrong width");
      for (std::size_t v = 0; v < nv; ++v)
        if (components_[n][v].rows() != target_.dim(n, v) ||
            components_[n][v].cols() != source_.dim(n, v))
          throw std::invalid_argument("morphism: component shape mismatch");
    }
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
      const std::size_t u = q.vertex_index(q.arrows()[a].src);
      const std::size_t v = q.vertex_index(q.arrows()[a].dst);
      for (std::size_t n = 0; n < source_.trunc(); ++n)
        if (components_[n + 1][v] * source_.action(a, n) !=
            target_.action(a, n) * components_[n][u])
          throw std::invalid_argument(
              "morphism: commuting square fails for arrow " + q.arrows()[a].id +
              " at degree " + std::to_string(n));
    }
  }

  const TruncatedGradedModule& source() const { return source_; }
  const TruncatedGradedModule& target() const { return target_; }
  const RatMatrix& component(std::size_t degree, std::size_t vertex) const {
    return components_[degree][vertex];
  }

 private:
  TruncatedGradedModule source_, target_;
  std::vector<std::vector<RatMatrix>> components_;
};

/// Free module kQ e_v truncated at N, in its path basis: the degree-n
/// component at vertex w has one basis element per length-n path from v
/// to w, in enumeration order, and each arrow acts by appending itself.
inline TruncatedGradedModule free_module(const Quiver& q, const std::string& v,
                                         std::size_t trunc) {
  q.vertex_index(v);
  const std::size_t nv = q.vertices().size();

  // Basis paths from v, bucketed per (degree, target vertex).
  std::vector<std::vector<std::vector<Path>>> basis(trunc + 1);
  std::vector<std::map<std::vector<std::string>, std::size_t>> index_of(trunc + 1);
  for (std::size_t n = 0; n <= trunc; ++n) {
    basis[n].assign(nv, {});
    for (const Path& p : enumerate_paths(q, n)) {
      if (path_source(p) != v) continue;
      const std::size_t w = q.vertex_index(path_target(q, p));
      index_of[n][p.arrows] = basis[n][w].size();
      basis[n][w].push_back(p);
    }
  }

  std::vector<std::vector<std::size_t>> dims(trunc + 1,
                                             std::vector<std::size_t>(nv, 0));
  for (std::size_t n = 0; n <= trunc; ++n)
    for (std::size_t w = 0; w < nv; ++w) dims[n][w] = basis[n][w].size();

  std::vector<std::vector<RatMatrix>> action(q.arrows().size());
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& ar = q.arrows()[a];
    const std::size_t u = q.vertex_index(ar.src);
    const std::size_t w = q.vertex_index(ar.dst);
    for (std::size_t n = 0; n < trunc; ++n) {
      RatMatrix m(dims[n + 1][w], dims[n][u]);
      for (std::size_t col = 0; col < basis[n][u].size(); ++col) {
        std::vector<std::string> extended = basis[n][u][col].arrows;
        extended.push_back(ar.id);
        m(index_of[n + 1].at(extended), col) = 1;
      }
      action[a].push_back(std::move(m));
    }
  }
  return TruncatedGradedModule(q, trunc, std::move(dims), std::move(action));
}

/// Simple module concentrated in degree zero at one vertex.
inline TruncatedGradedModule simple_module(const Quiver& q, const std::string& v,
                                           std::size_t trunc) {
  const std::size_t vi = q.vertex_index(v);
  const std::size_t nv = q.vertices().size();
  std::vector<std::vector<std::size_t>> dims(trunc + 1,
                                             std::vector<std::size_t>(nv, 0));
  dims[0][vi] = 1;
  std::vector<std::vector<RatMatrix>> action(q.arrows().size());
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const std::size_t u = q.vertex_index(q.arrows()[a].src);
    const std::size_t w = q.vertex_index(q.arrows()[a].dst);
    for (std::size_t n = 0; n < trunc; ++n)
      action[a].emplace_back(dims[n + 1][w], dims[n][u]);
  }
  return TruncatedGradedModule(q, trunc, std::move(dims), std::move(action));
}

/// Deterministic pseudo-random module: dimensions up to max_dim, action
/// entries small integers. The seed fully determines the result.
inline TruncatedGradedModule random_module(const Quiver& q, std::size_t trunc,
                                           std::uint64_t seed,
                                           std::size_t max_dim) {
  std::mt19937_64 rng(seed);
  const std::size_t nv = q.vertices().size();
  std::vector<std::vector<std::size_t>> dims(trunc + 1,
                                             std::vector<std::size_t>(nv, 0));
  for (std::size_t n = 0; n <= trunc; ++n)
    for (std::size_t v = 0; v < nv; ++v)
      dims[n][v] = static_cast<std::size_t>(rng() % (max_dim + 1));
  std::vector<std::vector<RatMatrix>> action(q.arrows().size());
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const std::size_t u = q.vertex_index(q.arrows()[a].src);
    const std::size_t w = q.vertex_index(q.arrows()[a].dst);
    for (std::size_t n = 0; n < trunc; ++n) {
      RatMatrix m(dims[n + 1][w], dims[n][u]);
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          m(i, j) = Rat(Int(rng() % 5)) - Rat(2);
      action[a].push_back(std::move(m));
    }
  }
  return TruncatedGradedModule(q, trunc, std::move(dims), std::move(action));
}

namespace detail {

// Direct-sum layout of the edges pointing at each vertex: which edges,
// in enumeration order, and the running offsets of their summands.
struct SummandLayout {
  std::vector<std::vector<std::size_t>> edges_at;  // per vertex, edge indices
};

inline SummandLayout layout(const std::vector<BimoduleEdge>& edges,
                            std::size_t vertex_count) {
  SummandLayout ly;
  ly.edges_at.assign(vertex_count, {});
  for (std::size_t e = 0; e < edges.size(); ++e)
    ly.edges_at[edges[e].dst].push_back(e);
  return ly;
}

}  // namespace detail

/// The functor sending an LR-quiver module M to the RL-quiver module
/// R (x) M: degree n at vertex s is the direct sum of M_n(t) over the
/// r-edges t -> s, with no degree shift. The arrow labeled by the pair
/// (e, f) acts into the summand of f, by the action of the LR-quiver
/// arrow labeled (f', e) out of each source summand f'.
inline TruncatedGradedModule apply_F(const FactorizationContext& ctx,
                                     const TruncatedGradedModule& m) {
  if (!(m.quiver() == ctx.quiver_lr()))
    throw std::invalid_argument("apply_F: module is not over the LR quiver");
  const Quiver& out_q = ctx.quiver_rl();
  const std::size_t trunc = m.trunc();
  const std::size_t nv = out_q.vertices().size();
  const detail::SummandLayout ly = detail::layout(ctx.r_edges(), nv);

  auto summand_dims = [&](std::size_t n, std::size_t s) {
    std::vector<std::size_t> out;
    for (std::size_t f : ly.edges_at[s])
      out.push_back(m.dim(n, ctx.r_edges()[f].src));
    return out;
  };

  std::vector<std::vector<std::size_t>> dims(trunc + 1,
                                             std::vector<std::size_t>(nv, 0));
  for (std::size_t n = 0; n <= trunc; ++n)
    for (std::size_t s = 0; s < nv; ++s) {
      std::size_t total = 0;
      for (std::size_t d : summand_dims(n, s)) total += d;
      dims[n][s] = total;
    }

  std::vector<std::vector<RatMatrix>> action(out_q.arrows().size());
  for (std::size_t b = 0; b < out_q.arrows().size(); ++b) {
    const auto [e, f] = ctx.rl_pair(b);
    const std::size_t src_q = ctx.l_edges()[e].src;  // arrow b: q -> s
    const std::size_t dst_s = ctx.r_edges()[f].dst;
    for (std::size_t n = 0; n < trunc; ++n) {
      RatMatrix mat(dims[n + 1][dst_s], dims[n][src_q]);
      // Row offset of the target summand indexed by f.
      std::size_t row0 = 0;
      for (std::size_t g : ly.edges_at[dst_s]) {
        if (g == f) break;
        row0 += m.dim(n + 1, ctx.r_edges()[g].src);
      }
      std::size_t col0 = 0;
      for (std::size_t fp : ly.edges_at[src_q]) {
        const RatMatrix& block = m.action(ctx.lr_arrow(fp, e), n);
        mat.set_block(row0, col0, block);
        col0 += block.cols();
      }
      action[b].push_back(std::move(mat));
    }
  }
  return TruncatedGradedModule(out_q, trunc, std::move(dims), std::move(action));
}

/// The other functor, carrying the degree shift: an RL-quiver module N
/// goes to the LR-quiver module with degree-n component at p the direct
/// sum of N_{n-1}(q) over the l-edges q -> p, and zero in degree 0.
inline TruncatedGradedModule apply_F_back(const FactorizationContext& ctx,
                                          const TruncatedGradedModule& n_mod) {
  if (!(n_mod.quiver() == ctx.quiver_rl()))
    throw std::invalid_argument("apply_F_back: module is not over the RL quiver");
  const Quiver& out_q = ctx.quiver_lr();
  const std::size_t trunc = n_mod.trunc();
  const std::size_t nv = out_q.vertices().size();
  const detail::SummandLayout ly = detail::layout(ctx.l_edges(), nv);

  std::vector<std::vector<std::size_t>> dims(trunc + 1,
                                             std::vector<std::size_t>(nv, 0));
  for (std::size_t n = 1; n <= trunc; ++n)
    for (std::size_t p = 0; p < nv; ++p) {
      std::size_t total = 0;
      for (std::size_t e : ly.edges_at[p])
        total += n_mod.dim(n - 1, ctx.l_edges()[e].src);
      dims[n][p] = total;
    }

  std::vector<std::vector<RatMatrix>> action(out_q.arrows().size());
  for (std::size_t a = 0; a < out_q.arrows().size(); ++a) {
    const auto [f, e] = ctx.lr_pair(a);  // arrow a: t -> p
    const std::size_t src_t = ctx.r_edges()[f].src;
    const std::size_t dst_p = ctx.l_edges()[e].dst;
    for (std::size_t n = 0; n < trunc; ++n) {
      RatMatrix mat(dims[n + 1][dst_p], dims[n][src_t]);
      if (n >= 1) {
        std::size_t row0 = 0;
        for (std::size_t g : ly.edges_at[dst_p]) {
          if (g == e) break;
          row0 += n_mod.dim(n, ctx.l_edges()[g].src);
        }
        std::size_t col0 = 0;
        for (std::size_t ep : ly.edges_at[src_t]) {
          const RatMatrix& block =
              n_mod.action(ctx.rl_arrow(ep, f), n - 1);
          mat.set_block(row0, col0, block);
          col0 += block.cols();
        }
      }
      action[a].push_back(std::move(mat));
    }
  }
  return TruncatedGradedModule(out_q, trunc, std::move(dims), std::move(action));
}

/// The natural map F'F(M) -> M given by the module action itself: the
/// block out of the summand indexed by (l-edge e: q -> p, r-edge
/// f: t -> q) at degree n is the action of the LR-quiver arrow labeled
/// (f, e) at degree n-1. Construction validates the commuting squares,
/// i.e. that this really is a homomorphism of graded modules.
inline GradedMorphism tau(const FactorizationContext& ctx,
                          const TruncatedGradedModule& m) {
  if (!(m.quiver() == ctx.quiver_lr()))
    throw std::invalid_argument("tau: module is not over the LR quiver");
  TruncatedGradedModule ffm = apply_F_back(ctx, apply_F(ctx, m));
  const Quiver& q = m.quiver();
  const std::size_t nv = q.vertices().size();
  const std::size_t trunc = m.trunc();
  const detail::SummandLayout l_ly = detail::layout(ctx.l_edges(), nv);

  std::vector<std::vector<RatMatrix>> comps(trunc + 1);
  for (std::size_t n = 0; n <= trunc; ++n) {
    comps[n].assign(nv, RatMatrix());
    for (std::size_t p = 0; p < nv; ++p) {
      RatMatrix c(m.dim(n, p), ffm.dim(n, p));
      if (n >= 1) {
        std::size_t col0 = 0;
        for (std::size_t e : l_ly.edges_at[p]) {
          const std::size_t q_mid = ctx.l_edges()[e].src;
          for (std::size_t f = 0; f < ctx.r_edges().size(); ++f) {
            if (ctx.r_edges()[f].dst != q_mid) continue;
            const RatMatrix& block = m.action(ctx.lr_arrow(f, e), n - 1);
            c.set_block(0, col0, block);
            col0 += block.cols();
          }
        }
      }
      comps[n][p] = std::move(c);
    }
  }
  return GradedMorphism(std::move(ffm), m, std::move(comps));
}

/// Exact kernel and cokernel dimensions of a morphism, per degree and
/// vertex, by rank computation over the rationals.
struct KernelCokernelDims {
  std::vector<std::vector<std::size_t>> ker;    // [degree][vertex]
  std::vector<std::vector<std::size_t>> coker;  // [degree][vertex]
};

inline KernelCokernelDims kernel_cokernel_dims(const GradedMorphism& phi) {
  const std::size_t trunc = phi.source().trunc();
  const std::size_t nv = phi.source().quiver().vertices().size();
  KernelCokernelDims out;
  out.ker.assign(trunc + 1, std::vector<std::size_t>(nv, 0));
  out.coker.assign(trunc + 1, std::vector<std::size_t>(nv, 0));
  for (std::size_t n = 0; n <= trunc; ++n)
    for (std::size_t v = 0; v < nv; ++v) {
      const RatMatrix& c = phi.component(n, v);
      const std::size_t rk = rank(c);
      out.ker[n][v] = c.cols() - rk;
      out.coker[n][v] = c.rows() - rk;
    }
  return out;
}

/// Dimension shadow of the isomorphism F'F(M) = (kQ)_{>=1} (x) M: in each
/// degree n >= 1 and at each vertex p, dim F'F(M)_n(p) must equal the sum
/// of dim M_{n-1}(t) over the quiver arrows t -> p.
struct EtaReport {
  bool ok = true;
  // (degree, vertex, lhs, rhs) for every failed comparison
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>>
      failures;
};

inline EtaReport check_eta_dimensions(const FactorizationContext& ctx,
                                      const TruncatedGradedModule& m) {
  if (!(m.quiver() == ctx.quiver_lr()))
    throw std::invalid_argument("check_eta_dimensions: module/context mismatch");
  const TruncatedGradedModule ffm = apply_F_back(ctx, apply_F(ctx, m));
  const Quiver& q = m.quiver();
  EtaReport rep;
  for (std::size_t n = 1; n <= m.trunc(); ++n)
    for (std::size_t p = 0; p < q.vertices().size(); ++p) {
      std::size_t rhs = 0;
      for (const Arrow& a : q.arrows())
        if (q.vertex_index(a.dst) == p)
          rhs += m.dim(n - 1, q.vertex_index(a.src));
      const std::size_t lhs = ffm.dim(n, p);
      if (lhs != rhs) {
        rep.ok = false;
        rep.failures.emplace_back(n, p, lhs, rhs);
      }
    }
  return rep;
}

/// Left-to-right composition of apply_F along a chain of contexts; the
/// RL quiver of each context must be the LR quiver of the next.
inline TruncatedGradedModule apply_chain(
    const std::vector<FactorizationContext>& ctxs,
    const TruncatedGradedModule& m) {
  TruncatedGradedModule cur = m;
  for (std::size_t k = 0; k < ctxs.size(); ++k) {
    if (!(cur.quiver() == ctxs[k].quiver_lr()))
      throw std::invalid_argument("apply_chain: incompatible at context " +
                                  std::to_string(k));
    cur = apply_F(ctxs[k], cur);
  }
  return cur;
}

}  // namespace shifteq
