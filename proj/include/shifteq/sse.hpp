#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "shifteq/invariants.hpp"
#include "shifteq/matrix.hpp"

namespace shifteq {

/// One elementary strong shift equivalence: A = LR and B = RL, checked
/// exactly at construction.
class SSEStep {
 public:
  SSEStep(IntMatrix l, IntMatrix r) : l_(std::move(l)), r_(std::move(r)) {
    require_nonnegative(l_, "SSEStep L");
    require_nonnegative(r_, "SSEStep R");
    if (l_.rows() != r_.cols() || l_.cols() != r_.rows())
      throw std::invalid_argument("SSEStep: L and R shapes incompatible");
    a_ = l_ * r_;
    b_ = r_ * l_;
  }

  const IntMatrix& l() const { return l_; }
  const IntMatrix& r() const { return r_; }
  const IntMatrix& a() const { return a_; }
  const IntMatrix& b() const { return b_; }

 private:
  IntMatrix l_, r_, a_, b_;
};

/// A chain of elementary strong shift equivalences; consecutive
/// compatibility (steps[i].B == steps[i+1].A) is checked at construction.
class SSEChain {
 public:
  explicit SSEChain(std::vector<SSEStep> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) throw std::invalid_argument("SSEChain: empty chain");
    for (std::size_t i = 0; i + 1 < steps_.size(); ++i)
      if (steps_[i].b() != steps_[i + 1].a())
        throw std::invalid_argument("SSEChain: incompatible at step " +
                                    std::to_string(i));
  }

  const std::vector<SSEStep>& steps() const { return steps_; }
  const IntMatrix& a() const { return steps_.front().a(); }
  const IntMatrix& b() const { return steps_.back().b(); }

 private:
  std::vector<SSEStep> steps_;
};

/// Claimed witness for a shift equivalence of lag `lag`.
struct SEWitness {
  IntMatrix l;
  IntMatrix r;
  std::size_t lag = 1;
};

struct EqualityFailure {
  std::string equality;  // e.g. "A=LR"
  std::size_t row = 0;
  std::size_t col = 0;
  Int lhs;
  Int rhs;
};

struct VerifyReport {
  bool ok = true;
  std::vector<EqualityFailure> failures;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
};

inline bool has_zero_line(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) zero = false;
    if (zero) return true;
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) zero = false;
    if (zero) return true;
  }
  return false;
}

namespace detail {

inline void compare_into(VerifyReport& rep, const std::string& name,
                         const IntMatrix& lhs, const IntMatrix& rhs) {
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j)
      if (lhs(i, j) != rhs(i, j)) {
        rep.ok = false;
        rep.failures.push_back({name, i, j, lhs(i, j), rhs(i, j)});
      }
}

}  // namespace detail

/// Checks A = LR and B = RL exactly; failures name the equality and the
/// entry where it broke. Incompatible shapes are an error, not a failure.
inline VerifyReport verify_elementary(const IntMatrix& a, const IntMatrix& b,
                                      const IntMatrix& l, const IntMatrix& r) {
  if (!a.is_square() || !b.is_square())
    throw std::invalid_argument("verify_elementary: A and B must be square");
  if (l.rows() != a.rows() || l.cols() != b.rows() || r.rows() != b.rows() ||
      r.cols() != a.rows())
    throw std::invalid_argument("verify_elementary: witness shape mismatch");
  VerifyReport rep;
  if (!is_nonnegative(l)) {
    rep.ok = false;
    rep.notes.push_back("L has a negative entry");
  }
  if (!is_nonnegative(r)) {
    rep.ok = false;
    rep.notes.push_back("R has a negative entry");
  }
  detail::compare_into(rep, "A=LR", a, l * r);
  detail::compare_into(rep, "B=RL", b, r * l);
  if (has_zero_line(a)) rep.warnings.push_back("A has a zero row or column");
  if (has_zero_line(b)) rep.warnings.push_back("B has a zero row or column");
  return rep;
}

struct ChainFailure {
  std::size_t step = 0;  // index of the first step involved
  std::string what;
};

struct ChainReport {
  bool ok = true;
  std::vector<ChainFailure> failures;
};

/// Checks a raw list of (L, R) pairs as a strong shift equivalence chain
/// from A to B. Nothing throws: every defect is reported with the index
/// of the first step where it appears.
inline ChainReport verify_chain(
    const std::vector<std::pair<IntMatrix, IntMatrix>>& steps,
    const IntMatrix& a, const IntMatrix& b) {
  ChainReport rep;
  if (steps.empty()) {
    rep.ok = false;
    rep.failures.push_back({0, "chain is empty"});
    return rep;
  }
  std::vector<std::optional<IntMatrix>> lr(steps.size()), rl(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& [l, r] = steps[i];
    if (l.rows() != r.cols() || l.cols() != r.rows()) {
      rep.ok = false;
      rep.failures.push_back({i, "L and R shapes incompatible"});
      continue;
    }
    if (!is_nonnegative(l) || !is_nonnegative(r)) {
      rep.ok = false;
      rep.failures.push_back({i, "negative entry in witness"});
      continue;
    }
    lr[i] = l * r;
    rl[i] = r * l;
  }
  if (lr[0] && *lr[0] != a) {
    rep.ok = false;
    rep.failures.push_back({0, "first step's LR differs from A"});
  }
  if (rl.back() && *rl.back() != b) {
    rep.ok = false;
    rep.failures.push_back({steps.size() - 1, "last step's RL differs from B"});
  }
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    if (rl[i] && lr[i + 1] && *rl[i] != *lr[i + 1]) {
      rep.ok = false;
      rep.failures.push_back(
          {i, "step " + std::to_string(i) + " RL differs from step " +
                  std::to_string(i + 1) + " LR"});
    }
  return rep;
}

/// Checks the four shift-equivalence identities AL = LB, RA = BR,
/// A^lag = LR, B^lag = RL, each reported separately. The intertwining is
/// checked as RA = BR; the report records that convention.
inline VerifyReport verify_shift_equivalence(const IntMatrix& a,
                                             const IntMatrix& b,
                                             const SEWitness& w) {
  if (!a.is_square() || !b.is_square())
    throw std::invalid_argument("verify_shift_equivalence: A and B must be square");
  if (w.lag < 1)
    throw std::invalid_argument("verify_shift_equivalence: lag must be >= 1");
  if (w.l.rows() != a.rows() || w.l.cols() != b.rows() ||
      w.r.rows() != b.rows() || w.r.cols() != a.rows())
    throw std::invalid_argument("verify_shift_equivalence: witness shape mismatch");
  VerifyReport rep;
  rep.notes.push_back("intertwining convention: RA = BR");
  detail::compare_into(rep, "AL=LB", a * w.l, w.l * b);
  detail::compare_into(rep, "RA=BR", w.r * a, b * w.r);
  detail::compare_into(rep, "A^l=LR", a.pow(w.lag), w.l * w.r);
  detail::compare_into(rep, "B^l=RL", b.pow(w.lag), w.r * w.l);
  if (has_zero_line(a)) rep.warnings.push_back("A has a zero row or column");
  if (has_zero_line(b)) rep.warnings.push_back("B has a zero row or column");
  return rep;
}

// ---------------------------------------------------------------------------
// Canonicalization for visited-set deduplication.

/// Exact canonical form: the lexicographically least row-major flattening
/// over all simultaneous row/column permutations. Feasible up to n = 6.
inline std::vector<Int> canonical_flat_exact(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Int> best;
  std::vector<Int> cur(n * n);
  do {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cur[i * n + j] = m(perm[i], perm[j]);
    if (best.empty() || cur < best) best = cur;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (best.empty()) best = {};
  return best;
}

namespace detail {

// Deterministic refinement preform for n > 6: order indices by iterated
// neighborhood signatures, break remaining ties by original index. Two
// matrices with equal preforms are permutation-equivalent; the converse
// can fail, which only costs duplicated search work, never correctness.
inline std::vector<Int> canonical_flat_heuristic(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> color(n, 0);
  for (std::size_t round = 0; round < 3; ++round) {
    std::vector<std::vector<Int>> sig(n);
    for (std::size_t i = 0; i < n; ++i) {
      sig[i].push_back(Int(color[i]));
      sig[i].push_back(m(i, i));
      std::vector<Int> out, in;
      for (std::size_t j = 0; j < n; ++j) {
        out.push_back(m(j, i) * Int(n) + Int(color[j]));
        in.push_back(m(i, j) * Int(n) + Int(color[j]));
      }
      std::sort(out.begin(), out.end());
      std::sort(in.begin(), in.end());
      sig[i].insert(sig[i].end(), out.begin(), out.end());
      sig[i].insert(sig[i].end(), in.begin(), in.end());
    }
    std::vector<std::vector<Int>> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 0; i < n; ++i)
      color[i] = std::lower_bound(sorted.begin(), sorted.end(), sig[i]) -
                 sorted.begin();
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
    return color[x] < color[y];
  });
  std::vector<Int> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = m(perm[i], perm[j]);
  return flat;
}

}  // namespace detail

struct CanonicalKey {
  std::size_t n = 0;
  bool exact = true;
  std::vector<Int> flat;

  auto operator<=>(const CanonicalKey&) const = default;
};

/// Deduplication key invariant under simultaneous permutation (exactly
/// for n <= 6, heuristically above; the `exact` flag records which).
inline CanonicalKey canonical_key(const IntMatrix& m) {
  if (!m.is_square())
    throw std::invalid_argument("canonical_key: matrix not square");
  const std::size_t n = m.rows();
  if (n <= 6) return {n, true, canonical_flat_exact(m)};
  return {n, false, detail::canonical_flat_heuristic(m)};
}

// ---------------------------------------------------------------------------
// Bounded searches.

enum class SearchOutcome { found, exhausted_bounds, budget_exhausted };

inline std::string to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::found: return "found";
    case SearchOutcome::exhausted_bounds: return "exhausted bounds";
    case SearchOutcome::budget_exhausted: return "budget exhausted";
  }
  return "?";
}

struct ElementarySearchResult {
  std::optional<SSEStep> step;
  SearchOutcome outcome = SearchOutcome::exhausted_bounds;
  std::uint64_t nodes = 0;
  std::string note;
};

namespace detail {

// Backtracking enumerator for factorizations M = L R with a fixed inner
// dimension. L is built column by column and R row by row, interleaved,
// with the running sum of outer products pinned below M (equal at the
// last level) and dot-product constraints against a target B checked as
// soon as both vectors of a dot are available. A node is one attempted
// entry placement; the budget caps the node count.
class FactorSearch {
 public:
  // target_b empty: enumerate all factorizations, reporting each RL to
  // the sink. target_b set: only factorizations with RL == *target_b.
  FactorSearch(const IntMatrix& m, std::size_t inner_dim, const Int& entry_max,
               std::uint64_t budget, std::uint64_t& nodes,
               const IntMatrix* target_b)
      : m_(m), k_(inner_dim), entry_max_(entry_max), budget_(budget),
        nodes_(nodes), target_b_(target_b), size_(m.rows()),
        partial_(m.rows(), m.rows()) {
    lcols_.assign(k_, std::vector<Int>(size_));
    rrows_.assign(k_, std::vector<Int>(size_));
  }

  // Runs the enumeration; sink(L, R) is called for every factorization
  // found and stops everything when it returns true.
  template <typename Sink>
  bool run(Sink&& sink) {
    sink_stopped_ = false;
    descend(0, sink);
    return sink_stopped_;
  }

  bool budget_hit() const { return budget_hit_; }

 private:
  bool tick() {
    if (nodes_ >= budget_) {
      budget_hit_ = true;
      return false;
    }
    ++nodes_;
    return true;
  }

  template <typename Sink>
  void descend(std::size_t level, Sink& sink) {
    if (budget_hit_ || sink_stopped_) return;
    if (level == k_) {
      if (partial_ != m_) return;
      IntMatrix l(size_, k_), r(k_, size_);
      for (std::size_t q = 0; q < k_; ++q)
        for (std::size_t i = 0; i < size_; ++i) {
          l(i, q) = lcols_[q][i];
          r(q, i) = rrows_[q][i];
        }
      if (sink(std::move(l), std::move(r))) sink_stopped_ = true;
      return;
    }
    place_l(level, 0, sink);
  }

  // Column `level` of L, entry by entry. Dot constraints available now:
  // B(p, level) = rrows_[p] . lcols_[level] for p < level.
  template <typename Sink>
  void place_l(std::size_t level, std::size_t i, Sink& sink) {
    if (budget_hit_ || sink_stopped_) return;
    if (i == size_) {
      if (target_b_)
        for (std::size_t p = 0; p < level; ++p)
          if (dot(rrows_[p], lcols_[level]) != (*target_b_)(p, level)) return;
      place_r(level, 0, sink);
      return;
    }
    const bool last = level + 1 == k_;
    for (Int v = 0; v <= entry_max_; ++v) {
      if (!tick()) return;
      lcols_[level][i] = v;
      if (last && v == 0) {
        // A zero entry at the last level forces the residual row to be
        // exactly zero already.
        bool ok = true;
        for (std::size_t j = 0; j < size_ && ok; ++j)
          if (partial_(i, j) != m_(i, j)) ok = false;
        if (!ok) continue;
      }
      if (target_b_) {
        bool ok = true;
        for (std::size_t p = 0; p < level && ok; ++p) {
          Int acc = 0;
          for (std::size_t ii = 0; ii <= i; ++ii)
            acc += rrows_[p][ii] * lcols_[level][ii];
          if (acc > (*target_b_)(p, level)) ok = false;
        }
        if (!ok) continue;
      }
      place_l(level, i + 1, sink);
      if (budget_hit_ || sink_stopped_) return;
    }
    lcols_[level][i] = 0;
  }

  // Row `level` of R, entry by entry. Placing entry j touches column j
  // of the outer product, so the bound against M is checked there, with
  // equality required at the last level. Dot constraints:
  // B(level, p) = rrows_[level] . lcols_[p] for p <= level.
  template <typename Sink>
  void place_r(std::size_t level, std::size_t j, Sink& sink) {
    if (budget_hit_ || sink_stopped_) return;
    const bool last = level + 1 == k_;
    if (j == size_) {
      if (target_b_) {
        for (std::size_t p = 0; p <= level; ++p)
          if (dot(rrows_[level], lcols_[p]) != (*target_b_)(level, p)) return;
      }
      descend(level + 1, sink);
      return;
    }
    for (Int v = 0; v <= entry_max_; ++v) {
      if (!tick()) return;
      bool feasible = true;
      for (std::size_t i = 0; i < size_ && feasible; ++i) {
        Int e = partial_(i, j) + lcols_[level][i] * v;
        if (e > m_(i, j) || (last && e != m_(i, j))) feasible = false;
      }
      if (!feasible) {
        // Entries only grow the outer product; once infeasible short of
        // the last level, larger v stay infeasible.
        if (!last) break;
        continue;
      }
      if (target_b_) {
        bool ok = true;
        for (std::size_t p = 0; p <= level && ok; ++p) {
          Int acc = lcols_[p][j] * v;
          for (std::size_t jj = 0; jj < j; ++jj)
            acc += rrows_[level][jj] * lcols_[p][jj];
          if (acc > (*target_b_)(level, p)) ok = false;
        }
        if (!ok) continue;
      }
      rrows_[level][j] = v;
      for (std::size_t i = 0; i < size_; ++i)
        partial_(i, j) += lcols_[level][i] * v;
      place_r(level, j + 1, sink);
      for (std::size_t i = 0; i < size_; ++i)
        partial_(i, j) -= lcols_[level][i] * v;
      rrows_[level][j] = 0;
      if (budget_hit_ || sink_stopped_) return;
    }
  }

  static Int dot(const std::vector<Int>& x, const std::vector<Int>& y) {
    Int acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
  }

  const IntMatrix& m_;
  const std::size_t k_;
  const Int entry_max_;
  const std::uint64_t budget_;
  std::uint64_t& nodes_;
  const IntMatrix* target_b_;
  const std::size_t size_;
  IntMatrix partial_;
  std::vector<std::vector<Int>> lcols_, rrows_;
  bool budget_hit_ = false;
  bool sink_stopped_ = false;
};

}  // namespace detail

/// Exhaustive backtracking search for an elementary strong shift
/// equivalence witness between A and B, with entries bounded by
/// entry_max. The inner dimension of any witness is forced to be the
/// size of B, so inner_dim_max acts as a gate: a larger B is out of
/// bounds. Absence within bounds is a certificate; the outcome
/// distinguishes it from running out of budget.
inline ElementarySearchResult search_elementary(const IntMatrix& a,
                                                const IntMatrix& b,
                                                std::size_t inner_dim_max,
                                                const Int& entry_max,
                                                std::uint64_t budget) {
  if (!a.is_square() || !b.is_square())
    throw std::invalid_argument("search_elementary: A and B must be square");
  ElementarySearchResult res;
  if (has_zero_line(a) || has_zero_line(b))
    res.note = "input has a zero row or column; ";
  if (b.rows() > inner_dim_max) {
    res.outcome = SearchOutcome::exhausted_bounds;
    res.note += "inner dimension is fixed by B and exceeds inner_dim_max";
    return res;
  }
  if (a.trace() != b.trace()) {
    res.outcome = SearchOutcome::exhausted_bounds;
    res.note += "trace mismatch rules out any witness";
    return res;
  }
  detail::FactorSearch search(a, b.rows(), entry_max, budget, res.nodes, &b);
  std::optional<SSEStep> found;
  search.run([&](IntMatrix l, IntMatrix r) {
    found.emplace(std::move(l), std::move(r));
    return true;
  });
  if (found) {
    res.step = std::move(found);
    res.outcome = SearchOutcome::found;
  } else if (search.budget_hit()) {
    res.outcome = SearchOutcome::budget_exhausted;
  } else {
    res.outcome = SearchOutcome::exhausted_bounds;
  }
  return res;
}

struct ChainSearchResult {
  std::optional<SSEChain> chain;
  SearchOutcome outcome = SearchOutcome::exhausted_bounds;
  std::uint64_t nodes = 0;
  bool dedup_exact = true;
  std::string note;
};

/// Breadth-first search over the matrices reachable from A by elementary
/// strong shift equivalences within the given bounds, deduplicated up to
/// simultaneous permutation and pruned by the cheap conjugacy invariants
/// of B. Any returned chain has been rebuilt from verified steps.
inline ChainSearchResult search_chain(const IntMatrix& a, const IntMatrix& b,
                                      std::size_t max_depth,
                                      std::size_t inner_dim_max,
                                      const Int& entry_max,
                                      std::uint64_t budget) {
  if (!a.is_square() || !b.is_square())
    throw std::invalid_argument("search_chain: A and B must be square");
  ChainSearchResult res;
  if (has_zero_line(a) || has_zero_line(b))
    res.note = "input has a zero row or column; ";

  const IntPolynomial target_char = char_poly(b).nonzero_part();
  const AbelianGroupInvariants target_bf = bowen_franks(b);

  struct State {
    IntMatrix mat;
    std::size_t parent;  // index into states, npos for the root
    std::optional<SSEStep> step;
    std::size_t depth;
  };
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<State> states;
  states.push_back({a, npos, std::nullopt, 0});
  std::set<CanonicalKey> visited;
  CanonicalKey root_key = canonical_key(a);
  res.dedup_exact = root_key.exact;
  visited.insert(std::move(root_key));

  auto rebuild = [&](std::size_t idx) {
    std::vector<SSEStep> steps;
    for (std::size_t at = idx; states[at].parent != npos; at = states[at].parent)
      steps.push_back(*states[at].step);
    std::reverse(steps.begin(), steps.end());
    return SSEChain(std::move(steps));
  };

  // Trivial case first: A == B admits the one-step chain (A, I) whenever
  // the bounds allow it.
  if (a == b && a.rows() >= 1 && a.rows() <= inner_dim_max && entry_max >= 1) {
    Int biggest = 1;
    for (const auto& v : a.flat()) biggest = std::max(biggest, v);
    if (biggest <= entry_max) {
      res.chain = SSEChain({SSEStep(a, IntMatrix::identity(a.rows()))});
      res.outcome = SearchOutcome::found;
      return res;
    }
  }

  std::deque<std::size_t> frontier{0};
  bool budget_hit = false;
  while (!frontier.empty() && !budget_hit) {
    const std::size_t cur = frontier.front();
    frontier.pop_front();
    if (states[cur].depth >= max_depth) continue;
    const IntMatrix m = states[cur].mat;
    for (std::size_t k = 1; k <= inner_dim_max && !budget_hit; ++k) {
      detail::FactorSearch search(m, k, entry_max, budget, res.nodes, nullptr);
      std::optional<std::size_t> goal;
      search.run([&](IntMatrix l, IntMatrix r) {
        SSEStep step(std::move(l), std::move(r));
        if (step.b() == b) {
          states.push_back({step.b(), cur, step, states[cur].depth + 1});
          goal = states.size() - 1;
          return true;
        }
        CanonicalKey key = canonical_key(step.b());
        if (!key.exact) res.dedup_exact = false;
        if (!visited.insert(std::move(key)).second) return false;
        if (char_poly(step.b()).nonzero_part() != target_char) return false;
        if (bowen_franks(step.b()) != target_bf) return false;
        states.push_back({step.b(), cur, std::move(step), states[cur].depth + 1});
        frontier.push_back(states.size() - 1);
        return false;
      });
      if (goal) {
        res.chain = rebuild(*goal);
        res.outcome = SearchOutcome::found;
        return res;
      }
      if (search.budget_hit()) budget_hit = true;
    }
  }
  res.outcome = budget_hit ? SearchOutcome::budget_exhausted
                           : SearchOutcome::exhausted_bounds;
  return res;
}

}  // namespace shifteq
