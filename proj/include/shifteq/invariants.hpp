#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include "shifteq/matrix.hpp"

namespace shifteq {

/// Integer polynomial, coefficients ascending by degree, no trailing
/// zeros (the zero polynomial is the empty coefficient list).
struct IntPolynomial {
  std::vector<Int> coeffs;

  static IntPolynomial from(std::vector<Int> c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    return IntPolynomial{std::move(c)};
  }

  bool is_zero() const { return coeffs.empty(); }
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  Int eval(const Int& t) const {
    Int acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  /// Same polynomial with the highest power of t dividing it removed.
  /// Shift-equivalent matrices agree on this part of the characteristic
  /// polynomial, not the nilpotent tail.
  IntPolynomial nonzero_part() const {
    std::size_t k = 0;
    while (k < coeffs.size() && coeffs[k] == 0) ++k;
    return IntPolynomial{std::vector<Int>(coeffs.begin() + k, coeffs.end())};
  }

  bool operator==(const IntPolynomial&) const = default;

  std::string to_string() const {
    if (coeffs.empty()) return "0";
    std::string s;
    for (std::size_t d = coeffs.size(); d-- > 0;) {
      const Int& c = coeffs[d];
      if (c == 0) continue;
      if (!s.empty()) s += c > 0 ? " + " : " - ";
      else if (c < 0) s += "-";
      Int a = abs(c);
      if (a != 1 || d == 0) s += a.str();
      if (d >= 1) s += "t";
      if (d >= 2) s += "^" + std::to_string(d);
    }
    return s.empty() ? "0" : s;
  }
};

struct SmithNormalForm {
  IntMatrix d;  // diagonal, nonnegative, divisibility chain
  IntMatrix u;  // unimodular, rows
  IntMatrix v;  // unimodular, columns; u * m * v == d
};

/// Smith normal form by exact integer elimination with explicit
/// transformation tracking. U and V are built from row/column swaps,
/// negations and shears, so they are unimodular by construction; the
/// product identity is re-checked before returning.
inline SmithNormalForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(d(a, j), d(b, j));
    for (std::size_t j = 0; j < rows; ++j) std::swap(u(a, j), u(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(d(i, a), d(i, b));
    for (std::size_t i = 0; i < cols; ++i) std::swap(v(i, a), v(i, b));
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t j = 0; j < cols; ++j) d(dst, j) += f * d(src, j);
    for (std::size_t j = 0; j < rows; ++j) u(dst, j) += f * u(src, j);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t i = 0; i < rows; ++i) d(i, dst) += f * d(i, src);
    for (std::size_t i = 0; i < cols; ++i) v(i, dst) += f * v(i, src);
  };
  auto negate_row = [&](std::size_t a) {
    for (std::size_t j = 0; j < cols; ++j) d(a, j) = -d(a, j);
    for (std::size_t j = 0; j < rows; ++j) u(a, j) = -u(a, j);
  };

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    // Pivot: smallest nonzero absolute value in the trailing block.
    std::size_t pi = t, pj = t;
    Int best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (d(i, j) == 0) continue;
        Int a = abs(d(i, j));
        if (best == 0 || a < best) {
          best = a;
          pi = i;
          pj = j;
        }
      }
    if (best == 0) break;  // trailing block is zero
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        add_row(i, t, -(d(i, t) / d(t, t)));
        if (d(i, t) != 0) {  // remainder smaller than pivot: promote it
          swap_rows(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        add_col(j, t, -(d(t, j) / d(t, t)));
        if (d(t, j) != 0) {
          swap_cols(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // Pivot must divide every remaining entry for the chain to hold.
      bool fixed = true;
      for (std::size_t i = t + 1; i < rows && fixed; ++i)
        for (std::size_t j = t + 1; j < cols && fixed; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row(t, i, 1);
            fixed = false;
          }
      if (fixed) break;
    }
    if (d(t, t) < 0) negate_row(t);
  }

  if (u * m * v != d)
    throw std::logic_error("smith_normal_form: transform identity violated");
  return SmithNormalForm{std::move(d), std::move(u), std::move(v)};
}

/// Invariant factors of a finitely generated abelian group, as the
/// divisibility chain d1 | d2 | ... with trivial factors (1) omitted and
/// 0 meaning a free summand.
struct AbelianGroupInvariants {
  std::vector<Int> factors;

  bool operator==(const AbelianGroupInvariants&) const = default;

  std::string to_string() const {
    if (factors.empty()) return "0";  // the trivial group
    std::string s;
    for (const Int& f : factors) {
      if (!s.empty()) s += " x ";
      s += f == 0 ? "Z" : "Z/" + f.str();
    }
    return s;
  }
};

/// Bowen-Franks group coker(I - A), computed by Smith normal form.
inline AbelianGroupInvariants bowen_franks(const IntMatrix& a) {
  if (!a.is_square())
    throw std::invalid_argument("bowen_franks: matrix not square");
  const IntMatrix m = IntMatrix::identity(a.rows()) - a;
  SmithNormalForm snf = smith_normal_form(m);
  AbelianGroupInvariants g;
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (snf.d(i, i) != 1) g.factors.push_back(snf.d(i, i));
  return g;
}

/// Characteristic polynomial det(tI - A), exact integer coefficients via
/// the Faddeev-LeVerrier recurrence (the interior divisions are exact).
inline IntPolynomial char_poly(const IntMatrix& a) {
  if (!a.is_square())
    throw std::invalid_argument("char_poly: matrix not square");
  const std::size_t n = a.rows();
  std::vector<Int> c(n + 1);
  c[n] = 1;
  IntMatrix mk = IntMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk;
    Int tr = mk.trace();
    if (tr % Int(k) != 0)
      throw std::logic_error("char_poly: non-exact division");
    c[n - k] = -tr / Int(k);
    if (k < n) {
      for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k];
    }
  }
  return IntPolynomial::from(std::move(c));
}

/// Zeta-function denominator det(I - tA), computed independently of
/// char_poly by evaluation at t = 0..n and exact interpolation.
inline IntPolynomial zeta_denominator(const IntMatrix& a) {
  if (!a.is_square())
    throw std::invalid_argument("zeta_denominator: matrix not square");
  const std::size_t n = a.rows();
  std::vector<Int> xs(n + 1);
  std::vector<Int> ys(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    xs[k] = Int(k);
    ys[k] = det(IntMatrix::identity(n) - a * Int(k));
  }
  // Newton divided differences over the rationals, then expansion.
  std::vector<Rat> dd(n + 1);
  for (std::size_t k = 0; k <= n; ++k) dd[k] = Rat(ys[k]);
  for (std::size_t level = 1; level <= n; ++level)
    for (std::size_t k = n; k >= level; --k)
      dd[k] = (dd[k] - dd[k - 1]) / Rat(xs[k] - xs[k - level]);
  std::vector<Rat> poly{dd[n]};
  for (std::size_t k = n; k-- > 0;) {
    // poly = poly * (t - xs[k]) + dd[k]
    poly.insert(poly.begin(), Rat(0));
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) poly[i] -= Rat(xs[k]) * poly[i + 1];
    poly[0] += dd[k];
  }
  std::vector<Int> coeffs(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (denominator(poly[i]) != 1)
      throw std::logic_error("zeta_denominator: non-integer coefficient");
    coeffs[i] = numerator(poly[i]);
  }
  return IntPolynomial::from(std::move(coeffs));
}

/// Traces of A^p for p = 1..pmax: the number of points of period p of the
/// associated edge shift.
inline std::vector<Int> periodic_point_counts(const IntMatrix& a, std::size_t pmax) {
  if (!a.is_square())
    throw std::invalid_argument("periodic_point_counts: matrix not square");
  if (pmax < 1)
    throw std::invalid_argument("periodic_point_counts: pmax must be >= 1");
  std::vector<Int> out;
  IntMatrix p = a;
  for (std::size_t k = 1; k <= pmax; ++k) {
    out.push_back(p.trace());
    if (k < pmax) p = p * a;
  }
  return out;
}

/// Certified rational bounds on the spectral radius of a nonnegative
/// matrix from the Collatz-Wielandt ratios along the orbit of the
/// all-ones vector. For irreducible A the interval closes in on the
/// Perron root; in general it only brackets it.
inline std::pair<Rat, Rat> spectral_radius_bounds(const IntMatrix& a,
                                                  std::size_t iterations) {
  if (!a.is_square())
    throw std::invalid_argument("spectral_radius_bounds: matrix not square");
  require_nonnegative(a, "spectral_radius_bounds");
  if (iterations < 1)
    throw std::invalid_argument("spectral_radius_bounds: need iterations >= 1");
  const std::size_t n = a.rows();
  if (n == 0) return {Rat(0), Rat(0)};

  std::vector<Rat> x(n, Rat(1));
  bool have = false;
  Rat lower(0), upper(0);
  const RatMatrix ar = to_rational(a);
  for (std::size_t it = 0; it < iterations; ++it) {
    std::vector<Rat> y = ar.apply(x);
    bool any = false;
    Rat lo(0), hi(0);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      Rat ratio = y[i] / x[i];
      if (!any || ratio < lo) lo = ratio;
      if (!any || ratio > hi) hi = ratio;
      any = true;
    }
    if (!any) return {Rat(0), Rat(0)};  // orbit died: nilpotent, radius 0
    if (!have || lo > lower) lower = lo;
    if (!have || hi < upper) upper = hi;
    have = true;
    x = std::move(y);
  }
  return {lower, upper};
}

/// One compared invariant inside an invariant_report.
struct InvariantComparison {
  std::string name;
  std::string a_value;
  std::string b_value;
  bool equal = false;
};

/// Necessary-condition report: "distinguished" refutes any (strong) shift
/// equivalence; "consistent" asserts nothing beyond agreement of the
/// computed invariants.
struct InvariantReport {
  bool distinguished = false;
  std::vector<InvariantComparison> comparisons;

  std::string verdict() const { return distinguished ? "distinguished" : "consistent"; }
};

inline InvariantReport invariant_report(const IntMatrix& a, const IntMatrix& b,
                                        std::size_t pmax = 5) {
  if (!a.is_square() || !b.is_square())
    throw std::invalid_argument("invariant_report: matrices must be square");
  InvariantReport rep;
  auto add = [&rep](std::string name, std::string av, std::string bv) {
    bool eq = av == bv;
    rep.comparisons.push_back({std::move(name), std::move(av), std::move(bv), eq});
    if (!eq) rep.distinguished = true;
  };

  add("char_poly_nonzero_part", char_poly(a).nonzero_part().to_string(),
      char_poly(b).nonzero_part().to_string());
  add("bowen_franks", bowen_franks(a).to_string(), bowen_franks(b).to_string());

  auto counts_str = [](const std::vector<Int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += v[i].str();
    }
    return s + ")";
  };
  add("periodic_point_counts", counts_str(periodic_point_counts(a, pmax)),
      counts_str(periodic_point_counts(b, pmax)));

  add("det_I_minus_A", det(IntMatrix::identity(a.rows()) - a).str(),
      det(IntMatrix::identity(b.rows()) - b).str());
  return rep;
}

}  // namespace shifteq
