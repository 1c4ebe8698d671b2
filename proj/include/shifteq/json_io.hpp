#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "shifteq/bratteli.hpp"
#include "shifteq/graded_module.hpp"
#include "shifteq/invariants.hpp"
#include "shifteq/matrix.hpp"
#include "shifteq/quiver.hpp"
#include "shifteq/sse.hpp"

namespace shifteq {

using Json = nlohmann::json;

/// Schema violation in an input document; `at` is a JSON-pointer-style
/// location of the offending value.
class JsonFormatError : public std::runtime_error {
 public:
  JsonFormatError(const std::string& message, std::string at)
      : std::runtime_error(message + " (at " + at + ")"), at_(std::move(at)) {}

  const std::string& at() const { return at_; }

 private:
  std::string at_;
};

/// Compact dump: sorted object keys, no whitespace variance, newline
/// terminated. Every tool output goes through this.
inline std::string dump_json(const Json& j) { return j.dump() + "\n"; }

// ---------------------------------------------------------------------------
// Scalars. Integers that fit a JSON number are written as numbers; larger
// ones fall back to decimal strings, and both forms are accepted on input.

inline Json int_to_json(const Int& v) {
  if (v >= 0 && v <= Int(std::numeric_limits<std::uint64_t>::max()))
    return Json(static_cast<std::uint64_t>(v));
  if (v < 0 && v >= Int(std::numeric_limits<std::int64_t>::min()))
    return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

inline Int int_from_json(const Json& j, const std::string& at) {
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return int_from_string(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw JsonFormatError(e.what(), at);
    }
  }
  if (j.is_number_float())
    throw JsonFormatError("integer too large for a JSON number; use a string", at);
  throw JsonFormatError("expected an integer", at);
}

inline Json rat_to_json(const Rat& r) { return Json(rat_to_string(r)); }

inline Rat rat_from_json(const Json& j, const std::string& at) {
  if (j.is_number_unsigned()) return Rat(Int(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Rat(Int(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return rat_from_string(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw JsonFormatError(e.what(), at);
    }
  }
  throw JsonFormatError("expected a rational \"p/q\" string", at);
}

// ---------------------------------------------------------------------------
// Matrices: arrays of arrays, row major.

inline Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline IntMatrix matrix_from_json(const Json& j, const std::string& at) {
  if (!j.is_array()) throw JsonFormatError("expected an array of rows", at);
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) throw JsonFormatError("expected an array row", at + "/0");
    cols = j[0].size();
  }
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_at = at + "/" + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != cols)
      throw JsonFormatError("ragged or non-array row", row_at);
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = int_from_json(j[i][k], row_at + "/" + std::to_string(k));
  }
  return m;
}

inline Json rat_matrix_to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Quivers.

inline Json quiver_to_json(const Quiver& q) {
  Json arrows = Json::array();
  for (const Arrow& a : q.arrows())
    arrows.push_back(Json{{"id", a.id}, {"src", a.src}, {"dst", a.dst}});
  return Json{{"vertices", q.vertices()}, {"arrows", std::move(arrows)}};
}

inline Quiver quiver_from_json(const Json& j, const std::string& at) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("arrows"))
    throw JsonFormatError("quiver needs \"vertices\" and \"arrows\"", at);
  if (!j["vertices"].is_array())
    throw JsonFormatError("expected an array", at + "/vertices");
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    if (!j["vertices"][i].is_string())
      throw JsonFormatError("vertex ids are strings",
                            at + "/vertices/" + std::to_string(i));
    vertices.push_back(j["vertices"][i].get<std::string>());
  }
  if (!j["arrows"].is_array())
    throw JsonFormatError("expected an array", at + "/arrows");
  std::vector<Arrow> arrows;
  for (std::size_t i = 0; i < j["arrows"].size(); ++i) {
    const Json& a = j["arrows"][i];
    const std::string a_at = at + "/arrows/" + std::to_string(i);
    if (!a.is_object() || !a.contains("id") || !a.contains("src") ||
        !a.contains("dst") || !a["id"].is_string() || !a["src"].is_string() ||
        !a["dst"].is_string())
      throw JsonFormatError("arrow needs string \"id\", \"src\", \"dst\"", a_at);
    arrows.push_back(Arrow{a["id"].get<std::string>(),
                           a["src"].get<std::string>(),
                           a["dst"].get<std::string>()});
  }
  try {
    return Quiver(std::move(vertices), std::move(arrows));
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(e.what(), at);
  }
}

/// Order-independent serialization: vertices sorted, arrows sorted by id.
/// Two constructions of the same labeled graph always agree on this.
inline Json canonical_quiver_json(const Quiver& q) {
  std::vector<std::string> vertices = q.vertices();
  std::sort(vertices.begin(), vertices.end());
  std::vector<Arrow> arrows = q.arrows();
  std::sort(arrows.begin(), arrows.end(),
            [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
  Json ja = Json::array();
  for (const Arrow& a : arrows)
    ja.push_back(Json{{"id", a.id}, {"src", a.src}, {"dst", a.dst}});
  return Json{{"vertices", std::move(vertices)}, {"arrows", std::move(ja)}};
}

// ---------------------------------------------------------------------------
// Graded modules.

inline Json module_to_json(const TruncatedGradedModule& m) {
  Json dims = Json::object();
  for (std::size_t n = 0; n <= m.trunc(); ++n) {
    Json row = Json::array();
    for (std::size_t v = 0; v < m.quiver().vertices().size(); ++v)
      row.push_back(m.dim(n, v));
    dims[std::to_string(n)] = std::move(row);
  }
  Json action = Json::object();
  for (std::size_t a = 0; a < m.quiver().arrows().size(); ++a) {
    Json per_degree = Json::object();
    for (std::size_t n = 0; n < m.trunc(); ++n)
      per_degree[std::to_string(n)] = rat_matrix_to_json(m.action(a, n));
    action[m.quiver().arrows()[a].id] = std::move(per_degree);
  }
  return Json{{"quiver", quiver_to_json(m.quiver())},
              {"N", m.trunc()},
              {"dims", std::move(dims)},
              {"action", std::move(action)}};
}

inline TruncatedGradedModule module_from_json(const Json& j, const std::string& at) {
  if (!j.is_object() || !j.contains("quiver") || !j.contains("N") ||
      !j.contains("dims") || !j.contains("action"))
    throw JsonFormatError("module needs \"quiver\", \"N\", \"dims\", \"action\"", at);
  Quiver q = quiver_from_json(j["quiver"], at + "/quiver");
  if (!j["N"].is_number_unsigned())
    throw JsonFormatError("expected a nonnegative truncation degree", at + "/N");
  const std::size_t trunc = j["N"].get<std::size_t>();
  const std::size_t nv = q.vertices().size();

  std::vector<std::vector<std::size_t>> dims(trunc + 1,
                                             std::vector<std::size_t>(nv, 0));
  for (std::size_t n = 0; n <= trunc; ++n) {
    const std::string key = std::to_string(n);
    const std::string d_at = at + "/dims/" + key;
    if (!j["dims"].contains(key) || !j["dims"][key].is_array() ||
        j["dims"][key].size() != nv)
      throw JsonFormatError("dims row missing or wrong width", d_at);
    for (std::size_t v = 0; v < nv; ++v) {
      if (!j["dims"][key][v].is_number_unsigned())
        throw JsonFormatError("dimension must be a nonnegative integer",
                              d_at + "/" + std::to_string(v));
      dims[n][v] = j["dims"][key][v].get<std::size_t>();
    }
  }

  std::vector<std::vector<RatMatrix>> action(q.arrows().size());
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& ar = q.arrows()[a];
    const std::size_t u = q.vertex_index(ar.src);
    const std::size_t v = q.vertex_index(ar.dst);
    if (!j["action"].contains(ar.id))
      throw JsonFormatError("action missing for arrow " + ar.id, at + "/action");
    for (std::size_t n = 0; n < trunc; ++n) {
      const std::string key = std::to_string(n);
      const std::string m_at = at + "/action/" + ar.id + "/" + key;
      const Json& block = j["action"][ar.id];
      if (!block.contains(key))
        throw JsonFormatError("action matrix missing", m_at);
      const Json& rows = block[key];
      const std::size_t want_rows = dims[n + 1][v];
      const std::size_t want_cols = dims[n][u];
      if (!rows.is_array() || rows.size() != want_rows)
        throw JsonFormatError("action matrix has wrong row count", m_at);
      RatMatrix m(want_rows, want_cols);
      for (std::size_t i = 0; i < want_rows; ++i) {
        if (!rows[i].is_array() || rows[i].size() != want_cols)
          throw JsonFormatError("action matrix row has wrong width",
                                m_at + "/" + std::to_string(i));
        for (std::size_t k = 0; k < want_cols; ++k)
          m(i, k) = rat_from_json(rows[i][k],
                                  m_at + "/" + std::to_string(i) + "/" +
                                      std::to_string(k));
      }
      action[a].push_back(std::move(m));
    }
  }
  try {
    return TruncatedGradedModule(std::move(q), trunc, std::move(dims),
                                 std::move(action));
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(e.what(), at);
  }
}

// ---------------------------------------------------------------------------
// Certificates.

inline Json chain_certificate_to_json(const SSEChain& chain) {
  Json steps = Json::array();
  for (const SSEStep& s : chain.steps())
    steps.push_back(Json{{"L", matrix_to_json(s.l())}, {"R", matrix_to_json(s.r())}});
  return Json{{"kind", "sse-chain"}, {"steps", std::move(steps)}};
}

inline Json se_certificate_to_json(const SEWitness& w) {
  return Json{{"kind", "se-witness"},
              {"L", matrix_to_json(w.l)},
              {"R", matrix_to_json(w.r)},
              {"lag", w.lag}};
}

inline std::vector<std::pair<IntMatrix, IntMatrix>> chain_steps_from_json(
    const Json& j, const std::string& at) {
  if (!j.is_object() || j.value("kind", "") != "sse-chain" || !j.contains("steps") ||
      !j["steps"].is_array())
    throw JsonFormatError("expected {\"kind\":\"sse-chain\",\"steps\":[...]}", at);
  std::vector<std::pair<IntMatrix, IntMatrix>> steps;
  for (std::size_t i = 0; i < j["steps"].size(); ++i) {
    const Json& s = j["steps"][i];
    const std::string s_at = at + "/steps/" + std::to_string(i);
    if (!s.is_object() || !s.contains("L") || !s.contains("R"))
      throw JsonFormatError("step needs \"L\" and \"R\"", s_at);
    steps.emplace_back(matrix_from_json(s["L"], s_at + "/L"),
                       matrix_from_json(s["R"], s_at + "/R"));
  }
  return steps;
}

inline SEWitness se_witness_from_json(const Json& j, const std::string& at) {
  if (!j.is_object() || j.value("kind", "") != "se-witness" || !j.contains("L") ||
      !j.contains("R") || !j.contains("lag"))
    throw JsonFormatError(
        "expected {\"kind\":\"se-witness\",\"L\":...,\"R\":...,\"lag\":...}", at);
  if (!j["lag"].is_number_unsigned() || j["lag"].get<std::size_t>() < 1)
    throw JsonFormatError("lag must be a positive integer", at + "/lag");
  return SEWitness{matrix_from_json(j["L"], at + "/L"),
                   matrix_from_json(j["R"], at + "/R"),
                   j["lag"].get<std::size_t>()};
}

// ---------------------------------------------------------------------------
// Reports.

inline Json verify_report_to_json(const VerifyReport& rep) {
  Json failures = Json::array();
  for (const EqualityFailure& f : rep.failures)
    failures.push_back(Json{{"equality", f.equality},
                            {"row", f.row},
                            {"col", f.col},
                            {"lhs", int_to_json(f.lhs)},
                            {"rhs", int_to_json(f.rhs)}});
  return Json{{"ok", rep.ok},
              {"failures", std::move(failures)},
              {"warnings", rep.warnings},
              {"notes", rep.notes}};
}

inline Json chain_report_to_json(const ChainReport& rep) {
  Json failures = Json::array();
  for (const ChainFailure& f : rep.failures)
    failures.push_back(Json{{"step", f.step}, {"what", f.what}});
  return Json{{"ok", rep.ok}, {"failures", std::move(failures)}};
}

inline Json poly_to_json(const IntPolynomial& p) {
  Json coeffs = Json::array();
  for (const Int& c : p.coeffs) coeffs.push_back(int_to_json(c));
  return coeffs;
}

inline Json snf_to_json(const SmithNormalForm& snf) {
  return Json{{"D", matrix_to_json(snf.d)},
              {"U", matrix_to_json(snf.u)},
              {"V", matrix_to_json(snf.v)}};
}

inline Json group_to_json(const AbelianGroupInvariants& g) {
  Json factors = Json::array();
  for (const Int& f : g.factors) factors.push_back(int_to_json(f));
  return Json{{"invariant_factors", std::move(factors)},
              {"description", g.to_string()}};
}

inline Json invariant_report_to_json(const InvariantReport& rep) {
  Json blocks = Json::object();
  for (const InvariantComparison& c : rep.comparisons)
    blocks[c.name] = Json{{"a", c.a_value}, {"b", c.b_value}, {"equal", c.equal}};
  return Json{{"verdict", rep.verdict()}, {"invariants", std::move(blocks)}};
}

inline Json kercoker_to_json(const KernelCokernelDims& kc) {
  return Json{{"ker", kc.ker}, {"coker", kc.coker}};
}

inline Json eta_report_to_json(const EtaReport& rep) {
  Json failures = Json::array();
  for (const auto& [n, p, lhs, rhs] : rep.failures)
    failures.push_back(
        Json{{"degree", n}, {"vertex", p}, {"lhs", lhs}, {"rhs", rhs}});
  return Json{{"ok", rep.ok}, {"failures", std::move(failures)}};
}

inline Json bratteli_to_json(const BratteliDiagram& d) {
  Json labels = Json::array();
  for (const auto& level : d.labels) {
    Json row = Json::array();
    for (const Int& v : level) row.push_back(int_to_json(v));
    labels.push_back(std::move(row));
  }
  return Json{{"quiver", quiver_to_json(d.quiver)},
              {"edges", matrix_to_json(d.edges)},
              {"labels", std::move(labels)}};
}

}  // namespace shifteq
