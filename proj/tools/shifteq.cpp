// Command-line toolkit for strong shift equivalence, conjugacy
// invariants, graph transformations and truncated graded-module
// computations over quiver path algebras. All input and output is JSON
// (DOT and text opt-in via --format); errors go to stderr only, and
// output is byte-identical for identical inputs.
//
// Exit codes: 0 success/verified; 1 verification failed or invariants
// distinguished; 2 search exhausted without a witness; 3 usage or
// format error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "shifteq/bratteli.hpp"
#include "shifteq/dot.hpp"
#include "shifteq/graded_module.hpp"
#include "shifteq/invariants.hpp"
#include "shifteq/json_io.hpp"
#include "shifteq/matrix.hpp"
#include "shifteq/quiver.hpp"
#include "shifteq/sse.hpp"
#include "shifteq/transforms.hpp"

namespace {

using namespace shifteq;

// An input argument is inline JSON when it looks like JSON, "-" for
// stdin, and a file path otherwise.
Json read_json_arg(const std::string& arg) {
  std::string text;
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) {
    text = arg;
  } else if (arg == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(arg);
    if (!in) throw JsonFormatError("cannot open input file: " + arg, "/");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return Json::parse(text);  // parse_error carries the byte position
}

Quiver read_quiver(const std::string& arg) {
  return quiver_from_json(read_json_arg(arg), "");
}

IntMatrix read_matrix(const std::string& arg) {
  return matrix_from_json(read_json_arg(arg), "");
}

void emit(const Json& j) { std::cout << dump_json(j); }

std::string quiver_text(const Quiver& q) {
  std::string out = "vertices:";
  for (const auto& v : q.vertices()) out += " " + v;
  out += "\narrows:\n";
  for (const Arrow& a : q.arrows())
    out += "  " + a.id + ": " + a.src + " -> " + a.dst + "\n";
  return out;
}

void emit_quiver(const Quiver& q, const std::string& format) {
  if (format == "json")
    emit(quiver_to_json(q));
  else if (format == "dot")
    std::cout << quiver_to_dot(q);
  else if (format == "text")
    std::cout << quiver_text(q);
  else
    throw JsonFormatError("unknown format: " + format, "/");
}

SplitSpec read_split_spec(const std::string& vertex, const std::string& classes_arg) {
  Json j = read_json_arg(classes_arg);
  if (!j.is_array())
    throw JsonFormatError("classes must be an array of arrays of arrow ids", "");
  SplitSpec spec;
  spec.vertex = vertex;
  for (std::size_t c = 0; c < j.size(); ++c) {
    if (!j[c].is_array())
      throw JsonFormatError("classes must be arrays", "/" + std::to_string(c));
    std::vector<std::string> cls;
    for (std::size_t k = 0; k < j[c].size(); ++k) {
      if (!j[c][k].is_string())
        throw JsonFormatError("arrow ids are strings",
                              "/" + std::to_string(c) + "/" + std::to_string(k));
      cls.push_back(j[c][k].get<std::string>());
    }
    spec.classes.push_back(std::move(cls));
  }
  return spec;
}

Json search_outcome_json(SearchOutcome outcome, std::uint64_t nodes,
                         const std::string& note) {
  return Json{{"outcome", to_string(outcome)}, {"nodes", nodes}, {"note", note}};
}

Json hilbert_json(const TruncatedGradedModule& m) {
  Json out = Json::array();
  for (const auto& row : hilbert(m)) out.push_back(row);
  return out;
}

std::vector<FactorizationContext> read_contexts(const std::string& arg) {
  Json j = read_json_arg(arg);
  if (!j.is_array())
    throw JsonFormatError("contexts must be an array of {\"L\":...,\"R\":...}", "");
  std::vector<FactorizationContext> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = "/" + std::to_string(k);
    if (!j[k].is_object() || !j[k].contains("L") || !j[k].contains("R"))
      throw JsonFormatError("context needs \"L\" and \"R\"", at);
    out.emplace_back(matrix_from_json(j[k]["L"], at + "/L"),
                     matrix_from_json(j[k]["R"], at + "/R"));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shift equivalence & graded path-algebra module toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string in_a, in_b, in_l, in_r, input, format = "json";
  std::string vertex, classes, d0_arg, contexts_arg;
  std::size_t arg_n = 0, pmax = 5, depth = 4, inner_dim_max = 4;
  std::size_t trunc = 4, max_dim = 3;
  std::uint64_t budget = 1000000, seed = 0;
  std::string entry_max = "4";
  bool back = false;

  // --- quiver ---------------------------------------------------------
  CLI::App* quiver = app.add_subcommand("quiver", "quiver I/O and paths");
  quiver->require_subcommand(1);

  CLI::App* q_show = quiver->add_subcommand("show", "echo a quiver");
  q_show->add_option("quiver", input)->required();
  q_show->add_option("--format", format, "json|dot|text");
  q_show->callback([&] { emit_quiver(read_quiver(input), format); });

  CLI::App* q_from = quiver->add_subcommand("from-matrix",
                                            "canonical quiver of a matrix");
  q_from->add_option("matrix", input)->required();
  q_from->add_option("--format", format, "json|dot|text");
  q_from->callback([&] { emit_quiver(quiver_from_matrix(read_matrix(input)), format); });

  CLI::App* q_paths = quiver->add_subcommand("paths", "enumerate paths");
  q_paths->add_option("quiver", input)->required();
  q_paths->add_option("-n,--length", arg_n, "path length")->required();
  q_paths->add_option("--from", in_a, "restrict to a start vertex");
  q_paths->add_option("--to", in_b, "restrict to an end vertex");
  q_paths->callback([&] {
    Quiver q = read_quiver(input);
    if (!in_a.empty()) q.vertex_index(in_a);
    if (!in_b.empty()) q.vertex_index(in_b);
    Json paths = Json::array();
    for (const Path& p : enumerate_paths(q, arg_n)) {
      if (!in_a.empty() && path_source(p) != in_a) continue;
      if (!in_b.empty() && path_target(q, p) != in_b) continue;
      paths.push_back(Json{{"label", path_label(p)},
                           {"arrows", p.arrows},
                           {"src", path_source(p)},
                           {"dst", path_target(q, p)}});
    }
    Json out{{"count", paths.size()}, {"paths", std::move(paths)}};
    if (!in_a.empty() && !in_b.empty())
      out["matrix_count"] = int_to_json(count_paths(q, arg_n, in_a, in_b));
    emit(out);
  });

  // --- transform ------------------------------------------------------
  CLI::App* transform = app.add_subcommand("transform", "graph transformations");
  transform->require_subcommand(1);

  CLI::App* t_edge = transform->add_subcommand("edge", "higher edge graph");
  t_edge->add_option("quiver", input)->required();
  t_edge->add_option("--format", format, "json|dot|text");
  t_edge->callback([&] { emit_quiver(higher_edge_graph(read_quiver(input)), format); });

  CLI::App* t_edge_n = transform->add_subcommand("edge-n",
                                                 "iterated higher edge graph");
  t_edge_n->add_option("quiver", input)->required();
  t_edge_n->add_option("-n", arg_n, "iteration index, n >= 2")->required();
  t_edge_n->add_option("--format", format, "json|dot|text");
  t_edge_n->callback(
      [&] { emit_quiver(higher_edge_graph_n(read_quiver(input), arg_n), format); });

  CLI::App* t_power = transform->add_subcommand("power", "higher power graph");
  t_power->add_option("quiver", input)->required();
  t_power->add_option("-l,--power", arg_n, "power, l >= 1")->required();
  t_power->add_option("--format", format, "json|dot|text");
  t_power->callback(
      [&] { emit_quiver(power_graph(read_quiver(input), arg_n), format); });

  CLI::App* t_split = transform->add_subcommand(
      "split-lr", "target/source indicator factorization");
  t_split->add_option("quiver", input)->required();
  t_split->callback([&] {
    auto [l, r] = split_LR(read_quiver(input));
    emit(Json{{"L", matrix_to_json(l)}, {"R", matrix_to_json(r)}});
  });

  auto add_split = [&](const char* name, const char* help, bool is_in) {
    CLI::App* cmd = transform->add_subcommand(name, help);
    cmd->add_option("quiver", input)->required();
    cmd->add_option("--vertex", vertex, "vertex to split")->required();
    cmd->add_option("--classes", classes,
                    "ordered partition, e.g. [[\"a\"],[\"b\",\"c\"]]")
        ->required();
    cmd->callback([&, is_in] {
      Quiver q = read_quiver(input);
      SplitSpec spec = read_split_spec(vertex, classes);
      SplitResult res = is_in ? in_split(q, spec) : out_split(q, spec);
      emit(Json{{"quiver", quiver_to_json(res.quiver)},
                {"L", matrix_to_json(res.l)},
                {"R", matrix_to_json(res.r)}});
    });
  };
  add_split("in-split", "partition-based in-splitting", true);
  add_split("out-split", "partition-based out-splitting", false);

  // --- sse ------------------------------------------------------------
  CLI::App* sse = app.add_subcommand("sse", "strong shift equivalence");
  sse->require_subcommand(1);

  CLI::App* s_verify = sse->add_subcommand("verify",
                                           "check A = LR and B = RL");
  s_verify->add_option("--a", in_a)->required();
  s_verify->add_option("--b", in_b)->required();
  s_verify->add_option("--l", in_l)->required();
  s_verify->add_option("--r", in_r)->required();
  s_verify->callback([&] {
    VerifyReport rep = verify_elementary(read_matrix(in_a), read_matrix(in_b),
                                         read_matrix(in_l), read_matrix(in_r));
    emit(verify_report_to_json(rep));
    exit_code = rep.ok ? 0 : 1;
  });

  CLI::App* s_chain = sse->add_subcommand("verify-chain",
                                          "check an sse-chain certificate");
  s_chain->add_option("--a", in_a)->required();
  s_chain->add_option("--b", in_b)->required();
  s_chain->add_option("chain", input, "sse-chain certificate")->required();
  s_chain->callback([&] {
    auto steps = chain_steps_from_json(read_json_arg(input), "");
    ChainReport rep = verify_chain(steps, read_matrix(in_a), read_matrix(in_b));
    emit(chain_report_to_json(rep));
    exit_code = rep.ok ? 0 : 1;
  });

  CLI::App* s_search = sse->add_subcommand(
      "search", "bounded search for an elementary witness");
  s_search->add_option("--a", in_a)->required();
  s_search->add_option("--b", in_b)->required();
  s_search->add_option("--inner-dim-max", inner_dim_max);
  s_search->add_option("--entry-max", entry_max);
  s_search->add_option("--budget", budget)->check(CLI::PositiveNumber);
  s_search->callback([&] {
    ElementarySearchResult res =
        search_elementary(read_matrix(in_a), read_matrix(in_b), inner_dim_max,
                          int_from_string(entry_max), budget);
    Json out = search_outcome_json(res.outcome, res.nodes, res.note);
    out["witness"] = res.step ? Json{{"L", matrix_to_json(res.step->l())},
                                     {"R", matrix_to_json(res.step->r())}}
                              : Json();
    emit(out);
    exit_code = res.outcome == SearchOutcome::found ? 0 : 2;
  });

  CLI::App* s_search_chain = sse->add_subcommand(
      "search-chain", "breadth-first search for an sse chain");
  s_search_chain->add_option("--a", in_a)->required();
  s_search_chain->add_option("--b", in_b)->required();
  s_search_chain->add_option("--depth", depth);
  s_search_chain->add_option("--inner-dim-max", inner_dim_max);
  s_search_chain->add_option("--entry-max", entry_max);
  s_search_chain->add_option("--budget", budget)->check(CLI::PositiveNumber);
  s_search_chain->callback([&] {
    ChainSearchResult res =
        search_chain(read_matrix(in_a), read_matrix(in_b), depth, inner_dim_max,
                     int_from_string(entry_max), budget);
    Json out = search_outcome_json(res.outcome, res.nodes, res.note);
    out["dedup_exact"] = res.dedup_exact;
    out["chain"] = res.chain ? chain_certificate_to_json(*res.chain) : Json();
    emit(out);
    exit_code = res.outcome == SearchOutcome::found ? 0 : 2;
  });

  CLI::App* s_se = sse->add_subcommand("verify-se",
                                       "check a shift equivalence witness");
  s_se->add_option("--a", in_a)->required();
  s_se->add_option("--b", in_b)->required();
  s_se->add_option("witness", input, "se-witness certificate")->required();
  s_se->callback([&] {
    SEWitness w = se_witness_from_json(read_json_arg(input), "");
    VerifyReport rep =
        verify_shift_equivalence(read_matrix(in_a), read_matrix(in_b), w);
    emit(verify_report_to_json(rep));
    exit_code = rep.ok ? 0 : 1;
  });

  CLI::App* s_cert = sse->add_subcommand(
      "check-cert", "verify a certificate of either kind");
  s_cert->add_option("--a", in_a)->required();
  s_cert->add_option("--b", in_b)->required();
  s_cert->add_option("certificate", input)->required();
  s_cert->callback([&] {
    Json cert = read_json_arg(input);
    const std::string kind = cert.is_object() ? cert.value("kind", "") : "";
    if (kind == "sse-chain") {
      ChainReport rep = verify_chain(chain_steps_from_json(cert, ""),
                                     read_matrix(in_a), read_matrix(in_b));
      emit(chain_report_to_json(rep));
      exit_code = rep.ok ? 0 : 1;
    } else if (kind == "se-witness") {
      VerifyReport rep = verify_shift_equivalence(
          read_matrix(in_a), read_matrix(in_b), se_witness_from_json(cert, ""));
      emit(verify_report_to_json(rep));
      exit_code = rep.ok ? 0 : 1;
    } else {
      throw JsonFormatError("certificate kind must be sse-chain or se-witness",
                            "/kind");
    }
  });

  // --- invariants -----------------------------------------------------
  CLI::App* invariants = app.add_subcommand("invariants",
                                            "conjugacy invariants");
  invariants->require_subcommand(1);

  CLI::App* i_report = invariants->add_subcommand(
      "report", "compare the invariants of two matrices");
  i_report->add_option("a", in_a)->required();
  i_report->add_option("b", in_b)->required();
  i_report->add_option("--pmax", pmax);
  i_report->callback([&] {
    InvariantReport rep =
        invariant_report(read_matrix(in_a), read_matrix(in_b), pmax);
    emit(invariant_report_to_json(rep));
    exit_code = rep.distinguished ? 1 : 0;
  });

  CLI::App* i_snf = invariants->add_subcommand("snf", "Smith normal form");
  i_snf->add_option("matrix", input)->required();
  i_snf->callback([&] { emit(snf_to_json(smith_normal_form(read_matrix(input)))); });

  CLI::App* i_charpoly = invariants->add_subcommand("charpoly",
                                                    "det(tI - A), ascending");
  i_charpoly->add_option("matrix", input)->required();
  i_charpoly->callback([&] { emit(poly_to_json(char_poly(read_matrix(input)))); });

  CLI::App* i_zeta = invariants->add_subcommand("zeta",
                                                "det(I - tA), ascending");
  i_zeta->add_option("matrix", input)->required();
  i_zeta->callback([&] { emit(poly_to_json(zeta_denominator(read_matrix(input)))); });

  CLI::App* i_periodic = invariants->add_subcommand("periodic",
                                                    "traces of matrix powers");
  i_periodic->add_option("matrix", input)->required();
  i_periodic->add_option("--pmax", pmax);
  i_periodic->callback([&] {
    Json out = Json::array();
    for (const Int& v : periodic_point_counts(read_matrix(input), pmax))
      out.push_back(int_to_json(v));
    emit(out);
  });

  CLI::App* i_bf = invariants->add_subcommand("bf", "Bowen-Franks group");
  i_bf->add_option("matrix", input)->required();
  i_bf->callback([&] { emit(group_to_json(bowen_franks(read_matrix(input)))); });

  // --- module ---------------------------------------------------------
  CLI::App* module = app.add_subcommand("module",
                                        "truncated graded modules");
  module->require_subcommand(1);

  CLI::App* m_free = module->add_subcommand("free", "free module at a vertex");
  m_free->add_option("--quiver", input)->required();
  m_free->add_option("--vertex", vertex)->required();
  m_free->add_option("-N,--trunc", trunc, "truncation degree")->required();
  m_free->callback(
      [&] { emit(module_to_json(free_module(read_quiver(input), vertex, trunc))); });

  CLI::App* m_random = module->add_subcommand(
      "random", "seed-deterministic random module");
  m_random->add_option("--quiver", input)->required();
  m_random->add_option("-N,--trunc", trunc)->required();
  m_random->add_option("--seed", seed);
  m_random->add_option("--max-dim", max_dim);
  m_random->callback([&] {
    emit(module_to_json(random_module(read_quiver(input), trunc, seed, max_dim)));
  });

  CLI::App* m_hilbert = module->add_subcommand("hilbert",
                                               "per-degree dimension vectors");
  m_hilbert->add_option("module", input)->required();
  m_hilbert->callback(
      [&] { emit(hilbert_json(module_from_json(read_json_arg(input), ""))); });

  CLI::App* m_apply = module->add_subcommand(
      "apply-f", "apply the factorization functor");
  m_apply->add_option("--l", in_l)->required();
  m_apply->add_option("--r", in_r)->required();
  m_apply->add_option("module", input)->required();
  m_apply->add_flag("--back", back, "apply the degree-shifting direction");
  m_apply->callback([&] {
    FactorizationContext ctx(read_matrix(in_l), read_matrix(in_r));
    TruncatedGradedModule m = module_from_json(read_json_arg(input), "");
    emit(module_to_json(back ? apply_F_back(ctx, m) : apply_F(ctx, m)));
  });

  CLI::App* m_tau = module->add_subcommand(
      "tau-check", "kernel/cokernel tables of the natural map");
  m_tau->add_option("--l", in_l)->required();
  m_tau->add_option("--r", in_r)->required();
  m_tau->add_option("module", input)->required();
  m_tau->callback([&] {
    FactorizationContext ctx(read_matrix(in_l), read_matrix(in_r));
    TruncatedGradedModule m = module_from_json(read_json_arg(input), "");
    GradedMorphism t = tau(ctx, m);  // throws if the squares fail
    Json out = kercoker_to_json(kernel_cokernel_dims(t));
    out["ok"] = true;
    emit(out);
  });

  CLI::App* m_eta = module->add_subcommand(
      "eta-check", "dimension identity of the composite functor");
  m_eta->add_option("--l", in_l)->required();
  m_eta->add_option("--r", in_r)->required();
  m_eta->add_option("module", input)->required();
  m_eta->callback([&] {
    FactorizationContext ctx(read_matrix(in_l), read_matrix(in_r));
    EtaReport rep =
        check_eta_dimensions(ctx, module_from_json(read_json_arg(input), ""));
    emit(eta_report_to_json(rep));
    exit_code = rep.ok ? 0 : 1;
  });

  CLI::App* m_chain = module->add_subcommand(
      "apply-chain", "apply a chain of factorization functors");
  m_chain->add_option("--contexts", contexts_arg,
                      "array of {\"L\":...,\"R\":...}")
      ->required();
  m_chain->add_option("module", input)->required();
  m_chain->callback([&] {
    emit(module_to_json(apply_chain(read_contexts(contexts_arg),
                                    module_from_json(read_json_arg(input), ""))));
  });

  // --- bratteli -------------------------------------------------------
  CLI::App* brat = app.add_subcommand("bratteli", "dimension diagrams");
  brat->require_subcommand(1);
  CLI::App* b_emit = brat->add_subcommand("emit", "emit a Bratteli diagram");
  b_emit->add_option("quiver", input)->required();
  b_emit->add_option("-N,--levels", trunc)->required();
  b_emit->add_option("--d0", d0_arg, "starting labels (defaults to all ones)");
  b_emit->add_option("--format", format, "json|dot");
  b_emit->callback([&] {
    Quiver q = read_quiver(input);
    std::vector<Int> d0;
    if (!d0_arg.empty()) {
      Json j = read_json_arg(d0_arg);
      if (!j.is_array()) throw JsonFormatError("d0 must be an array", "");
      for (std::size_t i = 0; i < j.size(); ++i)
        d0.push_back(int_from_json(j[i], "/" + std::to_string(i)));
    }
    BratteliDiagram d = bratteli(q, trunc, d0);
    if (format == "dot")
      std::cout << emit_dot(d);
    else if (format == "json")
      emit(bratteli_to_json(d));
    else
      throw JsonFormatError("unknown format: " + format, "/");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  } catch (const JsonFormatError& e) {
    std::cerr << Json{{"error", e.what()}, {"at", e.at()}}.dump() << "\n";
    return 3;
  } catch (const Json::parse_error& e) {
    std::cerr << Json{{"error", e.what()}, {"byte", e.byte}}.dump() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return 3;
  }
  return exit_code;
}
