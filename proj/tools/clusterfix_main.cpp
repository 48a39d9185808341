// clusterfix: batch front end for the exact cluster-mutation engine and the
// fixed-point solver.  All structured I/O is JSON (grids are CSV); outputs
// are byte-identical across repeated runs on the same inputs.
//
// Exit codes: 0 success, 1 domain errors (dt-not-found, verification-failed,
// diverging, bound-exceeded, ...), 2 malformed input, 3 internal errors.

#include <cstddef>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfx/errors.hpp"
#include "cfx/exchange_graph.hpp"
#include "cfx/fixed_point.hpp"
#include "cfx/json_io.hpp"
#include "cfx/weyl.hpp"

namespace {

using cfx::Json;

struct Opts {
  std::string input, output, seed_file, loops_file, filling_file;
  int depth = 8;
  double tol = 1e-10;
  std::size_t bound = 0;  // 0 = per-command default
  double box = 0;         // 0 = per-command default
  int resolution = 41;
};

void emit_text(const Opts& o, const std::string& text) {
  if (o.output.empty())
    std::cout << text;
  else
    cfx::write_text_file(o.output, text);
}

void emit(const Opts& o, const Json& j) { emit_text(o, cfx::dump_json(j)); }

cfx::ExchangeMatrix load_seed(const Opts& o) {
  if (o.seed_file.empty()) throw cfx::InputError("this command requires --seed-file");
  return cfx::seed_from_json(cfx::load_json_file(o.seed_file));
}

cfx::Path load_path(const Opts& o) {
  if (o.input.empty()) throw cfx::InputError("this command requires --input (a path file)");
  Json j = cfx::load_json_file(o.input);
  if (j.is_object() && j.contains("path")) return cfx::path_from_json(j.at("path"));
  return cfx::path_from_json(j);
}

std::vector<cfx::LaurentPoly> load_filling_elements(const Opts& o,
                                                    std::vector<std::string>* names = nullptr) {
  if (o.filling_file.empty()) throw cfx::InputError("this command requires --filling-file");
  auto named = cfx::filling_from_json(cfx::load_json_file(o.filling_file));
  std::vector<cfx::LaurentPoly> out;
  for (auto& [name, poly] : named) {
    if (names) names->push_back(name);
    out.push_back(std::move(poly));
  }
  return out;
}

std::vector<cfx::MutationLoop> load_loops(const Opts& o, const cfx::ExchangeMatrix& base) {
  std::vector<cfx::MutationLoop> gens;
  if (o.loops_file.empty()) return gens;
  for (auto& nl : cfx::loops_from_json(cfx::load_json_file(o.loops_file)))
    gens.push_back(cfx::MutationLoop{base, std::move(nl.path), std::move(nl.name)});
  return gens;
}

Json tracked_to_json(const cfx::TrackedSeed& t) {
  Json j = Json::object();
  j["seed"] = cfx::seed_to_json(t.ex);
  j["c"] = cfx::imat_to_json(t.c);
  j["g"] = cfx::imat_to_json(cfx::g_matrix(t));
  j["perm"] = Json(t.perm);
  j["sign_coherent"] = cfx::c_rows_sign_coherent(t.c);
  return j;
}

Json balance_to_json(const cfx::BalancedResult& b) {
  Json j = Json::object();
  j["balanced"] = b.balanced;
  j["full_rank"] = b.full_rank;
  if (b.balanced)
    j["weights"] = cfx::qvec_to_json(b.weights);
  else
    j["witness"] = cfx::qvec_to_json(b.witness);
  if (!b.reason.empty()) j["reason"] = b.reason;
  return j;
}

Json filling_report(const cfx::FillingSet& fs) {
  Json j = Json::object();
  j["verified"] = fs.verified();
  j["element_count"] = fs.elements.size();
  j["support_points"] = fs.balance_points.size();
  j["balance"] = balance_to_json(fs.balance);
  Json span = Json::object();
  span["spans_orthocomplement"] = fs.span.spans;
  span["inside_orthocomplement"] = fs.span.inside_orthocomplement;
  span["span_rank"] = fs.span.span_rank;
  span["expected_rank"] = fs.span.expected_rank;
  j["span"] = span;
  return j;
}

Json minimize_report(const cfx::MaxObjective& L, const cfx::MinimizeResult& r) {
  Json j = Json::object();
  switch (r.status) {
    case cfx::MinimizeStatus::Converged: j["status"] = "converged"; break;
    case cfx::MinimizeStatus::Diverging: j["status"] = "diverging"; break;
    case cfx::MinimizeStatus::MaxIterations: j["status"] = "max-iterations"; break;
  }
  j["x"] = Json(r.x);
  j["value"] = r.value;
  j["grad_norm"] = r.grad_norm;
  j["newton_steps"] = r.newton_steps;
  if (r.status == cfx::MinimizeStatus::Diverging) {
    j["escape"] = Json(r.escape);
    return j;
  }
  Json active = Json::array();
  for (int idx : r.at_x.active) active.push_back(L.parts[idx].name);
  j["active"] = active;
  Json hull = Json::object();
  hull["inside"] = r.hull.inside;
  hull["weights"] = cfx::qvec_to_json(r.hull.weights);
  hull["residual"] = cfx::rat_to_json(r.hull.residual);
  j["hull"] = hull;
  j["fiber_certificate"] = r.fiber_certificate;
  return j;
}

// Diverging and failed verification are domain outcomes: report them with an
// "error" code and exit 1, keeping the full diagnostics machine-readable.
Json as_domain_error(const std::string& code, Json body) {
  Json j = Json::object();
  j["error"] = code;
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

int cmd_mutate(const Opts& o) {
  const cfx::ExchangeMatrix base = load_seed(o);
  const cfx::TrackedSeed t = cfx::apply_path(cfx::TrackedSeed::initial(base), load_path(o));
  emit(o, tracked_to_json(t));
  return 0;
}

int cmd_expand(const Opts& o) {
  const cfx::ExchangeMatrix base = load_seed(o);
  const cfx::Expansion ex = cfx::expand_path(base, load_path(o));
  Json j = tracked_to_json(ex.end);
  Json vars = Json::array();
  for (const auto& v : ex.vars) vars.push_back(cfx::laurent_to_json(v));
  j["vars"] = vars;
  emit(o, j);
  return 0;
}

int cmd_c_matrix(const Opts& o) {
  const cfx::ExchangeMatrix base = load_seed(o);
  const cfx::TrackedSeed t = cfx::apply_path(cfx::TrackedSeed::initial(base), load_path(o));
  Json j = Json::object();
  j["c"] = cfx::imat_to_json(t.c);
  j["g"] = cfx::imat_to_json(cfx::g_matrix(t));
  j["perm"] = Json(t.perm);
  j["sign_coherent"] = cfx::c_rows_sign_coherent(t.c);
  emit(o, j);
  return 0;
}

int cmd_dt_search(const Opts& o) {
  const cfx::ExchangeMatrix base = load_seed(o);
  const std::size_t budget = o.bound ? o.bound : 200000;
  const auto path = cfx::find_terminal(base, o.depth, budget);
  if (!path) {
    emit(o, as_domain_error("dt-not-found",
                            Json{{"depth", o.depth}, {"detail", "no terminal seed found"}}));
    return 1;
  }
  Json j = Json::object();
  j["found"] = true;
  j["path"] = cfx::path_to_json(*path);
  j["length"] = path->size();
  emit(o, j);
  return 0;
}

int cmd_filling_verify(const Opts& o) {
  const cfx::ExchangeMatrix base = load_seed(o);
  const cfx::FillingSet fs = cfx::verify_filling(base, load_filling_elements(o));
  if (!fs.verified()) {
    emit(o, as_domain_error("verification-failed", filling_report(fs)));
    return 1;
  }
  emit(o, filling_report(fs));
  return 0;
}

cfx::MinimizeOptions solver_options(const Opts& o) {
  cfx::MinimizeOptions mo;
  mo.grad_tol = o.tol;
  if (o.box > 0) mo.box = o.box;
  return mo;
}

int cmd_minimize(const Opts& o) {
  const cfx::ExchangeMatrix base = load_seed(o);
  std::vector<std::string> names;
  cfx::MaxObjective L;
  std::vector<cfx::LaurentPoly> elems = load_filling_elements(o, &names);
  for (std::size_t i = 0; i < elems.size(); ++i)
    L.parts.push_back(cfx::LogLaurentFunction::from_poly(elems[i], names[i]));
  const cfx::MinimizeResult r = cfx::minimize(L, base, solver_options(o));
  if (r.status == cfx::MinimizeStatus::Diverging) {
    emit(o, as_domain_error("diverging", minimize_report(L, r)));
    return 1;
  }
  emit(o, minimize_report(L, r));
  return 0;
}

int cmd_fixed_point(const Opts& o) {
  const cfx::ExchangeMatrix base = load_seed(o);
  const cfx::FillingSet fs = o.filling_file.empty()
                                 ? cfx::build_dt_filling(base, o.depth)
                                 : cfx::verify_filling(base, load_filling_elements(o));
  if (!fs.verified()) {
    emit(o, as_domain_error("verification-failed", filling_report(fs)));
    return 1;
  }
  const std::vector<cfx::MutationLoop> gens = load_loops(o, base);
  const std::size_t bound = o.bound ? o.bound : 64;
  const cfx::FixedPointResult res = cfx::find_fixed_point(gens, fs, solver_options(o), bound);
  Json j = minimize_report(res.objective, res.min);
  j["group_order"] = res.group.size();
  j["objective_parts"] = res.objective.parts.size();
  if (res.min.status == cfx::MinimizeStatus::Diverging) {
    emit(o, as_domain_error("diverging", j));
    return 1;
  }
  j["displacements"] = Json(res.displacements);
  j["x_image"] = Json(res.x_image);
  emit(o, j);
  return 0;
}

int cmd_weyl_solve(const Opts& o) {
  if (o.input.empty()) throw cfx::InputError("weyl-solve requires --input (a weyl JSON file)");
  const Json in = cfx::load_json_file(o.input);
  const cfx::WeylInput w = cfx::weyl_from_json(in);
  std::vector<double> x0(w.labeling.size(), 0.0);
  if (in.contains("x0")) {
    const Json& j0 = in.at("x0");
    if (!j0.is_array() || j0.size() != x0.size())
      throw cfx::InputError("weyl input: \"x0\" must be an array of m*r numbers");
    for (std::size_t i = 0; i < x0.size(); ++i) x0[i] = j0[i].get<double>();
  }
  const std::vector<double> x = cfx::solve_unit_potentials(w, x0);
  const auto P = cfx::potentials(w);
  std::vector<double> logs;
  double worst = 0;
  for (const auto& p : P) {
    logs.push_back(cfx::eval(p, x));
    worst = std::max(worst, std::fabs(logs.back()));
  }
  bool fixed = true;
  for (int s = 0; s < static_cast<int>(P.size()); ++s) {
    const std::vector<double> y = cfx::weyl_act(w, s, x);
    for (std::size_t i = 0; i < y.size(); ++i) fixed = fixed && std::fabs(y[i] - x[i]) <= 1e-9;
  }
  Json j = Json::object();
  j["families"] = w.family_names;
  j["x"] = Json(x);
  j["log_potentials"] = Json(logs);
  j["max_abs_log_potential"] = worst;
  j["fixed_by_all_reflections"] = fixed;
  emit(o, j);
  return 0;
}

int cmd_grid(const Opts& o) {
  std::vector<std::string> names;
  std::vector<cfx::LaurentPoly> elems = load_filling_elements(o, &names);
  cfx::MaxObjective L;
  if (!o.loops_file.empty()) {
    const cfx::ExchangeMatrix base = load_seed(o);
    cfx::FillingSet fs;
    fs.base = base;
    fs.elements = elems;
    L = cfx::orbit(fs, cfx::close_subgroup(load_loops(o, base), o.bound ? o.bound : 64));
  } else {
    for (std::size_t i = 0; i < elems.size(); ++i)
      L.parts.push_back(cfx::LogLaurentFunction::from_poly(elems[i], names[i]));
  }
  const double box = o.box > 0 ? o.box : 2.0;
  std::ostringstream csv;
  cfx::write_grid_csv(csv, L, box, o.resolution);
  emit_text(o, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact cluster mutation engine and max-of-log-Laurent fixed-point solver"};
  app.require_subcommand(1);

  Opts o;
  auto add_io = [&](CLI::App* c) {
    c->add_option("--input", o.input, "input JSON file");
    c->add_option("--output", o.output, "output file (default: stdout)");
    c->add_option("--seed-file", o.seed_file, "seed JSON file");
    c->add_option("--loops-file", o.loops_file, "loops JSON file");
    c->add_option("--filling-file", o.filling_file, "filling-set JSON file");
    c->add_option("--depth", o.depth, "search depth");
    c->add_option("--tol", o.tol, "gradient tolerance")->check(CLI::PositiveNumber);
    c->add_option("--bound", o.bound, "node or group-order budget");
    c->add_option("--box", o.box, "iterate box half-width / grid half-width")
        ->check(CLI::PositiveNumber);
    c->add_option("--resolution", o.resolution, "grid points per axis")
        ->check(CLI::Range(2, 100000));
  };

  struct Cmd {
    const char* name;
    const char* help;
    int (*fn)(const Opts&);
  };
  const Cmd cmds[] = {
      {"mutate", "apply an edge path to a seed and report the tracked seed", cmd_mutate},
      {"expand", "Laurent-expand every cluster variable along a path", cmd_expand},
      {"c-matrix", "report the C- and G-matrices along a path", cmd_c_matrix},
      {"dt-search", "breadth-first search for the terminal seed (C = -Id)", cmd_dt_search},
      {"filling-verify", "check the balanced and spanning conditions exactly", cmd_filling_verify},
      {"minimize", "minimize a max-of-log-Laurent objective", cmd_minimize},
      {"fixed-point", "group closure, orbit objective, minimize, invariance check",
       cmd_fixed_point},
      {"weyl-solve", "solve for the point with all reflection potentials equal to 1",
       cmd_weyl_solve},
      {"grid", "sample the objective over a box and write CSV", cmd_grid},
  };
  std::vector<std::pair<CLI::App*, int (*)(const Opts&)>> table;
  for (const Cmd& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_io(sub);
    table.emplace_back(sub, c.fn);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    for (auto& [sub, fn] : table)
      if (sub->parsed()) return fn(o);
    std::cerr << "no command selected\n";
    return 2;
  } catch (const cfx::DomainError& e) {
    emit(o, Json{{"error", e.code}, {"detail", e.what()}});
    return 1;
  } catch (const cfx::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
