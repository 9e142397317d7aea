#include "dhecke/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dhecke/center_probe.hpp"
#include "dhecke/error.hpp"
#include "dhecke/spec_io.hpp"

namespace dhecke::cli {

namespace {

struct Options {
  std::string spec_path;
  std::string params;
  unsigned degree = kDefaultProbeDegree;
  std::string grid;
  std::string format = "json";
  bool all_basis = false;
};

struct Context {
  GroupSpec spec;
  Group grp;
  ReflectionData refl;
};

Context load_context(const Options& opt) {
  Context ctx;
  ctx.spec = load_group_spec(opt.spec_path);
  ctx.grp = build_group(ctx.spec);
  ctx.refl = compute_reflection_data(ctx.grp);
  return ctx;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

ParamInput resolve_params(const Options& opt, const Context& ctx) {
  ParamInput in;
  if (!opt.params.empty()) {
    const std::string text = trim(opt.params);
    Json j;
    try {
      if (!text.empty() && text.front() == '{') {
        j = Json::parse(text);
      } else {
        std::ifstream f(text);
        if (!f) throw InputError("cannot open params file " + text);
        j = Json::parse(f);
      }
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("--params: ") + e.what());
    }
    in = parse_params(j, ctx.spec.conductor);
  } else if (ctx.spec.params) {
    in = *ctx.spec.params;
  } else {
    throw InputError("no parameters: pass --params or embed \"params\" in the spec");
  }
  if (in.point.t.empty()) in.point.t.assign(ctx.refl.N(), CycNum());
  return in;
}

KappaMap kappa_for(const Context& ctx, const ParamInput& in) {
  if (in.c_by_element) return kappa_from_element_values(ctx.grp, ctx.refl, in.point.t, *in.c_by_element);
  return kappa_from_params(ctx.grp, ctx.refl, in.point);
}

int conductor_for(const Context& ctx, const ParamInput& in) {
  int m = report_conductor(ctx.spec.conductor, in.point);
  if (in.c_by_element) {
    for (const auto& [g, v] : *in.c_by_element) m = lcm_conductor(m, v.conductor());
  }
  return m;
}

Json params_json(const ParamInput& in, int m) {
  Json j = params_to_json(in.point, m);
  if (in.c_by_element) {
    j["c_by_element"] = Json::object();
    for (const auto& [g, v] : *in.c_by_element) j["c_by_element"][std::to_string(g)] = scalar_to_json(v, m);
  }
  return j;
}

Json group_json(const Context& ctx) {
  return Json{{"order", ctx.grp.order()},
              {"dim", ctx.grp.dim},
              {"conductor", ctx.spec.conductor},
              {"num_classes", ctx.grp.classes.size()},
              {"generators", ctx.grp.generators}};
}

Json warnings_json(const Context& ctx) {
  Json w = Json::array();
  if (!ctx.refl.g_equals_s(ctx.grp)) {
    w.push_back("G != S: the subgroup generated by S' has order " + std::to_string(ctx.refl.s_subgroup.size()) +
                " < |G| = " + std::to_string(ctx.grp.order()) +
                "; the eAe / center correspondence is stated for G = S");
  }
  return w;
}

void require_json(const Options& opt) {
  if (opt.format != "json") throw InputError("--format csv is only supported by the scan subcommand");
}

// ---------------------------------------------------------------------------

int cmd_classify(const Options& opt, std::ostream& out, std::ostream& err) {
  require_json(opt);
  const Context ctx = load_context(opt);
  const int m = ctx.spec.conductor;
  const auto basis = valid_kappa_basis(ctx.grp, Exec::parallel);
  const CrosscheckReport cc = classification_crosscheck(ctx.grp, ctx.refl, basis);

  Json r = Json::object();
  r["command"] = "classify";
  r["spec"] = to_json(ctx.spec);
  r["group"] = group_json(ctx);
  r["N"] = ctx.refl.N();
  r["invariant_forms"] = Json::array();
  for (const auto& b : ctx.refl.invariant_forms) r["invariant_forms"].push_back(matrix_to_json(b.matrix, m));
  r["bireflections"] = ctx.refl.bireflections;
  r["sprime"] = ctx.refl.sprime;
  r["sprime_classes"] = Json::array();
  for (const auto& cls : ctx.refl.sprime_classes) {
    r["sprime_classes"].push_back(Json{{"rep", cls.rep},
                                       {"size", cls.elements.size()},
                                       {"elements", cls.elements},
                                       {"omega", matrix_to_json(ctx.refl.omega.at(cls.rep).matrix, m)}});
  }
  r["s_subgroup_order"] = ctx.refl.s_subgroup.size();
  r["g_equals_s"] = ctx.refl.g_equals_s(ctx.grp);
  r["dim_kappa_space"] = basis.size();
  r["basis"] = Json::array();
  for (const auto& k : basis) r["basis"].push_back(kappa_to_json(k, m));
  r["crosscheck"] = Json{{"pass", cc.pass},
                         {"dim_solution", cc.dim_solution},
                         {"dim_theorem", cc.dim_theorem},
                         {"expected", cc.expected},
                         {"spans_equal", cc.spans_equal},
                         {"support_ok", cc.support_ok},
                         {"invariance_ok", cc.invariance_ok},
                         {"detail", cc.detail}};
  r["warnings"] = warnings_json(ctx);
  out << r.dump(2) << '\n';
  err << "classify " << (ctx.spec.name.empty() ? opt.spec_path : ctx.spec.name) << ": |G|=" << ctx.grp.order()
      << " N=" << ctx.refl.N() << " classes(S')=" << ctx.refl.sprime_classes.size()
      << " dim kappa=" << basis.size() << " crosscheck " << (cc.pass ? "pass" : "FAIL") << '\n';
  return cc.pass ? kExitOk : kExitCheckFailed;
}

Json pbw_json(const PbwCheckResult& res, std::size_t dim, int m) {
  Json j{{"pass", res.pass}, {"overlaps_checked", res.overlaps_checked}, {"witness", nullptr}};
  if (res.witness) {
    j["witness"] = Json{{"kind", res.witness->kind},
                        {"word", word_to_string(res.witness->word)},
                        {"discrepancy", algebra_to_json(res.witness->discrepancy, dim, m)}};
  }
  return j;
}

int cmd_pbw_check(const Options& opt, std::ostream& out, std::ostream& err) {
  require_json(opt);
  const Context ctx = load_context(opt);
  std::vector<ParamInput> points;
  if (opt.all_basis) {
    for (std::size_t q = 0; q < ctx.refl.N(); ++q) {
      ParamInput in;
      in.point.t.assign(ctx.refl.N(), CycNum());
      in.point.t[q] = 1;
      points.push_back(std::move(in));
    }
    for (const auto& cls : ctx.refl.sprime_classes) {
      ParamInput in;
      in.point.t.assign(ctx.refl.N(), CycNum());
      in.point.c[cls.rep] = 1;
      points.push_back(std::move(in));
    }
  } else {
    points.push_back(resolve_params(opt, ctx));
  }

  bool all_pass = true;
  Json results = Json::array();
  for (const ParamInput& in : points) {
    const int m = conductor_for(ctx, in);
    const PbwEngine engine(ctx.grp, kappa_for(ctx, in));
    const PbwCheckResult res = pbw_overlap_check(engine, Exec::parallel);
    all_pass = all_pass && res.pass;
    Json entry = pbw_json(res, ctx.grp.dim, m);
    entry["params"] = params_json(in, m);
    entry["conductor"] = m;
    results.push_back(std::move(entry));
    if (!res.pass) {
      err << "pbw-check: overlap " << word_to_string(res.witness->word) << " does not resolve\n";
    }
  }
  Json r{{"command", "pbw-check"}, {"pass", all_pass}, {"results", std::move(results)}};
  out << r.dump(2) << '\n';
  err << "pbw-check: " << points.size() << " kappa(s), " << (all_pass ? "all pass" : "FAILED") << '\n';
  return all_pass ? kExitOk : kExitCheckFailed;
}

Json pair_json(const InvariantPair& pr, std::size_t dim, int m) {
  return Json{{"p", poly_to_json(pr.p, dim, m)},
              {"q", poly_to_json(pr.q, dim, m)},
              {"degree", pr.witness_degree()}};
}

int cmd_center_probe(const Options& opt, std::ostream& out, std::ostream& err) {
  require_json(opt);
  const Context ctx = load_context(opt);
  const ParamInput in = resolve_params(opt, ctx);
  if (in.c_by_element) throw InputError("center-probe needs class parameters (c), not c_by_element");
  const int m = conductor_for(ctx, in);
  const PbwEngine engine(ctx.grp, kappa_for(ctx, in));

  const PbwCheckResult pbw = pbw_overlap_check(engine, Exec::parallel);
  Json r = Json::object();
  r["command"] = "center-probe";
  r["params"] = params_json(in, m);
  r["conductor"] = m;
  r["degree_bound"] = opt.degree;
  r["pbw"] = pbw.pass;
  r["warnings"] = warnings_json(ctx);
  if (!pbw.pass) {
    r["verdict"] = nullptr;
    out << r.dump(2) << '\n';
    err << "center-probe: kappa fails the PBW check; probe skipped\n";
    return kExitCheckFailed;
  }

  const CommutatorVerdict v = spherical_commutator_probe(engine, opt.degree, Exec::parallel);
  const PoissonReport pr = poisson_crosscheck(engine, ctx.refl, in.point, opt.degree, Exec::parallel);
  const TraceReport tr = trace_identity_check(ctx.grp, engine.kappa(), ctx.refl, in.point);
  const bool t_zero = in.point.t_is_zero();
  const bool consistent = !(t_zero && !v.commutative);

  r["verdict"] = v.label();
  r["pairs_checked"] = v.pairs_checked;
  r["witness"] = nullptr;
  if (v.witness) {
    Json w = pair_json(*v.witness, ctx.grp.dim, m);
    w["commutator"] = algebra_to_json(v.commutator, ctx.grp.dim, m);
    w["reverified"] = v.witness_reverified;
    r["witness"] = std::move(w);
  }
  r["poisson_match"] = pr.pass;
  r["trace_identity"] = tr.pass;
  r["t_zero"] = t_zero;
  r["dichotomy_consistent"] = consistent;
  out << r.dump(2) << '\n';

  err << "center-probe: " << v.label();
  if (v.witness) err << " (witness degree " << v.witness->witness_degree() << ')';
  err << ", poisson " << (pr.pass ? "pass" : "FAIL") << ", trace " << (tr.pass ? "pass" : "FAIL") << '\n';
  for (const auto& w : warnings_json(ctx)) err << "warning: " << w.get<std::string>() << '\n';
  return (pr.pass && tr.pass && consistent) ? kExitOk : kExitCheckFailed;
}

int cmd_poisson(const Options& opt, std::ostream& out, std::ostream& err) {
  require_json(opt);
  const Context ctx = load_context(opt);
  const ParamInput in = resolve_params(opt, ctx);
  if (in.c_by_element) throw InputError("poisson needs class parameters (c), not c_by_element");
  const int m = conductor_for(ctx, in);
  const PbwEngine engine(ctx.grp, kappa_for(ctx, in));
  const SkewForm omega = t_form(ctx.refl, ctx.grp.dim, in.point);

  const auto pairs = invariant_pairs(ctx.grp, opt.degree);
  std::vector<BracketResult> got(pairs.size());
  const auto count = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < count; ++k) got[k] = poisson_bracket(engine, pairs[k].p, pairs[k].q);

  bool pass = true;
  Json rows = Json::array();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const Poly want = leibniz_bracket(omega, pairs[k].p, pairs[k].q);
    const bool match = got[k].degree_ok && got[k].bracket == want;
    pass = pass && match;
    Json row = pair_json(pairs[k], ctx.grp.dim, m);
    row["bracket"] = poly_to_json(got[k].bracket, ctx.grp.dim, m);
    row["leibniz"] = poly_to_json(want, ctx.grp.dim, m);
    row["degree_ok"] = got[k].degree_ok;
    row["match"] = match;
    rows.push_back(std::move(row));
  }
  Json r{{"command", "poisson"},
         {"params", params_json(in, m)},
         {"conductor", m},
         {"degree_bound", opt.degree},
         {"omega", matrix_to_json(omega.matrix, m)},
         {"pairs", std::move(rows)},
         {"pass", pass},
         {"warnings", warnings_json(ctx)}};
  out << r.dump(2) << '\n';
  err << "poisson: " << pairs.size() << " invariant pairs, " << (pass ? "all match" : "MISMATCH") << '\n';
  return pass ? kExitOk : kExitCheckFailed;
}

std::vector<CycNum> parse_grid_values(const std::string& text, int conductor) {
  std::vector<CycNum> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw InputError("--grid: empty entry in \"" + text + "\"");
    try {
      values.push_back(parse_scalar(item, conductor));
    } catch (const InputError& e) {
      throw InputError("--grid: " + std::string(e.what()));
    }
  }
  if (values.empty()) throw InputError("--grid: no values");
  return values;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

int cmd_scan(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.format != "json" && opt.format != "csv") throw InputError("--format must be json or csv");
  const Context ctx = load_context(opt);
  if (opt.grid.empty()) throw InputError("scan requires --grid");
  const std::vector<CycNum> values = parse_grid_values(opt.grid, ctx.spec.conductor);

  const std::size_t n_t = ctx.refl.N();
  const std::size_t coords = n_t + ctx.refl.sprime_classes.size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < coords; ++k) {
    total *= values.size();
    if (total > 100000) throw InputError("--grid: more than 100000 parameter points");
  }
  std::vector<ParamPoint> grid;
  grid.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    ParamPoint p;
    std::size_t rest = idx;
    std::vector<std::size_t> digits(coords);
    for (std::size_t k = coords; k-- > 0;) {
      digits[k] = rest % values.size();
      rest /= values.size();
    }
    for (std::size_t k = 0; k < n_t; ++k) p.t.push_back(values[digits[k]]);
    for (std::size_t k = 0; k < ctx.refl.sprime_classes.size(); ++k) {
      p.c[ctx.refl.sprime_classes[k].rep] = values[digits[n_t + k]];
    }
    grid.push_back(std::move(p));
  }

  const auto rows = dichotomy_scan(ctx.grp, ctx.refl, grid, opt.degree, Exec::parallel);
  int m = ctx.spec.conductor;
  for (const CycNum& v : values) m = lcm_conductor(m, v.conductor());

  bool consistent = true;
  std::size_t insufficient = 0;
  for (const auto& row : rows) {
    consistent = consistent && row.consistent;
    insufficient += row.degree_insufficient ? 1 : 0;
  }

  if (opt.format == "csv") {
    out << "key,t_zero,verdict,witness_degree,consistent,degree_insufficient\n";
    for (const auto& row : rows) {
      out << csv_quote(row.key) << ',' << (row.t_zero ? "true" : "false") << ',' << row.verdict.label() << ','
          << (row.verdict.witness ? std::to_string(row.verdict.witness->witness_degree()) : std::string()) << ','
          << (row.consistent ? "true" : "false") << ',' << (row.degree_insufficient ? "true" : "false") << '\n';
    }
  } else {
    Json jrows = Json::array();
    for (const auto& row : rows) {
      Json jr{{"key", row.key},
              {"params", params_to_json(row.params, m)},
              {"t_zero", row.t_zero},
              {"verdict", row.verdict.label()},
              {"witness_degree", nullptr},
              {"consistent", row.consistent},
              {"degree_insufficient", row.degree_insufficient}};
      if (row.verdict.witness) jr["witness_degree"] = row.verdict.witness->witness_degree();
      jrows.push_back(std::move(jr));
    }
    Json r{{"command", "scan"},
           {"conductor", m},
           {"degree_bound", opt.degree},
           {"rows", std::move(jrows)},
           {"consistent", consistent},
           {"degree_insufficient_rows", insufficient},
           {"warnings", warnings_json(ctx)}};
    out << r.dump(2) << '\n';
  }
  err << "scan: " << rows.size() << " points, " << (consistent ? "consistent" : "INCONSISTENT");
  if (insufficient) err << ", " << insufficient << " t != 0 point(s) without witness at D=" << opt.degree;
  err << '\n';
  return consistent ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graded Hecke algebra toolkit: classification, PBW checks and center probes", "dhecke"};
  app.require_subcommand(1);
  Options opt;

  auto add_spec = [&](CLI::App* sub) { sub->add_option("--spec", opt.spec_path, "Group spec JSON file")->required(); };
  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--params", opt.params, "Parameter point: JSON file or inline JSON object");
  };
  auto add_degree = [&](CLI::App* sub) {
    sub->add_option("--degree", opt.degree, "Invariant degree bound D")->check(CLI::Range(1u, 12u));
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* classify = app.add_subcommand("classify", "Classify the deformation maps kappa");
  add_spec(classify);
  add_format(classify);
  auto* pbw = app.add_subcommand("pbw-check", "Overlap-resolution PBW check");
  add_spec(pbw);
  add_params(pbw);
  add_format(pbw);
  pbw->add_flag("--all-basis", opt.all_basis, "Check every kappa of the parameter basis");
  auto* probe = app.add_subcommand("center-probe", "Spherical subalgebra commutativity probe");
  add_spec(probe);
  add_params(probe);
  add_degree(probe);
  add_format(probe);
  auto* poisson = app.add_subcommand("poisson", "Poisson bracket on invariants vs the Leibniz form");
  add_spec(poisson);
  add_params(poisson);
  add_degree(poisson);
  add_format(poisson);
  auto* scan = app.add_subcommand("scan", "Dichotomy scan over a parameter grid");
  add_spec(scan);
  add_degree(scan);
  add_format(scan);
  scan->add_option("--grid", opt.grid, "Comma-separated scalars used for every coordinate")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (classify->parsed()) return cmd_classify(opt, out, err);
    if (pbw->parsed()) return cmd_pbw_check(opt, out, err);
    if (probe->parsed()) return cmd_center_probe(opt, out, err);
    if (poisson->parsed()) return cmd_poisson(opt, out, err);
    if (scan->parsed()) return cmd_scan(opt, out, err);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const CapExceeded& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InternalError& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitInputError;
}

}  // namespace dhecke::cli
