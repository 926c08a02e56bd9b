// roal: batch front end for the workbench.
//
// Exit codes: 0 pass, 1 check failure or dimension mismatch, 2 input error,
// 3 unknown scenario.

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "roal/catalog.hpp"
#include "roal/cones.hpp"
#include "roal/io.hpp"
#include "roal/maps.hpp"

using namespace roal;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2, kUnknown = 3 };

struct Common {
  std::string json_out;
  std::string format = "text";
  std::uint64_t seed = 0;
  double tol_psd = ToleranceConfig{}.psd_tol;
  double tol_norm = ToleranceConfig{}.norm_rel_tol;

  ToleranceConfig tol() const {
    ToleranceConfig t;
    t.psd_tol = tol_psd;
    t.norm_rel_tol = tol_norm;
    try {
      t.validate();
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    return t;
  }
};

void add_common(CLI::App* app, Common& c, bool with_seed) {
  app->add_option("--json", c.json_out, "Also write the report as JSON to this file");
  app->add_option("--format", c.format, "Report format on stdout")->check(CLI::IsMember({"text", "json"}));
  if (with_seed) app->add_option("--seed", c.seed, "Random seed")->envname("ROAL_SEED");
  app->add_option("--tol-psd", c.tol_psd, "PSD tolerance");
  app->add_option("--tol-norm", c.tol_norm, "Relative norm tolerance");
}

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

const char* yes(bool b) { return b ? "yes" : "no"; }

// Text goes to stdout unless --format json; JSON always goes to --json.
void emit(const Common& c, const Json& report, const std::string& text) {
  if (c.format == "json") std::cout << report.dump(2) << '\n';
  else std::cout << text;
  if (!c.json_out.empty()) write_json_file(c.json_out, report);
}

Json flags_json(const SubspaceFlags& f) {
  return Json{{"selfadjoint", f.is_selfadjoint_space},
              {"jordan_closed", f.is_jordan_closed},
              {"assoc_closed", f.is_assoc_closed}};
}

int check_algebra(const std::string& path, const Common& c) {
  const AlgebraSpec spec = algebra_from_json(read_json_file(path));
  const ToleranceConfig tol = c.tol();
  Subspace s = generated_subspace(spec);
  if (s.empty()) throw InputError("algebra '" + spec.name + "': generators span the zero subspace");
  const SubspaceFlags flags = structure_flags(s);
  std::string invalid;
  std::optional<RealMatrix> identity;
  try {
    const AlgebraDescriptor d = make_algebra(spec.name, s, spec.kind, tol);
    s = d.subspace;
    identity = s.identity();
  } catch (const std::invalid_argument& e) {
    invalid = e.what();
    identity = find_identity(s, tol);
  }
  const std::size_t diag_dim = diagonal(s).size();
  const bool ambient_unit = identity && max_abs_diff(*identity, RealMatrix::identity(s.ambient_dim())) < 1e-9;

  Json report = Json::object();
  report["name"] = spec.name;
  report["kind"] = to_string(spec.kind);
  report["close_under"] = algebra_to_json(spec)["close_under"];
  report["dimension"] = s.size();
  report["generator_count"] = spec.generators.size();
  report["diagonal_dimension"] = diag_dim;
  report["flags"] = flags_json(flags);
  report["unital"] = identity.has_value();
  report["identity"] = identity ? matrix_to_json(*identity) : Json(nullptr);
  report["identity_is_ambient_unit"] = ambient_unit;
  report["valid"] = invalid.empty();
  report["error"] = invalid;

  std::ostringstream t;
  t << "algebra " << spec.name << " (" << to_string(spec.kind) << ", ambient " << spec.ambient_dim << ")\n"
    << "  dimension            " << s.size() << " (" << spec.generators.size() << " generators, closure "
    << report["close_under"].get<std::string>() << ")\n"
    << "  diagonal dimension   " << diag_dim << '\n'
    << "  selfadjoint          " << yes(flags.is_selfadjoint_space) << '\n'
    << "  jordan closed        " << yes(flags.is_jordan_closed) << '\n'
    << "  assoc closed         " << yes(flags.is_assoc_closed) << '\n'
    << "  identity             "
    << (identity ? (ambient_unit ? "I" : "projection of rank " + num(trace(*identity))) : std::string("none"))
    << '\n';
  if (invalid.empty()) t << "valid\n";
  else t << "INVALID: " << invalid << '\n';
  emit(c, report, t.str());
  return invalid.empty() ? kPass : kFail;
}

int check_map(const std::string& map_path, const std::string& domain_path, std::vector<std::size_t> levels,
              const Common& c) {
  const std::filesystem::path base = std::filesystem::path(map_path).parent_path();
  MapSpec spec = map_from_json(read_json_file(map_path), base);
  if (!domain_path.empty()) {
    const AlgebraSpec d = algebra_from_json(read_json_file(domain_path));
    if (d.ambient_dim != spec.domain.ambient_dim || d.generators.size() != spec.domain.generators.size())
      throw DimensionMismatch("map: domain file has ambient dimension " + std::to_string(d.ambient_dim) + " and " +
                              std::to_string(d.generators.size()) + " generators, the map expects " +
                              std::to_string(spec.domain.ambient_dim) + " and " +
                              std::to_string(spec.domain.generators.size()));
    spec.domain = d;
  }
  const ToleranceConfig tol = c.tol();
  const AlgebraDescriptor domain = materialize(spec.domain, tol);
  const LinearMap t = materialize(spec, domain);
  if (levels.empty()) levels = {1, 2};
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.front() == 0) throw InputError("--levels: levels start at 1");

  MapNormOptions opts;
  opts.seed = c.seed;
  const auto norms = map_norms(t, levels, opts);

  Json report = Json::object();
  report["domain"] = domain.name;
  report["domain_dimension"] = domain.subspace.size();
  report["ambient_dim"] = domain.subspace.ambient_dim();
  report["codomain_dim"] = t.codomain_dim;
  report["seed"] = c.seed;
  std::ostringstream text;
  text << "map on " << domain.name << " (dimension " << domain.subspace.size() << " in M" << domain.subspace.ambient_dim()
       << ") into M" << t.codomain_dim << ", seed " << c.seed << '\n';

  std::optional<ConeContext> ctx;
  try {
    ctx.emplace(domain, tol);
  } catch (const std::invalid_argument& e) {
    text << "  positivity flags not computed: " << e.what() << '\n';
    report["flags"] = nullptr;
  }
  if (ctx) {
    const MapFlags f = classify_map(t, *ctx, levels, c.seed);
    Json fl = Json::object();
    fl["selfadjoint"] = f.selfadjoint;
    fl["selfadjoint_residual"] = f.selfadjoint_residual;
    fl["positive"] = f.positive;
    fl["real_positive"] = f.real_positive;
    fl["real_completely_positive"] = f.rcp;
    fl["systematically_real_positive"] = f.srp;
    fl["completely_positive"] = f.cp ? Json(*f.cp) : Json(nullptr);
    fl["selfadjoint_domain"] = f.selfadjoint_domain;
    fl["equivalence_holds"] = f.equivalence_holds;
    fl["propagation_holds"] = f.propagation_holds;
    Json lv = Json::array();
    for (const auto& l : f.levels) {
      Json lj = Json::object();
      lj["level"] = l.level;
      lj["positive"] = l.positive;
      lj["real_positive"] = l.real_positive;
      lj["worst_psd_margin"] = l.worst_psd_margin;
      lj["worst_real_positive_margin"] = l.worst_real_positive_margin;
      lj["exact"] = l.exact;
      lj["psd_witness"] = l.psd_witness ? matrix_to_json(*l.psd_witness) : Json(nullptr);
      lj["real_positive_witness"] = l.real_positive_witness ? matrix_to_json(*l.real_positive_witness) : Json(nullptr);
      lv.push_back(std::move(lj));
    }
    fl["levels"] = std::move(lv);
    report["flags"] = std::move(fl);

    text << "  selfadjoint                   " << yes(f.selfadjoint) << " (residual " << num(f.selfadjoint_residual)
         << ")\n"
         << "  positive                      " << yes(f.positive) << '\n'
         << "  real positive                 " << yes(f.real_positive) << '\n'
         << "  real completely positive      " << yes(f.rcp) << " (levels examined)\n"
         << "  systematically real positive  " << yes(f.srp) << '\n'
         << "  completely positive           " << (f.cp ? yes(*f.cp) : "n/a (domain is not all of M_n)") << '\n';
    if (f.selfadjoint_domain) text << "  srp <=> positive & selfadjoint " << yes(f.equivalence_holds) << '\n';
    text << "  level  positive  real-positive  psd-margin      rp-margin       decided-by\n";
    for (const auto& l : f.levels)
      text << "  " << std::setw(5) << l.level << "  " << std::setw(8) << yes(l.positive) << "  " << std::setw(13)
           << yes(l.real_positive) << "  " << std::setw(14) << num(l.worst_psd_margin) << "  " << std::setw(14)
           << num(l.worst_real_positive_margin) << "  " << (l.exact ? "choi" : "sampling") << '\n';
  }

  Json nj = Json::array();
  text << "  level  norm (lower bound)  upper bound\n";
  for (const auto& n : norms) {
    nj.push_back(Json{{"level", n.level},
                      {"value", n.value},
                      {"upper_bound", n.upper_bound},
                      {"restarts", n.restarts},
                      {"maximizer", matrix_to_json(n.maximizer)}});
    text << "  " << std::setw(5) << n.level << "  " << std::setw(18) << num(n.value) << "  " << num(n.upper_bound)
         << '\n';
  }
  report["norms"] = std::move(nj);
  emit(c, report, text.str());
  return kPass;
}

int check_functional(const std::string& path, const Common& c) {
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  const FunctionalSpec spec = functional_from_json(read_json_file(path), base);
  const ToleranceConfig tol = c.tol();
  const AlgebraDescriptor domain = materialize(spec.domain, tol);
  const Functional phi(domain.subspace, spec.riesz);

  Json report = Json::object();
  report["domain"] = domain.name;
  report["domain_dimension"] = domain.subspace.size();
  report["seed"] = c.seed;
  std::ostringstream text;
  text << "functional on " << domain.name << " (dimension " << domain.subspace.size() << "), seed " << c.seed << '\n';

  std::optional<ConeContext> ctx;
  try {
    ctx.emplace(domain, tol);
  } catch (const std::invalid_argument& e) {
    text << "  positivity flags not computed: " << e.what() << '\n';
  }
  NormCertificate norm;
  if (ctx) {
    const FunctionalFlags f = classify_functional(phi, *ctx, c.seed);
    norm = f.norm;
    report["flags"] = Json{{"positive", f.positive},
                           {"positivity_exact", f.positivity_exact},
                           {"selfadjoint", f.selfadjoint},
                           {"real_positive", f.real_positive},
                           {"real_positivity_exact", f.real_positivity_exact},
                           {"systematically_real_positive", f.srp},
                           {"state", f.state},
                           {"value_at_one", f.value_at_one},
                           {"norm_equals_value_at_one", f.norm_equals_value_at_one},
                           {"chain_consistent", f.chain_consistent},
                           {"min_psd_value", f.min_psd_value},
                           {"min_real_positive_value", f.min_real_positive_value},
                           {"antisymmetric_leak", f.antisymmetric_leak},
                           {"samples", f.samples}};
    const auto how = [](bool exact) { return exact ? " (exact)" : " (sampled)"; };
    text << "  phi(1)                        " << num(f.value_at_one) << '\n'
         << "  positive                      " << yes(f.positive) << how(f.positivity_exact) << '\n'
         << "  selfadjoint                   " << yes(f.selfadjoint) << " (leak " << num(f.antisymmetric_leak)
         << ")\n"
         << "  real positive                 " << yes(f.real_positive) << how(f.real_positivity_exact) << '\n'
         << "  systematically real positive  " << yes(f.srp) << '\n'
         << "  state                         " << yes(f.state) << '\n'
         << "  norm = phi(1)                 " << yes(f.norm_equals_value_at_one) << '\n'
         << "  chain consistent              " << yes(f.chain_consistent) << '\n';
  } else {
    FunctionalNormOptions opts;
    opts.seed = c.seed;
    norm = functional_norm(phi, opts);
    report["flags"] = nullptr;
  }
  report["norm"] = Json{{"value", norm.value},
                        {"upper_bound", norm.upper_bound},
                        {"gap_estimate", norm.gap_estimate},
                        {"nuclear_oracle", norm.nuclear_oracle ? Json(*norm.nuclear_oracle) : Json(nullptr)},
                        {"maximizer", matrix_to_json(norm.maximizer)}};
  text << "  norm                          " << num(norm.value) << " (upper bound " << num(norm.upper_bound) << ")\n";
  emit(c, report, text.str());
  return kPass;
}

RealMatrix parse_matrix_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') {
    try {
      return matrix_from_json(Json::parse(arg));
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("--matrix is not valid JSON: ") + e.what());
    }
  }
  return matrix_from_json(read_json_file(arg));
}

int transform(const std::string& path, std::optional<std::size_t> element, const std::string& matrix, bool inverse,
              const Common& c) {
  const AlgebraSpec spec = algebra_from_json(read_json_file(path));
  const ToleranceConfig tol = c.tol();
  if (element.has_value() == !matrix.empty()) throw InputError("transform: give exactly one of --element and --matrix");
  RealMatrix x;
  if (element) {
    if (*element >= spec.generators.size())
      throw InputError("transform: element index " + std::to_string(*element) + " out of range");
    x = spec.generators[*element];
  } else {
    x = parse_matrix_arg(matrix);
  }
  if (!x.is_square() || x.rows() != spec.ambient_dim)
    throw DimensionMismatch("transform: element is not " + std::to_string(spec.ambient_dim) + "x" +
                            std::to_string(spec.ambient_dim));
  const ConeContext ctx(materialize(spec, tol), tol);

  Json checks = Json::array();
  std::ostringstream text;
  bool all = true;
  const auto check = [&](const std::string& name, bool holds, double value) {
    all = all && holds;
    checks.push_back(Json{{"name", name}, {"status", holds ? "pass" : "fail"}, {"value", value}});
    text << "  " << (holds ? "pass" : "FAIL") << "  " << name << " (" << num(value) << ")\n";
  };
  Json report = Json::object();
  report["algebra"] = spec.name;
  report["direction"] = inverse ? "inverse" : "forward";
  report["input"] = matrix_to_json(x);
  text << (inverse ? "inverse transform w(1-w)^-1" : "transform x(1+x)^-1") << " on " << spec.name << '\n';

  const double member_res = member(ctx.space(), x).residual;
  check("input in algebra", member_res <= 1e-9 * (1.0 + max_abs(x)), member_res);
  if (!all) {
    report["output"] = nullptr;
    report["checks"] = std::move(checks);
    emit(c, report, text.str());
    return kFail;
  }
  try {
    if (!inverse) {
      const auto rp = is_real_positive(ctx, x);
      check("input real positive", rp.real_positive, rp.lambda_min);
      const auto f = f_transform(ctx, x);
      report["output"] = matrix_to_json(f.value);
      check("output in half F", f.ok, f.half_f_distance);
      const RealMatrix back = f_transform_inverse(ctx, f.value);
      const double rt = operator_norm(back - x, tol);
      check("round trip", rt <= 1e-9 * (1.0 + operator_norm(x, tol)), rt);
    } else {
      const double dist = operator_norm(ctx.one() - x * 2.0, tol);
      check("input in half F", dist <= 1.0 + tol.psd_tol, dist);
      const RealMatrix y = f_transform_inverse(ctx, x);
      report["output"] = matrix_to_json(y);
      const auto rp = is_real_positive(ctx, y);
      check("output real positive", rp.real_positive, rp.lambda_min);
      const auto f = f_transform(ctx, y);
      const double rt = operator_norm(f.value - x, tol);
      check("round trip", rt <= 1e-9, rt);
    }
  } catch (const SingularResolvent& e) {
    if (!report.contains("output")) report["output"] = nullptr;
    check(std::string("resolvent invertible: ") + e.what(), false, kResolventCondLimit);
  }
  report["checks"] = std::move(checks);
  emit(c, report, text.str());
  return all ? kPass : kFail;
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream t;
  t << (v.overall ? "PASS" : "FAIL") << "  " << v.scenario << " (seed " << v.seed << ")\n";
  if (!v.note.empty()) t << "      note: " << v.note << '\n';
  for (const auto& c : v.checks) {
    const char* s = c.status == CheckStatus::pass ? "pass" : c.status == CheckStatus::fail ? "FAIL" : "skip";
    t << "      " << s << "  " << c.name << " = " << num(c.value);
    if (c.expected_lo == c.expected_hi) t << ", expected " << num(c.expected_lo);
    else t << ", expected [" << num(c.expected_lo) << ", " << num(c.expected_hi) << "]";
    if (c.tolerance > 0) t << " +- " << num(c.tolerance);
    if (c.counterexample) t << " (counterexample)";
    t << "\n            " << c.anchor << '\n';
    if (!c.note.empty()) t << "            note: " << c.note << '\n';
    if (c.witness) {
      t << "            witness:\n";
      for (std::size_t i = 0; i < c.witness->rows(); ++i) {
        t << "             ";
        for (std::size_t j = 0; j < c.witness->cols(); ++j) t << ' ' << std::setw(6) << num((*c.witness)(i, j) + 0.0);
        t << '\n';
      }
    }
  }
  return t.str();
}

int catalog_list(const Common& c) {
  Json report = Json::array();
  std::ostringstream t;
  for (const auto& s : list_scenarios()) {
    report.push_back(Json{{"name", s.name}, {"description", s.description}});
    t << std::left << std::setw(24) << s.name << s.description << '\n';
  }
  emit(c, report, t.str());
  return kPass;
}

int catalog_run(const std::string& name, bool all, const Common& c) {
  if (all == !name.empty()) throw InputError("catalog run: give a scenario name or --all");
  const ToleranceConfig tol = c.tol();
  std::vector<Verdict> verdicts;
  if (all) verdicts = run_all(c.seed, tol);
  else verdicts.push_back(run_scenario(name, c.seed, tol));
  bool ok = true;
  std::string text;
  Json report = Json::array();
  for (const auto& v : verdicts) {
    ok = ok && v.overall;
    text += verdict_text(v);
    report.push_back(verdict_to_json(v));
  }
  if (all) {
    std::size_t passed = 0;
    for (const auto& v : verdicts) passed += v.overall;
    text += std::to_string(passed) + "/" + std::to_string(verdicts.size()) + " scenarios passed\n";
  }
  emit(c, all ? report : report[0], text);
  return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical workbench for real operator algebras and Jordan operator algebras"};
  app.require_subcommand(1);

  Common common;
  std::string path, domain_path, matrix_arg, scenario;
  std::vector<std::size_t> levels;
  std::size_t element = 0;
  bool inverse = false, all = false;

  auto* alg = app.add_subcommand("check-algebra", "Closure flags, dimension, diagonal and identity of an algebra file");
  alg->add_option("algebra", path, "Algebra JSON")->required();
  add_common(alg, common, false);

  auto* map = app.add_subcommand("check-map", "Positivity flags and leveled norms of a map file");
  map->add_option("map", path, "Map JSON")->required();
  map->add_option("--domain", domain_path, "Algebra JSON replacing the map's domain");
  map->add_option("--levels", levels, "Matrix levels, e.g. 1,2,3")->delimiter(',');
  add_common(map, common, true);

  auto* fun = app.add_subcommand("check-functional", "Positivity chain and norm of a functional file");
  fun->add_option("functional", path, "Functional JSON")->required();
  add_common(fun, common, true);

  auto* tr = app.add_subcommand("transform", "Apply x(1+x)^-1 (or its inverse) to an element of an algebra");
  tr->add_option("algebra", path, "Algebra JSON")->required();
  auto* el = tr->add_option("--element", element, "Index of a generator");
  tr->add_option("--matrix", matrix_arg, "Matrix JSON file or inline JSON object");
  tr->add_flag("--inverse", inverse, "Apply w(1-w)^-1 instead");
  add_common(tr, common, false);

  auto* cat = app.add_subcommand("catalog", "Seeded scenario catalog");
  cat->require_subcommand(1);
  auto* list = cat->add_subcommand("list", "Scenario names and descriptions");
  list->add_option("--format", common.format, "Report format on stdout")->check(CLI::IsMember({"text", "json"}));
  auto* run = cat->add_subcommand("run", "Run one scenario or all of them");
  run->add_option("name", scenario, "Scenario name");
  run->add_flag("--all", all, "Run every scenario");
  add_common(run, common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  try {
    if (*alg) return check_algebra(path, common);
    if (*map) return check_map(path, domain_path, levels, common);
    if (*fun) return check_functional(path, common);
    if (*tr) return transform(path, *el ? std::optional<std::size_t>(element) : std::nullopt, matrix_arg, inverse,
                              common);
    if (*list) return catalog_list(common);
    if (*run) return catalog_run(scenario, all, common);
  } catch (const UnknownScenario& e) {
    std::cerr << "roal: " << e.what() << '\n';
    return kUnknown;
  } catch (const DimensionMismatch& e) {
    std::cerr << "roal: " << e.what() << '\n';
    return kFail;
  } catch (const InputError& e) {
    std::cerr << "roal: " << e.what() << '\n';
    return kInput;
  } catch (const ClosureBlowup& e) {
    std::cerr << "roal: " << e.what() << '\n';
    return kFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "roal: " << e.what() << '\n';
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "roal: " << e.what() << '\n';
    return kFail;
  }
  return kInput;
}
