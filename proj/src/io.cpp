#include "roal/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace roal {

namespace {

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw InputError(std::string(what) + ": expected a number");
}

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

std::size_t size_field(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw InputError(std::string(what) + ": field '" + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::string to_string(CloseUnder c) {
  switch (c) {
    case CloseUnder::none: return "none";
    case CloseUnder::jordan: return "jordan";
    case CloseUnder::assoc: return "assoc";
  }
  return "none";
}

CloseUnder close_under_from_string(const std::string& s) {
  if (s == "none") return CloseUnder::none;
  if (s == "jordan") return CloseUnder::jordan;
  if (s == "assoc") return CloseUnder::assoc;
  throw InputError("algebra: close_under must be none, jordan or assoc (got '" + s + "')");
}

AlgebraSpec domain_from_json(const Json& j, const std::filesystem::path& base) {
  if (j.is_string()) {
    std::filesystem::path p = j.get<std::string>();
    if (p.is_relative() && !base.empty()) p = base / p;
    return algebra_from_json(read_json_file(p));
  }
  return algebra_from_json(j);
}

}  // namespace

Json matrix_to_json(const RealMatrix& m) {
  Json j = Json::object();
  if (m.is_square()) {
    j["dim"] = m.rows();
  } else {
    j["rows"] = m.rows();
    j["cols"] = m.cols();
  }
  Json e = Json::array();
  for (double x : m.entries()) e.push_back(number_to_json(x));
  j["entries"] = std::move(e);
  return j;
}

RealMatrix matrix_from_json(const Json& j) {
  std::size_t rows = 0, cols = 0;
  if (j.is_object() && j.contains("dim")) {
    rows = cols = size_field(j, "dim", "matrix");
  } else {
    rows = size_field(j, "rows", "matrix");
    cols = size_field(j, "cols", "matrix");
  }
  const Json& e = field(j, "entries", "matrix");
  if (!e.is_array()) throw InputError("matrix: entries must be an array");
  if (e.size() != rows * cols)
    throw InputError("matrix: expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(e.size()));
  if (rows == 0 || cols == 0) throw InputError("matrix: dimensions must be positive");
  std::vector<double> v;
  v.reserve(e.size());
  for (const auto& x : e) v.push_back(number_from_json(x, "matrix entry"));
  return RealMatrix(rows, cols, std::move(v));
}

Json complex_to_json(const ComplexPair& p) {
  Json j = Json::object();
  j["re"] = matrix_to_json(p.re);
  j["im"] = matrix_to_json(p.im);
  return j;
}

ComplexPair complex_from_json(const Json& j) {
  RealMatrix re = matrix_from_json(field(j, "re", "complex pair"));
  RealMatrix im = matrix_from_json(field(j, "im", "complex pair"));
  try {
    return ComplexPair(std::move(re), std::move(im));
  } catch (const std::exception& e) {
    throw InputError(std::string("complex pair: ") + e.what());
  }
}

Json algebra_to_json(const AlgebraSpec& a) {
  Json j = Json::object();
  j["name"] = a.name;
  j["ambient_dim"] = a.ambient_dim;
  j["kind"] = to_string(a.kind);
  Json g = Json::array();
  for (const auto& m : a.generators) g.push_back(matrix_to_json(m));
  j["generators"] = std::move(g);
  j["close_under"] = to_string(a.close_under);
  return j;
}

AlgebraSpec algebra_from_json(const Json& j) {
  AlgebraSpec a;
  const Json& name = field(j, "name", "algebra");
  if (!name.is_string()) throw InputError("algebra: name must be a string");
  a.name = name.get<std::string>();
  a.ambient_dim = size_field(j, "ambient_dim", "algebra");
  if (a.ambient_dim == 0) throw InputError("algebra: ambient_dim must be positive");
  const Json& kind = field(j, "kind", "algebra");
  if (!kind.is_string()) throw InputError("algebra: kind must be a string");
  try {
    a.kind = algebra_kind_from_string(kind.get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(std::string("algebra: ") + e.what());
  }
  const Json& gens = field(j, "generators", "algebra");
  if (!gens.is_array() || gens.empty()) throw InputError("algebra: generators must be a nonempty array");
  for (const auto& g : gens) {
    RealMatrix m = matrix_from_json(g);
    if (!m.is_square() || m.rows() != a.ambient_dim)
      throw InputError("algebra: generator is not " + std::to_string(a.ambient_dim) + "x" +
                       std::to_string(a.ambient_dim));
    a.generators.push_back(std::move(m));
  }
  if (j.contains("close_under")) {
    const Json& c = j["close_under"];
    if (!c.is_string()) throw InputError("algebra: close_under must be a string");
    a.close_under = close_under_from_string(c.get<std::string>());
  }
  return a;
}

Subspace generated_subspace(const AlgebraSpec& a) {
  try {
    switch (a.close_under) {
      case CloseUnder::none: return orthonormal_basis(a.generators);
      case CloseUnder::jordan: return close_jordan(a.generators);
      case CloseUnder::assoc: return close_assoc(a.generators);
    }
  } catch (const ClosureBlowup&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("algebra '") + a.name + "': " + e.what());
  }
  return Subspace(a.ambient_dim);
}

AlgebraDescriptor materialize(const AlgebraSpec& a, const ToleranceConfig& tol) {
  return make_algebra(a.name, generated_subspace(a), a.kind, tol);
}

Json map_to_json(const MapSpec& m) {
  Json j = Json::object();
  j["domain"] = algebra_to_json(m.domain);
  j["codomain_dim"] = m.codomain_dim;
  Json im = Json::array();
  for (const auto& x : m.images) im.push_back(matrix_to_json(x));
  j["images"] = std::move(im);
  return j;
}

MapSpec map_from_json(const Json& j, const std::filesystem::path& base) {
  MapSpec m;
  m.domain = domain_from_json(field(j, "domain", "map"), base);
  m.codomain_dim = size_field(j, "codomain_dim", "map");
  if (m.codomain_dim == 0) throw InputError("map: codomain_dim must be positive");
  const Json& im = field(j, "images", "map");
  if (!im.is_array()) throw InputError("map: images must be an array");
  for (const auto& x : im) m.images.push_back(matrix_from_json(x));
  return m;
}

LinearMap materialize(const MapSpec& m, const AlgebraDescriptor& domain) {
  const auto& gens = m.domain.generators;
  if (m.images.size() != gens.size())
    throw DimensionMismatch("map: " + std::to_string(m.images.size()) + " images for " + std::to_string(gens.size()) +
                     " generators");
  for (const auto& x : m.images)
    if (!x.is_square() || x.rows() != m.codomain_dim)
      throw DimensionMismatch("map: image is not " + std::to_string(m.codomain_dim) + "x" + std::to_string(m.codomain_dim));
  const Subspace& s = domain.subspace;
  const std::size_t n = s.ambient_dim();
  const Subspace span = orthonormal_basis(gens);
  if (span.size() != s.size())
    throw InputError("map: the domain closure is larger than the span of the generators, so images are missing");
  RealMatrix a(n * n, gens.size());
  for (std::size_t r = 0; r < gens.size(); ++r)
    for (std::size_t e = 0; e < n * n; ++e) a(e, r) = gens[r].entries()[e];
  std::vector<RealMatrix> images;
  for (const auto& b : s.basis()) {
    const auto ls = least_squares(a, b.entries());
    RealMatrix img(m.codomain_dim);
    for (std::size_t r = 0; r < gens.size(); ++r) img += m.images[r] * ls.x[r];
    images.push_back(std::move(img));
  }
  LinearMap t(s, m.codomain_dim, std::move(images));
  // linear dependencies among the generators must be respected by the images
  double scale = 1.0;
  for (const auto& x : m.images) scale = std::max(scale, max_abs(x));
  for (std::size_t r = 0; r < gens.size(); ++r)
    if (max_abs_diff(t(gens[r]), m.images[r]) > 1e-9 * scale)
      throw InputError("map: generator images are inconsistent with a linear dependency among the generators");
  return t;
}

Json functional_to_json(const FunctionalSpec& f) {
  Json j = Json::object();
  j["domain"] = algebra_to_json(f.domain);
  j["riesz"] = matrix_to_json(f.riesz);
  return j;
}

FunctionalSpec functional_from_json(const Json& j, const std::filesystem::path& base) {
  FunctionalSpec f;
  f.domain = domain_from_json(field(j, "domain", "functional"), base);
  f.riesz = matrix_from_json(field(j, "riesz", "functional"));
  if (!f.riesz.is_square() || f.riesz.rows() != f.domain.ambient_dim)
    throw DimensionMismatch("functional: riesz matrix does not match the domain's ambient dimension");
  return f;
}

Json tolerance_to_json(const ToleranceConfig& t) {
  Json j = Json::object();
  j["psd_tol"] = t.psd_tol;
  j["norm_rel_tol"] = t.norm_rel_tol;
  j["eig_sweep_limit"] = t.eig_sweep_limit;
  return j;
}

ToleranceConfig tolerance_from_json(const Json& j) {
  ToleranceConfig t;
  t.psd_tol = number_from_json(field(j, "psd_tol", "tolerance"), "psd_tol");
  t.norm_rel_tol = number_from_json(field(j, "norm_rel_tol", "tolerance"), "norm_rel_tol");
  const Json& sweeps = field(j, "eig_sweep_limit", "tolerance");
  if (!sweeps.is_number_integer()) throw InputError("tolerance: eig_sweep_limit must be an integer");
  t.eig_sweep_limit = sweeps.get<int>();
  return t;
}

Json verdict_to_json(const Verdict& v) {
  Json j = Json::object();
  j["scenario"] = v.scenario;
  j["seed"] = v.seed;
  j["tol"] = tolerance_to_json(v.tol);
  j["overall"] = v.overall;
  j["note"] = v.note;
  Json checks = Json::array();
  for (const auto& c : v.checks) {
    Json cj = Json::object();
    cj["name"] = c.name;
    cj["anchor"] = c.anchor;
    cj["status"] = to_string(c.status);
    cj["value"] = number_to_json(c.value);
    if (c.expected_lo == c.expected_hi) cj["expected"] = number_to_json(c.expected_lo);
    else cj["expected"] = Json::array({number_to_json(c.expected_lo), number_to_json(c.expected_hi)});
    cj["tolerance"] = number_to_json(c.tolerance);
    cj["counterexample"] = c.counterexample;
    cj["witness"] = c.witness ? matrix_to_json(*c.witness) : Json(nullptr);
    cj["note"] = c.note;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

Verdict verdict_from_json(const Json& j) {
  Verdict v;
  const auto str = [](const Json& o, const char* key, const char* what) {
    const Json& x = field(o, key, what);
    if (!x.is_string()) throw InputError(std::string(what) + ": '" + key + "' must be a string");
    return x.get<std::string>();
  };
  v.scenario = str(j, "scenario", "verdict");
  const Json& seed = field(j, "seed", "verdict");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
    throw InputError("verdict: seed must be a nonnegative integer");
  v.seed = seed.get<std::uint64_t>();
  v.tol = tolerance_from_json(field(j, "tol", "verdict"));
  const Json& overall = field(j, "overall", "verdict");
  if (!overall.is_boolean()) throw InputError("verdict: overall must be a boolean");
  v.overall = overall.get<bool>();
  v.note = j.contains("note") ? str(j, "note", "verdict") : "";
  const Json& checks = field(j, "checks", "verdict");
  if (!checks.is_array()) throw InputError("verdict: checks must be an array");
  for (const auto& cj : checks) {
    Check c;
    c.name = str(cj, "name", "check");
    c.anchor = cj.contains("anchor") ? str(cj, "anchor", "check") : "";
    try {
      c.status = check_status_from_string(str(cj, "status", "check"));
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("check: ") + e.what());
    }
    c.value = number_from_json(field(cj, "value", "check"), "check value");
    const Json& ex = field(cj, "expected", "check");
    if (ex.is_array()) {
      if (ex.size() != 2) throw InputError("check: expected interval must have two ends");
      c.expected_lo = number_from_json(ex[0], "expected");
      c.expected_hi = number_from_json(ex[1], "expected");
    } else {
      c.expected_lo = c.expected_hi = number_from_json(ex, "expected");
    }
    c.tolerance = number_from_json(field(cj, "tolerance", "check"), "tolerance");
    c.counterexample = cj.contains("counterexample") && cj["counterexample"].is_boolean() &&
                       cj["counterexample"].get<bool>();
    if (cj.contains("witness") && !cj["witness"].is_null()) c.witness = matrix_from_json(cj["witness"]);
    c.note = cj.contains("note") ? str(cj, "note", "check") : "";
    v.checks.push_back(std::move(c));
  }
  return v;
}

Json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot open '" + p.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + p.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& p, const Json& j) {
  std::ofstream out(p);
  if (!out) throw InputError("cannot write '" + p.string() + "'");
  out << j.dump(2) << '\n';
}

}  // namespace roal
