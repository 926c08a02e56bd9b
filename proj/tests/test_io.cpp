#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "roal/io.hpp"
#include "roal/random.hpp"

using namespace roal;

namespace {

std::filesystem::path scratch_dir() {
  auto d = std::filesystem::temp_directory_path() / "roal_test_io";
  std::filesystem::create_directories(d);
  return d;
}

AlgebraSpec upper_triangular_spec() {
  AlgebraSpec a;
  a.name = "T2";
  a.ambient_dim = 2;
  a.kind = AlgebraKind::assoc_algebra;
  a.generators = {RealMatrix::identity(2), RealMatrix::unit(2, 0, 1), RealMatrix::unit(2, 1, 1)};
  return a;
}

}  // namespace

TEST_CASE("matrices round-trip exactly, including non-finite entries") {
  Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    const std::size_t r = 1 + rng.index(5);
    const std::size_t c = 1 + rng.index(5);
    const RealMatrix m = gaussian_matrix(r, c, rng) * 1e7;
    const RealMatrix back = matrix_from_json(Json::parse(matrix_to_json(m).dump()));
    CHECK(back == m);
  }
  RealMatrix odd(2);
  odd(0, 0) = std::numeric_limits<double>::infinity();
  odd(0, 1) = -std::numeric_limits<double>::infinity();
  odd(1, 0) = std::numeric_limits<double>::quiet_NaN();
  odd(1, 1) = 5e-324;
  const Json j = matrix_to_json(odd);
  CHECK(j["entries"][0] == "inf");
  CHECK(j["entries"][1] == "-inf");
  CHECK(j["entries"][2] == "nan");
  const RealMatrix back = matrix_from_json(Json::parse(j.dump()));
  CHECK(std::isinf(back(0, 0)));
  CHECK(back(0, 0) > 0);
  CHECK(back(0, 1) < 0);
  CHECK(std::isnan(back(1, 0)));
  CHECK(back(1, 1) == 5e-324);
}

TEST_CASE("square matrices use dim, rectangular ones rows and cols") {
  CHECK(matrix_to_json(RealMatrix(3)).contains("dim"));
  const Json r = matrix_to_json(RealMatrix(2, 3));
  CHECK(r["rows"] == 2);
  CHECK(r["cols"] == 3);
}

TEST_CASE("malformed matrices are input errors") {
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": 2, "entries": [1, 2, 3]})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"entries": [1]})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": 1, "entries": ["x"]})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": -1, "entries": []})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[1, 2]")), InputError);
}

TEST_CASE("complex pairs round-trip") {
  Rng rng(3);
  const ComplexPair p(gaussian_matrix(3, rng), gaussian_matrix(3, rng));
  const ComplexPair q = complex_from_json(Json::parse(complex_to_json(p).dump()));
  CHECK(q.re == p.re);
  CHECK(q.im == p.im);
  CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"re": {"dim": 1, "entries": [1]}})")), InputError);
}

TEST_CASE("algebra descriptors round-trip and materialize") {
  const AlgebraSpec a = upper_triangular_spec();
  const AlgebraSpec b = algebra_from_json(Json::parse(algebra_to_json(a).dump()));
  CHECK(b.name == a.name);
  CHECK(b.kind == a.kind);
  CHECK(b.generators == a.generators);
  const AlgebraDescriptor d = materialize(b);
  CHECK(d.subspace.size() == 3);

  AlgebraSpec closed;
  closed.name = "gen";
  closed.ambient_dim = 2;
  closed.kind = AlgebraKind::assoc_algebra;
  closed.close_under = CloseUnder::assoc;
  closed.generators = {RealMatrix::unit(2, 0, 1), RealMatrix::unit(2, 1, 0)};
  CHECK(materialize(closed).subspace.size() == 4);
  closed.close_under = CloseUnder::none;
  CHECK_THROWS_AS(materialize(closed), std::invalid_argument);

  Json bad = algebra_to_json(a);
  bad["kind"] = "group";
  CHECK_THROWS_AS(algebra_from_json(bad), InputError);
  bad = algebra_to_json(a);
  bad["close_under"] = "lie";
  CHECK_THROWS_AS(algebra_from_json(bad), InputError);
  bad = algebra_to_json(a);
  bad["ambient_dim"] = 3;
  CHECK_THROWS_AS(algebra_from_json(bad), InputError);
}

TEST_CASE("maps resolve generator images by least squares") {
  MapSpec m;
  m.domain = upper_triangular_spec();
  m.codomain_dim = 2;
  for (const auto& g : m.domain.generators) m.images.push_back(adjoint(g));
  const MapSpec back = map_from_json(Json::parse(map_to_json(m).dump()));
  CHECK(back.images == m.images);
  const AlgebraDescriptor d = materialize(back.domain);
  const LinearMap t = materialize(back, d);
  const RealMatrix x{{1.5, -2}, {0, 4}};
  CHECK(max_abs_diff(t(x), adjoint(x)) < 1e-12);

  MapSpec short_images = m;
  short_images.images.pop_back();
  CHECK_THROWS_AS(materialize(short_images, d), InputError);

  // a dependent generator whose image breaks linearity
  MapSpec dependent = m;
  dependent.domain.generators.push_back(RealMatrix::identity(2) * 2.0);
  dependent.images.push_back(RealMatrix::unit(2, 0, 1));
  CHECK_THROWS_AS(materialize(dependent, materialize(dependent.domain)), InputError);

  // closure enlarging the span leaves basis images undetermined
  MapSpec grows;
  grows.domain.name = "grows";
  grows.domain.ambient_dim = 2;
  grows.domain.kind = AlgebraKind::assoc_algebra;
  grows.domain.close_under = CloseUnder::assoc;
  grows.domain.generators = {RealMatrix::unit(2, 0, 1), RealMatrix::unit(2, 1, 0)};
  grows.codomain_dim = 1;
  grows.images = {RealMatrix(1), RealMatrix(1)};
  CHECK_THROWS_AS(materialize(grows, materialize(grows.domain)), InputError);
}

TEST_CASE("domain references are resolved relative to the referring file") {
  const auto dir = scratch_dir();
  write_json_file(dir / "t2.json", algebra_to_json(upper_triangular_spec()));
  Json f = Json::object();
  f["domain"] = "t2.json";
  f["riesz"] = matrix_to_json(RealMatrix::identity(2));
  const FunctionalSpec spec = functional_from_json(f, dir);
  CHECK(spec.domain.name == "T2");
  CHECK(spec.riesz == RealMatrix::identity(2));
  const FunctionalSpec back = functional_from_json(Json::parse(functional_to_json(spec).dump()));
  CHECK(back.riesz == spec.riesz);

  f["domain"] = "missing.json";
  CHECK_THROWS_AS(functional_from_json(f, dir), InputError);
  f["domain"] = "t2.json";
  f["riesz"] = matrix_to_json(RealMatrix::identity(3));
  CHECK_THROWS_AS(functional_from_json(f, dir), InputError);
}

TEST_CASE("unreadable files are input errors") {
  const auto dir = scratch_dir();
  std::ofstream(dir / "broken.json") << "{\"dim\": 2, ";
  CHECK_THROWS_AS(read_json_file(dir / "broken.json"), InputError);
  CHECK_THROWS_AS(read_json_file(dir / "absent.json"), InputError);
}

TEST_CASE("verdicts round-trip exactly") {
  for (const char* name : {"expoly", "theta_T", "meyer_invariance"}) {
    const Verdict v = run_scenario(name, 4);
    const Json j = verdict_to_json(v);
    const Verdict back = verdict_from_json(Json::parse(j.dump()));
    CHECK(verdict_to_json(back).dump() == j.dump());
    bool has_nan = false;
    for (const auto& c : v.checks) has_nan = has_nan || std::isnan(c.value);
    if (!has_nan) CHECK(back == v);
  }
  Verdict v;
  v.scenario = "synthetic";
  v.checks.push_back(range_check("unbounded", "upper end is infinite", 3.0, 1.0,
                                 std::numeric_limits<double>::infinity(), 0.0));
  v.checks.push_back(skipped_check("skip", "not applicable", "no witness"));
  v.checks.back().value = std::numeric_limits<double>::quiet_NaN();
  finalize(v);
  const Json j = verdict_to_json(v);
  CHECK(j["checks"][0]["expected"][1] == "inf");
  CHECK(j["checks"][0]["witness"].is_null());
  const Verdict back = verdict_from_json(Json::parse(j.dump()));
  CHECK(std::isnan(back.checks[1].value));
  CHECK(back.checks[0] == v.checks[0]);
  CHECK(back.overall);

  Json bad = j;
  bad["checks"][0]["status"] = "maybe";
  CHECK_THROWS_AS(verdict_from_json(bad), InputError);
  bad = j;
  bad.erase("overall");
  CHECK_THROWS_AS(verdict_from_json(bad), InputError);
}
