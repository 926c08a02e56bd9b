#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "roal/cones.hpp"
#include "roal/random.hpp"

using namespace roal;

namespace {

const RealMatrix kI2 = RealMatrix::identity(2);
const RealMatrix kJ{{0, 1}, {-1, 0}};
const RealMatrix kSz{{1, 0}, {0, -1}};

// Random element with x + xᵀ ≥ 0: shift the symmetric part to be PSD.
RealMatrix random_real_positive(std::size_t n, Rng& rng) {
  const RealMatrix g = gaussian_matrix(n, rng);
  const double shift = std::max(0.0, -lambda_min(sym_part(g))) + 0.1 * rng.uniform();
  return g + RealMatrix::identity(n) * shift;
}

}  // namespace

TEST_CASE("real positivity examples") {
  const auto ctx = ConeContext::full(2);
  auto r = is_real_positive(ctx, kI2);
  CHECK(r.real_positive);
  CHECK(r.grid_holds);
  r = is_real_positive(ctx, kJ);
  CHECK(r.real_positive);
  CHECK(r.grid_holds);
  r = is_real_positive(ctx, -kI2);
  CHECK_FALSE(r.real_positive);
  CHECK_FALSE(r.grid_holds);
  CHECK(r.lambda_min == doctest::Approx(-2.0));
  CHECK(r.worst_t < 1.0);
  CHECK(r.consistent);
}

TEST_CASE("grid criterion agrees with the PSD test") {
  const auto ctx = ConeContext::full(3);
  Rng rng(31);
  int positives = 0;
  for (int s = 0; s < 300; ++s) {
    RealMatrix x = gaussian_matrix(3, rng);
    x += RealMatrix::identity(3) * (-lambda_min(sym_part(x)) + rng.uniform(-0.5, 0.5));
    const auto r = is_real_positive(ctx, x);
    CHECK(r.consistent);
    positives += r.real_positive;
  }
  CHECK(positives > 50);
  CHECK(positives < 250);
}

TEST_CASE("in_F examples") {
  const auto ctx = ConeContext::full(2);
  CHECK(in_F(ctx, kI2).in_f);
  CHECK(in_F(ctx, kI2 * 2.0).in_f);
  CHECK_FALSE(in_F(ctx, kI2 * 3.0).in_f);
  const auto r = in_F(ctx, (kI2 + kJ) * 0.5);
  CHECK(r.in_f);
  CHECK(r.distance == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(r.consistent);
}

TEST_CASE("F is inside the real-positive cone") {
  const auto ctx = ConeContext::full(3);
  Rng rng(32);
  for (int s = 0; s < 200; ++s) {
    // x = 1 − c with ‖c‖ ≤ 1
    const RealMatrix c = random_with_norm(3, rng.uniform(), rng);
    const auto r = in_F(ctx, RealMatrix::identity(3) - c);
    CHECK(r.in_f);
    CHECK(r.algebraic);
    CHECK(r.real_positive);
    CHECK(r.consistent);
  }
}

TEST_CASE("f_transform examples") {
  const auto ctx = ConeContext::full(2);
  auto r = f_transform(ctx, kI2);
  CHECK(max_abs_diff(r.value, kI2 * 0.5) <= 1e-15);
  r = f_transform(ctx, RealMatrix(2));
  CHECK(max_abs(r.value) == 0.0);
  r = f_transform(ctx, kJ);
  // (1 + J)⁻¹ = ½(1 − J) since J² = −1, so J(1+J)⁻¹ = ½(J + 1)
  CHECK(max_abs_diff(r.value, RealMatrix{{0.5, 0.5}, {-0.5, 0.5}}) <= 1e-15);
  CHECK(r.half_f_distance == doctest::Approx(1.0));
  CHECK(r.ok);
  CHECK_THROWS_AS(f_transform(ctx, -kI2), SingularResolvent);
}

TEST_CASE("f_transform on a corner algebra") {
  // span{E11} with identity E11 inside M_2
  Subspace s = orthonormal_basis({RealMatrix::unit(2, 0, 0)});
  ConeContext ctx({"corner", s, AlgebraKind::jc_star});
  const auto r = f_transform(ctx, RealMatrix::unit(2, 0, 0) * 3.0);
  CHECK(max_abs_diff(r.value, RealMatrix::unit(2, 0, 0) * 0.75) <= 1e-15);
  CHECK(r.ok);
}

TEST_CASE("F-transform range and inverse") {
  const auto ctx = ConeContext::full(3);
  Rng rng(33);
  for (int s = 0; s < 200; ++s) {
    // w = ½(1 − c) with ‖c‖ < 1 lies in ½F and in the open unit ball
    const RealMatrix c = random_with_norm(3, 0.95 * rng.uniform(), rng);
    const RealMatrix w = (RealMatrix::identity(3) - c) * 0.5;
    REQUIRE(in_F(ctx, w * 2.0).in_f);
    const RealMatrix x = f_transform_inverse(ctx, w);
    CHECK(is_real_positive(ctx, x).real_positive);
    CHECK(max_abs_diff(f_transform(ctx, x).value, w) <= 1e-9);
  }
}

TEST_CASE("scaled F-transforms converge back at rate ‖x‖²/n") {
  const auto ctx = ConeContext::full(3);
  Rng rng(34);
  for (int s = 0; s < 200; ++s) {
    const RealMatrix x = random_real_positive(3, rng);
    const auto f = f_transform(ctx, x);
    CHECK(f.ok);
    const auto res = f_limit_residuals(ctx, x, 10);
    const double xn = operator_norm(x);
    for (std::size_t k = 0; k < res.size(); ++k) {
      CHECK(res[k] <= xn * xn / std::ldexp(1.0, static_cast<int>(k)) * (1.0 + 1e-12) + 1e-14);
      if (k > 0) CHECK(res[k] <= res[k - 1] * (1.0 + 1e-12) + 1e-15);
    }
  }
}

TEST_CASE("cayley transforms") {
  const auto ctx = ConeContext::full(2);
  auto r = cayley_check(ctx, RealMatrix(2), CayleyDirection::contraction_to_accretive);
  CHECK(max_abs_diff(r.image, kI2) <= 1e-15);
  CHECK(r.output_margin == doctest::Approx(2.0));
  r = cayley_check(ctx, RealMatrix::unit(2, 0, 1) * 0.5, CayleyDirection::contraction_to_accretive);
  CHECK(r.holds);
  CHECK(r.output_margin > 0.0);
  r = cayley_check(ctx, kI2, CayleyDirection::accretive_to_contraction);
  CHECK(max_abs(r.image) <= 1e-15);
  CHECK(r.holds);
  CHECK_THROWS_AS(cayley_check(ctx, kI2, CayleyDirection::contraction_to_accretive), std::invalid_argument);
  CHECK_THROWS_AS(cayley_check(ctx, kJ, CayleyDirection::accretive_to_contraction), std::invalid_argument);
  Rng rng(35);
  for (int s = 0; s < 100; ++s) {
    const RealMatrix t = random_with_norm(2, 0.999 * rng.uniform(), rng);
    const auto a = cayley_check(ctx, t, CayleyDirection::contraction_to_accretive);
    CHECK(a.holds);
    const auto b = cayley_check(ctx, a.image, CayleyDirection::accretive_to_contraction);
    CHECK(b.holds);
    CHECK(max_abs_diff(b.image, t) <= 1e-8);
  }
}

TEST_CASE("real-positive decomposition") {
  const auto ctx = ConeContext::full(2);
  auto r = decompose_real_positive(ctx, RealMatrix(2));
  CHECK(r.x == kI2 * 0.5);
  CHECK(r.y == kI2 * 0.5);
  r = decompose_real_positive(ctx, kSz * 0.5);
  CHECK(max_abs_diff(r.x, RealMatrix{{0.75, 0}, {0, 0.25}}) <= 1e-15);
  CHECK(max_abs_diff(r.y, RealMatrix{{0.25, 0}, {0, 0.75}}) <= 1e-15);
  CHECK(in_F(ctx, r.x * 2.0).distance == doctest::Approx(0.5));
  Rng rng(36);
  for (int s = 0; s < 50; ++s) {
    const RealMatrix b = random_with_norm(2, 0.99, rng);
    r = decompose_real_positive(ctx, b);
    CHECK(r.reconstruction_residual <= 1e-12);
    CHECK(r.x_in_half_f);
    CHECK(r.y_in_half_f);
  }
  CHECK_THROWS_AS(decompose_real_positive(ctx, kI2), std::invalid_argument);
}

TEST_CASE("selfadjoint cone decomposition") {
  const auto full = ConeContext::full(3);
  auto r = sa_cone_decompose(full.space(), RealMatrix(3));
  CHECK(max_abs(r.p) == 0.0);
  CHECK(max_abs(r.q) == 0.0);
  const auto m2 = ConeContext::full(2);
  r = sa_cone_decompose(m2.space(), kSz);
  CHECK(max_abs_diff(r.p, RealMatrix::unit(2, 0, 0)) <= 1e-15);
  CHECK(max_abs_diff(r.q, RealMatrix::unit(2, 1, 1)) <= 1e-15);
  Rng rng(37);
  for (int s = 0; s < 100; ++s) {
    const RealMatrix x = random_symmetric(3, rng);
    r = sa_cone_decompose(full.space(), x);
    CHECK(r.p_psd);
    CHECK(r.q_psd);
    CHECK(r.reconstruction_residual <= 1e-12);
  }
  CHECK_THROWS_AS(sa_cone_decompose(m2.space(), kJ), std::invalid_argument);
}

TEST_CASE("antisymmetry via the cone") {
  const auto ctx = ConeContext::full(3);
  const auto m2 = ConeContext::full(2);
  CHECK(antisym_via_cone(m2, kJ).via_cone);
  CHECK_FALSE(antisym_via_cone(m2, kSz).via_cone);
  Rng rng(38);
  for (int s = 0; s < 100; ++s) {
    const RealMatrix m = gaussian_matrix(3, rng);
    const auto a = antisym_via_cone(ctx, classify_symmetry(m).as_part);
    CHECK(a.via_cone);
    CHECK(a.agree);
    CHECK(antisym_via_cone(ctx, m).agree);
  }
}

TEST_CASE("order relations with the identity as dominator") {
  const auto ctx = ConeContext::full(3);
  const RealMatrix one = RealMatrix::identity(3);
  Rng rng(39);
  CHECK(in_F(ctx, one * 2.0).in_f);  // 1 ∈ ½F, on the boundary
  for (int s = 0; s < 100; ++s) {
    RealMatrix b = random_psd(3, rng);
    b *= 0.99 * rng.uniform() / operator_norm(b);
    CHECK(real_precedes(ctx, b, one));
    const RealMatrix x = random_with_norm(3, rng.uniform(), rng);
    const RealMatrix y = random_with_norm(3, rng.uniform(), rng);
    CHECK(real_precedes(ctx, x, one));
    CHECK(real_precedes(ctx, y, one));
    CHECK(real_precedes(ctx, -one, x));
  }
}

TEST_CASE("non-members are rejected") {
  Subspace s = orthonormal_basis({RealMatrix::identity(2), kSz});
  ConeContext ctx({"diag", s, AlgebraKind::jc_star});
  CHECK_THROWS_AS(is_real_positive(ctx, kJ), std::invalid_argument);
  CHECK_THROWS_AS(ConeContext({"nil", orthonormal_basis({RealMatrix::unit(2, 0, 1)}), AlgebraKind::assoc_algebra}),
                  std::invalid_argument);
}
