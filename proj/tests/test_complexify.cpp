#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "roal/algebra.hpp"
#include "roal/complexify.hpp"
#include "roal/random.hpp"

using namespace roal;

namespace {

const RealMatrix kJ{{0, -1}, {1, 0}};

ComplexPair random_pair(std::size_t n, Rng& rng) { return {gaussian_matrix(n, rng), gaussian_matrix(n, rng)}; }

// Hermitian check with a native complex eigensolver, independent of the block form.
bool hermitian_psd_oracle(const ComplexPair& p, double tol) {
  const auto n = static_cast<Eigen::Index>(p.dim());
  Eigen::MatrixXcd z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      z(i, j) = {p.re(static_cast<std::size_t>(i), static_cast<std::size_t>(j)),
                 p.im(static_cast<std::size_t>(i), static_cast<std::size_t>(j))};
  if ((z - z.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(z);
  return es.eigenvalues().minCoeff() >= -tol;
}

}  // namespace

TEST_CASE("embed examples") {
  const RealMatrix i2 = RealMatrix::identity(2), z2(2);
  CHECK(embed({i2, z2}) == RealMatrix::identity(4));
  const RealMatrix iu = embed({z2, i2});
  CHECK(iu * iu == -RealMatrix::identity(4));
  Rng rng(11);
  for (int s = 0; s < 50; ++s) {
    const auto p = random_pair(3, rng), q = random_pair(3, rng);
    CHECK(max_abs_diff(embed(p * q), embed(p) * embed(q)) <= 1e-12);
  }
  CHECK_THROWS_AS(ComplexPair(i2, RealMatrix(3)), DimensionError);
}

TEST_CASE("unembed") {
  const auto p = unembed(RealMatrix::identity(4));
  CHECK(p.re == RealMatrix::identity(2));
  CHECK(max_abs(p.im) == 0.0);
  Rng rng(12);
  const auto q = random_pair(3, rng);
  const auto back = unembed(embed(q));
  CHECK(max_abs_diff(back.re, q.re) <= 1e-15);
  CHECK(max_abs_diff(back.im, q.im) <= 1e-15);
  try {
    unembed(RealMatrix{{1, 0}, {0, 2}});
    FAIL("expected a block pattern error");
  } catch (const BlockPatternError& e) {
    CHECK(e.deviation() == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(unembed(RealMatrix::identity(3)), BlockPatternError);
}

TEST_CASE("complex selfadjointness") {
  CHECK(complex_is_selfadjoint({RealMatrix{{1, 0}, {0, -1}}, RealMatrix(2)}));
  CHECK(complex_is_selfadjoint({RealMatrix::identity(2), kJ}));
  CHECK_FALSE(complex_is_selfadjoint({RealMatrix::identity(2), RealMatrix{{0, 1}, {1, 0}}}));
}

TEST_CASE("complex positivity examples") {
  CHECK(complex_is_psd({RealMatrix::identity(2), RealMatrix(2)}));
  CHECK(complex_is_psd({RealMatrix::identity(2), kJ}));
  const auto e = sym_eig(embed({RealMatrix::identity(2), kJ}));
  CHECK(e.values[0] == doctest::Approx(2.0));
  CHECK(e.values[1] == doctest::Approx(2.0));
  CHECK(std::abs(e.values[2]) <= 1e-12);
  CHECK(std::abs(e.values[3]) <= 1e-12);
  CHECK_FALSE(complex_is_psd({RealMatrix{{1, 0}, {0, -1}}, RealMatrix(2)}));
}

TEST_CASE("block positivity agrees with the Hermitian oracle") {
  Rng rng(13);
  int agree = 0, positives = 0;
  for (int s = 0; s < 500; ++s) {
    const std::size_t n = 2 + static_cast<std::size_t>(s % 3);
    ComplexPair p{random_symmetric(n, rng), random_antisymmetric(n, rng)};
    // shift so about half the samples are PSD
    const double lmin = lambda_min(embed(p));
    p.re += RealMatrix::identity(n) * (-lmin + rng.uniform(-0.5, 0.5));
    if (s % 10 == 0) p.im += random_symmetric(n, rng) * 0.3;  // breaks selfadjointness
    const bool block = complex_is_psd(p);
    const bool oracle = hermitian_psd_oracle(p, 1e-9 * (1.0 + operator_norm(embed(p))));
    agree += block == oracle;
    positives += block;
  }
  CHECK(agree == 500);
  CHECK(positives > 100);
  CHECK(positives < 400);
}

TEST_CASE("norm properties of the embedding") {
  Rng rng(14);
  for (int s = 0; s < 50; ++s) {
    const auto p = random_pair(3, rng);
    CHECK(std::abs(operator_norm(embed({p.re, RealMatrix(3)})) - operator_norm(p.re)) <= 1e-7 * operator_norm(p.re));
    const double base = operator_norm(embed(p));
    const double th = rng.uniform(0.0, 6.283185307179586);
    CHECK(std::abs(operator_norm(embed(rotate_phase(p, th))) - base) <= 1e-7 * base);
    CHECK(std::abs(operator_norm(embed(conjugate(p))) - base) <= 1e-7 * base);
  }
}

TEST_CASE("complexify_subspace") {
  const auto s1 = complexify_subspace(orthonormal_basis({RealMatrix::identity(2)}));
  CHECK(s1.size() == 2);
  CHECK(s1.ambient_dim() == 4);
  CHECK(member(s1, RealMatrix::identity(4)).member);
  CHECK(member(s1, embed({RealMatrix(2), RealMatrix::identity(2)})).member);
  std::vector<RealMatrix> units;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) units.push_back(RealMatrix::unit(2, i, j));
  CHECK(complexify_subspace(orthonormal_basis(units)).size() == 8);
  Rng rng(15);
  const auto s = orthonormal_basis({gaussian_matrix(3, rng), gaussian_matrix(3, rng)});
  const auto sc = complexify_subspace(s);
  CHECK(sc.size() == 4);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> c(sc.size());
    for (double& v : c) v = rng.normal();
    CHECK_NOTHROW(unembed(sc.combine(c)));
  }
}
