#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "roal/algebra.hpp"
#include "roal/random.hpp"

using namespace roal;

namespace {

const RealMatrix kI2 = RealMatrix::identity(2);
const RealMatrix kE11 = RealMatrix::unit(2, 0, 0);
const RealMatrix kE12 = RealMatrix::unit(2, 0, 1);
const RealMatrix kE21 = RealMatrix::unit(2, 1, 0);

std::vector<RealMatrix> all_units(std::size_t n) {
  std::vector<RealMatrix> u;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u.push_back(RealMatrix::unit(n, i, j));
  return u;
}

// Rank of vectorized matrices via Eigen's full-pivot LU: an independent span oracle.
long span_rank(const std::vector<RealMatrix>& ms) {
  const auto n2 = static_cast<Eigen::Index>(ms.front().rows() * ms.front().cols());
  Eigen::MatrixXd a(n2, static_cast<Eigen::Index>(ms.size()));
  for (std::size_t k = 0; k < ms.size(); ++k)
    for (Eigen::Index r = 0; r < n2; ++r) a(r, static_cast<Eigen::Index>(k)) = ms[k].entries()[static_cast<std::size_t>(r)];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(1e-10);
  return lu.rank();
}

// Brute-force closure: repeatedly add all products of all elements until rank stabilizes.
long brute_closure_dim(std::vector<RealMatrix> gens, bool assoc) {
  long rank = span_rank(gens);
  for (int round = 0; round < 6; ++round) {
    const std::size_t m = gens.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) gens.push_back(assoc ? gens[i] * gens[j] : jordan(gens[i], gens[j]));
    const long r = span_rank(gens);
    if (r == rank) break;
    rank = r;
    // keep the list small: rebuild from an orthonormal basis
    gens = orthonormal_basis(gens).basis();
  }
  return rank;
}

}  // namespace

TEST_CASE("orthonormal_basis") {
  CHECK(orthonormal_basis({kI2, kI2 * 2.0}).size() == 1);
  const auto s = orthonormal_basis({kE11, kE12});
  CHECK(s.size() == 2);
  CHECK(std::abs(inner(s[0], s[1])) <= 1e-15);
  Rng rng(21);
  std::vector<RealMatrix> gens;
  for (int k = 0; k < 5; ++k) gens.push_back(gaussian_matrix(3, rng));
  const auto r = orthonormal_basis(gens);
  CHECK(r.size() == 5);
  for (const auto& g : gens) CHECK(r.distance(g) <= 1e-10);
  CHECK_THROWS_AS(orthonormal_basis({RealMatrix(2), RealMatrix(2)}), std::invalid_argument);
  CHECK_THROWS_AS(orthonormal_basis({kI2, RealMatrix::identity(3)}), DimensionError);
}

TEST_CASE("Subspace rejects non-orthonormal bases") {
  CHECK_THROWS_AS(Subspace(2, {kI2}), std::invalid_argument);
  CHECK_NOTHROW(Subspace(2, {kE11, kE12}));
}

TEST_CASE("close_jordan examples") {
  const auto sx = RealMatrix{{0, 1}, {1, 0}};
  const auto c1 = close_jordan({sx});
  CHECK(c1.size() == 2);
  CHECK(member(c1, kI2).member);
  CHECK(close_jordan({kE12}).size() == 1);
  const auto c3 = close_jordan({kE11, kE12});
  CHECK(c3.size() == 2);
  CHECK(member(c3, jordan(kE11, kE12)).member);
  CHECK(is_jordan_closed(c3));
  CHECK_THROWS_AS(close_jordan({kE12, kE21}, 2), ClosureBlowup);
}

TEST_CASE("close_assoc examples") {
  CHECK(close_assoc({kE12}).size() == 1);
  const auto c = close_assoc({kE12, kE21});
  CHECK(c.size() == 4);
  CHECK(member(c, kE11).member);
  CHECK(member(c, RealMatrix::unit(2, 1, 1)).member);
  const auto d = close_assoc({RealMatrix{{0, 1}, {1, 0}}});
  CHECK(d.size() == 2);
  CHECK(member(d, kI2).member);
}

TEST_CASE("closures match brute force and are idempotent") {
  Rng rng(22);
  for (int s = 0; s < 12; ++s) {
    const std::size_t n = 3 + static_cast<std::size_t>(s % 2);
    std::vector<RealMatrix> gens;
    // sparse generators so closures are proper subalgebras often enough
    for (int k = 0; k < 2; ++k) {
      RealMatrix g(n);
      for (int t = 0; t < 2; ++t) g(rng.index(n), rng.index(n)) = rng.normal();
      if (max_abs(g) == 0.0) g(0, 0) = 1.0;
      gens.push_back(g);
    }
    const auto cj = close_jordan(gens);
    CHECK(static_cast<long>(cj.size()) == brute_closure_dim(gens, false));
    CHECK(close_jordan(cj.basis()).size() == cj.size());
    const auto ca = close_assoc(gens);
    CHECK(static_cast<long>(ca.size()) == brute_closure_dim(gens, true));
    CHECK(is_assoc_closed(ca));
  }
}

TEST_CASE("diagonal examples") {
  CHECK(diagonal(orthonormal_basis({kE12})).size() == 0);
  const auto d = diagonal(orthonormal_basis({kI2, kE12}));
  CHECK(d.size() == 1);
  CHECK(member(d, kI2).member);
  CHECK(diagonal(orthonormal_basis(all_units(2))).size() == 4);
}

TEST_CASE("selfadjoint and antisymmetric parts ignore roundoff") {
  Rng rng(24);
  for (int s = 0; s < 20; ++s) {
    const RealMatrix one = RealMatrix::identity(3);
    const Subspace x = orthonormal_basis({one, gaussian_matrix(3, rng), gaussian_matrix(3, rng)});
    const Subspace d = diagonal(x);
    CHECK(antisymmetric_part(d).size() == 0);
    const Subspace dsa = selfadjoint_part(d);
    CHECK(dsa.size() == d.size());
    for (const auto& b : dsa.basis()) CHECK(member(x, b).member);
  }
}

TEST_CASE("diagonal of Jordan-closed algebras is a selfadjoint Jordan algebra") {
  Rng rng(23);
  for (int s = 0; s < 10; ++s) {
    const std::size_t n = 3;
    std::vector<RealMatrix> gens;
    for (int k = 0; k < 2; ++k) {
      RealMatrix g(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
          if (rng.uniform() < 0.5) g(i, j) = rng.normal();
      g(rng.index(n), rng.index(n)) += 1.0;
      gens.push_back(g);
    }
    const auto a = close_jordan(gens);
    const auto d = diagonal(a);
    CHECK(is_selfadjoint_space(d));
    CHECK(is_jordan_closed(d));
    for (const auto& b : d.basis()) CHECK(member(a, b).member);
    // dimension oracle: dim(A ∩ Aᵀ) = dim A + dim Aᵀ − dim(A + Aᵀ)
    std::vector<RealMatrix> both = a.basis();
    for (const auto& b : a.basis()) both.push_back(adjoint(b));
    CHECK(static_cast<long>(d.size()) == 2 * static_cast<long>(a.size()) - span_rank(both));
  }
}

TEST_CASE("find_identity examples") {
  const auto full = find_identity(orthonormal_basis(all_units(2)));
  REQUIRE(full.has_value());
  CHECK(max_abs_diff(*full, kI2) <= 1e-12);
  CHECK_FALSE(find_identity(orthonormal_basis({kE12})).has_value());
  const auto e = find_identity(orthonormal_basis({kE11}));
  REQUIRE(e.has_value());
  CHECK(max_abs_diff(*e, kE11) <= 1e-12);
}

TEST_CASE("identities found have norm one") {
  Rng rng(24);
  for (int s = 0; s < 10; ++s) {
    const std::size_t n = 4;
    const RealMatrix u = random_orthogonal(n, rng);
    // block algebra M_2 ⊕ M_1 ⊕ 0, conjugated by a random orthogonal matrix
    std::vector<RealMatrix> gens;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) gens.push_back(u * RealMatrix::unit(n, i, j) * adjoint(u));
    gens.push_back(u * RealMatrix::unit(n, 2, 2) * adjoint(u));
    const auto e = find_identity(close_assoc(gens));
    REQUIRE(e.has_value());
    CHECK(operator_norm(*e) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(trace(*e) == doctest::Approx(3.0));
  }
}

TEST_CASE("member") {
  const auto s = orthonormal_basis({kE12});
  auto m = member(s, kE12);
  CHECK(m.member);
  CHECK(m.residual <= 1e-15);
  m = member(s, kI2);
  CHECK_FALSE(m.member);
  CHECK(m.residual == doctest::Approx(std::sqrt(2.0)));
  CHECK(member(s, kE12 + kE11 * 1e-12).member);
  CHECK_THROWS_AS(member(s, RealMatrix::identity(3)), DimensionError);
}

TEST_CASE("make_algebra validates kinds") {
  const auto s = orthonormal_basis({kE12});
  CHECK_NOTHROW(make_algebra("nil", s, AlgebraKind::assoc_algebra));
  CHECK_THROWS_AS(make_algebra("nil", s, AlgebraKind::jc_star), std::invalid_argument);
  CHECK_THROWS_AS(make_algebra("nil", s, AlgebraKind::operator_system), std::invalid_argument);
  const auto full = make_algebra("m2", orthonormal_basis(all_units(2)), AlgebraKind::jc_star);
  CHECK(full.subspace.is_unital());
  CHECK(algebra_kind_from_string("jc_star") == AlgebraKind::jc_star);
  CHECK_THROWS(algebra_kind_from_string("ring"));
}

TEST_CASE("unitize examples") {
  const auto u = unitize(orthonormal_basis({kE12}), kI2);
  CHECK(u.algebra.subspace.size() == 2);
  CHECK_FALSE(u.internal_identity.has_value());
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(u.norm(kE12, 1.0) == doctest::Approx(golden).epsilon(1e-12));
  // singular-value oracle
  const auto ev = sym_eig(adjoint(kE12 + kI2) * (kE12 + kI2));
  CHECK(u.norm(kE12, 1.0) == doctest::Approx(std::sqrt(ev.values[0])).epsilon(1e-12));
  CHECK(u.norm(kE12 * 3.0, 0.0) == doctest::Approx(3.0));

  const auto v = unitize(orthonormal_basis({kE11}), kI2);
  REQUIRE(v.internal_identity.has_value());
  CHECK(v.norm(kE11 * 2.0, -1.0) == doctest::Approx(1.0));
  CHECK(v.direct_norm(kE11 * 2.0, -1.0) == doctest::Approx(1.0));
  CHECK(v.norm(kE11 * 5.0, 0.0) == doctest::Approx(5.0));

  CHECK_THROWS_AS(unitize(orthonormal_basis(all_units(2)), kI2), AlreadyUnital);
}

TEST_CASE("unitization norm does not depend on the representation") {
  const auto a = orthonormal_basis({kE12});
  const auto u1 = unitize(a, kI2);
  const RealMatrix e12x2 = direct_sum(kE12, kE12);
  const auto u2 = unitize(orthonormal_basis({e12x2}), RealMatrix::identity(4));
  Rng rng(25);
  for (int s = 0; s < 100; ++s) {
    const double c = rng.normal(), lam = rng.normal();
    CHECK(std::abs(u1.norm(kE12 * c, lam) - u2.norm(e12x2 * c, lam)) <= 1e-10);
  }
}

TEST_CASE("internal unit formula agrees with the ambient norm") {
  Rng rng(26);
  const auto a = close_assoc({kE11});
  const auto u = unitize(a, kI2);
  for (int s = 0; s < 100; ++s) {
    const double c = rng.normal(), lam = rng.normal();
    CHECK(u.norm(kE11 * c, lam) == doctest::Approx(u.direct_norm(kE11 * c, lam)).epsilon(1e-12));
  }
}

TEST_CASE("unitization sup formula") {
  const auto m2 = orthonormal_basis(all_units(2)).with_identity(kI2);
  auto r = unitization_sup_norm(m2, RealMatrix(2), 1.0, 500, 1);
  CHECK(r.sampled_sup == doctest::Approx(1.0));
  r = unitization_sup_norm(m2, kE12, 1.0, 10000, 2);
  CHECK(r.at_identity == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0));
  CHECK(r.sampled_sup <= r.direct + 1e-9);
  r = unitization_sup_norm(m2, -kI2, 1.0, 500, 3);
  CHECK(r.sampled_sup <= 1e-12);
  const auto rep = unitization_norm_check(m2, 20, 300, 4);
  CHECK(rep.passed);
  CHECK(rep.elements == 22);
  CHECK_THROWS_AS(unitization_norm_check(orthonormal_basis({kE12}), 2, 10, 5), std::invalid_argument);
}

TEST_CASE("triangle algebra norm formula") {
  const auto x = orthonormal_basis(all_units(2));
  const auto t = build_triangle(x);
  CHECK(t.algebra.subspace.size() == 6);
  CHECK(is_assoc_closed(t.algebra.subspace));
  CHECK(TriangleAlgebra::formula_norm(0, 1, 0) == doctest::Approx(1.0));
  CHECK(TriangleAlgebra::formula_norm(1, 0, 0) == doctest::Approx(1.0));
  const RealMatrix xn = kE12;
  CHECK(std::abs(TriangleAlgebra::formula_norm(1, 1, 1) - t.direct_norm(1, xn, 1)) <= 1e-7 * t.direct_norm(1, xn, 1));
  Rng rng(27);
  for (int s = 0; s < 500; ++s) {
    const double a = rng.normal(), b = rng.normal();
    std::vector<double> c(x.size());
    for (double& v : c) v = rng.normal();
    const RealMatrix xm = x.combine(c);
    const double direct = t.direct_norm(a, xm, b);
    const double xnorm = operator_norm(xm);
    CHECK(std::abs(TriangleAlgebra::formula_norm(a, xnorm, b) - direct) <= 1e-7 * direct);
    CHECK(std::abs(TriangleAlgebra::scalar_triangle_norm(a, xnorm, b) - direct) <= 1e-7 * direct);
  }
}

TEST_CASE("spin systems") {
  const auto s2 = spin_system(2);
  REQUIRE(s2.size() == 2);
  CHECK(s2[0] == sigma_x());
  CHECK(s2[1] == sigma_z());
  CHECK(max_abs(jordan(s2[0], s2[1])) == 0.0);
  const auto s1 = spin_system(1);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0] == sigma_x());
  CHECK(s1[0] * s1[0] == kI2);
  for (int k = 1; k <= 10; ++k) {
    const auto u = spin_system(k);
    REQUIRE(u.size() == static_cast<std::size_t>(k));
    const std::size_t n = spin_dimension(k);
    for (std::size_t i = 0; i < u.size(); ++i) {
      CHECK(u[i].dim() == n);
      CHECK(is_symmetric(u[i], 0.0));
      CHECK(u[i] * u[i] == RealMatrix::identity(n));
      for (std::size_t j = i + 1; j < u.size(); ++j) CHECK(max_abs(jordan(u[i], u[j])) == 0.0);
    }
  }
  CHECK(spin_system(7) == spin_system(7));
  CHECK_THROWS_AS(spin_system(0), std::invalid_argument);
  CHECK_THROWS_AS(spin_system(11), std::invalid_argument);
}

TEST_CASE("spin span is a Hilbert space") {
  const auto u = spin_system(4);
  Rng rng(28);
  for (int s = 0; s < 100; ++s) {
    RealMatrix m(u[0].dim());
    double l2 = 0.0;
    for (const auto& ui : u) {
      const double l = rng.normal();
      m += ui * l;
      l2 += l * l;
    }
    CHECK(std::abs(operator_norm(m) - std::sqrt(l2)) <= 1e-9);
  }
}
