// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are the
// pinned ones; nothing is loosened to make a line pass.
//
//   acceptance [--criterion N] [--roal PATH]

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "roal/catalog.hpp"
#include "roal/cones.hpp"
#include "roal/maps.hpp"
#include "roal/random.hpp"

using namespace roal;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[violated] ";
    }
    detail << what << "; ";
  }
};

std::string g(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const Check* find_check(const Verdict& v, const std::string& name) {
  for (const auto& c : v.checks)
    if (c.name == name) return &c;
  return nullptr;
}

// 1. block criterion vs the spectrum of the Hermitian matrix (Eigen oracle)
void complexified_positivity(Outcome& o) {
  const auto t0 = Clock::now();
  Rng rng(derive_seed(1, "acceptance-block"));
  int disagreements = 0, psd = 0, not_psd = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng.index(5);
    RealMatrix re = gaussian_matrix(n, rng);
    RealMatrix im = gaussian_matrix(n, rng);
    const int kind = static_cast<int>(rng.index(5));
    if (kind > 0) {
      // Hermitian: A A* shifted so that both signs of λmin occur
      const ComplexPair a(re, im);
      const ComplexPair h = a * conjugate(a);
      re = h.re;
      im = h.im;
      const double shift = rng.uniform(-1.0, 1.0) * trace(re) / static_cast<double>(n);
      for (std::size_t d = 0; d < n; ++d) re(d, d) -= shift;
    }
    Eigen::MatrixXcd h(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) h(r, c) = {re(r, c), im(r, c)};
    const double scale = 1.0 + h.norm();
    const bool hermitian = (h - h.adjoint()).norm() <= 1e-12 * scale;
    bool direct = false;
    if (hermitian) {
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
      const double lmin = es.eigenvalues().minCoeff();
      if (std::abs(lmin) <= 1e-7 * scale) continue;  // too close to the boundary to call
      direct = lmin > 0.0;
    }
    const bool block = complex_is_psd(ComplexPair(re, im));
    disagreements += block != direct;
    (direct ? psd : not_psd) += 1;
  }
  const double secs = seconds_since(t0);
  o.require(disagreements == 0, "disagreements " + std::to_string(disagreements) + " (PSD " + std::to_string(psd) +
                                    ", not PSD " + std::to_string(not_psd) + ")");
  o.require(psd + not_psd >= 490, std::to_string(psd + not_psd) + " decided cases");
  o.require(secs < 5.0, "runtime " + g(secs) + " s < 5 s");
}

// 2. Stinespring reconstruction
void stinespring_roundtrip(Outcome& o) {
  const auto t0 = Clock::now();
  double residual = 0.0, gap = 0.0;
  for (int i = 0; i < 50; ++i) {
    Rng rng(derive_seed(2, "acceptance-stinespring", i));
    const std::size_t n = 1 + rng.index(4), k = 1 + rng.index(4);
    const int terms = 1 + static_cast<int>(rng.index(4));
    std::vector<RealMatrix> v;
    for (int t = 0; t < terms; ++t) v.push_back(gaussian_matrix(k, n, rng));
    const Stinespring s = stinespring(conjugation_map(v));
    residual = std::max(residual, s.reconstruction_residual);
    gap = std::max(gap, s.norm_gap);
  }
  const double secs = seconds_since(t0);
  o.require(residual <= 1e-8, "max residual " + g(residual) + " <= 1e-8");
  o.require(gap <= 1e-6, "max |‖V‖² − ‖T(1)‖| " + g(gap) + " <= 1e-6");
  o.require(secs < 10.0, "runtime " + g(secs) + " s < 10 s");
}

// 3. transpose on M2
void transpose_gap(Outcome& o) {
  const LinearMap t = transpose_map(2);
  const auto norms = map_norms(t, {1, 2}, MapNormOptions{6, 200, derive_seed(3, "acceptance-transpose")});
  const double lmin = lambda_min(choi(t).matrix);
  o.require(std::abs(norms[0].value - 1.0) <= 1e-4, "level 1 " + g(norms[0].value) + " in [1 − 1e-4, 1 + 1e-4]");
  o.require(norms[1].value >= 2.0 - 1e-4, "level 2 " + g(norms[1].value) + " >= 2 − 1e-4");
  o.require(std::abs(lmin + 1.0) <= 1e-9, "Choi λmin " + g(lmin) + " = −1 ± 1e-9");
}

// 4. triangle algebra norm formula
void triangle_formula(Outcome& o) {
  Rng rng(derive_seed(4, "acceptance-triangle"));
  double worst = 0.0;
  int count = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + rng.index(3);
    std::vector<RealMatrix> gens;
    for (std::size_t j = 0; j <= rng.index(3); ++j) gens.push_back(gaussian_matrix(n, rng));
    const Subspace x = orthonormal_basis(gens);
    const TriangleAlgebra tri = build_triangle(x);
    for (int i = 0; i < 50; ++i, ++count) {
      const double alpha = rng.normal();
      const double beta = rng.normal();
      std::vector<double> c(x.size());
      for (double& ci : c) ci = rng.normal();
      const RealMatrix m = x.combine(c) * rng.uniform(0.0, 3.0);
      const double direct = tri.direct_norm(alpha, m, beta);
      const double formula = TriangleAlgebra::formula_norm(alpha, operator_norm(m), beta);
      worst = std::max(worst, std::abs(formula - direct) / (1.0 + direct));
    }
  }
  o.require(count == 500, std::to_string(count) + " elements");
  o.require(worst <= 1e-7, "max |formula − direct|/(1 + norm) " + g(worst) + " <= 1e-7");
}

// 5. unitization norm: representation independence and the internal-unit formula
void unitization(Outcome& o) {
  Rng rng(derive_seed(5, "acceptance-unitization"));
  const RealMatrix e12 = RealMatrix::unit(2, 0, 1);
  const RealMatrix e12x2 = direct_sum(e12, e12);
  const Unitization u1 = unitize(orthonormal_basis({e12}), RealMatrix::identity(2));
  const Unitization u2 = unitize(orthonormal_basis({e12x2}), RealMatrix::identity(4));
  double gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double c = rng.normal() * 3.0;
    const double lambda = rng.normal() * 3.0;
    gap = std::max(gap, std::abs(u1.norm(e12 * c, lambda) - u2.norm(e12x2 * c, lambda)));
  }
  o.require(gap <= 1e-10, "span{E12}: max norm difference " + g(gap) + " <= 1e-10");

  // algebras with their own unit e ≠ 1: a rotated M2 corner in M4 and a spin factor corner in M3
  const RealMatrix q = random_orthogonal(4, rng);
  std::vector<RealMatrix> corner;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) corner.push_back(q * direct_sum(RealMatrix::unit(2, i, j), RealMatrix(2)) * adjoint(q));
  const std::vector<Subspace> algebras{
      orthonormal_basis(corner),
      orthonormal_basis({direct_sum(RealMatrix::identity(2), RealMatrix(1)), direct_sum(sigma_x(), RealMatrix(1)),
                         direct_sum(sigma_z(), RealMatrix(1))})};
  double formula_gap = 0.0;
  bool units = true;
  for (int i = 0; i < 100; ++i) {
    const Subspace& a = algebras[i % 2];
    const Unitization u = unitize(a, RealMatrix::identity(a.ambient_dim()));
    units = units && u.internal_identity.has_value();
    std::vector<double> c(a.size());
    for (double& ci : c) ci = rng.normal();
    const RealMatrix x = a.combine(c);
    const double lambda = rng.normal() * 2.0;
    const double direct = u.direct_norm(x, lambda);
    double formula = std::abs(lambda);
    if (u.internal_identity) formula = std::max(operator_norm(x + *u.internal_identity * lambda), std::abs(lambda));
    formula_gap = std::max(formula_gap, std::abs(formula - direct));
  }
  o.require(units, "internal units found");
  o.require(formula_gap <= 1e-10, "max{‖a + λe‖, |λ|} vs ‖a + λ1‖ on 100 samples: " + g(formula_gap) + " <= 1e-10");
}

// 6. polynomial map into the disc algebra
void expoly(Outcome& o) {
  constexpr int kGrid = 4096;
  Rng rng(derive_seed(6, "acceptance-expoly"));
  double x_gap = 0.0, t_gap = 0.0, ratio = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double s = rng.uniform(-3.0, 3.0);
    const double t = rng.uniform(-3.0, 3.0);
    double nx = 0.0, nt = 0.0;
    for (int j = 0; j < kGrid; ++j) {
      nx = std::max(nx, std::abs(s + t * j / (kGrid - 1.0)));
      const double th = 2.0 * M_PI * j / kGrid;
      // s + t(1 + z)/2 at z = e^{iθ}
      nt = std::max(nt, std::hypot(s + t * (1.0 + std::cos(th)) / 2.0, t * std::sin(th) / 2.0));
    }
    x_gap = std::max(x_gap, std::abs(nx - std::max(std::abs(s), std::abs(s + t))));
    t_gap = std::max(t_gap, std::abs(nt - (std::abs(s + t / 2.0) + std::abs(t) / 2.0)));
    ratio = std::max(ratio, nt / nx);
  }
  o.require(x_gap <= 1e-6, "‖s + tx‖ vs max{|s|, |s + t|}: " + g(x_gap) + " <= 1e-6");
  o.require(t_gap <= 1e-6, "‖T(s + tx)‖ vs |s + t/2| + |t|/2: " + g(t_gap) + " <= 1e-6");
  o.require(ratio <= 1.0 + 1e-12, "contraction on all samples (max ratio " + g(ratio) + ")");

  const Verdict v = run_scenario("expoly", 0);
  const Check* sa = find_check(v, "selfadjoint");
  o.require(sa && sa->counterexample && sa->status == CheckStatus::pass && sa->value == 0.0,
            "selfadjointness fails (asserted)");
  const Check* dx = find_check(v, "dim(X + X*)");
  const Check* dt = find_check(v, "dim(T(X) + T(X)*)");
  o.require(dx && dt && dx->value == 2.0 && dt->value == 3.0,
            "dimension jump " + (dx ? g(dx->value) : "?") + " -> " + (dt ? g(dt->value) : "?"));
}

// 7. the skew functional with value −2
void minus3(Outcome& o) {
  Rng rng(derive_seed(7, "acceptance-minus3"));
  const Functional phi1 = skew_positive_functional(1.0);
  double worst = INFINITY;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t rank = 1 + rng.index(2);
    worst = std::min(worst, phi1(random_psd(2, rng, rank)));
  }
  const RealMatrix p{{1, -3}, {1, 1}};
  const double lmin = lambda_min(sym_part(p));
  o.require(worst >= 0.0, "min φ₁ over 1000 PSD matrices " + g(worst) + " >= 0");
  o.require(phi1(p) == -2.0, "φ₁([[1, −3], [1, 1]]) = " + g(phi1(p)) + " (exactly −2)");
  o.require(std::abs(lmin) <= 1e-9, "λmin of its symmetrization " + g(lmin) + " = 0 ± 1e-9");
}

// 8. θ family on the spin factor
void theta_family(Outcome& o) {
  const Verdict v = run_scenario("theta_T", 0);
  for (int m : {1, 5, 50}) {
    const std::string tag = " [M = " + std::to_string(m) + "]";
    const Check* pos = find_check(v, "positive" + tag);
    const Check* unit = find_check(v, "unital: ‖θ(1) − 1‖" + tag);
    const Check* norm = find_check(v, "norm certificate ≥ M" + tag);
    o.require(pos && pos->status == CheckStatus::pass, "positive" + tag);
    o.require(unit && unit->status == CheckStatus::pass, "unital" + tag);
    o.require(norm && norm->value >= m - 1e-6, "norm certificate " + (norm ? g(norm->value) : "?") + " >= " +
                                                   std::to_string(m) + " − 1e-6");
  }
  const Check* two = find_check(v, "2-positive [M = 5]");
  bool witness_ok = false;
  if (two && two->witness) {
    witness_ok = lambda_min(*two->witness) >= -1e-12;
  }
  o.require(two && two->counterexample && two->status == CheckStatus::pass, "2-positivity violated at M = 5");
  o.require(witness_ok, "explicit PSD witness matrix reported");
}

// 9. x ↦ x(1 + x)⁻¹ on real positive elements
void f_transform_limits(Outcome& o) {
  const ConeContext ctx = ConeContext::full(3);
  double margin = INFINITY, round_trip = 0.0, worst_limit = 0.0;
  int limit_violations = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng(derive_seed(9, "acceptance-f", i));
    const RealMatrix x = sample_real_positive_element(ctx.space(), ctx.one(), rng);
    const FTransformResult f = f_transform(ctx, x);
    margin = std::min(margin, 1.0 - f.half_f_distance);
    round_trip = std::max(round_trip, max_abs_diff(f_transform_inverse(ctx, f.value), x));
    const double n = 1024.0;
    const double limit = operator_norm(f_transform(ctx, x * (1.0 / n)).value * n - x);
    const double bound = 1e-6 * (1.0 + operator_norm(x));
    worst_limit = std::max(worst_limit, limit / (1.0 + operator_norm(x)));
    limit_violations += limit > bound;
  }
  o.require(margin >= -1e-9, "½F margin " + g(margin) + " >= −1e-9");
  o.require(limit_violations == 0, "‖n·F(x/n) − x‖ <= 1e-6(1 + ‖x‖) at n = 1024: " +
                                       std::to_string(limit_violations) + "/200 exceed, worst ratio " + g(worst_limit));
  o.require(round_trip <= 1e-9, "round trip " + g(round_trip) + " <= 1e-9");
}

// 10. real positive functionals are multiples of states
void functional_chain(Outcome& o) {
  double norm_gap = 0.0;
  int states = 0, chain = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(derive_seed(10, "acceptance-functional", i));
    const std::size_t n = 2 + rng.index(2);
    const RealMatrix one = RealMatrix::identity(n);
    std::vector<RealMatrix> gens{one};
    const std::size_t extra = rng.index(4);
    for (std::size_t j = 0; j < extra; ++j) gens.push_back(gaussian_matrix(n, rng));
    const Subspace dom = i % 4 == 0 ? full_matrix_space(n) : orthonormal_basis(gens).with_identity(one);
    const ConeContext ctx(AlgebraDescriptor{"X", dom, AlgebraKind::operator_space});
    const double scale = rng.uniform(0.1, 3.0);
    const Functional phi(dom, random_psd(n, rng) * scale);
    const FunctionalFlags f = classify_functional(phi, ctx, derive_seed(10, "acceptance-fc", i), 200);
    norm_gap = std::max(norm_gap, std::abs(f.norm.value - f.value_at_one));
    chain += f.real_positive && f.srp && f.chain_consistent;
    const Functional unit(dom, phi.riesz * (1.0 / f.value_at_one));
    states += classify_functional(unit, ctx, derive_seed(10, "acceptance-fs", i), 100).state;
  }
  o.require(norm_gap <= 1e-6, "max |‖φ‖ − φ(1)| " + g(norm_gap) + " <= 1e-6");
  o.require(chain == 100, "real positive chain holds on " + std::to_string(chain) + "/100");
  o.require(states == 100, "φ/φ(1) is a state on " + std::to_string(states) + "/100");

  const ConeContext m2 = ConeContext::full(2);
  const RealMatrix p{{1, -3}, {1, 1}};
  bool predicted = true;
  for (double s : {0.0, 0.25, 0.6, 1.0}) {
    const Functional phi = skew_positive_functional(s);
    const FunctionalFlags f = classify_functional(phi, m2, derive_seed(10, "acceptance-skew"), 200);
    predicted = predicted && f.positive && f.real_positive == (s == 0.0) && std::abs(phi(p) - (2 - 4 * s)) <= 1e-12;
  }
  o.require(predicted, "skew family: positive, real positive only at s = 0, φ_s(−3 matrix) = 2 − 4s");
}

// 11. extension solvers
void extensions(Outcome& o) {
  constexpr int kBudget = 50000;
  int pos_ok = 0, pos_barrier = 0, cp_ok = 0, cp_barrier = 0, hard = 0;
  double pos_res = 0.0, cp_res = 0.0;
  for (int i = 0; i < 50; ++i) {
    Rng rng(derive_seed(11, "acceptance-ext-pos", i));
    const std::size_t n = 2 + rng.index(3);
    const RealMatrix one = RealMatrix::identity(n);
    std::vector<RealMatrix> gens{one};
    const std::size_t extra = 1 + rng.index(3);
    for (std::size_t j = 0; j < extra; ++j)
      gens.push_back(i % 2 == 0 ? (j % 2 == 0 ? random_symmetric(n, rng) : random_antisymmetric(n, rng))
                                : gaussian_matrix(n, rng));
    const Subspace dom = orthonormal_basis(gens).with_identity(one);
    const std::size_t rank = 1 + rng.index(n);
    const Functional phi(dom, random_psd(n, rng, rank) * rng.uniform(0.1, 2.0));
    try {
      const PositiveExtension e = extend_positive(phi, kBudget);
      pos_res = std::max(pos_res, e.constraint_residual);
      if (e.method == "dykstra" && e.iterations <= kBudget && e.constraint_residual <= 1e-6) ++pos_ok;
      else ++pos_barrier;
    } catch (const ConvergenceError&) {
      ++hard;
    }
  }
  for (int i = 0; i < 50; ++i) {
    Rng rng(derive_seed(11, "acceptance-ext-cp", i));
    const std::size_t n = 2 + rng.index(2), k = 2 + rng.index(2);
    const RealMatrix one = RealMatrix::identity(n);
    std::vector<RealMatrix> gens{one};
    const std::size_t extra = 2 + rng.index(2);
    for (std::size_t j = 0; j < extra; ++j)
      gens.push_back(j % 2 == 0 ? random_symmetric(n, rng) : random_antisymmetric(n, rng));
    const Subspace s = orthonormal_basis(gens).with_identity(one);
    std::vector<RealMatrix> v;
    for (int t = 0; t < 2; ++t) v.push_back(gaussian_matrix(k, n, rng) * (1.0 / std::sqrt(double(n))));
    const LinearMap t = restrict_map(conjugation_map(v), s);
    try {
      const CpExtension e = extend_cp(t, kBudget);
      cp_res = std::max(cp_res, e.restriction_residual);
      if ((e.method == "dykstra" || e.method == "none") && e.iterations <= kBudget && e.restriction_residual <= 1e-6)
        ++cp_ok;
      else ++cp_barrier;
    } catch (const ConvergenceError&) {
      ++hard;
    }
  }
  o.require(hard == 0, std::to_string(hard) + " instances with no solution at all");
  o.require(pos_ok == 50, "extend_positive: " + std::to_string(pos_ok) + "/50 by Dykstra within 5e4 iterations (" +
                              std::to_string(pos_barrier) + " needed the barrier fallback), max residual " + g(pos_res));
  o.require(cp_ok == 50, "extend_cp: " + std::to_string(cp_ok) + "/50 by Dykstra within 5e4 iterations (" +
                             std::to_string(cp_barrier) + " needed the barrier fallback), max residual " + g(cp_res));
}

// 12. the full catalog through the command line
std::string roal_binary;
void full_catalog(Outcome& o) {
  const auto t0 = Clock::now();
  bool ok = false;
  if (!roal_binary.empty()) {
    const int status = std::system(("\"" + roal_binary + "\" catalog run --all > /dev/null").c_str());
    ok = status == 0;
    o.detail << "roal catalog run --all exit status " << status << "; ";
  } else {
    ok = true;
    for (const auto& v : run_all(0)) ok = ok && v.overall;
    o.detail << "in-process run_all; ";
  }
  const double secs = seconds_since(t0);
  o.require(ok, "all scenarios pass");
  o.require(secs < 180.0, "runtime " + g(secs) + " s < 180 s");
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (a == "--roal" && i + 1 < argc) roal_binary = argv[++i];
    else {
      std::cerr << "usage: acceptance [--criterion N] [--roal PATH]\n";
      return 2;
    }
  }
  const std::vector<Criterion> criteria{
      {1, "complexified positivity: block criterion vs Hermitian spectrum", complexified_positivity},
      {2, "Stinespring round trip", stinespring_roundtrip},
      {3, "transpose: level norms and Choi spectrum", transpose_gap},
      {4, "triangle algebra norm formula", triangle_formula},
      {5, "unitization norm invariance and internal-unit formula", unitization},
      {6, "polynomial map into the disc algebra", expoly},
      {7, "skew functional with value −2", minus3},
      {8, "θ family: positive, unital, unbounded, not 2-positive", theta_family},
      {9, "x(1 + x)⁻¹ range, limit and inverse", f_transform_limits},
      {10, "real positive functionals and states", functional_chain},
      {11, "extension solvers", extensions},
      {12, "full catalog run", full_catalog},
  };
  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    ++ran;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what() << "; ";
    }
    const double secs = seconds_since(t0);
    std::string d = o.detail.str();
    if (d.size() >= 2) d.resize(d.size() - 2);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " (" << g(secs)
              << " s)\n      " << d << std::endl;
    failed += !o.pass;
  }
  if (ran == 0) {
    std::cerr << "no criterion " << only << '\n';
    return 2;
  }
  std::cout << (ran - failed) << "/" << ran << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
