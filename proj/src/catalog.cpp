#include "roal/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "roal/maps.hpp"

namespace roal {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "skipped";
}

CheckStatus check_status_from_string(const std::string& s) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "skipped") return CheckStatus::skipped;
  throw std::invalid_argument("unknown check status '" + s + "'");
}

bool Verdict::operator==(const Verdict& o) const {
  return scenario == o.scenario && seed == o.seed && tol.psd_tol == o.tol.psd_tol &&
         tol.norm_rel_tol == o.tol.norm_rel_tol && tol.eig_sweep_limit == o.tol.eig_sweep_limit &&
         checks == o.checks && overall == o.overall && note == o.note;
}

Check range_check(std::string name, std::string anchor, double value, double lo, double hi, double tolerance) {
  Check c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.value = value;
  c.expected_lo = lo;
  c.expected_hi = hi;
  c.tolerance = tolerance;
  const bool ok = std::isfinite(value) && value >= lo - tolerance && value <= hi + tolerance;
  c.status = ok ? CheckStatus::pass : CheckStatus::fail;
  return c;
}

Check bool_check(std::string name, std::string anchor, bool holds) {
  return range_check(std::move(name), std::move(anchor), holds ? 1.0 : 0.0, 1.0, 1.0, 0.0);
}

Check counterexample_check(std::string name, std::string anchor, bool holds) {
  Check c = range_check(std::move(name), std::move(anchor), holds ? 1.0 : 0.0, 0.0, 0.0, 0.0);
  c.counterexample = true;
  return c;
}

Check skipped_check(std::string name, std::string anchor, std::string reason) {
  Check c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.status = CheckStatus::skipped;
  c.note = std::move(reason);
  return c;
}

void finalize(Verdict& v) {
  v.overall = std::none_of(v.checks.begin(), v.checks.end(),
                           [](const Check& c) { return c.status == CheckStatus::fail; });
}

namespace {

using Scenario = std::function<void(Verdict&, std::uint64_t, const ToleranceConfig&)>;

Rng stream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0) {
  return Rng(derive_seed(seed, label, index));
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

RealMatrix random_member(const Subspace& s, Rng& rng) {
  std::vector<double> c(s.size());
  for (double& v : c) v = rng.normal();
  return s.combine(c);
}

RealMatrix with_norm(const RealMatrix& x, double norm) {
  const double n = operator_norm(x);
  return n > 0.0 ? x * (norm / n) : x;
}

// Unital subspace of M_n: span{I, g₁, …} with `extra` random generators;
// selfadjoint spaces pair each symmetric generator with an antisymmetric one.
Subspace random_unital_space(std::size_t n, std::size_t extra, bool selfadjoint, Rng& rng) {
  const RealMatrix one = RealMatrix::identity(n);
  std::vector<RealMatrix> gens{one};
  for (std::size_t i = 0; i < extra; ++i) {
    if (selfadjoint) gens.push_back(i % 2 == 0 ? random_symmetric(n, rng) : random_antisymmetric(n, rng));
    else gens.push_back(gaussian_matrix(n, rng));
  }
  return orthonormal_basis(gens).with_identity(one);
}

LinearMap random_cp_map(std::size_t n, std::size_t k, int terms, Rng& rng) {
  std::vector<RealMatrix> v;
  for (int t = 0; t < terms; ++t) v.push_back(gaussian_matrix(k, n, rng) * (1.0 / std::sqrt(double(n))));
  return conjugation_map(v);
}

RealMatrix inverse_sqrt_psd(const RealMatrix& s) {
  const auto e = sym_eig(s);
  const std::size_t n = s.dim();
  RealMatrix out(n);
  for (std::size_t l = 0; l < n; ++l) {
    const double w = 1.0 / std::sqrt(e.values[l]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += w * e.vectors(i, l) * e.vectors(j, l);
  }
  return out;
}

// Unital CP map x ↦ Σ Bᵣ x Bᵣᵀ with Σ Bᵣ Bᵣᵀ = I on M_n.
LinearMap random_unital_cp(std::size_t n, int terms, Rng& rng) {
  std::vector<RealMatrix> a;
  RealMatrix s(n);
  for (int t = 0; t < terms; ++t) {
    a.push_back(gaussian_matrix(n, rng));
    s += a.back() * adjoint(a.back());
  }
  const RealMatrix w = inverse_sqrt_psd(s);
  for (auto& m : a) m = w * m;
  return conjugation_map(a);
}

// Eigenvalues of the Hermitian matrix re + i·im by complex Jacobi rotations,
// computed without the real block embedding.
std::vector<double> hermitian_eigenvalues(const ComplexPair& p) {
  using C = std::complex<double>;
  const std::size_t n = p.dim();
  std::vector<C> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = C(p.re(i, j), p.im(i, j));
  const auto at = [&](std::size_t i, std::size_t j) -> C& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) (i == j ? total : off) += std::norm(at(i, j));
    if (off <= 1e-30 * (total + off) || off == 0.0) break;
    for (std::size_t pi = 0; pi + 1 < n; ++pi)
      for (std::size_t q = pi + 1; q < n; ++q) {
        const double r = std::abs(at(pi, q));
        if (r == 0.0) continue;
        // rotate the phase of row/column q so that a(p, q) becomes real
        const C ph = at(pi, q) / r;
        for (std::size_t k = 0; k < n; ++k) {
          at(k, q) *= std::conj(ph);
          at(q, k) *= ph;
        }
        const double app = at(pi, pi).real(), aqq = at(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const C kp = at(k, pi), kq = at(k, q);
          at(k, pi) = c * kp - s * kq;
          at(k, q) = s * kp + c * kq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const C pk = at(pi, k), qk = at(q, k);
          at(pi, k) = c * pk - s * qk;
          at(q, k) = s * pk + c * qk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

double sym_margin(const RealMatrix& m) { return lambda_min(sym_part(m)); }

ConeContext context(std::string name, const Subspace& s, AlgebraKind kind, const ToleranceConfig& tol) {
  return ConeContext(AlgebraDescriptor{std::move(name), s, kind}, tol);
}

// ---------------------------------------------------------------------------

void block_positivity(Verdict& v, std::uint64_t seed, const ToleranceConfig& tol) {
  Rng rng = stream(seed, "block_positivity");
  const std::string anchor = "x + iy is positive iff [[x, -y], [y, x]] is positive";
  int disagreements = 0, positives = 0, non_selfadjoint = 0;
  double spectrum_gap = 0.0;
  std::optional<RealMatrix> witness;
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng.index(4);
    RealMatrix re = random_symmetric(n, rng);
    ComplexPair p(std::move(re), random_antisymmetric(n, rng));
    const double lmin = hermitian_eigenvalues(p).front();
    const double magnitude = rng.uniform(0.01, 1.0);
    const double delta = rng.uniform() < 0.5 ? -magnitude : magnitude;
    p.re += RealMatrix::identity(n) * (delta - lmin);
    if (i % 5 == 4) {
      p.im += random_symmetric(n, rng) * 0.5;
      if (n > 1) p.re += random_antisymmetric(n, rng) * 0.5;
    }
    const bool sa = max_abs(skew_part(p.re)) <= tol.psd_tol && max_abs(sym_part(p.im)) <= tol.psd_tol;
    bool direct = sa;
    if (sa) {
      const auto ev = hermitian_eigenvalues(p);
      direct = ev.front() >= -tol.psd_tol;
      // the block spectrum is the Hermitian spectrum with every eigenvalue doubled
      auto block = sym_eig(embed(p), tol).values;
      std::sort(block.begin(), block.end());
      for (std::size_t k = 0; k < n; ++k)
        spectrum_gap = std::max({spectrum_gap, std::abs(block[2 * k] - ev[k]), std::abs(block[2 * k + 1] - ev[k])});
    } else {
      ++non_selfadjoint;
    }
    const bool via_block = complex_is_psd(p, tol);
    if (via_block != direct) {
      ++disagreements;
      if (!witness) witness = embed(p);
    }
    positives += direct ? 1 : 0;
  }
  Check c = range_check("block and spectral verdicts agree", anchor, disagreements, 0, 0, 0);
  c.witness = witness;
  c.note = std::to_string(positives) + " positive, " + std::to_string(500 - positives) + " not positive, " +
           std::to_string(non_selfadjoint) + " not selfadjoint";
  v.checks.push_back(std::move(c));
  v.checks.push_back(range_check("block spectrum doubles the Hermitian spectrum", anchor, spectrum_gap, 0, 0, 1e-9));
  v.checks.push_back(bool_check("both verdicts occur", anchor, positives > 0 && positives < 500));
}

void meyer_invariance(Verdict& v, std::uint64_t seed, const ToleranceConfig& tol) {
  Rng rng = stream(seed, "meyer_invariance");
  const std::string anchor = "unitization norm does not depend on the isometric representation";
  const RealMatrix e12 = RealMatrix::unit(2, 0, 1);
  const RealMatrix e12x2 = direct_sum(e12, e12);
  const Unitization u1 = unitize(orthonormal_basis({e12}), RealMatrix::identity(2), tol);
  const Unitization u2 = unitize(orthonormal_basis({e12x2}), RealMatrix::identity(4), tol);
  double gap = 0.0, closed = 0.0, iso = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double c = rng.normal() * 2.0, lambda = rng.normal() * 2.0;
    const double n1 = u1.norm(e12 * c, lambda), n2 = u2.norm(e12x2 * c, lambda);
    gap = std::max(gap, std::abs(n1 - n2));
    closed = std::max(closed, std::abs(n1 - 0.5 * (std::abs(c) + std::sqrt(c * c + 4.0 * lambda * lambda))));
    iso = std::max(iso, std::abs(operator_norm(e12 * c) - operator_norm(e12x2 * c)));
  }
  v.checks.push_back(range_check("representations are isometric on the algebra", anchor, iso, 0, 0, 1e-12));
  v.checks.push_back(range_check("unitization norms agree across representations", anchor, gap, 0, 0, 1e-10));
  v.checks.push_back(range_check("unitization norm of [[l, c], [0, l]] in closed form", anchor, closed, 0, 0, 1e-10));
}

void unitization_formula(Verdict& v, std::uint64_t seed, const ToleranceConfig& tol) {
  Rng rng = stream(seed, "unitization_formula");
  const std::string anchor = "unitization of an algebra with its own unit e: ‖a + l1‖ = max{‖a + le‖, |l|}";
  struct Case {
    std::string name;
    Subspace a;
  };
  std::vector<Case> cases;
  {
    std::vector<RealMatrix> g;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) g.push_back(direct_sum(RealMatrix::unit(2, i, j), RealMatrix(1)));
    cases.push_back({"M2 + 0 in M3", orthonormal_basis(g)});
  }
  {
    const RealMatrix q = random_orthogonal(4, rng);
    std::vector<RealMatrix> g;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) g.push_back(q * direct_sum(RealMatrix::unit(2, i, j), RealMatrix(2)) * adjoint(q));
    cases.push_back({"rotated corner in M4", orthonormal_basis(g)});
  }
  cases.push_back({"spin factor corner in M3", orthonormal_basis({direct_sum(RealMatrix::identity(2), RealMatrix(1)),
                                                                  direct_sum(sigma_x(), RealMatrix(1)),
                                                                  direct_sum(sigma_z(), RealMatrix(1))})});
  for (const auto& cs : cases) {
    const std::size_t n = cs.a.ambient_dim();
    const Unitization u = unitize(cs.a, RealMatrix::identity(n), tol);
    if (!u.internal_identity) {
      v.checks.push_back(bool_check("internal unit found [" + cs.name + "]", anchor, false));
      continue;
    }
    v.checks.push_back(bool_check("internal unit found [" + cs.name + "]", anchor,
                                  max_abs_diff(*u.internal_identity, RealMatrix::identity(n)) > 0.5));
    double gap = 0.0;
    for (int i = 0; i < 100 / static_cast<int>(cases.size()) + 1; ++i) {
      const RealMatrix a = random_member(cs.a, rng);
      const double lambda = rng.normal() * 2.0;
      gap = std::max(gap, std::abs(u.norm(a, lambda) - u.direct_norm(a, lambda)));
    }
    v.checks.push_back(range_check("formula matches direct norm [" + cs.name + "]", anchor, gap, 0, 0, 1e-10));
    const auto report = unitization_norm_check(cs.a.with_identity(*u.internal_identity), 10, 200,
                                               derive_seed(seed, cs.name));
    Check c = range_check("sup over the unit ball never exceeds the norm [" + cs.name + "]",
                          "unitization norm as a supremum over contractions c in A", report.worst_upper_gap, -10.0,
                          0.0, 1e-9);
    c.note = "worst lower gap " + fmt(report.worst_lower_gap);
    v.checks.push_back(std::move(c));
  }
}

void triangle_eq3(Verdict& v, std::uint64_t seed, const ToleranceConfig&) {
  Rng rng = stream(seed, "triangle_eq3");
  const std::string anchor = "norm of [[aI, x], [0, bI]] via sup_t (|a|√(1−t²) + ‖x‖t)² + |bt|²";
  double worst = 0.0, worst_scalar = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const Subspace x = orthonormal_basis({gaussian_matrix(3, rng), gaussian_matrix(3, rng)});
    const TriangleAlgebra t = build_triangle(x);
    for (int i = 0; i < 100; ++i) {
      const double alpha = rng.normal(), beta = rng.normal();
      const RealMatrix dir = random_member(x, rng);
      const RealMatrix m = dir * rng.uniform(0.0, 2.0);
      const double direct = t.direct_norm(alpha, m, beta);
      const double xn = operator_norm(m);
      worst = std::max(worst, std::abs(TriangleAlgebra::formula_norm(alpha, xn, beta) - direct) / (1.0 + direct));
      worst_scalar =
          std::max(worst_scalar, std::abs(TriangleAlgebra::scalar_triangle_norm(alpha, xn, beta) - direct) / (1.0 + direct));
    }
  }
  v.checks.push_back(range_check("formula matches direct norm (500 elements)", anchor, worst, 0, 0, 1e-7));
  v.checks.push_back(range_check("scalar 2x2 reduction matches direct norm", anchor, worst_scalar, 0, 0, 1e-9));
}

void expoly(Verdict& v, std::uint64_t seed, const ToleranceConfig& tol) {
  Rng rng = stream(seed, "expoly");
  const std::string anchor = "T(s + tx) = s + t(1 + z)/2 from real polynomials of degree ≤ 1 on [0, 1] to the disc algebra";
  constexpr int kGrid = 4096;
  std::vector<std::complex<double>> circle(kGrid);
  for (int j = 0; j < kGrid; ++j) circle[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / kGrid);
  const auto x_norm = [](double s, double t) { return std::max(std::abs(s), std::abs(s + t)); };
  const auto x_norm_grid = [](double s, double t) {
    double m = 0.0;
    for (int j = 0; j < kGrid; ++j) m = std::max(m, std::abs(s + t * j / (kGrid - 1.0)));
    return m;
  };
  const auto t_norm_grid = [&](double s, double t) {
    double m = 0.0;
    for (const auto& z : circle) m = std::max(m, std::abs(s + t * (1.0 + z) / 2.0));
    return m;
  };
  double x_gap = 0.0, t_gap = 0.0, ratio = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double s = rng.uniform(-2.0, 2.0), t = rng.uniform(-2.0, 2.0);
    const double nx = x_norm(s, t), nt = t_norm_grid(s, t);
    x_gap = std::max(x_gap, std::abs(x_norm_grid(s, t) - nx));
    t_gap = std::max(t_gap, std::abs(nt - (std::abs(s + t / 2.0) + std::abs(t) / 2.0)));
    if (nx > 0.0) ratio = std::max(ratio, nt / nx);
  }
  v.checks.push_back(range_check("‖s + tx‖ = max{|s|, |s + t|}", anchor, x_gap, 0, 0, 1e-6));
  v.checks.push_back(range_check("‖T(s + tx)‖ = |s + t/2| + |t|/2", anchor, t_gap, 0, 0, 1e-6));
  v.checks.push_back(range_check("contraction: max ‖T(p)‖/‖p‖", anchor, ratio, 0, 1, 1e-12));
  v.checks.push_back(range_check("unital: ‖T(1)‖ and T(1) − 1", anchor, std::abs(t_norm_grid(1, 0) - 1.0), 0, 0, 1e-15));

  // matrix realization: X on an 8-point grid of [0, 1] (endpoints included),
  // T(X) as 2×2 real blocks of the complex values on a 16-point circle grid
  constexpr std::size_t kPts = 8, kCirc = 16;
  std::vector<double> grid(kPts);
  for (std::size_t j = 0; j < kPts; ++j) grid[j] = double(j) / (kPts - 1);
  const RealMatrix one = RealMatrix::identity(kPts);
  const RealMatrix xdiag = RealMatrix::diag(grid);
  const Subspace x = orthonormal_basis({one, xdiag}).with_identity(one);
  const auto realize = [&](double s, double t) {
    RealMatrix out(2 * kCirc);
    for (std::size_t j = 0; j < kCirc; ++j) {
      const auto w = s + t * (1.0 + std::polar(1.0, 2.0 * std::numbers::pi * j / kCirc)) / 2.0;
      out(2 * j, 2 * j) = w.real();
      out(2 * j, 2 * j + 1) = -w.imag();
      out(2 * j + 1, 2 * j) = w.imag();
      out(2 * j + 1, 2 * j + 1) = w.real();
    }
    return out;
  };
  const LinearMap tm = LinearMap::from_function(x, 2 * kCirc, [&](const RealMatrix& m) {
    return realize(m(0, 0), m(kPts - 1, kPts - 1) - m(0, 0));
  });
  const ConeContext ctx = context("polynomials", x, AlgebraKind::operator_system, tol);
  const MapFlags f = classify_map(tm, ctx, {1}, derive_seed(seed, "expoly-flags"), 100);
  Check sa = counterexample_check("selfadjoint", anchor, f.selfadjoint);
  sa.note = "selfadjoint residual " + fmt(f.selfadjoint_residual);
  v.checks.push_back(std::move(sa));
  Check pos = counterexample_check("positive", anchor, f.positive);
  pos.witness = f.levels.front().psd_witness;
  v.checks.push_back(std::move(pos));
  v.checks.push_back(counterexample_check("systematically real positive", anchor, f.srp));

  bool extends = true;
  std::string note;
  try {
    (void)canonical_sa_extension(tm, ctx, derive_seed(seed, "expoly-ext"));
  } catch (const WellDefinednessError& e) {
    extends = false;
    note = "well-definedness residual " + fmt(e.residual());
  }
  Check ext = counterexample_check("canonical extension to X + X* is well defined", anchor, extends);
  ext.note = note;
  v.checks.push_back(std::move(ext));

  const double dx = static_cast<double>(orthonormal_basis({one, xdiag, adjoint(one), adjoint(xdiag)}).size());
  const RealMatrix t1 = realize(1, 0), tx = realize(0, 1);
  const double dt = static_cast<double>(orthonormal_basis({t1, tx, adjoint(t1), adjoint(tx)}).size());
  v.checks.push_back(range_check("dim(X + X*)", anchor, dx, 2, 2, 0));
  v.checks.push_back(range_check("dim(T(X) + T(X)*)", anchor, dt, 3, 3, 0));
}

void minus3_functional(Verdict& v, std::uint64_t seed, const ToleranceConfig& tol) {
  Rng rng = stream(seed, "minus3_functional");
  const std::string anchor = "positive functionals on real C*-algebras need not be selfadjoint or real positive";
  const ConeContext ctx = ConeContext::full(2, tol);
  const RealMatrix p{{1, -3}, {1, 1}};
  for (double s : {0.0, 0.6, 1.0}) {
    const Functional phi = skew_positive_functional(s);
    const FunctionalFlags f = classify_functional(phi, ctx, derive_seed(seed, "minus3", std::uint64_t(s * 10)), 500);
    const std::string tag = " [s = " + fmt(s) + "]";
    v.checks.push_back(bool_check("positive" + tag, anchor, f.positive));
    if (s == 0.0) {
      v.checks.push_back(bool_check("selfadjoint" + tag, anchor, f.selfadjoint));
      v.checks.push_back(bool_check("real positive" + tag, anchor, f.real_positive));
    } else {
      v.checks.push_back(counterexample_check("selfadjoint" + tag, anchor, f.selfadjoint));
      v.checks.push_back(counterexample_check("real positive" + tag, anchor, f.real_positive));
    }
    if (s == 1.0) {
      Check c = range_check("norm of the unital rescaling exceeds 1" + tag, anchor, f.norm.value / f.value_at_one,
                            1.0 + 1e-6, std::sqrt(2.0), 1e-9);
      c.note = "upper end is ‖F‖₁/tr(F)";
      v.checks.push_back(std::move(c));
    }
  }
  const Functional phi1 = skew_positive_functional(1.0);
  double worst = 1.0;
  for (int i = 0; i < 1000; ++i) {
    const RealMatrix q = random_psd(2, rng, 1 + rng.index(2));
    worst = std::min(worst, phi1(q) / trace(q));
  }
  v.checks.push_back(range_check("φ₁(p)/tr(p) on 1000 random PSD p", anchor, worst, 0, 1, 1e-12));
  Check val = range_check("φ₁ of the all-ones matrix with −3 in the 1-2 corner", anchor, phi1(p), -2, -2, 0);
  val.witness = p;
  v.checks.push_back(std::move(val));
  v.checks.push_back(range_check("that matrix is real positive: λmin of its symmetrization", anchor,
                                 lambda_min(sym_part(p), tol), 0, 0, 1e-9));
}

void theta_t(Verdict& v, std::uint64_t seed, const ToleranceConfig& tol) {
  const std::string anchor = "positive unital selfadjoint maps on a JC*-algebra need not be bounded";
  v.note =
      "finite truncation: the unbounded map on an infinite spin system is replaced by the family "
      "θ_M([[l I, x], [-x, m I]]) = [[l, M·a], [-M·a, m]] for x = a σx + b σz, whose norm grows like M";
  const RealMatrix z2 = RealMatrix(2);
  const RealMatrix i2 = RealMatrix::identity(2);
  const auto blocks = [&](const RealMatrix& a, const RealMatrix& b, const RealMatrix& c, const RealMatrix& d) {
    RealMatrix out(4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        out(i, j) = a(i, j);
        out(i, j + 2) = b(i, j);
        out(i + 2, j) = c(i, j);
        out(i + 2, j + 2) = d(i, j);
      }
    return out;
  };
  const RealMatrix e = blocks(i2, z2, z2, z2), f = blocks(z2, z2, z2, i2);
  const RealMatrix x1 = blocks(z2, sigma_x(), -sigma_x(), z2), x2 = blocks(z2, sigma_z(), -sigma_z(), z2);
  const AlgebraDescriptor alg = make_algebra("theta domain", orthonormal_basis({e, f, x1, x2}), AlgebraKind::jc_star, tol);
  const ConeContext ctx(alg, tol);
  for (double m : {1.0, 5.0, 50.0}) {
    const std::string tag = " [M = " + fmt(m) + "]";
    const LinearMap theta = LinearMap::from_function(alg.subspace, 2, [m](const RealMatrix& x) {
      const double a = 0.5 * (x(0, 3) + x(1, 2));
      return RealMatrix{{x(0, 0), m * a}, {-m * a, x(2, 2)}};
    });
    const MapFlags fl = classify_map(theta, ctx, {1}, derive_seed(seed, "theta", std::uint64_t(m)), 200);
    v.checks.push_back(bool_check("positive" + tag, anchor, fl.positive));
    v.checks.push_back(bool_check("selfadjoint" + tag, anchor, fl.selfadjoint));
    v.checks.push_back(range_check("unital: ‖θ(1) − 1‖" + tag, anchor, max_abs_diff(theta(ctx.one()), i2), 0, 0, 1e-12));
    const auto cert = map_norm(theta, 1, MapNormOptions{6, 200, derive_seed(seed, "theta-norm", std::uint64_t(m))});
    Check nc = range_check("norm certificate ≥ M" + tag, anchor, cert.value, m, cert.upper_bound, 1e-6);
    nc.note = "‖θ(x₁)‖ = " + fmt(operator_norm(theta(x1))) + " with ‖x₁‖ = " + fmt(operator_norm(x1));
    v.checks.push_back(std::move(nc));
    // [[1, x₁], [x₁ᵀ, 1]] ≥ 0 since ‖x₁‖ = 1, and θ₂ maps it to [[1, M j], [M jᵀ, 1]]
    RealMatrix w(8);
    for (std::size_t i = 0; i < 4; ++i) {
      w(i, i) = 1.0;
      w(i + 4, i + 4) = 1.0;
      for (std::size_t j = 0; j < 4; ++j) {
        w(i, j + 4) = x1(i, j);
        w(i + 4, j) = x1(j, i);
      }
    }
    const double in_margin = lambda_min(w, tol);
    const double out_margin = lambda_min(sym_part(apply_blocks(theta, w)), tol);
    if (m > 1.0) {
      Check c = counterexample_check("2-positive" + tag, anchor, !(out_margin < -tol.psd_tol));
      c.witness = w;
      c.note = "λmin(witness) = " + fmt(in_margin) + ", λmin(θ₂(witness)) = " + fmt(out_margin);
      v.checks.push_back(std::move(c));
      v.checks.push_back(range_check("λmin(θ₂(witness)) = 1 − M" + tag, anchor, out_margin, 1 - m, 1 - m, 1e-9));
    } else {
      v.checks.push_back(skipped_check("2-positive" + tag, anchor, "M = 1 is contractive; no violation asserted"));
    }
  }
}

void spin_hilbert(Verdict& v, std::uint64_t seed, const ToleranceConfig&) {
  const std::string anchor = "the span of a spin system is isometric to a Hilbert space";
  for (int k : {2, 3, 4}) {
    Rng rng = stream(seed, "spin_hilbert", k);
    const auto u = spin_system(k);
    const std::size_t n = u.front().dim();
    double rel = 0.0, relations = 0.0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const RealMatrix target = i == j ? RealMatrix::identity(n) : RealMatrix(n);
        relations = std::max(relations, max_abs_diff(jordan(u[i], u[j]), target));
      }
    for (int s = 0; s < 200; ++s) {
      RealMatrix m(n);
      double l2 = 0.0;
      for (int i = 0; i < k; ++i) {
        const double l = rng.normal();
        m += u[i] * l;
        l2 += l * l;
      }
      rel = std::max(rel, std::abs(operator_norm(m) / std::sqrt(l2) - 1.0));
    }
    const std::string tag = " [k = " + std::to_string(k) + "]";
    v.checks.push_back(range_check("uᵢ∘uⱼ = δᵢⱼ 1" + tag, anchor, relations, 0, 0, 1e-12));
    v.checks.push_back(range_check("‖Σ lᵢuᵢ‖ / ‖l‖₂ − 1" + tag, anchor, rel, 0, 0, 1e-10));
  }
}

void brord_suite(Verdict& v, std::uint64_t seed, const ToleranceConfig& tol) {
  v.note = "every algebra here is unital, so the dominating element is a = 1 (a boundary point of ½F) "
           "and b = x − y uses the closed-form split x = (1 + b)/2, y = (1 − b)/2";
  struct Case {
    std::string name;
    AlgebraDescriptor alg;
  };
  std::vector<Case> cases;
  cases.push_back({"M2", make_algebra("M2", full_matrix_space(2), AlgebraKind::assoc_algebra, tol)});
  {
    const Subspace t = orthonormal_basis({RealMatrix::unit(3, 0, 0), RealMatrix::unit(3, 1, 1), RealMatrix::unit(3, 2, 2),
                                          RealMatrix::unit(3, 0, 1), RealMatrix::unit(3, 0, 2), RealMatrix::unit(3, 1, 2)});
    cases.push_back({"upper triangular T3", make_algebra("T3", t, AlgebraKind::assoc_algebra, tol)});
  }
  {
    std::vector<RealMatrix> g;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) g.push_back(direct_sum(RealMatrix::unit(2, i, j), RealMatrix(1)));
    cases.push_back({"corner M2 + 0", make_algebra("corner", orthonormal_basis(g), AlgebraKind::assoc_algebra, tol)});
  }
  {
    std::vector<RealMatrix> g{RealMatrix::identity(4)};
    for (const auto& u : spin_system(3)) g.push_back(u);
    cases.push_back({"spin factor V3", make_algebra("spin", orthonormal_basis(g), AlgebraKind::jc_star, tol)});
  }
  const std::string a2 = "positive b in the open unit ball of the generated C*-algebra lies below some a in ½F";
  const std::string a3 = "any two elements of the open unit ball have a common upper bound in ½F";
  const std::string a4 = "the open unit ball sits between -a and a for some a in ½F";
  const std::string a5 = "every b in the open unit ball is x − y with x, y in ½F";
  const std::string a6 = "the real positive cone generates the algebra";
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const auto& cs = cases[ci];
    Rng rng = stream(seed, "brord_suite", ci);
    const ConeContext ctx(cs.alg, tol);
    const RealMatrix& one = ctx.one();
    const Subspace& a = ctx.space();
    const std::string tag = " [" + cs.name + "]";
    const double half_f = operator_norm(one - one * 2.0);

    // the C*-algebra generated by A, with the same unit
    std::vector<RealMatrix> gens = a.basis();
    for (const auto& b : a.basis()) gens.push_back(adjoint(b));
    const Subspace b_alg = close_assoc(gens).with_identity(one);
    const Subspace b_sa = selfadjoint_part(b_alg);
    double m2 = INFINITY, m3 = INFINITY, m4 = INFINITY, split_res = 0.0, gen_res = 0.0, gen_margin = INFINITY;
    bool split_in_half_f = true, split_member = true, gen_member = true;
    for (int s = 0; s < 50; ++s) {
      const RealMatrix h = random_member(b_sa, rng);
      const RealMatrix b = with_norm(h * h, rng.uniform(0.0, 0.99));
      m2 = std::min(m2, sym_margin(one - b));
      const RealMatrix xd = random_member(a, rng);
      const RealMatrix x = with_norm(xd, rng.uniform(0.0, 0.99));
      const RealMatrix yd = random_member(a, rng);
      const RealMatrix y = with_norm(yd, rng.uniform(0.0, 0.99));
      m3 = std::min({m3, sym_margin(one - x), sym_margin(one - y)});
      m4 = std::min({m4, sym_margin(one - x), sym_margin(x + one)});

      const RealPositiveSplit sp = decompose_real_positive(ctx, x);
      split_res = std::max(split_res, sp.reconstruction_residual);
      split_in_half_f = split_in_half_f && in_F(ctx, sp.x * 2.0).in_f && in_F(ctx, sp.y * 2.0).in_f;
      split_member = split_member && member(a, sp.x).member && member(a, sp.y).member;

      // arbitrary elements: rescale into the unit ball, split, scale back
      const RealMatrix gd = random_member(a, rng);
      const RealMatrix g = gd * rng.uniform(0.1, 10.0);
      const double r = 2.0 * operator_norm(g) + 1e-300;
      const RealPositiveSplit gs = decompose_real_positive(ctx, g * (1.0 / r));
      const RealMatrix gx = gs.x * r, gy = gs.y * r;
      gen_res = std::max(gen_res, max_abs_diff(gx - gy, g) / (1.0 + max_abs(g)));
      gen_margin = std::min({gen_margin, sym_margin(gx) / r, sym_margin(gy) / r});
      gen_member = gen_member && member(a, gx).member && member(a, gy).member;
      if (is_selfadjoint_space(a)) {
        // sa/as route: sym(g) = p − q with p, q ≥ 0 and skew(g) ∈ r ∩ −r
        const SelfadjointSplit pq = sa_cone_decompose(a, sym_part(g), tol);
        const RealMatrix px = pq.p + skew_part(g);
        gen_res = std::max(gen_res, max_abs_diff(px - pq.q, g) / (1.0 + max_abs(g)));
        gen_margin = std::min({gen_margin, sym_margin(px) / r, sym_margin(pq.q) / r});
        gen_member = gen_member && member(a, px).member && member(a, pq.q).member;
      }
    }
    v.checks.push_back(range_check("a = 1 lies in ½F" + tag, a2, half_f, 0, 1, tol.psd_tol));
    v.checks.push_back(range_check("b ≼ 1 for positive contractions b: min λmin(Re(1 − b))" + tag, a2, m2, 0, 1, tol.psd_tol));
    v.checks.push_back(range_check("x, y ≼ 1: min λmin(Re(1 − x)), λmin(Re(1 − y))" + tag, a3, m3, 0, 2, tol.psd_tol));
    v.checks.push_back(range_check("−1 ≼ b ≼ 1: min λmin over both sides" + tag, a4, m4, 0, 2, tol.psd_tol));
    v.checks.push_back(range_check("b = x − y reconstruction" + tag, a5, split_res, 0, 0, 1e-12));
    v.checks.push_back(bool_check("x, y in ½F" + tag, a5, split_in_half_f));
    v.checks.push_back(bool_check("x, y in the algebra" + tag, a5, split_member));
    v.checks.push_back(range_check("g = x − y reconstruction for arbitrary g" + tag, a6, gen_res, 0, 0, 1e-12));
    v.checks.push_back(range_check("x, y real positive: min λmin(Re x)/(2‖g‖)" + tag, a6, gen_margin, 0, 1, tol.psd_tol));
    v.checks.push_back(bool_check("x, y in the algebra for arbitrary g" + tag, a6, gen_member));
  }
}

void f_transform_range(Verdict& v, std::uint64_t seed, const ToleranceConfig& tol) {
  const std::string anchor = "x ↦ x(1 + x)⁻¹ maps the real positive cone into ½F, and n·F(x/n) → x";
  v.note = "the limit is checked against the exact rate ‖n·F(x/n) − x‖ = ‖x²(n + x)⁻¹‖ ≤ ‖x‖²/(n − ‖x‖)";
  std::vector<ConeContext> ctxs;
  ctxs.push_back(ConeContext::full(3, tol));
  ctxs.emplace_back(make_algebra("T3",
                                 orthonormal_basis({RealMatrix::unit(3, 0, 0), RealMatrix::unit(3, 1, 1),
                                                    RealMatrix::unit(3, 2, 2), RealMatrix::unit(3, 0, 1),
                                                    RealMatrix::unit(3, 0, 2), RealMatrix::unit(3, 1, 2)}),
                                 AlgebraKind::assoc_algebra, tol),
                    tol);
  double range_margin = INFINITY, round_trip = 0.0, rate_excess = -INFINITY, f_in_r = INFINITY;
  bool monotone = true, in_algebra = true;
  double final_rel = 0.0;
  for (int i = 0; i < 200; ++i) {
    const ConeContext& ctx = ctxs[i % ctxs.size()];
    Rng rng = stream(seed, "f_transform_range", i);
    const RealMatrix x = sample_real_positive_element(ctx.space(), ctx.one(), rng);
    const FTransformResult fr = f_transform(ctx, x);
    range_margin = std::min(range_margin, 1.0 - fr.half_f_distance);
    in_algebra = in_algebra && fr.membership_residual <= 1e-9;
    const RealMatrix back = f_transform_inverse(ctx, fr.value);
    const double xn = operator_norm(x);
    round_trip = std::max(round_trip, max_abs_diff(back, x) / (1.0 + xn));
    const auto res = f_limit_residuals(ctx, x, 10);
    for (std::size_t k = 1; k < res.size(); ++k)
      if (res[k] > res[k - 1] * (1.0 + 1e-12) + 1e-15) monotone = false;
    const double n = 1024.0;
    if (xn < n) rate_excess = std::max(rate_excess, res.back() - xn * xn / (n - xn));
    final_rel = std::max(final_rel, res.back() / (1.0 + xn));
    // elements of F are real positive
    const RealMatrix w = fr.value * 2.0;
    f_in_r = std::min(f_in_r, sym_margin(w));
  }
  v.checks.push_back(range_check("image in ½F: min 1 − ‖1 − 2F(x)‖", anchor, range_margin, 0, 1, 1e-9));
  v.checks.push_back(bool_check("image stays in the algebra", anchor, in_algebra));
  v.checks.push_back(range_check("inverse transform round trip", anchor, round_trip, 0, 0, 1e-9));
  v.checks.push_back(bool_check("‖n·F(x/n) − x‖ decreases for n = 1, 2, …, 1024", anchor, monotone));
  Check rate = range_check("residual at n = 1024 within the exact rate bound", anchor, rate_excess, -1e300, 0, 1e-12);
  rate.note = "max residual/(1 + ‖x‖) at n = 1024: " + fmt(final_rel);
  v.checks.push_back(std::move(rate));
  v.checks.push_back(range_check("F ⊂ r: min λmin(Re 2F(x))", anchor, f_in_r, 0, 2, 1e-9));

  // range: every w in the open unit ball with 2w ∈ F comes from some real positive x
  const ConeContext& ctx = ctxs.front();
  Rng rng = stream(seed, "f_transform_range", 1000);
  double preimage_margin = INFINITY, onto = 0.0;
  for (int i = 0; i < 200; ++i) {
    // w = (1 + c)/2 with ‖c‖ < 1 lies in ½F and in the open unit ball
    const RealMatrix c = random_with_norm(3, rng.uniform(0.0, 0.95), rng);
    const RealMatrix w = (ctx.one() + c) * 0.5;
    const RealMatrix x = f_transform_inverse(ctx, w);
    preimage_margin = std::min(preimage_margin, sym_margin(x) / (1.0 + operator_norm(x)));
    onto = std::max(onto, max_abs_diff(f_transform(ctx, x).value, w));
  }
  v.checks.push_back(range_check("preimage w(1 − w)⁻¹ is real positive", anchor, preimage_margin, 0, 1, 1e-9));
  v.checks.push_back(range_check("F(w(1 − w)⁻¹) = w", anchor, onto, 0, 0, 1e-9));
}

void srp_equiv(Verdict& v, std::uint64_t seed, const ToleranceConfig& tol) {
  const std::string anchor =
      "on an operator system: systematically real positive ⇔ positive and selfadjoint ⇔ extends positively "
      "and selfadjointly";
  int disagreements = 0, srp_count = 0;
  std::optional<RealMatrix> witness;
  for (int i = 0; i < 40; ++i) {
    Rng rng = stream(seed, "srp_equiv", i);
    const std::size_t k = 2 + rng.index(2);
    const Subspace s = random_unital_space(3, 3, true, rng);
    const ConeContext ctx = context("S", s, AlgebraKind::operator_system, tol);
    const LinearMap phi = restrict_map(random_cp_map(3, k, 2, rng), s);
    LinearMap t = phi;
    switch (i % 4) {
      case 1:
        t = LinearMap::from_function(s, k, [&](const RealMatrix& x) { return adjoint(phi(x)); });
        break;
      case 2: {
        const Subspace as = antisymmetric_part(s);
        const RealMatrix a = as.empty() ? RealMatrix(3) : as[0];
        const RealMatrix sigma = random_symmetric(k, rng);
        t = LinearMap::from_function(s, k, [&](const RealMatrix& x) { return phi(x) + sigma * inner(a, x); });
        break;
      }
      case 3: {
        const RealMatrix h = s.project(random_symmetric(3, rng));
        const RealMatrix tl = h - RealMatrix::identity(3) * (trace(h) / 3.0);
        const double mu = 3.0 * (1.0 + operator_norm(phi(RealMatrix::identity(3))));
        t = LinearMap::from_function(s, k, [&](const RealMatrix& x) {
          return phi(x) - RealMatrix::identity(k) * (mu * inner(tl, x) / (frobenius_norm(tl) + 1e-300));
        });
        break;
      }
      default: break;
    }
    const MapFlags f = classify_map(t, ctx, {1}, derive_seed(seed, "srp-flags", i), 200);
    bool extends = false;
    try {
      const SelfadjointExtension e = canonical_sa_extension(t, ctx, derive_seed(seed, "srp-ext", i));
      extends = e.selfadjoint && e.positive_sampled;
    } catch (const WellDefinednessError&) {
      extends = false;
    }
    const bool b = f.positive && f.selfadjoint;
    if (f.srp != b || b != extends || !f.equivalence_holds) {
      ++disagreements;
      if (!witness) witness = t.images.front();
    }
    srp_count += f.srp ? 1 : 0;
  }
  Check c = range_check("three conditions agree on 40 maps", anchor, disagreements, 0, 0, 0);
  c.witness = witness;
  c.note = std::to_string(srp_count) + " of 40 maps are systematically real positive";
  v.checks.push_back(std::move(c));
  v.checks.push_back(bool_check("both outcomes occur", anchor, srp_count > 0 && srp_count < 40));
}

void stinespring_roundtrip(Verdict& v, std::uint64_t seed, const ToleranceConfig& tol) {
  const std::string anchor = "completely positive T(a) = V*π(a)V with π a representation";
  double residual = 0.0, norm_gap = 0.0, dilation = 0.0, hom = 0.0;
  for (int i = 0; i < 50; ++i) {
    Rng rng = stream(seed, "stinespring_roundtrip", i);
    const std::size_t n = 1 + rng.index(4), k = 1 + rng.index(4);
    const LinearMap t = random_cp_map(n, k, 1 + static_cast<int>(rng.index(3)), rng);
    const Stinespring st = stinespring(t, tol);
    residual = std::max(residual, st.reconstruction_residual);
    norm_gap = std::max(norm_gap, st.norm_gap);
    const RealMatrix a = gaussian_matrix(n, rng), b = gaussian_matrix(n, rng);
    dilation = std::max(dilation, max_abs_diff(st.dilate(a), t(a)) / (1.0 + max_abs(t(a))));
    hom = std::max({hom, max_abs_diff(st.pi(a * b), st.pi(a) * st.pi(b)), max_abs_diff(st.pi(adjoint(a)), adjoint(st.pi(a)))});
  }
  v.checks.push_back(range_check("max reconstruction residual on matrix units (50 maps)", anchor, residual, 0, 0, 1e-8));
  v.checks.push_back(range_check("|‖V‖² − ‖T(1)‖|", anchor, norm_gap, 0, 0, 1e-6));
  v.checks.push_back(range_check("V*π(a)V = T(a) on random a", anchor, dilation, 0, 0, 1e-8));
  v.checks.push_back(range_check("π is a *-homomorphism", anchor, hom, 0, 0, 1e-12));
}

void transpose_not_cp(Verdict& v, std::uint64_t seed, const ToleranceConfig& tol) {
  const std::string anchor = "the transpose on M2 is a contractive Jordan homomorphism that is not completely positive";
  const ConeContext ctx = ConeContext::full(2, tol);
  const LinearMap t = transpose_map(2);
  const MapFlags f = classify_map(t, ctx, {1, 2}, derive_seed(seed, "transpose"), 200);
  const JordanHomReport j = jordan_hom_check(t, ctx, derive_seed(seed, "transpose-jordan"));
  v.checks.push_back(bool_check("positive", anchor, f.positive));
  v.checks.push_back(bool_check("selfadjoint", anchor, f.selfadjoint));
  v.checks.push_back(bool_check("Jordan homomorphism", anchor, j.jordan_hom));
  v.checks.push_back(bool_check("contractive", anchor, j.contractive));
  v.checks.push_back(bool_check("contractive Jordan homomorphism is selfadjoint and systematically real positive",
                                anchor, j.implication_holds));
  const double lmin = lambda_min(choi(t).matrix, tol);
  v.checks.push_back(range_check("Choi matrix minimum eigenvalue", anchor, lmin, -1, -1, 1e-9));
  Check cp = counterexample_check("completely positive", anchor, f.cp.value_or(true));
  v.checks.push_back(std::move(cp));
  Check two = counterexample_check("2-positive", anchor, f.levels.back().positive);
  two.witness = f.levels.back().psd_witness;
  v.checks.push_back(std::move(two));
  const auto norms = map_norms(t, {1, 2}, MapNormOptions{6, 200, derive_seed(seed, "transpose-norm")});
  v.checks.push_back(range_check("‖T‖ level 1", anchor, norms[0].value, 1, 1, 1e-4));
  Check n2 = range_check("‖T₂‖ level 2", anchor, norms[1].value, 2, 2, 1e-4);
  n2.witness = norms[1].maximizer;
  v.checks.push_back(std::move(n2));
}

void functional_states(Verdict& v, std::uint64_t seed, const ToleranceConfig& tol) {
  const std::string anchor = "a real positive functional is a nonnegative multiple of a state";
  int failures = 0, states = 0;
  double norm_gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    Rng rng = stream(seed, "functional_states", i);
    const std::size_t n = 2 + rng.index(2);
    const Subspace dom = i % 5 == 0 ? full_matrix_space(n) : random_unital_space(n, 2 + rng.index(2), i % 2 == 0, rng);
    const ConeContext ctx = context("X", dom, AlgebraKind::operator_space, tol);
    const RealMatrix g = random_psd(n, rng);
    const Functional phi(dom, g * rng.uniform(0.1, 3.0));
    const FunctionalFlags f = classify_functional(phi, ctx, derive_seed(seed, "fs", i), 200);
    if (!(f.real_positive && f.srp && f.chain_consistent)) ++failures;
    norm_gap = std::max(norm_gap, std::abs(f.norm.value - f.value_at_one) / (1.0 + f.value_at_one));
    const Functional unit(dom, phi.riesz * (1.0 / f.value_at_one));
    if (classify_functional(unit, ctx, derive_seed(seed, "fs-unit", i), 50).state) ++states;
  }
  v.checks.push_back(range_check("real positive ⇒ systematically real positive, chain consistent", anchor, failures, 0,
                                 0, 0));
  v.checks.push_back(range_check("|‖φ‖ − φ(1)|/(1 + φ(1))", anchor, norm_gap, 0, 0, 1e-6));
  v.checks.push_back(range_check("φ/φ(1) is a state", anchor, states, 100, 100, 0));

  const ConeContext m2 = ConeContext::full(2, tol);
  const RealMatrix p{{1, -3}, {1, 1}};
  for (double s : {0.0, 0.25, 0.6, 1.0}) {
    const std::string tag = " [s = " + fmt(s) + "]";
    const Functional phi = skew_positive_functional(s);
    const bool rp = classify_functional(phi, m2, derive_seed(seed, "skew", std::uint64_t(s * 100)), 200).real_positive;
    if (s == 0.0) v.checks.push_back(bool_check("skew family real positive" + tag, anchor, rp));
    else v.checks.push_back(counterexample_check("skew family real positive" + tag, anchor, rp));
    v.checks.push_back(range_check("φ_s on the real positive −3 matrix equals 2 − 4s" + tag, anchor, phi(p), 2 - 4 * s,
                                   2 - 4 * s, 1e-12));
  }
}

void commutative_target(Verdict& v, std::uint64_t seed, const ToleranceConfig& tol) {
  const std::string anchor = "real positive maps into a commutative real C*-algebra have ‖T‖ = ‖T(1)‖";
  double gap = 0.0;
  int bad_flags = 0;
  for (int i = 0; i < 20; ++i) {
    Rng rng = stream(seed, "commutative_target", i);
    const Subspace dom = random_unital_space(3, 2, i % 2 == 0, rng);
    const ConeContext ctx = context("X", dom, AlgebraKind::operator_space, tol);
    std::vector<RealMatrix> g;
    for (int r = 0; r < 4; ++r) {
      const RealMatrix p = random_psd(3, rng, 1 + rng.index(3));
      g.push_back(p * rng.uniform(0.1, 1.0));
    }
    const LinearMap t = LinearMap::from_function(dom, 4, [&](const RealMatrix& x) {
      RealMatrix out(4);
      for (std::size_t r = 0; r < 4; ++r) out(r, r) = inner(g[r], x);
      return out;
    });
    const MapFlags f = classify_map(t, ctx, {1}, derive_seed(seed, "ct-flags", i), 100);
    if (!(f.real_positive && f.selfadjoint)) ++bad_flags;
    const auto cert = map_norm(t, 1, MapNormOptions{6, 200, derive_seed(seed, "ct-norm", i)});
    const double at_one = operator_norm(t(ctx.one()));
    gap = std::max(gap, std::abs(cert.value - at_one));
  }
  v.checks.push_back(range_check("maps are real positive and selfadjoint on the diagonal", anchor, bad_flags, 0, 0, 0));
  v.checks.push_back(range_check("max |‖T‖ − ‖T(1)‖| over 20 maps into diagonal M4", anchor, gap, 0, 0, 1e-4));
}

void schwarz(Verdict& v, std::uint64_t seed, const ToleranceConfig&) {
  const std::string anchor = "unital 2-positive maps satisfy Φ(a*a) ≥ Φ(a)*Φ(a)";
  double margin = INFINITY;
  int skipped = 0;
  for (int i = 0; i < 12; ++i) {
    Rng rng = stream(seed, "schwarz", i);
    const std::size_t n = i % 3 == 2 ? 3 : 2 + rng.index(2);
    LinearMap phi = random_unital_cp(n, 1 + static_cast<int>(rng.index(3)), rng);
    if (i % 3 == 2) {
      // block-diagonal C*-subalgebra M1 ⊕ M2 of M3
      std::vector<RealMatrix> g{RealMatrix::unit(3, 0, 0)};
      for (std::size_t a = 1; a < 3; ++a)
        for (std::size_t b = 1; b < 3; ++b) g.push_back(RealMatrix::unit(3, a, b));
      phi = restrict_map(phi, orthonormal_basis(g).with_identity(RealMatrix::identity(3)));
    }
    const SchwarzReport r = schwarz_check(phi, 200, derive_seed(seed, "schwarz-samples", i));
    if (r.skipped) ++skipped;
    else margin = std::min(margin, r.min_margin);
  }
  v.checks.push_back(range_check("maps examined (12 unital CP maps)", anchor, 12 - skipped, 12, 12, 0));
  v.checks.push_back(range_check("min λmin(Φ(a*a) − Φ(a)*Φ(a))", anchor, margin, 0, 1e300, 1e-8));
}

void extension_suite(Verdict& v, std::uint64_t seed, const ToleranceConfig&) {
  const std::string pos_anchor = "real positive functionals extend to positive selfadjoint functionals of the same norm";
  const std::string cp_anchor = "completely positive maps on operator systems extend completely positively";
  double pos_res = 0.0, pos_lmin = INFINITY, pos_trace = 0.0;
  int pos_fail = 0;
  for (int i = 0; i < 50; ++i) {
    Rng rng = stream(seed, "extension_positive", i);
    const std::size_t n = 2 + rng.index(3);
    const Subspace dom = random_unital_space(n, 1 + rng.index(3), i % 2 == 0, rng);
    const RealMatrix g = random_psd(n, rng, 1 + rng.index(n));
    const Functional phi(dom, g * rng.uniform(0.1, 2.0));
    try {
      const PositiveExtension e = extend_positive(phi);
      pos_res = std::max(pos_res, e.constraint_residual);
      pos_lmin = std::min(pos_lmin, e.lambda_min);
      pos_trace = std::max(pos_trace, std::abs(trace(e.g) - phi(RealMatrix::identity(n))));
    } catch (const ConvergenceError&) {
      ++pos_fail;
    }
  }
  v.checks.push_back(range_check("positive extension: non-converged instances (of 50)", pos_anchor, pos_fail, 0, 0, 0));
  v.checks.push_back(range_check("positive extension: max constraint residual", pos_anchor, pos_res, 0, 0, 1e-6));
  v.checks.push_back(range_check("positive extension: min λmin(G)", pos_anchor, pos_lmin, 0, 1e300, 1e-6));
  v.checks.push_back(range_check("positive extension: |tr G − φ(1)|", pos_anchor, pos_trace, 0, 0, 1e-6));

  double cp_res = 0.0, cp_lmin = INFINITY;
  int cp_fail = 0;
  for (int i = 0; i < 50; ++i) {
    Rng rng = stream(seed, "extension_cp", i);
    const std::size_t n = 2 + rng.index(2), k = 2 + rng.index(2);
    const Subspace s = random_unital_space(n, 2 + rng.index(2), true, rng);
    const LinearMap t = restrict_map(random_cp_map(n, k, 2, rng), s);
    try {
      const CpExtension e = extend_cp(t);
      cp_res = std::max(cp_res, e.restriction_residual);
      cp_lmin = std::min(cp_lmin, e.lambda_min);
    } catch (const ConvergenceError&) {
      ++cp_fail;
    }
  }
  v.checks.push_back(range_check("CP extension: non-converged instances (of 50)", cp_anchor, cp_fail, 0, 0, 0));
  v.checks.push_back(range_check("CP extension: max restriction residual", cp_anchor, cp_res, 0, 0, 1e-6));
  v.checks.push_back(range_check("CP extension: min λmin(Choi)", cp_anchor, cp_lmin, 0, 1e300, 1e-6));
}

struct Entry {
  const char* description;
  Scenario run;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r{
      {"block_positivity", {"500 random complex matrices: block-embedding positivity vs Hermitian spectrum", block_positivity}},
      {"brord_suite", {"order structure of unital algebras: domination, common bounds, b = x − y, generating cone", brord_suite}},
      {"commutative_target", {"real positive maps into diagonal M4 attain their norm at 1", commutative_target}},
      {"expoly", {"polynomial map into the disc algebra: contractive, unital, not selfadjoint, dimension jump", expoly}},
      {"extension_suite", {"positive and CP extensions on 50 random subsystems each", extension_suite}},
      {"f_transform_range", {"x(1 + x)⁻¹ on 200 real positive elements: range, inverse, limit rate", f_transform_range}},
      {"functional_states", {"real positive functionals are multiples of states; skew family fails", functional_states}},
      {"meyer_invariance", {"span{E12} in two representations: equal unitization norms", meyer_invariance}},
      {"minus3_functional", {"skew functionals on M2: positive, not selfadjoint, value −2 at the −3 matrix", minus3_functional}},
      {"schwarz", {"Schwarz inequality for random unital CP maps", schwarz}},
      {"spin_hilbert", {"spin systems k = 2, 3, 4 span Hilbert spaces isometrically", spin_hilbert}},
      {"srp_equiv", {"systematic real positivity vs positive and selfadjoint on operator systems", srp_equiv}},
      {"stinespring_roundtrip", {"50 random CP maps rebuilt from their dilation", stinespring_roundtrip}},
      {"theta_T", {"positive unital selfadjoint maps with norm ≥ M, not 2-positive", theta_t}},
      {"transpose_not_cp", {"transpose on M2: positive Jordan homomorphism, Choi eigenvalue −1, ‖T₂‖ = 2", transpose_not_cp}},
      {"triangle_eq3", {"triangle algebra norm formula vs direct norm on 500 elements", triangle_eq3}},
      {"unitization_formula", {"unitizations of algebras with an internal unit", unitization_formula}},
  };
  return r;
}

}  // namespace

std::vector<ScenarioInfo> list_scenarios() {
  std::vector<ScenarioInfo> out;
  for (const auto& [name, e] : registry()) out.push_back({name, e.description});
  return out;
}

Verdict run_scenario(const std::string& name, std::uint64_t seed, const ToleranceConfig& tol) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end()) throw UnknownScenario("unknown scenario '" + name + "'");
  tol.validate();
  Verdict v;
  v.scenario = name;
  v.seed = seed;
  v.tol = tol;
  it->second.run(v, seed, tol);
  finalize(v);
  return v;
}

std::vector<Verdict> run_all(std::uint64_t seed, const ToleranceConfig& tol) {
  std::vector<std::future<Verdict>> jobs;
  for (const auto& s : list_scenarios())
    jobs.push_back(std::async(std::launch::async, [name = s.name, seed, tol] { return run_scenario(name, seed, tol); }));
  std::vector<Verdict> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace roal
