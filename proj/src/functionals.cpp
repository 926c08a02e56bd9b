#include "roal/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace roal {

namespace {

bool is_full(const Subspace& s) { return s.size() == s.ambient_dim() * s.ambient_dim(); }

// Point of X with operator norm ≤ 1, obtained by projecting onto X and rescaling.
RealMatrix feasible(const Subspace& x, const RealMatrix& y) {
  RealMatrix p = x.project(y);
  const double n = operator_norm(p);
  if (n > 1.0) p *= 1.0 / n;
  return p;
}

}  // namespace

Functional::Functional(Subspace domain_, RealMatrix riesz_) : domain(std::move(domain_)), riesz(std::move(riesz_)) {
  if (!riesz.is_square() || riesz.rows() != domain.ambient_dim())
    throw DimensionError("Functional: Riesz matrix must match the domain's ambient dimension");
  if (!riesz.all_finite()) throw std::invalid_argument("Functional: non-finite Riesz matrix");
}

Functional Functional::from_basis_values(Subspace domain, std::span<const double> values) {
  RealMatrix f = domain.combine(values);
  return Functional(std::move(domain), std::move(f));
}

RealMatrix project_subspace_ball(const Subspace& x, const RealMatrix& y, double radius, int max_iterations) {
  const std::size_t n = x.ambient_dim();
  RealMatrix cur = y, p(n), q(n);
  RealMatrix b = y;
  for (int it = 0; it < max_iterations; ++it) {
    const RealMatrix a = x.project(cur + p);
    p = cur + p - a;
    b = clip_to_ball(a + q, radius);
    q = a + q - b;
    const double change = frobenius_norm(b - cur);
    cur = b;
    if (frobenius_norm(a - b) <= 1e-13 * (1.0 + frobenius_norm(y)) && change <= 1e-13 * (1.0 + frobenius_norm(y)))
      break;
  }
  return b;
}

LinearMaximum maximize_linear(std::span<const double> f, const std::vector<NormBallConstraint>& cs,
                              std::span<const double> start, int max_iterations, double tol) {
  const std::size_t d = f.size();
  if (start.size() != d) throw DimensionError("maximize_linear: start has the wrong length");
  for (const auto& c : cs)
    if (c.images.size() != d || !(c.radius > 0.0))
      throw DimensionError("maximize_linear: constraint images must match the coordinates, radius > 0");
  // Q = Σ KⱼᵀKⱼ; ‖K‖² = λmax(Q) bounds the step sizes and Q⁻¹ repairs the dual.
  RealMatrix q(d);
  for (const auto& c : cs)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) q(i, j) += inner(c.images[i], c.images[j]);
  const RealMatrix q_inv = inverse(q);
  const double k_norm = std::sqrt(lambda_max(q));
  double f_norm = 0.0, r_min = INFINITY;
  for (double v : f) f_norm += v * v;
  f_norm = std::sqrt(f_norm);
  for (const auto& c : cs) r_min = std::min(r_min, c.radius);

  const auto apply = [&](const NormBallConstraint& c, std::span<const double> x) {
    RealMatrix m(c.images.front().rows(), c.images.front().cols());
    for (std::size_t i = 0; i < d; ++i) m += c.images[i] * x[i];
    return m;
  };
  const auto adjoint_sum = [&](const std::vector<RealMatrix>& ys) {
    std::vector<double> out(d, 0.0);
    for (std::size_t j = 0; j < cs.size(); ++j)
      for (std::size_t i = 0; i < d; ++i) out[i] += inner(cs[j].images[i], ys[j]);
    return out;
  };
  const auto feasible_scale = [&](std::span<const double> x) {
    double worst = 0.0;
    for (const auto& c : cs) worst = std::max(worst, operator_norm(apply(c, x)) / c.radius);
    return worst > 1.0 ? 1.0 / worst : 1.0;
  };
  const auto objective = [&](std::span<const double> x) {
    double v = 0.0;
    for (std::size_t i = 0; i < d; ++i) v += f[i] * x[i];
    return v;
  };

  LinearMaximum best{std::vector<double>(start.begin(), start.end()), 0.0, INFINITY, 0};
  {
    const double sc = feasible_scale(best.point);
    for (double& v : best.point) v *= sc;
    best.value = objective(best.point);
  }
  if (d == 0 || f_norm == 0.0 || cs.empty()) {
    best.upper_bound = best.value;
    return best;
  }
  const double omega = f_norm / r_min;
  const double tau = 0.99 / (k_norm * omega), sigma = 0.99 * omega / k_norm;
  std::vector<double> c = best.point, bar = c;
  std::vector<RealMatrix> y;
  for (const auto& con : cs) y.emplace_back(con.images.front().rows(), con.images.front().cols());
  for (int it = 1; it <= max_iterations; ++it) {
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const RealMatrix v = y[j] + apply(cs[j], bar) * sigma;
      y[j] = v - clip_to_ball(v * (1.0 / sigma), cs[j].radius) * sigma;
    }
    const std::vector<double> ky = adjoint_sum(y);
    for (std::size_t i = 0; i < d; ++i) {
      const double old = c[i];
      c[i] = old - tau * (ky[i] - f[i]);
      bar[i] = 2.0 * c[i] - old;
    }
    best.iterations = it;
    if (it % 10 != 0 && it != max_iterations) continue;
    std::vector<double> p = c;
    const double sc = feasible_scale(p);
    for (double& v : p) v *= sc;
    const double val = objective(p);
    if (val > best.value) {
      best.value = val;
      best.point = std::move(p);
    }
    // dual certificate: Yⱼ = yⱼ + Kⱼ Q⁻¹ (f − Σ Kⱼᵀ yⱼ) satisfies Σ KⱼᵀYⱼ = f exactly
    std::vector<double> rho(d), corr(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) rho[i] = f[i] - ky[i];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) corr[i] += q_inv(i, j) * rho[j];
    double dual = 0.0;
    for (std::size_t j = 0; j < cs.size(); ++j) dual += cs[j].radius * nuclear_norm(y[j] + apply(cs[j], corr));
    best.upper_bound = std::min(best.upper_bound, dual);
    if (best.upper_bound - best.value <= tol * (1.0 + std::abs(best.value))) break;
  }
  return best;
}

NormCertificate functional_norm(const Functional& phi, const FunctionalNormOptions& opts) {
  NormCertificate cert;
  cert.seed = opts.seed;
  const Subspace& x = phi.domain;
  const std::size_t n = x.ambient_dim();
  cert.maximizer = RealMatrix(n);
  const RealMatrix fs = phi.restricted_riesz();
  if (x.empty() || frobenius_norm(fs) == 0.0) return cert;
  cert.upper_bound = std::min(nuclear_norm(fs), nuclear_norm(phi.riesz));
  if (is_full(x)) cert.nuclear_oracle = nuclear_norm(fs);

  if (is_full(x)) {
    // clip_to_ball of a huge multiple of F is its polar factor, the exact maximizer
    cert.maximizer = polar_factor(fs);
    cert.value = inner(fs, cert.maximizer);
    cert.upper_bound = std::min(cert.upper_bound, *cert.nuclear_oracle);
    cert.restarts = 1;
  } else {
    std::vector<RealMatrix> starts{polar_factor(fs)};
    Rng rng(opts.seed);
    for (int r = 0; r < opts.restarts; ++r) {
      std::vector<double> c(x.size());
      for (double& v : c) v = rng.normal();
      starts.push_back(x.combine(c));
    }
    const std::vector<NormBallConstraint> ball{{x.basis(), 1.0}};
    const std::vector<double> f = x.coordinates(fs);
    cert.value = -INFINITY;
    for (const auto& s : starts) {
      const auto m = maximize_linear(f, ball, x.coordinates(feasible(x, s)), opts.max_iterations, opts.convergence);
      ++cert.restarts;
      cert.upper_bound = std::min(cert.upper_bound, m.upper_bound);
      if (m.value > cert.value) {
        cert.value = m.value;
        cert.maximizer = x.combine(m.point);
      }
    }
  }
  cert.gap_estimate = std::max(0.0, cert.upper_bound - cert.value);
  return cert;
}

FunctionalFlags classify_functional(const Functional& phi, const ConeContext& ctx, std::uint64_t seed,
                                    std::size_t samples) {
  const Subspace& x = phi.domain;
  if (x.ambient_dim() != ctx.dim()) throw DimensionError("classify_functional: context dimension mismatch");
  const RealMatrix& one = ctx.one();
  if (!member(x, one).member) throw std::invalid_argument("classify_functional: domain does not contain the identity");
  FunctionalFlags f;
  f.seed = seed;
  f.samples = samples;
  const RealMatrix fs = phi.restricted_riesz();
  const double scale = frobenius_norm(fs);
  const double tol = 1e-9;
  const auto normalized = [&](const RealMatrix& m) {
    const double mn = frobenius_norm(m);
    return (scale == 0.0 || mn == 0.0) ? 0.0 : phi(m) / (scale * mn);
  };

  f.value_at_one = phi(one);
  FunctionalNormOptions no;
  no.seed = derive_seed(seed, "functional-norm");
  f.norm = functional_norm(phi, no);

  const Subspace diag = diagonal(x);
  const Subspace diag_sa = selfadjoint_part(diag);
  const Subspace diag_as = antisymmetric_part(diag);
  for (const auto& a : diag_as.basis()) f.antisymmetric_leak = std::max(f.antisymmetric_leak, std::abs(phi(a)));
  f.selfadjoint = f.antisymmetric_leak <= tol * (1.0 + scale);

  Rng rng(derive_seed(seed, "functional-samples"));
  f.min_psd_value = normalized(one);
  f.min_real_positive_value = normalized(one);
  for (const auto& a : diag_as.basis()) {
    f.min_real_positive_value = std::min({f.min_real_positive_value, normalized(a), normalized(-a)});
  }
  for (std::size_t s = 0; s < samples; ++s) {
    f.min_psd_value = std::min(f.min_psd_value, normalized(sample_psd_element(diag_sa, one, rng)));
    f.min_real_positive_value =
        std::min(f.min_real_positive_value, normalized(sample_real_positive_element(x, one, rng)));
  }
  if (is_full(x)) {
    // On M_n: positive ⇔ sym(F) ≥ 0; real positive ⇔ additionally skew(F) = 0.
    f.positivity_exact = f.real_positivity_exact = true;
    f.positive = is_psd(sym_part(fs), ctx.tol());
    f.real_positive = f.positive && max_abs(skew_part(fs)) <= tol * (1.0 + scale);
  } else {
    f.positive = f.min_psd_value >= -tol;
    f.real_positive = f.min_real_positive_value >= -tol;
  }
  f.srp = f.real_positive && f.selfadjoint;
  const double ntol = 1e-6 * (1.0 + std::abs(f.norm.value));
  f.state = std::abs(f.value_at_one - 1.0) <= 1e-6 && std::abs(f.norm.value - 1.0) <= 1e-6;
  const double exact_norm = f.norm.nuclear_oracle.value_or(f.norm.value);
  f.norm_equals_value_at_one = std::abs(exact_norm - f.value_at_one) <= ntol;
  f.chain_consistent = f.real_positive == f.srp && f.srp == f.norm_equals_value_at_one;
  return f;
}

Functional skew_positive_functional(double s) {
  return Functional(full_matrix_space(2), RealMatrix{{1.0, s}, {-s, 1.0}});
}

AffineConstraints::AffineConstraints(std::vector<RealMatrix> normals, std::vector<double> values)
    : a(std::move(normals)), targets(std::move(values)) {
  if (a.size() != targets.size()) throw DimensionError("AffineConstraints: normals and targets differ in length");
  double scale = 0.0;
  for (const auto& m : a) scale = std::max(scale, frobenius_norm(m));
  for (std::size_t k = 0; k < a.size(); ++k) {
    RealMatrix r = a[k];
    double t = targets[k];
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < q.size(); ++i) {
        const double c = inner(q[i], r);
        r -= q[i] * c;
        t -= c * tau[i];
      }
    const double rn = frobenius_norm(r);
    if (rn <= 1e-10 * scale) continue;
    q.push_back(r * (1.0 / rn));
    tau.push_back(t / rn);
  }
}

RealMatrix AffineConstraints::project(const RealMatrix& g) const {
  RealMatrix out = g;
  for (std::size_t i = 0; i < q.size(); ++i) out -= q[i] * (inner(q[i], g) - tau[i]);
  return out;
}

double AffineConstraints::residual(const RealMatrix& g) const {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(inner(a[k], g) - targets[k]));
  return worst;
}

DykstraResult dykstra_psd_affine(const AffineConstraints& c, const RealMatrix& start, int max_iterations, double tol,
                                 const ToleranceConfig& tc) {
  const std::size_t n = start.dim();
  RealMatrix cur = start, p(n), q(n);
  DykstraResult r{clip_to_psd(start, tc), 0.0, 0, false};
  for (int it = 1; it <= max_iterations; ++it) {
    const RealMatrix y = c.project(cur + p);
    p = cur + p - y;
    RealMatrix z = clip_to_psd(y + q, tc);
    q = y + q - z;
    cur = z;
    r.iterations = it;
    if (it % 10 == 0 || it == max_iterations) {
      r.residual = c.residual(z);
      r.point = z;
      if (r.residual <= tol) {
        r.converged = true;
        return r;
      }
    }
  }
  r.residual = c.residual(r.point);
  return r;
}

DykstraResult barrier_psd_affine(const AffineConstraints& c, std::size_t dim, double tol,
                                 const ToleranceConfig& tc) {
  const std::size_t m = dim;
  // G = G₀ + Σ zⱼNⱼ with G₀ the least-norm point of the affine set and Nⱼ an
  // orthonormal basis of the symmetric matrices orthogonal to every normal.
  const RealMatrix g0 = c.project(RealMatrix(m));
  std::vector<RealMatrix> dirs;
  {
    std::vector<RealMatrix> basis = c.q;
    const auto add = [&](RealMatrix r) {
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) r -= b * inner(b, r);
      const double rn = frobenius_norm(r);
      if (rn <= 1e-8) return;
      r *= 1.0 / rn;
      basis.push_back(r);
      dirs.push_back(std::move(r));
    };
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        RealMatrix e(m);
        const double w = i == j ? 1.0 : 1.0 / std::sqrt(2.0);
        e(i, j) = w;
        e(j, i) = w;
        add(std::move(e));
      }
  }
  // maximize t + μ log det(G(z) − tI) over (z, t) for decreasing μ
  const std::size_t p = dirs.size() + 1;
  dirs.push_back(-RealMatrix::identity(m));
  const double scale = std::max(1.0, frobenius_norm(g0));
  std::vector<double> v(p, 0.0);
  v[p - 1] = lambda_min(sym_part(g0), tc) - 1e-3 * scale;
  const auto assemble = [&](const std::vector<double>& x) {
    RealMatrix g = g0;
    for (std::size_t j = 0; j < p; ++j) g += dirs[j] * x[j];
    return g;
  };
  const auto objective = [&](const std::vector<double>& x, double mu, bool& ok) {
    const RealMatrix mm = sym_part(assemble(x));
    const auto e = sym_eig(mm, tc);
    ok = e.values.back() > 0.0;
    if (!ok) return -std::numeric_limits<double>::infinity();
    double logdet = 0.0;
    for (double l : e.values) logdet += std::log(l);
    return x[p - 1] + mu * logdet;
  };
  DykstraResult r{clip_to_psd(g0, tc), c.residual(g0), 0, false, "barrier"};
  int newton_steps = 0;
  for (double mu = scale; mu > 1e-15 * scale; mu *= 0.2) {
    for (int it = 0; it < 100; ++it) {
      ++newton_steps;
      const RealMatrix w = inverse(sym_part(assemble(v)));
      std::vector<RealMatrix> wd(p);
      for (std::size_t j = 0; j < p; ++j) wd[j] = w * dirs[j] * w;
      std::vector<double> grad(p);
      RealMatrix hess(p);
      for (std::size_t i = 0; i < p; ++i) {
        grad[i] = mu * inner(w, dirs[i]);
        for (std::size_t j = i; j < p; ++j) hess(i, j) = hess(j, i) = mu * inner(wd[i], dirs[j]);
      }
      grad[p - 1] += 1.0;
      // ascent direction: hess·Δ = grad (hess is −∇²f, positive definite)
      RealMatrix rhs(p, 1);
      for (std::size_t i = 0; i < p; ++i) rhs(i, 0) = grad[i];
      const RealMatrix delta = solve(hess, rhs);
      double decrement = 0.0;
      for (std::size_t i = 0; i < p; ++i) decrement += grad[i] * delta(i, 0);
      if (!(decrement > 1e-12 * mu)) break;
      bool ok = false;
      const double f0 = objective(v, mu, ok);
      double step = 1.0;
      std::vector<double> trial(p);
      for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
        for (std::size_t i = 0; i < p; ++i) trial[i] = v[i] + step * delta(i, 0);
        const double f1 = objective(trial, mu, ok);
        if (ok && f1 >= f0 + 0.25 * step * decrement) break;
        ok = false;
      }
      if (!ok) break;
      v = trial;
    }
    if (v[p - 1] >= 0.0) break;  // strictly feasible
  }
  v[p - 1] = 0.0;
  const RealMatrix g = sym_part(assemble(v));
  const RealMatrix clipped = clip_to_psd(g, tc);
  r.point = clipped;
  r.residual = c.residual(clipped);
  r.iterations = newton_steps;
  r.converged = r.residual <= tol;
  return r;
}

DykstraResult solve_psd_affine(const AffineConstraints& c, std::size_t dim, int max_iterations, double tol,
                               const ToleranceConfig& tc) {
  DykstraResult d = dykstra_psd_affine(c, RealMatrix(dim), max_iterations, tol, tc);
  if (d.converged) return d;
  DykstraResult b = barrier_psd_affine(c, dim, tol, tc);
  b.iterations += d.iterations;
  return b.converged ? b : d;
}

PositiveExtension extend_positive(const Functional& phi, int max_iterations) {
  const Subspace& x = phi.domain;
  const std::size_t n = x.ambient_dim();
  const RealMatrix one = x.identity() ? *x.identity() : RealMatrix::identity(n);
  if (!member(x, one).member) throw std::invalid_argument("extend_positive: domain is not unital");
  const double target = phi(one);
  if (target < -1e-9) throw std::invalid_argument("extend_positive: φ(1) < 0, functional is not real positive");

  std::vector<RealMatrix> normals;
  std::vector<double> values;
  // For symmetric G, ⟨G, b⟩ = ⟨G, sym(b)⟩; an antisymmetric b then forces φ(b) = 0.
  for (const auto& b : x.basis()) {
    normals.push_back(sym_part(b));
    values.push_back(phi(b));
  }
  // tr(G) = φ(1): the norm of a positive functional on M_n is its trace
  normals.push_back(RealMatrix::identity(n));
  values.push_back(target);
  const AffineConstraints c(normals, values);
  auto d = solve_psd_affine(c, n, max_iterations, 1e-7);
  if (!d.converged)
    throw ConvergenceError("extend_positive: no positive extension found after " + std::to_string(d.iterations) +
                           " iterations (residual " + std::to_string(d.residual) +
                           "); a positive extension exists for real positive φ, so this is a numerical failure");
  const double lmin = lambda_min(sym_part(d.point));
  RealMatrix g = d.point;
  return {Functional(full_matrix_space(n), g), g, d.residual, lmin, target, d.iterations, d.method};
}

}  // namespace roal
