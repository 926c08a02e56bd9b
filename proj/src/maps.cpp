#include "roal/maps.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace roal {

namespace {

bool is_full(const Subspace& s) { return s.size() == s.ambient_dim() * s.ambient_dim(); }

RealMatrix block(const RealMatrix& x, std::size_t n, std::size_t i, std::size_t j) {
  RealMatrix b(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) b(r, c) = x(i * n + r, j * n + c);
  return b;
}

void put_block(RealMatrix& x, const RealMatrix& b, std::size_t i, std::size_t j) {
  const std::size_t n = b.rows();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) x(i * n + r, j * n + c) = b(r, c);
}

double image_scale(const LinearMap& t) {
  double s = 0.0;
  for (const auto& m : t.images) s = std::max(s, frobenius_norm(m));
  return s;
}

// Smallest eigenvalue of the symmetric part, penalized by any antisymmetric
// part, relative to the size of m: ≥ 0 exactly when m is PSD.
double psd_margin(const RealMatrix& m) {
  const double skew = max_abs(skew_part(m));
  return std::min(lambda_min(sym_part(m)), -skew) / (1.0 + operator_norm(m));
}

double real_positive_margin(const RealMatrix& m) { return lambda_min(sym_part(m)) / (1.0 + operator_norm(m)); }

struct DiagonalParts {
  Subspace sa;
  Subspace as;
};

// Selfadjoint and antisymmetric parts of M_k(Δ(X)).
DiagonalParts amplified_diagonal_parts(const Subspace& x, std::size_t k) {
  const Subspace d = diagonal(x);
  const Subspace ds = selfadjoint_part(d), da = antisymmetric_part(d);
  const std::size_t n = x.ambient_dim();
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<RealMatrix> sa, as;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& s : ds.basis()) sa.push_back(kron(RealMatrix::unit(k, i, i), s));
    for (const auto& a : da.basis()) as.push_back(kron(RealMatrix::unit(k, i, i), a));
    for (std::size_t j = i + 1; j < k; ++j) {
      const RealMatrix plus = (RealMatrix::unit(k, i, j) + RealMatrix::unit(k, j, i)) * r;
      const RealMatrix minus = (RealMatrix::unit(k, i, j) - RealMatrix::unit(k, j, i)) * r;
      for (const auto& s : ds.basis()) {
        sa.push_back(kron(plus, s));
        as.push_back(kron(minus, s));
      }
      for (const auto& a : da.basis()) {
        sa.push_back(kron(minus, a));
        as.push_back(kron(plus, a));
      }
    }
  }
  return {Subspace(k * n, std::move(sa)), Subspace(k * n, std::move(as))};
}

}  // namespace

LinearMap::LinearMap(Subspace domain_, std::size_t codomain_dim_, std::vector<RealMatrix> images_)
    : domain(std::move(domain_)), codomain_dim(codomain_dim_), images(std::move(images_)) {
  if (images.size() != domain.size())
    throw DimensionError("LinearMap: " + std::to_string(images.size()) + " images for a domain of dimension " +
                         std::to_string(domain.size()));
  for (const auto& m : images) {
    if (m.rows() != codomain_dim || m.cols() != codomain_dim)
      throw DimensionError("LinearMap: image is not " + std::to_string(codomain_dim) + "x" +
                           std::to_string(codomain_dim));
    if (!m.all_finite()) throw std::invalid_argument("LinearMap: non-finite image");
  }
}

LinearMap LinearMap::from_function(Subspace domain, std::size_t codomain_dim,
                                   const std::function<RealMatrix(const RealMatrix&)>& f) {
  std::vector<RealMatrix> images;
  images.reserve(domain.size());
  for (const auto& b : domain.basis()) images.push_back(f(b));
  return LinearMap(std::move(domain), codomain_dim, std::move(images));
}

RealMatrix LinearMap::operator()(const RealMatrix& x) const {
  const auto m = member(domain, x);
  if (!m.member)
    throw NotInDomain("apply: input is not in the domain (residual " + std::to_string(m.residual) + ")", m.residual);
  return apply_coordinates(domain.coordinates(x));
}

RealMatrix LinearMap::apply_coordinates(std::span<const double> coords) const {
  if (coords.size() != images.size()) throw DimensionError("apply_coordinates: wrong number of coordinates");
  RealMatrix out(codomain_dim);
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0.0) out += images[i] * coords[i];
  return out;
}

RealMatrix LinearMap::adjoint_apply(const RealMatrix& w) const {
  if (w.rows() != codomain_dim || w.cols() != codomain_dim) throw DimensionError("adjoint_apply: wrong size");
  std::vector<double> c(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) c[i] = inner(images[i], w);
  return domain.combine(c);
}

RealMatrix apply(const LinearMap& t, const RealMatrix& x) { return t(x); }

LinearMap identity_map(const Subspace& x) { return LinearMap(x, x.ambient_dim(), x.basis()); }

LinearMap transpose_map(std::size_t n) {
  return LinearMap::from_function(full_matrix_space(n), n, [](const RealMatrix& x) { return adjoint(x); });
}

LinearMap conjugation_map(const std::vector<RealMatrix>& v) {
  if (v.empty()) throw std::invalid_argument("conjugation_map: no operators");
  const std::size_t k = v.front().rows(), n = v.front().cols();
  for (const auto& a : v)
    if (a.rows() != k || a.cols() != n) throw DimensionError("conjugation_map: operators differ in shape");
  return LinearMap::from_function(full_matrix_space(n), k, [&](const RealMatrix& x) {
    RealMatrix out(k);
    for (const auto& a : v) out += a * x * adjoint(a);
    return out;
  });
}

LinearMap restrict_map(const LinearMap& t, const Subspace& s) {
  if (s.ambient_dim() != t.domain.ambient_dim()) throw DimensionError("restrict_map: ambient dimensions differ");
  return LinearMap::from_function(s, t.codomain_dim, [&](const RealMatrix& b) { return t(b); });
}

LinearMap scale_map(const LinearMap& t, double c) {
  std::vector<RealMatrix> im;
  for (const auto& m : t.images) im.push_back(m * c);
  return LinearMap(t.domain, t.codomain_dim, std::move(im));
}

LinearMap add_maps(const LinearMap& a, const LinearMap& b) {
  if (a.codomain_dim != b.codomain_dim || a.domain.ambient_dim() != b.domain.ambient_dim())
    throw DimensionError("add_maps: shapes differ");
  // b is evaluated on a's basis, so b's domain must contain a's
  return LinearMap::from_function(a.domain, a.codomain_dim, [&](const RealMatrix& x) { return a(x) + b(x); });
}

Subspace amplify_subspace(const Subspace& x, std::size_t k) {
  if (k == 0) throw std::invalid_argument("amplify_subspace: level must be ≥ 1");
  if (k == 1) return x;
  std::vector<RealMatrix> basis;
  basis.reserve(k * k * x.size());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (const auto& b : x.basis()) basis.push_back(kron(RealMatrix::unit(k, i, j), b));
  Subspace out(k * x.ambient_dim(), std::move(basis));
  if (x.identity()) out = out.with_identity(kron(RealMatrix::identity(k), *x.identity()));
  return out;
}

Subspace amplified_selfadjoint_diagonal(const Subspace& x, std::size_t k) {
  return amplified_diagonal_parts(x, k).sa;
}

LinearMap amplify(const LinearMap& t, std::size_t k) {
  if (k == 1) return t;
  std::vector<RealMatrix> images;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (const auto& m : t.images) images.push_back(kron(RealMatrix::unit(k, i, j), m));
  return LinearMap(amplify_subspace(t.domain, k), k * t.codomain_dim, std::move(images));
}

RealMatrix apply_blocks(const LinearMap& t, const RealMatrix& x) {
  const std::size_t n = t.domain.ambient_dim();
  if (!x.is_square() || n == 0 || x.rows() % n != 0) throw DimensionError("apply_blocks: size is not a multiple");
  const std::size_t k = x.rows() / n;
  RealMatrix out(k * t.codomain_dim);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) put_block(out, t(block(x, n, i, j)), i, j);
  return out;
}

namespace {

// Coordinates of x ∈ M_k(X) in the basis E_ij ⊗ b_l, ordered (i, j, l).
std::vector<double> block_coordinates(const Subspace& x, std::size_t k, const RealMatrix& m) {
  const std::size_t n = x.ambient_dim(), d = x.size();
  std::vector<double> c(k * k * d);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const auto cij = x.coordinates(block(m, n, i, j));
      std::copy(cij.begin(), cij.end(), c.begin() + static_cast<std::ptrdiff_t>((i * k + j) * d));
    }
  return c;
}

RealMatrix block_combine(const std::vector<RealMatrix>& parts, std::size_t k, std::span<const double> c) {
  const std::size_t d = parts.size(), n = parts.front().rows();
  RealMatrix out(k * n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      RealMatrix b(n);
      for (std::size_t l = 0; l < d; ++l) b += parts[l] * c[(i * k + j) * d + l];
      put_block(out, b, i, j);
    }
  return out;
}

struct LevelProblem {
  const LinearMap& t;
  std::size_t k;
  Subspace xk;
  bool full;
  std::vector<NormBallConstraint> ball;

  LevelProblem(const LinearMap& t_, std::size_t k_)
      : t(t_), k(k_), xk(amplify_subspace(t_.domain, k_)), full(is_full(t_.domain)) {
    if (!full) ball.push_back({xk.basis(), 1.0});
  }

  RealMatrix domain_element(std::span<const double> c) const { return block_combine(t.domain.basis(), k, c); }
  RealMatrix image(std::span<const double> c) const { return block_combine(t.images, k, c); }

  std::vector<double> feasible(std::vector<double> c) const {
    const double nrm = operator_norm(domain_element(c));
    if (nrm > 1.0)
      for (double& v : c) v /= nrm;
    return c;
  }

  // argmax over the unit ball of M_k(X) of ⟨W, T_k(x)⟩
  std::vector<double> best_response(const RealMatrix& w, std::span<const double> warm) const {
    const std::size_t d = t.domain.size(), m = t.codomain_dim;
    std::vector<double> f(k * k * d);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const RealMatrix wij = block(w, m, i, j);
        for (std::size_t l = 0; l < d; ++l) f[(i * k + j) * d + l] = inner(t.images[l], wij);
      }
    if (full) return block_coordinates(t.domain, k, polar_factor(xk.combine(f)));
    return maximize_linear(f, ball, warm, 5000, 1e-11).point;
  }

  double value(std::span<const double> c) const { return operator_norm(image(c)); }
};

struct Ascent {
  double value;
  std::vector<double> point;
};

Ascent ascend(const LevelProblem& p, std::vector<double> c, int max_rounds) {
  c = p.feasible(std::move(c));
  Ascent best{p.value(c), c};
  for (int r = 0; r < max_rounds; ++r) {
    const RealMatrix img = p.image(c);
    const auto sp = top_singular_pair(img);
    if (sp.sigma == 0.0 && r > 0) break;
    const std::size_t m = img.rows();
    RealMatrix w(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) w(i, j) = sp.u[i] * sp.v[j];
    c = p.feasible(p.best_response(w, c));
    const double v = p.value(c);
    const bool improved = v > best.value + 1e-13 * (1.0 + best.value);
    if (v > best.value) best = {v, c};
    if (!improved) break;
  }
  return best;
}

MapNormCertificate level_norm(const LinearMap& t, std::size_t k, const MapNormOptions& opts,
                              const std::optional<RealMatrix>& warm) {
  MapNormCertificate cert;
  cert.level = k;
  cert.seed = opts.seed;
  const std::size_t n = t.domain.ambient_dim(), d = t.domain.size();
  cert.maximizer = RealMatrix(k * n);
  if (d == 0 || image_scale(t) == 0.0) return cert;
  // ‖T_k(x)‖ ≤ Σ_l ‖b_l‖₁ ‖T(b_l)‖ for ‖x‖ ≤ 1, at every level
  for (std::size_t l = 0; l < d; ++l) cert.upper_bound += nuclear_norm(t.domain[l]) * operator_norm(t.images[l]);

  const LevelProblem p(t, k);
  std::vector<std::vector<double>> starts;
  if (warm) starts.push_back(block_coordinates(t.domain, k, *warm));
  if (p.xk.identity()) starts.push_back(p.xk.coordinates(*p.xk.identity()));
  std::size_t best_l = 0;
  double best_ratio = -1.0;
  for (std::size_t l = 0; l < d; ++l) {
    const double ratio = operator_norm(t.images[l]) / operator_norm(t.domain[l]);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best_l = l;
    }
  }
  std::vector<double> e(k * k * d, 0.0);
  e[best_l] = 1.0;
  starts.push_back(e);
  Rng rng(opts.seed);
  for (int r = 0; r < opts.restarts; ++r) {
    std::vector<double> c(k * k * d);
    for (double& v : c) v = rng.normal();
    starts.push_back(std::move(c));
  }
  cert.value = -1.0;
  for (auto& s : starts) {
    auto a = ascend(p, std::move(s), opts.max_rounds);
    ++cert.restarts;
    if (a.value > cert.value) {
      cert.value = a.value;
      cert.maximizer = p.domain_element(a.point);
    }
  }
  return cert;
}

}  // namespace

MapNormCertificate map_norm(const LinearMap& t, std::size_t level, const MapNormOptions& opts) {
  if (level == 0) throw std::invalid_argument("map_norm: level must be ≥ 1");
  return level_norm(t, level, opts, std::nullopt);
}

std::vector<MapNormCertificate> map_norms(const LinearMap& t, const std::vector<std::size_t>& levels,
                                          const MapNormOptions& opts) {
  std::vector<std::size_t> ks(levels);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::vector<MapNormCertificate> out;
  std::optional<RealMatrix> warm;
  for (std::size_t k : ks) {
    if (k == 0) throw std::invalid_argument("map_norms: level must be ≥ 1");
    if (warm) {
      // x ⊕ 0 has the same norm and the same image norm one level up
      RealMatrix lifted(k * t.domain.ambient_dim());
      for (std::size_t i = 0; i < warm->rows(); ++i)
        for (std::size_t j = 0; j < warm->cols(); ++j) lifted(i, j) = (*warm)(i, j);
      warm = lifted;
    }
    MapNormOptions o = opts;
    o.seed = derive_seed(opts.seed, "map-norm-level", k);
    auto c = level_norm(t, k, o, warm);
    warm = c.maximizer;
    out.push_back(std::move(c));
  }
  return out;
}

ChoiMatrix choi(const LinearMap& t) {
  const std::size_t n = t.domain.ambient_dim(), k = t.codomain_dim;
  if (!is_full(t.domain)) throw NotFullDomain("choi: the domain is a proper subspace; extend the map first");
  RealMatrix c(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RealMatrix tij(k);
      for (std::size_t l = 0; l < t.domain.size(); ++l) {
        const double coef = t.domain[l](i, j);
        if (coef != 0.0) tij += t.images[l] * coef;
      }
      put_block(c, tij, i, j);
    }
  return {c, n, k};
}

LinearMap from_choi(const ChoiMatrix& c) {
  if (c.matrix.rows() != c.n * c.k || !c.matrix.is_square()) throw DimensionError("from_choi: size is not n·k");
  return LinearMap::from_function(full_matrix_space(c.n), c.k, [&](const RealMatrix& x) {
    RealMatrix out(c.k);
    for (std::size_t i = 0; i < c.n; ++i)
      for (std::size_t j = 0; j < c.n; ++j)
        if (x(i, j) != 0.0) out += block(c.matrix, c.k, i, j) * x(i, j);
    return out;
  });
}

bool is_cp(const LinearMap& t, const ToleranceConfig& tol) { return is_psd(choi(t).matrix, tol); }

std::vector<RealMatrix> kraus(const ChoiMatrix& c, const ToleranceConfig& tol) {
  if (!is_psd(c.matrix, tol)) throw NotCompletelyPositive("kraus: Choi matrix is not PSD");
  const auto eig = sym_eig(sym_part(c.matrix), tol);
  const double cutoff = tol.psd_tol * std::max(trace(c.matrix), 0.0);
  std::vector<RealMatrix> out;
  for (std::size_t r = 0; r < eig.values.size(); ++r) {
    const double lambda = eig.values[r];
    if (lambda <= cutoff) continue;
    const double s = std::sqrt(lambda);
    RealMatrix a(c.k, c.n);
    // C[(i,a),(j,b)] = Σ A(a,i) A(b,j), so A(a,i) is entry i·k + a of √λ·v
    for (std::size_t i = 0; i < c.n; ++i)
      for (std::size_t q = 0; q < c.k; ++q) a(q, i) = s * eig.vectors(i * c.k + q, r);
    out.push_back(std::move(a));
  }
  return out;
}

RealMatrix Stinespring::pi(const RealMatrix& a) const { return kron(RealMatrix::identity(multiplicity), a); }

Stinespring stinespring(const LinearMap& t, const ToleranceConfig& tol) {
  const ChoiMatrix c = choi(t);
  if (!is_psd(c.matrix, tol))
    throw NotCompletelyPositive("stinespring: map is not completely positive (Choi λmin " +
                                std::to_string(lambda_min(sym_part(c.matrix))) + ")");
  auto ks = kraus(c, tol);
  if (ks.empty()) ks.emplace_back(c.k, c.n);
  const std::size_t m = ks.size(), n = c.n, k = c.k;
  RealMatrix v(m * n, k);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t q = 0; q < k; ++q) v(r * n + i, q) = ks[r](q, i);
  Stinespring s{v, m, n, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RealMatrix e = RealMatrix::unit(n, i, j);
      s.reconstruction_residual = std::max(s.reconstruction_residual, max_abs_diff(t(e), s.dilate(e)));
    }
  const double vn = operator_norm(v);
  s.norm_gap = std::abs(vn * vn - operator_norm(t(RealMatrix::identity(n))));
  return s;
}

MapFlags classify_map(const LinearMap& t, const ConeContext& ctx, const std::vector<std::size_t>& levels,
                      std::uint64_t seed, std::size_t samples) {
  const Subspace& x = t.domain;
  if (x.ambient_dim() != ctx.dim()) throw DimensionError("classify_map: context dimension mismatch");
  const RealMatrix& one = ctx.one();
  if (!member(x, one).member) throw std::invalid_argument("classify_map: domain does not contain the identity");
  MapFlags f;
  f.seed = seed;
  f.samples = samples;
  const double scale = 1.0 + image_scale(t);
  const double tol = 1e-9;

  const Subspace d = diagonal(x);
  const Subspace d_sa = selfadjoint_part(d), d_as = antisymmetric_part(d);
  for (const auto& s : d_sa.basis())
    f.selfadjoint_residual = std::max(f.selfadjoint_residual, max_abs(skew_part(t(s))) / scale);
  for (const auto& a : d_as.basis())
    f.selfadjoint_residual = std::max(f.selfadjoint_residual, max_abs(sym_part(t(a))) / scale);
  f.selfadjoint = f.selfadjoint_residual <= tol;
  f.selfadjoint_domain = is_selfadjoint_space(x);

  std::set<std::size_t> ks(levels.begin(), levels.end());
  ks.insert(1);
  ks.erase(0);
  if (is_full(x)) f.cp = is_cp(t, ctx.tol());
  const std::size_t n = x.ambient_dim();

  for (std::size_t k : ks) {
    LevelReport r{k, true, true, INFINITY, INFINITY, std::nullopt, std::nullopt, false};
    Rng rng(derive_seed(seed, "map-level", k));
    const RealMatrix one_k = kron(RealMatrix::identity(k), one);
    const DiagonalParts parts = amplified_diagonal_parts(x, k);
    const Subspace xk = amplify_subspace(x, k);
    const auto see_psd = [&](const RealMatrix& p) {
      const RealMatrix img = apply_blocks(t, p);
      const double m = psd_margin(img);
      if (m < r.worst_psd_margin) {
        r.worst_psd_margin = m;
        if (m < -tol) r.psd_witness = p;
      }
    };
    const auto see_rp = [&](const RealMatrix& p) {
      const RealMatrix img = apply_blocks(t, p);
      const double m = real_positive_margin(img);
      if (m < r.worst_real_positive_margin) {
        r.worst_real_positive_margin = m;
        if (m < -tol) r.real_positive_witness = p;
      }
    };
    see_psd(one_k);
    see_rp(one_k);
    for (const auto& a : parts.as.basis()) {
      see_rp(a);
      see_rp(-a);
    }
    if (is_full(x) && k >= n) {
      // Σ E_ij ⊗ E_ij ⊕ 0 is PSD and T_k maps it to the Choi matrix ⊕ 0
      RealMatrix w(k * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w(i * n + i, j * n + j) = 1.0;
      see_psd(w);
      see_rp(w);
    }
    for (std::size_t s = 0; s < samples; ++s) {
      const RealMatrix p = sample_psd_element(parts.sa, one_k, rng);
      see_psd(p);
      see_rp(p);
      see_rp(sample_real_positive_element(xk, one_k, rng));
    }
    r.positive = r.worst_psd_margin >= -tol;
    r.real_positive = r.worst_real_positive_margin >= -tol;
    if (f.cp && *f.cp) {
      // CP maps on M_n are positive at every level
      r.exact = true;
    } else if (f.cp && k >= n) {
      r.exact = true;
      r.positive = false;
    }
    f.levels.push_back(std::move(r));
  }
  f.positive = f.levels.front().positive;
  f.real_positive = f.levels.front().real_positive;
  f.rcp = std::all_of(f.levels.begin(), f.levels.end(), [](const LevelReport& r) { return r.real_positive; });
  f.srp = f.real_positive && f.selfadjoint;
  if (f.selfadjoint_domain) f.equivalence_holds = f.srp == (f.positive && f.selfadjoint);
  for (const auto& r : f.levels)
    if (r.level == t.codomain_dim && r.real_positive)
      for (const auto& h : f.levels)
        if (h.level > r.level && !h.real_positive) f.propagation_holds = false;
  return f;
}

SelfadjointExtension canonical_sa_extension(const LinearMap& t, const ConeContext& ctx, std::uint64_t seed) {
  const Subspace& x = t.domain;
  const std::size_t n = x.ambient_dim();
  if (n != ctx.dim()) throw DimensionError("canonical_sa_extension: context dimension mismatch");
  const double scale = 1.0 + image_scale(t);
  Rng rng(derive_seed(seed, "sa-extension"));

  // a + bᵀ = x + yᵀ with a − x = yᵀ − b = d ∈ Δ(X): both sides must agree
  const Subspace d = diagonal(x);
  double residual = 0.0;
  const auto coincidence = [&](const RealMatrix& dd, const RealMatrix& x0, const RealMatrix& y0) {
    const RealMatrix lhs = t(x0 + dd) + adjoint(t(y0));
    const RealMatrix rhs = t(x0) + adjoint(t(y0 + adjoint(dd)));
    residual = std::max(residual, max_abs_diff(lhs, rhs) / scale);
  };
  const RealMatrix zero(n);
  for (const auto& b : d.basis()) coincidence(b, zero, zero);
  if (!d.empty())
    for (int s = 0; s < 100; ++s) {
      std::vector<double> cd(d.size()), c1(x.size()), c2(x.size());
      for (double& v : cd) v = rng.normal();
      for (double& v : c1) v = rng.normal();
      for (double& v : c2) v = rng.normal();
      coincidence(d.combine(cd), x.combine(c1), x.combine(c2));
    }
  if (residual > 1e-9)
    throw WellDefinednessError("canonical_sa_extension: x + yᵀ ↦ T(x) + T(y)ᵀ is not well defined; T is not "
                               "selfadjoint on the diagonal (residual " +
                                   std::to_string(residual) + ")",
                               residual);

  std::vector<RealMatrix> gens = x.basis(), gen_images = t.images;
  for (std::size_t l = 0; l < x.size(); ++l) {
    gens.push_back(adjoint(x[l]));
    gen_images.push_back(adjoint(t.images[l]));
  }
  Subspace z = span_with(x, gens);
  if (x.identity()) z = z.with_identity(*x.identity());
  RealMatrix a(n * n, gens.size());
  for (std::size_t r = 0; r < gens.size(); ++r)
    for (std::size_t e = 0; e < n * n; ++e) a(e, r) = gens[r].entries()[e];
  std::vector<RealMatrix> images;
  for (const auto& b : z.basis()) {
    const auto ls = least_squares(a, b.entries());
    RealMatrix img(t.codomain_dim);
    for (std::size_t r = 0; r < gens.size(); ++r) img += gen_images[r] * ls.x[r];
    images.push_back(std::move(img));
  }
  SelfadjointExtension out{LinearMap(z, t.codomain_dim, std::move(images)), residual, true, true};
  for (const auto& b : z.basis())
    if (max_abs_diff(out.map(adjoint(b)), adjoint(out.map(b))) > 1e-9 * scale) out.selfadjoint = false;
  const Subspace zsa = selfadjoint_part(z);
  for (int s = 0; s < 200; ++s)
    if (psd_margin(out.map(sample_psd_element(zsa, ctx.one(), rng))) < -1e-9) out.positive_sampled = false;
  return out;
}

RealBoundedNorm real_bounded_norm(const LinearMap& u, double skew_cap, std::uint64_t seed) {
  const Subspace& x = u.domain;
  const std::size_t d = x.size();
  RealBoundedNorm out{0.0, RealMatrix(x.ambient_dim()), std::nullopt};
  const RealMatrix one = x.identity() ? *x.identity() : RealMatrix::identity(x.ambient_dim());
  const bool unital = member(x, one).member;
  if (unital) out.value_at_one = operator_norm(u(one));
  if (d == 0 || image_scale(u) == 0.0) return out;

  std::vector<NormBallConstraint> cs(2);
  cs[0].radius = 1.0;
  cs[1].radius = skew_cap;
  for (const auto& b : x.basis()) {
    cs[0].images.push_back(sym_part(b));
    cs[1].images.push_back(skew_part(b));
  }
  const auto feasible = [&](std::vector<double> c) {
    const RealMatrix m = x.combine(c);
    const double sc = std::max({1.0, operator_norm(sym_part(m)), operator_norm(skew_part(m)) / skew_cap});
    for (double& v : c) v /= sc;
    return c;
  };
  const auto value = [&](std::span<const double> c) { return operator_norm(sym_part(u.apply_coordinates(c))); };

  std::vector<std::vector<double>> starts;
  if (unital) starts.push_back(x.coordinates(one));
  Rng rng(derive_seed(seed, "real-bounded"));
  for (int r = 0; r < 4; ++r) {
    std::vector<double> c(d);
    for (double& v : c) v = rng.normal();
    starts.push_back(c);
  }
  out.value = -1.0;
  for (auto& s : starts) {
    std::vector<double> c = feasible(s);
    double best = value(c);
    std::vector<double> best_c = c;
    for (int round = 0; round < 100; ++round) {
      // linearize at the eigenvector of sym u(x) of largest |λ|
      const RealMatrix su = sym_part(u.apply_coordinates(c));
      const auto eig = sym_eig(su);
      const std::size_t idx = std::abs(eig.values.front()) >= std::abs(eig.values.back()) ? 0 : eig.values.size() - 1;
      const double sign = eig.values[idx] >= 0.0 ? 1.0 : -1.0;
      std::vector<double> f(d);
      for (std::size_t l = 0; l < d; ++l) {
        const RealMatrix s2 = sym_part(u.images[l]);
        double acc = 0.0;
        for (std::size_t i = 0; i < su.rows(); ++i)
          for (std::size_t j = 0; j < su.rows(); ++j)
            acc += eig.vectors(i, idx) * s2(i, j) * eig.vectors(j, idx);
        f[l] = sign * acc;
      }
      c = feasible(maximize_linear(f, cs, c, 5000, 1e-11).point);
      const double v = value(c);
      const bool improved = v > best + 1e-13 * (1.0 + best);
      if (v > best) {
        best = v;
        best_c = c;
      }
      if (!improved) break;
    }
    if (best > out.value) {
      out.value = best;
      out.maximizer = x.combine(best_c);
    }
  }
  return out;
}

LinearMap complexify_map(const LinearMap& t) {
  const double r = 1.0 / std::sqrt(2.0);
  const RealMatrix zero(t.codomain_dim);
  std::vector<RealMatrix> images;
  for (const auto& m : t.images) {
    images.push_back(embed({m, zero}) * r);
    images.push_back(embed({zero, m}) * r);
  }
  return LinearMap(complexify_subspace(t.domain), 2 * t.codomain_dim, std::move(images));
}

UnitizationExtension extend_to_unitization(const LinearMap& t, std::uint64_t seed, std::size_t samples) {
  const Subspace& a = t.domain;
  const std::size_t n = a.ambient_dim(), k = t.codomain_dim;
  const RealMatrix one = RealMatrix::identity(n), one_k = RealMatrix::identity(k);
  if (member(a, one).member) throw std::invalid_argument("extend_to_unitization: the domain already contains 1");
  const auto rb = real_bounded_norm(t, 1e3, seed);
  if (rb.value > 1.0 + 1e-6)
    throw std::invalid_argument("extend_to_unitization: T is not real-contractive (‖T‖_r ≥ " +
                                std::to_string(rb.value) + ")");
  Rng rng(derive_seed(seed, "unitization-extension"));
  // real positivity of T on 𝔯_A: sampled through an internal unit when A has one
  if (const auto e = find_identity(a)) {
    for (std::size_t s = 0; s < samples; ++s) {
      const RealMatrix x = sample_real_positive_element(a, *e, rng);
      if (real_positive_margin(t(x)) < -1e-9)
        throw std::invalid_argument("extend_to_unitization: T is not real positive on the domain");
    }
  }

  const Subspace au = span_with(a, {one}).with_identity(one);
  RealMatrix g(n * n, a.size() + 1);
  for (std::size_t l = 0; l < a.size(); ++l)
    for (std::size_t e = 0; e < n * n; ++e) g(e, l) = a[l].entries()[e];
  for (std::size_t e = 0; e < n * n; ++e) g(e, a.size()) = one.entries()[e];
  std::vector<RealMatrix> images;
  for (const auto& b : au.basis()) {
    const auto ls = least_squares(g, b.entries());
    RealMatrix img = one_k * ls.x[a.size()];
    for (std::size_t l = 0; l < a.size(); ++l) img += t.images[l] * ls.x[l];
    images.push_back(std::move(img));
  }
  UnitizationExtension out{LinearMap(au, k, std::move(images)), rb.value, INFINITY, samples};
  for (std::size_t s = 0; s < samples; ++s) {
    const RealMatrix x = sample_real_positive_element(au, one, rng);
    const double m = real_positive_margin(out.map(x));
    out.worst_margin = std::min(out.worst_margin, m);
    if (m < -1e-9)
      throw SampledViolation("extend_to_unitization: the extension maps a real positive element outside the cone "
                             "(margin " +
                                 std::to_string(m) + ")",
                             x);
  }
  return out;
}

CpExtension extend_cp(const LinearMap& t, int max_iterations) {
  const Subspace& s = t.domain;
  const std::size_t n = s.ambient_dim(), k = t.codomain_dim;
  const RealMatrix one = RealMatrix::identity(n);
  if (!member(s, one).member || !is_selfadjoint_space(s))
    throw std::invalid_argument("extend_cp: domain must be a unital selfadjoint subspace");
  if (is_full(s)) {
    const ChoiMatrix c = choi(t);
    if (!is_psd(c.matrix)) throw NotCompletelyPositive("extend_cp: map on M_n is not completely positive");
    return {t, c, 0.0, lambda_min(sym_part(c.matrix)), 0, "none"};
  }
  // T̃(x)_ab = ⟨C, x ⊗ E_ab⟩; C symmetric sees only the symmetric part of the normal
  std::vector<RealMatrix> normals;
  std::vector<double> values;
  for (std::size_t l = 0; l < s.size(); ++l)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        normals.push_back(sym_part(kron(s[l], RealMatrix::unit(k, a, b))));
        values.push_back(t.images[l](a, b));
      }
  const AffineConstraints c(normals, values);
  const auto d = solve_psd_affine(c, n * k, max_iterations, 1e-7);
  if (!d.converged)
    throw ConvergenceError("extend_cp: no CP extension found after " + std::to_string(d.iterations) +
                           " iterations (residual " + std::to_string(d.residual) +
                           "); CP maps on operator systems always extend, so this is a numerical failure");
  const ChoiMatrix ch{d.point, n, k};
  const LinearMap ext = from_choi(ch);
  double residual = 0.0;
  for (std::size_t l = 0; l < s.size(); ++l) residual = std::max(residual, max_abs_diff(ext(s[l]), t.images[l]));
  return {ext, ch, residual, lambda_min(sym_part(d.point)), d.iterations, d.method};
}

JordanHomReport jordan_hom_check(const LinearMap& t, const ConeContext& ctx, std::uint64_t seed) {
  const Subspace& a = t.domain;
  JordanHomReport r{};
  const double scale = 1.0 + image_scale(t);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i; j < a.size(); ++j) {
      const RealMatrix p = jordan(a[i], a[j]);
      r.hom_residual = std::max(r.hom_residual, max_abs_diff(t(p), jordan(t.images[i], t.images[j])) / (scale * scale));
    }
  r.jordan_hom = r.hom_residual <= 1e-9;
  MapNormOptions o;
  o.seed = derive_seed(seed, "jordan-hom-norm");
  r.norm = map_norm(t, 1, o).value;
  r.contractive = r.norm <= 1.0 + 1e-6;
  const MapFlags f = classify_map(t, ctx, {1}, seed, 200);
  r.selfadjoint = f.selfadjoint;
  r.srp = f.srp;
  const bool jc_star = is_selfadjoint_space(a) && is_jordan_closed(a);
  r.implication_holds = !(r.jordan_hom && r.contractive && jc_star) || (r.selfadjoint && r.srp);
  return r;
}

SchwarzReport schwarz_check(const LinearMap& phi, std::size_t samples, std::uint64_t seed) {
  const Subspace& x = phi.domain;
  const std::size_t n = x.ambient_dim();
  const RealMatrix one = RealMatrix::identity(n);
  SchwarzReport r{false, "", INFINITY, 0, false};
  if (!member(x, one).member || !is_selfadjoint_space(x) || !is_assoc_closed(x)) {
    r.skipped = true;
    r.reason = "domain is not a unital C*-subalgebra of M_n";
    return r;
  }
  if (max_abs_diff(phi(one), RealMatrix::identity(phi.codomain_dim)) > 1e-9) {
    r.skipped = true;
    r.reason = "map is not unital";
    return r;
  }
  const ConeContext ctx({"domain", x, AlgebraKind::operator_system});
  bool two_positive;
  if (is_full(x) && (n <= 2 || is_cp(phi))) {
    two_positive = is_cp(phi);
  } else {
    two_positive = classify_map(phi, ctx, {2}, seed, samples).levels.back().positive;
  }
  if (!two_positive) {
    r.skipped = true;
    r.reason = "map is not 2-positive";
    return r;
  }
  Rng rng(derive_seed(seed, "schwarz"));
  const auto see = [&](const RealMatrix& a) {
    const RealMatrix fa = phi(a);
    const RealMatrix gap = phi(adjoint(a) * a) - adjoint(fa) * fa;
    r.min_margin = std::min(r.min_margin, lambda_min(sym_part(gap)) - max_abs(skew_part(gap)));
    ++r.samples;
  };
  see(one);
  for (const auto& b : x.basis()) see(b);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<double> c(x.size());
    for (double& v : c) v = rng.normal();
    RealMatrix a = x.combine(c);
    a *= 1.0 / operator_norm(a);
    see(a);
  }
  r.holds = r.min_margin >= -1e-8;
  return r;
}

}  // namespace roal
