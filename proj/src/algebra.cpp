#include "roal/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "roal/random.hpp"

namespace roal {

namespace {

constexpr double kGramTol = 1e-10;
constexpr double kDropRel = 1e-10;
constexpr double kClosedRel = 1e-9;

void require_dim(const RealMatrix& m, std::size_t n, const char* where) {
  if (!m.is_square() || m.rows() != n)
    throw DimensionError(std::string(where) + ": expected " + std::to_string(n) + "x" + std::to_string(n) +
                         " matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

// Modified Gram–Schmidt with one re-orthogonalization pass. Extends `basis`
// by the parts of `candidates` not already in its span.
// Candidates below 1e-14·max(scale_floor, largest candidate) count as zero.
void extend_basis(std::vector<RealMatrix>& basis, const std::vector<RealMatrix>& candidates, double scale_floor = 0.0) {
  double scale = scale_floor;
  for (const auto& c : candidates) scale = std::max(scale, frobenius_norm(c));
  for (const auto& c : candidates) {
    const double norm0 = frobenius_norm(c);
    if (norm0 <= 1e-14 * scale || norm0 == 0.0) continue;
    RealMatrix r = c;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) r -= b * inner(b, r);
    const double rn = frobenius_norm(r);
    if (rn <= kDropRel * norm0) continue;
    basis.push_back(r * (1.0 / rn));
  }
}

bool contains_products(const Subspace& s, bool assoc) {
  const auto& b = s.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = assoc ? 0 : i; j < b.size(); ++j) {
      const RealMatrix p = assoc ? b[i] * b[j] : jordan(b[i], b[j]);
      if (s.distance(p) > kClosedRel * (1.0 + frobenius_norm(p))) return false;
    }
  return true;
}

Subspace close_under(const std::vector<RealMatrix>& generators, std::size_t max_dim, bool assoc) {
  Subspace start = orthonormal_basis(generators);
  const std::size_t n = start.ambient_dim();
  if (max_dim == 0) max_dim = n * n;
  std::vector<RealMatrix> basis = start.basis();
  if (basis.size() > max_dim)
    throw ClosureBlowup("closure: generators already span dimension " + std::to_string(basis.size()) +
                        " > max_dim " + std::to_string(max_dim));
  std::size_t done = 0;  // products among basis[0..done) are already included
  while (done < basis.size()) {
    const std::size_t current = basis.size();
    std::vector<RealMatrix> products;
    for (std::size_t i = 0; i < current; ++i)
      for (std::size_t j = 0; j < current; ++j) {
        if (i < done && j < done) continue;
        if (!assoc && j < i) continue;
        products.push_back(assoc ? basis[i] * basis[j] : jordan(basis[i], basis[j]));
      }
    extend_basis(basis, products);
    if (basis.size() > max_dim)
      throw ClosureBlowup("closure: dimension " + std::to_string(basis.size()) + " exceeds max_dim " +
                          std::to_string(max_dim));
    done = current;
  }
  return Subspace(n, std::move(basis));
}

Subspace span_or_zero(std::size_t n, const std::vector<RealMatrix>& gens, double scale_floor = 0.0) {
  std::vector<RealMatrix> basis;
  extend_basis(basis, gens, scale_floor);
  return Subspace(n, std::move(basis));
}

RealMatrix random_element(const Subspace& s, Rng& rng) {
  std::vector<double> c(s.size());
  for (double& v : c) v = rng.normal();
  return s.combine(c);
}

}  // namespace

Subspace::Subspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {
  if (ambient_dim == 0) throw DimensionError("Subspace: ambient dimension must be positive");
}

Subspace::Subspace(std::size_t ambient_dim, std::vector<RealMatrix> basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  if (ambient_dim == 0) throw DimensionError("Subspace: ambient dimension must be positive");
  for (const auto& b : basis_) {
    require_dim(b, ambient_dim_, "Subspace");
    if (!b.all_finite()) throw std::invalid_argument("Subspace: non-finite basis entry");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = i; j < basis_.size(); ++j)
      worst = std::max(worst, std::abs(inner(basis_[i], basis_[j]) - (i == j ? 1.0 : 0.0)));
  if (worst > kGramTol)
    throw std::invalid_argument("Subspace: basis not orthonormal, Gram residual " + std::to_string(worst));
}

std::vector<double> Subspace::coordinates(const RealMatrix& m) const {
  require_dim(m, ambient_dim_, "Subspace::coordinates");
  std::vector<double> c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = inner(basis_[i], m);
  return c;
}

RealMatrix Subspace::combine(std::span<const double> coords) const {
  if (coords.size() != basis_.size())
    throw DimensionError("Subspace::combine: expected " + std::to_string(basis_.size()) + " coordinates");
  RealMatrix out(ambient_dim_);
  for (std::size_t i = 0; i < basis_.size(); ++i) out += basis_[i] * coords[i];
  return out;
}

RealMatrix Subspace::project(const RealMatrix& m) const { return combine(coordinates(m)); }

double Subspace::distance(const RealMatrix& m) const { return frobenius_norm(m - project(m)); }

Subspace Subspace::with_identity(const RealMatrix& e) const {
  require_dim(e, ambient_dim_, "Subspace::with_identity");
  if (!member(*this, e).member) throw std::invalid_argument("with_identity: element not in subspace");
  for (const auto& b : basis_)
    if (max_abs_diff(jordan(e, b), b) > 1e-9)
      throw std::invalid_argument("with_identity: element is not a Jordan unit");
  Subspace out = *this;
  out.identity_ = e;
  return out;
}

bool is_selfadjoint_space(const Subspace& s) {
  for (const auto& b : s.basis())
    if (s.distance(adjoint(b)) > kClosedRel) return false;
  return true;
}

bool is_jordan_closed(const Subspace& s) { return contains_products(s, false); }
bool is_assoc_closed(const Subspace& s) { return contains_products(s, true); }

SubspaceFlags structure_flags(const Subspace& s) {
  return {is_selfadjoint_space(s), is_jordan_closed(s), is_assoc_closed(s), s.is_unital()};
}

Subspace orthonormal_basis(const std::vector<RealMatrix>& generators) {
  if (generators.empty()) throw std::invalid_argument("orthonormal_basis: no generators");
  const std::size_t n = generators.front().dim();
  for (const auto& g : generators) {
    require_dim(g, n, "orthonormal_basis");
    if (!g.all_finite()) throw std::invalid_argument("orthonormal_basis: non-finite entry");
  }
  std::vector<RealMatrix> basis;
  extend_basis(basis, generators);
  if (basis.empty()) throw std::invalid_argument("orthonormal_basis: all generators are zero");
  return Subspace(n, std::move(basis));
}

Subspace full_matrix_space(std::size_t n) {
  std::vector<RealMatrix> units;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) units.push_back(RealMatrix::unit(n, i, j));
  return Subspace(n, std::move(units)).with_identity(RealMatrix::identity(n));
}

Subspace span_with(const Subspace& s, const std::vector<RealMatrix>& extra) {
  for (const auto& g : extra) require_dim(g, s.ambient_dim(), "span_with");
  std::vector<RealMatrix> basis = s.basis();
  extend_basis(basis, extra);
  return Subspace(s.ambient_dim(), std::move(basis));
}

Subspace adjoint_space(const Subspace& s) {
  std::vector<RealMatrix> basis;
  basis.reserve(s.size());
  for (const auto& b : s.basis()) basis.push_back(adjoint(b));
  return Subspace(s.ambient_dim(), std::move(basis));
}

Subspace close_jordan(const std::vector<RealMatrix>& generators, std::size_t max_dim) {
  return close_under(generators, max_dim, false);
}

Subspace close_assoc(const std::vector<RealMatrix>& generators, std::size_t max_dim) {
  return close_under(generators, max_dim, true);
}

Subspace diagonal(const Subspace& a) {
  const std::size_t d = a.size();
  const std::size_t n = a.ambient_dim();
  if (d == 0) return Subspace(n);
  // For x = Σ c_j a_j, ‖P_{Aᵀ} x‖² = cᵀ M c with M_ij = ⟨P a_i, P a_j⟩. The
  // eigenvalue-one eigenspace of M is exactly the part of A inside Aᵀ.
  const Subspace at = adjoint_space(a);
  std::vector<RealMatrix> proj;
  proj.reserve(d);
  for (const auto& b : a.basis()) proj.push_back(at.project(b));
  RealMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) m(i, j) = m(j, i) = inner(proj[i], proj[j]);
  const auto eig = sym_eig(m);
  std::vector<RealMatrix> gens;
  for (std::size_t k = 0; k < d; ++k) {
    if (eig.values[k] < 1.0 - 1e-10) break;
    std::vector<double> c(d);
    for (std::size_t j = 0; j < d; ++j) c[j] = eig.vectors(j, k);
    gens.push_back(a.combine(c));
  }
  return span_or_zero(n, gens, 1.0);
}

Subspace selfadjoint_part(const Subspace& s) {
  std::vector<RealMatrix> gens;
  for (const auto& b : s.basis()) gens.push_back(sym_part(b));
  // parts of unit vectors: roundoff-sized parts are zero
  return span_or_zero(s.ambient_dim(), gens, 1.0);
}

Subspace antisymmetric_part(const Subspace& s) {
  std::vector<RealMatrix> gens;
  for (const auto& b : s.basis()) gens.push_back(skew_part(b));
  return span_or_zero(s.ambient_dim(), gens, 1.0);
}

std::optional<RealMatrix> find_identity(const Subspace& a, const ToleranceConfig& tol) {
  const std::size_t d = a.size();
  if (d == 0) return std::nullopt;
  const std::size_t n = a.ambient_dim();
  const std::size_t block = n * n;
  // Unknowns c_j of e = Σ c_j b_j; equations e∘b_i = b_i stacked entrywise.
  RealMatrix sys(d * block, d);
  std::vector<double> rhs(d * block);
  for (std::size_t i = 0; i < d; ++i) {
    const auto bi = a[i].entries();
    std::copy(bi.begin(), bi.end(), rhs.begin() + static_cast<std::ptrdiff_t>(i * block));
    for (std::size_t j = 0; j < d; ++j) {
      const RealMatrix p = jordan(a[j], a[i]);
      const auto pe = p.entries();
      for (std::size_t r = 0; r < block; ++r) sys(i * block + r, j) = pe[r];
    }
  }
  const auto ls = least_squares(sys, rhs);
  const RealMatrix e = a.combine(ls.x);
  double worst = 0.0;
  for (const auto& b : a.basis()) worst = std::max(worst, frobenius_norm(jordan(e, b) - b));
  if (worst > 1e-9) return std::nullopt;
  const double en = operator_norm(e, tol);
  if (en > 1.0 + tol.norm_rel_tol) return std::nullopt;
  if (frobenius_norm(e * e - e) > 1e-9 * (1.0 + frobenius_norm(e))) return std::nullopt;
  return e;
}

Membership member(const Subspace& a, const RealMatrix& m) {
  require_dim(m, a.ambient_dim(), "member");
  const double r = a.distance(m);
  return {r <= 1e-9 * (1.0 + frobenius_norm(m)), r};
}

std::string to_string(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::operator_space: return "operator_space";
    case AlgebraKind::operator_system: return "operator_system";
    case AlgebraKind::jordan_algebra: return "jordan_algebra";
    case AlgebraKind::assoc_algebra: return "assoc_algebra";
    case AlgebraKind::jc_star: return "jc_star";
  }
  return "unknown";
}

AlgebraKind algebra_kind_from_string(const std::string& s) {
  for (auto k : {AlgebraKind::operator_space, AlgebraKind::operator_system, AlgebraKind::jordan_algebra,
                 AlgebraKind::assoc_algebra, AlgebraKind::jc_star})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown algebra kind '" + s + "'");
}

AlgebraDescriptor make_algebra(std::string name, Subspace s, AlgebraKind kind, const ToleranceConfig& tol) {
  const auto fail = [&](const std::string& why) {
    throw std::invalid_argument("algebra '" + name + "' is not a " + to_string(kind) + ": " + why);
  };
  switch (kind) {
    case AlgebraKind::operator_space: break;
    case AlgebraKind::operator_system: {
      if (!is_selfadjoint_space(s)) fail("not closed under adjoint");
      const RealMatrix id = RealMatrix::identity(s.ambient_dim());
      if (!member(s, id).member) fail("does not contain the identity");
      if (!s.is_unital()) s = s.with_identity(id);
      break;
    }
    case AlgebraKind::jordan_algebra:
      if (!is_jordan_closed(s)) fail("not closed under the Jordan product");
      break;
    case AlgebraKind::assoc_algebra:
      if (!is_assoc_closed(s)) fail("not closed under the product");
      break;
    case AlgebraKind::jc_star:
      if (!is_jordan_closed(s)) fail("not closed under the Jordan product");
      if (!is_selfadjoint_space(s)) fail("not closed under adjoint");
      break;
  }
  if (kind != AlgebraKind::operator_space && kind != AlgebraKind::operator_system && !s.is_unital())
    if (auto e = find_identity(s, tol)) s = s.with_identity(*e);
  return {std::move(name), std::move(s), kind};
}

double Unitization::norm(const RealMatrix& a, double lambda) const {
  if (internal_identity) return std::max(operator_norm(a + *internal_identity * lambda), std::abs(lambda));
  return direct_norm(a, lambda);
}

double Unitization::direct_norm(const RealMatrix& a, double lambda) const {
  return operator_norm(a + unit * lambda);
}

Unitization unitize(const Subspace& a, const RealMatrix& ambient_identity, const ToleranceConfig& tol) {
  require_dim(ambient_identity, a.ambient_dim(), "unitize");
  if (!is_jordan_closed(a)) throw std::invalid_argument("unitize: subspace is not Jordan-closed");
  if (member(a, ambient_identity).member)
    throw AlreadyUnital("unitize: the identity already lies in the algebra");
  std::optional<RealMatrix> e = a.identity();
  if (!e) e = find_identity(a, tol);
  Subspace span = span_with(a, {ambient_identity}).with_identity(ambient_identity);
  const AlgebraKind kind = is_assoc_closed(span) ? AlgebraKind::assoc_algebra : AlgebraKind::jordan_algebra;
  return {AlgebraDescriptor{"unitization", std::move(span), kind}, a, ambient_identity, e};
}

UnitizationSupResult unitization_sup_norm(const Subspace& a, const RealMatrix& x, double lambda,
                                          std::size_t samples, std::uint64_t seed) {
  std::optional<RealMatrix> one = a.identity();
  if (!one) one = find_identity(a);
  if (!one) throw std::invalid_argument("unitization_sup_norm: algebra has no identity");
  if (!member(a, x).member) throw std::invalid_argument("unitization_sup_norm: element not in the algebra");
  const auto value = [&](const RealMatrix& c) { return operator_norm(jordan(x, c) + c * lambda); };
  UnitizationSupResult r{};
  r.direct = operator_norm(x + *one * lambda);
  r.at_identity = value(*one);
  r.sampled_sup = std::max(r.at_identity, value(-*one));
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    RealMatrix c = random_element(a, rng);
    const double cn = operator_norm(c);
    if (cn == 0.0) continue;
    // Most samples sit on the unit sphere, where the supremum lives.
    const double radius = (s % 4 == 3) ? rng.uniform() : 1.0;
    c *= radius / cn;
    r.sampled_sup = std::max(r.sampled_sup, value(c));
  }
  r.worst_excess = r.sampled_sup - r.direct;
  return r;
}

UnitizationReport unitization_norm_check(const Subspace& a, std::size_t element_count,
                                         std::size_t contraction_samples, std::uint64_t seed, double tol) {
  std::optional<RealMatrix> one = a.identity();
  if (!one) one = find_identity(a);
  if (!one) throw std::invalid_argument("unitization_norm_check: algebra is not unital");
  const Subspace unital = a.is_unital() ? a : a.with_identity(*one);
  UnitizationReport rep;
  Rng rng(seed);
  const auto record = [&](const RealMatrix& x, double lambda, std::uint64_t sub) {
    const auto r = unitization_sup_norm(unital, x, lambda, contraction_samples, sub);
    rep.worst_upper_gap = std::max(rep.worst_upper_gap, r.sampled_sup - r.direct);
    rep.worst_lower_gap = std::max(rep.worst_lower_gap, r.direct - r.sampled_sup);
    ++rep.elements;
  };
  const RealMatrix zero(a.ambient_dim());
  record(zero, 1.0, derive_seed(seed, "unit", 0));
  record(-*one, 1.0, derive_seed(seed, "unit", 1));
  for (std::size_t k = 0; k < element_count; ++k) {
    const RealMatrix x = random_element(unital, rng);
    record(x, rng.normal(), derive_seed(seed, "unit", k + 2));
  }
  rep.passed = rep.worst_upper_gap <= tol && rep.worst_lower_gap <= tol;
  return rep;
}

RealMatrix TriangleAlgebra::element(double alpha, const RealMatrix& x, double beta) const {
  const std::size_t n = x_space.ambient_dim();
  require_dim(x, n, "TriangleAlgebra::element");
  RealMatrix m(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = alpha;
    m(n + i, n + i) = beta;
    for (std::size_t j = 0; j < n; ++j) m(i, n + j) = x(i, j);
  }
  return m;
}

double TriangleAlgebra::direct_norm(double alpha, const RealMatrix& x, double beta) const {
  return operator_norm(element(alpha, x, beta));
}

double TriangleAlgebra::formula_norm(double alpha, double x_norm, double beta) {
  const double a = std::abs(alpha);
  const double s = std::abs(x_norm);
  const double b = std::abs(beta);
  const auto f = [&](double t) {
    const double u = a * std::sqrt(std::max(0.0, 1.0 - t * t)) + s * t;
    return u * u + b * b * t * t;
  };
  // f(sin θ) = ‖M (cos θ, sin θ)‖² is a shifted sinusoid in 2θ, so f is unimodal on [0,1].
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 1.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-9) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  const double best = std::max({f(0.0), f(1.0), f1, f2, f(0.5 * (lo + hi))});
  return std::sqrt(best);
}

double TriangleAlgebra::scalar_triangle_norm(double alpha, double x_norm, double beta) {
  return operator_norm(RealMatrix{{std::abs(alpha), std::abs(x_norm)}, {0.0, std::abs(beta)}});
}

TriangleAlgebra build_triangle(const Subspace& x) {
  const std::size_t n = x.ambient_dim();
  std::vector<RealMatrix> gens;
  RealMatrix top(2 * n), bottom(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    top(i, i) = 1.0;
    bottom(n + i, n + i) = 1.0;
  }
  gens.push_back(top);
  gens.push_back(bottom);
  for (const auto& b : x.basis()) {
    RealMatrix m(2 * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, n + j) = b(i, j);
    gens.push_back(m);
  }
  Subspace u = orthonormal_basis(gens).with_identity(RealMatrix::identity(2 * n));
  return {AlgebraDescriptor{"triangle", std::move(u), AlgebraKind::assoc_algebra}, x};
}

RealMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
RealMatrix sigma_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
RealMatrix rotation_j() { return {{0.0, 1.0}, {-1.0, 0.0}}; }

namespace {

// Minimal m with k anticommuting real symmetric involutions in M_{2^m}.
constexpr int kSpinExponent[11] = {0, 1, 1, 2, 3, 3, 4, 4, 4, 4, 5};

// Letters 0..3 stand for σx, σz, J, I; this is also the search order.
using PauliString = std::vector<int>;

bool symmetric_string(const PauliString& s) {
  return std::count(s.begin(), s.end(), 2) % 2 == 0;
}

bool anticommute(const PauliString& a, const PauliString& b) {
  int odd = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 3 && b[i] != 3 && a[i] != b[i]) ++odd;
  return odd % 2 == 1;
}

RealMatrix letter(int l) {
  switch (l) {
    case 0: return sigma_x();
    case 1: return sigma_z();
    case 2: return rotation_j();
    default: return RealMatrix::identity(2);
  }
}

bool search(const std::vector<PauliString>& cand, std::size_t from, int k, std::vector<std::size_t>& chosen) {
  if (static_cast<int>(chosen.size()) == k) return true;
  for (std::size_t c = from; c < cand.size(); ++c) {
    bool ok = true;
    for (std::size_t p : chosen)
      if (!anticommute(cand[p], cand[c])) {
        ok = false;
        break;
      }
    if (!ok) continue;
    chosen.push_back(c);
    if (search(cand, c + 1, k, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::size_t spin_dimension(int k) {
  if (k < 1 || k > 10) throw std::invalid_argument("spin_system: k must lie in [1, 10], got " + std::to_string(k));
  return std::size_t{1} << kSpinExponent[k];
}

std::vector<RealMatrix> spin_system(int k) {
  const std::size_t dim = spin_dimension(k);
  const int m = kSpinExponent[k];
  std::vector<PauliString> cand;
  std::size_t total = 1;
  for (int i = 0; i < m; ++i) total *= 4;
  for (std::size_t code = 0; code < total; ++code) {
    PauliString s(static_cast<std::size_t>(m));
    std::size_t c = code;
    for (int i = m - 1; i >= 0; --i) {
      s[static_cast<std::size_t>(i)] = static_cast<int>(c % 4);
      c /= 4;
    }
    if (std::all_of(s.begin(), s.end(), [](int l) { return l == 3; })) continue;
    if (symmetric_string(s)) cand.push_back(std::move(s));
  }
  std::vector<std::size_t> chosen;
  if (!search(cand, 0, k, chosen)) throw std::logic_error("spin_system: no anticommuting family found");
  std::vector<RealMatrix> out;
  for (std::size_t idx : chosen) {
    RealMatrix u = RealMatrix::identity(1);
    for (int l : cand[idx]) u = kron(u, letter(l));
    if (u.dim() != dim) throw std::logic_error("spin_system: dimension mismatch");
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace roal
