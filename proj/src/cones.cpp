#include "roal/cones.hpp"

#include <cmath>

namespace roal {

namespace {

constexpr double kGridExcessTol = 1e-12;
constexpr double kMemberTol = 1e-8;

}  // namespace

ConeContext::ConeContext(AlgebraDescriptor algebra, ToleranceConfig tol)
    : algebra_(std::move(algebra)), tol_(tol) {
  tol_.validate();
  if (!algebra_.subspace.is_unital()) {
    auto e = find_identity(algebra_.subspace, tol_);
    if (!e) throw std::invalid_argument("ConeContext: algebra '" + algebra_.name + "' has no identity");
    algebra_.subspace = algebra_.subspace.with_identity(*e);
  }
  const double n = operator_norm(one(), tol_);
  if (std::abs(n - 1.0) > tol_.norm_rel_tol)
    throw std::invalid_argument("ConeContext: identity does not have norm 1");
}

ConeContext ConeContext::full(std::size_t n, ToleranceConfig tol) {
  return ConeContext({"M" + std::to_string(n), full_matrix_space(n), AlgebraKind::jc_star}, tol);
}

void ConeContext::require_member(const RealMatrix& x, const char* where) const {
  const auto m = member(space(), x);
  if (!m.member)
    throw std::invalid_argument(std::string(where) + ": element not in algebra '" + algebra_.name +
                                "' (residual " + std::to_string(m.residual) + ")");
}

RealMatrix ConeContext::inverse_in_algebra(const RealMatrix& y) const {
  // The identity e is a projection and y = e y e, so y + (I − e) is invertible
  // exactly when y is invertible in the corner, and its inverse restricts there.
  const RealMatrix complement = RealMatrix::identity(dim()) - one();
  const RealMatrix full = y + complement;
  const double cond = condition_number(full);
  if (!(cond <= kResolventCondLimit))
    throw SingularResolvent("resolvent is numerically singular (condition number " + std::to_string(cond) + ")");
  return inverse(full) - complement;
}

RealPositiveResult is_real_positive(const ConeContext& ctx, const RealMatrix& x) {
  ctx.require_member(x, "is_real_positive");
  RealPositiveResult r{};
  const RealMatrix s = x + adjoint(x);
  r.lambda_min = lambda_min(s, ctx.tol());
  r.real_positive = is_psd(s, ctx.tol());
  const double xn = operator_norm(x, ctx.tol());
  r.worst_excess = -INFINITY;
  for (int p = -20; p <= 20; ++p) {
    const double t = std::ldexp(1.0, p);
    const double excess = operator_norm(ctx.one() - x * t, ctx.tol()) - (1.0 + t * t * xn * xn);
    if (excess > r.worst_excess) {
      r.worst_excess = excess;
      r.worst_t = t;
    }
  }
  r.grid_holds = r.worst_excess <= kGridExcessTol;
  // The grid only resolves negative λmin down to about 2·t_min·‖x‖².
  const double band = std::max(ctx.tol().psd_tol * (1.0 + operator_norm(s, ctx.tol())),
                               8.0 * std::ldexp(1.0, -20) * (1.0 + xn * xn));
  r.consistent = r.grid_holds == r.real_positive || std::abs(r.lambda_min) <= band;
  return r;
}

FResult in_F(const ConeContext& ctx, const RealMatrix& x) {
  ctx.require_member(x, "in_F");
  FResult r{};
  r.distance = operator_norm(ctx.one() - x, ctx.tol());
  r.in_f = r.distance <= 1.0 + ctx.tol().psd_tol;
  const RealMatrix alg = x + adjoint(x) - adjoint(x) * x;
  r.algebraic = is_psd(alg, ctx.tol());
  r.real_positive = is_psd(x + adjoint(x), ctx.tol());
  // ‖1 − x‖ ≤ 1 is the same as xᵀx ≤ x + xᵀ (relative to the identity).
  const bool boundary = std::abs(r.distance - 1.0) <= 10.0 * ctx.tol().psd_tol * (1.0 + r.distance);
  r.consistent = (r.in_f == r.algebraic || boundary) && (!r.in_f || r.real_positive);
  return r;
}

FTransformResult f_transform(const ConeContext& ctx, const RealMatrix& x) {
  ctx.require_member(x, "f_transform");
  FTransformResult r{};
  r.value = x * ctx.inverse_in_algebra(ctx.one() + x);
  r.half_f_distance = operator_norm(ctx.one() - r.value * 2.0, ctx.tol());
  r.membership_residual = member(ctx.space(), r.value).residual;
  r.ok = r.half_f_distance <= 1.0 + ctx.tol().psd_tol && r.membership_residual <= kMemberTol;
  return r;
}

RealMatrix f_transform_inverse(const ConeContext& ctx, const RealMatrix& w) {
  ctx.require_member(w, "f_transform_inverse");
  return w * ctx.inverse_in_algebra(ctx.one() - w);
}

std::vector<double> f_limit_residuals(const ConeContext& ctx, const RealMatrix& x, int max_power) {
  std::vector<double> out;
  for (int p = 0; p <= max_power; ++p) {
    const double n = std::ldexp(1.0, p);
    const auto f = f_transform(ctx, x * (1.0 / n));
    out.push_back(operator_norm(f.value * n - x, ctx.tol()));
  }
  return out;
}

CayleyReport cayley_check(const ConeContext& ctx, const RealMatrix& t, CayleyDirection direction) {
  ctx.require_member(t, "cayley_check");
  const RealMatrix& one = ctx.one();
  CayleyReport r{direction, RealMatrix(ctx.dim()), 0.0, 0.0, false};
  if (direction == CayleyDirection::contraction_to_accretive) {
    r.input_margin = 1.0 - operator_norm(t, ctx.tol());
    if (!(r.input_margin > 1e-9)) throw std::invalid_argument("cayley_check: T is not a strict contraction");
    r.image = (one + t) * ctx.inverse_in_algebra(one - t);
    // accretivity is measured inside the corner of the identity
    const RealMatrix s = r.image + adjoint(r.image) + (RealMatrix::identity(ctx.dim()) - one);
    r.output_margin = lambda_min(s, ctx.tol());
    r.holds = r.output_margin > 0.0;
  } else {
    const RealMatrix s = t + adjoint(t) + (RealMatrix::identity(ctx.dim()) - one);
    r.input_margin = lambda_min(s, ctx.tol());
    if (!(r.input_margin > 0.0)) throw std::invalid_argument("cayley_check: T is not strictly accretive");
    r.image = (t - one) * ctx.inverse_in_algebra(t + one);
    r.output_margin = 1.0 - operator_norm(r.image, ctx.tol());
    r.holds = r.output_margin > 0.0;
  }
  return r;
}

RealPositiveSplit decompose_real_positive(const ConeContext& ctx, const RealMatrix& b) {
  ctx.require_member(b, "decompose_real_positive");
  if (!(operator_norm(b, ctx.tol()) < 1.0)) throw std::invalid_argument("decompose_real_positive: requires ‖b‖ < 1");
  RealPositiveSplit r{(ctx.one() + b) * 0.5, (ctx.one() - b) * 0.5, 0.0, false, false};
  r.reconstruction_residual = max_abs_diff(r.x - r.y, b);
  r.x_in_half_f = in_F(ctx, r.x * 2.0).in_f;
  r.y_in_half_f = in_F(ctx, r.y * 2.0).in_f;
  return r;
}

SelfadjointSplit sa_cone_decompose(const Subspace& x_space, const RealMatrix& x, const ToleranceConfig& tol) {
  if (!member(x_space, x).member) throw std::invalid_argument("sa_cone_decompose: element not in the space");
  if (classify_symmetry(x, tol).kind != SymmetryKind::selfadjoint && max_abs(x) > 0.0)
    throw std::invalid_argument("sa_cone_decompose: element is not selfadjoint");
  if (!is_selfadjoint_space(x_space)) throw std::invalid_argument("sa_cone_decompose: space is not selfadjoint");
  RealMatrix one = RealMatrix::identity(x_space.ambient_dim());
  if (x_space.identity()) one = *x_space.identity();
  else if (!member(x_space, one).member) throw std::invalid_argument("sa_cone_decompose: space is not unital");
  const double n = operator_norm(x, tol);
  SelfadjointSplit r{(one * n + x) * 0.5, (one * n - x) * 0.5, 0.0, false, false};
  r.reconstruction_residual = max_abs_diff(r.p - r.q, x);
  r.p_psd = is_psd(r.p, tol);
  r.q_psd = is_psd(r.q, tol);
  return r;
}

AntisymResult antisym_via_cone(const ConeContext& ctx, const RealMatrix& x) {
  AntisymResult r{};
  r.via_cone = is_real_positive(ctx, x).real_positive && is_real_positive(ctx, -x).real_positive;
  r.via_symmetry = classify_symmetry(x, ctx.tol()).kind == SymmetryKind::antisymmetric || max_abs(x) == 0.0;
  r.agree = r.via_cone == r.via_symmetry;
  return r;
}

namespace {

RealMatrix random_member(const Subspace& s, Rng& rng) {
  std::vector<double> c(s.size());
  for (double& v : c) v = rng.normal();
  return s.combine(c);
}

double corner_shift(const RealMatrix& sym, const RealMatrix& one) {
  const double n = operator_norm(sym);
  return -lambda_min(sym + (RealMatrix::identity(one.dim()) - one) * n);
}

}  // namespace

RealMatrix sample_psd_element(const Subspace& sa_space, const RealMatrix& one, Rng& rng) {
  const RealMatrix h = sa_space.empty() ? RealMatrix(one.dim()) : sym_part(random_member(sa_space, rng));
  const bool boundary = rng.index(4) == 0;
  const double margin = boundary ? 0.0 : rng.uniform() * (1.0 + operator_norm(h));
  return h + one * (corner_shift(h, one) + margin);
}

RealMatrix sample_real_positive_element(const Subspace& x_space, const RealMatrix& one, Rng& rng) {
  const RealMatrix c = random_member(x_space, rng);
  const bool boundary = rng.index(4) == 0;
  const double margin = boundary ? 0.0 : rng.uniform() * (1.0 + operator_norm(c));
  return c + one * (corner_shift(sym_part(c), one) + margin);
}

bool real_precedes(const ConeContext& ctx, const RealMatrix& b, const RealMatrix& a) {
  return is_psd((a - b) + adjoint(a - b), ctx.tol());
}

}  // namespace roal
