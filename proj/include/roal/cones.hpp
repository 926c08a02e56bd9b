// Real-positive cone r_A = {x : x + xᵀ ≥ 0}, the set F_A = {‖1 − x‖ ≤ 1},
// the F-transform x(1+x)⁻¹, Cayley transforms and the cone decompositions.
#pragma once

#include <vector>

#include "roal/algebra.hpp"
#include "roal/random.hpp"

namespace roal {

/// A unital algebra together with the tolerances used for cone tests.
class ConeContext {
 public:
  explicit ConeContext(AlgebraDescriptor algebra, ToleranceConfig tol = {});
  /// Context for the full matrix algebra M_n.
  static ConeContext full(std::size_t n, ToleranceConfig tol = {});

  const AlgebraDescriptor& algebra() const { return algebra_; }
  const Subspace& space() const { return algebra_.subspace; }
  const RealMatrix& one() const { return *algebra_.subspace.identity(); }
  const ToleranceConfig& tol() const { return tol_; }
  std::size_t dim() const { return algebra_.subspace.ambient_dim(); }

  /// Throws std::invalid_argument unless x lies in the algebra.
  void require_member(const RealMatrix& x, const char* where) const;
  /// Inverse of y inside the algebra (relative to its identity, which may be a
  /// proper projection). Throws SingularResolvent when the condition number exceeds 1e12.
  RealMatrix inverse_in_algebra(const RealMatrix& y) const;

 private:
  AlgebraDescriptor algebra_;
  ToleranceConfig tol_;
};

class SingularResolvent : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kResolventCondLimit = 1e12;

struct RealPositiveResult {
  bool real_positive;   // PSD test on x + xᵀ
  double lambda_min;    // λmin(x + xᵀ)
  bool grid_holds;      // ‖1 − tx‖ ≤ 1 + t²‖x‖² on every grid point
  double worst_t;       // grid point with the largest excess
  double worst_excess;  // max over the grid of ‖1 − tx‖ − 1 − t²‖x‖²
  bool consistent;      // grid verdict agrees with the PSD verdict (or λmin is in the ambiguity band)
};
/// Grid t ∈ {2⁻²⁰, …, 2²⁰}.
RealPositiveResult is_real_positive(const ConeContext& ctx, const RealMatrix& x);

struct FResult {
  bool in_f;            // ‖1 − x‖ ≤ 1 + psd_tol
  double distance;      // ‖1 − x‖
  bool algebraic;       // x + xᵀ − xᵀx ≥ 0
  bool real_positive;   // F ⊂ r cross-check
  bool consistent;
};
FResult in_F(const ConeContext& ctx, const RealMatrix& x);

struct FTransformResult {
  RealMatrix value;             // x(1+x)⁻¹
  double half_f_distance;       // ‖1 − 2·value‖
  double membership_residual;
  bool ok;                      // value ∈ ½F and in the algebra
};
FTransformResult f_transform(const ConeContext& ctx, const RealMatrix& x);
/// w(1 − w)⁻¹, the inverse of the F-transform on ½F ∩ open unit ball.
RealMatrix f_transform_inverse(const ConeContext& ctx, const RealMatrix& w);
/// ‖n·F(x/n) − x‖ for n = 2⁰, …, 2^max_power.
std::vector<double> f_limit_residuals(const ConeContext& ctx, const RealMatrix& x, int max_power = 10);

enum class CayleyDirection { contraction_to_accretive, accretive_to_contraction };

struct CayleyReport {
  CayleyDirection direction;
  RealMatrix image;
  double input_margin;   // 1 − ‖T‖, or λmin(T + Tᵀ)
  double output_margin;  // λmin(θ + θᵀ), or 1 − ‖θ‖
  bool holds;
};
/// contraction_to_accretive: θ = (1+T)(1−T)⁻¹; accretive_to_contraction: (T−1)(T+1)⁻¹.
CayleyReport cayley_check(const ConeContext& ctx, const RealMatrix& t, CayleyDirection direction);

struct RealPositiveSplit {
  RealMatrix x;
  RealMatrix y;
  double reconstruction_residual;  // max |x − y − b|
  bool x_in_half_f;
  bool y_in_half_f;
};
/// b = (1+b)/2 − (1−b)/2 with both halves in ½F; requires ‖b‖ < 1.
RealPositiveSplit decompose_real_positive(const ConeContext& ctx, const RealMatrix& b);

struct SelfadjointSplit {
  RealMatrix p;
  RealMatrix q;
  double reconstruction_residual;
  bool p_psd;
  bool q_psd;
};
/// x = ½(‖x‖1 + x) − ½(‖x‖1 − x) for selfadjoint x in a unital selfadjoint space.
SelfadjointSplit sa_cone_decompose(const Subspace& x_space, const RealMatrix& x, const ToleranceConfig& tol = {});

struct AntisymResult {
  bool via_cone;       // x ∈ r ∩ −r
  bool via_symmetry;   // classify_symmetry says antisymmetric
  bool agree;
};
AntisymResult antisym_via_cone(const ConeContext& ctx, const RealMatrix& x);

/// Random PSD element h + s·one with h drawn from `sa_space` (selfadjoint
/// elements, may be the zero space) and s the smallest shift making it PSD in
/// the corner of `one`, plus a random nonnegative margin. Every fourth draw sits on the boundary.
RealMatrix sample_psd_element(const Subspace& sa_space, const RealMatrix& one, Rng& rng);
/// Random element of r_X: a random x ∈ X shifted by a multiple of `one`.
RealMatrix sample_real_positive_element(const Subspace& x_space, const RealMatrix& one, Rng& rng);

/// a − b ∈ r_A.
bool real_precedes(const ConeContext& ctx, const RealMatrix& b, const RealMatrix& a);

}  // namespace roal
