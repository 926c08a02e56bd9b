// Linear functionals φ(x) = tr(Fᵀx) on subspaces of M_n: norms, the
// positivity taxonomy, positive extension and the skew positive family.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "roal/cones.hpp"

namespace roal {

struct Functional {
  Subspace domain;
  RealMatrix riesz;

  Functional(Subspace domain, RealMatrix riesz);
  /// φ with prescribed values on the domain's orthonormal basis.
  static Functional from_basis_values(Subspace domain, std::span<const double> values);

  double operator()(const RealMatrix& x) const { return inner(riesz, x); }
  /// Riesz representative projected onto the domain; φ only sees this part.
  RealMatrix restricted_riesz() const { return domain.project(riesz); }
};

struct NormCertificate {
  double value = 0.0;           // best feasible objective, a lower bound for ‖φ‖
  RealMatrix maximizer;         // in the domain, ‖·‖ ≤ 1 + 1e-9
  double upper_bound = 0.0;     // ‖G‖₁ over Riesz representatives G seen (dual bound)
  double gap_estimate = 0.0;    // upper_bound − value
  std::optional<double> nuclear_oracle;  // exact value when the domain is all of M_n
  std::uint64_t seed = 0;
  int restarts = 0;
};

struct FunctionalNormOptions {
  int restarts = 0;           // extra random starts; the problem is convex
  int max_iterations = 20000;
  double convergence = 1e-10;
  std::uint64_t seed = 0;
};

/// The constraint ‖Σ cᵢ images[i]‖ ≤ radius on a coordinate vector c.
struct NormBallConstraint {
  std::vector<RealMatrix> images;
  double radius = 1.0;
};

struct LinearMaximum {
  std::vector<double> point;  // feasible
  double value;
  double upper_bound;         // dual objective of a feasible dual point
  int iterations;
};

/// max ⟨f, c⟩ subject to every constraint, by a Chambolle–Pock primal-dual
/// iteration stopped when the certified gap is ≤ tol·(1 + |value|). The
/// constraints must bound c jointly (Σ KⱼᵀKⱼ invertible).
LinearMaximum maximize_linear(std::span<const double> f, const std::vector<NormBallConstraint>& constraints,
                              std::span<const double> start, int max_iterations = 20000, double tol = 1e-10);

/// Maximizes φ over the unit ball of the domain. Full M_n is solved exactly by
/// the polar factor; proper subspaces run a primal-dual iteration whose dual
/// iterate certifies upper_bound.
NormCertificate functional_norm(const Functional& phi, const FunctionalNormOptions& opts = {});

/// Frobenius-nearest point of X ∩ {‖x‖ ≤ radius}, by Dykstra alternation.
RealMatrix project_subspace_ball(const Subspace& x, const RealMatrix& y, double radius = 1.0,
                                 int max_iterations = 500);

struct FunctionalFlags {
  bool positive = false;
  bool positivity_exact = false;    // false means "sampled"
  bool selfadjoint = false;         // vanishes on the antisymmetric part of Δ(X)
  bool real_positive = false;
  bool real_positivity_exact = false;
  bool srp = false;
  bool state = false;
  double value_at_one = 0.0;
  NormCertificate norm;
  double min_psd_value = 0.0;       // smallest φ(p) seen over PSD samples (normalized)
  double min_real_positive_value = 0.0;
  double antisymmetric_leak = 0.0;  // max |φ(a)| over an orthonormal basis of Δ(X)_as
  bool norm_equals_value_at_one = false;
  bool chain_consistent = false;    // real positive ⇔ srp ⇔ ‖φ‖ = φ(1)
  std::uint64_t seed = 0;
  std::size_t samples = 0;
};

/// Classifies φ on a unital domain. `ctx` supplies the identity and tolerances.
FunctionalFlags classify_functional(const Functional& phi, const ConeContext& ctx, std::uint64_t seed = 0,
                                    std::size_t samples = 1000);

/// F = [[1, s], [−s, 1]] on M_2.
Functional skew_positive_functional(double s);

struct PositiveExtension {
  Functional extension;     // on all of M_n
  RealMatrix g;             // symmetric PSD Riesz representative
  double constraint_residual;
  double lambda_min;
  double trace_target;
  int iterations;
  std::string method;  // "dykstra" or "barrier"
};

/// Positive selfadjoint extension of a real positive φ on a unital X to M_n with
/// tr(G) = φ(1) = ‖φ‖. Throws ConvergenceError when Dykstra does not reach 1e-7
/// within max_iterations.
PositiveExtension extend_positive(const Functional& phi, int max_iterations = 50000);

/// Orthonormal basis of span{a_k} with the targets carried along, for
/// projections onto {G : ⟨a_k, G⟩ = t_k}.
struct AffineConstraints {
  std::vector<RealMatrix> q;
  std::vector<double> tau;
  std::vector<RealMatrix> a;      // original normals
  std::vector<double> targets;    // original targets

  AffineConstraints(std::vector<RealMatrix> normals, std::vector<double> values);
  RealMatrix project(const RealMatrix& g) const;
  /// max_k |⟨a_k, g⟩ − t_k|.
  double residual(const RealMatrix& g) const;
};

struct DykstraResult {
  RealMatrix point;  // PSD
  double residual;   // affine residual of point
  int iterations;
  bool converged;
  std::string method = "dykstra";
};
/// PSD ∩ affine feasibility by Dykstra, starting at `start`.
DykstraResult dykstra_psd_affine(const AffineConstraints& c, const RealMatrix& start, int max_iterations,
                                 double tol, const ToleranceConfig& tc = {});
/// Same feasibility problem by a log-det barrier maximizing λmin over the
/// symmetric matrices in the affine set (symmetric normals assumed). Handles
/// feasible sets that are thin faces of the cone, where Dykstra stalls.
DykstraResult barrier_psd_affine(const AffineConstraints& c, std::size_t dim, double tol,
                                 const ToleranceConfig& tc = {});
/// Dykstra from 0 within max_iterations, then the barrier method if needed.
DykstraResult solve_psd_affine(const AffineConstraints& c, std::size_t dim, int max_iterations, double tol,
                               const ToleranceConfig& tc = {});

}  // namespace roal
