// Real-linear maps between subspaces of matrix algebras: amplification,
// positivity at each matrix level, Choi/Kraus/Stinespring for CP maps,
// leveled norm estimates and the standard extension constructions.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "roal/complexify.hpp"
#include "roal/functionals.hpp"

namespace roal {

/// T : X → M_k stored by the images of X's orthonormal basis.
struct LinearMap {
  Subspace domain;
  std::size_t codomain_dim;
  std::vector<RealMatrix> images;

  LinearMap(Subspace domain, std::size_t codomain_dim, std::vector<RealMatrix> images);
  /// Tabulates f on the domain basis; f is trusted to be linear.
  static LinearMap from_function(Subspace domain, std::size_t codomain_dim,
                                 const std::function<RealMatrix(const RealMatrix&)>& f);

  /// Throws NotInDomain when x is not in the domain.
  RealMatrix operator()(const RealMatrix& x) const;
  RealMatrix apply_coordinates(std::span<const double> coords) const;
  /// T*(w) for the trace pairing, as an element of the domain.
  RealMatrix adjoint_apply(const RealMatrix& w) const;
};

class NotInDomain : public std::invalid_argument {
 public:
  NotInDomain(const std::string& what, double residual) : std::invalid_argument(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

RealMatrix apply(const LinearMap& t, const RealMatrix& x);

LinearMap identity_map(const Subspace& x);
LinearMap transpose_map(std::size_t n);
/// x ↦ Σ vᵢ x vᵢᵀ on all of M_n; each vᵢ is k×n.
LinearMap conjugation_map(const std::vector<RealMatrix>& v);
LinearMap restrict_map(const LinearMap& t, const Subspace& s);
LinearMap scale_map(const LinearMap& t, double c);
LinearMap add_maps(const LinearMap& a, const LinearMap& b);

/// M_k(X) ⊂ M_{kn} with basis E_ij ⊗ b_l; identity I_k ⊗ 1 when X is unital.
Subspace amplify_subspace(const Subspace& x, std::size_t k);
/// Selfadjoint part of M_k(Δ(X)), built blockwise from Δ(X)_sa and Δ(X)_as.
Subspace amplified_selfadjoint_diagonal(const Subspace& x, std::size_t k);
/// T_k acting entrywise on k×k block matrices.
LinearMap amplify(const LinearMap& t, std::size_t k);
/// T_k(x) without materializing the amplified map.
RealMatrix apply_blocks(const LinearMap& t, const RealMatrix& x);

struct MapNormCertificate {
  std::size_t level = 1;
  double value = 0.0;      // ‖T_k(maximizer)‖, a lower bound for ‖T_k‖
  RealMatrix maximizer;    // in M_k(X), operator norm ≤ 1 + 1e-9
  double upper_bound = 0.0;
  int restarts = 0;
  std::uint64_t seed = 0;
};

struct MapNormOptions {
  int restarts = 6;
  int max_rounds = 200;
  std::uint64_t seed = 0;
};

/// Lower bound for ‖T_k‖ by alternating between the top singular pair of
/// T_k(x) and the exact linear maximization over the unit ball of M_k(X).
MapNormCertificate map_norm(const LinearMap& t, std::size_t level, const MapNormOptions& opts = {});
/// Certificates for each level; level k is warm-started from level k−1, so
/// the sequence never decreases.
std::vector<MapNormCertificate> map_norms(const LinearMap& t, const std::vector<std::size_t>& levels,
                                          const MapNormOptions& opts = {});

struct ChoiMatrix {
  RealMatrix matrix;  // block (i, j) = T(E_ij)
  std::size_t n;
  std::size_t k;
};

class NotFullDomain : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class NotCompletelyPositive : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ChoiMatrix choi(const LinearMap& t);
LinearMap from_choi(const ChoiMatrix& c);
bool is_cp(const LinearMap& t, const ToleranceConfig& tol = {});
/// Kraus operators (k×n) from the eigendecomposition of the Choi matrix;
/// eigenvalues below psd_tol·trace are dropped.
std::vector<RealMatrix> kraus(const ChoiMatrix& c, const ToleranceConfig& tol = {});

/// T(a) = Vᵀ π(a) V with π(a) = I_m ⊗ a and V the stacked Kraus transposes.
struct Stinespring {
  RealMatrix v;  // (m·n) × k
  std::size_t multiplicity;
  std::size_t n;
  double reconstruction_residual;  // max over matrix units of |T(E_ij) − Vᵀπ(E_ij)V|
  double norm_gap;                 // |‖V‖² − ‖T(1)‖|

  RealMatrix pi(const RealMatrix& a) const;
  RealMatrix dilate(const RealMatrix& a) const { return adjoint(v) * pi(a) * v; }
};
Stinespring stinespring(const LinearMap& t, const ToleranceConfig& tol = {});

struct LevelReport {
  std::size_t level;
  bool positive;
  bool real_positive;
  double worst_psd_margin;            // min λmin(sym T_k(p)) / (1 + ‖T_k(p)‖)
  double worst_real_positive_margin;  // same over sampled real positive inputs
  std::optional<RealMatrix> psd_witness;
  std::optional<RealMatrix> real_positive_witness;
  bool exact;                         // decided by the Choi matrix
};

struct MapFlags {
  bool selfadjoint = false;       // on Δ(X): sa ↦ symmetric, as ↦ antisymmetric
  double selfadjoint_residual = 0.0;
  bool positive = false;          // level 1
  bool real_positive = false;     // level 1
  bool rcp = false;               // every requested level
  bool srp = false;
  std::optional<bool> cp;         // Choi criterion on full domains
  std::vector<LevelReport> levels;
  bool selfadjoint_domain = false;
  bool equivalence_holds = true;  // on selfadjoint domains: srp ⇔ positive ∧ selfadjoint
  bool propagation_holds = true;  // real k-positive into M_k ⇒ all sampled higher levels
  std::uint64_t seed = 0;
  std::size_t samples = 0;
};

/// Domain must contain ctx.one(). Level 1 is always examined.
MapFlags classify_map(const LinearMap& t, const ConeContext& ctx, const std::vector<std::size_t>& levels = {1},
                      std::uint64_t seed = 0, std::size_t samples = 200);

class WellDefinednessError : public std::runtime_error {
 public:
  WellDefinednessError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct SelfadjointExtension {
  LinearMap map;                     // on X + Xᵀ
  double well_definedness_residual;  // max |T(d) − T(dᵀ)ᵀ| over sampled d ∈ Δ(X)
  bool selfadjoint;
  bool positive_sampled;
};
/// x + yᵀ ↦ T(x) + T(y)ᵀ. Throws WellDefinednessError when T is not
/// selfadjoint on Δ(X).
SelfadjointExtension canonical_sa_extension(const LinearMap& t, const ConeContext& ctx, std::uint64_t seed = 0);

struct RealBoundedNorm {
  double value;          // lower bound for sup ‖sym u(x)‖ over ‖sym x‖ ≤ 1
  RealMatrix maximizer;
  std::optional<double> value_at_one;  // ‖u(1)‖ on unital domains
};
/// The antisymmetric part of x is bounded by skew_cap in operator norm.
RealBoundedNorm real_bounded_norm(const LinearMap& u, double skew_cap = 1e3, std::uint64_t seed = 0);

/// embed(x, y) ↦ embed(T(x), T(y)) on the complexified domain.
LinearMap complexify_map(const LinearMap& t);

class SampledViolation : public std::runtime_error {
 public:
  SampledViolation(const std::string& what, RealMatrix witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const RealMatrix& witness() const { return witness_; }

 private:
  RealMatrix witness_;
};

struct UnitizationExtension {
  LinearMap map;  // on span(A ∪ {1})
  double real_bounded_norm;
  double worst_margin;  // min λmin(sym T̃(x)) over sampled x ∈ 𝔯
  std::size_t samples;
};
/// T̃(a + s·1) = T(a) + s·1 for a real positive, real-contractive T on a
/// non-unital A ⊂ M_n into M_k. Throws invalid_argument when the hypotheses
/// fail and SampledViolation when a sampled real positive input is mapped
/// outside the cone.
UnitizationExtension extend_to_unitization(const LinearMap& t, std::uint64_t seed = 0, std::size_t samples = 500);

struct CpExtension {
  LinearMap map;  // on all of M_n
  ChoiMatrix choi;
  double restriction_residual;
  double lambda_min;
  int iterations;
  std::string method = "dykstra";  // or "barrier", or "none" when T is already CP on M_n
};
/// CP extension of T from a unital selfadjoint S ⊂ M_n to M_n by Dykstra
/// between the PSD cone and the Choi matrices consistent with T on S.
/// Throws ConvergenceError when the budget runs out.
CpExtension extend_cp(const LinearMap& t, int max_iterations = 50000);

struct JordanHomReport {
  bool jordan_hom;
  double hom_residual;
  double norm;  // level-1 lower bound
  bool contractive;
  bool selfadjoint;
  bool srp;
  bool implication_holds;  // contractive Jordan hom on a JC*-algebra ⇒ selfadjoint ∧ srp
};
JordanHomReport jordan_hom_check(const LinearMap& t, const ConeContext& a, std::uint64_t seed = 0);

struct SchwarzReport {
  bool skipped;
  std::string reason;
  double min_margin;  // min λmin(Φ(aᵀa) − Φ(a)ᵀΦ(a))
  std::size_t samples;
  bool holds;
};
/// Φ(aᵀa) ⪰ Φ(a)ᵀΦ(a) on sampled a for a unital 2-positive Φ on a unital
/// C*-subalgebra of M_n.
SchwarzReport schwarz_check(const LinearMap& phi, std::size_t samples = 200, std::uint64_t seed = 0);

}  // namespace roal
