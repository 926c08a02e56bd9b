// Finite-dimensional real operator spaces and (Jordan) operator algebras
// inside M_n: orthonormal bases, closures, the diagonal A ∩ A*, identity
// detection, unitization and the named constructions.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "roal/matrix.hpp"

namespace roal {

/// A subspace of M_n stored by a basis that is orthonormal for ⟨a,b⟩ = tr(aᵀb).
/// The zero subspace is allowed.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim);
  /// Takes an already orthonormal basis; throws if the Gram residual exceeds 1e-10.
  Subspace(std::size_t ambient_dim, std::vector<RealMatrix> orthonormal_basis);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return basis_.size(); }
  bool empty() const { return basis_.empty(); }
  const std::vector<RealMatrix>& basis() const { return basis_; }
  const RealMatrix& operator[](std::size_t i) const { return basis_[i]; }

  std::vector<double> coordinates(const RealMatrix& m) const;
  RealMatrix combine(std::span<const double> coords) const;
  RealMatrix project(const RealMatrix& m) const;
  /// Frobenius distance from m to the subspace.
  double distance(const RealMatrix& m) const;

  /// The identity element, if one has been attached (see with_identity).
  const std::optional<RealMatrix>& identity() const { return identity_; }
  bool is_unital() const { return identity_.has_value(); }
  /// Attaches e as the identity after checking membership and e∘b = b on the basis.
  Subspace with_identity(const RealMatrix& e) const;

 private:
  std::size_t ambient_dim_;
  std::vector<RealMatrix> basis_;
  std::optional<RealMatrix> identity_;
};

struct SubspaceFlags {
  bool is_selfadjoint_space = false;
  bool is_jordan_closed = false;
  bool is_assoc_closed = false;
  bool is_unital = false;
};
SubspaceFlags structure_flags(const Subspace& s);
bool is_selfadjoint_space(const Subspace& s);
bool is_jordan_closed(const Subspace& s);
bool is_assoc_closed(const Subspace& s);

/// Gram–Schmidt on vectorized matrices. Throws if every generator is zero.
Subspace orthonormal_basis(const std::vector<RealMatrix>& generators);
/// All of M_n with the standard matrix units as basis and identity attached.
Subspace full_matrix_space(std::size_t n);
/// Span of the subspace together with extra elements (zero subspace allowed).
Subspace span_with(const Subspace& s, const std::vector<RealMatrix>& extra);
/// Image under transposition.
Subspace adjoint_space(const Subspace& s);

class ClosureBlowup : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest subspace containing the generators and closed under a∘b.
/// max_dim = 0 means ambient_dim².
Subspace close_jordan(const std::vector<RealMatrix>& generators, std::size_t max_dim = 0);
/// Same with the associative product ab.
Subspace close_assoc(const std::vector<RealMatrix>& generators, std::size_t max_dim = 0);

/// Δ(A) = A ∩ Aᵀ.
Subspace diagonal(const Subspace& a);
/// X_sa and X_as for a selfadjoint space X.
Subspace selfadjoint_part(const Subspace& s);
Subspace antisymmetric_part(const Subspace& s);

/// Jordan unit of A, if any: e ∈ A with e∘b = b for all b, ‖e‖ ≤ 1 + norm_rel_tol.
std::optional<RealMatrix> find_identity(const Subspace& a, const ToleranceConfig& tol = {});

struct Membership {
  bool member;
  double residual;
};
Membership member(const Subspace& a, const RealMatrix& m);

enum class AlgebraKind { operator_space, operator_system, jordan_algebra, assoc_algebra, jc_star };
std::string to_string(AlgebraKind k);
AlgebraKind algebra_kind_from_string(const std::string& s);

struct AlgebraDescriptor {
  std::string name;
  Subspace subspace;
  AlgebraKind kind;
};

/// Validates that the kind's closure flags hold; attaches the identity when found.
AlgebraDescriptor make_algebra(std::string name, Subspace s, AlgebraKind kind,
                               const ToleranceConfig& tol = {});

class AlreadyUnital : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A¹ for a Jordan algebra A ⊂ M_n that does not contain the ambient identity.
struct Unitization {
  AlgebraDescriptor algebra;  // span(A ∪ {I}) with identity I attached
  Subspace original;
  RealMatrix unit;            // ambient identity
  std::optional<RealMatrix> internal_identity;

  /// Norm of a + λ1. Uses max{‖a+λe‖, |λ|} when A has its own identity e,
  /// otherwise the ambient operator norm.
  double norm(const RealMatrix& a, double lambda) const;
  /// Ambient operator norm ‖a + λI‖.
  double direct_norm(const RealMatrix& a, double lambda) const;
};
Unitization unitize(const Subspace& a, const RealMatrix& ambient_identity, const ToleranceConfig& tol = {});

struct UnitizationSupResult {
  double direct;       // ‖a + λ1‖
  double at_identity;  // ‖a∘1 + λ1‖
  double sampled_sup;  // max over sampled contractions c of ‖a∘c + λc‖
  double worst_excess; // sampled_sup − direct
};
/// Sup over sampled c ∈ Ball(A) of ‖a∘c + λc‖ for a unital A.
UnitizationSupResult unitization_sup_norm(const Subspace& a, const RealMatrix& x, double lambda,
                                          std::size_t samples, std::uint64_t seed);

struct UnitizationReport {
  std::size_t elements = 0;
  double worst_upper_gap = 0.0;  // max(sup − ‖a+λ1‖)
  double worst_lower_gap = 0.0;  // max(‖a+λ1‖ − sup)
  bool passed = false;
};
UnitizationReport unitization_norm_check(const Subspace& a, std::size_t element_count,
                                         std::size_t contraction_samples, std::uint64_t seed,
                                         double tol = 1e-9);

/// U(X) = {[[αI, x], [0, βI]]} ⊂ M_2n for an operator space X ⊂ M_n.
struct TriangleAlgebra {
  AlgebraDescriptor algebra;
  Subspace x_space;

  RealMatrix element(double alpha, const RealMatrix& x, double beta) const;
  double direct_norm(double alpha, const RealMatrix& x, double beta) const;
  /// sqrt of sup_{t∈[0,1]} (|α|√(1−t²) + ‖x‖t)² + |βt|², by golden-section search.
  static double formula_norm(double alpha, double x_norm, double beta);
  /// ‖[[|α|, ‖x‖], [0, |β|]]‖.
  static double scalar_triangle_norm(double alpha, double x_norm, double beta);
};
TriangleAlgebra build_triangle(const Subspace& x);

/// k real symmetric matrices with u_i² = I and u_i∘u_j = 0 for i ≠ j, built
/// from tensor strings of σx, σz and J = [[0,1],[-1,0]].
std::vector<RealMatrix> spin_system(int k);
/// Ambient dimension used by spin_system(k).
std::size_t spin_dimension(int k);

RealMatrix sigma_x();
RealMatrix sigma_z();
RealMatrix rotation_j();

}  // namespace roal
