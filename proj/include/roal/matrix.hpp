// Dense real matrix kernel: adjoints, Jordan products, symmetric
// eigendecomposition (cyclic Jacobi), operator norms and PSD tests.
#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace roal {

/// Thrown when operand shapes do not fit an operation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative method exhausts its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ToleranceConfig {
  double psd_tol = 1e-9;
  double norm_rel_tol = 1e-7;
  int eig_sweep_limit = 100;

  void validate() const;
};

/// Row-major dense real matrix. Most of the library works with square
/// matrices; rectangular shapes appear for Kraus operators and dilations.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols);
  explicit RealMatrix(std::size_t dim) : RealMatrix(dim, dim) {}
  RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  RealMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static RealMatrix identity(std::size_t dim);
  static RealMatrix zero(std::size_t dim) { return RealMatrix(dim); }
  static RealMatrix unit(std::size_t dim, std::size_t i, std::size_t j);
  static RealMatrix diag(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  /// Side length of a square matrix; throws DimensionError otherwise.
  std::size_t dim() const;

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> entries() { return data_; }
  std::span<const double> entries() const { return data_; }

  RealMatrix& operator+=(const RealMatrix& o);
  RealMatrix& operator-=(const RealMatrix& o);
  RealMatrix& operator*=(double s);

  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

RealMatrix operator+(RealMatrix a, const RealMatrix& b);
RealMatrix operator-(RealMatrix a, const RealMatrix& b);
RealMatrix operator-(RealMatrix a);
RealMatrix operator*(RealMatrix a, double s);
RealMatrix operator*(double s, RealMatrix a);
RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
bool operator==(const RealMatrix& a, const RealMatrix& b);

RealMatrix adjoint(const RealMatrix& m);
RealMatrix jordan(const RealMatrix& a, const RealMatrix& b);
RealMatrix kron(const RealMatrix& a, const RealMatrix& b);
RealMatrix direct_sum(const RealMatrix& a, const RealMatrix& b);

double trace(const RealMatrix& m);
/// Trace pairing tr(aᵀb).
double inner(const RealMatrix& a, const RealMatrix& b);
double frobenius_norm(const RealMatrix& m);
double max_abs(const RealMatrix& m);
double max_abs_diff(const RealMatrix& a, const RealMatrix& b);

RealMatrix sym_part(const RealMatrix& m);
RealMatrix skew_part(const RealMatrix& m);

struct EigenDecomposition {
  std::vector<double> values;  // descending
  RealMatrix vectors;          // columns are eigenvectors
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
EigenDecomposition sym_eig(const RealMatrix& m, const ToleranceConfig& tol = {});
double lambda_min(const RealMatrix& symmetric, const ToleranceConfig& tol = {});
double lambda_max(const RealMatrix& symmetric, const ToleranceConfig& tol = {});

/// Largest singular value, √λmax(mᵀm).
double operator_norm(const RealMatrix& m, const ToleranceConfig& tol = {});
/// Sum of singular values.
double nuclear_norm(const RealMatrix& m, const ToleranceConfig& tol = {});
std::vector<double> singular_values(const RealMatrix& m, const ToleranceConfig& tol = {});

bool is_symmetric(const RealMatrix& m, double tol);
bool is_psd(const RealMatrix& m, const ToleranceConfig& tol = {});

enum class SymmetryKind { selfadjoint, antisymmetric, neither };
std::string to_string(SymmetryKind k);

struct SymmetrySplit {
  SymmetryKind kind;
  RealMatrix sa_part;
  RealMatrix as_part;
};
SymmetrySplit classify_symmetry(const RealMatrix& m, const ToleranceConfig& tol = {});

/// Frobenius-nearest point of the operator-norm ball: singular values clipped at `radius`.
RealMatrix clip_to_ball(const RealMatrix& m, double radius = 1.0, const ToleranceConfig& tol = {});
/// Frobenius-nearest PSD matrix to sym(m): negative eigenvalues clipped at zero.
RealMatrix clip_to_psd(const RealMatrix& m, const ToleranceConfig& tol = {});
/// Orthogonal factor U Vᵀ of the SVD; rank-deficient directions are completed
/// deterministically so the result is orthogonal.
RealMatrix polar_factor(const RealMatrix& m, const ToleranceConfig& tol = {});
/// Top singular pair (u, v) with m v = σ u.
struct SingularPair {
  double sigma;
  std::vector<double> u;
  std::vector<double> v;
};
SingularPair top_singular_pair(const RealMatrix& m, const ToleranceConfig& tol = {});

/// LU solve with partial pivoting; b may have several columns.
RealMatrix solve(const RealMatrix& a, const RealMatrix& b);
RealMatrix inverse(const RealMatrix& a);
/// 1-norm condition number estimate ‖a‖₁‖a⁻¹‖₁ (infinity when singular).
double condition_number(const RealMatrix& a);

/// Minimum-norm least-squares solution of a x = b (a is rows×cols, b a
/// column vector) using Householder QR with column pivoting.
struct LeastSquares {
  std::vector<double> x;
  double residual;  // ‖a x − b‖₂
  std::size_t rank;
};
LeastSquares least_squares(const RealMatrix& a, std::span<const double> b, double rank_tol = 1e-12);

}  // namespace roal
