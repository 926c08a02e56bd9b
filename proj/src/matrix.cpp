#include "roal/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace roal {

void ToleranceConfig::validate() const {
  if (!(psd_tol >= 0.0) || !(norm_rel_tol >= 0.0))
    throw std::invalid_argument("tolerances must be nonnegative");
  if (eig_sweep_limit < 1) throw std::invalid_argument("eig_sweep_limit must be at least 1");
}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_)
    throw DimensionError("entry count " + std::to_string(data_.size()) + " does not match " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
}

RealMatrix::RealMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RealMatrix RealMatrix::identity(std::size_t dim) {
  RealMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::unit(std::size_t dim, std::size_t i, std::size_t j) {
  RealMatrix m(dim);
  m(i, j) = 1.0;
  return m;
}

RealMatrix RealMatrix::diag(std::span<const double> d) {
  RealMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

std::size_t RealMatrix::dim() const {
  if (rows_ != cols_)
    throw DimensionError("expected a square matrix, got " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
  return rows_;
}

static void require_same_shape(const RealMatrix& a, const RealMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
}

RealMatrix& RealMatrix::operator+=(const RealMatrix& o) {
  require_same_shape(*this, o, "addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

RealMatrix& RealMatrix::operator-=(const RealMatrix& o) {
  require_same_shape(*this, o, "subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

RealMatrix& RealMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

bool RealMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

RealMatrix operator+(RealMatrix a, const RealMatrix& b) { return a += b; }
RealMatrix operator-(RealMatrix a, const RealMatrix& b) { return a -= b; }
RealMatrix operator-(RealMatrix a) { return a *= -1.0; }
RealMatrix operator*(RealMatrix a, double s) { return a *= s; }
RealMatrix operator*(double s, RealMatrix a) { return a *= s; }

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("product: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()));
  RealMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator==(const RealMatrix& a, const RealMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::equal(a.entries().begin(), a.entries().end(), b.entries().begin());
}

RealMatrix adjoint(const RealMatrix& m) {
  RealMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

RealMatrix jordan(const RealMatrix& a, const RealMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("jordan: dimension mismatch");
  RealMatrix c = a * b;
  c += b * a;
  return c *= 0.5;
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          c(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return c;
}

RealMatrix direct_sum(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

double trace(const RealMatrix& m) {
  double t = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

double inner(const RealMatrix& a, const RealMatrix& b) {
  require_same_shape(a, b, "inner");
  const auto x = a.entries();
  const auto y = b.entries();
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

double frobenius_norm(const RealMatrix& m) { return std::sqrt(inner(m, m)); }

double max_abs(const RealMatrix& m) {
  double r = 0.0;
  for (double v : m.entries()) r = std::max(r, std::abs(v));
  return r;
}

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double r = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    r = std::max(r, std::abs(a.entries()[k] - b.entries()[k]));
  return r;
}

RealMatrix sym_part(const RealMatrix& m) { return (m + adjoint(m)) * 0.5; }
RealMatrix skew_part(const RealMatrix& m) { return (m - adjoint(m)) * 0.5; }

bool is_symmetric(const RealMatrix& m, double tol) {
  if (!m.is_square()) return false;
  const std::size_t n = m.rows();
  const double scale = 1.0 + max_abs(m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol * scale) return false;
  return true;
}

EigenDecomposition sym_eig(const RealMatrix& m, const ToleranceConfig& tol) {
  const std::size_t n = m.dim();
  if (!m.all_finite()) throw std::invalid_argument("sym_eig: non-finite entries");
  if (!is_symmetric(m, tol.psd_tol)) throw std::invalid_argument("sym_eig: matrix is not symmetric");

  RealMatrix a = sym_part(m);
  RealMatrix v = RealMatrix::identity(n);
  const double scale = frobenius_norm(a);
  const double target = std::numeric_limits<double>::epsilon() * scale;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += a(p, q) * a(p, q);
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  while (scale > 0.0 && off_norm() > target) {
    if (++sweep > tol.eig_sweep_limit)
      throw ConvergenceError("sym_eig: no convergence within " + std::to_string(tol.eig_sweep_limit) +
                             " Jacobi sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out{std::vector<double>(n), RealMatrix(n)};
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    out.values[c] = a(src, src);
    // Fix the sign so the largest component is positive.
    std::size_t arg = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (std::abs(v(k, src)) > std::abs(v(arg, src)) + 1e-14) arg = k;
    const double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, c) = sign * v(k, src);
  }
  return out;
}

double lambda_min(const RealMatrix& symmetric, const ToleranceConfig& tol) {
  return sym_eig(symmetric, tol).values.back();
}

double lambda_max(const RealMatrix& symmetric, const ToleranceConfig& tol) {
  return sym_eig(symmetric, tol).values.front();
}

std::vector<double> singular_values(const RealMatrix& m, const ToleranceConfig& tol) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  (void)tol;
  // One-sided Jacobi on the columns of the taller orientation; small singular
  // values keep full relative accuracy, unlike sqrt(eig(AᵀA)).
  RealMatrix a = m.rows() >= m.cols() ? m : adjoint(m);
  const std::size_t r = a.rows(), c = a.cols();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < c; ++p)
      for (std::size_t q = p + 1; q < c; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < r; ++i) {
          alpha += a(i, p) * a(i, p);
          beta += a(i, q) * a(i, q);
          gamma += a(i, p) * a(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t), sn = cs * t;
        for (std::size_t i = 0; i < r; ++i) {
          const double x = a(i, p), y = a(i, q);
          a(i, p) = cs * x - sn * y;
          a(i, q) = sn * x + cs * y;
        }
      }
    if (!rotated) break;
  }
  std::vector<double> s(c);
  for (std::size_t j = 0; j < c; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r; ++i) acc += a(i, j) * a(i, j);
    s[j] = std::sqrt(acc);
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

double operator_norm(const RealMatrix& m, const ToleranceConfig& tol) {
  const auto s = singular_values(m, tol);
  return s.empty() ? 0.0 : s.front();
}

double nuclear_norm(const RealMatrix& m, const ToleranceConfig& tol) {
  const auto s = singular_values(m, tol);
  return std::accumulate(s.begin(), s.end(), 0.0);
}

bool is_psd(const RealMatrix& m, const ToleranceConfig& tol) {
  if (!m.is_square() || !m.all_finite()) return false;
  if (!is_symmetric(m, tol.psd_tol)) return false;
  const RealMatrix s = sym_part(m);
  const double lmin = lambda_min(s, tol);
  return lmin >= -tol.psd_tol * (1.0 + operator_norm(m, tol));
}

std::string to_string(SymmetryKind k) {
  switch (k) {
    case SymmetryKind::selfadjoint: return "selfadjoint";
    case SymmetryKind::antisymmetric: return "antisymmetric";
    case SymmetryKind::neither: return "neither";
  }
  return "neither";
}

SymmetrySplit classify_symmetry(const RealMatrix& m, const ToleranceConfig& tol) {
  SymmetrySplit out{SymmetryKind::neither, sym_part(m), skew_part(m)};
  const double scale = 1.0 + max_abs(m);
  if (max_abs(out.as_part) <= tol.psd_tol * scale)
    out.kind = SymmetryKind::selfadjoint;
  else if (max_abs(out.sa_part) <= tol.psd_tol * scale)
    out.kind = SymmetryKind::antisymmetric;
  return out;
}

RealMatrix clip_to_ball(const RealMatrix& m, double radius, const ToleranceConfig& tol) {
  const std::size_t c = m.cols();
  const auto eig = sym_eig(adjoint(m) * m, tol);
  bool inside = true;
  std::vector<double> factor(c, 1.0);
  for (std::size_t k = 0; k < c; ++k) {
    const double sigma = std::sqrt(std::max(eig.values[k], 0.0));
    if (sigma > radius) {
      factor[k] = radius / sigma;
      inside = false;
    }
  }
  if (inside) return m;
  // m V diag(f) Vᵀ
  RealMatrix scaled_v = eig.vectors;
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t k = 0; k < c; ++k) scaled_v(i, k) *= factor[k];
  return m * (scaled_v * adjoint(eig.vectors));
}

RealMatrix clip_to_psd(const RealMatrix& m, const ToleranceConfig& tol) {
  const std::size_t n = m.dim();
  const auto eig = sym_eig(sym_part(m), tol);
  RealMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.values[k];
    if (lam <= 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double vi = lam * eig.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * eig.vectors(j, k);
    }
  }
  return out;
}

namespace {

// Gram-Schmidt on the columns of `u`, filling columns with tiny norm from the
// standard basis.
void orthonormalize_columns(RealMatrix& u) {
  const std::size_t n = u.rows();
  std::size_t next_std = 0;
  for (std::size_t c = 0; c < u.cols(); ++c) {
    for (int attempt = 0;; ++attempt) {
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t p = 0; p < c; ++p) {
          double d = 0.0;
          for (std::size_t i = 0; i < n; ++i) d += u(i, p) * u(i, c);
          for (std::size_t i = 0; i < n; ++i) u(i, c) -= d * u(i, p);
        }
      double nrm = 0.0;
      for (std::size_t i = 0; i < n; ++i) nrm += u(i, c) * u(i, c);
      nrm = std::sqrt(nrm);
      if (nrm > 1e-8) {
        for (std::size_t i = 0; i < n; ++i) u(i, c) /= nrm;
        break;
      }
      if (next_std >= n) throw std::logic_error("orthonormalize_columns: ran out of basis vectors");
      for (std::size_t i = 0; i < n; ++i) u(i, c) = (i == next_std) ? 1.0 : 0.0;
      ++next_std;
    }
  }
}

}  // namespace

RealMatrix polar_factor(const RealMatrix& m, const ToleranceConfig& tol) {
  const std::size_t n = m.dim();
  const auto eig = sym_eig(adjoint(m) * m, tol);
  const double smax = std::sqrt(std::max(eig.values.front(), 0.0));
  RealMatrix mv = m * eig.vectors;
  RealMatrix u(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double sigma = std::sqrt(std::max(eig.values[k], 0.0));
    if (sigma > 1e-10 * smax && sigma > 0.0)
      for (std::size_t i = 0; i < n; ++i) u(i, k) = mv(i, k) / sigma;
  }
  orthonormalize_columns(u);
  return u * adjoint(eig.vectors);
}

SingularPair top_singular_pair(const RealMatrix& m, const ToleranceConfig& tol) {
  const auto eig = sym_eig(adjoint(m) * m, tol);
  SingularPair out;
  out.sigma = std::sqrt(std::max(eig.values.front(), 0.0));
  out.v.resize(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i) out.v[i] = eig.vectors(i, 0);
  out.u.assign(m.rows(), 0.0);
  if (out.sigma > 0.0) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * out.v[j];
      out.u[i] = s / out.sigma;
    }
  } else if (m.rows() > 0) {
    out.u[0] = 1.0;
  }
  return out;
}

RealMatrix solve(const RealMatrix& a, const RealMatrix& b) {
  const std::size_t n = a.dim();
  if (b.rows() != n) throw DimensionError("solve: right-hand side has wrong row count");
  RealMatrix lu = a;
  RealMatrix x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (lu(piv, k) == 0.0) throw std::domain_error("solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      double s = x(k, j);
      for (std::size_t i = k + 1; i < n; ++i) s -= lu(k, i) * x(i, j);
      x(k, j) = s / lu(k, k);
    }
  }
  return x;
}

RealMatrix inverse(const RealMatrix& a) { return solve(a, RealMatrix::identity(a.dim())); }

static double one_norm(const RealMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double condition_number(const RealMatrix& a) {
  try {
    const RealMatrix inv = inverse(a);
    if (!inv.all_finite()) return std::numeric_limits<double>::infinity();
    return one_norm(a) * one_norm(inv);
  } catch (const std::domain_error&) {
    return std::numeric_limits<double>::infinity();
  }
}

LeastSquares least_squares(const RealMatrix& a, std::span<const double> b, double rank_tol) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw DimensionError("least_squares: rhs length mismatch");
  RealMatrix r = a;
  std::vector<double> y(b.begin(), b.end());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> colnorm(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) colnorm[j] += r(i, j) * r(i, j);
  const double anorm = std::sqrt(std::accumulate(colnorm.begin(), colnorm.end(), 0.0));

  std::size_t rank = 0;
  const std::size_t steps = std::min(m, n);
  for (std::size_t k = 0; k < steps; ++k) {
    // Column pivoting on remaining norms (recomputed for stability).
    std::size_t piv = k;
    double best = -1.0;
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += r(i, j) * r(i, j);
      if (s > best) {
        best = s;
        piv = j;
      }
    }
    if (std::sqrt(best) <= rank_tol * std::max(anorm, 1e-300)) break;
    if (piv != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(r(i, k), r(i, piv));
      std::swap(perm[k], perm[piv]);
    }
    double alpha = 0.0;
    for (std::size_t i = k; i < m; ++i) alpha += r(i, k) * r(i, k);
    alpha = std::sqrt(alpha);
    if (r(k, k) > 0.0) alpha = -alpha;
    std::vector<double> v(m - k);
    for (std::size_t i = k; i < m; ++i) v[i - k] = r(i, k);
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (double t : v) vnorm2 += t * t;
    if (vnorm2 > 0.0) {
      for (std::size_t j = k; j < n; ++j) {
        double d = 0.0;
        for (std::size_t i = k; i < m; ++i) d += v[i - k] * r(i, j);
        d = 2.0 * d / vnorm2;
        for (std::size_t i = k; i < m; ++i) r(i, j) -= d * v[i - k];
      }
      double d = 0.0;
      for (std::size_t i = k; i < m; ++i) d += v[i - k] * y[i];
      d = 2.0 * d / vnorm2;
      for (std::size_t i = k; i < m; ++i) y[i] -= d * v[i - k];
    }
    ++rank;
  }

  std::vector<double> z(n, 0.0);
  for (std::size_t k = rank; k-- > 0;) {
    double s = y[k];
    for (std::size_t j = k + 1; j < rank; ++j) s -= r(k, j) * z[j];
    z[k] = s / r(k, k);
  }
  LeastSquares out;
  out.x.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) out.x[perm[k]] = z[k];
  out.rank = rank;
  double res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double s = -b[i];
    for (std::size_t j = 0; j < n; ++j) s += a(i, j) * out.x[j];
    res += s * s;
  }
  out.residual = std::sqrt(res);
  return out;
}

}  // namespace roal
