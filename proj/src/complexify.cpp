#include "roal/complexify.hpp"

#include <cmath>

#include "roal/algebra.hpp"

namespace roal {

ComplexPair::ComplexPair(RealMatrix re_, RealMatrix im_) : re(std::move(re_)), im(std::move(im_)) {
  if (re.rows() != im.rows() || re.cols() != im.cols() || !re.is_square())
    throw DimensionError("ComplexPair: real and imaginary parts must be square of equal size");
  if (!re.all_finite() || !im.all_finite()) throw std::invalid_argument("ComplexPair: non-finite entry");
}

ComplexPair operator*(const ComplexPair& p, const ComplexPair& q) {
  return {p.re * q.re - p.im * q.im, p.re * q.im + p.im * q.re};
}

ComplexPair conjugate(const ComplexPair& p) { return {p.re, -p.im}; }

ComplexPair rotate_phase(const ComplexPair& p, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {p.re * c - p.im * s, p.re * s + p.im * c};
}

RealMatrix embed(const ComplexPair& p) {
  const std::size_t n = p.dim();
  RealMatrix b(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      b(i, j) = p.re(i, j);
      b(i, n + j) = -p.im(i, j);
      b(n + i, j) = p.im(i, j);
      b(n + i, n + j) = p.re(i, j);
    }
  return b;
}

ComplexPair unembed(const RealMatrix& b) {
  const std::size_t m = b.dim();
  if (m % 2 != 0) throw BlockPatternError("unembed: odd dimension " + std::to_string(m), 0.0);
  const std::size_t n = m / 2;
  RealMatrix x(n), y(n);
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      x(i, j) = 0.5 * (b(i, j) + b(n + i, n + j));
      y(i, j) = 0.5 * (b(n + i, j) - b(i, n + j));
      dev = std::max(dev, std::abs(b(i, j) - b(n + i, n + j)));
      dev = std::max(dev, std::abs(b(n + i, j) + b(i, n + j)));
    }
  if (dev > kBlockPatternTol)
    throw BlockPatternError("unembed: block pattern violated, max deviation " + std::to_string(dev), dev);
  return {std::move(x), std::move(y)};
}

bool complex_is_selfadjoint(const ComplexPair& p, const ToleranceConfig& tol) {
  return classify_symmetry(p.re, tol).kind == SymmetryKind::selfadjoint &&
         max_abs(sym_part(p.im)) <= tol.psd_tol * (1.0 + max_abs(p.im));
}

bool complex_is_psd(const ComplexPair& p, const ToleranceConfig& tol) { return is_psd(embed(p), tol); }

Subspace complexify_subspace(const Subspace& s) {
  const std::size_t n = s.ambient_dim();
  const RealMatrix zero(n);
  const double scale = 1.0 / std::sqrt(2.0);
  // embed doubles the Frobenius norm squared, so the rescaled images of an
  // orthonormal basis are again orthonormal; the (re, im) pairing is kept.
  std::vector<RealMatrix> basis;
  basis.reserve(2 * s.size());
  for (const auto& b : s.basis()) {
    basis.push_back(embed({b, zero}) * scale);
    basis.push_back(embed({zero, b}) * scale);
  }
  return Subspace(2 * n, std::move(basis));
}

}  // namespace roal
