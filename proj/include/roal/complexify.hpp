// Complex matrices carried as real 2n×2n blocks [[x, -y], [y, x]].
#pragma once

#include "roal/matrix.hpp"

namespace roal {

class Subspace;

/// x + iy with x, y real matrices of equal size.
struct ComplexPair {
  RealMatrix re;
  RealMatrix im;

  ComplexPair() = default;
  ComplexPair(RealMatrix re_, RealMatrix im_);

  std::size_t dim() const { return re.dim(); }
};

ComplexPair operator*(const ComplexPair& p, const ComplexPair& q);
ComplexPair conjugate(const ComplexPair& p);
/// Phase rotation e^{iθ}·p.
ComplexPair rotate_phase(const ComplexPair& p, double theta);

RealMatrix embed(const ComplexPair& p);

/// Thrown by unembed when the block pattern is violated.
class BlockPatternError : public std::invalid_argument {
 public:
  BlockPatternError(const std::string& what, double deviation)
      : std::invalid_argument(what), deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

inline constexpr double kBlockPatternTol = 1e-10;

ComplexPair unembed(const RealMatrix& b);

bool complex_is_selfadjoint(const ComplexPair& p, const ToleranceConfig& tol = {});
bool complex_is_psd(const ComplexPair& p, const ToleranceConfig& tol = {});

/// Real form of X_c: span of embed(b, 0) and embed(0, b) over a basis of X.
Subspace complexify_subspace(const Subspace& s);

}  // namespace roal
