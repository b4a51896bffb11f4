#pragma once

#include <vector>

#include "rectfree/poly.hpp"

namespace rectfree {

/// Rectangular additive convolution of two monic degree-d polynomials with
/// nonnegative roots, via the closed binomial coefficient formula: output
/// alternating coefficient k is
///   sum_{i+j=k} [(d-i)!(d-j)!/(d!(d-k)!)] [(m-i)!(m-j)!/(m!(m-k)!)] p_i q_j,
/// with the factorial ratios formed as incremental products.  The result is
/// monic of degree d with nonnegative real roots (checked on construction).
NonnegPoly rect_convolve(const NonnegPoly& p, const NonnegPoly& q, const RectParams& params);

/// Same convolution through the differential-operator route: the bivariate
/// extensions y^{m-d}p(xy), y^{m-d}q(xy) combined by
///   (m-d)!/(d! m!) sum_k (dx dy)^{d-k} p(x,y) . (dx dy)^k q(0,1),
/// realized as coefficient shifts.  Independent evaluation order from
/// rect_convolve; used as a cross-check.
NonnegPoly rect_convolve_diffop(const NonnegPoly& p, const NonnegPoly& q,
                                const RectParams& params);

/// Monic polynomial with the roots of the generalized Laguerre polynomial
/// L_d^{(m-d)}(x / sigma2): alternating coefficients
///   p_i = sigma2^i m! d! / (i! (m-i)! (d-i)!).
/// All roots are real and positive; root mean is m sigma2.
NonnegPoly laguerre_poly(const RectParams& params, double sigma2);

namespace detail {

/// Kernels on alternating coefficient vectors (index i holds p_i), without
/// polynomial validation.  Inputs must have size d+1.
std::vector<double> convolve_alternating(const std::vector<double>& pa,
                                         const std::vector<double>& qa,
                                         const RectParams& params);
std::vector<double> convolve_alternating_diffop(const std::vector<double>& pa,
                                                const std::vector<double>& qa,
                                                const RectParams& params);
std::vector<double> laguerre_alternating(const RectParams& params, double sigma2);

}  // namespace detail

}  // namespace rectfree
