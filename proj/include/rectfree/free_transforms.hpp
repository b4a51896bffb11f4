#pragma once

#include <cstddef>
#include <vector>

#include "rectfree/poly.hpp"
#include "rectfree/trunc_series.hpp"

namespace rectfree {

/// Even moments m_{2k}, k = 0..K, of a compactly supported symmetric measure;
/// for the root measure of a symmetrized polynomial, m_{2k} = (1/d) sum lambda_i^k.
struct SymmetricMoments {
    std::vector<double> even_moments;  // m_0 = 1 at index 0

    /// count entries: indices 0..count-1.
    static SymmetricMoments from_poly(const NonnegPoly& p, int count);
};

/// Cauchy transform of the symmetrized root measure at real x > sqrt(max root):
/// G(x) = x p'(x^2) / (d p(x^2)).
double cauchy_G_eval(const NonnegPoly& p, double x);

/// Rectangular Cauchy transform H(x) = G(x) (lambda G(x) + (1-lambda)/x),
/// strictly decreasing on (sqrt(max root), infinity) onto (0, infinity).
double rect_H_eval(const NonnegPoly& p, const RectParams& params, double x);

/// Functional inverse of rect_H_eval: the unique x > sqrt(max root) with
/// H(x) = u, for u > 0.  Bracketed bisection run to floating-point exhaustion.
double J_eval(const NonnegPoly& p, const RectParams& params, double u);

/// Series form of the rectangular Cauchy transform of a symmetric measure:
/// H(x) = x [lambda S(x)^2 + (1-lambda) S(x)] with S(x) = sum m_{2k} x^k.
/// Constant coefficient 0 and linear coefficient 1, exactly.
/// Requires even_moments up to index order-2.
TruncSeries rect_H_series(const SymmetricMoments& mom, double lambda, std::size_t order);

/// Rectangular R-transform series R(x) = U^lambda(x / H^{-1}(x) - 1) with
/// U^lambda(u) = [-(lambda+1) + sqrt((lambda+1)^2 + 4 lambda u)] / (2 lambda).
/// Requires even_moments up to index order-1.  Zero constant term.
TruncSeries free_rect_R_series(const SymmetricMoments& mom, double lambda, std::size_t order);

/// Pointwise value of the R-transform at x = s^2 through the inverse Cauchy
/// transform: R(s^2) = -(lambda+1)/(2 lambda)
///                     + sqrt((lambda-1)^2/(4 lambda^2) + s^2 J(s^2)^2 / lambda).
double free_rect_R_eval(const NonnegPoly& p, const RectParams& params, double s);

}  // namespace rectfree
