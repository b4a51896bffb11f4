#pragma once

#include <complex>
#include <vector>

#include "rectfree/poly.hpp"
#include "rectfree/trunc_series.hpp"

namespace rectfree {

/// Moments E[(T^{(m,d)})^i], i = 0..d, of the d-point random variable whose
/// exponential differential operator reproduces y^{m-d} p(xy); moments[0] = 1.
struct TMoments {
    RectParams params;
    std::vector<double> moments;
};

/// The d (generally complex) values of the T-transform multiset, recovered
/// from the moments by Newton's identities.  power_sum_residual records how
/// well the returned values reproduce the prescribed power sums (relative).
struct TValues {
    std::vector<std::complex<double>> values;
    double power_sum_residual = 0.0;
};

/// Finite rectangular R-transform: polynomial of degree d in s with zero
/// constant term, coefficients stored as a TruncSeries of order d+1.
struct FiniteR {
    RectParams params;
    TruncSeries poly_in_s;
};

/// moments[i] = i!(m-i)!(d-i)!/(m!d!) p_i, formed by incremental ratios.
TMoments t_moments(const NonnegPoly& p, const RectParams& params);

/// Values whose power sums are d * moments[i]; Newton's identities then
/// companion-matrix roots.
TValues t_values(const TMoments& tm);

/// R(s) = -(s/d) d/ds log E(s) mod s^{d+1}, where
/// E(s) = sum_i moments[i] (-md s)^i / i!.  Additive under the rectangular
/// convolution; the s^1 coefficient equals the root mean of p.
FiniteR finite_R(const NonnegPoly& p, const RectParams& params);

/// Invert the transform: Q = exp(-d int R(s)/s), then unwrap the coefficient
/// renormalization to recover the monic polynomial.  Throws
/// RealRootednessError when the input is not the transform of any
/// nonnegative-rooted polynomial.
NonnegPoly finite_R_invert(const FiniteR& r);

namespace detail {

/// finite_R on a raw alternating coefficient vector (size d+1), skipping
/// polynomial validation; used for high-degree stacked inputs.
TruncSeries finite_r_from_alternating(const std::vector<double>& alt, const RectParams& params);

std::vector<double> t_moments_from_alternating(const std::vector<double>& alt,
                                               const RectParams& params);

/// The moment generating series E(s) = sum_i moments[i] (-md s)^i / i! of
/// order d+1.  Multiplicative under the rectangular convolution (the pre-log
/// carrier of R-transform additivity).
TruncSeries exp_moment_series(const std::vector<double>& alt, const RectParams& params);

}  // namespace detail

}  // namespace rectfree
