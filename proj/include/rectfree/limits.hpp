#pragma once

#include <string>
#include <vector>

#include "rectfree/poly.hpp"

namespace rectfree {

/// p^n: the degree d*n polynomial with the same root measure as p (each root
/// repeated n times); the coefficient-level picture of stacking n copies of a
/// matrix along the diagonal.
NonnegPoly stack_power(const NonnegPoly& p, int n);

struct ConvergenceRow {
    int n = 0;             // stacking factor; dimensions are (d n, m n)
    int k = 0;             // coefficient index
    double finite_coeff = 0.0;  // [s^k] of the finite transform of p^n
    double free_coeff = 0.0;    // [x^k] of the asymptotic transform of the root measure
    double abs_gap = 0.0;
};

struct ConvergenceReport {
    int d = 0;
    int m = 0;
    std::vector<double> base_coeffs;
    int k_max = 0;
    std::vector<ConvergenceRow> rows;  // n strictly increasing, k inner
};

/// Finite transform of p^n at (d n, m n) against the asymptotic series of the
/// root measure of p, coefficient index by coefficient index.
ConvergenceReport convergence_sweep(const NonnegPoly& p, const RectParams& params,
                                    const std::vector<int>& n_list, int k_max,
                                    bool allow_large = false);

struct TightnessRow {
    int n = 0;
    double s = 0.0;
    double r_p = 0.0;
    double r_q = 0.0;
    double r_conv = 0.0;
    double gap = 0.0;  // r_p + r_q - r_conv; nonnegative, shrinking in n
};

struct TightnessReport {
    std::vector<TightnessRow> rows;
};

/// Subadditivity gap of the asymptotic transform under the finite convolution
/// of stacked inputs, evaluated pointwise on s_grid.
TightnessReport tightness_check(const NonnegPoly& p, const NonnegPoly& q,
                                const RectParams& params, const std::vector<int>& n_list,
                                const std::vector<double>& s_grid, bool allow_large = false);

struct LimitRow {
    int n = 0;                         // number of summands N
    std::vector<double> scaled_roots;  // sorted roots of the normalized iterate
    double distance = 0.0;             // to the target root set
};

struct LimitReport {
    std::string target;  // description of the limit polynomial
    std::vector<double> target_roots;
    std::vector<LimitRow> rows;
};

/// Law of large numbers: roots of the N-fold convolution scaled by 1/N^2
/// (1/N on the symmetrized roots) collapse to zero.  p_list is cycled.
LimitReport lln_experiment(const std::vector<NonnegPoly>& p_list, const RectParams& params,
                           const std::vector<int>& n_list);

/// Central limit theorem: roots of the N-fold self-convolution scaled by 1/N
/// approach the Laguerre polynomial with matching root mean.
LimitReport clt_experiment(const NonnegPoly& p, const RectParams& params,
                           const std::vector<int>& n_list);

/// Default cap on the stacked degree d*n; raise via allow_large.
inline constexpr int kDefaultDegreeCap = 64;

}  // namespace rectfree
