#include "rectfree/rect_convolution.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace rectfree {

namespace detail {

namespace {

void require_size(const std::vector<double>& alt, const RectParams& params, const char* who) {
    if (alt.size() != static_cast<std::size_t>(params.d) + 1)
        throw std::invalid_argument(std::string(who) + ": polynomial degree must equal d=" +
                                    std::to_string(params.d));
}

std::vector<double> narrow(const std::vector<long double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<double>(v[i]);
    return out;
}

// Alternating coefficients (index i holds p_i) to standard monic decreasing
// order, kept in long double.
std::vector<long double> alternating_to_coeffs_ld(const std::vector<long double>& alt) {
    std::vector<long double> out(alt.size());
    for (std::size_t i = 0; i < alt.size(); ++i) out[i] = (i % 2 == 0) ? alt[i] : -alt[i];
    return out;
}

std::vector<long double> convolve_kernel(const std::vector<double>& pa,
                                         const std::vector<double>& qa,
                                         const RectParams& params) {
    const int d = params.d, m = params.m;
    std::vector<long double> out(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) {
        long double acc = 0.0L;
        for (int i = 0; i <= k; ++i) {
            const int j = k - i;
            // (d-i)!(d-j)!/(d!(d-k)!) * (m-i)!(m-j)!/(m!(m-k)!) as a product of
            // i factors, each in (0, 1].
            long double w = 1.0L;
            for (int t = 0; t < i; ++t)
                w *= (static_cast<long double>(d - j - t) * static_cast<long double>(m - j - t)) /
                     (static_cast<long double>(d - t) * static_cast<long double>(m - t));
            acc += w * static_cast<long double>(pa[static_cast<std::size_t>(i)]) *
                   static_cast<long double>(qa[static_cast<std::size_t>(j)]);
        }
        out[static_cast<std::size_t>(k)] = acc;
    }
    return out;
}

std::vector<long double> diffop_kernel(const std::vector<double>& pa,
                                       const std::vector<double>& qa,
                                       const RectParams& params) {
    const int d = params.d, m = params.m;
    const auto idx = [](int i) { return static_cast<std::size_t>(i); };

    // Signed bivariate coefficients: p(x,y) = sum_i cp_i y^{m-i} x^{d-i}.
    std::vector<long double> cp(idx(d) + 1), cq(idx(d) + 1);
    for (int i = 0; i <= d; ++i) {
        const long double sign = (i % 2 == 0) ? 1.0L : -1.0L;
        cp[idx(i)] = sign * static_cast<long double>(pa[idx(i)]);
        cq[idx(i)] = sign * static_cast<long double>(qa[idx(i)]);
    }

    // gamma_k = (m-d)!/(d! m!) * k! (m-d+k)!/(m-d)! = k!(m-d+k)!/(d! m!),
    // the prefactor of (dx dy)^k q(0,1) with the global constant folded in.
    std::vector<long double> gamma(idx(d) + 1);
    gamma[idx(d)] = 1.0L;
    for (int k = d; k >= 1; --k)
        gamma[idx(k - 1)] =
            gamma[idx(k)] / (static_cast<long double>(k) * static_cast<long double>(m - d + k));

    // a[i] accumulates the (dx dy)^t factor (m-i)...(m-i-t+1)(d-i)...(d-i-t+1)
    // on the i-th term of p; it hits an exact zero once the x power is used up.
    std::vector<long double> a(idx(d) + 1, 1.0L);
    std::vector<long double> coeff_x(idx(d) + 1, 0.0L);  // coefficient of x^e at index e
    for (int t = 0; t <= d; ++t) {
        const int k = d - t;
        const long double scalar = gamma[idx(k)] * cq[idx(t)];
        if (scalar != 0.0L) {
            for (int i = 0; i <= k; ++i) coeff_x[idx(k - i)] += scalar * cp[idx(i)] * a[idx(i)];
        }
        for (int i = 0; i <= d; ++i)
            a[idx(i)] *= static_cast<long double>(m - i - t) * static_cast<long double>(d - i - t);
    }

    std::vector<long double> out(idx(d) + 1);
    for (int k = 0; k <= d; ++k) {
        const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
        out[idx(k)] = sign * coeff_x[idx(d - k)];
    }
    return out;
}

}  // namespace

std::vector<double> convolve_alternating(const std::vector<double>& pa,
                                         const std::vector<double>& qa,
                                         const RectParams& params) {
    require_size(pa, params, "rect_convolve");
    require_size(qa, params, "rect_convolve");
    return narrow(convolve_kernel(pa, qa, params));
}

std::vector<double> convolve_alternating_diffop(const std::vector<double>& pa,
                                                const std::vector<double>& qa,
                                                const RectParams& params) {
    require_size(pa, params, "rect_convolve_diffop");
    require_size(qa, params, "rect_convolve_diffop");
    return narrow(diffop_kernel(pa, qa, params));
}

std::vector<double> laguerre_alternating(const RectParams& params, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::domain_error("laguerre_poly: sigma2 must be positive");
    const int d = params.d, m = params.m;
    std::vector<double> out(static_cast<std::size_t>(d) + 1);
    long double p = 1.0L;
    out[0] = 1.0;
    for (int i = 1; i <= d; ++i) {
        p *= static_cast<long double>(sigma2) * static_cast<long double>(m - i + 1) *
             static_cast<long double>(d - i + 1) / static_cast<long double>(i);
        out[static_cast<std::size_t>(i)] = static_cast<double>(p);
    }
    return out;
}

}  // namespace detail

NonnegPoly rect_convolve(const NonnegPoly& p, const NonnegPoly& q, const RectParams& params) {
    const std::vector<double> pa = p.alternating();
    const std::vector<double> qa = q.alternating();
    detail::require_size(pa, params, "rect_convolve");
    detail::require_size(qa, params, "rect_convolve");
    return detail::poly_from_coeffs_extended(
        detail::alternating_to_coeffs_ld(detail::convolve_kernel(pa, qa, params)));
}

NonnegPoly rect_convolve_diffop(const NonnegPoly& p, const NonnegPoly& q,
                                const RectParams& params) {
    const std::vector<double> pa = p.alternating();
    const std::vector<double> qa = q.alternating();
    detail::require_size(pa, params, "rect_convolve_diffop");
    detail::require_size(qa, params, "rect_convolve_diffop");
    return detail::poly_from_coeffs_extended(
        detail::alternating_to_coeffs_ld(detail::diffop_kernel(pa, qa, params)));
}

NonnegPoly laguerre_poly(const RectParams& params, double sigma2) {
    std::vector<double> coeffs =
        alternating_to_coeffs(detail::laguerre_alternating(params, sigma2));

    // Roots via the Golub-Welsch route: eigenvalues of the symmetric
    // tridiagonal Jacobi matrix of the generalized Laguerre family, scaled by
    // sigma2.  Companion extraction from the monomial coefficients is not
    // viable at higher degrees.
    const int d = params.d;
    const double a = static_cast<double>(params.m - params.d);
    Eigen::VectorXd diag(d), subdiag(std::max(d - 1, 0));
    for (int k = 0; k < d; ++k) diag(k) = 2.0 * k + a + 1.0;
    for (int k = 1; k < d; ++k)
        subdiag(k - 1) = std::sqrt(static_cast<double>(k) * (static_cast<double>(k) + a));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("laguerre_poly: Jacobi eigenvalue computation failed");
    std::vector<double> roots(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) roots[static_cast<std::size_t>(k)] =
        std::max(0.0, sigma2 * eig.eigenvalues()(k));

    return NonnegPoly::from_coeffs_and_roots(std::move(coeffs), std::move(roots));
}

}  // namespace rectfree
