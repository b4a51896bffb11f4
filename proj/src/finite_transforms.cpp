#include "rectfree/finite_transforms.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace rectfree {

namespace detail {

std::vector<double> t_moments_from_alternating(const std::vector<double>& alt,
                                               const RectParams& params) {
    const int d = params.d, m = params.m;
    if (alt.size() != static_cast<std::size_t>(d) + 1)
        throw std::invalid_argument("t_moments: polynomial degree must equal d=" +
                                    std::to_string(d));
    std::vector<double> mom(static_cast<std::size_t>(d) + 1);
    mom[0] = 1.0;
    long double f = 1.0L;  // i!(m-i)!(d-i)!/(m!d!)
    for (int i = 1; i <= d; ++i) {
        f *= static_cast<long double>(i) /
             (static_cast<long double>(m - i + 1) * static_cast<long double>(d - i + 1));
        mom[static_cast<std::size_t>(i)] =
            static_cast<double>(f * static_cast<long double>(alt[static_cast<std::size_t>(i)]));
    }
    return mom;
}

TruncSeries exp_moment_series(const std::vector<double>& alt, const RectParams& params) {
    const int d = params.d, m = params.m;
    const std::vector<double> mom = t_moments_from_alternating(alt, params);
    TruncSeries e(static_cast<std::size_t>(d) + 1);
    long double c = 1.0L;
    for (int k = 0; k <= d; ++k) {
        e[static_cast<std::size_t>(k)] =
            static_cast<double>(c * static_cast<long double>(mom[static_cast<std::size_t>(k)]));
        c *= -static_cast<long double>(m) * static_cast<long double>(d) /
             static_cast<long double>(k + 1);
    }
    return e;
}

TruncSeries finite_r_from_alternating(const std::vector<double>& alt, const RectParams& params) {
    const int d = params.d;
    const TruncSeries e = exp_moment_series(alt, params);
    const TruncSeries log_e = ts_log(e);
    // -(s/d) d/ds log E: coefficient k is -(k/d) [s^k] log E.
    TruncSeries r = (-1.0 / static_cast<double>(d)) * ts_derive(log_e).shifted_up();
    for (std::size_t k = 0; k < r.order(); ++k)
        if (r[k] == 0.0) r[k] = 0.0;  // normalize -0.0
    return r.truncated(static_cast<std::size_t>(d) + 1);
}

}  // namespace detail

TMoments t_moments(const NonnegPoly& p, const RectParams& params) {
    return TMoments{params, detail::t_moments_from_alternating(p.alternating(), params)};
}

TValues t_values(const TMoments& tm) {
    const int d = tm.params.d;
    TValues out;
    if (d == 0) return out;

    // Newton's identities: power sums s_i = d * moments[i] -> elementary
    // symmetric e_k, then roots of u^d - e_1 u^{d-1} + ...
    std::vector<double> s(static_cast<std::size_t>(d) + 1, 0.0);
    for (int i = 1; i <= d; ++i)
        s[static_cast<std::size_t>(i)] = static_cast<double>(d) * tm.moments[static_cast<std::size_t>(i)];
    std::vector<double> e(static_cast<std::size_t>(d) + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= d; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= k; ++i) {
            const double term = e[static_cast<std::size_t>(k - i)] * s[static_cast<std::size_t>(i)];
            acc += (i % 2 == 1) ? term : -term;
        }
        e[static_cast<std::size_t>(k)] = acc / static_cast<double>(k);
    }

    std::vector<double> coeffs(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k)
        coeffs[static_cast<std::size_t>(k)] =
            (k % 2 == 0) ? e[static_cast<std::size_t>(k)] : -e[static_cast<std::size_t>(k)];

    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i + 1 < d; ++i) c(i + 1, i) = 1.0;
    for (int i = 0; i < d; ++i) c(i, d - 1) = -coeffs[static_cast<std::size_t>(d - i)];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(c, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("t_values: eigenvalue computation failed");
    out.values.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) out.values.push_back(solver.eigenvalues()(i));

    for (int i = 1; i <= d; ++i) {
        std::complex<double> ps{0.0, 0.0};
        for (const auto& v : out.values) ps += std::pow(v, i);
        const double target = s[static_cast<std::size_t>(i)];
        const double resid = std::abs(ps - std::complex<double>(target, 0.0)) /
                             (1.0 + std::abs(target));
        out.power_sum_residual = std::max(out.power_sum_residual, resid);
    }
    return out;
}

FiniteR finite_R(const NonnegPoly& p, const RectParams& params) {
    return FiniteR{params, detail::finite_r_from_alternating(p.alternating(), params)};
}

NonnegPoly finite_R_invert(const FiniteR& r) {
    const int d = r.params.d, m = r.params.m;
    const TruncSeries& rs = r.poly_in_s;
    if (rs.order() != static_cast<std::size_t>(d) + 1)
        throw std::invalid_argument("finite_R_invert: series order must be d+1");
    if (rs[0] != 0.0)
        throw std::invalid_argument("finite_R_invert: transform must have zero constant term");

    // log Q = -d int R(s)/s, coefficientwise: [s^k] log Q = -d r_k / k.  The
    // quotient R/s is padded back to order d+1 so the top coefficient r_d
    // survives the integration.
    const TruncSeries over_s = rs.shifted_down().truncated(static_cast<std::size_t>(d) + 1);
    const TruncSeries log_q = static_cast<double>(-d) * ts_integrate_zero(over_s);
    const TruncSeries q = ts_exp(log_q);

    // Unwrap: q_k = (-md)^k (m-k)!(d-k)!/(m!d!) p_k.
    std::vector<double> coeffs(static_cast<std::size_t>(d) + 1);
    coeffs[0] = 1.0;
    long double g = 1.0L;  // |(-md)^k (m-k)!(d-k)!/(m!d!)|
    for (int k = 1; k <= d; ++k) {
        g *= static_cast<long double>(m) * static_cast<long double>(d) /
             (static_cast<long double>(m - k + 1) * static_cast<long double>(d - k + 1));
        // standard coefficient c_k = (-1)^k p_k = q_k / g
        coeffs[static_cast<std::size_t>(k)] =
            static_cast<double>(static_cast<long double>(q[static_cast<std::size_t>(k)]) / g);
    }

    try {
        return NonnegPoly::from_coeffs(std::move(coeffs));
    } catch (const RealRootednessError& err) {
        throw RealRootednessError(
            std::string("finite_R_invert: input is not the transform of a nonnegative-rooted "
                        "polynomial (") +
            err.what() + ")");
    }
}

}  // namespace rectfree
