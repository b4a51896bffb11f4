#include "rectfree/free_transforms.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace rectfree {

namespace {

void require_lambda(double lambda, const char* who) {
    if (!(lambda > 0.0) || lambda > 1.0)
        throw std::invalid_argument(std::string(who) + ": lambda must be in (0, 1]");
}

double sqrt_max_root(const NonnegPoly& p) { return std::sqrt(std::max(0.0, p.max_root())); }

}  // namespace

SymmetricMoments SymmetricMoments::from_poly(const NonnegPoly& p, int count) {
    if (count < 1) throw std::invalid_argument("SymmetricMoments: count must be >= 1");
    if (p.degree() < 1) throw std::invalid_argument("SymmetricMoments: degree must be >= 1");
    SymmetricMoments mom;
    mom.even_moments.resize(static_cast<std::size_t>(count));
    mom.even_moments[0] = 1.0;
    const std::vector<double> ps = power_sums(p, count - 1);
    for (int k = 1; k < count; ++k)
        mom.even_moments[static_cast<std::size_t>(k)] =
            ps[static_cast<std::size_t>(k - 1)] / static_cast<double>(p.degree());
    return mom;
}

double cauchy_G_eval(const NonnegPoly& p, double x) {
    if (p.degree() < 1) throw std::invalid_argument("cauchy_G_eval: degree must be >= 1");
    if (!(x > sqrt_max_root(p)))
        throw std::domain_error("cauchy_G_eval: x must exceed sqrt(max root)");
    const double y = x * x;
    return x * p.derivative_at(y) / (static_cast<double>(p.degree()) * p(y));
}

double rect_H_eval(const NonnegPoly& p, const RectParams& params, double x) {
    if (!(x > sqrt_max_root(p)))
        throw std::domain_error("rect_H_eval: x must exceed sqrt(max root)");
    const double lambda = params.lambda();
    const double g = cauchy_G_eval(p, x);
    return g * (lambda * g + (1.0 - lambda) / x);
}

double J_eval(const NonnegPoly& p, const RectParams& params, double u) {
    if (p.degree() < 1) throw std::invalid_argument("J_eval: degree must be >= 1");
    if (!(u > 0.0)) throw std::domain_error("J_eval: u must be positive");
    const double edge = sqrt_max_root(p);
    const double lambda = params.lambda();
    const int d = p.degree();

    // H is strictly decreasing from +inf at the spectral edge to 0 at
    // infinity.  Points at or below the edge count as the large side; the
    // polynomial-positivity test also absorbs edge noise in high-degree root
    // lists (the realized edge can sit slightly off the true spectrum).
    const auto left_of_solution = [&](double x) {
        const double y = x * x;
        const double pv = p(y);
        if (!(pv > 0.0)) return true;
        const double g = x * p.derivative_at(y) / (d * pv);
        const double h = g * (lambda * g + (1.0 - lambda) / x);
        return h >= u;
    };

    double a = edge + 1e-12 * (1.0 + edge);
    double b = std::max(2.0 * a, 1.0);
    if (!left_of_solution(a)) {
        // Solution sits between the edge and a; shrink from the pole side.
        b = a;
        a = edge;
    } else {
        int grow = 0;
        while (left_of_solution(b)) {
            b *= 2.0;
            if (++grow > 1100) throw std::runtime_error("J_eval: bracket expansion failed");
        }
    }
    for (int it = 0; it < 2200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        if (left_of_solution(mid))
            a = mid;
        else
            b = mid;
    }
    return b;
}

TruncSeries rect_H_series(const SymmetricMoments& mom, double lambda, std::size_t order) {
    require_lambda(lambda, "rect_H_series");
    if (order == 0) throw std::invalid_argument("rect_H_series: order must be >= 1");
    if (order >= 2 && mom.even_moments.size() < order - 1)
        throw std::invalid_argument("rect_H_series: need even moments up to index order-2");
    if (order == 1) return TruncSeries(1);

    TruncSeries s(order - 1);
    for (std::size_t k = 0; k < order - 1; ++k) s[k] = mom.even_moments[k];
    TruncSeries inner = lambda * (s * s) + (1.0 - lambda) * s;
    inner[0] = 1.0;  // lambda m_0^2 + (1-lambda) m_0 with m_0 = 1
    return inner.shifted_up();
}

TruncSeries free_rect_R_series(const SymmetricMoments& mom, double lambda, std::size_t order) {
    require_lambda(lambda, "free_rect_R_series");
    if (order == 0) throw std::invalid_argument("free_rect_R_series: order must be >= 1");
    if (mom.even_moments.size() < order)
        throw std::invalid_argument("free_rect_R_series: need even moments up to index order-1");

    const TruncSeries h = rect_H_series(mom, lambda, order + 1);
    const TruncSeries h_inv = ts_comp_inverse(h);
    // w = x / H^{-1}(x) - 1, expandable since H^{-1}(x)/x has constant term 1.
    TruncSeries w = ts_recip(h_inv.shifted_down());
    w[0] -= 1.0;

    const double lp1 = lambda + 1.0;
    TruncSeries inner = (4.0 * lambda) * w;
    inner[0] += lp1 * lp1;
    TruncSeries r = (1.0 / (2.0 * lambda)) * ts_sqrt(inner);
    r[0] = 0.0;  // exact: U^lambda(0) = 0
    return r.truncated(order);
}

double free_rect_R_eval(const NonnegPoly& p, const RectParams& params, double s) {
    if (s == 0.0) throw std::domain_error("free_rect_R_eval: s must be nonzero");
    const double lambda = params.lambda();
    const double u = s * s;
    const double j = J_eval(p, params, u);
    const double lm1 = lambda - 1.0;
    return (-lambda - 1.0) / (2.0 * lambda) +
           std::sqrt(lm1 * lm1 / (4.0 * lambda * lambda) + u * j * j / lambda);
}

}  // namespace rectfree
