#pragma once

// Shared helpers for the test suites: seeded generators for random
// nonnegative-rooted polynomials, naive reference implementations of the
// series operations (independent oracles), and tolerance helpers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "rectfree/poly.hpp"
#include "rectfree/trunc_series.hpp"

namespace testutil {

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

inline double max_rel_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double gap = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        gap = std::max(gap, std::abs(a[i] - b[i]) /
                                (1.0 + std::max(std::abs(a[i]), std::abs(b[i]))));
    return gap;
}

inline rectfree::NonnegPoly random_poly(std::mt19937_64& rng, int degree, double max_root = 2.0) {
    std::uniform_real_distribution<double> dist(0.0, max_root);
    std::vector<double> roots(static_cast<std::size_t>(degree));
    for (double& r : roots) r = dist(rng);
    return rectfree::NonnegPoly::from_roots(std::move(roots));
}

// Random roots with a minimum pairwise separation; clustered roots make the
// value of individual roots ill-conditioned in the coefficients, so tests that
// compare root values use this generator.
inline rectfree::NonnegPoly random_poly_separated(std::mt19937_64& rng, int degree,
                                                  double max_root = 2.0) {
    std::uniform_real_distribution<double> dist(0.0, max_root);
    const double min_gap = 0.5 * max_root / std::pow(static_cast<double>(degree), 1.5);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<double> roots(static_cast<std::size_t>(degree));
        for (double& r : roots) r = dist(rng);
        std::sort(roots.begin(), roots.end());
        bool ok = true;
        for (std::size_t i = 1; i < roots.size(); ++i)
            ok = ok && roots[i] - roots[i - 1] >= min_gap;
        if (ok) return rectfree::NonnegPoly::from_roots(std::move(roots));
    }
    throw std::runtime_error("random_poly_separated: rejection sampling failed");
}

inline rectfree::TruncSeries random_series(std::mt19937_64& rng, std::size_t order,
                                           double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    rectfree::TruncSeries s(order);
    for (std::size_t i = 0; i < order; ++i) s[i] = dist(rng);
    return s;
}

// ---- naive reference series arithmetic (kept deliberately simple and
// separate from the implementation under test) ----

inline std::vector<double> naive_mul(const std::vector<double>& a, const std::vector<double>& b,
                                     std::size_t order) {
    std::vector<double> r(order, 0.0);
    for (std::size_t i = 0; i < a.size() && i < order; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < order; ++j) r[i + j] += a[i] * b[j];
    return r;
}

// exp by direct Taylor summation of sum a^k / k!; requires a[0] == 0 so the
// sum terminates at k = order-1.
inline std::vector<double> naive_exp(const std::vector<double>& a, std::size_t order) {
    std::vector<double> result(order, 0.0);
    result[0] = 1.0;
    std::vector<double> pw(order, 0.0);
    pw[0] = 1.0;
    double fact = 1.0;
    for (std::size_t k = 1; k < order; ++k) {
        pw = naive_mul(pw, a, order);
        fact *= static_cast<double>(k);
        for (std::size_t i = 0; i < order; ++i) result[i] += pw[i] / fact;
    }
    return result;
}

// log by the Mercator series on u = a/a0 - 1.
inline std::vector<double> naive_log(const std::vector<double>& a, std::size_t order) {
    std::vector<double> u(order, 0.0);
    for (std::size_t i = 0; i < a.size() && i < order; ++i) u[i] = a[i] / a[0];
    u[0] = 0.0;
    std::vector<double> result(order, 0.0);
    result[0] = std::log(a[0]);
    std::vector<double> pw(order, 0.0);
    pw[0] = 1.0;
    for (std::size_t k = 1; k < order; ++k) {
        pw = naive_mul(pw, u, order);
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        for (std::size_t i = 0; i < order; ++i) result[i] += sign * pw[i] / static_cast<double>(k);
    }
    return result;
}

// composition by power accumulation; requires g[0] == 0.
inline std::vector<double> naive_compose(const std::vector<double>& f,
                                         const std::vector<double>& g, std::size_t order) {
    std::vector<double> result(order, 0.0);
    std::vector<double> pw(order, 0.0);
    pw[0] = 1.0;
    result[0] = f.empty() ? 0.0 : f[0];
    for (std::size_t k = 1; k < f.size() && k < order; ++k) {
        pw = naive_mul(pw, g, order);
        for (std::size_t i = 0; i < order; ++i) result[i] += f[k] * pw[i];
    }
    return result;
}

}  // namespace testutil
