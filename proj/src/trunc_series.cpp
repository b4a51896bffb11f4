#include "rectfree/trunc_series.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace rectfree {

namespace {

void require_same_order(const TruncSeries& a, const TruncSeries& b, const char* op) {
    if (a.order() != b.order())
        throw std::invalid_argument(std::string(op) + ": order mismatch (" +
                                    std::to_string(a.order()) + " vs " +
                                    std::to_string(b.order()) + ")");
}

void require_nonempty(const TruncSeries& a, const char* op) {
    if (a.order() == 0) throw std::invalid_argument(std::string(op) + ": empty series");
}

}  // namespace

TruncSeries::TruncSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw std::invalid_argument("TruncSeries: non-finite coefficient");
}

TruncSeries TruncSeries::constant(double value, std::size_t order) {
    TruncSeries r(order);
    if (order > 0) r[0] = value;
    return r;
}

TruncSeries TruncSeries::identity(std::size_t order) {
    TruncSeries r(order);
    if (order > 1) r[1] = 1.0;
    return r;
}

TruncSeries TruncSeries::truncated(std::size_t new_order) const {
    TruncSeries r(new_order);
    const std::size_t n = std::min(new_order, order());
    std::copy(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n),
              r.coeffs_.begin());
    return r;
}

TruncSeries TruncSeries::shifted_up() const {
    TruncSeries r(order() + 1);
    std::copy(coeffs_.begin(), coeffs_.end(), r.coeffs_.begin() + 1);
    return r;
}

TruncSeries TruncSeries::shifted_down() const {
    if (order() == 0) throw std::invalid_argument("shifted_down: empty series");
    TruncSeries r(order() - 1);
    std::copy(coeffs_.begin() + 1, coeffs_.end(), r.coeffs_.begin());
    return r;
}

double TruncSeries::max_abs() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    require_same_order(a, b, "ts_add");
    TruncSeries r(a.order());
    for (std::size_t i = 0; i < a.order(); ++i) r[i] = a[i] + b[i];
    return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    require_same_order(a, b, "ts_sub");
    TruncSeries r(a.order());
    for (std::size_t i = 0; i < a.order(); ++i) r[i] = a[i] - b[i];
    return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    require_same_order(a, b, "ts_mul");
    const std::size_t n = a.order();
    TruncSeries r(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

TruncSeries operator*(double c, const TruncSeries& a) {
    TruncSeries r(a.order());
    for (std::size_t i = 0; i < a.order(); ++i) r[i] = c * a[i];
    return r;
}

TruncSeries ts_log(const TruncSeries& a) {
    require_nonempty(a, "ts_log");
    if (!(a[0] > 0.0)) throw std::domain_error("ts_log: constant term must be positive");
    const std::size_t n = a.order();
    TruncSeries l(n);
    l[0] = std::log(a[0]);
    // From a = exp(l): n a_n = sum_{j=1..n} j l_j a_{n-j}.
    for (std::size_t k = 1; k < n; ++k) {
        double s = static_cast<double>(k) * a[k];
        for (std::size_t j = 1; j < k; ++j) s -= static_cast<double>(j) * l[j] * a[k - j];
        l[k] = s / (static_cast<double>(k) * a[0]);
    }
    return l;
}

TruncSeries ts_exp(const TruncSeries& a) {
    require_nonempty(a, "ts_exp");
    const std::size_t n = a.order();
    TruncSeries e(n);
    e[0] = std::exp(a[0]);
    for (std::size_t k = 1; k < n; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * e[k - j];
        e[k] = s / static_cast<double>(k);
    }
    return e;
}

TruncSeries ts_sqrt(const TruncSeries& a) {
    require_nonempty(a, "ts_sqrt");
    if (!(a[0] > 0.0)) throw std::domain_error("ts_sqrt: constant term must be positive");
    const std::size_t n = a.order();
    TruncSeries r(n);
    r[0] = std::sqrt(a[0]);
    for (std::size_t k = 1; k < n; ++k) {
        double s = a[k];
        for (std::size_t j = 1; j < k; ++j) s -= r[j] * r[k - j];
        r[k] = s / (2.0 * r[0]);
    }
    return r;
}

TruncSeries ts_recip(const TruncSeries& a) {
    require_nonempty(a, "ts_recip");
    if (a[0] == 0.0) throw std::domain_error("ts_recip: constant term must be nonzero");
    const std::size_t n = a.order();
    TruncSeries b(n);
    b[0] = 1.0 / a[0];
    for (std::size_t k = 1; k < n; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += a[j] * b[k - j];
        b[k] = -s / a[0];
    }
    return b;
}

TruncSeries ts_derive(const TruncSeries& a) {
    require_nonempty(a, "ts_derive");
    const std::size_t n = a.order() > 1 ? a.order() - 1 : 1;
    TruncSeries r(n);
    for (std::size_t i = 0; i + 1 < a.order(); ++i) r[i] = static_cast<double>(i + 1) * a[i + 1];
    return r;
}

TruncSeries ts_integrate_zero(const TruncSeries& a) {
    require_nonempty(a, "ts_integrate_zero");
    const std::size_t n = a.order();
    TruncSeries r(n);
    for (std::size_t i = 1; i < n; ++i) r[i] = a[i - 1] / static_cast<double>(i);
    return r;
}

TruncSeries ts_compose(const TruncSeries& f, const TruncSeries& g) {
    require_same_order(f, g, "ts_compose");
    require_nonempty(f, "ts_compose");
    if (g[0] != 0.0) throw std::domain_error("ts_compose: inner series must have zero constant term");
    const std::size_t n = f.order();
    TruncSeries r = TruncSeries::constant(f[n - 1], n);
    for (std::size_t i = n - 1; i-- > 0;) {
        r = r * g;
        r[0] += f[i];
    }
    return r;
}

TruncSeries ts_comp_inverse(const TruncSeries& f) {
    require_nonempty(f, "ts_comp_inverse");
    if (f[0] != 0.0)
        throw std::domain_error("ts_comp_inverse: series must have zero constant term");
    if (f.order() < 2 || f[1] == 0.0)
        throw std::domain_error("ts_comp_inverse: linear coefficient is zero (not invertible)");
    const std::size_t n = f.order();
    const TruncSeries id = TruncSeries::identity(n);
    // Derivative padded back to full order: the padded top coefficient never
    // reaches the retained range because the residual f(g) - s has positive
    // valuation throughout the iteration.
    const TruncSeries fp = ts_derive(f).truncated(n);

    TruncSeries g = (1.0 / f[1]) * id;
    std::size_t sweeps = 2;
    for (std::size_t m = 1; m < n; m *= 2) ++sweeps;
    for (std::size_t it = 0; it < sweeps; ++it) {
        TruncSeries resid = ts_compose(f, g) - id;
        if (resid.max_abs() == 0.0) break;
        g = g - resid * ts_recip(ts_compose(fp, g));
        g[0] = 0.0;
    }
    return g;
}

}  // namespace rectfree
