#pragma once

#include <cstddef>
#include <vector>

namespace rectfree {

/// Real formal power series truncated at a fixed order: coeffs[i] holds the
/// coefficient of s^i, stored for i = 0..order-1.  All operations are exact
/// modulo s^order.  Values are immutable in spirit: every operation returns a
/// fresh series, so instances can be shared freely across threads.
class TruncSeries {
  public:
    TruncSeries() = default;
    explicit TruncSeries(std::size_t order) : coeffs_(order, 0.0) {}
    explicit TruncSeries(std::vector<double> coeffs);

    static TruncSeries constant(double value, std::size_t order);
    static TruncSeries identity(std::size_t order);  // the series s

    std::size_t order() const { return coeffs_.size(); }
    double operator[](std::size_t i) const { return coeffs_[i]; }
    double& operator[](std::size_t i) { return coeffs_[i]; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    /// First new_order coefficients; zero-padded when new_order > order().
    TruncSeries truncated(std::size_t new_order) const;
    /// Multiplication by s; order grows by one.
    TruncSeries shifted_up() const;
    /// Division by s for a series with zero constant term; order shrinks by one.
    TruncSeries shifted_down() const;

    double max_abs() const;

  private:
    std::vector<double> coeffs_;
};

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);  // Cauchy product mod s^order
TruncSeries operator*(double c, const TruncSeries& a);

/// log(a) for a[0] > 0; exp(ts_log(a)) == a mod s^order.
TruncSeries ts_log(const TruncSeries& a);
/// exp(a); the constant term may be arbitrary.
TruncSeries ts_exp(const TruncSeries& a);
/// Square root with r[0] = +sqrt(a[0]); requires a[0] > 0.
TruncSeries ts_sqrt(const TruncSeries& a);
/// 1/a for a[0] != 0.
TruncSeries ts_recip(const TruncSeries& a);
/// Formal derivative; the order drops by one (never below one).
TruncSeries ts_derive(const TruncSeries& a);
/// Antiderivative with zero constant term.  Keeps the input order: the
/// coefficient that would land at s^order is dropped.
TruncSeries ts_integrate_zero(const TruncSeries& a);
/// f(g(s)) for g with zero constant term; Horner in the truncated ring.
TruncSeries ts_compose(const TruncSeries& f, const TruncSeries& g);
/// Compositional inverse g with f(g) == g(f) == s mod s^order; requires
/// f[0] == 0 and f[1] != 0.  Newton iteration, doubling the valid order.
TruncSeries ts_comp_inverse(const TruncSeries& f);

}  // namespace rectfree
