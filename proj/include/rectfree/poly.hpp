#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rectfree {

/// Dimension pair (d, m) of a rectangular m x d setting; lambda = d/m in (0,1].
struct RectParams {
    int d = 1;
    int m = 1;

    RectParams(int d_, int m_) : d(d_), m(m_) {
        if (d < 1 || m < d)
            throw std::invalid_argument("RectParams: need m >= d >= 1, got d=" +
                                        std::to_string(d) + " m=" + std::to_string(m));
    }
    double lambda() const { return static_cast<double>(d) / static_cast<double>(m); }
};

/// Signals that a polynomial expected to be real rooted with nonnegative roots
/// failed the root check (imaginary residue or negativity beyond tolerance).
struct RealRootednessError : std::runtime_error {
    explicit RealRootednessError(const std::string& what) : std::runtime_error(what) {}
};

struct RootList {
    std::vector<double> values;     // sorted ascending
    double max_imag_residue = 0.0;  // largest |Im|/(1+|Re|) observed before dropping
};

class NonnegPoly;
namespace detail {
/// from_coeffs for a coefficient vector carrying extra precision: stores the
/// rounded doubles but polishes the roots against the long double values, so
/// the cached root list tracks the unrounded polynomial.
NonnegPoly poly_from_coeffs_extended(const std::vector<long double>& coeffs);
}  // namespace detail

/// Monic polynomial of degree d with all roots real and >= 0 (within the root
/// tolerances below).  Coefficients are stored in decreasing-degree order with
/// leading coefficient 1; roots are computed at construction and cached.
///
/// Tolerances: a computed root is accepted as real when |Im|/(1+|Re|) <= 1e-8;
/// real parts in [-1e-10, 0) are clamped to 0; anything more negative than
/// -1e-8 * (1 + max root) is an error.
class NonnegPoly {
  public:
    /// Expand prod (x - r_i); all inputs must be >= 0.
    static NonnegPoly from_roots(std::vector<double> roots);
    /// Validate a monic coefficient vector (decreasing degree) by computing its
    /// roots; throws RealRootednessError when the roots fail the check.  Above
    /// the degrees where companion eigenvalues can certify realrootedness
    /// directly, falls back to a nonnegative root realization certificate.
    static NonnegPoly from_coeffs(std::vector<double> coeffs);
    /// Assemble from a coefficient vector and an independently computed root
    /// list; validates that expanding the roots reproduces the coefficients
    /// (floored-relative 1e-9 per coefficient).
    static NonnegPoly from_coeffs_and_roots(std::vector<double> coeffs,
                                            std::vector<double> roots);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    /// Alternating view: values p_i >= 0 with p(x) = sum_i (-1)^i p_i x^{d-i}.
    std::vector<double> alternating() const;
    const RootList& roots() const { return roots_; }
    double max_root() const;
    /// Mean of the roots, read off the x^{d-1} coefficient (exact, no root use).
    double root_mean() const;

    double operator()(double x) const;
    double derivative_at(double x) const;

  private:
    friend NonnegPoly detail::poly_from_coeffs_extended(const std::vector<long double>&);

    NonnegPoly(std::vector<double> coeffs, RootList roots)
        : coeffs_(std::move(coeffs)), roots_(std::move(roots)) {}

    std::vector<double> coeffs_;
    RootList roots_;
};

/// The even polynomial p(x^2) of degree 2d; its roots are the +-sqrt pairs of
/// the roots of p.
class SymmetricPoly {
  public:
    explicit SymmetricPoly(NonnegPoly base) : base_(std::move(base)) {}
    const NonnegPoly& base() const { return base_; }
    int degree() const { return 2 * base_.degree(); }
    std::vector<double> coeffs() const;  // decreasing degree, size 2d+1, odd entries 0
    std::vector<double> roots() const;   // sorted ascending, -sqrt then +sqrt
    double operator()(double x) const { return base_(x * x); }

  private:
    NonnegPoly base_;
};

SymmetricPoly symmetrize(const NonnegPoly& p);

/// Root normalization: multiplies every root by alpha > 0,
/// i.e. returns alpha^d p(x/alpha).
NonnegPoly scale_roots(const NonnegPoly& p, double alpha);

/// Mean of the roots of the symmetrization; identically zero.
double expectation_sym(const NonnegPoly& p);
/// Variance of the roots of the symmetrization; equals the root mean of p.
double variance_sym(const NonnegPoly& p);

/// Power sums sum_i lambda_i^k for k = 1..k_max via Newton's identities on the
/// coefficients (no root extraction).  k_max may exceed the degree.
std::vector<double> power_sums(const NonnegPoly& p, int k_max);

double max_root(const NonnegPoly& p);

/// Standard monic coefficients from the alternating p_i view and back.
std::vector<double> alternating_to_coeffs(const std::vector<double>& alt);
std::vector<double> coeffs_to_alternating(const std::vector<double>& coeffs);

}  // namespace rectfree
