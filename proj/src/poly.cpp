#include "rectfree/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>

namespace rectfree {

namespace {

constexpr double kImagTol = 1e-8;    // accept |Im|/(1+|Re|) up to this
constexpr double kClampWindow = 1e-10;  // roots in [-window, 0) are set to 0
constexpr double kNegTolScale = 1e-8;   // reject roots below -scale*(1+max)
constexpr double kRealizeTol = 1e-6;    // certificate gate for the fallback path

void require_monic(std::vector<double>& coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("NonnegPoly: empty coefficient vector");
    for (double c : coeffs)
        if (!std::isfinite(c)) throw std::invalid_argument("NonnegPoly: non-finite coefficient");
    if (std::abs(coeffs[0] - 1.0) > 1e-9)
        throw std::invalid_argument("NonnegPoly: leading coefficient must be 1 (monic)");
    if (coeffs[0] != 1.0) {
        const double lead = coeffs[0];
        for (double& c : coeffs) c /= lead;
    }
}

// Parlett-Reinsch balancing (radix 2), then dense eigenvalues.
Eigen::VectorXcd companion_eigenvalues(const std::vector<double>& coeffs) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i + 1 < d; ++i) c(i + 1, i) = 1.0;
    for (int i = 0; i < d; ++i) c(i, d - 1) = -coeffs[static_cast<std::size_t>(d - i)];

    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < d; ++i) {
            double r = 0.0, col = 0.0;
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                r += std::abs(c(i, j));
                col += std::abs(c(j, i));
            }
            if (r == 0.0 || col == 0.0) continue;
            const double s = col + r;
            double f = 1.0;
            while (col < r / 2.0) {
                col *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (col >= r * 2.0) {
                col /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if (col + r < 0.95 * s) {
                converged = false;
                c.row(i) /= f;
                c.col(i) *= f;
            }
        }
    }

    Eigen::EigenSolver<Eigen::MatrixXd> solver(c, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("companion eigenvalue computation failed");
    return solver.eigenvalues();
}

long double eval_ld(const std::vector<long double>& coeffs, long double x) {
    long double v = 0.0L;
    for (long double c : coeffs) v = v * x + c;
    return v;
}

long double eval_deriv_ld(const std::vector<long double>& coeffs, long double x) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    long double v = 0.0L;
    for (int i = 0; i < d; ++i)
        v = v * x + coeffs[static_cast<std::size_t>(i)] * static_cast<long double>(d - i);
    return v;
}

// A few Newton steps in long double; keep the refined value only if it
// actually reduces |p|.
double polish_root(const std::vector<long double>& coeffs, double x0) {
    long double x = x0;
    const long double f0 = std::abs(eval_ld(coeffs, x));
    long double best = x;
    long double best_f = f0;
    for (int it = 0; it < 4; ++it) {
        const long double fx = eval_ld(coeffs, x);
        const long double dfx = eval_deriv_ld(coeffs, x);
        if (dfx == 0.0L) break;
        x -= fx / dfx;
        const long double f = std::abs(eval_ld(coeffs, x));
        if (f < best_f) {
            best_f = f;
            best = x;
        }
    }
    return static_cast<double>(best);
}

std::vector<long double> widen(const std::vector<double>& coeffs) {
    return std::vector<long double>(coeffs.begin(), coeffs.end());
}

std::vector<double> narrow(const std::vector<long double>& coeffs) {
    std::vector<double> out(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = static_cast<double>(coeffs[i]);
    return out;
}

std::vector<double> expand_monic(const std::vector<double>& roots) {
    std::vector<long double> acc{1.0L};
    for (double r : roots) {
        acc.push_back(0.0L);
        for (std::size_t i = acc.size() - 1; i >= 1; --i)
            acc[i] -= static_cast<long double>(r) * acc[i - 1];
    }
    std::vector<double> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<double>(acc[i]);
    return out;
}

// Largest floored-relative coefficient mismatch between the expansion of a
// candidate root set and the target coefficients.
double expansion_residual(const std::vector<double>& roots, const std::vector<double>& target) {
    const std::vector<double> exp = expand_monic(roots);
    double worst = 0.0;
    for (std::size_t k = 0; k < target.size(); ++k)
        worst = std::max(worst, std::abs(exp[k] - target[k]) / (1.0 + std::abs(target[k])));
    return worst;
}

// Find nonnegative real roots whose expansion reproduces the coefficients:
// projected Levenberg-Marquardt on the (scale-normalized) coefficient residual.
// At high degree the coefficient-to-root map has condition numbers far beyond
// 1/eps, so companion eigenvalues of a genuinely realrooted polynomial can
// carry O(1) imaginary parts; this is the certificate that the stored
// coefficients are still within rounding distance of an exactly realizable
// nonnegative root set.
struct Realization {
    std::vector<double> roots;
    double residual;
};

Realization realize_nonneg_roots(const std::vector<double>& coeffs,
                                 const std::vector<double>& start) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    const auto idx = [](int i) { return static_cast<std::size_t>(i); };

    // Scale normalization (exact diagonal transform): roots of order one.
    double alpha = 0.0;
    for (int k = 1; k <= d; ++k)
        if (coeffs[idx(k)] != 0.0)
            alpha = std::max(alpha, std::pow(std::abs(coeffs[idx(k)]), 1.0 / k));
    if (alpha <= 0.0 || !std::isfinite(alpha)) alpha = 1.0;

    std::vector<double> target(idx(d) + 1);
    double pw = 1.0;
    for (int k = 0; k <= d; ++k) {
        target[idx(k)] = coeffs[idx(k)] / pw;
        pw *= alpha;
    }
    Eigen::VectorXd weight(d + 1);
    for (int k = 0; k <= d; ++k) weight(k) = 1.0 / (1.0 + std::abs(target[idx(k)]));

    std::vector<double> roots(idx(d));
    for (int j = 0; j < d; ++j) roots[idx(j)] = std::max(start[idx(j)] / alpha, 0.0);

    const auto residual_of = [&](const std::vector<double>& r) {
        return expansion_residual(r, target);
    };
    std::vector<double> best = roots;
    double best_res = residual_of(roots);

    double lambda = 1e-6;
    for (int it = 0; it < 800 && best_res > 1e-13; ++it) {
        const std::vector<double> full = expand_monic(roots);
        Eigen::VectorXd err(d + 1);
        for (int k = 0; k <= d; ++k) err(k) = (full[idx(k)] - target[idx(k)]) * weight(k);

        // Jacobian column j is minus the deflation of the expansion by root j
        // (synthetic division), shifted down one row.
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(d + 1, d);
        for (int j = 0; j < d; ++j) {
            double q = 1.0;
            jac(1, j) = -q * weight(1);
            for (int k = 1; k < d; ++k) {
                q = full[idx(k)] + roots[idx(j)] * q;
                jac(k + 1, j) = -q * weight(k + 1);
            }
        }

        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd jte = jac.transpose() * (-err);
        bool improved = false;
        for (int attempt = 0; attempt < 25; ++attempt) {
            Eigen::MatrixXd damped = jtj;
            for (int j = 0; j < d; ++j) damped(j, j) += lambda * std::max(jtj(j, j), 1e-12);
            const Eigen::VectorXd step = damped.ldlt().solve(jte);
            if (!step.allFinite()) {
                lambda *= 10.0;
                continue;
            }
            std::vector<double> cand(idx(d));
            for (int j = 0; j < d; ++j) cand[idx(j)] = std::max(roots[idx(j)] + step(j), 0.0);
            const double res = residual_of(cand);
            if (res < best_res * 0.999999) {
                roots = cand;
                best = cand;
                best_res = res;
                lambda = std::max(lambda * 0.3, 1e-12);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!improved) break;
    }

    for (double& r : best) r *= alpha;
    std::sort(best.begin(), best.end());
    return Realization{std::move(best), best_res};
}

RootList roots_from_coeffs(const std::vector<double>& coeffs,
                           const std::vector<long double>& eval_coeffs) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    RootList out;
    if (d == 0) return out;

    const Eigen::VectorXcd eig = companion_eigenvalues(coeffs);
    std::vector<double> real_parts, moduli;
    real_parts.reserve(static_cast<std::size_t>(d));
    moduli.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        const std::complex<double> z = eig(i);
        out.max_imag_residue = std::max(out.max_imag_residue,
                                        std::abs(z.imag()) / (1.0 + std::abs(z.real())));
        real_parts.push_back(z.real());
        moduli.push_back(std::abs(z));
    }

    if (out.max_imag_residue <= kImagTol) {
        for (double r : real_parts) out.values.push_back(polish_root(eval_coeffs, r));
        std::sort(out.values.begin(), out.values.end());
        const double scale = 1.0 + std::max(0.0, out.values.back());
        for (double& r : out.values) {
            if (r >= -kClampWindow && r < 0.0) r = 0.0;
            if (r < -kNegTolScale * scale)
                throw RealRootednessError("root check failed: negative root " +
                                          std::to_string(r));
        }
        return out;
    }

    // Fallback: certify by realization.
    std::sort(real_parts.begin(), real_parts.end());
    std::sort(moduli.begin(), moduli.end());
    Realization r1 = realize_nonneg_roots(coeffs, moduli);
    if (r1.residual > kRealizeTol) {
        Realization r2 = realize_nonneg_roots(coeffs, real_parts);
        if (r2.residual < r1.residual) r1 = std::move(r2);
    }
    if (r1.residual > kRealizeTol)
        throw RealRootednessError(
            "root check failed: imaginary residue " + std::to_string(out.max_imag_residue) +
            " and no nonnegative realization within tolerance (residual " +
            std::to_string(r1.residual) + ")");
    out.values = std::move(r1.roots);
    return out;
}

}  // namespace

NonnegPoly NonnegPoly::from_roots(std::vector<double> roots) {
    for (double r : roots) {
        if (!std::isfinite(r)) throw std::invalid_argument("from_roots: non-finite root");
        if (r < 0.0) throw std::domain_error("from_roots: negative root " + std::to_string(r));
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> coeffs = expand_monic(roots);
    RootList rl;
    rl.values = std::move(roots);
    return NonnegPoly(std::move(coeffs), std::move(rl));
}

NonnegPoly NonnegPoly::from_coeffs(std::vector<double> coeffs) {
    require_monic(coeffs);
    RootList rl = roots_from_coeffs(coeffs, widen(coeffs));
    return NonnegPoly(std::move(coeffs), std::move(rl));
}

namespace detail {

NonnegPoly poly_from_coeffs_extended(const std::vector<long double>& coeffs) {
    std::vector<double> rounded = narrow(coeffs);
    require_monic(rounded);
    RootList rl = roots_from_coeffs(rounded, coeffs);
    return NonnegPoly(std::move(rounded), std::move(rl));
}

}  // namespace detail

NonnegPoly NonnegPoly::from_coeffs_and_roots(std::vector<double> coeffs,
                                             std::vector<double> roots) {
    require_monic(coeffs);
    if (roots.size() + 1 != coeffs.size())
        throw std::invalid_argument("from_coeffs_and_roots: root count must equal the degree");
    for (double r : roots) {
        if (!std::isfinite(r)) throw std::invalid_argument("from_coeffs_and_roots: non-finite root");
        if (r < 0.0)
            throw std::domain_error("from_coeffs_and_roots: negative root " + std::to_string(r));
    }
    std::sort(roots.begin(), roots.end());
    const double mismatch = expansion_residual(roots, coeffs);
    if (mismatch > 1e-9)
        throw std::invalid_argument(
            "from_coeffs_and_roots: roots do not reproduce the coefficients (residual " +
            std::to_string(mismatch) + ")");
    RootList rl;
    rl.values = std::move(roots);
    return NonnegPoly(std::move(coeffs), std::move(rl));
}

std::vector<double> NonnegPoly::alternating() const { return coeffs_to_alternating(coeffs_); }

double NonnegPoly::max_root() const { return roots_.values.empty() ? 0.0 : roots_.values.back(); }

double NonnegPoly::root_mean() const {
    const int d = degree();
    if (d == 0) return 0.0;
    return -coeffs_[1] / static_cast<double>(d);
}

double NonnegPoly::operator()(double x) const {
    double v = 0.0;
    for (double c : coeffs_) v = v * x + c;
    return v;
}

double NonnegPoly::derivative_at(double x) const {
    const int d = degree();
    double v = 0.0;
    for (int i = 0; i < d; ++i) v = v * x + coeffs_[static_cast<std::size_t>(i)] * (d - i);
    return v;
}

std::vector<double> SymmetricPoly::coeffs() const {
    const std::vector<double>& base = base_.coeffs();
    std::vector<double> out(2 * base.size() - 1, 0.0);
    for (std::size_t i = 0; i < base.size(); ++i) out[2 * i] = base[i];
    return out;
}

std::vector<double> SymmetricPoly::roots() const {
    std::vector<double> out;
    out.reserve(2 * base_.roots().values.size());
    for (double r : base_.roots().values) {
        const double s = std::sqrt(std::max(0.0, r));
        out.push_back(-s);
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SymmetricPoly symmetrize(const NonnegPoly& p) { return SymmetricPoly(p); }

NonnegPoly scale_roots(const NonnegPoly& p, double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("scale_roots: alpha must be positive");
    std::vector<double> scaled = p.roots().values;
    for (double& r : scaled) r *= alpha;
    return NonnegPoly::from_roots(std::move(scaled));
}

double expectation_sym(const NonnegPoly&) { return 0.0; }

double variance_sym(const NonnegPoly& p) { return p.root_mean(); }

std::vector<double> power_sums(const NonnegPoly& p, int k_max) {
    if (k_max < 0) throw std::invalid_argument("power_sums: k_max must be >= 0");
    const int d = p.degree();
    const std::vector<double> e = p.alternating();  // elementary symmetric functions
    std::vector<double> s(static_cast<std::size_t>(k_max) + 1, 0.0);  // s[k], s[0] unused
    for (int k = 1; k <= k_max; ++k) {
        double acc = 0.0;
        for (int i = 1; i < k; ++i) {
            if (i > d) break;
            const double term = e[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(k - i)];
            acc += (i % 2 == 1) ? term : -term;
        }
        if (k <= d) {
            const double term = static_cast<double>(k) * e[static_cast<std::size_t>(k)];
            acc += (k % 2 == 1) ? term : -term;
        }
        s[static_cast<std::size_t>(k)] = acc;
    }
    return std::vector<double>(s.begin() + 1, s.end());
}

double max_root(const NonnegPoly& p) { return p.max_root(); }

std::vector<double> alternating_to_coeffs(const std::vector<double>& alt) {
    std::vector<double> out(alt.size());
    for (std::size_t i = 0; i < alt.size(); ++i) out[i] = (i % 2 == 0) ? alt[i] : -alt[i];
    return out;
}

std::vector<double> coeffs_to_alternating(const std::vector<double>& coeffs) {
    return alternating_to_coeffs(coeffs);  // involution
}

}  // namespace rectfree
