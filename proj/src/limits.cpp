#include "rectfree/limits.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "rectfree/finite_transforms.hpp"
#include "rectfree/free_transforms.hpp"
#include "rectfree/rect_convolution.hpp"

namespace rectfree {

namespace {

void require_increasing(const std::vector<int>& n_list, const char* who) {
    if (n_list.empty()) throw std::invalid_argument(std::string(who) + ": empty n list");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 1) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
        if (i > 0 && n_list[i] <= n_list[i - 1])
            throw std::invalid_argument(std::string(who) + ": n list must be strictly increasing");
    }
}

void require_degree_cap(int d, int n_max, bool allow_large, const char* who) {
    if (!allow_large && d * n_max > kDefaultDegreeCap)
        throw std::invalid_argument(std::string(who) + ": stacked degree " +
                                    std::to_string(d * n_max) + " exceeds the default cap of " +
                                    std::to_string(kDefaultDegreeCap) +
                                    "; pass allow_large to override");
}

double sorted_root_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double dist = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dist = std::max(dist, std::abs(a[i] - b[i]));
    return dist;
}

}  // namespace

NonnegPoly stack_power(const NonnegPoly& p, int n) {
    if (n < 1) throw std::invalid_argument("stack_power: n must be >= 1");
    const std::vector<double>& base = p.roots().values;
    std::vector<double> roots;
    roots.reserve(base.size() * static_cast<std::size_t>(n));
    for (int rep = 0; rep < n; ++rep) roots.insert(roots.end(), base.begin(), base.end());
    return NonnegPoly::from_roots(std::move(roots));
}

ConvergenceReport convergence_sweep(const NonnegPoly& p, const RectParams& params,
                                    const std::vector<int>& n_list, int k_max,
                                    bool allow_large) {
    require_increasing(n_list, "convergence_sweep");
    if (k_max < 1) throw std::invalid_argument("convergence_sweep: k_max must be >= 1");
    if (p.degree() != params.d)
        throw std::invalid_argument("convergence_sweep: polynomial degree must equal d");
    require_degree_cap(params.d, n_list.back(), allow_large, "convergence_sweep");

    const SymmetricMoments mom = SymmetricMoments::from_poly(p, k_max + 1);
    const TruncSeries free_r =
        free_rect_R_series(mom, params.lambda(), static_cast<std::size_t>(k_max) + 1);

    ConvergenceReport report;
    report.d = params.d;
    report.m = params.m;
    report.base_coeffs = p.coeffs();
    report.k_max = k_max;
    for (int n : n_list) {
        const NonnegPoly pn = stack_power(p, n);
        const RectParams pn_params(params.d * n, params.m * n);
        const TruncSeries fin = detail::finite_r_from_alternating(pn.alternating(), pn_params);
        for (int k = 1; k <= k_max; ++k) {
            ConvergenceRow row;
            row.n = n;
            row.k = k;
            row.finite_coeff =
                static_cast<std::size_t>(k) < fin.order() ? fin[static_cast<std::size_t>(k)] : 0.0;
            row.free_coeff = free_r[static_cast<std::size_t>(k)];
            row.abs_gap = std::abs(row.finite_coeff - row.free_coeff);
            report.rows.push_back(row);
        }
    }
    return report;
}

TightnessReport tightness_check(const NonnegPoly& p, const NonnegPoly& q,
                                const RectParams& params, const std::vector<int>& n_list,
                                const std::vector<double>& s_grid, bool allow_large) {
    require_increasing(n_list, "tightness_check");
    if (s_grid.empty()) throw std::invalid_argument("tightness_check: empty s grid");
    for (double s : s_grid)
        if (!(s > 0.0)) throw std::invalid_argument("tightness_check: s grid must be positive");
    if (p.degree() != params.d || q.degree() != params.d)
        throw std::invalid_argument("tightness_check: polynomial degrees must equal d");
    require_degree_cap(params.d, n_list.back(), allow_large, "tightness_check");

    TightnessReport report;
    for (int n : n_list) {
        const RectParams pn_params(params.d * n, params.m * n);
        const NonnegPoly conv = rect_convolve(stack_power(p, n), stack_power(q, n), pn_params);
        for (double s : s_grid) {
            TightnessRow row;
            row.n = n;
            row.s = s;
            row.r_p = free_rect_R_eval(p, params, s);
            row.r_q = free_rect_R_eval(q, params, s);
            row.r_conv = free_rect_R_eval(conv, pn_params, s);
            row.gap = row.r_p + row.r_q - row.r_conv;
            report.rows.push_back(row);
        }
    }
    return report;
}

LimitReport lln_experiment(const std::vector<NonnegPoly>& p_list, const RectParams& params,
                           const std::vector<int>& n_list) {
    if (p_list.empty()) throw std::invalid_argument("lln_experiment: empty polynomial list");
    for (const NonnegPoly& p : p_list)
        if (p.degree() != params.d)
            throw std::invalid_argument("lln_experiment: polynomial degree must equal d");
    require_increasing(n_list, "lln_experiment");

    LimitReport report;
    report.target = "x^d (zero polynomial)";
    report.target_roots.assign(static_cast<std::size_t>(params.d), 0.0);

    NonnegPoly acc = p_list[0];
    int built = 1;
    for (int n : n_list) {
        for (; built < n; ++built)
            acc = rect_convolve(acc, p_list[static_cast<std::size_t>(built) % p_list.size()],
                                params);
        const double inv_n2 = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
        const NonnegPoly scaled = scale_roots(acc, inv_n2);
        LimitRow row;
        row.n = n;
        row.scaled_roots = scaled.roots().values;
        for (double r : row.scaled_roots) row.distance = std::max(row.distance, std::abs(r));
        report.rows.push_back(std::move(row));
    }
    return report;
}

LimitReport clt_experiment(const NonnegPoly& p, const RectParams& params,
                           const std::vector<int>& n_list) {
    if (p.degree() != params.d)
        throw std::invalid_argument("clt_experiment: polynomial degree must equal d");
    require_increasing(n_list, "clt_experiment");
    const double sigma2 = p.root_mean();
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("clt_experiment: root mean must be positive");

    // Laguerre target with the same root mean sigma2.
    const NonnegPoly target = laguerre_poly(params, sigma2 / static_cast<double>(params.m));
    LimitReport report;
    report.target = "laguerre(root mean " + std::to_string(sigma2) + ")";
    report.target_roots = target.roots().values;

    NonnegPoly acc = p;
    int built = 1;
    for (int n : n_list) {
        for (; built < n; ++built) acc = rect_convolve(acc, p, params);
        const NonnegPoly scaled = scale_roots(acc, 1.0 / static_cast<double>(n));
        LimitRow row;
        row.n = n;
        row.scaled_roots = scaled.roots().values;
        row.distance = sorted_root_distance(row.scaled_roots, report.target_roots);
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace rectfree
