// Command-line surface for the rectangular convolution toolkit.
//
// Subcommands: convolve, rtransform, invert, mc-verify, and the experiment
// drivers under `limits` (lln, clt, converge, tightness).  Every command is
// deterministic given its flags; all randomness flows from --seed.
//
// Exit codes: 0 success, 1 numeric/statistical failure, 2 usage/validation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rectfree/finite_transforms.hpp"
#include "rectfree/free_transforms.hpp"
#include "rectfree/json_io.hpp"
#include "rectfree/limits.hpp"
#include "rectfree/monte_carlo.hpp"
#include "rectfree/rect_convolution.hpp"

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load_json_arg(const std::string& arg) {
    std::string text = arg;
    // Inline JSON starts with '{'; anything else is a file path.
    if (arg.find('{') == std::string::npos) {
        std::ifstream in(arg);
        if (!in) throw UsageError("cannot open input file: " + arg);
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("malformed JSON input: ") + e.what());
    }
}

rectfree::PolyRecord load_poly(const std::string& arg) {
    // A bad polynomial in the input is a validation failure, not a numeric one.
    try {
        return rectfree::poly_from_json(load_json_arg(arg));
    } catch (const rectfree::RealRootednessError& e) {
        throw UsageError(std::string("invalid polynomial record: ") + e.what());
    }
}

rectfree::RectParams resolve_params(int degree, std::optional<int> d_flag,
                                    std::optional<int> m_flag, const std::string& lambda_flag,
                                    std::optional<int> m_record) {
    if (d_flag && *d_flag != degree)
        throw UsageError("--d " + std::to_string(*d_flag) +
                         " does not match the polynomial degree " + std::to_string(degree));
    if (m_flag && !lambda_flag.empty())
        throw UsageError("give exactly one of --m and --lambda");
    if (m_flag) return rectfree::RectParams(degree, *m_flag);
    if (!lambda_flag.empty()) {
        // Rational "a/b" so that (d, m) stay exact integers.
        const auto slash = lambda_flag.find('/');
        long a = 0, b = 1;
        try {
            if (slash == std::string::npos) {
                a = std::stol(lambda_flag);
            } else {
                a = std::stol(lambda_flag.substr(0, slash));
                b = std::stol(lambda_flag.substr(slash + 1));
            }
        } catch (const std::exception&) {
            throw UsageError("--lambda must be a rational like \"1/2\"");
        }
        if (a <= 0 || b <= 0) throw UsageError("--lambda must be a positive rational");
        if ((static_cast<long>(degree) * b) % a != 0)
            throw UsageError("--lambda " + lambda_flag + " does not give an integer m for d=" +
                             std::to_string(degree));
        return rectfree::RectParams(degree, static_cast<int>(static_cast<long>(degree) * b / a));
    }
    if (m_record) return rectfree::RectParams(degree, *m_record);
    throw UsageError("missing --m or --lambda (and no \"m\" in the polynomial record)");
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot open output file: " + out_path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

struct CommonOut {
    std::string out_path;
    std::string format = "json";
};

void add_common_out(CLI::App* cmd, CommonOut& out) {
    cmd->add_option("--out", out.out_path, "output file (default: stdout)");
    cmd->add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

int cmd_convolve(const std::string& p_arg, const std::string& q_arg,
                 std::optional<int> d_flag, std::optional<int> m_flag,
                 const std::string& lambda_flag, bool crosscheck, const CommonOut& out) {
    const rectfree::PolyRecord pr = load_poly(p_arg);
    const rectfree::PolyRecord qr = load_poly(q_arg);
    const rectfree::RectParams params =
        resolve_params(pr.poly.degree(), d_flag, m_flag, lambda_flag, pr.m ? pr.m : qr.m);

    const rectfree::NonnegPoly result = rectfree::rect_convolve(pr.poly, qr.poly, params);
    json j = rectfree::poly_to_json(result, params);
    if (crosscheck) {
        const rectfree::NonnegPoly alt = rectfree::rect_convolve_diffop(pr.poly, qr.poly, params);
        double delta = 0.0;
        for (std::size_t i = 0; i < result.coeffs().size(); ++i) {
            const double a = result.coeffs()[i], b = alt.coeffs()[i];
            delta = std::max(delta, std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b))));
        }
        j["diffop_max_rel_delta"] = delta;
    }
    if (out.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "k,coeff\n";
        for (std::size_t i = 0; i < result.coeffs().size(); ++i)
            os << i << "," << result.coeffs()[i] << "\n";
        emit(out.out_path, os.str());
    } else {
        emit(out.out_path, j.dump(2));
    }
    return 0;
}

int cmd_rtransform(const std::string& p_arg, std::optional<int> d_flag,
                   std::optional<int> m_flag,
                   const std::string& lambda_flag, bool with_free, int order,
                   const CommonOut& out) {
    const rectfree::PolyRecord pr = load_poly(p_arg);
    const rectfree::RectParams params =
        resolve_params(pr.poly.degree(), d_flag, m_flag, lambda_flag, pr.m);
    const rectfree::FiniteR r = rectfree::finite_R(pr.poly, params);
    json j = rectfree::finite_r_to_json(r);
    if (with_free) {
        const auto mom = rectfree::SymmetricMoments::from_poly(pr.poly, order);
        j["free_r_coeffs"] =
            rectfree::free_rect_R_series(mom, params.lambda(), static_cast<std::size_t>(order))
                .coeffs();
    }
    if (out.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "k,r_coeff\n";
        for (std::size_t i = 0; i < r.poly_in_s.order(); ++i)
            os << i << "," << r.poly_in_s[i] << "\n";
        emit(out.out_path, os.str());
    } else {
        emit(out.out_path, j.dump(2));
    }
    return 0;
}

int cmd_invert(const std::string& r_arg, const CommonOut& out) {
    const rectfree::FiniteR r = rectfree::finite_r_from_json(load_json_arg(r_arg));
    const rectfree::NonnegPoly p = rectfree::finite_R_invert(r);
    emit(out.out_path, rectfree::poly_to_json(p, r.params).dump(2));
    return 0;
}

int cmd_mc_verify(const std::string& p_arg, const std::string& q_arg,
                  std::optional<int> d_flag, std::optional<int> m_flag,
                  const std::string& lambda_flag, std::int64_t samples, std::uint64_t seed,
                  double threshold, const std::string& dump_path, const CommonOut& out) {
    const rectfree::PolyRecord pr = load_poly(p_arg);
    const rectfree::PolyRecord qr = load_poly(q_arg);
    const rectfree::RectParams params =
        resolve_params(pr.poly.degree(), d_flag, m_flag, lambda_flag, pr.m ? pr.m : qr.m);

    rectfree::McOptions options;
    std::ofstream dump;
    if (!dump_path.empty()) {
        dump.open(dump_path);
        if (!dump) throw UsageError("cannot open sample dump file: " + dump_path);
        options.sample_sink = &dump;
    }

    const rectfree::NonnegPoly algebraic = rectfree::rect_convolve(pr.poly, qr.poly, params);
    const rectfree::EmpiricalConv mc =
        rectfree::empirical_convolution(pr.poly, qr.poly, params, samples, seed, options);

    double max_abs_z = 0.0;
    json rows = json::array();
    std::ostringstream csv;
    csv.precision(17);
    csv << "k,algebraic,mc_mean,stderr,z\n";
    for (std::size_t k = 0; k < algebraic.coeffs().size(); ++k) {
        const double alg = algebraic.coeffs()[k];
        const double mean = mc.mean_coeffs[k];
        const double se = mc.stderr_coeffs[k];
        const double z = se > 0.0 ? (mean - alg) / se : 0.0;
        // Degenerate coefficients (zero spread) must match outright.
        if (se == 0.0 && std::abs(mean - alg) > 1e-12 * (1.0 + std::abs(alg))) max_abs_z = 1e300;
        max_abs_z = std::max(max_abs_z, std::abs(z));
        rows.push_back({{"k", k}, {"algebraic", alg}, {"mc_mean", mean}, {"stderr", se}, {"z", z}});
        csv << k << "," << alg << "," << mean << "," << se << "," << z << "\n";
    }

    if (out.format == "csv") {
        emit(out.out_path, csv.str());
    } else {
        json j;
        j["schema_version"] = rectfree::kSchemaVersion;
        j["d"] = params.d;
        j["m"] = params.m;
        j["n_samples"] = mc.n_samples;
        j["seed"] = mc.seed;
        j["chunk_size"] = mc.chunk_size;
        j["threshold"] = threshold;
        j["rows"] = rows;
        j["max_abs_z"] = max_abs_z;
        j["pass"] = max_abs_z <= threshold;
        emit(out.out_path, j.dump(2));
    }
    return max_abs_z <= threshold ? 0 : 1;
}

std::vector<rectfree::NonnegPoly> load_polys(const std::vector<std::string>& args) {
    std::vector<rectfree::NonnegPoly> out;
    out.reserve(args.size());
    for (const std::string& a : args) out.push_back(load_poly(a).poly);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rectangular singular-value convolution toolkit"};
    app.require_subcommand(1);

    std::string p_arg, q_arg, r_arg, lambda_flag, dump_path;
    std::vector<std::string> p_args;
    std::optional<int> d_flag;
    std::optional<int> m_flag;
    bool crosscheck = false, with_free = false, allow_large = false;
    int order = 8, k_max = 3;
    std::int64_t samples = 100000;
    std::uint64_t seed = 1;
    double threshold = 4.0;
    std::vector<int> n_list{1, 2, 4, 8, 16};
    std::vector<double> s_grid{0.05, 0.1, 0.2};
    CommonOut out;

    auto* convolve = app.add_subcommand("convolve", "rectangular additive convolution p [+] q");
    convolve->add_option("--p", p_arg, "first polynomial (path or inline JSON)")->required();
    convolve->add_option("--q", q_arg, "second polynomial (path or inline JSON)")->required();
    convolve->add_option("--d", d_flag, "degree d (checked against the input)");
    convolve->add_option("--m", m_flag, "larger dimension m");
    convolve->add_option("--lambda", lambda_flag, "aspect ratio d/m as a rational, e.g. 1/2");
    convolve->add_flag("--crosscheck", crosscheck,
                       "also run the differential-operator route and report the delta");
    add_common_out(convolve, out);

    auto* rtransform = app.add_subcommand("rtransform", "finite rectangular R-transform");
    rtransform->add_option("--p", p_arg, "polynomial (path or inline JSON)")->required();
    rtransform->add_option("--d", d_flag, "degree d (checked against the input)");
    rtransform->add_option("--m", m_flag, "larger dimension m");
    rtransform->add_option("--lambda", lambda_flag, "aspect ratio d/m as a rational");
    rtransform->add_flag("--free", with_free, "also emit the asymptotic R series");
    rtransform->add_option("--order", order, "order of the asymptotic series");
    add_common_out(rtransform, out);

    auto* invert = app.add_subcommand("invert", "recover the polynomial from its R-transform");
    invert->add_option("--r", r_arg, "FiniteR record (path or inline JSON)")->required();
    add_common_out(invert, out);

    auto* mc = app.add_subcommand("mc-verify",
                                  "check the algebraic convolution against the Haar Monte-Carlo "
                                  "average");
    mc->add_option("--p", p_arg, "first polynomial")->required();
    mc->add_option("--q", q_arg, "second polynomial")->required();
    mc->add_option("--d", d_flag, "degree d (checked against the input)");
    mc->add_option("--m", m_flag, "larger dimension m");
    mc->add_option("--lambda", lambda_flag, "aspect ratio d/m as a rational");
    mc->add_option("--samples", samples, "number of Monte-Carlo samples");
    mc->add_option("--seed", seed, "RNG seed");
    mc->add_option("--threshold", threshold, "max |z| accepted (exit 1 beyond)");
    mc->add_option("--dump-samples", dump_path, "CSV of per-sample coefficients");
    add_common_out(mc, out);

    auto* limits = app.add_subcommand("limits", "limit-theorem experiment drivers");
    limits->require_subcommand(1);

    auto* lln = limits->add_subcommand("lln", "law of large numbers");
    lln->add_option("--p", p_args, "summand polynomials, cycled (repeatable)")->required();
    lln->add_option("--d", d_flag, "degree d (checked against the input)");
    lln->add_option("--m", m_flag, "larger dimension m");
    lln->add_option("--lambda", lambda_flag, "aspect ratio d/m as a rational");
    lln->add_option("--N", n_list, "summand counts (comma separated)")->delimiter(',');
    add_common_out(lln, out);

    auto* clt = limits->add_subcommand("clt", "central limit theorem");
    clt->add_option("--p", p_arg, "summand polynomial")->required();
    clt->add_option("--d", d_flag, "degree d (checked against the input)");
    clt->add_option("--m", m_flag, "larger dimension m");
    clt->add_option("--lambda", lambda_flag, "aspect ratio d/m as a rational");
    clt->add_option("--N", n_list, "summand counts (comma separated)")->delimiter(',');
    add_common_out(clt, out);

    auto* converge = limits->add_subcommand("converge", "finite-to-free transform convergence");
    converge->add_option("--p", p_arg, "base polynomial")->required();
    converge->add_option("--d", d_flag, "degree d (checked against the input)");
    converge->add_option("--m", m_flag, "larger dimension m");
    converge->add_option("--lambda", lambda_flag, "aspect ratio d/m as a rational");
    converge->add_option("--n", n_list, "stacking factors (comma separated)")->delimiter(',');
    converge->add_option("--kmax", k_max, "highest coefficient index compared");
    converge->add_flag("--allow-large", allow_large, "lift the default stacked-degree cap");
    add_common_out(converge, out);

    auto* tight = limits->add_subcommand("tightness", "subadditivity gap of the free transform");
    tight->add_option("--p", p_arg, "first polynomial")->required();
    tight->add_option("--q", q_arg, "second polynomial")->required();
    tight->add_option("--d", d_flag, "degree d (checked against the input)");
    tight->add_option("--m", m_flag, "larger dimension m");
    tight->add_option("--lambda", lambda_flag, "aspect ratio d/m as a rational");
    tight->add_option("--n", n_list, "stacking factors (comma separated)")->delimiter(',');
    tight->add_option("--s-grid", s_grid, "evaluation points (comma separated)")->delimiter(',');
    tight->add_flag("--allow-large", allow_large, "lift the default stacked-degree cap");
    add_common_out(tight, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (convolve->parsed())
            return cmd_convolve(p_arg, q_arg, d_flag, m_flag, lambda_flag, crosscheck, out);
        if (rtransform->parsed())
            return cmd_rtransform(p_arg, d_flag, m_flag, lambda_flag, with_free, order, out);
        if (invert->parsed()) return cmd_invert(r_arg, out);
        if (mc->parsed())
            return cmd_mc_verify(p_arg, q_arg, d_flag, m_flag, lambda_flag, samples, seed,
                                 threshold, dump_path, out);
        if (limits->parsed()) {
            if (lln->parsed()) {
                const auto polys = load_polys(p_args);
                const rectfree::RectParams params =
                    resolve_params(polys.front().degree(), d_flag, m_flag, lambda_flag, std::nullopt);
                const auto report = rectfree::lln_experiment(polys, params, n_list);
                if (out.format == "csv") {
                    std::ostringstream os;
                    rectfree::limit_report_to_csv(report, os);
                    emit(out.out_path, os.str());
                } else {
                    emit(out.out_path, rectfree::limit_report_to_json(report).dump(2));
                }
                return 0;
            }
            const rectfree::PolyRecord pr = load_poly(p_arg);
            const rectfree::RectParams params =
                resolve_params(pr.poly.degree(), d_flag, m_flag, lambda_flag, pr.m);
            if (clt->parsed()) {
                const auto report = rectfree::clt_experiment(pr.poly, params, n_list);
                if (out.format == "csv") {
                    std::ostringstream os;
                    rectfree::limit_report_to_csv(report, os);
                    emit(out.out_path, os.str());
                } else {
                    emit(out.out_path, rectfree::limit_report_to_json(report).dump(2));
                }
                return 0;
            }
            if (converge->parsed()) {
                const auto report =
                    rectfree::convergence_sweep(pr.poly, params, n_list, k_max, allow_large);
                if (out.format == "csv") {
                    std::ostringstream os;
                    rectfree::convergence_to_csv(report, os);
                    emit(out.out_path, os.str());
                } else {
                    emit(out.out_path, rectfree::convergence_to_json(report).dump(2));
                }
                return 0;
            }
            if (tight->parsed()) {
                const rectfree::PolyRecord qr = load_poly(q_arg);
                const auto report = rectfree::tightness_check(pr.poly, qr.poly, params, n_list,
                                                              s_grid, allow_large);
                if (out.format == "csv") {
                    std::ostringstream os;
                    rectfree::tightness_to_csv(report, os);
                    emit(out.out_path, os.str());
                } else {
                    emit(out.out_path, rectfree::tightness_to_json(report).dump(2));
                }
                return 0;
            }
        }
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const rectfree::RealRootednessError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 1;
    }
}
