#include "rectfree/json_io.hpp"

#include <ostream>
#include <stdexcept>

namespace rectfree {

namespace {

std::vector<double> number_array(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        throw std::invalid_argument(std::string("polynomial record: missing array \"") + key +
                                    "\"");
    std::vector<double> out;
    out.reserve(j[key].size());
    for (const auto& v : j[key]) {
        if (!v.is_number())
            throw std::invalid_argument(std::string("polynomial record: \"") + key +
                                        "\" must contain numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

PolyRecord poly_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("polynomial record: expected a JSON object");
    std::optional<int> m;
    if (j.contains("m")) m = j["m"].get<int>();

    // "coeffs" wins when both are present (to_json emits the root list as
    // supplementary information).
    NonnegPoly poly = j.contains("coeffs")
                          ? NonnegPoly::from_coeffs(number_array(j, "coeffs"))
                          : NonnegPoly::from_roots(number_array(j, "roots"));
    if (j.contains("d") && j["d"].get<int>() != poly.degree())
        throw std::invalid_argument("polynomial record: \"d\" does not match the degree");
    return PolyRecord{std::move(poly), m};
}

nlohmann::json poly_to_json(const NonnegPoly& p, std::optional<RectParams> params) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["d"] = p.degree();
    if (params) j["m"] = params->m;
    j["coeffs"] = p.coeffs();
    j["roots"] = p.roots().values;
    return j;
}

FiniteR finite_r_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("FiniteR record: expected a JSON object");
    if (!j.contains("d") || !j.contains("m"))
        throw std::invalid_argument("FiniteR record: missing \"d\" or \"m\"");
    const RectParams params(j["d"].get<int>(), j["m"].get<int>());
    std::vector<double> coeffs = number_array(j, "r_coeffs");
    if (coeffs.size() != static_cast<std::size_t>(params.d) + 1)
        throw std::invalid_argument("FiniteR record: r_coeffs must have length d+1");
    if (coeffs[0] != 0.0)
        throw std::invalid_argument("FiniteR record: first entry must be 0");
    return FiniteR{params, TruncSeries(std::move(coeffs))};
}

nlohmann::json finite_r_to_json(const FiniteR& r) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["d"] = r.params.d;
    j["m"] = r.params.m;
    j["r_coeffs"] = r.poly_in_s.coeffs();
    return j;
}

nlohmann::json empirical_to_json(const EmpiricalConv& e) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["mean_coeffs"] = e.mean_coeffs;
    j["stderr_coeffs"] = e.stderr_coeffs;
    j["n_samples"] = e.n_samples;
    j["seed"] = e.seed;
    j["chunk_size"] = e.chunk_size;
    return j;
}

nlohmann::json convergence_to_json(const ConvergenceReport& report) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["d"] = report.d;
    j["m"] = report.m;
    j["base_coeffs"] = report.base_coeffs;
    j["k_max"] = report.k_max;
    j["rows"] = nlohmann::json::array();
    for (const ConvergenceRow& row : report.rows)
        j["rows"].push_back({{"n", row.n},
                             {"k", row.k},
                             {"finite_coeff", row.finite_coeff},
                             {"free_coeff", row.free_coeff},
                             {"abs_gap", row.abs_gap}});
    return j;
}

void convergence_to_csv(const ConvergenceReport& report, std::ostream& os) {
    os.precision(17);
    os << "n,k,finite_coeff,free_coeff,abs_gap\n";
    for (const ConvergenceRow& row : report.rows)
        os << row.n << "," << row.k << "," << row.finite_coeff << "," << row.free_coeff << ","
           << row.abs_gap << "\n";
}

nlohmann::json tightness_to_json(const TightnessReport& report) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["rows"] = nlohmann::json::array();
    for (const TightnessRow& row : report.rows)
        j["rows"].push_back({{"n", row.n},
                             {"s", row.s},
                             {"r_p", row.r_p},
                             {"r_q", row.r_q},
                             {"r_conv", row.r_conv},
                             {"gap", row.gap}});
    return j;
}

void tightness_to_csv(const TightnessReport& report, std::ostream& os) {
    os.precision(17);
    os << "n,s,r_p,r_q,r_conv,gap\n";
    for (const TightnessRow& row : report.rows)
        os << row.n << "," << row.s << "," << row.r_p << "," << row.r_q << "," << row.r_conv
           << "," << row.gap << "\n";
}

nlohmann::json limit_report_to_json(const LimitReport& report) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["target"] = report.target;
    j["target_roots"] = report.target_roots;
    j["rows"] = nlohmann::json::array();
    for (const LimitRow& row : report.rows)
        j["rows"].push_back(
            {{"N", row.n}, {"scaled_roots", row.scaled_roots}, {"distance", row.distance}});
    return j;
}

void limit_report_to_csv(const LimitReport& report, std::ostream& os) {
    os.precision(17);
    std::size_t d = 0;
    for (const LimitRow& row : report.rows) d = std::max(d, row.scaled_roots.size());
    os << "N,distance";
    for (std::size_t i = 0; i < d; ++i) os << ",root_" << i;
    os << "\n";
    for (const LimitRow& row : report.rows) {
        os << row.n << "," << row.distance;
        for (double r : row.scaled_roots) os << "," << r;
        os << "\n";
    }
}

}  // namespace rectfree
