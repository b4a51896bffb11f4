#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "rectfree/finite_transforms.hpp"
#include "rectfree/limits.hpp"
#include "rectfree/monte_carlo.hpp"
#include "rectfree/poly.hpp"

namespace rectfree {

inline constexpr int kSchemaVersion = 1;

/// Polynomial record: {"d": int, "m": int optional, "coeffs": [monic,
/// decreasing degree]} or {"roots": [nonnegative reals]}.
struct PolyRecord {
    NonnegPoly poly;
    std::optional<int> m;
};

PolyRecord poly_from_json(const nlohmann::json& j);

nlohmann::json poly_to_json(const NonnegPoly& p, std::optional<RectParams> params = {});

/// FiniteR record: {"d", "m", "r_coeffs": [index = power of s, first entry 0]}.
FiniteR finite_r_from_json(const nlohmann::json& j);
nlohmann::json finite_r_to_json(const FiniteR& r);

nlohmann::json empirical_to_json(const EmpiricalConv& e);

nlohmann::json convergence_to_json(const ConvergenceReport& report);
void convergence_to_csv(const ConvergenceReport& report, std::ostream& os);

nlohmann::json tightness_to_json(const TightnessReport& report);
void tightness_to_csv(const TightnessReport& report, std::ostream& os);

nlohmann::json limit_report_to_json(const LimitReport& report);
void limit_report_to_csv(const LimitReport& report, std::ostream& os);

}  // namespace rectfree
