#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cba/distribution.hpp"

namespace cba {

enum class FactorKind { Cost, Benefit };

enum class CostCategory { Company, Technology, Employee };

enum class BenefitCategory { Design, Construction };

using FactorCategory = std::variant<CostCategory, BenefitCategory>;

/// Initial factors occur once at period 0 and never grow;
/// Ongoing factors occur in periods 1..H and grow per GrowthModel.
enum class Timing { Initial, Ongoing };

/// Metadata on benefit factors. Intangible benefits must carry a note
/// stating their measurable re-expression.
enum class Tangibility { Tangible, Intangible };

struct GrowthModel {
    double annual_rate = 0.0;  // fraction per year; must be > -1
    bool operator==(const GrowthModel&) const = default;
};

/// One cost or benefit line item.
struct Factor {
    std::string id;    // unique slug within a scenario
    std::string name;  // display name; distinct ids may share a name
    FactorKind kind = FactorKind::Cost;
    FactorCategory category = CostCategory::Company;
    Timing timing = Timing::Initial;
    std::optional<Tangibility> tangibility;
    DistributionSpec value = PointSpec{0.0};  // base-period amount, currency units
    GrowthModel growth;
    /// Realized per-period amounts for periods 1..H, recorded as data.
    /// When present the factor must be Ongoing and point-valued with
    /// value == schedule[0]; expansion uses the schedule verbatim instead
    /// of the growth model.
    std::optional<std::vector<double>> realized_schedule;
    std::string note;  // e.g. the intangible re-expression

    bool operator==(const Factor&) const = default;
};

struct Scenario {
    std::string name;
    int horizon_years = 5;
    double discount_rate = 0.05;  // fraction per year
    std::string currency = "USD";
    std::vector<Factor> factors;
    std::map<std::string, std::string> metadata;

    bool operator==(const Scenario&) const = default;
};

/// A broken invariant; violations are data, not failures.
struct Violation {
    std::string factor_id;  // empty for scenario-level violations
    std::string message;
    bool operator==(const Violation&) const = default;
};

/// Every violated factor invariant, with human-readable messages.
std::vector<Violation> validate_factor(const Factor& factor);

/// Union of per-factor violations plus scenario-level checks.
std::vector<Violation> validate_scenario(const Scenario& scenario);

const char* to_string(FactorKind k);
const char* to_string(CostCategory c);
const char* to_string(BenefitCategory c);
const char* to_string(Timing t);
const char* to_string(Tangibility t);

}  // namespace cba
