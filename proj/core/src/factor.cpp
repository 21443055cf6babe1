#include "cba/factor.hpp"

#include <cctype>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace cba {
namespace {

bool valid_slug(const std::string& id) {
    if (id.empty()) return false;
    for (const char ch : id) {
        const auto c = static_cast<unsigned char>(ch);
        if (!(std::isalnum(c) || ch == '_' || ch == '-')) return false;
    }
    return true;
}

}  // namespace

std::vector<Violation> validate_factor(const Factor& f) {
    std::vector<Violation> out;
    auto add = [&](std::string msg) { out.push_back({f.id, std::move(msg)}); };

    if (!valid_slug(f.id)) {
        add("id must be a non-empty slug of letters, digits, '_' or '-'");
    }
    if (f.kind == FactorKind::Cost && std::holds_alternative<BenefitCategory>(f.category)) {
        add("category/kind mismatch: cost factor carries a benefit category");
    }
    if (f.kind == FactorKind::Benefit && std::holds_alternative<CostCategory>(f.category)) {
        add("category/kind mismatch: benefit factor carries a cost category");
    }
    if (f.kind == FactorKind::Benefit && !f.tangibility) {
        add("benefit factor must state its tangibility");
    }
    if (f.kind == FactorKind::Cost && f.tangibility) {
        add("tangibility applies to benefit factors only");
    }
    if (f.tangibility == Tangibility::Intangible && f.note.empty()) {
        add("intangible benefit must carry a measurable re-expression note");
    }
    if (!(f.growth.annual_rate > -1.0)) {
        add("growth rate must be > -1 (rate <= -1 given)");
    }
    if (f.timing == Timing::Initial && f.growth.annual_rate != 0.0) {
        add("initial factors never grow; growth rate must be 0");
    }

    for (const auto& msg : spec_violations(f.value)) {
        add("value: " + msg);
    }
    if (spec_violations(f.value).empty() && !(expected_value(f.value) >= 0.0)) {
        add("value must have a non-negative analytic mean");
    }

    if (f.realized_schedule) {
        const auto& sched = *f.realized_schedule;
        if (f.timing != Timing::Ongoing) {
            add("realized schedule requires ongoing timing");
        }
        if (sched.empty()) {
            add("realized schedule must not be empty");
        }
        for (const double v : sched) {
            if (!(std::isfinite(v) && v >= 0.0)) {
                add("realized schedule entries must be finite and non-negative");
                break;
            }
        }
        const auto* point = std::get_if<PointSpec>(&f.value);
        if (!point) {
            add("realized schedule requires a point value");
        } else if (!sched.empty() && point->value != sched.front()) {
            add("realized schedule must start at the factor's point value");
        }
    }
    return out;
}

std::vector<Violation> validate_scenario(const Scenario& s) {
    std::vector<Violation> out;
    auto add = [&](std::string id, std::string msg) {
        out.push_back({std::move(id), std::move(msg)});
    };

    if (s.horizon_years < 1) {
        add("", "horizon must be >= 1");
    }
    if (!(s.discount_rate > -1.0)) {
        add("", "discount rate must be > -1");
    }
    if (s.factors.empty()) {
        add("", "scenario must contain at least one factor");
    }
    if (s.currency.empty()) {
        add("", "currency code must not be empty");
    }

    std::unordered_set<std::string> seen;
    for (const auto& f : s.factors) {
        if (!seen.insert(f.id).second) {
            add(f.id, "duplicate id \"" + f.id + "\"");
        }
        auto factor_violations = validate_factor(f);
        out.insert(out.end(), factor_violations.begin(), factor_violations.end());
        if (f.realized_schedule && s.horizon_years >= 1 &&
            f.realized_schedule->size() != static_cast<std::size_t>(s.horizon_years)) {
            add(f.id, "realized schedule must cover periods 1..H (expected " +
                          std::to_string(s.horizon_years) + " entries, got " +
                          std::to_string(f.realized_schedule->size()) + ")");
        }
    }
    return out;
}

const char* to_string(FactorKind k) {
    return k == FactorKind::Cost ? "cost" : "benefit";
}

const char* to_string(CostCategory c) {
    switch (c) {
        case CostCategory::Company: return "company";
        case CostCategory::Technology: return "technology";
        case CostCategory::Employee: return "employee";
    }
    return "?";
}

const char* to_string(BenefitCategory c) {
    return c == BenefitCategory::Design ? "design" : "construction";
}

const char* to_string(Timing t) {
    return t == Timing::Initial ? "initial" : "ongoing";
}

const char* to_string(Tangibility t) {
    return t == Tangibility::Tangible ? "tangible" : "intangible";
}

}  // namespace cba
