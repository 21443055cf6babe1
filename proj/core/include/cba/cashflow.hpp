#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cba/factor.hpp"

namespace cba {

/// Amounts indexed by period 0..H (length H + 1).
using PeriodSeries = std::vector<double>;

struct CashFlowSchedule {
    PeriodSeries inflow;      // benefits
    PeriodSeries outflow;     // costs
    PeriodSeries net;         // inflow - outflow
    PeriodSeries cumulative;  // running sum of net

    bool operator==(const CashFlowSchedule&) const = default;
};

struct FinancialMetrics {
    double npv = 0.0;
    double total_net_benefit = 0.0;  // cumulative[H]
    std::optional<double> payback_years;
    std::optional<double> bcr;  // absent when total costs are 0
    double total_costs = 0.0;
    double total_benefits = 0.0;
};

/// Yields one base amount per factor: expected_value for deterministic
/// runs, or one Monte Carlo draw per iteration.
using BaseValueResolver = std::function<double(const Factor&)>;

/// Expand a base amount over the horizon.
/// Initial: [base, 0, ..., 0]. Ongoing: [0, base, base(1+g), ..., base(1+g)^(H-1)].
PeriodSeries expand_factor(double base, Timing timing, const GrowthModel& growth,
                           int horizon_years);

/// Factor-aware expansion: a realized schedule takes precedence over the
/// growth model and is used verbatim for periods 1..H.
PeriodSeries expand_factor(const Factor& factor, double base, int horizon_years);

CashFlowSchedule build_cashflow(const Scenario& scenario, const BaseValueResolver& resolver);

/// Deterministic schedule with every factor at its analytic mean.
CashFlowSchedule expected_cashflow(const Scenario& scenario);

/// Sum of net[t] / (1+r)^t over periods 0..H. Requires r > -1.
double npv(const CashFlowSchedule& schedule, double discount_rate);

/// First time the cumulative flow turns non-negative, linearly interpolated
/// within the crossing period; empty if it never does.
std::optional<double> payback_period(const CashFlowSchedule& schedule);

FinancialMetrics metrics(const CashFlowSchedule& schedule, double discount_rate);

}  // namespace cba
