#include "cba/cashflow.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cba {

PeriodSeries expand_factor(double base, Timing timing, const GrowthModel& growth,
                           int horizon_years) {
    if (horizon_years < 1) {
        throw std::invalid_argument("expand_factor: horizon must be >= 1");
    }
    PeriodSeries series(static_cast<std::size_t>(horizon_years) + 1, 0.0);
    if (timing == Timing::Initial) {
        series[0] = base;
        return series;
    }
    double amount = base;
    for (int t = 1; t <= horizon_years; ++t) {
        series[static_cast<std::size_t>(t)] = amount;
        amount *= 1.0 + growth.annual_rate;
    }
    return series;
}

PeriodSeries expand_factor(const Factor& factor, double base, int horizon_years) {
    if (factor.realized_schedule) {
        if (factor.realized_schedule->size() != static_cast<std::size_t>(horizon_years)) {
            throw std::invalid_argument("expand_factor: realized schedule does not cover 1..H");
        }
        PeriodSeries series(static_cast<std::size_t>(horizon_years) + 1, 0.0);
        for (int t = 1; t <= horizon_years; ++t) {
            series[static_cast<std::size_t>(t)] =
                (*factor.realized_schedule)[static_cast<std::size_t>(t - 1)];
        }
        return series;
    }
    return expand_factor(base, factor.timing, factor.growth, horizon_years);
}

CashFlowSchedule build_cashflow(const Scenario& scenario, const BaseValueResolver& resolver) {
    const int horizon = scenario.horizon_years;
    const auto periods = static_cast<std::size_t>(horizon) + 1;
    CashFlowSchedule schedule;
    schedule.inflow.assign(periods, 0.0);
    schedule.outflow.assign(periods, 0.0);

    for (const auto& factor : scenario.factors) {
        const double base = resolver(factor);
        const PeriodSeries series = expand_factor(factor, base, horizon);
        auto& target = factor.kind == FactorKind::Benefit ? schedule.inflow : schedule.outflow;
        for (std::size_t t = 0; t < periods; ++t) {
            target[t] += series[t];
        }
    }

    schedule.net.resize(periods);
    schedule.cumulative.resize(periods);
    double running = 0.0;
    for (std::size_t t = 0; t < periods; ++t) {
        schedule.net[t] = schedule.inflow[t] - schedule.outflow[t];
        running += schedule.net[t];
        schedule.cumulative[t] = running;
    }
    return schedule;
}

CashFlowSchedule expected_cashflow(const Scenario& scenario) {
    return build_cashflow(scenario,
                          [](const Factor& f) { return expected_value(f.value); });
}

double npv(const CashFlowSchedule& schedule, double discount_rate) {
    if (!(discount_rate > -1.0)) {
        throw std::invalid_argument("npv: discount rate must be > -1");
    }
    double result = 0.0;
    double discount = 1.0;
    for (const double flow : schedule.net) {
        result += flow / discount;
        discount *= 1.0 + discount_rate;
    }
    return result;
}

std::optional<double> payback_period(const CashFlowSchedule& schedule) {
    if (schedule.cumulative.empty()) return std::nullopt;
    if (schedule.cumulative[0] >= 0.0) return 0.0;
    for (std::size_t t = 1; t < schedule.cumulative.size(); ++t) {
        if (schedule.cumulative[t] >= 0.0) {
            const double shortfall = -schedule.cumulative[t - 1];
            const double gain = schedule.net[t];
            const double fraction = gain > 0.0 ? shortfall / gain : 1.0;
            return static_cast<double>(t - 1) + fraction;
        }
    }
    return std::nullopt;
}

FinancialMetrics metrics(const CashFlowSchedule& schedule, double discount_rate) {
    FinancialMetrics m;
    m.npv = npv(schedule, discount_rate);
    m.total_net_benefit = schedule.cumulative.empty() ? 0.0 : schedule.cumulative.back();
    m.payback_years = payback_period(schedule);
    m.total_benefits = std::accumulate(schedule.inflow.begin(), schedule.inflow.end(), 0.0);
    m.total_costs = std::accumulate(schedule.outflow.begin(), schedule.outflow.end(), 0.0);
    if (m.total_costs > 0.0) {
        m.bcr = m.total_benefits / m.total_costs;
    }
    return m;
}

}  // namespace cba
