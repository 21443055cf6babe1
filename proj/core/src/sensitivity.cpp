#include "cba/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cba {
namespace {

double evaluate_metric(const Scenario& scenario, OutputMetric metric, double discount_rate,
                       const std::vector<double>& bases) {
    std::size_t next = 0;
    const CashFlowSchedule schedule =
        build_cashflow(scenario, [&](const Factor&) { return bases[next++]; });
    return metric == OutputMetric::TotalNetBenefit ? schedule.cumulative.back()
                                                   : npv(schedule, discount_rate);
}

std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

std::vector<TornadoEntry> one_at_a_time(const Scenario& scenario, OutputMetric metric,
                                        double discount_rate) {
    std::vector<double> bases(scenario.factors.size());
    for (std::size_t f = 0; f < scenario.factors.size(); ++f) {
        bases[f] = expected_value(scenario.factors[f].value);
    }

    std::vector<TornadoEntry> entries;
    entries.reserve(scenario.factors.size());
    for (std::size_t f = 0; f < scenario.factors.size(); ++f) {
        const auto& factor = scenario.factors[f];
        const double saved = bases[f];

        bases[f] = quantile(factor.value, 0.05);
        const double low = evaluate_metric(scenario, metric, discount_rate, bases);
        bases[f] = quantile(factor.value, 0.95);
        const double high = evaluate_metric(scenario, metric, discount_rate, bases);
        bases[f] = saved;

        entries.push_back({factor.id, low, high, std::abs(high - low)});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const TornadoEntry& a, const TornadoEntry& b) {
                         return a.swing > b.swing;
                     });
    return entries;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("spearman: sample lengths differ");
    }
    if (x.size() < 3) {
        throw std::invalid_argument("spearman: need at least 3 samples");
    }
    return pearson(average_ranks(x), average_ranks(y));
}

std::vector<CorrelationEntry> rank_correlation(
    const std::vector<std::string>& factor_ids,
    const std::vector<std::vector<double>>& input_samples,
    const std::vector<double>& output_samples) {
    if (factor_ids.size() != input_samples.size()) {
        throw std::invalid_argument("rank_correlation: one id per input series required");
    }
    const std::vector<double> output_ranks = average_ranks(output_samples);
    std::vector<CorrelationEntry> entries;
    entries.reserve(factor_ids.size());
    for (std::size_t f = 0; f < input_samples.size(); ++f) {
        if (input_samples[f].size() != output_samples.size()) {
            throw std::invalid_argument("rank_correlation: sample lengths differ for \"" +
                                        factor_ids[f] + "\"");
        }
        if (output_samples.size() < 3) {
            throw std::invalid_argument("rank_correlation: need at least 3 samples");
        }
        entries.push_back({factor_ids[f], pearson(average_ranks(input_samples[f]), output_ranks)});
    }
    return entries;
}

}  // namespace cba
