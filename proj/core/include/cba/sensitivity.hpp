#pragma once

#include <string>
#include <vector>

#include "cba/cashflow.hpp"
#include "cba/simulation.hpp"

namespace cba {

/// One bar of the tornado diagram: the output metric with the factor at its
/// distribution's p5 (low_output) and p95 (high_output) while every other
/// factor sits at its analytic mean. For a cost factor low_output typically
/// exceeds high_output; swing is the absolute difference.
struct TornadoEntry {
    std::string factor_id;
    double low_output = 0.0;
    double high_output = 0.0;
    double swing = 0.0;
};

struct CorrelationEntry {
    std::string factor_id;
    double spearman_rho = 0.0;  // in [-1, 1]
};

/// One-at-a-time sensitivity; entries sorted by descending swing
/// (scenario order on ties). Point-valued factors get swing 0.
std::vector<TornadoEntry> one_at_a_time(const Scenario& scenario, OutputMetric metric,
                                        double discount_rate);

/// Spearman rank correlation between each factor's draws and the output,
/// ties resolved by average ranks. Throws std::invalid_argument on
/// mismatched lengths or fewer than 3 samples.
std::vector<CorrelationEntry> rank_correlation(
    const std::vector<std::string>& factor_ids,
    const std::vector<std::vector<double>>& input_samples,
    const std::vector<double>& output_samples);

/// Spearman rho of two equally long series (>= 3 samples).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cba
