#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cba/cashflow.hpp"
#include "cba/factor.hpp"

namespace cba {

enum class OutputMetric { TotalNetBenefit, Npv };

struct SimulationConfig {
    double tolerance = 0.01;    // relative CI half-width at which to stop
    double confidence = 0.95;   // two-sided confidence level
    int batch_size = 100;       // iterations per convergence check
    long min_iterations = 300;
    long max_iterations = 200000;
    std::uint64_t master_seed = 42;
    OutputMetric output_metric = OutputMetric::TotalNetBenefit;
    bool retain_input_samples = false;

    bool operator==(const SimulationConfig&) const = default;
};

/// Config-invariant violations (empty = valid).
std::vector<std::string> validate_config(const SimulationConfig& config);

/// Streaming mean/variance accumulator (Welford).
struct RunningStats {
    long n = 0;
    double mean = 0.0;
    double m2 = 0.0;  // sum of squared deviations
    double min = 0.0;
    double max = 0.0;

    void add(double x);
    /// Merge another accumulator; merging in a fixed order is deterministic.
    void merge(const RunningStats& other);
    double variance() const;  // n-1 denominator
    double sd() const;
};

struct HistogramBin {
    double low = 0.0;
    double high = 0.0;
    long count = 0;
};

struct SummaryStats {
    long n = 0;
    double mean = 0.0;
    double sd = 0.0;    // n-1 denominator
    double mode = 0.0;  // midpoint of the fullest histogram bin
    double min = 0.0;
    double max = 0.0;
    double p5 = 0.0, p25 = 0.0, p50 = 0.0, p75 = 0.0, p95 = 0.0;
    std::vector<HistogramBin> histogram;
    double prob_positive = 0.0;  // fraction of samples > 0
    bool converged = false;
};

struct SimulationResult {
    SummaryStats summary;
    SimulationConfig config;  // echo
    long iterations = 0;      // == summary.n
    /// Populated when config.retain_input_samples: one row per factor
    /// (scenario order), one column per iteration.
    std::vector<std::string> factor_ids;
    std::vector<std::vector<double>> input_samples;
    std::vector<double> output_samples;
};

struct ExecutionOptions {
    int workers = 1;  // result is identical for any worker count
};

/// Converged iff z * sd / sqrt(n) <= tolerance * |mean|, with z the
/// two-sided normal quantile for the configured confidence. A zero mean
/// with positive sd never converges.
bool check_convergence(const RunningStats& stats, const SimulationConfig& config);

/// Uniform-width bins spanning [min, max], bin count by the
/// Freedman-Diaconis rule (50 bins when the IQR is zero). Counts sum to n.
std::vector<HistogramBin> histogram(const std::vector<double>& samples);

/// Sample statistics: mean, sd (n-1), percentiles by linear interpolation
/// between order statistics, mode from the histogram. converged is left false.
SummaryStats summarize(const std::vector<double>& samples);

/// Monte Carlo run: iteration i draws every factor base from
/// make_stream(master_seed, i), builds a cash flow and evaluates the output
/// metric. Stops at the first batch boundary >= min_iterations that passes
/// check_convergence, else at max_iterations with converged = false.
/// Bit-identical output for a fixed (scenario, config) at any worker count.
SimulationResult run_simulation(const Scenario& scenario, const SimulationConfig& config,
                                const ExecutionOptions& options = {});

const char* to_string(OutputMetric m);

}  // namespace cba
