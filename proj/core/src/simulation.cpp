#include "cba/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cba/stats_math.hpp"

namespace cba {

std::vector<std::string> validate_config(const SimulationConfig& c) {
    std::vector<std::string> out;
    if (!(c.tolerance > 0.0 && c.tolerance < 1.0)) {
        out.emplace_back("tolerance must be in (0, 1)");
    }
    if (!(c.confidence > 0.5 && c.confidence < 1.0)) {
        out.emplace_back("confidence must be in (0.5, 1)");
    }
    if (c.batch_size < 1) {
        out.emplace_back("batch size must be >= 1");
    }
    if (c.min_iterations < 1) {
        out.emplace_back("min iterations must be >= 1");
    }
    if (c.min_iterations > c.max_iterations) {
        out.emplace_back("min iterations must be <= max iterations");
    }
    return out;
}

void RunningStats::add(double x) {
    if (n == 0) {
        min = max = x;
    } else {
        min = std::min(min, x);
        max = std::max(max, x);
    }
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
}

void RunningStats::merge(const RunningStats& other) {
    if (other.n == 0) return;
    if (n == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(other.n);
    const double delta = other.mean - mean;
    const double total = na + nb;
    mean += delta * nb / total;
    m2 += other.m2 + delta * delta * na * nb / total;
    min = std::min(min, other.min);
    max = std::max(max, other.max);
    n += other.n;
}

double RunningStats::variance() const {
    return n >= 2 ? m2 / static_cast<double>(n - 1) : 0.0;
}

double RunningStats::sd() const {
    return std::sqrt(variance());
}

bool check_convergence(const RunningStats& stats, const SimulationConfig& config) {
    if (stats.n < 2) return false;
    const double z = stats::normal_quantile(0.5 + config.confidence / 2.0);
    const double half_width = z * stats.sd() / std::sqrt(static_cast<double>(stats.n));
    return half_width <= config.tolerance * std::abs(stats.mean);
}

std::vector<HistogramBin> histogram(const std::vector<double>& samples) {
    if (samples.empty()) {
        throw std::invalid_argument("histogram: need at least one sample");
    }
    std::vector<double> sorted(samples);
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front();
    const double hi = sorted.back();

    if (lo == hi) {
        // Degenerate sample: one bin centered on the value.
        return {HistogramBin{lo - 0.5, lo + 0.5, static_cast<long>(samples.size())}};
    }

    const auto n = static_cast<double>(sorted.size());
    auto order_stat = [&](double p) {
        const double h = (n - 1.0) * p;
        const auto k = static_cast<std::size_t>(h);
        const double frac = h - static_cast<double>(k);
        return k + 1 < sorted.size() ? sorted[k] + frac * (sorted[k + 1] - sorted[k])
                                     : sorted[k];
    };
    const double iqr = order_stat(0.75) - order_stat(0.25);

    std::size_t bin_count = 50;  // fallback when the IQR collapses
    if (iqr > 0.0) {
        const double width = 2.0 * iqr / std::cbrt(n);
        bin_count = static_cast<std::size_t>(std::ceil((hi - lo) / width));
        bin_count = std::clamp<std::size_t>(bin_count, 1, 10000);
    }

    std::vector<HistogramBin> bins(bin_count);
    const double span = hi - lo;
    for (std::size_t b = 0; b < bin_count; ++b) {
        bins[b].low = lo + span * static_cast<double>(b) / static_cast<double>(bin_count);
        bins[b].high = lo + span * static_cast<double>(b + 1) / static_cast<double>(bin_count);
    }
    bins.front().low = lo;
    bins.back().high = hi;
    for (const double x : sorted) {
        auto b = static_cast<std::size_t>((x - lo) / span * static_cast<double>(bin_count));
        b = std::min(b, bin_count - 1);
        ++bins[b].count;
    }
    return bins;
}

SummaryStats summarize(const std::vector<double>& samples) {
    if (samples.empty()) {
        throw std::invalid_argument("summarize: need at least one sample");
    }
    SummaryStats s;
    s.n = static_cast<long>(samples.size());

    // Neumaier-compensated mean.
    double sum = 0.0, comp = 0.0;
    long positive = 0;
    for (const double x : samples) {
        const double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
        if (x > 0.0) ++positive;
    }
    s.mean = (sum + comp) / static_cast<double>(s.n);
    s.prob_positive = static_cast<double>(positive) / static_cast<double>(s.n);

    double m2 = 0.0;
    for (const double x : samples) {
        const double d = x - s.mean;
        m2 += d * d;
    }
    s.sd = s.n >= 2 ? std::sqrt(m2 / static_cast<double>(s.n - 1)) : 0.0;

    std::vector<double> sorted(samples);
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    auto percentile = [&](double p) {
        const double h = (static_cast<double>(s.n) - 1.0) * p;
        const auto k = static_cast<std::size_t>(h);
        const double frac = h - static_cast<double>(k);
        return k + 1 < sorted.size() ? sorted[k] + frac * (sorted[k + 1] - sorted[k])
                                     : sorted[k];
    };
    s.p5 = percentile(0.05);
    s.p25 = percentile(0.25);
    s.p50 = percentile(0.50);
    s.p75 = percentile(0.75);
    s.p95 = percentile(0.95);

    s.histogram = histogram(samples);
    const auto fullest = std::max_element(
        s.histogram.begin(), s.histogram.end(),
        [](const HistogramBin& a, const HistogramBin& b) { return a.count < b.count; });
    s.mode = (fullest->low + fullest->high) / 2.0;
    return s;
}

namespace {

double evaluate_iteration(const Scenario& scenario, const SimulationConfig& config,
                          long iteration, std::vector<double>* input_row) {
    RngStream stream = make_stream(config.master_seed, static_cast<std::uint64_t>(iteration));
    std::vector<double> bases(scenario.factors.size());
    for (std::size_t f = 0; f < scenario.factors.size(); ++f) {
        bases[f] = sample(scenario.factors[f].value, stream);
    }
    if (input_row) *input_row = bases;

    std::size_t next = 0;
    const CashFlowSchedule schedule = build_cashflow(
        scenario, [&](const Factor&) { return bases[next++]; });
    return config.output_metric == OutputMetric::TotalNetBenefit
               ? schedule.cumulative.back()
               : npv(schedule, scenario.discount_rate);
}

}  // namespace

SimulationResult run_simulation(const Scenario& scenario, const SimulationConfig& config,
                                const ExecutionOptions& options) {
    if (const auto problems = validate_config(config); !problems.empty()) {
        throw std::invalid_argument("run_simulation: invalid config: " + problems.front());
    }
    const int workers = std::max(1, options.workers);
    const std::size_t factor_count = scenario.factors.size();

    std::vector<double> outputs;
    outputs.reserve(static_cast<std::size_t>(std::min<long>(config.max_iterations, 1 << 20)));
    std::vector<std::vector<double>> inputs;
    if (config.retain_input_samples) {
        inputs.assign(factor_count, {});
    }

    RunningStats stats;
    bool converged = false;
    long n = 0;
    while (n < config.max_iterations && !converged) {
        const long batch_end =
            std::min<long>(n + config.batch_size, config.max_iterations);
        const long batch_size = batch_end - n;

        std::vector<double> batch_outputs(static_cast<std::size_t>(batch_size));
        std::vector<std::vector<double>> batch_inputs(
            config.retain_input_samples ? static_cast<std::size_t>(batch_size) : 0);

        // Workers evaluate disjoint iteration slots; results land in
        // per-iteration positions, so the fold below is order-fixed and the
        // outcome does not depend on the worker count.
        auto evaluate_range = [&](long lo, long hi) {
            for (long i = lo; i < hi; ++i) {
                const auto slot = static_cast<std::size_t>(i - n);
                std::vector<double>* row =
                    config.retain_input_samples ? &batch_inputs[slot] : nullptr;
                batch_outputs[slot] = evaluate_iteration(scenario, config, i, row);
            }
        };
        if (workers == 1 || batch_size < 2) {
            evaluate_range(n, batch_end);
        } else {
            std::vector<std::thread> pool;
            const long chunk = (batch_size + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                const long lo = n + static_cast<long>(w) * chunk;
                const long hi = std::min(batch_end, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back(evaluate_range, lo, hi);
            }
            for (auto& t : pool) t.join();
        }

        for (const double x : batch_outputs) stats.add(x);
        outputs.insert(outputs.end(), batch_outputs.begin(), batch_outputs.end());
        if (config.retain_input_samples) {
            for (std::size_t f = 0; f < factor_count; ++f) {
                for (const auto& row : batch_inputs) inputs[f].push_back(row[f]);
            }
        }

        n = batch_end;
        if (n >= config.min_iterations) {
            converged = check_convergence(stats, config);
        }
    }

    SimulationResult result;
    result.summary = summarize(outputs);
    result.summary.converged = converged;
    result.config = config;
    result.iterations = n;
    if (config.retain_input_samples) {
        result.factor_ids.reserve(factor_count);
        for (const auto& f : scenario.factors) result.factor_ids.push_back(f.id);
        result.input_samples = std::move(inputs);
        result.output_samples = std::move(outputs);
    }
    return result;
}

const char* to_string(OutputMetric m) {
    return m == OutputMetric::TotalNetBenefit ? "total_net_benefit" : "npv";
}

}  // namespace cba
