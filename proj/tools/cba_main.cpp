#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cba/reports.hpp"
#include "cba/scenario_io.hpp"
#include "cba/sensitivity.hpp"
#include "cba/simulation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::optional<std::string> env_value(const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
}

std::string fmt_money(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void print_metrics(const cba::FinancialMetrics& m) {
    std::cout << "Total benefits:    " << fmt_money(m.total_benefits) << "\n";
    std::cout << "Total costs:       " << fmt_money(m.total_costs) << "\n";
    std::cout << "Total net benefit: " << fmt_money(m.total_net_benefit) << "\n";
    std::cout << "NPV:               " << fmt_money(m.npv) << "\n";
    std::cout << "Benefit-cost ratio: ";
    if (m.bcr) {
        std::cout << *m.bcr << "\n";
    } else {
        std::cout << "n/a (no costs)\n";
    }
    std::cout << "Payback (years):   ";
    if (m.payback_years) {
        std::cout << *m.payback_years << "\n";
    } else {
        std::cout << "never\n";
    }
}

void print_schedule(const cba::CashFlowSchedule& schedule) {
    auto row = [](const char* label, const cba::PeriodSeries& series) {
        std::cout << label;
        for (const double v : series) std::cout << "\t" << fmt_money(v);
        std::cout << "\n";
    };
    std::cout << "period";
    for (std::size_t t = 0; t < schedule.net.size(); ++t) std::cout << "\t" << t;
    std::cout << "\n";
    row("inflow", schedule.inflow);
    row("outflow", schedule.outflow);
    row("net", schedule.net);
    row("cumulative", schedule.cumulative);
}

struct CommonArgs {
    std::string scenario_path;
    std::string out_dir = "out";
    bool out_given = false;
};

std::string resolve_out_dir(const CommonArgs& args) {
    if (args.out_given) return args.out_dir;
    if (const auto env = env_value("CBA_OUT")) return *env;
    return args.out_dir;
}

int run_command(const CommonArgs& args, std::optional<std::uint64_t> seed_flag,
                bool with_sensitivity, int workers) {
    auto doc = cba::load_scenario(args.scenario_path);
    if (seed_flag) {
        doc.config.master_seed = *seed_flag;
    } else if (const auto env = env_value("CBA_SEED")) {
        doc.config.master_seed = std::stoull(*env);
    }
    doc.config.retain_input_samples = with_sensitivity;

    const cba::SimulationResult result =
        cba::run_simulation(doc.scenario, doc.config, {workers});
    const cba::CashFlowSchedule schedule = cba::expected_cashflow(doc.scenario);
    const cba::FinancialMetrics metrics =
        cba::metrics(schedule, doc.scenario.discount_rate);

    cba::ReportInputs reports;
    reports.scenario_name = doc.scenario.name;
    reports.schedule = &schedule;
    reports.metrics = &metrics;
    reports.result = &result;

    std::vector<cba::TornadoEntry> tornado;
    std::vector<cba::CorrelationEntry> correlations;
    if (with_sensitivity) {
        tornado = cba::one_at_a_time(doc.scenario, doc.config.output_metric,
                                     doc.scenario.discount_rate);
        correlations = cba::rank_correlation(result.factor_ids, result.input_samples,
                                             result.output_samples);
        reports.tornado = &tornado;
        reports.correlations = &correlations;
    }
    const std::string out_dir = resolve_out_dir(args);
    cba::write_reports(reports, out_dir);

    const auto& s = result.summary;
    std::cout << "scenario:   " << doc.scenario.name << "\n";
    std::cout << "seed:       " << doc.config.master_seed << "\n";
    std::cout << "iterations: " << result.iterations
              << (s.converged ? " (converged)" : " (NOT converged)") << "\n";
    std::cout << "mean:       " << fmt_money(s.mean) << "\n";
    std::cout << "sd:         " << fmt_money(s.sd) << "\n";
    std::cout << "mode:       " << fmt_money(s.mode) << "\n";
    std::cout << "p5..p95:    " << fmt_money(s.p5) << " .. " << fmt_money(s.p95) << "\n";
    std::cout << "P(>0):      " << s.prob_positive << "\n";
    std::cout << "reports:    " << out_dir << "\n";
    return kExitOk;
}

int cashflow_command(const CommonArgs& args) {
    const auto doc = cba::load_scenario(args.scenario_path);
    const cba::CashFlowSchedule schedule = cba::expected_cashflow(doc.scenario);
    const cba::FinancialMetrics metrics =
        cba::metrics(schedule, doc.scenario.discount_rate);

    print_schedule(schedule);
    std::cout << "\n";
    print_metrics(metrics);

    if (args.out_given || env_value("CBA_OUT")) {
        cba::ReportInputs reports;
        reports.scenario_name = doc.scenario.name;
        reports.schedule = &schedule;
        reports.metrics = &metrics;
        cba::write_reports(reports, resolve_out_dir(args));
    }
    return kExitOk;
}

int validate_command(const CommonArgs& args) {
    try {
        const auto doc = cba::load_scenario(args.scenario_path);
        std::cout << "ok: " << doc.scenario.name << " (" << doc.scenario.factors.size()
                  << " factors, horizon " << doc.scenario.horizon_years << ")\n";
        return kExitOk;
    } catch (const cba::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }
}

int sensitivity_command(const CommonArgs& args, const std::string& metric_name) {
    const auto doc = cba::load_scenario(args.scenario_path);
    const cba::OutputMetric metric = metric_name == "npv"
                                         ? cba::OutputMetric::Npv
                                         : cba::OutputMetric::TotalNetBenefit;
    const auto tornado =
        cba::one_at_a_time(doc.scenario, metric, doc.scenario.discount_rate);

    std::cout << "factor_id\tlow_output\thigh_output\tswing\n";
    for (const auto& e : tornado) {
        std::cout << e.factor_id << "\t" << fmt_money(e.low_output) << "\t"
                  << fmt_money(e.high_output) << "\t" << fmt_money(e.swing) << "\n";
    }

    if (args.out_given || env_value("CBA_OUT")) {
        cba::ReportInputs reports;
        reports.scenario_name = doc.scenario.name;
        reports.tornado = &tornado;
        cba::write_reports(reports, resolve_out_dir(args));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo cost-benefit analysis engine"};
    app.require_subcommand(1);

    CommonArgs run_args;
    std::optional<std::uint64_t> seed_flag;
    bool with_sensitivity = false;
    int workers = 1;
    auto* run = app.add_subcommand("run", "Monte Carlo simulation with reports");
    run->add_option("scenario", run_args.scenario_path, "scenario document")->required();
    run->add_option("--seed", seed_flag, "master seed (overrides document and CBA_SEED)");
    run->add_option("--out", run_args.out_dir, "report directory (or CBA_OUT)")
        ->each([&run_args](const std::string&) { run_args.out_given = true; });
    run->add_flag("--sensitivity", with_sensitivity, "also write tornado.csv");
    run->add_option("--workers", workers, "worker threads (same result for any count)")
        ->check(CLI::PositiveNumber);

    CommonArgs cf_args;
    auto* cashflow = app.add_subcommand("cashflow", "deterministic expected-value tables");
    cashflow->add_option("scenario", cf_args.scenario_path, "scenario document")->required();
    cashflow->add_option("--out", cf_args.out_dir, "also write cashflow.csv + summary.json")
        ->each([&cf_args](const std::string&) { cf_args.out_given = true; });

    CommonArgs val_args;
    auto* validate = app.add_subcommand("validate", "check a scenario document");
    validate->add_option("scenario", val_args.scenario_path, "scenario document")->required();

    CommonArgs sens_args;
    std::string metric_name = "total_net_benefit";
    auto* sensitivity =
        app.add_subcommand("sensitivity", "one-at-a-time tornado analysis");
    sensitivity->add_option("scenario", sens_args.scenario_path, "scenario document")
        ->required();
    sensitivity->add_option("--metric", metric_name, "total_net_benefit or npv")
        ->check(CLI::IsMember({"total_net_benefit", "npv"}));
    sensitivity->add_option("--out", sens_args.out_dir, "also write tornado.csv")
        ->each([&sens_args](const std::string&) { sens_args.out_given = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return run_command(run_args, seed_flag, with_sensitivity, workers);
        }
        if (cashflow->parsed()) {
            return cashflow_command(cf_args);
        }
        if (validate->parsed()) {
            return validate_command(val_args);
        }
        return sensitivity_command(sens_args, metric_name);
    } catch (const cba::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const cba::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const cba::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
