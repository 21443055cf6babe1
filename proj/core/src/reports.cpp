#include "cba/reports.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "cba/scenario_io.hpp"

namespace cba {
namespace {

std::string money(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fraction(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open report file for writing: " + path.string());
    out << contents;
    if (!out) throw IoError("cannot write report file: " + path.string());
}

std::string cashflow_csv(const CashFlowSchedule& schedule) {
    std::ostringstream csv;
    csv << "series";
    for (std::size_t t = 0; t < schedule.net.size(); ++t) csv << "," << t;
    csv << "\n";
    const std::pair<const char*, const PeriodSeries*> rows[] = {
        {"Cash Inflow", &schedule.inflow},
        {"Cash Outflow", &schedule.outflow},
        {"Net Cash Flow", &schedule.net},
        {"Cumulative Net Cash Flow", &schedule.cumulative},
    };
    for (const auto& [label, series] : rows) {
        csv << label;
        for (const double v : *series) csv << "," << money(v);
        csv << "\n";
    }
    return csv.str();
}

std::string histogram_csv(const std::vector<HistogramBin>& bins) {
    std::ostringstream csv;
    csv << "bin_low,bin_high,count\n";
    for (const auto& bin : bins) {
        csv << money(bin.low) << "," << money(bin.high) << "," << bin.count << "\n";
    }
    return csv.str();
}

std::string tornado_csv(const std::vector<TornadoEntry>& entries,
                        const std::vector<CorrelationEntry>* correlations) {
    std::map<std::string, double> rho;
    if (correlations) {
        for (const auto& c : *correlations) rho[c.factor_id] = c.spearman_rho;
    }
    std::ostringstream csv;
    csv << "factor_id,low_output,high_output,swing,spearman_rho\n";
    for (const auto& e : entries) {
        csv << e.factor_id << "," << money(e.low_output) << "," << money(e.high_output)
            << "," << money(e.swing) << ",";
        if (const auto it = rho.find(e.factor_id); it != rho.end()) {
            csv << fraction(it->second);
        }
        csv << "\n";
    }
    return csv.str();
}

std::string summary_json(const ReportInputs& in) {
    std::ostringstream js;
    js << "{\n";
    js << "  \"scenario\": \"" << in.scenario_name << "\",\n";

    if (in.metrics) {
        const auto& m = *in.metrics;
        js << "  \"metrics\": {\n";
        js << "    \"npv\": " << money(m.npv) << ",\n";
        js << "    \"total_net_benefit\": " << money(m.total_net_benefit) << ",\n";
        js << "    \"total_costs\": " << money(m.total_costs) << ",\n";
        js << "    \"total_benefits\": " << money(m.total_benefits) << ",\n";
        js << "    \"payback_years\": "
           << (m.payback_years ? fraction(*m.payback_years) : "null") << ",\n";
        js << "    \"bcr\": " << (m.bcr ? fraction(*m.bcr) : "null") << "\n";
        js << "  }" << (in.result ? "," : "") << "\n";
    }

    if (in.result) {
        const auto& r = *in.result;
        const auto& s = r.summary;
        js << "  \"simulation\": {\n";
        js << "    \"output_metric\": \"" << to_string(r.config.output_metric) << "\",\n";
        js << "    \"master_seed\": " << r.config.master_seed << ",\n";
        js << "    \"tolerance\": " << fraction(r.config.tolerance) << ",\n";
        js << "    \"confidence\": " << fraction(r.config.confidence) << ",\n";
        js << "    \"batch_size\": " << r.config.batch_size << ",\n";
        js << "    \"iterations\": " << r.iterations << ",\n";
        js << "    \"converged\": " << (s.converged ? "true" : "false") << ",\n";
        js << "    \"n\": " << s.n << ",\n";
        js << "    \"mean\": " << money(s.mean) << ",\n";
        js << "    \"sd\": " << money(s.sd) << ",\n";
        js << "    \"mode\": " << money(s.mode) << ",\n";
        js << "    \"min\": " << money(s.min) << ",\n";
        js << "    \"max\": " << money(s.max) << ",\n";
        js << "    \"prob_positive\": " << fraction(s.prob_positive) << ",\n";
        js << "    \"percentiles\": {\n";
        js << "      \"p5\": " << money(s.p5) << ",\n";
        js << "      \"p25\": " << money(s.p25) << ",\n";
        js << "      \"p50\": " << money(s.p50) << ",\n";
        js << "      \"p75\": " << money(s.p75) << ",\n";
        js << "      \"p95\": " << money(s.p95) << "\n";
        js << "    },\n";
        js << "    \"histogram_bins\": " << s.histogram.size() << "\n";
        js << "  }\n";
    }
    js << "}\n";
    return js.str();
}

}  // namespace

void write_reports(const ReportInputs& inputs, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    if (inputs.schedule) {
        write_file(out_dir / "cashflow.csv", cashflow_csv(*inputs.schedule));
    }
    if (inputs.metrics || inputs.result) {
        write_file(out_dir / "summary.json", summary_json(inputs));
    }
    if (inputs.result) {
        write_file(out_dir / "histogram.csv", histogram_csv(inputs.result->summary.histogram));
    }
    if (inputs.tornado) {
        write_file(out_dir / "tornado.csv", tornado_csv(*inputs.tornado, inputs.correlations));
    }
}

}  // namespace cba
