#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cba/cashflow.hpp"
#include "cba/sensitivity.hpp"
#include "cba/simulation.hpp"

namespace cba {

/// Report bundle; null members are simply not written.
struct ReportInputs {
    std::string scenario_name;
    const CashFlowSchedule* schedule = nullptr;      // -> cashflow.csv
    const FinancialMetrics* metrics = nullptr;       // -> summary.json metrics block
    const SimulationResult* result = nullptr;        // -> summary.json + histogram.csv
    const std::vector<TornadoEntry>* tornado = nullptr;            // -> tornado.csv
    const std::vector<CorrelationEntry>* correlations = nullptr;   // joined into tornado.csv
};

/// Write cashflow.csv, summary.json, histogram.csv and tornado.csv into
/// out_dir (created if missing). Monetary numbers carry two decimal places
/// and no thousands separators; output bytes are identical across repeated
/// runs with the same inputs. Throws IoError on write failure.
void write_reports(const ReportInputs& inputs, const std::filesystem::path& out_dir);

}  // namespace cba
