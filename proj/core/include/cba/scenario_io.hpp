#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cba/factor.hpp"
#include "cba/simulation.hpp"

namespace cba {

/// File could not be read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed value expression or scenario document.
/// position is a 1-based offset into the offending text (0 when not
/// applicable, e.g. JSON schema errors).
struct ParseError : std::runtime_error {
    ParseError(const std::string& message, std::size_t position_ = 0)
        : std::runtime_error(message), position(position_) {}
    std::size_t position;
};

/// Document parsed but the scenario or config breaks invariants.
struct ValidationError : std::runtime_error {
    ValidationError(const std::string& message, std::vector<Violation> violations_)
        : std::runtime_error(message), violations(std::move(violations_)) {}
    std::vector<Violation> violations;
};

/// Parse a value expression:
///   point(<n>) | gamma(min=<n>,max=<n>) | normal(min=<n>,max=<n>)
///   | normal(mean=<n>,sd=<n>) | uniform(min=<n>,max=<n>)
///   | triangular(min=<n>,mode=<n>,max=<n>)
/// Whitespace-insensitive; numbers are plain decimals without thousands
/// separators. Range forms route through fit_from_range. The positional
/// gamma(a,b) form is rejected: it is ambiguous between a (min,max) range
/// and the (shape,scale) parameterization.
DistributionSpec parse_value_expr(std::string_view text);

/// Canonical text for a spec; parse(print(spec)) == spec exactly.
std::string print_value_expr(const DistributionSpec& spec);

struct ScenarioDocument {
    Scenario scenario;
    SimulationConfig config;
    bool operator==(const ScenarioDocument&) const = default;
};

/// Load and validate a scenario document. Applies defaults: horizon 5,
/// discount rate 0.05, growth 0.05 for ongoing factors (0 for initial),
/// tolerance 0.01, confidence 0.95. Throws IoError, ParseError, or
/// ValidationError (listing offending factor ids).
ScenarioDocument load_scenario(const std::filesystem::path& path);

/// Parse a document from text (same pipeline as load_scenario).
ScenarioDocument parse_scenario_text(const std::string& text);

/// Serialize; load of the printed text reproduces an identical document.
std::string print_scenario(const ScenarioDocument& document);

void save_scenario(const ScenarioDocument& document, const std::filesystem::path& path);

}  // namespace cba
