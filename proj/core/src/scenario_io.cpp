#include "cba/scenario_io.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cba {
namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Value-expression grammar
// ---------------------------------------------------------------------------

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    DistributionSpec parse() {
        skip_ws();
        const std::size_t name_pos = pos_;
        const std::string name = read_ident("distribution name");
        skip_ws();
        expect('(');

        DistributionSpec spec = parse_body(name, name_pos);
        skip_ws();
        expect(')');
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input", pos_);
        }
        return spec;
    }

private:
    DistributionSpec parse_body(const std::string& name, std::size_t name_pos) {
        if (name == "point") {
            const double v = read_number("value");
            return PointSpec{v};
        }
        if (name == "gamma") {
            skip_ws();
            if (pos_ < text_.size() && !is_ident_start(text_[pos_])) {
                fail("gamma requires named arguments, e.g. gamma(min=10000,max=100000); "
                     "the positional form is ambiguous between a (min,max) range and the "
                     "(shape,scale) parameterization",
                     pos_);
            }
            const auto [min, max] = read_named_pair("min", "max");
            return wrap_fit(DistributionFamily::Gamma, min, max, name_pos);
        }
        if (name == "normal") {
            skip_ws();
            const std::size_t first_pos = pos_;
            const std::string first = read_ident("argument name");
            skip_ws();
            expect('=');
            const double a = read_number("argument value");
            skip_ws();
            expect(',');
            skip_ws();
            const std::size_t second_pos = pos_;
            const std::string second = read_ident("argument name");
            skip_ws();
            expect('=');
            const double b = read_number("argument value");
            if (first == "min" && second == "max") {
                return wrap_fit(DistributionFamily::Normal, a, b, name_pos);
            }
            if (first == "mean" && second == "sd") {
                if (!(b > 0.0)) fail("normal sd must be > 0", name_pos);
                return NormalSpec{a, b, std::nullopt};
            }
            fail("normal takes (min=,max=) or (mean=,sd=)",
                 first == "min" || first == "mean" ? second_pos : first_pos);
        }
        if (name == "uniform") {
            const auto [min, max] = read_named_pair("min", "max");
            return wrap_fit(DistributionFamily::Uniform, min, max, name_pos);
        }
        if (name == "triangular") {
            const double min = read_named("min");
            skip_ws();
            expect(',');
            const double mode = read_named("mode");
            skip_ws();
            expect(',');
            const double max = read_named("max");
            if (!(min < max)) fail("triangular requires min < max", name_pos);
            if (!(min <= mode && mode <= max)) {
                fail("triangular requires min <= mode <= max", name_pos);
            }
            return TriangularSpec{min, mode, max};
        }
        fail("unknown distribution \"" + name + "\"", name_pos);
    }

    DistributionSpec wrap_fit(DistributionFamily family, double min, double max,
                              std::size_t pos) {
        try {
            return fit_from_range(family, min, max);
        } catch (const std::exception& e) {
            fail(e.what(), pos);
        }
    }

    std::pair<double, double> read_named_pair(const char* a, const char* b) {
        const double first = read_named(a);
        skip_ws();
        expect(',');
        const double second = read_named(b);
        return {first, second};
    }

    double read_named(const char* expected_name) {
        skip_ws();
        const std::size_t name_pos = pos_;
        const std::string name = read_ident("argument name");
        if (name != expected_name) {
            fail(std::string("expected argument \"") + expected_name + "\", got \"" + name +
                     "\"",
                 name_pos);
        }
        skip_ws();
        expect('=');
        return read_number("argument value");
    }

    static bool is_ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
    }

    std::string read_ident(const char* what) {
        skip_ws();
        if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) {
            fail(std::string("expected ") + what, pos_);
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (is_ident_start(text_[pos_]) ||
                std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0)) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    double read_number(const char* what) {
        skip_ws();
        if (pos_ >= text_.size()) fail(std::string("expected ") + what, pos_);
        double value = 0.0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr == begin) {
            fail(std::string("expected ") + what, pos_);
        }
        pos_ += static_cast<std::size_t>(ptr - begin);
        return value;
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c) {
            fail(std::string("expected '") + c + "'", pos_);
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string& message, std::size_t pos) const {
        const std::size_t column = pos + 1;  // 1-based for humans
        throw ParseError(message + " at offset " + std::to_string(column), column);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string format_number(double v) {
    // Shortest fixed-notation text that round-trips to the same double.
    std::array<char, 64> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
    if (ec != std::errc{}) {
        std::ostringstream fallback;
        fallback.precision(17);
        fallback << v;
        return fallback.str();
    }
    return std::string(buf.data(), ptr);
}

// ---------------------------------------------------------------------------
// JSON document <-> domain types
// ---------------------------------------------------------------------------

[[noreturn]] void schema_error(const std::string& message) {
    throw ParseError("scenario document: " + message);
}

template <typename T>
T get_field(const ordered_json& obj, const char* key, const char* context) {
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        schema_error(std::string(context) + ": missing or mistyped field \"" + key + "\"");
    }
}

template <typename T>
T get_or(const ordered_json& obj, const char* key, T fallback, const char* context) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        schema_error(std::string(context) + ": mistyped field \"" + key + "\"");
    }
}

FactorKind parse_kind(const std::string& s, const std::string& context) {
    if (s == "cost") return FactorKind::Cost;
    if (s == "benefit") return FactorKind::Benefit;
    schema_error(context + ": kind must be \"cost\" or \"benefit\"");
}

FactorCategory parse_category(const std::string& s, const std::string& context) {
    if (s == "company") return CostCategory::Company;
    if (s == "technology") return CostCategory::Technology;
    if (s == "employee") return CostCategory::Employee;
    if (s == "design") return BenefitCategory::Design;
    if (s == "construction") return BenefitCategory::Construction;
    schema_error(context + ": unknown category \"" + s + "\"");
}

Timing parse_timing(const std::string& s, const std::string& context) {
    if (s == "initial") return Timing::Initial;
    if (s == "ongoing") return Timing::Ongoing;
    schema_error(context + ": timing must be \"initial\" or \"ongoing\"");
}

Tangibility parse_tangibility(const std::string& s, const std::string& context) {
    if (s == "tangible") return Tangibility::Tangible;
    if (s == "intangible") return Tangibility::Intangible;
    schema_error(context + ": tangibility must be \"tangible\" or \"intangible\"");
}

OutputMetric parse_metric(const std::string& s) {
    if (s == "total_net_benefit") return OutputMetric::TotalNetBenefit;
    if (s == "npv") return OutputMetric::Npv;
    schema_error("output_metric must be \"total_net_benefit\" or \"npv\"");
}

Factor parse_factor(const ordered_json& node) {
    if (!node.is_object()) schema_error("factor entries must be objects");
    Factor f;
    f.id = get_field<std::string>(node, "id", "factor");
    const std::string context = "factor \"" + f.id + "\"";
    f.name = get_or<std::string>(node, "name", f.id, context.c_str());
    f.kind = parse_kind(get_field<std::string>(node, "kind", context.c_str()), context);
    f.category =
        parse_category(get_field<std::string>(node, "category", context.c_str()), context);
    f.timing = parse_timing(get_field<std::string>(node, "timing", context.c_str()), context);
    if (node.contains("tangibility")) {
        f.tangibility = parse_tangibility(
            get_field<std::string>(node, "tangibility", context.c_str()), context);
    }
    f.note = get_or<std::string>(node, "note", "", context.c_str());

    const bool has_value = node.contains("value");
    const bool has_values = node.contains("values");
    if (has_value && has_values) {
        schema_error(context + ": give either \"value\" or a realized \"values\" list, not both");
    }
    if (has_values) {
        auto schedule = get_field<std::vector<double>>(node, "values", context.c_str());
        if (schedule.empty()) schema_error(context + ": \"values\" must not be empty");
        f.value = PointSpec{schedule.front()};
        f.realized_schedule = std::move(schedule);
    } else if (has_value) {
        const auto text = get_field<std::string>(node, "value", context.c_str());
        try {
            f.value = parse_value_expr(text);
        } catch (const ParseError& e) {
            throw ParseError(context + ": value \"" + text + "\": " + e.what(), e.position);
        }
    } else {
        schema_error(context + ": missing \"value\"");
    }

    const double default_growth = f.timing == Timing::Ongoing ? 0.05 : 0.0;
    f.growth.annual_rate = get_or<double>(node, "growth", default_growth, context.c_str());
    return f;
}

ScenarioDocument parse_document(const ordered_json& root) {
    if (!root.is_object()) schema_error("top level must be an object");
    ScenarioDocument doc;
    auto& s = doc.scenario;
    s.name = get_or<std::string>(root, "name", "unnamed scenario", "scenario");
    s.horizon_years = get_or<int>(root, "horizon_years", 5, "scenario");
    s.discount_rate = get_or<double>(root, "discount_rate", 0.05, "scenario");
    s.currency = get_or<std::string>(root, "currency", "USD", "scenario");
    if (root.contains("metadata")) {
        const auto& meta = root.at("metadata");
        if (!meta.is_object()) schema_error("metadata must be an object of strings");
        for (const auto& [key, value] : meta.items()) {
            if (!value.is_string()) schema_error("metadata must be an object of strings");
            s.metadata[key] = value.get<std::string>();
        }
    }

    if (!root.contains("factors") || !root.at("factors").is_array()) {
        schema_error("missing \"factors\" array");
    }
    for (const auto& node : root.at("factors")) {
        s.factors.push_back(parse_factor(node));
    }

    auto& c = doc.config;
    if (root.contains("simulation")) {
        const auto& sim = root.at("simulation");
        if (!sim.is_object()) schema_error("\"simulation\" must be an object");
        c.tolerance = get_or<double>(sim, "tolerance", c.tolerance, "simulation");
        c.confidence = get_or<double>(sim, "confidence", c.confidence, "simulation");
        c.batch_size = get_or<int>(sim, "batch_size", c.batch_size, "simulation");
        c.min_iterations = get_or<long>(sim, "min_iterations", c.min_iterations, "simulation");
        c.max_iterations = get_or<long>(sim, "max_iterations", c.max_iterations, "simulation");
        c.master_seed =
            get_or<std::uint64_t>(sim, "master_seed", c.master_seed, "simulation");
        if (sim.contains("output_metric")) {
            c.output_metric =
                parse_metric(get_field<std::string>(sim, "output_metric", "simulation"));
        }
    }
    return doc;
}

void check_document(const ScenarioDocument& doc) {
    std::vector<Violation> violations = validate_scenario(doc.scenario);
    for (const auto& msg : validate_config(doc.config)) {
        violations.push_back({"", "simulation: " + msg});
    }
    if (!violations.empty()) {
        std::ostringstream text;
        text << "scenario \"" << doc.scenario.name << "\" failed validation:";
        for (const auto& v : violations) {
            text << "\n  - ";
            if (!v.factor_id.empty()) text << "[" << v.factor_id << "] ";
            text << v.message;
        }
        throw ValidationError(text.str(), std::move(violations));
    }
}

ordered_json factor_to_json(const Factor& f) {
    ordered_json node;
    node["id"] = f.id;
    node["name"] = f.name;
    node["kind"] = to_string(f.kind);
    std::visit([&](auto category) { node["category"] = to_string(category); }, f.category);
    node["timing"] = to_string(f.timing);
    if (f.tangibility) node["tangibility"] = to_string(*f.tangibility);
    if (f.realized_schedule) {
        node["values"] = *f.realized_schedule;
    } else {
        node["value"] = print_value_expr(f.value);
    }
    node["growth"] = f.growth.annual_rate;
    if (!f.note.empty()) node["note"] = f.note;
    return node;
}

}  // namespace

DistributionSpec parse_value_expr(std::string_view text) {
    return ExprParser(text).parse();
}

std::string print_value_expr(const DistributionSpec& spec) {
    struct Visitor {
        std::string operator()(const PointSpec& p) const {
            return "point(" + format_number(p.value) + ")";
        }
        std::string operator()(const GammaSpec& g) const {
            const RangeFit range = g.origin ? *g.origin : invert_range_rule(
                g.shape * g.scale, std::sqrt(g.shape) * g.scale);
            return "gamma(min=" + format_number(range.min) +
                   ",max=" + format_number(range.max) + ")";
        }
        std::string operator()(const NormalSpec& n) const {
            if (n.origin) {
                return "normal(min=" + format_number(n.origin->min) +
                       ",max=" + format_number(n.origin->max) + ")";
            }
            return "normal(mean=" + format_number(n.mean) + ",sd=" + format_number(n.sd) + ")";
        }
        std::string operator()(const UniformSpec& u) const {
            return "uniform(min=" + format_number(u.low) + ",max=" + format_number(u.high) +
                   ")";
        }
        std::string operator()(const TriangularSpec& t) const {
            return "triangular(min=" + format_number(t.low) +
                   ",mode=" + format_number(t.mode) + ",max=" + format_number(t.high) + ")";
        }
        static RangeFit invert_range_rule(double mean, double sd) {
            return RangeFit{mean - 3.0 * sd, mean + 3.0 * sd};
        }
    };
    return std::visit(Visitor{}, spec);
}

ScenarioDocument parse_scenario_text(const std::string& text) {
    ordered_json root;
    try {
        root = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scenario document: ") + e.what(),
                         static_cast<std::size_t>(e.byte));
    }
    ScenarioDocument doc = parse_document(root);
    check_document(doc);
    return doc;
}

ScenarioDocument load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open scenario file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read scenario file: " + path.string());
    }
    return parse_scenario_text(buffer.str());
}

std::string print_scenario(const ScenarioDocument& doc) {
    const auto& s = doc.scenario;
    ordered_json root;
    root["name"] = s.name;
    root["horizon_years"] = s.horizon_years;
    root["discount_rate"] = s.discount_rate;
    root["currency"] = s.currency;
    if (!s.metadata.empty()) {
        ordered_json meta;
        for (const auto& [key, value] : s.metadata) meta[key] = value;
        root["metadata"] = meta;
    }
    root["factors"] = ordered_json::array();
    for (const auto& f : s.factors) {
        root["factors"].push_back(factor_to_json(f));
    }
    const auto& c = doc.config;
    ordered_json sim;
    sim["tolerance"] = c.tolerance;
    sim["confidence"] = c.confidence;
    sim["batch_size"] = c.batch_size;
    sim["min_iterations"] = c.min_iterations;
    sim["max_iterations"] = c.max_iterations;
    sim["master_seed"] = c.master_seed;
    sim["output_metric"] = to_string(c.output_metric);
    root["simulation"] = sim;
    return root.dump(2) + "\n";
}

void save_scenario(const ScenarioDocument& doc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open file for writing: " + path.string());
    }
    out << print_scenario(doc);
    if (!out) {
        throw IoError("cannot write file: " + path.string());
    }
}

}  // namespace cba
