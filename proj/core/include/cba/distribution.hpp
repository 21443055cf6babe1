#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cba/rng.hpp"

namespace cba {

/// Authoring provenance of a spec fitted from a (min, max) range.
/// Kept on the spec so serialization can reproduce the original text
/// exactly and so moments of fitted specs are exact in the range rule.
struct RangeFit {
    double min = 0.0;
    double max = 0.0;
    bool operator==(const RangeFit&) const = default;
};

struct PointSpec {
    double value = 0.0;
    bool operator==(const PointSpec&) const = default;
};

struct GammaSpec {
    double shape = 1.0;  // alpha, dimensionless
    double scale = 1.0;  // theta, currency units
    std::optional<RangeFit> origin;
    bool operator==(const GammaSpec&) const = default;
};

struct NormalSpec {
    double mean = 0.0;
    double sd = 1.0;
    std::optional<RangeFit> origin;
    bool operator==(const NormalSpec&) const = default;
};

struct UniformSpec {
    double low = 0.0;
    double high = 1.0;
    bool operator==(const UniformSpec&) const = default;
};

struct TriangularSpec {
    double low = 0.0;
    double mode = 0.5;
    double high = 1.0;
    bool operator==(const TriangularSpec&) const = default;
};

using DistributionSpec =
    std::variant<PointSpec, GammaSpec, NormalSpec, UniformSpec, TriangularSpec>;

enum class DistributionFamily { Point, Gamma, Normal, Uniform, Triangular };

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Fit a distribution to an expert (min, max) range with the range rule:
/// mean = (min + max) / 2, sd = (max - min) / 6. Gamma is moment-matched
/// (shape = mean^2/sd^2, scale = sd^2/mean), Normal takes (mean, sd)
/// directly, Uniform takes the bounds exactly, Triangular puts the mode at
/// the midpoint. Throws std::invalid_argument when min >= max and
/// std::domain_error for a Gamma fit with negative min.
DistributionSpec fit_from_range(DistributionFamily family, double min, double max);

/// Closed-form mean and variance.
Moments analytic_moments(const DistributionSpec& spec);

/// Analytic mean; the base value used by deterministic expected-value runs.
double expected_value(const DistributionSpec& spec);

/// Inverse CDF at p in [0, 1) ((0, 1) for Normal).
double quantile(const DistributionSpec& spec, double p);

/// One monetary draw. Gamma uses Marsaglia-Tsang (with the boost transform
/// for shape < 1), Normal uses Box-Muller. Negative draws are rejected and
/// resampled, so monetary values are non-negative. Advances the stream.
double sample(const DistributionSpec& spec, RngStream& stream);

/// Parameter-constraint violations (empty = valid spec).
std::vector<std::string> spec_violations(const DistributionSpec& spec);

DistributionFamily family_of(const DistributionSpec& spec);

}  // namespace cba
