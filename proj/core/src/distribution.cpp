#include "cba/distribution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cba/stats_math.hpp"

namespace cba {
namespace {

double standard_normal(RngStream& stream) {
    // Box-Muller, cosine branch.
    const double u1 = stream.next_uniform_pos();
    const double u2 = stream.next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Marsaglia-Tsang squeeze method for shape >= 1.
double gamma_variate_shape_ge1(double shape, RngStream& stream) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = standard_normal(stream);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = stream.next_uniform_pos();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double gamma_variate(double shape, double scale, RngStream& stream) {
    if (shape >= 1.0) return scale * gamma_variate_shape_ge1(shape, stream);
    // Boost transform: Gamma(a) = Gamma(a + 1) * U^(1/a).
    const double g = gamma_variate_shape_ge1(shape + 1.0, stream);
    const double u = stream.next_uniform_pos();
    return scale * g * std::pow(u, 1.0 / shape);
}

double triangular_quantile(const TriangularSpec& t, double p) {
    const double span = t.high - t.low;
    const double fc = (t.mode - t.low) / span;
    if (p < fc) return t.low + std::sqrt(p * span * (t.mode - t.low));
    return t.high - std::sqrt((1.0 - p) * span * (t.high - t.mode));
}

double draw_once(const DistributionSpec& spec, RngStream& stream) {
    struct Visitor {
        RngStream& s;
        double operator()(const PointSpec& p) const { return p.value; }
        double operator()(const GammaSpec& g) const {
            return gamma_variate(g.shape, g.scale, s);
        }
        double operator()(const NormalSpec& n) const {
            return n.mean + n.sd * standard_normal(s);
        }
        double operator()(const UniformSpec& u) const {
            return u.low + (u.high - u.low) * s.next_uniform();
        }
        double operator()(const TriangularSpec& t) const {
            return triangular_quantile(t, s.next_uniform());
        }
    };
    return std::visit(Visitor{stream}, spec);
}

}  // namespace

DistributionSpec fit_from_range(DistributionFamily family, double min, double max) {
    if (!(min < max)) {
        throw std::invalid_argument("fit_from_range: min must be < max");
    }
    const double mean = (min + max) / 2.0;
    const double sd = (max - min) / 6.0;
    switch (family) {
        case DistributionFamily::Gamma: {
            if (min < 0.0) {
                throw std::domain_error("fit_from_range: Gamma requires min >= 0");
            }
            return GammaSpec{mean * mean / (sd * sd), sd * sd / mean, RangeFit{min, max}};
        }
        case DistributionFamily::Normal:
            return NormalSpec{mean, sd, RangeFit{min, max}};
        case DistributionFamily::Uniform:
            return UniformSpec{min, max};
        case DistributionFamily::Triangular:
            return TriangularSpec{min, mean, max};
        case DistributionFamily::Point:
            break;
    }
    throw std::invalid_argument("fit_from_range: family has no range form");
}

Moments analytic_moments(const DistributionSpec& spec) {
    struct Visitor {
        Moments operator()(const PointSpec& p) const { return {p.value, 0.0}; }
        Moments operator()(const GammaSpec& g) const {
            if (g.origin) {
                // Exact in the range rule that produced the fit.
                const double mean = (g.origin->min + g.origin->max) / 2.0;
                const double sd = (g.origin->max - g.origin->min) / 6.0;
                return {mean, sd * sd};
            }
            return {g.shape * g.scale, g.shape * g.scale * g.scale};
        }
        Moments operator()(const NormalSpec& n) const { return {n.mean, n.sd * n.sd}; }
        Moments operator()(const UniformSpec& u) const {
            const double d = u.high - u.low;
            return {(u.low + u.high) / 2.0, d * d / 12.0};
        }
        Moments operator()(const TriangularSpec& t) const {
            const double a = t.low, m = t.mode, b = t.high;
            return {(a + m + b) / 3.0,
                    (a * a + m * m + b * b - a * m - a * b - m * b) / 18.0};
        }
    };
    return std::visit(Visitor{}, spec);
}

double expected_value(const DistributionSpec& spec) {
    return analytic_moments(spec).mean;
}

double quantile(const DistributionSpec& spec, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("quantile: p must be in [0, 1]");
    }
    struct Visitor {
        double p;
        double operator()(const PointSpec& s) const { return s.value; }
        double operator()(const GammaSpec& g) const {
            return g.scale * stats::gamma_quantile(g.shape, p);
        }
        double operator()(const NormalSpec& n) const {
            return n.mean + n.sd * stats::normal_quantile(p);
        }
        double operator()(const UniformSpec& u) const {
            return u.low + p * (u.high - u.low);
        }
        double operator()(const TriangularSpec& t) const {
            return triangular_quantile(t, p);
        }
    };
    return std::visit(Visitor{p}, spec);
}

double sample(const DistributionSpec& spec, RngStream& stream) {
    if (std::holds_alternative<PointSpec>(spec)) {
        return std::get<PointSpec>(spec).value;
    }
    for (int attempt = 0; attempt < 1000000; ++attempt) {
        const double x = draw_once(spec, stream);
        if (x >= 0.0) return x;
    }
    throw std::domain_error("sample: spec produces essentially no non-negative draws");
}

std::vector<std::string> spec_violations(const DistributionSpec& spec) {
    std::vector<std::string> out;
    auto check = [&out](bool ok, const char* msg) {
        if (!ok) out.emplace_back(msg);
    };
    struct Visitor {
        decltype(check)& require;
        void operator()(const PointSpec& p) const {
            require(std::isfinite(p.value), "point value must be finite");
        }
        void operator()(const GammaSpec& g) const {
            require(g.shape > 0.0 && std::isfinite(g.shape), "gamma shape must be > 0");
            require(g.scale > 0.0 && std::isfinite(g.scale), "gamma scale must be > 0");
        }
        void operator()(const NormalSpec& n) const {
            require(std::isfinite(n.mean), "normal mean must be finite");
            require(n.sd > 0.0 && std::isfinite(n.sd), "normal sd must be > 0");
        }
        void operator()(const UniformSpec& u) const {
            require(u.low < u.high, "uniform requires low < high");
            require(std::isfinite(u.low) && std::isfinite(u.high),
                    "uniform bounds must be finite");
        }
        void operator()(const TriangularSpec& t) const {
            require(t.low < t.high, "triangular requires low < high");
            require(t.low <= t.mode && t.mode <= t.high,
                    "triangular requires low <= mode <= high");
        }
    };
    std::visit(Visitor{check}, spec);
    return out;
}

DistributionFamily family_of(const DistributionSpec& spec) {
    switch (spec.index()) {
        case 0: return DistributionFamily::Point;
        case 1: return DistributionFamily::Gamma;
        case 2: return DistributionFamily::Normal;
        case 3: return DistributionFamily::Uniform;
        default: return DistributionFamily::Triangular;
    }
}

}  // namespace cba
