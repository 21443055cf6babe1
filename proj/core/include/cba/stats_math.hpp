#pragma once

namespace cba::stats {

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse standard normal CDF for p in (0, 1).
/// Acklam's rational approximation polished with one Halley step;
/// accurate to full double precision over the open interval.
double normal_quantile(double p);

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
/// Series expansion for x < a + 1, Lentz continued fraction otherwise.
double gamma_p(double a, double x);

/// Inverse of gamma_p in x: smallest x with P(a, x) = p.
/// Wilson-Hilferty start, safeguarded Newton refinement.
double gamma_quantile(double a, double p);

}  // namespace cba::stats
