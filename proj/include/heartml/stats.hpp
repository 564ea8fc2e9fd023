#pragma once

namespace heartml::stats {

/// Inverse of the standard normal CDF, p in (0, 1).
double normal_quantile(double p);

/// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double incomplete_beta(double x, double a, double b);

/// x such that I_x(a, b) = p, found by bisection until the bracket spans adjacent doubles.
double beta_quantile(double p, double a, double b);

/// Pessimistic error count of a leaf covering `n` instances with `errors` misclassified:
/// errors plus the extra errors implied by the one-sided binomial upper bound at `confidence`.
double pessimistic_errors(double n, double errors, double confidence);

}  // namespace heartml::stats
