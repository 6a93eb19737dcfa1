#pragma once

#include "polyspace/config.hpp"
#include "polyspace/report.hpp"

namespace polyspace {

/// C(alpha) = int_{2|alpha|}^inf phi(u) P(|Z| < u m/sigma) du by adaptive
/// Simpson quadrature; absolute error <= 1e-9, truncation beyond the
/// Gaussian tail bound.
double compute_c_alpha(double alpha, const RandomModel& model);

/// Law of n^(-1/2)(tau - n/2) against Normal(0, sigma_tau^2): KS distances
/// per n for tau~ and tau, plus a variance check.
ExperimentResult verify_clt_tau(const ExperimentConfig& config);

/// P(|tau/n - 1/2| >= epsilon) across the grid with adaptive sample
/// escalation; fits the slope of log-probability against n.
ExperimentResult verify_ldp_tau(const ExperimentConfig& config);

/// Mean high-dimensional Betti numbers against the regime prediction
/// (sub/super/critical); optionally checks the entropy exponent of
/// n^-1 log mu[b_[np]].
ExperimentResult verify_high_dim_betti_planar(const ExperimentConfig& config);
ExperimentResult verify_high_dim_betti_spatial(const ExperimentConfig& config);

/// Normalized mean Poincare value against its limit, plus the
/// equilateral-vs-mean comparison curves.
ExperimentResult verify_mean_poincare(const ExperimentConfig& config);

/// Moment ratios mu[p^nu] / mu[p]^nu and the variance of the normalized
/// polynomial from exact per-sample evaluations.
ExperimentResult verify_higher_moments(const ExperimentConfig& config);

/// Correlation and marginal normality of stopping times under two
/// independent permutations of the same vector.
ExperimentResult verify_bivariate_independence(const ExperimentConfig& config);

/// Dispatch on config.experiment.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace polyspace
