#pragma once

#include <functional>
#include <span>
#include <vector>

namespace polyspace {

double normal_cdf(double x);
double normal_cdf(double x, double mean, double stddev);

/// Kolmogorov-Smirnov distance between the empirical law of the samples and
/// a continuous CDF.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

/// KS distance against Normal(mean, stddev^2).
double ks_distance_normal(std::vector<double> samples, double mean,
                          double stddev);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_std_error = 0.0;
  /// Two-sided 95% confidence bounds on the slope (t distribution,
  /// k-2 degrees of freedom). Equal to the slope when k == 2.
  double slope_ci_low = 0.0;
  double slope_ci_high = 0.0;
  int n_points = 0;
};

/// Ordinary least squares fit of y against x; needs >= 2 points.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Adaptive Simpson integration with interval bisection, absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol);

/// Pearson correlation of two equally long samples.
double correlation(std::span<const double> x, std::span<const double> y);

}  // namespace polyspace
