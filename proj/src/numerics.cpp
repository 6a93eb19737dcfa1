#include "polyspace/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyspace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_cdf(double x, double mean, double stddev) {
  return normal_cdf((x - mean) / stddev);
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.empty()) {
    throw std::invalid_argument("ks_distance needs samples");
  }
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double distance = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    distance = std::max(distance, std::abs((i + 1.0) / n - f));
    distance = std::max(distance, std::abs(f - i / n));
  }
  return distance;
}

double ks_distance_normal(std::vector<double> samples, double mean,
                          double stddev) {
  return ks_distance(std::move(samples),
                     [=](double x) { return normal_cdf(x, mean, stddev); });
}

namespace {

// Two-sided 95% quantiles of the t distribution by degrees of freedom,
// df = 1..30; larger df fall back to the normal quantile.
constexpr double kT975[] = {
    12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
    2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
    2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};

double t_quantile_975(int df) {
  if (df < 1) return 0.0;
  if (df <= 30) return kT975[df - 1];
  return 1.959963984540054;
}

}  // namespace

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line needs >= 2 paired points");
  }
  const int k = static_cast<int>(x.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (int i = 0; i < k; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= k;
  mean_y /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (int i = 0; i < k; ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("fit_line needs distinct x values");
  }
  LinearFit fit;
  fit.n_points = k;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  if (k > 2) {
    double rss = 0.0;
    for (int i = 0; i < k; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.slope_std_error = std::sqrt(rss / (k - 2) / sxx);
    const double half = t_quantile_975(k - 2) * fit.slope_std_error;
    fit.slope_ci_low = fit.slope - half;
    fit.slope_ci_high = fit.slope + half;
  } else {
    fit.slope_ci_low = fit.slope;
    fit.slope_ci_high = fit.slope;
  }
  return fit;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol) {
  if (a >= b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive_step(f, a, fa, b, fb, m, fm, whole, abs_tol, 48);
}

double correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("correlation needs paired samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace polyspace
