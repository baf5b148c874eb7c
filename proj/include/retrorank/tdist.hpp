#pragma once

#include <span>
#include <string_view>

namespace retrorank {

/// Regularized incomplete beta I_x(a, b) by continued fraction (modified Lentz).
double incomplete_beta(double a, double b, double x);

/// Student-t CDF with `df` degrees of freedom. Throws InvalidArgument if df < 1.
double t_cdf(double x, int df);

/// P(T > x), computed without cancellation for large x.
double t_upper_tail(double x, int df);

/// Two-tailed critical value: x > 0 with t_cdf(x, df) = 1 - alpha/2, by bisection.
double t_critical(int df, double alpha);

enum class Decision { reject, fail_to_reject };
std::string_view to_string(Decision d);

struct TTestResult {
  int n = 0;
  double mean_diff = 0.0;
  double sd_diff = 0.0;
  double t = 0.0;
  int df = 0;
  double p_two_tailed = 1.0;
  double t_crit = 0.0;
  double alpha = 0.05;
  Decision decision = Decision::fail_to_reject;
};

/// Student's paired t-test on d = a - b. Throws InvalidArgument on length mismatch or
/// fewer than two pairs, ZeroVarianceError when all differences are equal.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b, double alpha = 0.05);

}  // namespace retrorank
