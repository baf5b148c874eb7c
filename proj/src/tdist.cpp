#include "retrorank/tdist.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <limits>
#include <numeric>

#include "retrorank/error.hpp"

namespace retrorank {

namespace {

constexpr int kMaxFractionTerms = 20000;
constexpr double kFractionEps = 1e-16;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b); converges fastest for x < (a + 1) / (a + b + 2).
double beta_fraction(double a, double b, double x) {
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxFractionTerms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kFractionEps) return h;
  }
  throw Error("incomplete beta continued fraction did not converge");
}

// I_x(a, b) given both x and 1 - x, so callers can pass an accurate complement.
double incomplete_beta(double a, double b, double x, double one_minus_x) {
  if (x <= 0.0) return 0.0;
  if (one_minus_x <= 0.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(one_minus_x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(a, b, x) / a;
  return 1.0 - front * beta_fraction(b, a, one_minus_x) / b;
}

void check_df(int df) {
  if (df < 1) throw InvalidArgument("degrees of freedom must be at least 1");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("incomplete beta needs x in [0, 1]");
  return incomplete_beta(a, b, x, 1.0 - x);
}

double t_upper_tail(double x, int df) {
  check_df(df);
  if (std::isnan(x)) return x;
  if (x == 0.0) return 0.5;
  const double nu = df;
  const double x2 = x * x;
  // P(|T| > |x|) = I_{nu / (nu + x^2)}(nu / 2, 1 / 2)
  const double both_tails = std::isinf(x) ? 0.0 : incomplete_beta(nu / 2.0, 0.5, nu / (nu + x2), x2 / (nu + x2));
  return x > 0.0 ? 0.5 * both_tails : 1.0 - 0.5 * both_tails;
}

double t_cdf(double x, int df) {
  check_df(df);
  if (x == 0.0) return 0.5;
  // the smaller tail is the accurate one; the other side is its complement
  return x > 0.0 ? 1.0 - t_upper_tail(x, df) : t_upper_tail(-x, df);
}

double t_critical(int df, double alpha) {
  check_df(df);
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  const double tail = alpha / 2.0;
  double lo = 0.0, hi = 1.0;
  while (t_upper_tail(hi, df) > tail) {
    lo = hi;
    hi *= 2.0;
  }
  // upper tail is decreasing in x
  for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (t_upper_tail(mid, df) > tail) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::string_view to_string(Decision d) { return d == Decision::reject ? "reject" : "fail_to_reject"; }

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() != b.size())
    throw InvalidArgument("paired samples differ in length (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  if (a.size() < 2) throw InvalidArgument("paired t-test needs at least two pairs");

  const auto n = static_cast<int>(a.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] - b[i];
  const double mean = sum / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dev = (a[i] - b[i]) - mean;
    ss += dev * dev;
  }
  const double sd = std::sqrt(ss / (n - 1));
  // equal differences can leave rounding residue in ss
  if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) throw ZeroVarianceError();

  TTestResult r;
  r.n = n;
  r.mean_diff = mean;
  r.sd_diff = sd;
  r.t = mean / (sd / std::sqrt(static_cast<double>(n)));
  r.df = n - 1;
  r.p_two_tailed = std::min(1.0, 2.0 * t_upper_tail(std::abs(r.t), r.df));
  r.t_crit = t_critical(r.df, alpha);
  r.alpha = alpha;
  r.decision = std::abs(r.t) > r.t_crit ? Decision::reject : Decision::fail_to_reject;
  return r;
}

}  // namespace retrorank
