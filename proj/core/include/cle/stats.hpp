#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace cle::stats {

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // unbiased
double std_error_of_mean(std::span<const double> xs);

// Pearson correlation coefficient.
double correlation(std::span<const double> xs, std::span<const double> ys);

// Asymptotic Kolmogorov distribution tail Q(lambda) = P(K > lambda).
double kolmogorov_q(double lambda);

struct KsResult {
    double statistic = 0.0;  // sup |F1 - F2|
    double p_value = 1.0;    // asymptotic
};

// One-sample KS against a CDF.
KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);
// Two-sample KS.
KsResult ks_test(std::vector<double> a, std::vector<double> b);

// Hill tail-index estimator from the k largest order statistics.
// Returns alpha_hat (the tail exponent of P(X > x) ~ x^-alpha).
double hill_tail_exponent(std::vector<double> sample, std::size_t k);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_std_error = 0.0;
};
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

// Empirical characteristic function (1/n) sum exp(i lambda x_k).
std::complex<double> empirical_char_fn(std::span<const double> xs, double lambda);

struct Histogram {
    double lo = 0.0, hi = 0.0;
    std::vector<std::size_t> counts;
    std::size_t underflow = 0, overflow = 0;
};
Histogram histogram(std::span<const double> xs, double lo, double hi, std::size_t bins);

// Normal and half-normal CDFs (sigma-scaled, zero mean).
double normal_cdf(double x, double sigma = 1.0);
double half_normal_cdf(double x, double sigma = 1.0);

}  // namespace cle::stats
