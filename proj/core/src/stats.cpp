#include "cle/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace cle::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / double(xs.size());
}

double variance(std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("variance: need n >= 2");
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / double(xs.size() - 1);
}

double std_error_of_mean(std::span<const double> xs) {
    return std::sqrt(variance(xs) / double(xs.size()));
}

double correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("correlation: size mismatch");
    const double mx = mean(xs), my = mean(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return sxy / std::sqrt(sxx * syy);
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double q = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        q += (k % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-16) break;
    }
    return std::clamp(q, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const std::size_t n = sample.size();
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - double(i) / double(n)));
        d = std::max(d, std::abs(double(i + 1) / double(n) - f));
    }
    const double sn = std::sqrt(double(n));
    KsResult r;
    r.statistic = d;
    r.p_value = kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
    return r;
}

KsResult ks_test(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t n = a.size(), m = b.size();
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < n && j < m) {
        // Step through tied values jointly so atoms do not inflate D.
        const double v = std::min(a[i], b[j]);
        while (i < n && a[i] == v) ++i;
        while (j < m && b[j] == v) ++j;
        d = std::max(d, std::abs(double(i) / double(n) - double(j) / double(m)));
    }
    const double ne = std::sqrt(double(n) * double(m) / double(n + m));
    KsResult r;
    r.statistic = d;
    r.p_value = kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
    return r;
}

double hill_tail_exponent(std::vector<double> sample, std::size_t k) {
    std::erase_if(sample, [](double x) { return !(x > 0.0); });
    if (sample.size() < k + 1 || k == 0) throw std::invalid_argument("hill: k out of range");
    std::sort(sample.begin(), sample.end(), std::greater<>());
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += std::log(sample[i] / sample[k]);
    return double(k) / s;
}

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("linear_fit: size mismatch");
    const double mx = mean(xs), my = mean(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    const double rss = syy - f.slope * sxy;
    if (xs.size() > 2)
        f.slope_std_error = std::sqrt(std::max(0.0, rss / double(xs.size() - 2)) / sxx);
    return f;
}

std::complex<double> empirical_char_fn(std::span<const double> xs, double lambda) {
    double re = 0.0, im = 0.0;
    for (double x : xs) {
        re += std::cos(lambda * x);
        im += std::sin(lambda * x);
    }
    const double n = double(xs.size());
    return {re / n, im / n};
}

Histogram histogram(std::span<const double> xs, double lo, double hi, std::size_t bins) {
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(bins, 0);
    const double w = (hi - lo) / double(bins);
    for (double x : xs) {
        if (x < lo) {
            ++h.underflow;
        } else if (x >= hi) {
            ++h.overflow;
        } else {
            ++h.counts[std::size_t((x - lo) / w)];
        }
    }
    return h;
}

double normal_cdf(double x, double sigma) {
    return 0.5 * std::erfc(-x / (sigma * std::sqrt(2.0)));
}

double half_normal_cdf(double x, double sigma) {
    if (x <= 0.0) return 0.0;
    return std::erf(x / (sigma * std::sqrt(2.0)));
}

}  // namespace cle::stats
