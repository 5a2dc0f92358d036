#include "cle/stochastic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <random>

#include "cle/stats.hpp"

namespace cle::stochastic {

namespace {

// Floor for the singular drift denominator; scales with the step so the
// drift increment stays bounded by (delta-1) sqrt(dt).
double drift_floor(double dt) { return 0.5 * std::sqrt(dt); }

}  // namespace

double SampledPath::jump_compensator(std::size_t k) const {
    double j = 0.0;
    for (const auto& e : jump_events) {
        if (e.index > k) break;
        j += e.size;
    }
    return j;
}

double SampledPath::sum_squared_jumps() const {
    double j = 0.0;
    for (const auto& e : jump_events) j += e.size * e.size;
    return j;
}

SampledPath brownian_path(double dt, double T, uint64_t seed) {
    if (dt <= 0.0 || T <= 0.0) throw hexgrid::Error("need dt > 0 and T > 0");
    const std::size_t n = std::size_t(std::llround(T / dt));
    Rng rng(seed);
    SampledPath p;
    p.dt = dt;
    p.values.resize(n + 1);
    p.driver_noise.resize(n);
    const double sdt = std::sqrt(dt);
    p.values[0] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        p.driver_noise[k] = sdt * rng.normal();
        p.values[k + 1] = p.values[k] + p.driver_noise[k];
    }
    return p;
}

BesselPath bessel_path(const BesselParams& p, double dt, double T, uint64_t seed) {
    if (p.delta <= 0.0) throw hexgrid::Error("delta must be positive");
    const std::size_t n = std::size_t(std::llround(T / dt));
    Rng rng(seed);
    BesselPath bp;
    bp.x.dt = dt;
    bp.x.values.resize(n + 1);
    bp.x.driver_noise.resize(n);
    bp.y.resize(n + 1);
    const double sdt = std::sqrt(dt);
    const double half_dm1 = 0.5 * (p.delta - 1.0);
    const double floor = drift_floor(dt);
    double x = p.x0, b = 0.0;
    bp.x.values[0] = x;
    bp.y[0] = 0.0;
    const bool delta_one = p.delta == 1.0;
    const double y_coef = delta_one ? 2.0 : 2.0 / (p.delta - 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double db = sdt * rng.normal();
        bp.x.driver_noise[k] = db;
        double nx = x + half_dm1 * dt / std::max(x, floor) + db;
        if (nx <= 0.0) {
            bp.x.zero_hits.push_back(k + 1);
            nx = -nx;
        }
        x = nx;
        b += db;
        bp.x.values[k + 1] = x;
        bp.y[k + 1] = y_coef * (x - p.x0 - b);
    }
    return bp;
}

double besq_exact_step(double delta, double z0, double h, Rng& rng) {
    if (delta <= 0.0 || z0 < 0.0 || h <= 0.0) throw hexgrid::Error("bad besq parameters");
    std::size_t k = 0;
    if (z0 > 0.0) {
        std::poisson_distribution<std::size_t> pois(z0 / (2.0 * h));
        k = pois(rng);
    }
    std::gamma_distribution<double> gamma(delta / 2.0 + double(k), 2.0);
    return h * gamma(rng);
}

SampledPath eps_bessel_path(const BesselParams& p, double dt, double T, uint64_t seed) {
    if (!p.epsilon || *p.epsilon <= 0.0) throw hexgrid::Error("epsilon required");
    if (p.delta <= 0.0) throw hexgrid::Error("delta must be positive");
    const double eps = *p.epsilon;
    const std::size_t n = std::size_t(std::llround(T / dt));
    Rng rng(seed);
    SampledPath sp;
    sp.dt = dt;
    sp.values.resize(n + 1);
    sp.driver_noise.resize(n);
    const double sdt = std::sqrt(dt);
    const double half_dm1 = 0.5 * (p.delta - 1.0);
    const double floor = drift_floor(dt);
    double x = p.x0;
    if (x <= 0.0) {
        x = eps;
        sp.jump_events.push_back({0, eps});
        sp.zero_hits.push_back(0);
    }
    sp.values[0] = x;
    for (std::size_t k = 0; k < n; ++k) {
        const double db = sdt * rng.normal();
        sp.driver_noise[k] = db;
        double nx = x + half_dm1 * dt / std::max(x, floor) + db;
        if (nx <= 0.0) {
            nx = eps;
            sp.jump_events.push_back({k + 1, eps});
            sp.zero_hits.push_back(k + 1);
        }
        x = nx;
        sp.values[k + 1] = x;
    }
    return sp;
}

std::size_t upcrossing_count(const SampledPath& path, double eps) {
    std::size_t count = 0;
    std::size_t zi = 0;
    bool below = false;
    for (std::size_t k = 0; k < path.values.size(); ++k) {
        if (zi < path.zero_hits.size() && path.zero_hits[zi] == k) {
            below = true;
            ++zi;
            continue;
        }
        if (below && path.values[k] >= eps) {
            ++count;
            below = false;
        }
    }
    return count;
}

SkewBesselPath skew_bessel_path(const BesselParams& p, double dt, double T, uint64_t seed) {
    const bool admissible = (p.delta > 0.0 && p.delta < 2.0 && p.delta != 1.0 && p.mu == 0.0) ||
                            (p.delta == 1.0 && p.beta == 0.0);
    if (!admissible || p.beta < -1.0 || p.beta > 1.0) throw InvalidSkewCombo();
    const double eps = p.epsilon.value_or(std::sqrt(dt));
    const std::size_t n = std::size_t(std::llround(T / dt));
    Rng rng(seed);
    SkewBesselPath sb;
    sb.x.dt = dt;
    sb.x.values.resize(n + 1);
    sb.x.driver_noise.resize(n);
    sb.y.resize(n + 1);
    const double sdt = std::sqrt(dt);
    const double half_dm1 = 0.5 * (p.delta - 1.0);
    const double floor = drift_floor(dt);
    const double p_plus = (1.0 + p.beta) / 2.0;
    // Per-jump compensation matching the X restart at eps.
    const double jump_y = p.delta == 1.0 ? eps : (2.0 / (p.delta - 1.0)) * eps;

    double x = std::abs(p.x0);
    double y = 0.0;
    int sign = rng.bernoulli(p_plus) ? +1 : -1;
    sb.excursion_sign.push_back(sign);
    if (x <= 0.0) {
        x = eps;
        y += sign * jump_y + p.mu * eps;
        sb.x.jump_events.push_back({0, eps});
        sb.x.zero_hits.push_back(0);
    }
    sb.x.values[0] = sign * x;
    sb.y[0] = y;
    for (std::size_t k = 0; k < n; ++k) {
        const double db = sdt * rng.normal();
        sb.x.driver_noise[k] = db;
        y += sign * dt / std::max(x, floor);
        double nx = x + half_dm1 * dt / std::max(x, floor) + db;
        if (nx <= 0.0) {
            nx = eps;
            sign = rng.bernoulli(p_plus) ? +1 : -1;
            sb.excursion_sign.push_back(sign);
            y += sign * jump_y + p.mu * eps;
            sb.x.jump_events.push_back({k + 1, eps});
            sb.x.zero_hits.push_back(k + 1);
        }
        x = nx;
        sb.x.values[k + 1] = sign * x;
        sb.y[k + 1] = y;
    }
    return sb;
}

double stable_sample_one(const StableParams& s, Rng& rng) {
    using std::numbers::pi;
    const double u = rng.uniform(-pi / 2.0, pi / 2.0);
    const double e = rng.exponential();
    if (s.alpha == 1.0) {
        const double c = s.b;
        const double z = (2.0 / pi) * ((pi / 2.0 + s.beta * u) * std::tan(u) -
                                       s.beta * std::log((pi / 2.0 * e * std::cos(u)) /
                                                         (pi / 2.0 + s.beta * u)));
        return c * z + (2.0 / pi) * s.beta * c * std::log(c) + s.mu;
    }
    const double c = std::pow(s.b, 1.0 / s.alpha);
    const double tphi = s.beta * std::tan(pi * s.alpha / 2.0);
    const double xi = std::atan(tphi) / s.alpha;
    const double factor = std::pow(1.0 + tphi * tphi, 1.0 / (2.0 * s.alpha));
    const double z = factor * std::sin(s.alpha * (u + xi)) /
                     std::pow(std::cos(u), 1.0 / s.alpha) *
                     std::pow(std::cos(u - s.alpha * (u + xi)) / e, (1.0 - s.alpha) / s.alpha);
    return c * z + s.mu;
}

std::vector<double> stable_sample(const StableParams& s, std::size_t count, uint64_t seed) {
    if (s.alpha <= 0.0 || s.alpha > 2.0 || s.beta < -1.0 || s.beta > 1.0 || s.b <= 0.0)
        throw hexgrid::Error("bad stable parameters");
    Rng rng(seed);
    std::vector<double> out(count);
    for (auto& v : out) v = stable_sample_one(s, rng);
    return out;
}

std::complex<double> stable_char_fn(const StableParams& s, double lambda) {
    using std::numbers::pi;
    if (lambda == 0.0) return {1.0, 0.0};
    const double c = s.alpha == 1.0 ? s.b : std::pow(s.b, 1.0 / s.alpha);
    const double phi = s.alpha == 1.0 ? -(2.0 / pi) * std::log(std::abs(lambda))
                                      : std::tan(pi * s.alpha / 2.0);
    const double sgn = lambda > 0.0 ? 1.0 : -1.0;
    const std::complex<double> expo(
        -std::pow(std::abs(c * lambda), s.alpha),
        lambda * s.mu + std::pow(std::abs(c * lambda), s.alpha) * s.beta * sgn * phi);
    return std::exp(expo);
}

InverseLocalTimeReport inverse_local_time_check(double delta, double dt, double T,
                                                std::size_t paths, uint64_t seed) {
    if (delta <= 0.0 || delta >= 2.0) throw hexgrid::Error("delta must be in (0,2)");
    InverseLocalTimeReport rep;
    rep.delta = delta;
    rep.tail_exponent_expected = 1.0 - delta / 2.0;

    std::vector<double> increments;
    std::size_t zero_steps = 0, total_steps = 0;
    for (std::size_t p = 0; p < paths; ++p) {
        const BesselPath bp = bessel_path({delta, 0.0, {}, 1.0, 0.0}, dt, T, seed + p);
        total_steps += bp.x.steps();
        zero_steps += bp.x.zero_hits.size();
        for (std::size_t i = 1; i < bp.x.zero_hits.size(); ++i) {
            const double gap = double(bp.x.zero_hits[i] - bp.x.zero_hits[i - 1]) * dt;
            if (gap > 0.0) increments.push_back(gap);
        }
    }
    rep.increment_count = increments.size();
    rep.zero_occupation_fraction =
        total_steps ? double(zero_steps) / double(total_steps) : 0.0;
    if (increments.size() < 100) return rep;

    const double alpha = rep.tail_exponent_expected;
    const auto oracle = stable_sample({alpha, 1.0, 0.0, 1.0}, increments.size(), seed ^ 0x5eedULL);

    // Scale match by medians (the gaps cannot exceed the horizon T, so the
    // subordinator oracle is truncated the same way before comparing).
    std::vector<double> inc_sorted = increments, ora_sorted = oracle;
    std::sort(inc_sorted.begin(), inc_sorted.end());
    std::sort(ora_sorted.begin(), ora_sorted.end());
    const double c_hat = inc_sorted[inc_sorted.size() / 2] / ora_sorted[ora_sorted.size() / 2];
    rep.fitted_scale = std::pow(c_hat, alpha);
    std::vector<double> scaled;
    for (double v : oracle)
        if (v * c_hat <= T) scaled.push_back(v * c_hat);
    const std::size_t k =
        std::max<std::size_t>(50, std::min(increments.size(), scaled.size()) / 20);
    rep.tail_exponent_increments = stats::hill_tail_exponent(increments, k);
    rep.tail_exponent_oracle = stats::hill_tail_exponent(scaled, k);
    rep.tail_exponent_oracle_raw = stats::hill_tail_exponent(oracle, k);
    const auto ks = stats::ks_test(increments, scaled);
    rep.ks_statistic = ks.statistic;
    rep.ks_p_value = ks.p_value;
    return rep;
}

}  // namespace cle::stochastic
