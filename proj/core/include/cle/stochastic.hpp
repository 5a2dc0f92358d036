#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "cle/hexgrid.hpp"
#include "cle/rng.hpp"

namespace cle::stochastic {

struct DegenerateDelta : hexgrid::Error {
    DegenerateDelta() : Error("delta = 1 has no principal-value companion") {}
};
struct InvalidSkewCombo : hexgrid::Error {
    InvalidSkewCombo() : Error("skew parameters require delta in (0,1)u(1,2) with mu=0, or delta=1 with beta=0") {}
};

struct JumpEvent {
    std::size_t index = 0;  // step index at which the value was restarted
    double size = 0.0;      // jump size epsilon_i
};

// A discretized process: values[k] is the state at time k*dt.
struct SampledPath {
    double dt = 0.0;
    std::vector<double> values;
    std::vector<double> driver_noise;  // Brownian increments, when recorded
    std::vector<JumpEvent> jump_events;
    std::vector<std::size_t> zero_hits;  // steps whose pre-reflection value was <= 0

    double final() const { return values.back(); }
    double time_at(std::size_t k) const { return double(k) * dt; }
    std::size_t steps() const { return values.empty() ? 0 : values.size() - 1; }
    // epsilon * (number of jumps up to and including step k).
    double jump_compensator(std::size_t k) const;
    double sum_squared_jumps() const;
};

struct BesselParams {
    double delta = 1.0;
    double x0 = 0.0;
    std::optional<double> epsilon;  // jump size for the epsilon variant
    double beta = 1.0;              // excursion-sign skew
    double mu = 0.0;                // drift constant, only for delta=1, beta=0
};

struct StableParams {
    double alpha = 2.0;
    double beta = 0.0;
    double mu = 0.0;
    double b = 1.0;  // process scale; the time-1 marginal has c^alpha = b

    bool strictly_stable() const {
        return (alpha != 1.0 && mu == 0.0) || (alpha == 1.0 && beta == 0.0);
    }
};

SampledPath brownian_path(double dt, double T, uint64_t seed);

struct BesselPath {
    SampledPath x;
    // Companion Y_t: (2/(delta-1))(X_t - X_0 - B_t) for delta != 1, and the
    // local-time form 2(X_t - B_t) for delta = 1.
    std::vector<double> y;
};

// Euler-Maruyama for dX = (delta-1)/(2X) dt + dB, reflected by absolute
// value.  Steps whose pre-reflection value is <= 0 are recorded as zero
// hits.
BesselPath bessel_path(const BesselParams& p, double dt, double T, uint64_t seed);

// Exact squared-Bessel transition: a sample of Z_{t+h} given Z_t = z0, via
// the noncentral chi-square (Poisson-gamma) representation.
double besq_exact_step(double delta, double z0, double h, Rng& rng);

// Euler evolution that restarts at epsilon whenever the step value drops to
// zero or below; jumps are recorded and J^eps_t = eps * #jumps is exposed
// through jump_compensator().
SampledPath eps_bessel_path(const BesselParams& p, double dt, double T, uint64_t seed);

// Number of upward crossings of [0, eps]: a zero hit followed by the first
// later visit to a value >= eps.
std::size_t upcrossing_count(const SampledPath& path, double eps);

struct SkewBesselPath {
    SampledPath x;          // signed: |x| has the Bessel law
    std::vector<double> y;  // principal-value companion with signed jumps
    std::vector<int> excursion_sign;  // per excursion, in time order
};

// Skew Bessel process: excursions of |X| independently signed positive with
// probability (1+beta)/2.  Y is built from the epsilon-jump construction
// with per-excursion signed contributions; requires epsilon to be set.
SkewBesselPath skew_bessel_path(const BesselParams& p, double dt, double T, uint64_t seed);

// Exact-in-distribution samples of S_1 for the S(alpha, beta, mu, b)
// process (Chambers-Mallows-Stuck).
std::vector<double> stable_sample(const StableParams& s, std::size_t count, uint64_t seed);
double stable_sample_one(const StableParams& s, Rng& rng);

// exp[i lambda mu - |c lambda|^alpha (1 - i beta sign(lambda) Phi)] with
// Phi = tan(pi alpha/2) for alpha != 1 and -(2/pi) log|lambda| for alpha=1.
std::complex<double> stable_char_fn(const StableParams& s, double lambda);

struct InverseLocalTimeReport {
    double delta = 0.0;
    double tail_exponent_expected = 0.0;  // 1 - delta/2
    double tail_exponent_increments = 0.0;
    double tail_exponent_oracle = 0.0;      // on horizon-truncated stable samples
    double tail_exponent_oracle_raw = 0.0;  // on untruncated stable samples
    double fitted_scale = 0.0;          // median-matched b
    double ks_statistic = 0.0;          // increments vs scaled stable oracle
    double ks_p_value = 0.0;
    double zero_occupation_fraction = 0.0;
    std::size_t increment_count = 0;
};

// Compares inverse-local-time increments of a Bessel path against stable
// subordinator samples with alpha = 1 - delta/2, up to a fitted scale.
InverseLocalTimeReport inverse_local_time_check(double delta, double dt, double T,
                                                std::size_t paths, uint64_t seed);

}  // namespace cle::stochastic
