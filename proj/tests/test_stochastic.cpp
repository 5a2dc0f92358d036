#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cle/rng.hpp"
#include "cle/stats.hpp"
#include "cle/stochastic.hpp"

using namespace cle;
using namespace cle::stochastic;

TEST_CASE("brownian path moments and determinism") {
    const std::size_t n = 10000;
    std::vector<double> finals(n);
    for (std::size_t i = 0; i < n; ++i) finals[i] = brownian_path(1e-2, 1.0, i).final();
    const double m = stats::mean(finals);
    const double se = stats::std_error_of_mean(finals);
    CHECK(std::abs(m) < 3.0 * se);
    const double var = stats::variance(finals);
    CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / double(n)));
    CHECK(brownian_path(1e-3, 1.0, 42).values == brownian_path(1e-3, 1.0, 42).values);
}

TEST_CASE("adaptedness: paths replay from their noise") {
    const auto bp = bessel_path({1.5, 0.2, {}, 1.0, 0.0}, 1e-3, 0.5, 9);
    // Re-run the recursion from the recorded increments.
    double x = 0.2;
    const double floor = 0.5 * std::sqrt(1e-3);
    for (std::size_t k = 0; k < bp.x.steps(); ++k) {
        double nx = x + 0.25 * 1e-3 / std::max(x, floor) + bp.x.driver_noise[k];
        if (nx <= 0.0) nx = -nx;
        x = nx;
        CHECK(x == doctest::Approx(bp.x.values[k + 1]).epsilon(1e-14));
    }
}

TEST_CASE("delta=1 marginal is half-normal") {
    std::vector<double> finals(10000);
    for (std::size_t i = 0; i < finals.size(); ++i)
        finals[i] = bessel_path({1.0, 0.0, {}, 1.0, 0.0}, 1e-3, 1.0, 100 + i).x.final();
    const auto ks =
        stats::ks_test(std::move(finals), [](double v) { return stats::half_normal_cdf(v); });
    CHECK(ks.p_value > 0.01);
}

TEST_CASE("squared Bessel mean growth (delta = 2)") {
    std::vector<double> z(8000);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double x = bessel_path({2.0, 0.0, {}, 1.0, 0.0}, 2e-4, 1.0, 500 + i).x.final();
        z[i] = x * x;
    }
    CHECK(std::abs(stats::mean(z) - 2.0) < 3.0 * stats::std_error_of_mean(z));
}

TEST_CASE("Brownian scaling of the Bessel law") {
    // X_T vs c^{-1/2} X_{cT} with c = 4 (KS across two ensembles).
    const double delta = 1.5;
    std::vector<double> a(4000), b(4000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = bessel_path({delta, 0.0, {}, 1.0, 0.0}, 1e-3, 1.0, 900 + i).x.final();
        b[i] = 0.5 * bessel_path({delta, 0.0, {}, 1.0, 0.0}, 1e-3, 4.0, 90000 + i).x.final();
    }
    CHECK(stats::ks_test(a, b).p_value > 0.01);
}

TEST_CASE("besq exact step: mean and 3-dimensional identity") {
    Rng rng(13);
    {
        std::vector<double> z(20000);
        for (auto& v : z) v = besq_exact_step(3.0, 0.7, 0.5, rng);
        CHECK(std::abs(stats::mean(z) - (0.7 + 3.0 * 0.5)) <
              3.0 * stats::std_error_of_mean(z));
    }
    {
        // From zero, Z_h/h is the squared norm of a 3-dim standard Gaussian.
        std::vector<double> z(8000), oracle(8000);
        Rng orng(14);
        for (std::size_t i = 0; i < z.size(); ++i) {
            z[i] = besq_exact_step(3.0, 0.0, 0.25, rng) / 0.25;
            double s = 0.0;
            for (int d = 0; d < 3; ++d) {
                const double g = orng.normal();
                s += g * g;
            }
            oracle[i] = s;
        }
        CHECK(stats::ks_test(z, oracle).p_value > 0.01);
    }
    {
        // Continuity: small h keeps Z near z0.
        std::vector<double> z(2000);
        for (auto& v : z) v = besq_exact_step(1.5, 1.0, 1e-6, rng);
        for (double v : z) CHECK(std::abs(v - 1.0) < 0.05);
    }
}

TEST_CASE("Euler marginal against the exact transition oracle") {
    // One coarse interval: Euler with many substeps vs the exact law.
    const double delta = 5.0 / 3.0, T = 0.5;
    std::vector<double> euler(6000), exact(6000);
    Rng rng(15);
    for (std::size_t i = 0; i < euler.size(); ++i) {
        const double x = bessel_path({delta, 0.5, {}, 1.0, 0.0}, 1e-4, T, 7000 + i).x.final();
        euler[i] = x * x;
        exact[i] = besq_exact_step(delta, 0.25, T, rng);
    }
    CHECK(stats::ks_test(euler, exact).p_value > 0.01);
}

TEST_CASE("eps-jump bookkeeping") {
    const auto sp = eps_bessel_path({0.5, 0.0, 0.05, 1.0, 0.0}, 1e-4, 1.0, 77);
    REQUIRE(!sp.jump_events.empty());
    CHECK(sp.values[0] == 0.05);  // restarted immediately from x0 = 0
    for (const auto& j : sp.jump_events) {
        CHECK(j.size == 0.05);
        CHECK(sp.values[j.index] == 0.05);
    }
    CHECK(sp.jump_compensator(sp.steps()) ==
          doctest::Approx(0.05 * double(sp.jump_events.size())));
    // Strictly increasing jump indices.
    for (std::size_t i = 1; i < sp.jump_events.size(); ++i)
        CHECK(sp.jump_events[i].index > sp.jump_events[i - 1].index);
}

TEST_CASE("delta=1 jump compensator approximates Brownian local time") {
    // J = X - B exactly for delta = 1, and E[local time at 1] = E|B_1|
    // under the half-occupation normalization.
    // Bias scales like sqrt(dt)/eps, so probe with eps well above the
    // step scale.
    std::vector<double> j(2000);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto sp = eps_bessel_path({1.0, 0.0, 0.04, 1.0, 0.0}, 1e-5, 1.0, 3000 + i);
        j[i] = sp.jump_compensator(sp.steps());
    }
    const double want = std::sqrt(2.0 / std::numbers::pi);
    CHECK(std::abs(stats::mean(j) - want) < 3.0 * stats::std_error_of_mean(j) + 0.02);

}

TEST_CASE("upcrossing counter") {
    SampledPath p;
    p.dt = 1.0;
    p.values = {0.5, 0.0, 0.05, 0.2, 0.01, 0.3, 0.4};
    p.zero_hits = {1, 4};
    CHECK(upcrossing_count(p, 0.1) == 2);
    CHECK(upcrossing_count(p, 0.25) == 1);
    CHECK(upcrossing_count(p, 0.35) == 1);
}

TEST_CASE("skew Bessel signs and scaling") {
    {
        const auto sb = skew_bessel_path({0.5, 0.0, 0.02, 1.0, 0.0}, 1e-4, 1.0, 21);
        for (double v : sb.x.values) CHECK(v >= 0.0);  // beta = 1: all positive
        for (int s : sb.excursion_sign) CHECK(s == +1);
        // The jump compensation is sigma (2/(delta-1)) eps: one sign
        // (negative for delta < 1, the principal-value renormalization).
        const double jump_y = 2.0 / (0.5 - 1.0) * 0.02;
        for (std::size_t i = 1; i < sb.x.jump_events.size(); ++i) {
            const auto& e = sb.x.jump_events[i];
            const double within = 1e-4 / std::max(sb.x.values[e.index - 1],
                                                  0.5 * std::sqrt(1e-4));
            CHECK(sb.y[e.index] - sb.y[e.index - 1] ==
                  doctest::Approx(within + jump_y).epsilon(1e-9));
        }
    }
    {
        // beta = 0, delta = 1: sign frequencies are a fair coin.
        int plus = 0, total = 0;
        for (int i = 0; i < 300; ++i) {
            const auto sb = skew_bessel_path({1.0, 0.0, 0.02, 0.0, 0.0}, 1e-4, 0.5, 400 + i);
            for (int s : sb.excursion_sign) {
                plus += s > 0;
                ++total;
            }
        }
        const double freq = double(plus) / double(total);
        CHECK(std::abs(freq - 0.5) < 3.0 * 0.5 / std::sqrt(double(total)));
    }
    {
        // beta = -1 mirrors beta = +1.
        std::vector<double> a(2000), b(2000);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = skew_bessel_path({0.5, 0.0, 0.02, 1.0, 0.0}, 1e-3, 1.0, 800 + i).x.final();
            b[i] = -skew_bessel_path({0.5, 0.0, 0.02, -1.0, 0.0}, 1e-3, 1.0, 80000 + i)
                        .x.final();
        }
        CHECK(stats::ks_test(a, b).p_value > 0.01);
    }
    {
        // (X, Y) pair scaling invariance, KS per coordinate with c = 4.
        const double delta = 1.5, beta = 0.5;
        std::vector<double> x1(3000), y1(3000), x4(3000), y4(3000);
        for (std::size_t i = 0; i < x1.size(); ++i) {
            const auto s1 = skew_bessel_path({delta, 0.0, 0.02, beta, 0.0}, 1e-3, 1.0, i);
            const auto s4 =
                skew_bessel_path({delta, 0.0, 0.02, beta, 0.0}, 1e-3, 4.0, 424200 + i);
            x1[i] = s1.x.final();
            y1[i] = s1.y.back();
            x4[i] = 0.5 * s4.x.final();
            y4[i] = 0.5 * s4.y.back();
        }
        CHECK(stats::ks_test(x1, x4).p_value > 0.01);
        CHECK(stats::ks_test(y1, y4).p_value > 0.01);
    }
    CHECK_THROWS_AS(skew_bessel_path({1.0, 0.0, 0.02, 0.5, 0.0}, 1e-3, 1.0, 1),
                    InvalidSkewCombo);
    CHECK_THROWS_AS(skew_bessel_path({1.5, 0.0, 0.02, 0.5, 0.3}, 1e-3, 1.0, 1),
                    InvalidSkewCombo);
}

TEST_CASE("stable samples: Gaussian and Cauchy special cases") {
    {
        // alpha = 2 is N(0, 2 c^2); b = 1 so c = 1.
        const auto xs = stable_sample({2.0, 0.7, 0.0, 1.0}, 20000, 33);
        const auto ks = stats::ks_test(
            std::vector<double>(xs), [](double v) { return stats::normal_cdf(v, std::sqrt(2.0)); });
        CHECK(ks.p_value > 0.01);
    }
    {
        // alpha = 1, beta = 0 is Cauchy: ratio-of-normals oracle.
        const auto xs = stable_sample({1.0, 0.0, 0.0, 1.0}, 20000, 34);
        std::vector<double> oracle(xs.size());
        Rng rng(35);
        for (auto& v : oracle) v = rng.normal() / rng.normal();
        CHECK(stats::ks_test(xs, oracle).p_value > 0.01);
    }
    {
        // alpha = 1/2, beta = 1: one-sided; inverse-square-normal oracle.
        const auto xs = stable_sample({0.5, 1.0, 0.0, 1.0}, 20000, 36);
        for (double v : xs) CHECK(v > 0.0);
        std::vector<double> oracle(xs.size());
        Rng rng(37);
        // Levy(c): c / Z^2 with Z standard normal; c = b^{1/alpha} = 1.
        for (auto& v : oracle) {
            const double z = rng.normal();
            v = 1.0 / (z * z);
        }
        CHECK(stats::ks_test(xs, oracle).p_value > 0.01);
    }
}

TEST_CASE("stable characteristic function") {
    CHECK(stable_char_fn({1.0, 0.3, 0.0, 1.0}, 0.0) == std::complex<double>(1.0, 0.0));
    {
        const auto v = stable_char_fn({2.0, 0.5, 0.0, 1.0}, 1.5);
        CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(v.real() == doctest::Approx(std::exp(-1.5 * 1.5)));
    }
    // Empirical CF matches for a skewed case.
    const auto xs = stable_sample({1.5, 0.7, 0.0, 1.0}, 100000, 38);
    double sup = 0.0;
    for (double lam = -5.0; lam <= 5.0; lam += 0.5)
        sup = std::max(sup,
                       std::abs(stats::empirical_char_fn(xs, lam) -
                                stable_char_fn({1.5, 0.7, 0.0, 1.0}, lam)));
    CHECK(sup < 0.02);
}

TEST_CASE("strict stability flag") {
    CHECK(StableParams{1.5, 0.7, 0.0, 1.0}.strictly_stable());
    CHECK(StableParams{1.0, 0.0, 0.5, 1.0}.strictly_stable());
    CHECK(StableParams{1.0, 0.0, 0.0, 1.0}.strictly_stable());
    CHECK(StableParams{1.5, 0.7, 0.1, 1.0}.strictly_stable() == false);
}

TEST_CASE("inverse local time report") {
    const auto rep = inverse_local_time_check(1.0, 1e-4, 1.0, 60, 40);
    CHECK(rep.tail_exponent_expected == doctest::Approx(0.5));
    REQUIRE(rep.increment_count > 1000);
    CHECK(std::abs(rep.tail_exponent_increments - rep.tail_exponent_oracle) < 0.1);
    CHECK(std::abs(rep.tail_exponent_oracle_raw - 0.5) < 0.1);
    // Occupation fraction of the zero set stays within the discretization
    // allowance (~ sqrt(dt) scale).
    CHECK(rep.zero_occupation_fraction < 2.0 * std::sqrt(1e-4) * 10.0);

    // For delta >= 2 the path stays positive after leaving the origin;
    // discrete crossings away from the start are rare and vanish with the
    // step size (dt^{delta/2-1}).
    std::size_t zeros = 0;
    for (int i = 0; i < 200; ++i) {
        const auto bp = bessel_path({3.0, 0.0, {}, 1.0, 0.0}, 1e-4, 1.0, 600 + i);
        for (std::size_t k : bp.x.zero_hits)
            if (double(k) * 1e-4 > 0.01) ++zeros;
    }
    CHECK(zeros <= 2);
    // Crossing counts decrease in delta.
    auto hits = [](double delta) {
        std::size_t z = 0;
        for (int i = 0; i < 100; ++i)
            z += bessel_path({delta, 0.0, {}, 1.0, 0.0}, 1e-4, 1.0, 900 + i).x.zero_hits.size();
        return z;
    };
    CHECK(hits(1.9) < hits(1.5));
    CHECK(hits(2.5) < hits(1.9));
}
