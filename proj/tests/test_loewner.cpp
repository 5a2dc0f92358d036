#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "cle/loewner.hpp"
#include "cle/rng.hpp"
#include "cle/stats.hpp"

using namespace cle;
using namespace cle::loewner;

namespace {

Driver zero_driver(double dt, double T) {
    Driver d;
    d.mode = Mode::Chordal;
    d.dt = dt;
    d.W.assign(std::size_t(std::llround(T / dt)) + 1, 0.0);
    return d;
}

}  // namespace

TEST_CASE("chordal forward map matches sqrt(z^2+4t)") {
    const auto d = zero_driver(1e-4, 1.0);
    for (const Complex z : {Complex(1.0, 0.5), Complex(-0.7, 1.3), Complex(0.3, 2.0)}) {
        const auto flow = chordal_forward(d, z, 1.0);
        REQUIRE(!flow.swallow_time.has_value());
        Complex want = std::sqrt(z * z + 4.0);
        if (want.imag() < 0.0 || (want.imag() == 0.0 && z.real() < 0.0)) want = -want;
        CHECK(std::abs(flow.trajectory.back() - want) < 1e-4);
    }
}

TEST_CASE("points on the slit are swallowed at y^2/4") {
    const auto d = zero_driver(1e-4, 1.0);
    for (const double y : {0.6, 1.0, 1.5}) {
        const auto flow = chordal_forward(d, {0.0, y}, 1.0);
        REQUIRE(flow.swallow_time.has_value());
        CHECK(std::abs(*flow.swallow_time - y * y / 4.0) < 1e-3);
    }
}

TEST_CASE("hydrodynamic normalization at a far point") {
    const auto d = zero_driver(1e-3, 1.0);
    const Complex z(1000.0, 5.0);
    const auto flow = chordal_forward(d, z, 1.0);
    CHECK(std::abs(flow.trajectory.back() - z) < 1e-2);
    // First-order expansion of the capacity: g_t(z) - z ~ 2t/z.
    CHECK(std::abs(flow.trajectory.back() - z - 2.0 / z) < 1e-5);
}

TEST_CASE("vertical slit trace") {
    const auto d = zero_driver(1e-4, 1.0);
    const auto tr = chordal_trace(d);
    const Complex want(0.0, 2.0);
    CHECK(std::abs(tr.points.back() - want) / std::abs(want) < 1e-3);
    for (std::size_t k = 1; k < tr.points.size(); k += 997)
        CHECK(std::abs(tr.points[k] - Complex(0.0, 2.0 * std::sqrt(k * 1e-4))) < 1e-6);
}

TEST_CASE("trace of a simple-phase driver stays in the open half plane") {
    const auto d = sle_driver(2.0, Mode::Chordal, 1e-4, 0.5, 12);
    const auto tr = chordal_trace(d);
    for (std::size_t k = 1; k < tr.points.size(); ++k) CHECK(tr.points[k].imag() > 0.0);
    for (std::size_t k = 2; k < tr.points.size(); ++k)
        CHECK(std::abs(tr.points[k] - tr.points[0]) > 1e-4);
}

TEST_CASE("time-reversed driving keeps capacity additive") {
    auto d = sle_driver(6.0, Mode::Chordal, 1e-3, 0.5, 5);
    std::reverse(d.W.begin(), d.W.end());
    const auto tr = chordal_trace(d);
    CHECK(tr.points.size() == d.W.size());
    const Complex z(500.0, 1.0);
    const auto flow = chordal_forward(d, z, 0.5);
    const Complex approx = z + 2.0 * 0.5 / z;
    CHECK(std::abs(flow.trajectory.back() - approx) < 1e-4);
}

TEST_CASE("radial fixed point and log-derivative clock") {
    const auto d = sle_driver(6.0, Mode::Radial, 1e-3, 1.0, 7);
    const auto flow = radial_forward(d, {0.0, 0.0}, 1.0);
    for (const auto& g : flow.trajectory) CHECK(std::abs(g) == 0.0);
    CHECK(std::abs(flow.log_abs_deriv.back() - 1.0) < 1e-3);
    // Variational derivative against finite differences off center.
    const Complex z(0.3, 0.2);
    const double h = 1e-6;
    const auto f0 = radial_forward(d, z, 0.3);
    const auto fp = radial_forward(d, z + Complex(h, 0.0), 0.3);
    const double fd = std::abs((fp.trajectory.back() - f0.trajectory.back()) / h);
    CHECK(std::abs(std::log(fd) - f0.log_abs_deriv.back()) < 1e-3);
}

TEST_CASE("constant radial driving grows a radial slit") {
    Driver d;
    d.mode = Mode::Radial;
    d.dt = 1e-3;
    d.W.assign(301, 0.0);  // W = 1
    const auto tr = radial_trace(d);
    CHECK(std::abs(tr.points.front() - Complex(1.0, 0.0)) == 0.0);
    for (const auto& z : tr.points) {
        CHECK(std::abs(z.imag()) < 1e-6);  // on the radius through W_0
        CHECK(z.real() > 0.0);
        CHECK(z.real() < 1.0 + 1e-9);
    }
    const auto flow = radial_forward(d, {1.0, 0.0}, 0.3);
    REQUIRE(flow.swallow_time.has_value());
    CHECK(*flow.swallow_time == 0.0);
}

TEST_CASE("radial trace rotation equivariance and containment") {
    const auto d = sle_driver(4.0, Mode::Radial, 1e-3, 0.4, 9);
    Driver rot = d;
    const double phi = 1.1;
    for (auto& w : rot.W) w += phi;
    const auto t0 = radial_trace(d);
    const auto t1 = radial_trace(rot);
    const Complex r = std::polar(1.0, phi);
    for (std::size_t k = 0; k < t0.points.size(); ++k) {
        CHECK(std::abs(t1.points[k] - r * t0.points[k]) < 1e-6);
        CHECK(std::abs(t0.points[k]) <= 1.0 + 1e-6);
    }
}

TEST_CASE("sle driver variance rate and determinism") {
    const std::size_t n = 4000;
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = sle_driver(6.0, Mode::Chordal, 1e-3, 1.0, 100 + i).W.back();
    const double rate = stats::variance(w);
    CHECK(std::abs(rate - 6.0) < 3.0 * 6.0 * std::sqrt(2.0 / double(n)));
    CHECK(sle_driver(0.0, Mode::Chordal, 1e-3, 1.0, 1).W.back() == 0.0);
    const auto a = sle_driver(6.0, Mode::Radial, 1e-3, 1.0, 3);
    const auto b = sle_driver(6.0, Mode::Radial, 1e-3, 1.0, 3);
    CHECK(a.W == b.W);
    for (std::size_t k = 0; k < a.W.size(); ++k)
        CHECK(std::abs(std::abs(a.radial_w(k)) - 1.0) < 1e-15);
}

TEST_CASE("sle_kr delta formula and admissibility") {
    CHECK(sle_kr_delta(6.0, 0.0) == doctest::Approx(5.0 / 3.0));
    CHECK(sle_kr_delta(4.0, -2.0) == doctest::Approx(1.0));
    CHECK(sle_kr_delta(8.0, 2.0) == doctest::Approx(2.0));
    SleKrParams bad;
    bad.kappa = 4.0;
    bad.rho = -4.1;  // delta < 0
    CHECK_THROWS_AS(sle_kr_driver(bad, 1e-3, 0.1, 1), InadmissibleParams);
    SleKrParams one;
    one.kappa = 4.0;
    one.rho = -2.0;  // delta = 1 requires beta = 0
    one.beta = 1.0;
    CHECK_THROWS_AS(sle_kr_driver(one, 1e-3, 0.1, 1), InadmissibleParams);
    one.beta = 0.0;
    CHECK_NOTHROW(sle_kr_driver(one, 1e-3, 0.1, 1));
}

TEST_CASE("exact chordal driver keeps O below W") {
    SleKrParams p{6.0, 0.0, Mode::Chordal, false, 0.0, 1.0, 0.0, 0.0};
    const auto d = sle_kr_driver(p, 1e-4, 1.0, 21);
    for (std::size_t k = 0; k < d.W.size(); ++k) CHECK(d.O[k] <= d.W[k] + 1e-12);
    for (std::size_t k = 1; k < d.O.size(); ++k) CHECK(d.O[k] <= d.O[k - 1] + 1e-12);
}

TEST_CASE("eps driver jump sizes follow the coefficient matrix") {
    {
        SleKrParams p{2.0, -4.0, Mode::Chordal, true, 0.05, 1.0, 0.0, 0.0};
        const auto d = sle_kr_driver(p, 1e-4, 0.5, 31);
        REQUIRE(!d.jump_events.empty());
        const double sk = std::sqrt(2.0);
        for (const auto& j : d.jump_events) {
            // w2 eps = sqrt(k) rho/(rho+2) eps = sqrt(2) * 2 * 0.05
            CHECK(std::abs(j.w_jump) == doctest::Approx(sk * 2.0 * 0.05));
            CHECK(j.o_jump / j.w_jump == doctest::Approx(0.5));  // -2/rho
        }
    }
    {
        SleKrParams p{6.0, 0.0, Mode::Chordal, true, 0.05, 1.0, 0.0, 0.0};
        const auto d = sle_kr_driver(p, 1e-4, 0.5, 32);
        REQUIRE(!d.jump_events.empty());
        for (const auto& j : d.jump_events) {
            CHECK(j.w_jump == 0.0);  // w2 = 0 for rho >= -2
            CHECK(std::abs(j.o_jump) == doctest::Approx(std::sqrt(6.0) * 0.05));
        }
    }
}

TEST_CASE("collision occupation vanishes under refinement") {
    std::vector<double> fractions;
    for (const double dt : {4e-4, 1e-4, 2.5e-5}) {
        double acc = 0.0;
        for (int i = 0; i < 8; ++i) {
            SleKrParams p{6.0, 0.0, Mode::Chordal, false, 0.0, 1.0, 0.0, 0.0};
            acc += collision_time_fraction(sle_kr_driver(p, dt, 1.0, 50 + i), 1e-3);
        }
        fractions.push_back(acc / 8.0);
    }
    CHECK(fractions[2] < fractions[0]);
    CHECK(fractions[2] < 0.02);
}

TEST_CASE("radial eps driver: unit modulus, lifted gap, jumps recorded") {
    SleKrParams p{6.0, 0.0, Mode::Radial, true, 0.02, 1.0, 0.0, 0.0};
    const auto d = sle_kr_driver(p, 1e-4, 1.0, 33);
    for (std::size_t k = 0; k < d.W.size(); k += 37) {
        CHECK(std::abs(std::abs(d.radial_w(k)) - 1.0) < 1e-15);
        CHECK(std::abs(std::abs(d.radial_o(k)) - 1.0) < 1e-15);
    }
    // beta = 1 keeps the lifted gap on the positive side of its anchor.
    for (std::size_t k = 0; k < d.W.size(); ++k) {
        const double gap = d.hat_o(k);
        CHECK(gap > -1e-12);
        CHECK(gap < 2.0 * std::numbers::pi + 1e-9);
    }
    REQUIRE(!d.jump_events.empty());
}

TEST_CASE("radial angle drift matches the cot law between collisions") {
    // rho = kappa - 6 = 0: the lifted gap drifts by (kappa-4)/2 cot(gap/2).
    SleKrParams p{6.0, 0.0, Mode::Radial, true, 0.05, 1.0, 0.0, 0.0};
    const double dt = 1e-4;
    const auto d = sle_kr_driver(p, dt, 30.0, 35);
    std::vector<double> xs, ys;
    std::size_t jump_at = 0;
    std::vector<char> is_jump(d.W.size(), 0);
    for (const auto& j : d.jump_events) is_jump[j.index] = 1;
    (void)jump_at;
    for (std::size_t k = 0; k + 1 < d.W.size(); ++k) {
        if (is_jump[k + 1] || is_jump[k]) continue;
        const double th = d.hat_o(k);
        if (th < 0.3 || th > 2.0 * std::numbers::pi - 0.3) continue;
        xs.push_back(1.0 / std::tan(th / 2.0) * dt);
        ys.push_back(d.hat_o(k + 1) - th);
    }
    REQUIRE(xs.size() > 5000);
    const auto fit = stats::linear_fit(xs, ys);
    // Drift coefficient (kappa-4)/2 = 1 within three regression errors.
    CHECK(std::abs(fit.slope - 1.0) < 3.0 * fit.slope_std_error);
}
