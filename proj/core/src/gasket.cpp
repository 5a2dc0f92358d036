#include "cle/gasket.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <numbers>
#include <thread>

#include "cle/rng.hpp"
#include "cle/stats.hpp"

namespace cle::gasket {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_params(double kappa, double beta, double epsilon) {
    if (!(kappa > 8.0 / 3.0) || !(kappa < 8.0)) throw InadmissibleParams();
    if (beta < -1.0 || beta > 1.0) throw InadmissibleParams();
    if (kappa == 4.0 && beta != 0.0) throw InadmissibleParams();
    if (!(epsilon > 0.0) || epsilon >= kTwoPi) throw InadmissibleParams();
}

// Shared stepper for the radial SLE_kappa(kappa-6) angle pair.  theta =
// anchor*2pi + off is the lifted angle gap arg W - arg O; wang is the
// lifted angle of W.  Restarts at the anchor use the epsilon scheme with
// the beta coin; reaching a neighbouring multiple moves the anchor.
struct CleStepper {
    double kappa, beta, epsilon, dt;
    Rng* rng;

    double drift_coef, snoise, floor, wshare, rho;
    double off = 0.0, wang = 0.0;
    long anchor = 0;
    double last_anchor_hit = 0.0;
    bool closed = false;  // set when the last step closed a loop
    std::size_t step_count = 0;

    CleStepper(double kappa_, double beta_, double epsilon_, double dt_, Rng* rng_)
        : kappa(kappa_), beta(beta_), epsilon(epsilon_), dt(dt_), rng(rng_) {
        rho = kappa - 6.0;
        drift_coef = 0.5 * (kappa - 4.0);
        snoise = std::sqrt(kappa * dt);
        floor = epsilon / 10.0;
        wshare = rho < -2.0 ? rho / (rho + 2.0) : 0.0;
        // theta_0 = 0 sits at the anchor: restart immediately.
        const double nf = coin();
        wang += wshare * nf;
        off = nf;
    }

    double coin() { return rng->bernoulli((1.0 + beta) / 2.0) ? epsilon : -epsilon; }
    double theta() const { return double(anchor) * kTwoPi + off; }
    double time() const { return double(step_count) * dt; }

    void step() {
        ++step_count;
        closed = false;
        const double prev = off;
        const double clamped = std::abs(off) < floor ? (off < 0.0 ? -floor : floor) : off;
        const double cot = 1.0 / std::tan(0.5 * clamped);
        const double noise = snoise * rng->normal();
        off += drift_coef * cot * dt + noise;
        wang += (rho / 2.0) * cot * dt + noise;
        if (off >= kTwoPi || off <= -kTwoPi) {
            anchor += off > 0.0 ? 1 : -1;
            off -= off > 0.0 ? kTwoPi : -kTwoPi;
            closed = true;
            restart();
        } else if (off == 0.0 || (off > 0.0) != (prev > 0.0)) {
            restart();
        }
    }

  private:
    void restart() {
        const double nf = coin();
        wang += wshare * (nf - off);
        off = nf;
        last_anchor_hit = time();
    }
};

template <class Fn>
void parallel_samples(std::size_t count, int jobs, Fn&& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

// First time |theta| hits 2pi from theta_0 = 0, without storing the path.
// Kept free of the stepper plumbing: this is the inner loop of the
// conformal-radius sampler.
double first_closure_time(double kappa, double beta, double epsilon, double dt, Rng& rng) {
    const double drift_coef = 0.5 * (kappa - 4.0);
    const double snoise = std::sqrt(kappa * dt);
    const double floor = epsilon / 10.0;
    const double p_plus = (1.0 + beta) / 2.0;
    double off = rng.bernoulli(p_plus) ? epsilon : -epsilon;
    std::size_t k = 0;
    if (drift_coef == 0.0) {
        while (true) {
            ++k;
            const double prev = off;
            off += snoise * rng.normal();
            if (off >= kTwoPi || off <= -kTwoPi) return double(k) * dt;
            if (off == 0.0 || (off > 0.0) != (prev > 0.0))
                off = rng.bernoulli(p_plus) ? epsilon : -epsilon;
        }
    }
    while (true) {
        ++k;
        const double prev = off;
        const double clamped = std::abs(off) < floor ? (off < 0.0 ? -floor : floor) : off;
        off += drift_coef / std::tan(0.5 * clamped) * dt + snoise * rng.normal();
        if (off >= kTwoPi || off <= -kTwoPi) return double(k) * dt;
        if (off == 0.0 || (off > 0.0) != (prev > 0.0))
            off = rng.bernoulli(p_plus) ? epsilon : -epsilon;
    }
}

}  // namespace

ThetaPath theta_path(double kappa, double beta, double epsilon, double dt, double t_max,
                     uint64_t seed) {
    check_params(kappa, beta, epsilon);
    const std::size_t n = std::size_t(std::llround(t_max / dt));
    Rng rng(seed);
    ThetaPath tp;
    tp.dt = dt;
    tp.kappa = kappa;
    tp.beta = beta;
    tp.epsilon = epsilon;
    tp.theta.reserve(n + 1);
    tp.anchor.reserve(n + 1);

    CleStepper st(kappa, beta, epsilon, dt, &rng);
    tp.theta.push_back(0.0);
    tp.anchor.push_back(0);
    for (std::size_t k = 0; k < n; ++k) {
        const double s_prev = st.last_anchor_hit;
        const long a_prev = st.anchor;
        st.step();
        if (st.closed) {
            tp.closures.push_back({s_prev, st.time(), st.anchor});
            (void)a_prev;
        }
        tp.theta.push_back(st.theta());
        tp.anchor.push_back(st.anchor);
    }
    return tp;
}

std::vector<double> conformal_radius_sample(double kappa, double beta, double epsilon,
                                            double dt, std::size_t count, uint64_t seed,
                                            int jobs) {
    check_params(kappa, beta, epsilon);
    std::vector<double> out(count);
    parallel_samples(count, jobs, [&](std::size_t i) {
        Rng rng(seed, i);
        out[i] = first_closure_time(kappa, beta, epsilon, dt, rng);
    });
    return out;
}

namespace {

RadiusSample nested_gaps(double kappa, double beta, double epsilon, double dt, int j_max,
                         Rng& rng) {
    CleStepper st(kappa, beta, epsilon, dt, &rng);
    RadiusSample rs;
    double t_prev = 0.0;
    while (int(rs.gaps.size()) < j_max) {
        st.step();
        if (st.closed) {
            rs.gaps.push_back(st.time() - t_prev);
            t_prev = st.time();
        }
    }
    rs.T = rs.gaps.front();
    return rs;
}

}  // namespace

RadiusSample nested_radius_sequence(double kappa, double beta, double epsilon, double dt,
                                    int j_max, uint64_t seed) {
    check_params(kappa, beta, epsilon);
    if (j_max < 1) throw InadmissibleParams();
    Rng rng(seed);
    return nested_gaps(kappa, beta, epsilon, dt, j_max, rng);
}

std::vector<RadiusSample> nested_radius_batch(double kappa, double beta, double epsilon,
                                              double dt, int j_max, std::size_t count,
                                              uint64_t seed, int jobs) {
    check_params(kappa, beta, epsilon);
    if (j_max < 1) throw InadmissibleParams();
    std::vector<RadiusSample> out(count);
    parallel_samples(count, jobs, [&](std::size_t i) {
        Rng rng(seed, i);
        out[i] = nested_gaps(kappa, beta, epsilon, dt, j_max, rng);
    });
    return out;
}

LoopArcs cle_loop_arcs(double kappa, double beta, double epsilon, double dt, int j_max,
                       uint64_t seed, int substeps) {
    check_params(kappa, beta, epsilon);
    if (j_max < 1) throw InadmissibleParams();
    Rng rng(seed);
    CleStepper st(kappa, beta, epsilon, dt, &rng);

    LoopArcs out;
    out.driver.mode = loewner::Mode::Radial;
    out.driver.dt = dt;
    out.driver.W.push_back(st.wang);
    out.driver.O.push_back(st.wang - st.theta());
    std::vector<ThetaPath::Closure> closures;
    while (int(closures.size()) < j_max) {
        const double s_prev = st.last_anchor_hit;
        st.step();
        if (st.closed) closures.push_back({s_prev, st.time(), st.anchor});
        out.driver.W.push_back(st.wang);
        out.driver.O.push_back(st.wang - st.theta());
    }

    out.trace = loewner::radial_trace(out.driver, substeps);
    for (const auto& c : closures) {
        LoopArc arc;
        arc.s = c.s;
        arc.t = c.t;
        const std::size_t lo = std::size_t(std::llround(c.s / dt));
        const std::size_t hi = std::size_t(std::llround(c.t / dt));
        for (std::size_t i = lo + 1; i <= hi && i < out.trace.points.size(); ++i)
            arc.points.push_back(out.trace.points[i]);
        out.arcs.push_back(std::move(arc));
    }
    return out;
}

namespace {

// Mobius automorphism of the disk with phi(0) = z and phi(1) = 1.
struct DiskMobius {
    Complex rot{1.0}, a{0.0};

    static DiskMobius make(Complex z) {
        DiskMobius m;
        if (std::abs(z) < 1e-15) return m;
        m.rot = (1.0 - z) / (1.0 - std::conj(z));
        m.a = z / m.rot;
        return m;
    }
    Complex apply(Complex w) const { return rot * (w + a) / (1.0 + std::conj(a) * w); }
    Complex inverse(Complex u) const {
        const Complex v = u / rot;
        return (v - a) / (1.0 - std::conj(a) * v);
    }
    Complex derivative(Complex w) const {
        const Complex den = 1.0 + std::conj(a) * w;
        return rot * (1.0 - std::norm(a)) / (den * den);
    }
};

}  // namespace

TargetInvarianceReport target_invariance_check(double kappa, Complex z1, Complex z2,
                                               double epsilon, double dt, std::size_t count,
                                               uint64_t seed) {
    const double beta = kappa > 4.0 ? 1.0 : 0.0;
    check_params(kappa, beta, epsilon);
    const double cap_threshold = 0.4;

    // Explore toward `target`; stop when the capacity seen from the
    // physical origin reaches the threshold, and record the physical tip.
    auto run_frame = [&](Complex target, Complex other, uint64_t s,
                         std::vector<double>& tip_angles) {
        const DiskMobius phi = DiskMobius::make(target);
        const Complex w0 = phi.inverse(0.0);
        const Complex w_other = phi.inverse(other);
        // (1-|w0|^2)|phi'(w0)| = 1, so log|phi'(w0)| = -log(1-|w0|^2).
        const double log_dphi0 = -std::log(1.0 - std::norm(w0));
        for (std::size_t i = 0; i < count; ++i) {
            Rng rng(s, i);
            CleStepper st(kappa, beta, epsilon, dt, &rng);
            loewner::Driver drv;
            drv.mode = loewner::Mode::Radial;
            drv.dt = dt;
            drv.W.push_back(st.wang);
            Complex u = w0, p = 1.0;
            Complex uo = w_other;
            while (true) {
                const Complex w = std::polar(1.0, st.wang);
                st.step();
                drv.W.push_back(st.wang);
                const int sub = 4;
                const double h = dt / sub;
                for (int ss = 0; ss < sub; ++ss) {
                    const Complex k1 = loewner::radial_field(w, u);
                    const Complex l1 = loewner::radial_field_dz(w, u) * p;
                    const Complex k2 = loewner::radial_field(w, u + 0.5 * h * k1);
                    const Complex l2 =
                        loewner::radial_field_dz(w, u + 0.5 * h * k1) * (p + 0.5 * h * l1);
                    const Complex k3 = loewner::radial_field(w, u + 0.5 * h * k2);
                    const Complex l3 =
                        loewner::radial_field_dz(w, u + 0.5 * h * k2) * (p + 0.5 * h * l2);
                    const Complex k4 = loewner::radial_field(w, u + h * k3);
                    const Complex l4 = loewner::radial_field_dz(w, u + h * k3) * (p + h * l3);
                    u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                    p += h / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
                    const Complex m1 = loewner::radial_field(w, uo);
                    const Complex m2 = loewner::radial_field(w, uo + 0.5 * h * m1);
                    const Complex m3 = loewner::radial_field(w, uo + 0.5 * h * m2);
                    const Complex m4 = loewner::radial_field(w, uo + h * m3);
                    uo += h / 6.0 * (m1 + 2.0 * m2 + 2.0 * m3 + m4);
                }
                if (std::abs(uo - w) <= loewner::kSwallowTol) break;  // other target swallowed
                // Conformal radius of the physical complement from 0:
                // cr = (1-|u|^2)/|g'(w0)| * |phi'(w0)|, relative to t=0.
                const double cap =
                    -(std::log((1.0 - std::norm(u)) / std::abs(p)) + log_dphi0);
                if (cap >= cap_threshold) {
                    const Complex tip = phi.apply(loewner::radial_tip(drv, drv.steps(), 6));
                    tip_angles.push_back(std::arg(tip));
                    break;
                }
            }
        }
    };

    TargetInvarianceReport rep;
    rep.count = count;
    rep.capacity_threshold = cap_threshold;
    std::vector<double> tips1, tips2;
    run_frame(z1, z2, seed, tips1);
    run_frame(z2, z1, seed ^ 0xabcdefULL, tips2);
    const auto ks = stats::ks_test(tips1, tips2);
    rep.ks_tip_angle = ks.statistic;
    rep.ks_p_tip_angle = ks.p_value;
    // Secondary observable: the tip's distance from the boundary point 1.
    std::vector<double> d1, d2;
    for (double a : tips1) d1.push_back(std::abs(a));
    for (double a : tips2) d2.push_back(std::abs(a));
    const auto ks2 = stats::ks_test(d1, d2);
    rep.ks_stop_time = ks2.statistic;
    rep.ks_p_stop_time = ks2.p_value;
    return rep;
}

}  // namespace cle::gasket
