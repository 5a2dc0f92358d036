#include "cle/loewner.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace cle::loewner {

namespace {

// Branch of sqrt(w^2 + c) mapping the upper half-plane to itself (c may be
// negative, giving the inverse slit map).
Complex slit_sqrt(Complex w, double c) {
    Complex r = std::sqrt(w * w + c);
    if (w.real() < 0.0) r = -r;
    return r;
}

}  // namespace

FlowResult chordal_forward(const Driver& d, Complex z, double until) {
    FlowResult out;
    Complex g = z;
    out.trajectory.push_back(g);
    const std::size_t n = d.steps();
    for (std::size_t k = 0; k < n && double(k) * d.dt < until; ++k) {
        const double u = d.W[k];
        if (std::abs(g - u) <= kSwallowTol) {
            out.swallow_time = double(k) * d.dt;
            break;
        }
        g = u + slit_sqrt(g - u, 4.0 * d.dt);
        out.trajectory.push_back(g);
        if (g.imag() <= kSwallowTol) {
            out.swallow_time = double(k + 1) * d.dt;
            break;
        }
    }
    return out;
}

TracePath chordal_trace(const Driver& d) {
    TracePath t;
    t.mode = Mode::Chordal;
    t.dt = d.dt;
    const std::size_t n = d.steps();
    t.points.reserve(n + 1);
    t.points.emplace_back(d.W[0], 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        Complex z(d.W[k], 0.0);
        for (std::size_t j = k; j >= 1; --j) {
            const double u = d.W[j];
            z = u + slit_sqrt(z - u, -4.0 * d.dt);
        }
        t.points.push_back(z);
    }
    return t;
}

Complex radial_field(Complex w, Complex z) { return -z * (z + w) / (z - w); }

Complex radial_field_dz(Complex w, Complex z) {
    const Complex diff = z - w;
    return -(z * z - 2.0 * z * w - w * w) / (diff * diff);
}

FlowResult radial_forward(const Driver& d, Complex z, double until, int substeps) {
    FlowResult out;
    Complex g = z;
    Complex p = 1.0;  // dg/dz along the trajectory
    out.trajectory.push_back(g);
    out.log_abs_deriv.push_back(0.0);
    const std::size_t n = d.steps();
    const double h = d.dt / substeps;
    for (std::size_t k = 0; k < n && double(k) * d.dt < until; ++k) {
        const Complex w = d.radial_w(k);
        if (std::abs(g - w) <= kSwallowTol) {
            out.swallow_time = double(k) * d.dt;
            break;
        }
        bool swallowed = false;
        for (int s = 0; s < substeps; ++s) {
            // RK4 on the pair (g, p).
            const Complex k1 = radial_field(w, g);
            const Complex l1 = radial_field_dz(w, g) * p;
            const Complex k2 = radial_field(w, g + 0.5 * h * k1);
            const Complex l2 = radial_field_dz(w, g + 0.5 * h * k1) * (p + 0.5 * h * l1);
            const Complex k3 = radial_field(w, g + 0.5 * h * k2);
            const Complex l3 = radial_field_dz(w, g + 0.5 * h * k2) * (p + 0.5 * h * l2);
            const Complex k4 = radial_field(w, g + h * k3);
            const Complex l4 = radial_field_dz(w, g + h * k3) * (p + h * l3);
            g += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            p += h / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
            if (std::abs(g - w) <= kSwallowTol) {
                out.swallow_time = double(k) * d.dt + (s + 1) * h;
                swallowed = true;
                break;
            }
        }
        if (swallowed) break;
        out.trajectory.push_back(g);
        out.log_abs_deriv.push_back(std::log(std::abs(p)));
    }
    return out;
}

Complex radial_tip(const Driver& d, std::size_t k, int substeps) {
    if (k == 0) return d.radial_w(0);
    const double h = d.dt / substeps;
    // Pull the tip back from time k to time 0.  The first backward substep
    // leaves the singular point radially, |v| ~ 1 - 2 sqrt(s) after
    // backward time s (the chordal local picture).
    Complex v = d.radial_w(k) * (1.0 - 2.0 * std::sqrt(h));
    for (std::size_t j = k; j >= 1; --j) {
        const Complex w = d.radial_w(j - 1);
        const int first = (j == k) ? 1 : 0;  // consumed by the offset
        for (int s = first; s < substeps; ++s) {
            const Complex k1 = radial_field(w, v);
            const Complex k2 = radial_field(w, v - 0.5 * h * k1);
            const Complex k3 = radial_field(w, v - 0.5 * h * k2);
            const Complex k4 = radial_field(w, v - h * k3);
            v -= h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    return v;
}

TracePath radial_trace(const Driver& d, int substeps) {
    TracePath t;
    t.mode = Mode::Radial;
    t.dt = d.dt;
    const std::size_t n = d.steps();
    t.points.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) t.points.push_back(radial_tip(d, k, substeps));
    return t;
}

Driver sle_driver(double kappa, Mode mode, double dt, double T, uint64_t seed) {
    if (kappa < 0.0 || dt <= 0.0 || T <= 0.0) throw InadmissibleParams();
    const std::size_t n = std::size_t(std::llround(T / dt));
    Rng rng(seed);
    Driver d;
    d.mode = mode;
    d.dt = dt;
    d.W.resize(n + 1);
    const double sk = std::sqrt(kappa), sdt = std::sqrt(dt);
    d.W[0] = 0.0;
    for (std::size_t k = 0; k < n; ++k) d.W[k + 1] = d.W[k] + sk * sdt * rng.normal();
    return d;
}

namespace {

void check_admissible(const SleKrParams& p) {
    const double delta = sle_kr_delta(p.kappa, p.rho);
    if (p.kappa <= 0.0) throw InadmissibleParams();
    if (p.beta < -1.0 || p.beta > 1.0) throw InadmissibleParams();
    // The fixed-epsilon approximation runs for any rho; only the exact
    // coupling needs a genuine Bessel dimension.
    if (p.eps_variant && p.mu == 0.0) return;
    if (!(delta > 0.0)) throw InadmissibleParams();
    const bool plain = p.beta == 1.0 && p.mu == 0.0 && delta != 1.0;
    const bool skew = delta < 2.0 && delta != 1.0 && p.mu == 0.0;
    const bool one = delta == 1.0 && p.beta == 0.0;
    if (!(plain || skew || one)) throw InadmissibleParams();
}

Driver chordal_kr(const SleKrParams& p, double dt, std::span<const double> incs,
                  uint64_t coin_seed) {
    const double delta = sle_kr_delta(p.kappa, p.rho);
    const double sk = std::sqrt(p.kappa);
    const std::size_t n = incs.size();
    Rng coins(coin_seed, 0x1234);
    Driver d;
    d.mode = Mode::Chordal;
    d.dt = dt;
    d.W.resize(n + 1);
    d.O.resize(n + 1);

    const double floor = 0.5 * std::sqrt(dt);
    const double half_dm1 = 0.5 * (delta - 1.0);
    const double p_plus = (1.0 + p.beta) / 2.0;
    const double o2 = p.rho < -2.0 ? -2.0 * sk / (p.rho + 2.0) : -sk;
    const double w2 = p.rho < -2.0 ? sk * p.rho / (p.rho + 2.0) : 0.0;

    if (!p.eps_variant && p.beta == 1.0 && p.mu == 0.0) {
        // Exact variant via the algebraic principal-value identity:
        // Y = (2/(delta-1)) (X - x0 - B), O = -(2/sqrt(k)) Y.
        double x = p.x0, b = 0.0;
        d.O[0] = 0.0;
        d.W[0] = sk * x;
        const double yc = 2.0 / (delta - 1.0);
        for (std::size_t k = 0; k < n; ++k) {
            double nx = x + half_dm1 * dt / std::max(x, floor) + incs[k];
            if (nx <= 0.0) nx = -nx;
            x = nx;
            b += incs[k];
            const double y = yc * (x - p.x0 - b);
            d.O[k + 1] = -(2.0 / sk) * y;
            d.W[k + 1] = d.O[k + 1] + sk * x;
        }
        return d;
    }

    // Eps variant (and the general-beta construction, realized with the
    // caller's epsilon): signed X with per-collision coins; O integrates
    // -(2/sqrt(k)) X^-1 between collisions and jumps per the coefficient
    // matrix.  W = O + sqrt(k) X throughout, which reproduces the W jump
    // sizes of the matrix exactly.
    const double eps = p.eps_variant ? p.epsilon : std::sqrt(dt);
    double x = p.x0;
    double o = 0.0;
    int sign = +1;
    if (x == 0.0) {
        sign = coins.bernoulli(p_plus) ? +1 : -1;
        x = sign * eps;
        o += sign * o2 * eps + p.mu * eps;
        d.jump_events.push_back({0, sign * w2 * eps, sign * o2 * eps});
    }
    d.O[0] = o;
    d.W[0] = o + sk * x;
    for (std::size_t k = 0; k < n; ++k) {
        const double ax = std::max(sign * x, floor);  // |X|, floored
        o += -(2.0 / sk) * sign * dt / ax;
        double nx = x + sign * half_dm1 * dt / ax + incs[k];
        if (sign * nx <= 0.0) {
            sign = coins.bernoulli(p_plus) ? +1 : -1;
            nx = sign * eps;
            o += sign * o2 * eps + p.mu * eps;
            d.jump_events.push_back({k + 1, sign * w2 * eps, sign * o2 * eps});
        }
        x = nx;
        d.O[k + 1] = o;
        d.W[k + 1] = o + sk * x;
    }
    return d;
}

Driver radial_kr(const SleKrParams& p, double dt, std::span<const double> incs,
                 uint64_t coin_seed) {
    const double sk = std::sqrt(p.kappa);
    const double two_pi = 2.0 * std::numbers::pi;
    const std::size_t n = incs.size();
    Rng coins(coin_seed, 0x4321);
    Driver d;
    d.mode = Mode::Radial;
    d.dt = dt;
    d.W.resize(n + 1);
    d.O.resize(n + 1);

    // theta = hat_o evolves by d theta = ((rho+2)/2) cot(theta/2) dt
    // + sqrt(kappa) dB between hits of the anchor multiple of 2pi; arg W
    // carries the (rho/2) cot share of the drift.  At a collision the jump
    // splits between arg W and arg O in the ratio of the matrix columns:
    // the theta jump u gives  d(arg W) = wshare u,  d(arg O) = oshare u,
    // with wshare - oshare = 1.
    const double eps_theta = (p.eps_variant ? p.epsilon : std::sqrt(dt)) * sk;
    const double p_plus = (1.0 + p.beta) / 2.0;
    const double wshare = p.rho < -2.0 ? p.rho / (p.rho + 2.0) : 0.0;
    const double oshare = wshare - 1.0;
    const bool reflect = !p.eps_variant;

    double theta = sk * p.x0;
    double wang = 0.0;
    long anchor = 0;

    auto restart = [&](double overshoot) {
        const int sgn = coins.bernoulli(p_plus) ? +1 : -1;
        const double off = (reflect && overshoot > 0.0) ? overshoot : eps_theta;
        const double target = double(anchor) * two_pi + sgn * off;
        const double u = target - theta;
        wang += wshare * u;
        theta = target;
        d.jump_events.push_back({0, wshare * u, oshare * u});
        return u;
    };

    if (theta == double(anchor) * two_pi) restart(0.0);
    if (!d.jump_events.empty()) d.jump_events.back().index = 0;
    d.W[0] = wang;
    d.O[0] = wang - theta;
    const double floor_theta = eps_theta / 10.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a2pi = double(anchor) * two_pi;
        double off = theta - a2pi;
        if (std::abs(off) < floor_theta) off = off < 0.0 ? -floor_theta : floor_theta;
        const double cot = 1.0 / std::tan(0.5 * off);
        wang += (p.rho / 2.0) * cot * dt + sk * incs[k];
        const double old_off = theta - a2pi;
        theta += ((p.rho + 2.0) / 2.0) * cot * dt + sk * incs[k];

        bool collided = false;
        if (theta - a2pi >= two_pi) {
            ++anchor;  // closure at the upper neighbouring multiple
            collided = true;
        } else if (theta - a2pi <= -two_pi) {
            --anchor;
            collided = true;
        } else if ((theta - a2pi) * old_off <= 0.0) {
            collided = true;
        }
        if (collided) {
            restart(std::abs(theta - double(anchor) * two_pi));
            d.jump_events.back().index = k + 1;
        }
        d.W[k + 1] = wang;
        d.O[k + 1] = wang - theta;
    }
    return d;
}

}  // namespace

Driver sle_kr_driver_with_noise(const SleKrParams& p, double dt,
                                std::span<const double> increments, uint64_t coin_seed) {
    check_admissible(p);
    return p.mode == Mode::Chordal ? chordal_kr(p, dt, increments, coin_seed)
                                   : radial_kr(p, dt, increments, coin_seed);
}

Driver sle_kr_driver(const SleKrParams& p, double dt, double T, uint64_t seed) {
    check_admissible(p);
    const std::size_t n = std::size_t(std::llround(T / dt));
    Rng rng(seed);
    std::vector<double> incs(n);
    const double sdt = std::sqrt(dt);
    for (auto& v : incs) v = sdt * rng.normal();
    return sle_kr_driver_with_noise(p, dt, incs, seed ^ 0x9e3779b97f4a7c15ULL);
}

double collision_time_fraction(const Driver& d, double tol) {
    if (d.O.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::size_t k = 0; k < d.W.size(); ++k)
        if (std::abs(d.W[k] - d.O[k]) < tol) ++hits;
    return double(hits) / double(d.W.size());
}

}  // namespace cle::loewner
