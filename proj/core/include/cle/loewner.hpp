#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cle/hexgrid.hpp"
#include "cle/stochastic.hpp"

namespace cle::loewner {

using Complex = std::complex<double>;

struct InadmissibleParams : hexgrid::Error {
    InadmissibleParams() : Error("inadmissible SLE_kappa(rho) parameters") {}
};

enum class Mode { Chordal, Radial };

struct DriverJump {
    std::size_t index = 0;
    double w_jump = 0.0;  // t~eps_i
    double o_jump = 0.0;  // eps^_i
};

// Sampled driving pair.  Chordal: W and O are real driving values.  Radial:
// W and O hold continuous angle lifts, so the driving point exp(i W[k]) has
// unit modulus exactly and hat_o(k) = W[k] - O[k] is the lifted angle gap.
struct Driver {
    Mode mode = Mode::Chordal;
    double dt = 0.0;
    std::vector<double> W;
    std::vector<double> O;  // empty for plain SLE drivers
    std::vector<DriverJump> jump_events;

    std::size_t steps() const { return W.empty() ? 0 : W.size() - 1; }
    Complex radial_w(std::size_t k) const { return std::polar(1.0, W[k]); }
    Complex radial_o(std::size_t k) const { return std::polar(1.0, O[k]); }
    double hat_o(std::size_t k) const { return W[k] - O[k]; }
};

struct TracePath {
    Mode mode = Mode::Chordal;
    double dt = 0.0;
    std::vector<Complex> points;
};

struct FlowResult {
    std::vector<Complex> trajectory;          // g_t(z) while alive
    std::optional<double> swallow_time;       // tau_z, when detected
    std::vector<double> log_abs_deriv;        // log|g_t'(z)| (radial only)
};

inline constexpr double kSwallowTol = 1e-6;

// Integrates dg = 2/(g - W) with piecewise-constant driving; each step is
// the exact vertical-slit map.
FlowResult chordal_forward(const Driver& d, Complex z, double until);

// Trace by composing the inverse slit maps; the hull capacity after k steps
// is k*dt/2*... exactly k*dt in half-plane capacity units.
TracePath chordal_trace(const Driver& d);

// Integrates dg = Psi(W, g), Psi(w,z) = -z (z+w)/(z-w), with RK4 substeps;
// also integrates the variational equation for log|g'(z)|.
FlowResult radial_forward(const Driver& d, Complex z, double until, int substeps = 10);

// Backward integration of the reversed radial field.
TracePath radial_trace(const Driver& d, int substeps = 10);

// Single trace point gamma(k dt) without computing the whole path.
Complex radial_tip(const Driver& d, std::size_t k, int substeps = 10);

Complex radial_field(Complex w, Complex z);       // Psi
Complex radial_field_dz(Complex w, Complex z);    // dPsi/dz

// Plain SLE_kappa driver: W = sqrt(kappa) B (chordal value or radial angle).
Driver sle_driver(double kappa, Mode mode, double dt, double T, uint64_t seed);

inline double sle_kr_delta(double kappa, double rho) {
    return 1.0 + 2.0 * (rho + 2.0) / kappa;
}

struct SleKrParams {
    double kappa = 6.0;
    double rho = 0.0;
    Mode mode = Mode::Chordal;
    bool eps_variant = false;
    double epsilon = 0.01;  // Bessel-scale jump size for the eps variant
    double beta = 1.0;
    double mu = 0.0;
    double x0 = 0.0;
};

// SLE_kappa(rho) driving pair.  The exact variant couples to the (skew)
// Bessel process with O = -(2/sqrt(kappa)) Y and W = O + sqrt(kappa) X; the
// eps variant evolves the ordinary diffusion between collisions and jumps
// at each collision (W by sqrt(k)rho/(rho+2) eps and O by -2/rho of that
// when rho < -2; only O, by sqrt(k) eps, when rho >= -2).
Driver sle_kr_driver(const SleKrParams& p, double dt, double T, uint64_t seed);

// Same, driven by caller-supplied Brownian increments (for couplings).
Driver sle_kr_driver_with_noise(const SleKrParams& p, double dt,
                                std::span<const double> increments, uint64_t coin_seed);

// Fraction of steps with |W - O| below tol (collision occupation).
double collision_time_fraction(const Driver& d, double tol);

}  // namespace cle::loewner
