#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cle/loewner.hpp"

namespace cle::gasket {

using loewner::Complex;
using loewner::InadmissibleParams;

// arg W - arg O lifted angle of a radial SLE_kappa(kappa-6) exploration,
// with the epsilon-restart reflection scheme at anchor multiples of 2pi.
struct ThetaPath {
    double dt = 0.0;
    double kappa = 0.0, beta = 0.0, epsilon = 0.0;
    std::vector<double> theta;
    std::vector<long> anchor;  // last multiple of 2pi hit, per step
    struct Closure {
        double s = 0.0;  // last prior hit of the old anchor multiple
        double t = 0.0;  // first hit of the neighbouring multiple
        long new_anchor = 0;
    };
    std::vector<Closure> closures;
};

// Euler integration of d theta = (kappa-4)/2 cot(theta/2) dt + sqrt(k) dB
// between multiples of 2pi; on hitting the anchor multiple the path
// restarts at anchor +- epsilon (positive sign with probability
// (1+beta)/2); reaching a neighbouring multiple is a loop-closure event and
// moves the anchor.
ThetaPath theta_path(double kappa, double beta, double epsilon, double dt, double t_max,
                     uint64_t seed);

// First times the reflected angle hits 2pi from theta_0 = 0: minus the log
// conformal radius of the first loop's complementary component.  Samples
// are independent streams of the master seed, so the result is identical
// for any job count.
std::vector<double> conformal_radius_sample(double kappa, double beta, double epsilon,
                                            double dt, std::size_t count, uint64_t seed,
                                            int jobs = 1);

struct RadiusSample {
    double T = 0.0;              // equals gaps.front()
    std::vector<double> gaps;    // successive -log conformal radius increments
};

RadiusSample nested_radius_sequence(double kappa, double beta, double epsilon, double dt,
                                    int j_max, uint64_t seed);
std::vector<RadiusSample> nested_radius_batch(double kappa, double beta, double epsilon,
                                              double dt, int j_max, std::size_t count,
                                              uint64_t seed, int jobs = 1);

struct LoopArc {
    double s = 0.0, t = 0.0;
    std::vector<Complex> points;  // trace between s and t
};

struct LoopArcs {
    loewner::Driver driver;
    loewner::TracePath trace;
    std::vector<LoopArc> arcs;
};

// Radial SLE_kappa(kappa-6) exploration run until j_max closure events; the
// trace segment between s_j and t_j is the partially traced j-th loop.
LoopArcs cle_loop_arcs(double kappa, double beta, double epsilon, double dt, int j_max,
                       uint64_t seed, int substeps = 10);

struct TargetInvarianceReport {
    std::size_t count = 0;
    double capacity_threshold = 0.0;
    double ks_tip_angle = 0.0;    // law of the tip angle at fixed capacity
    double ks_p_tip_angle = 1.0;
    double ks_stop_time = 0.0;    // law of the frame time at that capacity
    double ks_p_stop_time = 1.0;
};

// Statistical comparison of explorations targeted at z1 versus z2: each is
// generated in its own target frame and compared through frame-independent
// observables (tip position and capacity seen from the origin), stopped
// before either target is swallowed.
TargetInvarianceReport target_invariance_check(double kappa, Complex z1, Complex z2,
                                               double epsilon, double dt, std::size_t count,
                                               uint64_t seed);

}  // namespace cle::gasket
