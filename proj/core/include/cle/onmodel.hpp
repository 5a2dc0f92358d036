#pragma once

#include <cstdint>
#include <vector>

#include "cle/loops.hpp"
#include "cle/rng.hpp"

namespace cle::onmodel {

using loops::BoundaryCondition;
using loops::Coloring;

struct OutOfRange : hexgrid::Error {
    OutOfRange() : Error("parameter out of range") {}
};
struct TooLarge : hexgrid::Error {
    TooLarge() : Error("patch too large for exact enumeration") {}
};

// O(n) loop-model parameters: configurations weighted n^N x^L.
struct OnParams {
    double n = 1.0;
    double x = 1.0;
    BoundaryCondition bc = loops::AllWhiteOutside{};
};

// N log n + L log x, with N the loop count and L the total number of
// separating edges (the chordal interface path counts toward L only).
double on_log_weight(const Coloring& c, const OnParams& p);

struct ExactDistribution {
    std::vector<double> probability;  // indexed by coloring bitmask
    double log_partition = 0.0;
};

// Normalized table over all 2^|F| colorings (|F| <= 20).
ExactDistribution on_exact_distribution(const hexgrid::HexPatch& patch, const OnParams& p);

// Single-face-flip Metropolis chain started all white; one sweep proposes
// |F| uniformly chosen flips.  Returns the final state.
Coloring on_mcmc_sample(const hexgrid::HexPatch& patch, const OnParams& p, int sweeps,
                        uint64_t seed);

// Runs the chain and accumulates the empirical state distribution after
// burn-in (half the proposals).  Requires |F| <= 20.
std::vector<double> on_mcmc_state_frequencies(const hexgrid::HexPatch& patch, const OnParams& p,
                                              long proposals, uint64_t seed);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

// x_c = [2 + (2-n)^(1/2)]^(-1/2) for 0 < n <= 2.
double critical_x(double n);

}  // namespace cle::onmodel
