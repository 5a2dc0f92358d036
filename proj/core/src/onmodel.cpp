#include "cle/onmodel.hpp"

#include <cmath>
#include <stdexcept>

namespace cle::onmodel {

double on_log_weight(const Coloring& c, const OnParams& p) {
    if (p.n <= 0.0 || p.x <= 0.0) throw OutOfRange();
    const auto e = loops::loops_from_coloring(c);
    return double(e.loop_count()) * std::log(p.n) + double(e.total_edges()) * std::log(p.x);
}

namespace {

Coloring coloring_from_mask(const hexgrid::HexPatch& patch, uint32_t mask,
                            const BoundaryCondition& bc) {
    std::vector<std::uint8_t> black(patch.num_faces(), 0);
    for (int f = 0; f < patch.num_faces(); ++f) black[f] = (mask >> f) & 1;
    return Coloring(patch, std::move(black), bc);
}

}  // namespace

ExactDistribution on_exact_distribution(const hexgrid::HexPatch& patch, const OnParams& p) {
    const int nf = patch.num_faces();
    if (nf > 20) throw TooLarge();
    const uint32_t count = uint32_t(1) << nf;
    std::vector<double> logw(count);
    double max_logw = -1e300;
    for (uint32_t m = 0; m < count; ++m) {
        logw[m] = on_log_weight(coloring_from_mask(patch, m, p.bc), p);
        max_logw = std::max(max_logw, logw[m]);
    }
    ExactDistribution d;
    d.probability.resize(count);
    double z = 0.0;
    for (uint32_t m = 0; m < count; ++m) z += std::exp(logw[m] - max_logw);
    for (uint32_t m = 0; m < count; ++m)
        d.probability[m] = std::exp(logw[m] - max_logw) / z;
    d.log_partition = max_logw + std::log(z);
    return d;
}

namespace {

struct Chain {
    const hexgrid::HexPatch* patch;
    OnParams params;
    Coloring state;
    double log_weight;
    Rng rng;

    Chain(const hexgrid::HexPatch& p, const OnParams& op, uint64_t seed)
        : patch(&p),
          params(op),
          state(p, std::vector<std::uint8_t>(p.num_faces(), 0), op.bc),
          log_weight(on_log_weight(state, op)),
          rng(seed) {}

    void propose() {
        const int f = int(rng() % uint64_t(patch->num_faces()));
        Coloring next = state.with_flipped(f);
        const double lw = on_log_weight(next, params);
        if (lw >= log_weight || rng.uniform() < std::exp(lw - log_weight)) {
            state = std::move(next);
            log_weight = lw;
        }
    }

    uint32_t mask() const {
        uint32_t m = 0;
        for (int f = 0; f < patch->num_faces(); ++f)
            if (state.black()[f]) m |= uint32_t(1) << f;
        return m;
    }
};

}  // namespace

Coloring on_mcmc_sample(const hexgrid::HexPatch& patch, const OnParams& p, int sweeps,
                        uint64_t seed) {
    if (sweeps < 1) throw OutOfRange();
    Chain chain(patch, p, seed);
    const long proposals = long(sweeps) * patch.num_faces();
    for (long i = 0; i < proposals; ++i) chain.propose();
    return chain.state;
}

std::vector<double> on_mcmc_state_frequencies(const hexgrid::HexPatch& patch, const OnParams& p,
                                              long proposals, uint64_t seed) {
    if (patch.num_faces() > 20) throw TooLarge();
    Chain chain(patch, p, seed);
    const long burn_in = proposals / 2;
    std::vector<long> counts(std::size_t(1) << patch.num_faces(), 0);
    for (long i = 0; i < proposals; ++i) {
        chain.propose();
        if (i >= burn_in) ++counts[chain.mask()];
    }
    std::vector<double> freq(counts.size());
    const double total = double(proposals - burn_in);
    for (std::size_t i = 0; i < counts.size(); ++i) freq[i] = double(counts[i]) / total;
    return freq;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

double critical_x(double n) {
    if (!(n > 0.0) || n > 2.0) throw OutOfRange();
    return 1.0 / std::sqrt(2.0 + std::sqrt(2.0 - n));
}

}  // namespace cle::onmodel
