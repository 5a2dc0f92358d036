#include <doctest.h>

#include <cmath>
#include <set>

#include "cle/builtin_patches.hpp"
#include "cle/onmodel.hpp"
#include "cle/stats.hpp"

using namespace cle;
using namespace cle::onmodel;
using hexgrid::HexPatch;

namespace {

Coloring mask_coloring(const HexPatch& p, uint32_t mask) {
    std::vector<std::uint8_t> black(p.num_faces());
    for (int f = 0; f < p.num_faces(); ++f) black[f] = (mask >> f) & 1;
    return Coloring(p, std::move(black));
}

}  // namespace

TEST_CASE("log weight of simple configurations") {
    const auto p = HexPatch::build({{0, 0}});
    OnParams params{2.0, 0.5, loops::AllWhiteOutside{}};
    CHECK(on_log_weight(mask_coloring(p, 0), params) == doctest::Approx(0.0));
    // One loop of six edges: n * x^6 = 2 * 0.5^6.
    CHECK(on_log_weight(mask_coloring(p, 1), params) ==
          doctest::Approx(std::log(2.0 * std::pow(0.5, 6))));
}

TEST_CASE("weight via loops equals weight via tree complement") {
    // N(A) = |E_L \ T(A)| and L(A) = |E_L|: cross-check the Hamiltonian
    // against the tree formulation, exhaustively on the flower.
    const auto p = HexPatch::build(hexgrid::flower_faces());
    for (uint32_t m = 0; m < (1u << 7); ++m) {
        const auto c = mask_coloring(p, m);
        const auto e = loops::loops_from_coloring(c);
        const auto t = loops::exploration_tree(c);
        std::set<std::pair<int, int>> tree_edges;
        for (int v = 0; v < p.num_vertices(); ++v)
            if (t.parent[v] >= 0) tree_edges.insert(std::minmax(t.parent[v], v));
        std::size_t in_loops = 0, off_tree = 0;
        for (const auto& loop : e.loops)
            for (const auto& de : loop) {
                ++in_loops;
                if (!tree_edges.count(std::minmax(de.tail, de.head))) ++off_tree;
            }
        CHECK(off_tree == e.loop_count());
        CHECK(in_loops == e.total_edges());
    }
}

TEST_CASE("exact distribution on the lone hexagon") {
    const auto p = HexPatch::build({{0, 0}});
    {
        const auto d = on_exact_distribution(p, {1.0, 1.0, loops::AllWhiteOutside{}});
        CHECK(d.probability[1] == doctest::Approx(0.5));
    }
    {
        const auto d = on_exact_distribution(p, {2.0, 0.5, loops::AllWhiteOutside{}});
        CHECK(d.probability[1] == doctest::Approx(0.03125 / 1.03125));
        double sum = 0.0;
        for (double v : d.probability) sum += v;
        CHECK(sum == doctest::Approx(1.0));
    }
}

TEST_CASE("uniform chain has half-half marginals") {
    const auto p = HexPatch::build({{0, 0}, {1, 0}});
    const auto freq = on_mcmc_state_frequencies(p, {1.0, 1.0, loops::AllWhiteOutside{}},
                                                200000, 11);
    double m0 = 0.0;
    for (std::size_t s = 0; s < freq.size(); ++s)
        if (s & 1) m0 += freq[s];
    // 3 s.e. with an effective-sample cushion for chain autocorrelation.
    CHECK(std::abs(m0 - 0.5) < 0.02);
}

TEST_CASE("MCMC matches the exact distribution in total variation") {
    const auto p = HexPatch::build(hexgrid::rhombus_faces(2));
    OnParams params{1.5, 0.6, loops::AllWhiteOutside{}};
    const auto freq = on_mcmc_state_frequencies(p, params, 400000, 5);
    const auto exact = on_exact_distribution(p, params);
    CHECK(total_variation(freq, exact.probability) < 0.02);
}

TEST_CASE("stationary frequencies respect the weight ratio") {
    const auto p = HexPatch::build({{0, 0}});
    OnParams params{2.0, 0.5, loops::AllWhiteOutside{}};
    const auto exact = on_exact_distribution(p, params);
    const auto freq = on_mcmc_state_frequencies(p, params, 400000, 19);
    const double ratio = freq[1] / freq[0];
    const double want = exact.probability[1] / exact.probability[0];
    CHECK(std::abs(ratio - want) < 0.007);
}

TEST_CASE("chordal boundary condition weights count the path in L only") {
    const auto p = HexPatch::build(hexgrid::rhombus_faces(2));
    const auto& cyc = p.boundary_cycle();
    loops::ChordalArc arc{p.root(), cyc[cyc.size() / 2]};
    OnParams params{2.0, 0.5, arc};
    const Coloring c(p, std::vector<std::uint8_t>(4, 0), arc);
    const auto e = loops::loops_from_coloring(c);
    CHECK(e.loop_count() == 0);
    CHECK(e.chordal_path.size() > 0);
    CHECK(on_log_weight(c, params) ==
          doctest::Approx(double(e.chordal_path.size()) * std::log(0.5)));
}

TEST_CASE("critical x formula") {
    CHECK(critical_x(2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(critical_x(1.0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    double prev = 0.0;
    for (int k = 1; k <= 40; ++k) {
        const double x = critical_x(k / 20.0);
        CHECK(x > prev);
        prev = x;
    }
    CHECK_THROWS_AS(critical_x(0.0), OutOfRange);
    CHECK_THROWS_AS(critical_x(2.5), OutOfRange);
}

TEST_CASE("exact distribution size guard") {
    const auto p = HexPatch::build(hexgrid::rhombus_faces(5));  // 25 faces
    CHECK_THROWS_AS(on_exact_distribution(p, {1.0, 1.0, loops::AllWhiteOutside{}}), TooLarge);
}
