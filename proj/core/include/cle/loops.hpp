#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "cle/hexgrid.hpp"
#include "cle/rng.hpp"

namespace cle::loops {

using hexgrid::Axial;
using hexgrid::Cell;
using hexgrid::HexPatch;
using hexgrid::Turn;
using hexgrid::VertexKey;

struct NotBranchSeparated : hexgrid::Error {
    NotBranchSeparated() : Error("tree is not branch-separated") {}
};
struct IntervalNesting : hexgrid::Error {
    IntervalNesting() : Error("maximal-interval assumption violated") {}
};
struct InvalidChordalArc : hexgrid::Error {
    InvalidChordalArc() : Error("chordal arc endpoints invalid") {}
};

struct AllWhiteOutside {};
struct ChordalArc {
    int a = -1, b = -1;  // boundary vertex indices; outside faces along the
                         // clockwise arc from a to b are black
};
using BoundaryCondition = std::variant<AllWhiteOutside, ChordalArc>;

// A face coloring of a patch plus the boundary condition for the faces
// outside the patch.
class Coloring {
  public:
    Coloring(const HexPatch& patch, std::vector<std::uint8_t> black,
             BoundaryCondition bc = AllWhiteOutside{});

    const HexPatch& patch() const { return *patch_; }
    const std::vector<std::uint8_t>& black() const { return black_; }
    const BoundaryCondition& boundary_condition() const { return bc_; }
    bool chordal() const { return std::holds_alternative<ChordalArc>(bc_); }

    bool is_black(const Cell& c) const;
    Coloring with_flipped(int face) const;

  private:
    const HexPatch* patch_;
    std::vector<std::uint8_t> black_;
    BoundaryCondition bc_;
    std::map<Axial, bool> outside_black_;  // only under ChordalArc
};

Coloring make_coloring(const HexPatch& patch, const std::vector<int>& black_faces,
                       BoundaryCondition bc = AllWhiteOutside{});

// Directed edge between adjacent patch vertices.
struct DirEdge {
    int tail = -1, head = -1;
    bool operator==(const DirEdge&) const = default;
};

// Loops and (under a chordal arc) the open interface path.  Loop edges are
// directed with black on the left, so a loop is counterclockwise exactly
// when black is inside.
struct LoopEnsemble {
    std::vector<std::vector<DirEdge>> loops;
    std::vector<DirEdge> chordal_path;  // empty unless chordal
    std::size_t loop_count() const { return loops.size(); }             // N
    std::size_t total_edges() const;                                    // L
};

LoopEnsemble loops_from_coloring(const Coloring& c);

enum class TurnRecord : std::uint8_t { Left, Right, ForcedLeft, ForcedRight };

inline bool is_left(TurnRecord t) {
    return t == TurnRecord::Left || t == TurnRecord::ForcedLeft;
}
inline bool is_forced(TurnRecord t) {
    return t == TurnRecord::ForcedLeft || t == TurnRecord::ForcedRight;
}

struct BranchPoint {
    int vertex = -1;
    int proper_child = -1;
};

// Rooted out-directed spanning tree with per-vertex turn records.
// turn[v] is the turn taken at v's parent when first entering v; for the
// root's child the pivot edge is the entry edge e0.
struct ExplorationTree {
    const HexPatch* patch = nullptr;
    int root = -1;
    std::vector<int> parent;          // -1 at root
    std::vector<TurnRecord> turn;     // undefined at root
    std::vector<int> order;           // discovery index, realizes the < relation
    std::vector<int> by_order;        // vertex at each discovery index
    std::vector<BranchPoint> branch_points;

    std::vector<int> path_to(int v) const;  // root..v
};

// The non-self-intersecting exploration path from the root to target:
// turn right after an edge pointing to black, left after white, unless the
// choice would disconnect the target, in which case the turn is forced.
std::vector<int> exploration_path(const Coloring& c, int target);

// Depth-first realization of the union of all exploration paths.
ExplorationTree exploration_tree(const Coloring& c);

// Inverse of exploration_tree on branch-separated trees.
Coloring coloring_from_tree(const HexPatch& patch, const ExplorationTree& t);

// Spanning tree given by parent links (parent[root] = -1).
bool is_branch_separated(const HexPatch& patch, const std::vector<int>& parent, int root);
// Exhaustive definition check over all connected vertex subsets (|V| <= 16).
bool is_branch_separated_exhaustive(const HexPatch& patch, const std::vector<int>& parent,
                                    int root);

// Reconstruction of the boundary exploration path from the all-white loop
// ensemble, by splicing loop arcs over maximal intervals of the clockwise
// boundary path from the root to target.
std::vector<int> boundary_path_from_loops(const Coloring& c, const LoopEnsemble& e,
                                          int target);

struct RenewalTimes {
    std::vector<int> indices;  // steps k with monochromatic determined boundary
    // excursions[i]: separating edges strictly after indices[i] and up to
    // indices[i+1] (the last excursion ends at the final step).
    std::vector<std::vector<DirEdge>> excursions;
};
RenewalTimes renewal_times(const Coloring& c, int target);

struct OrientationAssignment {
    // +1 = counterclockwise, -1 = clockwise, per loop of the ensemble.
    std::vector<int> loop_orientation;
    std::vector<int> nesting_parent;  // enclosing loop index or -1
    std::vector<int> depth;
    // Isolated vertices (in no loop) and their orientations.
    std::vector<int> isolated_vertices;
    std::vector<int> isolated_orientation;
};

// Variant-1 orientation: outermost loops counterclockwise with probability
// (1+beta)/2, nested loops oriented like their smallest enclosing loop with
// probability (1-beta)/2.
OrientationAssignment orient_loops(const HexPatch& patch, const LoopEnsemble& e, double beta,
                                   Rng& rng);

struct HeightFunction {
    std::vector<int> values;  // per face
    int base_face = 0;
    int base_value = 0;
};

// h(f) - h(f0) = left turns minus right turns along the tree path to the
// first-hit vertex of f, counted from the entry edge.  root_position moves
// the root counterclockwise along the boundary cycle; heights are then
// offset by the rotation constant so that different roots are comparable.
HeightFunction height_function(const Coloring& c, int root_position = 0);

// Turn count of the outside walk from the entry edge at the default root to
// the entry edge at boundary position root_position (counterclockwise).
int rotation_constant(const HexPatch& patch, int root_position);

}  // namespace cle::loops
