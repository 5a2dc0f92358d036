#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cle::hexgrid {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Disconnected : Error {
    Disconnected() : Error("face set is disconnected") {}
};
struct NotSimplyConnected : Error {
    NotSimplyConnected() : Error("face set is not simply connected") {}
};
struct NoDegreeTwoBoundaryVertex : Error {
    NoDegreeTwoBoundaryVertex() : Error("root_choice is not a degree-2 boundary vertex") {}
};

// Axial face coordinate on the pointy-top hexagonal lattice.
struct Axial {
    int q = 0, r = 0;
    auto operator<=>(const Axial&) const = default;
};

// Lattice vertex in doubled coordinates: the embedding of vertex (a,b) is
// (a*sqrt(3)/2, b/2) with unit edge length.  Every corner of every hexagon
// has integer (a,b), so vertex identity is exact.
struct VertexKey {
    int a = 0, b = 0;
    auto operator<=>(const VertexKey&) const = default;
};

// Face center of (q,r) in the same doubled units.
inline std::pair<int, int> face_center(Axial f) { return {2 * f.q + f.r, 3 * f.r}; }

// Corner offsets from the face center, counterclockwise starting at the top.
inline constexpr std::array<std::pair<int, int>, 6> kCornerOffset = {
    {{0, 2}, {-1, 1}, {-1, -1}, {0, -2}, {1, -1}, {1, 1}}};

inline VertexKey corner(Axial f, int k) {
    auto [cx, cy] = face_center(f);
    return {cx + kCornerOffset[k].first, cy + kCornerOffset[k].second};
}

inline std::array<Axial, 6> axial_neighbors(Axial f) {
    return {{{f.q + 1, f.r},
             {f.q, f.r + 1},
             {f.q - 1, f.r + 1},
             {f.q - 1, f.r},
             {f.q, f.r - 1},
             {f.q + 1, f.r - 1}}};
}

// The three lattice neighbors of a vertex.  b mod 3 distinguishes the two
// vertex orientations of the honeycomb.
std::array<VertexKey, 3> lattice_neighbors(VertexKey v);

// The three lattice faces meeting at a vertex.
std::array<Axial, 3> lattice_faces_at_vertex(VertexKey v);

// The two lattice faces bordering the edge {u,v}.  u and v must be lattice
// neighbors.
std::array<Axial, 2> lattice_faces_of_edge(VertexKey u, VertexKey v);

// Direction class of a lattice edge u->v, 0..5 counterclockwise:
// 0 = 30 deg, 1 = 90 deg, ..., 5 = 330 deg.
int edge_direction(VertexKey u, VertexKey v);

enum class Turn : int { Left = +1, Right = -1 };

// Geometric turn of the chained edge pair (u->v, v->w).
Turn turn_direction(VertexKey u, VertexKey v, VertexKey w);

// A face identifier that may lie outside the patch.
struct Cell {
    Axial coord{};
    int face = -1;  // patch face index, or -1 for OUTSIDE
    bool outside() const { return face < 0; }
};

class HexPatch {
  public:
    // Faces must be non-empty, connected and simply connected.  root_choice
    // indexes the boundary cycle (counterclockwise, starting at the
    // lexicographically smallest boundary vertex before rotation).
    static HexPatch build(std::vector<Axial> faces, int root_choice = 0);

    int num_faces() const { return int(faces_.size()); }
    int num_vertices() const { return int(vertices_.size()); }
    int num_edges() const { return int(edges_.size()); }

    const std::vector<Axial>& faces() const { return faces_; }
    Axial face(int i) const { return faces_[i]; }
    int face_index(Axial f) const;  // -1 if outside
    const std::vector<VertexKey>& vertices() const { return vertices_; }
    VertexKey vertex(int i) const { return vertices_[i]; }
    int vertex_index(VertexKey v) const;  // -1 if absent

    // Neighbors of vertex i inside the patch graph (2 or 3 entries).
    const std::vector<int>& neighbors(int i) const { return adj_[i]; }
    int degree(int i) const { return int(adj_[i].size()); }
    bool has_edge(int u, int v) const;

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int edge_index(int u, int v) const;  // -1 if absent

    // Boundary cycle, counterclockwise, rotated to start at the root.
    const std::vector<int>& boundary_cycle() const { return boundary_; }
    bool is_boundary(int v) const { return boundary_pos_[v] >= 0; }
    int boundary_position(int v) const { return boundary_pos_[v]; }

    int root() const { return root_; }
    // Tail of the entry edge e0: the lattice vertex outside the patch whose
    // edge points to the root.
    VertexKey entry_tail() const { return entry_tail_; }
    // Entry-style edge for any degree-2 boundary vertex (used when the root
    // is moved along the boundary).
    VertexKey outside_tail(int v) const;

    // The six vertex indices of face i, counterclockwise.
    std::array<int, 6> face_vertices(int i) const;

    // The two cells bordering edge {u,v}.
    std::array<Cell, 2> edge_sides(int u, int v) const;
    // The cell on the left of the directed edge u->v.
    Cell left_cell(int u, int v) const;

    // The unique face meeting the head of the directed edge (tail->head)
    // that is not incident to the edge itself.  tail may be outside the
    // patch; head must be a patch vertex.
    Cell pointed_cell(VertexKey tail, VertexKey head) const;
    Cell pointed_cell(int tail, int head) const;

    Cell cell_of(Axial f) const { return Cell{f, face_index(f)}; }

    // Planar embedding (unit edge length; y up).
    std::pair<double, double> embedding(int v) const;

  private:
    std::vector<Axial> faces_;
    std::map<Axial, int> face_of_;
    std::vector<VertexKey> vertices_;
    std::map<VertexKey, int> vertex_of_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
    std::map<std::pair<int, int>, int> edge_of_;
    std::vector<int> boundary_;
    std::vector<int> boundary_pos_;
    int root_ = 0;
    VertexKey entry_tail_{};
};

}  // namespace cle::hexgrid
