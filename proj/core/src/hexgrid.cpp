#include "cle/hexgrid.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>
#include <set>

namespace cle::hexgrid {

namespace {

int mod3(int b) { return ((b % 3) + 3) % 3; }

// Exact division helper; valid only when num is divisible by den.
int exact_div(int num, int den) {
    assert(num % den == 0);
    return num / den;
}

std::pair<int, int> ordered(int u, int v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }

}  // namespace

std::array<VertexKey, 3> lattice_neighbors(VertexKey v) {
    switch (mod3(v.b)) {
        case 1:
            return {{{v.a - 1, v.b + 1}, {v.a + 1, v.b + 1}, {v.a, v.b - 2}}};
        case 2:
            return {{{v.a - 1, v.b - 1}, {v.a + 1, v.b - 1}, {v.a, v.b + 2}}};
        default:
            throw std::logic_error("not a lattice vertex");
    }
}

std::array<Axial, 3> lattice_faces_at_vertex(VertexKey v) {
    if (mod3(v.b) == 1) {
        const int r = exact_div(v.b - 1, 3);
        return {{{exact_div(v.a + 1 - r, 2), r},
                 {exact_div(v.a - 1 - r, 2), r},
                 {exact_div(v.a - (r + 1), 2), r + 1}}};
    }
    if (mod3(v.b) == 2) {
        const int r = exact_div(v.b - 2, 3);
        return {{{exact_div(v.a - r, 2), r},
                 {exact_div(v.a + 1 - (r + 1), 2), r + 1},
                 {exact_div(v.a - 1 - (r + 1), 2), r + 1}}};
    }
    throw std::logic_error("not a lattice vertex");
}

std::array<Axial, 2> lattice_faces_of_edge(VertexKey u, VertexKey v) {
    const auto fu = lattice_faces_at_vertex(u);
    const auto fv = lattice_faces_at_vertex(v);
    std::array<Axial, 2> out{};
    int n = 0;
    for (const auto& a : fu)
        for (const auto& b : fv)
            if (a == b && n < 2) out[n++] = a;
    if (n != 2) throw std::logic_error("vertices are not lattice neighbors");
    return out;
}

int edge_direction(VertexKey u, VertexKey v) {
    const int da = v.a - u.a, db = v.b - u.b;
    if (da == 1 && db == 1) return 0;
    if (da == 0 && db == 2) return 1;
    if (da == -1 && db == 1) return 2;
    if (da == -1 && db == -1) return 3;
    if (da == 0 && db == -2) return 4;
    if (da == 1 && db == -1) return 5;
    throw std::logic_error("not a lattice edge");
}

Turn turn_direction(VertexKey u, VertexKey v, VertexKey w) {
    const int diff = (edge_direction(v, w) - edge_direction(u, v) + 6) % 6;
    if (diff == 1) return Turn::Left;
    if (diff == 5) return Turn::Right;
    throw std::logic_error("edges do not chain into a turn");
}

int HexPatch::face_index(Axial f) const {
    auto it = face_of_.find(f);
    return it == face_of_.end() ? -1 : it->second;
}

int HexPatch::vertex_index(VertexKey v) const {
    auto it = vertex_of_.find(v);
    return it == vertex_of_.end() ? -1 : it->second;
}

bool HexPatch::has_edge(int u, int v) const { return edge_of_.count(ordered(u, v)) > 0; }

int HexPatch::edge_index(int u, int v) const {
    auto it = edge_of_.find(ordered(u, v));
    return it == edge_of_.end() ? -1 : it->second;
}

std::array<int, 6> HexPatch::face_vertices(int i) const {
    std::array<int, 6> out{};
    for (int k = 0; k < 6; ++k) out[k] = vertex_index(corner(faces_[i], k));
    return out;
}

std::array<Cell, 2> HexPatch::edge_sides(int u, int v) const {
    const auto fs = lattice_faces_of_edge(vertices_[u], vertices_[v]);
    return {cell_of(fs[0]), cell_of(fs[1])};
}

Cell HexPatch::left_cell(int u, int v) const {
    const auto sides = edge_sides(u, v);
    const VertexKey pu = vertices_[u], pv = vertices_[v];
    for (const auto& c : sides) {
        const auto [cx, cy] = face_center(c.coord);
        const long long cross = (long long)(pv.a - pu.a) * (cy - pu.b) -
                                (long long)(pv.b - pu.b) * (cx - pu.a);
        if (cross > 0) return c;
    }
    return sides[1];
}

Cell HexPatch::pointed_cell(VertexKey tail, VertexKey head) const {
    const auto at_head = lattice_faces_at_vertex(head);
    const auto of_edge = lattice_faces_of_edge(tail, head);
    for (const auto& f : at_head)
        if (f != of_edge[0] && f != of_edge[1]) return cell_of(f);
    throw std::logic_error("pointed cell not found");
}

Cell HexPatch::pointed_cell(int tail, int head) const {
    return pointed_cell(vertices_[tail], vertices_[head]);
}

VertexKey HexPatch::outside_tail(int v) const {
    if (!is_boundary(v) || degree(v) != 2) throw NoDegreeTwoBoundaryVertex();
    for (const auto& nb : lattice_neighbors(vertices_[v])) {
        const int j = vertex_index(nb);
        if (j < 0 || !has_edge(v, j)) return nb;
    }
    throw std::logic_error("degree-2 vertex without outside edge");
}

std::pair<double, double> HexPatch::embedding(int v) const {
    return {vertices_[v].a * std::sqrt(3.0) / 2.0, vertices_[v].b * 0.5};
}

HexPatch HexPatch::build(std::vector<Axial> faces, int root_choice) {
    if (faces.empty()) throw Error("empty face set");
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());

    HexPatch p;
    p.faces_ = faces;
    for (int i = 0; i < int(faces.size()); ++i) p.face_of_[faces[i]] = i;

    // Connectivity of the face set.
    {
        std::set<Axial> seen{faces[0]};
        std::queue<Axial> q;
        q.push(faces[0]);
        while (!q.empty()) {
            const Axial f = q.front();
            q.pop();
            for (const Axial& nb : axial_neighbors(f))
                if (p.face_of_.count(nb) && !seen.count(nb)) {
                    seen.insert(nb);
                    q.push(nb);
                }
        }
        if (seen.size() != faces.size()) throw Disconnected();
    }

    // Simple connectivity: within a margin-1 bounding box, every non-face
    // cell must be reachable from the box ring.
    {
        int qlo = faces[0].q, qhi = faces[0].q, rlo = faces[0].r, rhi = faces[0].r;
        for (const auto& f : faces) {
            qlo = std::min(qlo, f.q);
            qhi = std::max(qhi, f.q);
            rlo = std::min(rlo, f.r);
            rhi = std::max(rhi, f.r);
        }
        --qlo, --rlo, ++qhi, ++rhi;
        auto in_box = [&](Axial f) {
            return f.q >= qlo && f.q <= qhi && f.r >= rlo && f.r <= rhi;
        };
        std::set<Axial> seen;
        std::queue<Axial> bfs;
        auto push_ring = [&](Axial f) {
            if (!p.face_of_.count(f) && !seen.count(f)) {
                seen.insert(f);
                bfs.push(f);
            }
        };
        for (int q = qlo; q <= qhi; ++q) {
            push_ring({q, rlo});
            push_ring({q, rhi});
        }
        for (int r = rlo; r <= rhi; ++r) {
            push_ring({qlo, r});
            push_ring({qhi, r});
        }
        while (!bfs.empty()) {
            const Axial f = bfs.front();
            bfs.pop();
            for (const Axial& nb : axial_neighbors(f))
                if (in_box(nb) && !p.face_of_.count(nb) && !seen.count(nb)) {
                    seen.insert(nb);
                    bfs.push(nb);
                }
        }
        std::size_t complement = 0;
        for (int q = qlo; q <= qhi; ++q)
            for (int r = rlo; r <= rhi; ++r)
                if (!p.face_of_.count({q, r})) ++complement;
        if (seen.size() != complement) throw NotSimplyConnected();
    }

    // Vertices and edges, indexed deterministically by face order.
    for (const auto& f : faces) {
        std::array<int, 6> vs{};
        for (int k = 0; k < 6; ++k) {
            const VertexKey v = corner(f, k);
            auto [it, inserted] = p.vertex_of_.try_emplace(v, int(p.vertices_.size()));
            if (inserted) p.vertices_.push_back(v);
            vs[k] = it->second;
        }
        for (int k = 0; k < 6; ++k) {
            const auto key = ordered(vs[k], vs[(k + 1) % 6]);
            if (p.edge_of_.try_emplace(key, int(p.edges_.size())).second)
                p.edges_.push_back(key);
        }
    }
    p.adj_.assign(p.vertices_.size(), {});
    for (const auto& [u, v] : p.edges_) {
        p.adj_[u].push_back(v);
        p.adj_[v].push_back(u);
    }
    for (auto& a : p.adj_) std::sort(a.begin(), a.end());

    // Boundary edges have exactly one incident patch face.
    std::vector<std::vector<int>> bd_adj(p.vertices_.size());
    for (const auto& [u, v] : p.edges_) {
        const auto sides = lattice_faces_of_edge(p.vertices_[u], p.vertices_[v]);
        const int inside = int(p.face_of_.count(sides[0])) + int(p.face_of_.count(sides[1]));
        assert(inside >= 1);
        if (inside == 1) {
            bd_adj[u].push_back(v);
            bd_adj[v].push_back(u);
        }
    }
    int start = -1;
    for (int v = 0; v < int(p.vertices_.size()); ++v) {
        if (bd_adj[v].empty()) continue;
        assert(bd_adj[v].size() == 2);
        if (start < 0 || p.vertices_[v] < p.vertices_[start]) start = v;
    }
    assert(start >= 0);
    std::vector<int> cycle{start};
    for (int prev = -1, cur = start;;) {
        const auto& nbs = bd_adj[cur];
        const int next = (nbs[0] == prev) ? nbs[1] : nbs[0];
        if (next == start) break;
        cycle.push_back(next);
        prev = cur;
        cur = next;
    }
    // Orient counterclockwise (positive shoelace area in doubled coords).
    long long area2 = 0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const VertexKey a = p.vertices_[cycle[i]];
        const VertexKey b = p.vertices_[cycle[(i + 1) % cycle.size()]];
        area2 += (long long)a.a * b.b - (long long)b.a * a.b;
    }
    if (area2 < 0) std::reverse(cycle.begin() + 1, cycle.end());

    if (root_choice < 0 || root_choice >= int(cycle.size())) throw NoDegreeTwoBoundaryVertex();
    std::rotate(cycle.begin(), cycle.begin() + root_choice, cycle.end());
    p.boundary_ = cycle;
    p.boundary_pos_.assign(p.vertices_.size(), -1);
    for (int i = 0; i < int(cycle.size()); ++i) p.boundary_pos_[cycle[i]] = i;

    p.root_ = cycle[0];
    if (p.degree(p.root_) != 2) throw NoDegreeTwoBoundaryVertex();
    p.entry_tail_ = p.outside_tail(p.root_);
    return p;
}

}  // namespace cle::hexgrid
