#include "cle/loops.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace cle::loops {

namespace {

int sign_of(Turn t) { return t == Turn::Left ? +1 : -1; }
int sign_of(TurnRecord t) { return is_left(t) ? +1 : -1; }

TurnRecord record(Turn t, bool forced) {
    if (t == Turn::Left) return forced ? TurnRecord::ForcedLeft : TurnRecord::Left;
    return forced ? TurnRecord::ForcedRight : TurnRecord::Right;
}

}  // namespace

Coloring::Coloring(const HexPatch& patch, std::vector<std::uint8_t> black, BoundaryCondition bc)
    : patch_(&patch), black_(std::move(black)), bc_(std::move(bc)) {
    if (int(black_.size()) != patch.num_faces())
        throw hexgrid::Error("coloring size mismatch");
    if (const auto* arc = std::get_if<ChordalArc>(&bc_)) {
        if (arc->a == arc->b || !patch.is_boundary(arc->a) || !patch.is_boundary(arc->b))
            throw InvalidChordalArc();
        // Outside faces along the clockwise boundary arc from a to b are
        // black; the rest stay white.  The boundary cycle is stored
        // counterclockwise, so walk it in reverse.
        const auto& cyc = patch.boundary_cycle();
        const int n = int(cyc.size());
        const int pa = patch.boundary_position(arc->a);
        const int pb = patch.boundary_position(arc->b);
        auto outside_cell_of_edge = [&](int u, int v) -> std::optional<Axial> {
            const auto sides = patch.edge_sides(u, v);
            if (sides[0].outside() == sides[1].outside()) return std::nullopt;
            return sides[0].outside() ? sides[0].coord : sides[1].coord;
        };
        for (int p = pa; p != pb; p = (p - 1 + n) % n) {
            const int u = cyc[p], v = cyc[(p - 1 + n) % n];
            if (auto cell = outside_cell_of_edge(u, v)) outside_black_[*cell] = true;
        }
        for (int p = pb; p != pa; p = (p - 1 + n) % n) {
            const int u = cyc[p], v = cyc[(p - 1 + n) % n];
            if (auto cell = outside_cell_of_edge(u, v)) {
                // A face bordering both arcs keeps the black assignment.
                outside_black_.try_emplace(*cell, false);
            }
        }
    }
}

bool Coloring::is_black(const Cell& c) const {
    if (!c.outside()) return black_[c.face] != 0;
    if (std::holds_alternative<AllWhiteOutside>(bc_)) return false;
    auto it = outside_black_.find(c.coord);
    return it != outside_black_.end() && it->second;
}

Coloring Coloring::with_flipped(int face) const {
    std::vector<std::uint8_t> b = black_;
    b[face] ^= 1;
    return Coloring(*patch_, std::move(b), bc_);
}

Coloring make_coloring(const HexPatch& patch, const std::vector<int>& black_faces,
                       BoundaryCondition bc) {
    std::vector<std::uint8_t> black(patch.num_faces(), 0);
    for (int f : black_faces) black.at(f) = 1;
    return Coloring(patch, std::move(black), std::move(bc));
}

std::size_t LoopEnsemble::total_edges() const {
    std::size_t n = chordal_path.size();
    for (const auto& l : loops) n += l.size();
    return n;
}

LoopEnsemble loops_from_coloring(const Coloring& c) {
    const HexPatch& patch = c.patch();
    // Separating edges, directed with black on the left.
    std::vector<DirEdge> sep;
    for (const auto& [u, v] : patch.edges()) {
        const auto sides = patch.edge_sides(u, v);
        if (c.is_black(sides[0]) == c.is_black(sides[1])) continue;
        if (c.is_black(patch.left_cell(u, v)))
            sep.push_back({u, v});
        else
            sep.push_back({v, u});
    }
    std::vector<int> out_edge(patch.num_vertices(), -1);
    std::vector<int> in_count(patch.num_vertices(), 0);
    for (int i = 0; i < int(sep.size()); ++i) {
        assert(out_edge[sep[i].tail] < 0);
        out_edge[sep[i].tail] = i;
        ++in_count[sep[i].head];
    }

    LoopEnsemble e;
    std::vector<bool> used(sep.size(), false);
    auto walk = [&](int start_edge) {
        std::vector<DirEdge> run;
        for (int i = start_edge; i >= 0 && !used[i]; i = out_edge[sep[i].head]) {
            used[i] = true;
            run.push_back(sep[i]);
        }
        return run;
    };
    // Under a chordal arc the interface path runs between the two points
    // where the boundary colors change; its first edge is the one whose
    // tail has no incoming separating edge.
    for (int i = 0; i < int(sep.size()); ++i)
        if (!used[i] && in_count[sep[i].tail] == 0) {
            assert(e.chordal_path.empty());
            e.chordal_path = walk(i);
        }
    for (int i = 0; i < int(sep.size()); ++i)
        if (!used[i]) {
            auto loop = walk(i);
            assert(loop.back().head == loop.front().tail);
            e.loops.push_back(std::move(loop));
        }
    assert(c.chordal() || e.chordal_path.empty());
    return e;
}

namespace {

// Shared exploration-step chooser.  Returns the next vertex among the
// unvisited neighbors of cur, applying the pointed-face color rule with the
// connectivity escape, plus whether the step was forced and which cell (if
// any) the free decision revealed.
struct StepChoice {
    int next = -1;
    bool forced = false;
    std::optional<Cell> revealed;
};

bool reachable(const HexPatch& patch, int from, int to, const std::vector<char>& blocked) {
    if (from == to) return true;
    std::vector<char> seen(patch.num_vertices(), 0);
    std::queue<int> q;
    q.push(from);
    seen[from] = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int w : patch.neighbors(v)) {
            if (w == to) return true;
            if (!blocked[w] && !seen[w]) {
                seen[w] = 1;
                q.push(w);
            }
        }
    }
    return false;
}

StepChoice choose_step(const Coloring& c, VertexKey prev_key, int cur, int target,
                       const std::vector<char>& visited) {
    const HexPatch& patch = c.patch();
    StepChoice out;
    int cands[3];
    int n = 0;
    for (int w : patch.neighbors(cur))
        if (!visited[w]) cands[n++] = w;
    if (n == 0) throw std::logic_error("exploration dead end");
    if (n == 1) {
        out.next = cands[0];
        return out;
    }
    assert(n == 2);
    const Cell pointed = patch.pointed_cell(prev_key, patch.vertex(cur));
    const Turn want = c.is_black(pointed) ? Turn::Right : Turn::Left;
    int preferred = cands[0], other = cands[1];
    if (hexgrid::turn_direction(prev_key, patch.vertex(cur), patch.vertex(preferred)) != want)
        std::swap(preferred, other);
    if (reachable(patch, preferred, target, visited)) {
        out.next = preferred;
        out.revealed = pointed;
    } else {
        out.next = other;
        out.forced = true;
    }
    return out;
}

struct TracedPath {
    std::vector<int> vertices;
    // revealed[k] is the cell whose color determined the step into
    // vertices[k+1], when that step was a free two-way decision.
    std::vector<std::optional<Cell>> revealed;
};

TracedPath explore_with_trace(const Coloring& c, int target) {
    const HexPatch& patch = c.patch();
    TracedPath tp;
    const int root = patch.root();
    tp.vertices.push_back(root);
    if (target == root) return tp;
    std::vector<char> visited(patch.num_vertices(), 0);
    visited[root] = 1;
    VertexKey prev_key = patch.entry_tail();
    int cur = root;
    while (cur != target) {
        const StepChoice sc = choose_step(c, prev_key, cur, target, visited);
        tp.revealed.push_back(sc.revealed);
        prev_key = patch.vertex(cur);
        cur = sc.next;
        visited[cur] = 1;
        tp.vertices.push_back(cur);
    }
    return tp;
}

}  // namespace

std::vector<int> exploration_path(const Coloring& c, int target) {
    return explore_with_trace(c, target).vertices;
}

std::vector<int> ExplorationTree::path_to(int v) const {
    std::vector<int> path;
    for (int u = v; u >= 0; u = parent[u]) path.push_back(u);
    std::reverse(path.begin(), path.end());
    assert(path.front() == root);
    return path;
}

namespace {

ExplorationTree explore_tree_from(const Coloring& c, int root, VertexKey entry_tail) {
    const HexPatch& patch = c.patch();
    const int n = patch.num_vertices();
    ExplorationTree t;
    t.patch = &patch;
    t.root = root;
    t.parent.assign(n, -1);
    t.turn.assign(n, TurnRecord::Left);
    t.order.assign(n, -1);
    t.by_order.reserve(n);

    struct Frame {
        int vertex;
        VertexKey prev_key;  // tail of the edge that entered vertex
        int cand[2] = {-1, -1};
        int n_cand = 0;
        int tried = 0;
    };

    auto make_frame = [&](int v, VertexKey prev_key) {
        Frame f;
        f.vertex = v;
        f.prev_key = prev_key;
        int cands[3];
        int m = 0;
        for (int w : patch.neighbors(v))
            if (t.order[w] < 0) cands[m++] = w;
        if (m == 0) return f;
        if (m == 1) {
            f.cand[0] = cands[0];
            f.n_cand = 1;
            return f;
        }
        // Order candidates preferred-first by the pointed-face color rule.
        const Cell pointed = patch.pointed_cell(prev_key, patch.vertex(v));
        const Turn want = c.is_black(pointed) ? Turn::Right : Turn::Left;
        int preferred = cands[0], other = cands[1];
        if (hexgrid::turn_direction(prev_key, patch.vertex(v), patch.vertex(preferred)) != want)
            std::swap(preferred, other);
        f.cand[0] = preferred;
        f.cand[1] = other;
        f.n_cand = 2;
        return f;
    };

    t.order[root] = 0;
    t.by_order.push_back(root);
    std::vector<Frame> stack;
    stack.push_back(make_frame(root, entry_tail));
    std::vector<int> n_children(n, 0);
    std::vector<int> first_child(n, -1);

    while (!stack.empty()) {
        Frame& f = stack.back();
        int next = -1;
        bool forced = false;
        while (f.tried < f.n_cand) {
            const int w = f.cand[f.tried];
            forced = (f.n_cand == 2 && f.tried == 1);
            ++f.tried;
            if (t.order[w] < 0) {
                next = w;
                break;
            }
        }
        if (next < 0) {
            stack.pop_back();
            continue;
        }
        const int v = f.vertex;
        t.parent[next] = v;
        t.turn[next] = record(
            hexgrid::turn_direction(f.prev_key, patch.vertex(v), patch.vertex(next)), forced);
        t.order[next] = int(t.by_order.size());
        t.by_order.push_back(next);
        if (n_children[v]++ == 0) first_child[v] = next;
        stack.push_back(make_frame(next, patch.vertex(v)));
    }

    assert(int(t.by_order.size()) == n);
    assert(n_children[root] == 1);
    for (int v = 0; v < n; ++v)
        if (v != root && n_children[v] == 2)
            t.branch_points.push_back({v, first_child[v]});
    return t;
}

}  // namespace

ExplorationTree exploration_tree(const Coloring& c) {
    return explore_tree_from(c, c.patch().root(), c.patch().entry_tail());
}

bool is_branch_separated(const HexPatch& patch, const std::vector<int>& parent, int root) {
    const int n = patch.num_vertices();
    std::vector<std::vector<int>> children(n);
    for (int v = 0; v < n; ++v)
        if (parent[v] >= 0) children[parent[v]].push_back(v);
    for (int v = 0; v < n; ++v) {
        if (children[v].size() < 2) continue;
        if (v == root) return false;
        // Children must lie in distinct components of the complement of the
        // root path through v.
        std::vector<char> blocked(n, 0);
        for (int u = v; u >= 0; u = parent[u]) blocked[u] = 1;
        if (reachable(patch, children[v][0], children[v][1], blocked)) return false;
    }
    return true;
}

bool is_branch_separated_exhaustive(const HexPatch& patch, const std::vector<int>& parent,
                                    int root) {
    const int n = patch.num_vertices();
    if (n > 16) throw std::invalid_argument("exhaustive check limited to 16 vertices");
    // ancestor[v] = bitmask of the tree path from the root to v, inclusive.
    std::vector<uint32_t> ancestor(n, 0);
    for (int v = 0; v < n; ++v) {
        for (int u = v; u >= 0; u = parent[u]) ancestor[v] |= uint32_t(1) << u;
        (void)root;
    }
    for (uint32_t mask = 1; mask < (uint32_t(1) << n); ++mask) {
        // Connected?
        const int seed = std::countr_zero(mask);
        uint32_t seen = uint32_t(1) << seed;
        std::queue<int> q;
        q.push(seed);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int w : patch.neighbors(v)) {
                const uint32_t bit = uint32_t(1) << w;
                if ((mask & bit) && !(seen & bit)) {
                    seen |= bit;
                    q.push(w);
                }
            }
        }
        if (seen != mask) continue;
        // Count minimal vertices of the subset under the tree order.
        int minimal = 0;
        for (int v = 0; v < n; ++v) {
            if (!(mask & (uint32_t(1) << v))) continue;
            const uint32_t below = ancestor[v] & mask & ~(uint32_t(1) << v);
            if (below == 0) ++minimal;
        }
        if (minimal != 1) return false;
    }
    return true;
}

Coloring coloring_from_tree(const HexPatch& patch, const ExplorationTree& t) {
    if (!is_branch_separated(patch, t.parent, t.root)) throw NotBranchSeparated();
    std::vector<std::uint8_t> black(patch.num_faces(), 0);
    for (int f = 0; f < patch.num_faces(); ++f) {
        const auto vs = patch.face_vertices(f);
        int v = vs[0], w = -1;
        for (int u : vs)
            if (t.order[u] < t.order[v]) v = u;
        for (int u : vs)
            if (u != v && (w < 0 || t.order[u] < t.order[w])) w = u;
        // The root path to w turns right after hitting v iff f is black.
        const auto path = t.path_to(w);
        auto it = std::find(path.begin(), path.end(), v);
        assert(it != path.end() && it + 1 != path.end());
        black[f] = is_left(t.turn[*(it + 1)]) ? 0 : 1;
    }
    return Coloring(patch, std::move(black), AllWhiteOutside{});
}

std::vector<int> boundary_path_from_loops(const Coloring& c, const LoopEnsemble& e,
                                          int target) {
    const HexPatch& patch = c.patch();
    if (c.chordal()) throw hexgrid::Error("boundary_path_from_loops needs all-white outside");
    if (!patch.is_boundary(target) || target == patch.root())
        throw hexgrid::Error("target must be a non-root boundary vertex");

    // Clockwise boundary path P from the root to target.
    const auto& cyc = patch.boundary_cycle();
    const int n = int(cyc.size());
    std::vector<int> P{patch.root()};
    for (int p = n - 1; cyc[(p + 1) % n] != target; --p) P.push_back(cyc[p]);
    const int m = int(P.size()) - 1;  // edge count
    std::vector<int> pos_in_P(patch.num_vertices(), -1);
    for (int i = 0; i <= m; ++i) pos_in_P[P[i]] = i;
    std::set<std::pair<int, int>> p_edges;
    for (int i = 0; i < m; ++i) p_edges.insert(std::minmax(P[i], P[i + 1]));

    struct Interval {
        int first, last, loop;
    };
    std::vector<Interval> iv;
    for (int li = 0; li < int(e.loops.size()); ++li) {
        const auto& loop = e.loops[li];
        bool shares_edge = false;
        int first = m + 1, last = -1;
        for (const auto& de : loop) {
            if (p_edges.count(std::minmax(de.tail, de.head))) shares_edge = true;
            const int p = pos_in_P[de.tail];
            if (p >= 0) {
                first = std::min(first, p);
                last = std::max(last, p);
            }
        }
        if (shares_edge) iv.push_back({first, last, li});
    }
    // Keep only maximal intervals.
    std::vector<Interval> maximal;
    for (const auto& a : iv) {
        bool contained = false;
        for (const auto& b : iv)
            if (b.loop != a.loop && b.first <= a.first && a.last <= b.last) contained = true;
        if (!contained) maximal.push_back(a);
    }
    std::sort(maximal.begin(), maximal.end(),
              [](const Interval& a, const Interval& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < maximal.size(); ++i)
        if (maximal[i].first <= maximal[i - 1].last) throw IntervalNesting();

    // The arc of the loop from P[first] to P[last] that avoids the edges of
    // P, as a vertex path.
    auto arc_of = [&](const Interval& in) {
        const auto& loop = e.loops[in.loop];
        const int len = int(loop.size());
        int start = -1;
        for (int i = 0; i < len; ++i)
            if (loop[i].tail == P[in.first]) start = i;
        assert(start >= 0);
        auto collect = [&](bool forward) {
            std::vector<int> verts{P[in.first]};
            bool clean = true;
            int i = forward ? start : (start - 1 + len) % len;
            while (true) {
                const auto& de = loop[i];
                const int from = forward ? de.tail : de.head;
                const int to = forward ? de.head : de.tail;
                assert(verts.back() == from);
                if (p_edges.count(std::minmax(from, to))) clean = false;
                verts.push_back(to);
                if (to == P[in.last]) break;
                i = forward ? (i + 1) % len : (i - 1 + len) % len;
            }
            return std::pair{verts, clean};
        };
        auto [fwd, fwd_clean] = collect(true);
        if (fwd_clean) return fwd;
        auto [bwd, bwd_clean] = collect(false);
        if (!bwd_clean) throw IntervalNesting();
        return bwd;
    };

    std::vector<int> Q{P[0]};
    std::size_t next_iv = 0;
    int p = 0;
    while (p < m) {
        if (next_iv < maximal.size() && maximal[next_iv].first == p) {
            const auto arc = arc_of(maximal[next_iv]);
            Q.insert(Q.end(), arc.begin() + 1, arc.end());
            p = maximal[next_iv].last;
            ++next_iv;
        } else {
            Q.push_back(P[p + 1]);
            ++p;
        }
    }
    return Q;
}

RenewalTimes renewal_times(const Coloring& c, int target) {
    const HexPatch& patch = c.patch();
    const TracedPath tp = explore_with_trace(c, target);
    const int steps = int(tp.vertices.size()) - 1;

    std::vector<char> visited(patch.num_vertices(), 0);
    std::map<Axial, bool> revealed;  // cell -> is dark (actual color)

    RenewalTimes rt;
    std::vector<int> renewal_steps;
    for (int k = 0; k <= steps; ++k) {
        if (k > 0) {
            visited[tp.vertices[k - 1]] = 1;
            if (tp.revealed[k - 1])
                revealed[tp.revealed[k - 1]->coord] = c.is_black(*tp.revealed[k - 1]);
        }
        std::vector<char> vis = visited;
        vis[tp.vertices[k]] = 1;  // remove v_0..v_k
        // Component of the target among the unvisited vertices.
        std::vector<int> comp;
        if (k < steps) {
            std::queue<int> q;
            q.push(target);
            std::vector<char> seen(patch.num_vertices(), 0);
            seen[target] = 1;
            while (!q.empty()) {
                const int v = q.front();
                q.pop();
                comp.push_back(v);
                for (int w : patch.neighbors(v))
                    if (!vis[w] && !seen[w]) {
                        seen[w] = 1;
                        q.push(w);
                    }
            }
        }
        // Determined faces incident to the component must be one color.
        bool mono = true;
        int seen_color = -1;
        for (int v : comp) {
            for (const Axial& f : hexgrid::lattice_faces_at_vertex(patch.vertex(v))) {
                const Cell cell = patch.cell_of(f);
                int color;
                if (cell.outside()) {
                    color = c.is_black(cell) ? 1 : 0;
                } else if (auto it = revealed.find(f); it != revealed.end()) {
                    color = it->second ? 1 : 0;
                } else {
                    continue;
                }
                if (seen_color < 0)
                    seen_color = color;
                else if (seen_color != color)
                    mono = false;
            }
            if (!mono) break;
        }
        if (mono) renewal_steps.push_back(k);
    }

    rt.indices = renewal_steps;
    for (std::size_t i = 0; i + 1 < renewal_steps.size(); ++i) {
        std::vector<DirEdge> exc;
        for (int j = renewal_steps[i]; j < renewal_steps[i + 1]; ++j) {
            const int u = tp.vertices[j], v = tp.vertices[j + 1];
            const auto sides = patch.edge_sides(u, v);
            if (c.is_black(sides[0]) != c.is_black(sides[1])) exc.push_back({u, v});
        }
        rt.excursions.push_back(std::move(exc));
    }
    return rt;
}

namespace {

// Exact point-in-polygon on doubled lattice coordinates.
bool inside_polygon(VertexKey pt, const std::vector<VertexKey>& poly) {
    bool in = false;
    const int n = int(poly.size());
    for (int i = 0; i < n; ++i) {
        const VertexKey u = poly[i], w = poly[(i + 1) % n];
        if ((u.b > pt.b) == (w.b > pt.b)) continue;
        // x-coordinate of the crossing minus pt.a, times sign(w.b - u.b):
        const long long num = (long long)(u.a - pt.a) * (w.b - u.b) +
                              (long long)(pt.b - u.b) * (w.a - u.a);
        if ((w.b - u.b > 0 ? num : -num) > 0) in = !in;
    }
    return in;
}

}  // namespace

OrientationAssignment orient_loops(const HexPatch& patch, const LoopEnsemble& e, double beta,
                                   Rng& rng) {
    const int nl = int(e.loops.size());
    std::vector<std::vector<VertexKey>> polys(nl);
    std::vector<char> on_loop(patch.num_vertices(), 0);
    for (int i = 0; i < nl; ++i) {
        for (const auto& de : e.loops[i]) {
            polys[i].push_back(patch.vertex(de.tail));
            on_loop[de.tail] = 1;
        }
    }
    OrientationAssignment oa;
    oa.loop_orientation.assign(nl, 0);
    oa.nesting_parent.assign(nl, -1);
    oa.depth.assign(nl, 0);
    for (int i = 0; i < nl; ++i)
        for (int j = 0; j < nl; ++j)
            if (i != j && inside_polygon(polys[i].front(), polys[j])) ++oa.depth[i];
    // Immediate parent: the containing loop of greatest depth.
    for (int i = 0; i < nl; ++i) {
        int best = -1;
        for (int j = 0; j < nl; ++j) {
            if (i == j || !inside_polygon(polys[i].front(), polys[j])) continue;
            if (best < 0 || oa.depth[j] > oa.depth[best]) best = j;
        }
        oa.nesting_parent[i] = best;
    }

    const double p_ccw = (1.0 + beta) / 2.0;
    const double p_same = (1.0 - beta) / 2.0;
    std::vector<int> by_depth(nl);
    for (int i = 0; i < nl; ++i) by_depth[i] = i;
    std::sort(by_depth.begin(), by_depth.end(),
              [&](int a, int b) { return std::pair(oa.depth[a], a) < std::pair(oa.depth[b], b); });
    for (int i : by_depth) {
        if (oa.nesting_parent[i] < 0) {
            oa.loop_orientation[i] = rng.bernoulli(p_ccw) ? +1 : -1;
        } else {
            const int par = oa.loop_orientation[oa.nesting_parent[i]];
            oa.loop_orientation[i] = rng.bernoulli(p_same) ? par : -par;
        }
    }
    for (int v = 0; v < patch.num_vertices(); ++v) {
        if (on_loop[v]) continue;
        oa.isolated_vertices.push_back(v);
        int best = -1;
        for (int j = 0; j < nl; ++j) {
            if (!inside_polygon(patch.vertex(v), polys[j])) continue;
            if (best < 0 || oa.depth[j] > oa.depth[best]) best = j;
        }
        int orient;
        if (best < 0) {
            orient = rng.bernoulli(p_same) ? -1 : +1;
        } else {
            orient = rng.bernoulli(p_same) ? oa.loop_orientation[best]
                                           : -oa.loop_orientation[best];
        }
        oa.isolated_orientation.push_back(orient);
    }
    return oa;
}

// Height turns are counted in the orientation in which the monotonicity
// and rotation statements hold; that is the mirror of the orientation the
// exploration rule is written in, so a tree-label Right counts as +1 here
// and "counterclockwise" root motion walks the boundary cycle in reverse.
int rotation_constant(const HexPatch& patch, int root_position) {
    if (root_position == 0) return 0;
    const auto& cyc = patch.boundary_cycle();
    const int n = int(cyc.size());
    if (root_position < 0 || root_position >= n)
        throw hexgrid::NoDegreeTwoBoundaryVertex();
    VertexKey prev = patch.entry_tail();
    VertexKey cur = patch.vertex(cyc[0]);
    int turns = 0;
    for (int i = 1; i <= root_position; ++i) {
        const VertexKey nxt = patch.vertex(cyc[(n - i) % n]);
        turns -= sign_of(hexgrid::turn_direction(prev, cur, nxt));
        prev = cur;
        cur = nxt;
    }
    const VertexKey exit = patch.outside_tail(cyc[(n - root_position) % n]);
    turns -= sign_of(hexgrid::turn_direction(prev, cur, exit));
    // Half turn from the outgoing outside edge to the new entry edge.
    return turns + 3;
}

HeightFunction height_function(const Coloring& c, int root_position) {
    const HexPatch& patch = c.patch();
    const auto& cyc = patch.boundary_cycle();
    const int n = int(cyc.size());
    if (root_position < 0 || root_position >= n)
        throw hexgrid::NoDegreeTwoBoundaryVertex();
    const int root = cyc[(n - root_position) % n];
    const VertexKey tail = patch.outside_tail(root);
    const ExplorationTree t = explore_tree_from(c, root, tail);

    std::vector<int> tc(patch.num_vertices(), 0);
    for (int idx = 1; idx < int(t.by_order.size()); ++idx) {
        const int v = t.by_order[idx];
        tc[v] = tc[t.parent[v]] - sign_of(t.turn[v]);
    }

    HeightFunction h;
    h.base_value = rotation_constant(patch, root_position);
    h.values.assign(patch.num_faces(), 0);
    for (int f = 0; f < patch.num_faces(); ++f) {
        const auto vs = patch.face_vertices(f);
        int v = vs[0];
        for (int u : vs)
            if (t.order[u] < t.order[v]) v = u;
        h.values[f] = tc[v] + h.base_value;
    }
    for (const Axial& f : hexgrid::lattice_faces_at_vertex(patch.vertex(root))) {
        const int fi = patch.face_index(f);
        if (fi >= 0) h.base_face = fi;
    }
    return h;
}

}  // namespace cle::loops
