#pragma once

// The eps-grid and enumeration of candidate cell maps: assignments of every
// topology node to a grid cell, anchored on an occupied cell of the
// component's first terminal and pruned by tree-distance consistency.
//
// Works in scaled coordinates (decision radius 1). Every feasible placement
// phi with all tree edges <= 1 is respected by some yielded map: each
// representative point (phi-image or terminal witness) moves along tree
// paths of unit-length edges, so cell centers of any two nodes sit within
// pathLen + 2*eps of each other, and every candidate list below includes
// the true cell.

#include "circular_domain.hpp"
#include "mst_topology.hpp"

#include <unordered_set>

namespace ebst {

struct CellMap {
    std::vector<GridCell> cells;  // indexed by topology-local node id
};

namespace detail {

struct CellKey {
    long long ix, iy;
    bool operator==(const CellKey& o) const { return ix == o.ix && iy == o.iy; }
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const {
        return std::hash<long long>()(k.ix * 1000003LL + k.iy);
    }
};

/// Hop counts between all node pairs of a tree topology.
inline std::vector<std::vector<int>> tree_distances(const Topology& t) {
    const int n = t.nodes();
    auto adj = t.adjacency();
    std::vector<std::vector<int>> d(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int src = 0; src < n; ++src) {
        auto& row = d[static_cast<std::size_t>(src)];
        row[static_cast<std::size_t>(src)] = 0;
        std::vector<int> queue{src};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (row[static_cast<std::size_t>(v)] < 0) {
                    row[static_cast<std::size_t>(v)] = row[static_cast<std::size_t>(u)] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    return d;
}

}  // namespace detail

/// Occupied cells (closed squares, so border points occupy several) of one
/// forest component, deduplicated, in deterministic order.
inline std::vector<GridCell> occupied_cells(const std::vector<Point>& scaledPoints,
                                            const std::vector<int>& component, double eps,
                                            const Tolerance& tol = kTol) {
    std::vector<GridCell> out;
    std::unordered_set<detail::CellKey, detail::CellKeyHash> seen;
    for (int idx : component) {
        for (const GridCell& c : cells_containing(scaledPoints[static_cast<std::size_t>(idx)],
                                                  eps, tol)) {
            if (seen.insert({c.ix, c.iy}).second) out.push_back(c);
        }
    }
    return out;
}

/// Enumerate cell maps for one component topology. `visit` is called with
/// each complete map and returns true to stop (first-feasible-wins); the
/// function returns true when stopped early. With `prune` false only the
/// anchor-radius bounds are applied (test hook mirroring the plain
/// enumeration over the anchor-radius envelope).
template <typename Visit>
bool enumerate_cell_maps(const std::vector<Point>& scaledPoints, const Forest& f,
                         const Topology& comp, double eps, Visit&& visit, bool prune = true,
                         std::uint64_t* yieldCounter = nullptr) {
    const int nNodes = comp.nodes();
    const int s = comp.steiner;
    auto treeDist = detail::tree_distances(comp);

    // Occupied cells per terminal node.
    std::vector<std::vector<GridCell>> termCells(static_cast<std::size_t>(comp.terminals));
    for (int t = 0; t < comp.terminals; ++t) {
        int label = comp.terminalLabel[static_cast<std::size_t>(t)];
        termCells[static_cast<std::size_t>(t)] =
            occupied_cells(scaledPoints, f.components[static_cast<std::size_t>(label)], eps);
    }

    if (s == 0) {
        // Degenerate topology: nothing to guess, one map fixing terminal cells.
        CellMap m;
        for (int t = 0; t < comp.terminals; ++t)
            m.cells.push_back(termCells[static_cast<std::size_t>(t)].front());
        if (yieldCounter) ++*yieldCounter;
        return visit(m);
    }

    // Assignment order: terminals first (anchor first), then Steiner nodes,
    // preferring nodes with the most already-ordered neighbors.
    std::vector<int> order;
    for (int t = 0; t < comp.terminals; ++t) order.push_back(t);
    {
        auto adj = comp.adjacency();
        std::vector<bool> placed(static_cast<std::size_t>(nNodes), false);
        for (int t = 0; t < comp.terminals; ++t) placed[static_cast<std::size_t>(t)] = true;
        for (int step = 0; step < s; ++step) {
            int best = -1, bestScore = -1;
            for (int v = comp.terminals; v < nNodes; ++v) {
                if (placed[static_cast<std::size_t>(v)]) continue;
                int score = 0;
                for (int u : adj[static_cast<std::size_t>(v)])
                    if (placed[static_cast<std::size_t>(u)]) ++score;
                if (score > bestScore) {
                    bestScore = score;
                    best = v;
                }
            }
            placed[static_cast<std::size_t>(best)] = true;
            order.push_back(best);
        }
    }

    std::vector<GridCell> assigned(static_cast<std::size_t>(nNodes));
    std::vector<bool> has(static_cast<std::size_t>(nNodes), false);

    auto centerDistOk = [&](const GridCell& a, const GridCell& b, int hops) {
        double bound = hops + 2 * eps;
        return dist(a.center(), b.center()) <= bound + kTol.len;
    };

    // Candidate Steiner cells: every cell whose center lies within
    // hops(anchor, node) + 2*eps of the anchor cell center.
    auto steiner_candidates = [&](int node, const GridCell& anchor) {
        double radius = treeDist[0][static_cast<std::size_t>(node)] + 2 * eps;
        std::vector<GridCell> cells;
        Point o = anchor.center();
        long long ix0 = static_cast<long long>(std::floor((o.x - radius) / eps)) - 1;
        long long ix1 = static_cast<long long>(std::floor((o.x + radius) / eps)) + 1;
        long long iy0 = static_cast<long long>(std::floor((o.y - radius) / eps)) - 1;
        long long iy1 = static_cast<long long>(std::floor((o.y + radius) / eps)) + 1;
        for (long long ix = ix0; ix <= ix1; ++ix)
            for (long long iy = iy0; iy <= iy1; ++iy) {
                GridCell c{ix, iy, eps};
                if (dist(c.center(), o) <= radius + kTol.len) cells.push_back(c);
            }
        return cells;
    };

    std::function<bool(int)> rec = [&](int depth) -> bool {
        if (depth == nNodes) {
            if (yieldCounter) ++*yieldCounter;
            CellMap m;
            m.cells = assigned;
            return visit(m);
        }
        int node = order[static_cast<std::size_t>(depth)];
        std::vector<GridCell> candidates;
        if (node < comp.terminals) {
            candidates = termCells[static_cast<std::size_t>(node)];
        } else {
            candidates = steiner_candidates(node, assigned[0]);
        }
        for (const GridCell& c : candidates) {
            bool ok = true;
            if (depth > 0) {
                // Anchor-radius envelope bound.
                int hops0 = treeDist[0][static_cast<std::size_t>(node)];
                if (!centerDistOk(assigned[0], c, hops0)) ok = false;
                // Tree-distance consistency against all assigned nodes.
                if (ok && prune) {
                    for (int other = 0; other < nNodes && ok; ++other) {
                        if (!has[static_cast<std::size_t>(other)]) continue;
                        int hops = treeDist[static_cast<std::size_t>(node)]
                                           [static_cast<std::size_t>(other)];
                        if (!centerDistOk(assigned[static_cast<std::size_t>(other)], c, hops))
                            ok = false;
                    }
                }
            }
            if (!ok) continue;
            assigned[static_cast<std::size_t>(node)] = c;
            has[static_cast<std::size_t>(node)] = true;
            if (rec(depth + 1)) return true;
            has[static_cast<std::size_t>(node)] = false;
        }
        return false;
    };
    return rec(0);
}

}  // namespace ebst
