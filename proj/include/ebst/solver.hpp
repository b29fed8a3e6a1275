#pragma once

// The decision procedure and optimizer. decide_lambda scales the instance
// so the decision radius is 1, sweeps K (forest component counts), raw
// topologies, their Steiner components, and cell maps, and runs the
// feasible-region dynamic program over circular domains for each guess.
// optimize wraps it in a relative-tolerance binary search (the exact
// parametric-search reduction is deliberately replaced by this search; the
// output metadata says so).

#include "grid_guess.hpp"
#include "minkowski.hpp"
#include "mst_topology.hpp"

#include <optional>
#include <sstream>

namespace ebst {

struct SolverConfig {
    double tolRel = 1e-6;
    double eps = 0.1;  // grid cell side; hard-capped at 0.1
    int parallel = 1;  // worker hint; evaluation is serial and deterministic
    bool pruneCellMaps = true;

    double effective_eps() const { return std::min(eps, 0.1); }
};

struct Counters {
    std::uint64_t decideCalls = 0;
    std::uint64_t topologiesTried = 0;
    std::uint64_t cellMapsTried = 0;
    std::uint64_t regionsComputed = 0;
    std::uint64_t maxRegionComplexity = 0;
};

struct WinningGuess {
    Topology component;
    CellMap map;
};

struct SolveResult {
    double bottleneck = 0.0;
    std::vector<Point> steinerPoints;                  // global ids n..n+k'-1
    std::vector<std::pair<int, int>> treeEdges;        // Steiner-incident edges
    std::vector<std::pair<int, int>> keptForestEdges;  // F_K edges (terminal pairs)
    int K = 1;
    int kUsed = 0;
    std::string topologyId;
    std::vector<WinningGuess> guesses;  // per component, for region dumps
};

struct FeasibleRegion {
    int node = -1;
    CircularDomain region;
};

namespace solver_detail {

/// Rooted view of a component topology: children lists and the subtree
/// node sets used as memoization keys.
struct RootedComponent {
    std::vector<int> parent;
    std::vector<std::vector<int>> children;
    std::vector<std::vector<int>> subtreeNodes;  // sorted, includes the node itself

    explicit RootedComponent(const Topology& t) {
        const int n = t.nodes();
        auto adj = t.adjacency();
        parent.assign(static_cast<std::size_t>(n), -1);
        children.assign(static_cast<std::size_t>(n), {});
        std::vector<int> stack{t.root};
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        seen[static_cast<std::size_t>(t.root)] = true;
        std::vector<int> dfs;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            dfs.push_back(u);
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = true;
                    parent[static_cast<std::size_t>(v)] = u;
                    children[static_cast<std::size_t>(u)].push_back(v);
                    stack.push_back(v);
                }
            }
        }
        subtreeNodes.assign(static_cast<std::size_t>(n), {});
        for (auto it = dfs.rbegin(); it != dfs.rend(); ++it) {
            int u = *it;
            auto& mine = subtreeNodes[static_cast<std::size_t>(u)];
            mine.push_back(u);
            for (int c : children[static_cast<std::size_t>(u)]) {
                const auto& sub = subtreeNodes[static_cast<std::size_t>(c)];
                mine.insert(mine.end(), sub.begin(), sub.end());
            }
            std::sort(mine.begin(), mine.end());
        }
    }
};

struct CachedRegion {
    CircularDomain region;
    std::optional<CircularDomain> fat;  // region (+) unit disk, lazily built
    bool empty = false;
};

struct ComponentPlacement {
    std::vector<Point> steinerPos;                     // by local Steiner id order
    std::vector<std::pair<int, int>> steinerEdges;     // local Steiner id pairs
    std::vector<std::pair<int, int>> witnessEdges;     // (local Steiner id, global point idx)
};

/// Feasible-region DP plus top-down extraction for one component topology
/// under one cell map. Returns the placement or nullopt when R(root) is
/// empty.
class ComponentSolver {
public:
    ComponentSolver(const std::vector<Point>& scaled, const Forest& f, const Topology& comp,
                    Counters* counters)
        : scaled_(scaled), forest_(f), comp_(comp), rooted_(comp), counters_(counters) {}

    std::optional<ComponentPlacement> try_map(const CellMap& map) {
        map_ = &map;
        if (counters_) ++counters_->cellMapsTried;
        const CachedRegion& rootRegion = region_of(comp_.root);
        if (rootRegion.empty) return std::nullopt;
        return extract(pick_point(rootRegion.region));
    }

    /// Extraction pinned at a chosen root placement (must lie in R(root));
    /// used by the region-soundness checks.
    std::optional<ComponentPlacement> try_map_from(const CellMap& map, Point rootPoint) {
        map_ = &map;
        const CachedRegion& rootRegion = region_of(comp_.root);
        if (rootRegion.empty) return std::nullopt;
        return extract(rootPoint);
    }

    /// Feasible regions of every node under the given map (diagnostics and
    /// region dumps).
    std::vector<FeasibleRegion> all_regions(const CellMap& map) {
        map_ = &map;
        std::vector<FeasibleRegion> out;
        for (int v = 0; v < comp_.nodes(); ++v) out.push_back({v, region_of(v).region});
        return out;
    }

private:
    using Key = std::vector<long long>;

    const CachedRegion& region_of(int node) {
        Key key = key_of(node);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        CachedRegion entry;
        entry.region = compute_region(node);
        entry.empty = entry.region.is_empty();
        if (counters_) {
            ++counters_->regionsComputed;
            counters_->maxRegionComplexity =
                std::max(counters_->maxRegionComplexity,
                         static_cast<std::uint64_t>(complexity(entry.region)));
        }
        return cache_.emplace(std::move(key), std::move(entry)).first->second;
    }

    const CircularDomain& fat_region_of(int node) {
        Key key = key_of(node);
        CachedRegion& entry = cache_.at(key);  // region_of was called first
        if (!entry.fat) entry.fat = minkowski_unit_disk(entry.region);
        return *entry.fat;
    }

    Key key_of(int node) const {
        Key key;
        key.push_back(node);
        for (int v : rooted_.subtreeNodes[static_cast<std::size_t>(node)]) {
            const GridCell& c = map_->cells[static_cast<std::size_t>(v)];
            key.push_back(c.ix);
            key.push_back(c.iy);
        }
        return key;
    }

    CircularDomain compute_region(int node) {
        const GridCell& cell = map_->cells[static_cast<std::size_t>(node)];
        if (!comp_.is_steiner(node)) {
            // R(C_i) = C_i intersected with its cell.
            std::vector<Point> pts;
            int label = comp_.terminalLabel[static_cast<std::size_t>(node)];
            for (int idx : forest_.components[static_cast<std::size_t>(label)]) {
                Point p = scaled_[static_cast<std::size_t>(idx)];
                if (cell.contains(p, kTol.len)) pts.push_back(p);
            }
            if (pts.empty()) return CircularDomain::empty();
            return CircularDomain::point_set(std::move(pts));
        }
        std::vector<CircularDomain> expanded;
        for (int c : rooted_.children[static_cast<std::size_t>(node)]) {
            const CachedRegion& childRegion = region_of(c);
            if (childRegion.empty) return CircularDomain::empty();
            expanded.push_back(fat_region_of(c));
        }
        if (expanded.empty()) return CircularDomain::empty();
        CircularDomain inter = intersect_domains(expanded);
        if (inter.is_empty()) return CircularDomain::empty();
        return clip_to_cell(inter, cell);
    }

    std::optional<ComponentPlacement> extract(Point rootPoint) {
        const double slack = 1.0 + 10 * kTol.len;
        ComponentPlacement out;
        std::vector<Point> pos(static_cast<std::size_t>(comp_.nodes()));
        pos[static_cast<std::size_t>(comp_.root)] = rootPoint;

        std::vector<int> stack{comp_.root};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            Point q = pos[static_cast<std::size_t>(u)];
            for (int c : rooted_.children[static_cast<std::size_t>(u)]) {
                if (comp_.is_steiner(c)) {
                    const CircularDomain& rc = region_of(c).region;
                    CircularDomain reach =
                        intersect_domains({rc, CircularDomain::disk(q, slack)});
                    if (reach.is_empty())
                        throw std::logic_error(
                            "solver invariant violation: nonempty parent region but "
                            "unreachable child");
                    pos[static_cast<std::size_t>(c)] = pick_point(reach);
                    stack.push_back(c);
                } else {
                    // Terminal child: record the nearest witness point.
                    int label = comp_.terminalLabel[static_cast<std::size_t>(c)];
                    const GridCell& cell = map_->cells[static_cast<std::size_t>(c)];
                    int bestIdx = -1;
                    double bestDist = std::numeric_limits<double>::max();
                    for (int idx : forest_.components[static_cast<std::size_t>(label)]) {
                        Point p = scaled_[static_cast<std::size_t>(idx)];
                        if (!cell.contains(p, kTol.len)) continue;
                        double d = dist(p, q);
                        if (d < bestDist) {
                            bestDist = d;
                            bestIdx = idx;
                        }
                    }
                    if (bestIdx < 0 || bestDist > slack)
                        throw std::logic_error(
                            "solver invariant violation: no terminal witness in range");
                    out.witnessEdges.push_back({u, bestIdx});
                }
            }
        }
        for (int v = comp_.terminals; v < comp_.nodes(); ++v)
            out.steinerPos.push_back(pos[static_cast<std::size_t>(v)]);
        for (auto [u, v] : comp_.edges)
            if (comp_.is_steiner(u) && comp_.is_steiner(v)) out.steinerEdges.push_back({u, v});
        return out;
    }

    const std::vector<Point>& scaled_;
    const Forest& forest_;
    const Topology& comp_;
    RootedComponent rooted_;
    Counters* counters_;
    const CellMap* map_ = nullptr;
    std::map<Key, CachedRegion> cache_;
};

/// Cache of enumerated topologies, shared across decide_lambda calls.
inline const std::vector<Topology>& cached_topologies(int K, int kMax) {
    static std::map<std::pair<int, int>, std::vector<Topology>> cache;
    auto key = std::make_pair(K, kMax);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, enumerate_topologies(K, kMax)).first;
    return it->second;
}

}  // namespace solver_detail

/// Feasible region of a Steiner node given its children's regions: the
/// intersection of the children's unit-disk expansions, clipped to the cell.
inline FeasibleRegion feasible_region(int node,
                                      const std::vector<FeasibleRegion>& childRegions,
                                      const GridCell& cell, const Tolerance& tol = kTol) {
    std::vector<CircularDomain> expanded;
    for (const FeasibleRegion& child : childRegions) {
        if (child.region.is_empty()) return {node, CircularDomain::empty()};
        expanded.push_back(minkowski_unit_disk(child.region, tol));
    }
    if (expanded.empty()) return {node, CircularDomain::empty()};
    CircularDomain inter = intersect_domains(expanded, tol);
    if (inter.is_empty()) return {node, CircularDomain::empty()};
    return {node, clip_to_cell(inter, cell, tol)};
}

/// Decide one (component topology, cell map) guess on a pre-scaled
/// instance; returns Steiner placements when feasible.
inline std::optional<solver_detail::ComponentPlacement> decide(
    const std::vector<Point>& scaledPoints, const Forest& f, const Topology& comp,
    const CellMap& map, Counters* counters = nullptr) {
    solver_detail::ComponentSolver solver(scaledPoints, f, comp, counters);
    return solver.try_map(map);
}

/// Decision procedure: is there a Steiner tree with at most inst.k added
/// points whose edges all have length at most lam? Returns a witness tree.
inline std::optional<SolveResult> decide_lambda(const Instance& inst, double lam,
                                                const SolverConfig& cfg = {},
                                                Counters* counters = nullptr) {
    validate_instance(inst);
    if (lam <= 0) return std::nullopt;
    if (counters) ++counters->decideCalls;
    const int n = static_cast<int>(inst.points.size());
    const double eps = cfg.effective_eps();

    auto mst = euclidean_mst(inst.points);
    const double maxMst = max_mst_edge(mst);

    auto forest_result = [&](const Forest& f, double bottleneck) {
        SolveResult r;
        r.bottleneck = bottleneck;
        for (const MstEdge& e : f.keptEdges) r.keptForestEdges.push_back({e.u, e.v});
        r.K = f.K;
        r.kUsed = 0;
        r.topologyId = "forest-only";
        return r;
    };

    if (maxMst <= lam) {
        Forest f1 = forest(inst, 1);
        return forest_result(f1, maxMst);
    }
    if (inst.k == 0) return std::nullopt;

    // Scale so the decision radius becomes 1.
    std::vector<Point> scaled;
    scaled.reserve(inst.points.size());
    for (Point p : inst.points) scaled.push_back({p.x / lam, p.y / lam});

    const int maxK = std::min(n, 4 * inst.k + 1);
    for (int K = 2; K <= maxK; ++K) {
        Forest f = forest(inst, K);
        double maxKept = 0;
        for (const MstEdge& e : f.keptEdges) maxKept = std::max(maxKept, e.length);
        if (maxKept > lam) continue;  // a kept forest edge already violates lam

        Forest scaledForest = f;  // same index structure; points live in `scaled`

        for (const Topology& raw : solver_detail::cached_topologies(K, inst.k)) {
            if (counters) ++counters->topologiesTried;
            auto comps = split_components(raw);
            if (comps.empty()) continue;
            int totalSteiner = 0;
            for (const Topology& c : comps) totalSteiner += c.steiner;
            if (totalSteiner > inst.k) continue;

            std::vector<solver_detail::ComponentPlacement> placements;
            std::vector<WinningGuess> guesses;
            bool allOk = true;
            for (const Topology& comp : comps) {
                solver_detail::ComponentSolver solver(scaled, scaledForest, comp, counters);
                std::optional<solver_detail::ComponentPlacement> found;
                CellMap winning;
                enumerate_cell_maps(
                    scaled, scaledForest, comp, eps,
                    [&](const CellMap& map) {
                        auto placement = solver.try_map(map);
                        if (placement) {
                            found = std::move(placement);
                            winning = map;
                            return true;
                        }
                        return false;
                    },
                    cfg.pruneCellMaps);
                if (!found) {
                    allOk = false;
                    break;
                }
                placements.push_back(std::move(*found));
                guesses.push_back({comp, std::move(winning)});
            }
            if (!allOk) continue;

            // Assemble the witness in original coordinates.
            SolveResult r;
            r.bottleneck = lam;
            r.K = K;
            for (const MstEdge& e : f.keptEdges) r.keptForestEdges.push_back({e.u, e.v});
            std::ostringstream id;
            id << "K" << K << "-s" << raw.steiner;
            r.topologyId = id.str();
            for (std::size_t ci = 0; ci < comps.size(); ++ci) {
                const Topology& comp = comps[ci];
                const auto& placement = placements[ci];
                int base = n + static_cast<int>(r.steinerPoints.size());
                for (Point p : placement.steinerPos)
                    r.steinerPoints.push_back({p.x * lam, p.y * lam});
                for (auto [u, v] : placement.steinerEdges)
                    r.treeEdges.push_back(
                        {base + (u - comp.terminals), base + (v - comp.terminals)});
                for (auto [su, pointIdx] : placement.witnessEdges)
                    r.treeEdges.push_back({base + (su - comp.terminals), pointIdx});
            }
            r.kUsed = static_cast<int>(r.steinerPoints.size());
            r.guesses = std::move(guesses);
            return r;
        }
    }
    return std::nullopt;
}

/// Binary-search optimizer over decide_lambda. The bracket starts at
/// [maxMST/(k+1), maxMST]: the lower end because a path replacing the
/// bottleneck MST edge has at most k+1 hops, the upper end because the
/// forest-only tree is always available.
inline SolveResult optimize(const Instance& inst, const SolverConfig& cfg = {},
                            Counters* counters = nullptr) {
    validate_instance(inst);
    if (cfg.tolRel <= 0) throw std::invalid_argument("optimize: tolRel must be positive");

    auto mst = euclidean_mst(inst.points);
    const double maxMst = max_mst_edge(mst);

    if (inst.k == 0) {
        // Exact: the bottleneck spanning tree value, no search.
        SolveResult r;
        r.bottleneck = maxMst;
        for (const MstEdge& e : mst) r.keptForestEdges.push_back({e.u, e.v});
        r.K = 1;
        r.kUsed = 0;
        r.topologyId = "forest-only";
        return r;
    }

    double hi = maxMst;
    double lo = maxMst / (inst.k + 1);
    auto best = decide_lambda(inst, hi, cfg, counters);
    if (!best) throw std::logic_error("optimize: decision failed at the MST bottleneck");

    while (hi - lo > cfg.tolRel * hi) {
        double mid = 0.5 * (lo + hi);
        auto r = decide_lambda(inst, mid, cfg, counters);
        if (r) {
            hi = mid;
            best = std::move(r);
        } else {
            lo = mid;
        }
    }
    best->bottleneck = hi;
    return *best;
}

}  // namespace ebst
