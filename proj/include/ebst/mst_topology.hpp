#pragma once

// Euclidean minimum spanning trees, the forests obtained by dropping the
// longest MST edges, and enumeration of candidate contracted topologies
// over terminal components and Steiner nodes.
//
// Topology trees here are the *raw* contracted trees: every edge touches a
// Steiner node, Steiner nodes are internal with degree 2..5, and terminal
// nodes may have any degree (a terminal shared by several Steiner groups is
// an internal node; splitting it apart is `split_components`' job).

#include "geometry.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace ebst {

struct Instance {
    std::vector<Point> points;
    int k = 0;
};

inline void validate_instance(const Instance& inst, const Tolerance& tol = kTol) {
    if (inst.points.size() < 2) throw std::invalid_argument("instance: need at least 2 points");
    if (inst.k < 0) throw std::invalid_argument("instance: k must be non-negative");
    for (const Point& p : inst.points)
        if (!p.finite()) throw std::invalid_argument("instance: non-finite coordinate");
    for (std::size_t i = 0; i < inst.points.size(); ++i)
        for (std::size_t j = i + 1; j < inst.points.size(); ++j)
            if (almost_equal(inst.points[i], inst.points[j], tol.len))
                throw std::invalid_argument("instance: duplicate points");
}

struct MstEdge {
    int u = 0;
    int v = 0;
    double length = 0.0;
};

namespace detail {

class Dsu {
public:
    explicit Dsu(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[static_cast<std::size_t>(b)] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

inline bool edge_less(const MstEdge& a, const MstEdge& b) {
    if (a.length != b.length) return a.length < b.length;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
}

}  // namespace detail

/// Kruskal MST with ties broken by (length, smaller index, larger index);
/// returned edges are sorted in that order.
inline std::vector<MstEdge> euclidean_mst(const std::vector<Point>& points,
                                          const Tolerance& tol = kTol) {
    const int n = static_cast<int>(points.size());
    if (n < 2) throw std::invalid_argument("euclidean_mst: need at least 2 points");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (almost_equal(points[i], points[j], tol.len))
                throw std::invalid_argument("euclidean_mst: duplicate points");
    std::vector<MstEdge> all;
    all.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            all.push_back({i, j, dist(points[static_cast<std::size_t>(i)],
                                      points[static_cast<std::size_t>(j)])});
    std::sort(all.begin(), all.end(), detail::edge_less);
    detail::Dsu dsu(n);
    std::vector<MstEdge> mst;
    for (const MstEdge& e : all) {
        if (dsu.unite(e.u, e.v)) {
            mst.push_back(e);
            if (static_cast<int>(mst.size()) == n - 1) break;
        }
    }
    return mst;
}

inline double max_mst_edge(const std::vector<MstEdge>& mst) {
    double best = 0.0;
    for (const MstEdge& e : mst) best = std::max(best, e.length);
    return best;
}

struct Forest {
    int K = 1;
    std::vector<std::vector<int>> components;  // ordered by smallest member index
    std::vector<MstEdge> keptEdges;
};

/// F_K: the MST with its K-1 longest edges removed (deterministic order).
inline Forest forest(const Instance& inst, int K) {
    const int n = static_cast<int>(inst.points.size());
    if (K < 1 || K > n) throw std::invalid_argument("forest: K out of range");
    std::vector<MstEdge> mst = euclidean_mst(inst.points);
    // Edges are sorted ascending; the last K-1 are the removed ones.
    Forest f;
    f.K = K;
    f.keptEdges.assign(mst.begin(), mst.end() - (K - 1));
    detail::Dsu dsu(n);
    for (const MstEdge& e : f.keptEdges) dsu.unite(e.u, e.v);
    std::map<int, std::vector<int>> byRoot;
    for (int i = 0; i < n; ++i) byRoot[dsu.find(i)].push_back(i);
    for (auto& [root, members] : byRoot) f.components.push_back(std::move(members));
    std::sort(f.components.begin(), f.components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return f;
}

/// Contracted topology tree. Local node ids: terminals 0..terminals-1,
/// Steiner nodes terminals..terminals+steiner-1. `terminalLabel[t]` maps a
/// local terminal node to its forest component index.
struct Topology {
    int terminals = 0;
    int steiner = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> terminalLabel;
    int root = -1;

    int nodes() const { return terminals + steiner; }
    bool is_steiner(int v) const { return v >= terminals; }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(nodes()));
        for (auto [u, v] : edges) {
            adj[static_cast<std::size_t>(u)].push_back(v);
            adj[static_cast<std::size_t>(v)].push_back(u);
        }
        return adj;
    }
};

namespace detail {

/// Classic Prufer decode over n = len+2 labeled nodes.
inline std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq, int n) {
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (int s : seq) degree[static_cast<std::size_t>(s)]++;
    std::vector<std::pair<int, int>> edges;
    std::set<int> leaves;
    for (int i = 0; i < n; ++i)
        if (degree[static_cast<std::size_t>(i)] == 1) leaves.insert(i);
    std::vector<int> rest = seq;
    for (int s : rest) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.push_back({std::min(leaf, s), std::max(leaf, s)});
        if (--degree[static_cast<std::size_t>(s)] == 1) leaves.insert(s);
    }
    int a = *leaves.begin();
    int b = *std::next(leaves.begin());
    edges.push_back({std::min(a, b), std::max(a, b)});
    return edges;
}

/// Canonical form of a raw topology under Steiner relabeling: the
/// lexicographically smallest sorted edge list over all s! relabelings.
inline std::vector<std::pair<int, int>> canonical_edges(std::vector<std::pair<int, int>> edges,
                                                        int terminals, int steiner) {
    std::vector<int> perm(static_cast<std::size_t>(steiner));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::pair<int, int>> best;
    do {
        std::vector<std::pair<int, int>> mapped;
        mapped.reserve(edges.size());
        auto remap = [&](int v) {
            return v < terminals ? v : terminals + perm[static_cast<std::size_t>(v - terminals)];
        };
        for (auto [u, v] : edges) {
            int a = remap(u), b = remap(v);
            mapped.push_back({std::min(a, b), std::max(a, b)});
        }
        std::sort(mapped.begin(), mapped.end());
        if (best.empty() || mapped < best) best = std::move(mapped);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace detail

/// Every isomorphism class (Steiner nodes unlabeled, terminal nodes
/// labeled C_1..C_K) of raw contracted trees with s in {1..kMax} Steiner
/// nodes: every edge touches a Steiner node, Steiner nodes are internal
/// with degree at most 5. Sorted by Steiner count, then canonical edges.
inline std::vector<Topology> enumerate_topologies(int K, int kMax) {
    if (K < 1) throw std::invalid_argument("enumerate_topologies: K must be positive");
    std::vector<Topology> out;
    if (K == 1) return out;  // pruning removes every Steiner node

    for (int s = 1; s <= kMax; ++s) {
        const int n = K + s;
        const int len = n - 2;
        // Every edge meets a Steiner node, Steiner degrees <= 5: at most
        // 5s edges, so K <= 4s+1.
        if (K > 4 * s + 1) continue;
        if (len < s) continue;  // each Steiner label needs count >= 1

        std::set<std::vector<std::pair<int, int>>> seen;
        std::vector<int> seq(static_cast<std::size_t>(len), 0);
        std::vector<int> steinerCount(static_cast<std::size_t>(s), 0);
        std::vector<bool> termUsed(static_cast<std::size_t>(K), false);
        int distinctTerms = 0;
        int steinerUsed = 0;

        std::function<void(int)> rec = [&](int pos) {
            if (pos == len) {
                bool ok = true;
                for (int c : steinerCount)
                    if (c < 1) ok = false;
                if (!ok) return;
                auto edges = detail::prufer_decode(seq, n);
                for (auto [u, v] : edges)
                    if (u < K && v < K) return;  // terminal-terminal edge
                auto canon = detail::canonical_edges(edges, K, s);
                if (!seen.insert(canon).second) return;
                Topology t;
                t.terminals = K;
                t.steiner = s;
                t.edges = std::move(canon);
                t.terminalLabel.resize(static_cast<std::size_t>(K));
                std::iota(t.terminalLabel.begin(), t.terminalLabel.end(), 0);
                t.root = K;  // first Steiner node
                out.push_back(std::move(t));
                return;
            }
            int remaining = len - pos;
            int unusedSteiner = s - steinerUsed;
            if (remaining < unusedSteiner) return;
            // Steiner labels, first occurrences in increasing order.
            for (int j = 0; j < s; ++j) {
                if (steinerCount[static_cast<std::size_t>(j)] >= 4) continue;
                if (steinerCount[static_cast<std::size_t>(j)] == 0 && j != steinerUsed) continue;
                seq[static_cast<std::size_t>(pos)] = K + j;
                bool first = steinerCount[static_cast<std::size_t>(j)] == 0;
                steinerCount[static_cast<std::size_t>(j)]++;
                if (first) steinerUsed++;
                rec(pos + 1);
                if (first) steinerUsed--;
                steinerCount[static_cast<std::size_t>(j)]--;
            }
            // Terminal labels: an internal terminal joins distinct Steiner
            // groups, and a tree of r groups has at most r-1 joints.
            for (int tIdx = 0; tIdx < K; ++tIdx) {
                bool first = !termUsed[static_cast<std::size_t>(tIdx)];
                if (first && distinctTerms >= s - 1) continue;
                seq[static_cast<std::size_t>(pos)] = tIdx;
                if (first) {
                    termUsed[static_cast<std::size_t>(tIdx)] = true;
                    distinctTerms++;
                }
                rec(pos + 1);
                if (first) {
                    termUsed[static_cast<std::size_t>(tIdx)] = false;
                    distinctTerms--;
                }
            }
        };
        rec(0);
    }
    std::sort(out.begin(), out.end(), [](const Topology& a, const Topology& b) {
        if (a.steiner != b.steiner) return a.steiner < b.steiner;
        return a.edges < b.edges;
    });
    return out;
}

/// Prune Steiner leaves, then split the topology along its
/// Steiner-connected components. Each returned Topology has the component's
/// Steiner nodes plus their terminal neighbors (terminals are leaves
/// there), rooted at the component's first Steiner node.
inline std::vector<Topology> split_components(const Topology& raw) {
    // Prune Steiner leaves repeatedly.
    std::vector<std::pair<int, int>> edges = raw.edges;
    std::vector<bool> alive(static_cast<std::size_t>(raw.nodes()), true);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> degree(static_cast<std::size_t>(raw.nodes()), 0);
        for (auto [u, v] : edges) {
            degree[static_cast<std::size_t>(u)]++;
            degree[static_cast<std::size_t>(v)]++;
        }
        for (int v = raw.terminals; v < raw.nodes(); ++v) {
            if (alive[static_cast<std::size_t>(v)] && degree[static_cast<std::size_t>(v)] <= 1) {
                alive[static_cast<std::size_t>(v)] = false;
                std::erase_if(edges, [&](auto e) { return e.first == v || e.second == v; });
                changed = true;
            }
        }
    }

    // Steiner components via Steiner-Steiner edges.
    detail::Dsu dsu(raw.nodes());
    for (auto [u, v] : edges)
        if (raw.is_steiner(u) && raw.is_steiner(v)) dsu.unite(u, v);
    std::map<int, std::vector<int>> groups;
    for (int v = raw.terminals; v < raw.nodes(); ++v)
        if (alive[static_cast<std::size_t>(v)]) groups[dsu.find(v)].push_back(v);

    std::vector<Topology> result;
    for (auto& [root, steinerNodes] : groups) {
        std::sort(steinerNodes.begin(), steinerNodes.end());
        std::set<int> inComp(steinerNodes.begin(), steinerNodes.end());
        // Terminal neighbors of this component, ordered by label.
        std::set<int> termNodes;
        for (auto [u, v] : edges) {
            if (inComp.count(u) && !raw.is_steiner(v)) termNodes.insert(v);
            if (inComp.count(v) && !raw.is_steiner(u)) termNodes.insert(u);
        }
        Topology t;
        t.terminals = static_cast<int>(termNodes.size());
        t.steiner = static_cast<int>(steinerNodes.size());
        std::map<int, int> remap;
        int next = 0;
        for (int tn : termNodes) {
            remap[tn] = next++;
            t.terminalLabel.push_back(raw.terminalLabel.empty()
                                          ? tn
                                          : raw.terminalLabel[static_cast<std::size_t>(tn)]);
        }
        for (int sn : steinerNodes) remap[sn] = next++;
        for (auto [u, v] : edges) {
            bool uin = remap.count(u), vin = remap.count(v);
            bool uSteinerHere = inComp.count(u), vSteinerHere = inComp.count(v);
            if ((uSteinerHere && vin) || (vSteinerHere && uin)) {
                int a = remap[u], b = remap[v];
                t.edges.push_back({std::min(a, b), std::max(a, b)});
            }
        }
        std::sort(t.edges.begin(), t.edges.end());
        t.edges.erase(std::unique(t.edges.begin(), t.edges.end()), t.edges.end());
        t.root = t.terminals;  // first Steiner node of the component
        result.push_back(std::move(t));
    }
    return result;
}

}  // namespace ebst
