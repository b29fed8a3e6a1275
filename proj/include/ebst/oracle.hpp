#pragma once

// Independent ground truth for the solver tests: minimum bottleneck
// spanning values via a self-contained Prim implementation, and brute-force
// optimization over grid placements of Steiner points. Nothing here touches
// the production MST/topology/solver code paths.

#include "geometry.hpp"

#include <cstdint>
#include <future>
#include <thread>

namespace ebst {

struct OracleConfig {
    double gridResolution = 0.01;
    double boundingMargin = -1.0;  // < 0: use the bottleneck spanning value
    std::uint64_t maxPlacements = 400'000'000ULL;  // cap for the exhaustive path
    int workers = 1;  // grid placements are independent tasks, min-reduced
};

namespace oracle_detail {

/// Prim MST over a complete Euclidean graph; returns the maximum edge used.
inline double prim_max_edge(const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    std::vector<bool> used(n, false);
    std::vector<double> best(n, std::numeric_limits<double>::max());
    best[0] = 0;
    double maxEdge = 0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!used[i] && (pick == n || best[i] < best[pick])) pick = i;
        used[pick] = true;
        maxEdge = std::max(maxEdge, best[pick] == std::numeric_limits<double>::max() ? 0.0
                                                                                     : best[pick]);
        for (std::size_t i = 0; i < n; ++i)
            if (!used[i]) best[i] = std::min(best[i], dist(pts[pick], pts[i]));
    }
    return maxEdge;
}

/// Felzenszwalb 1D squared distance transform: d[i] = min_j (i-j)^2 + f[j].
inline void dt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
                  std::vector<double>& z) {
    const int n = static_cast<int>(f.size());
    d.assign(static_cast<std::size_t>(n), 0.0);
    v.assign(static_cast<std::size_t>(n), 0);
    z.assign(static_cast<std::size_t>(n) + 1, 0.0);
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::max();
    z[1] = std::numeric_limits<double>::max();
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            int p = v[static_cast<std::size_t>(k)];
            s = ((f[static_cast<std::size_t>(q)] + q * double(q)) -
                 (f[static_cast<std::size_t>(p)] + p * double(p))) /
                (2.0 * q - 2.0 * p);
            if (s <= z[static_cast<std::size_t>(k)]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[static_cast<std::size_t>(k)] = q;
        z[static_cast<std::size_t>(k)] = s;
        z[static_cast<std::size_t>(k) + 1] = std::numeric_limits<double>::max();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[static_cast<std::size_t>(k) + 1] < q) ++k;
        int p = v[static_cast<std::size_t>(k)];
        d[static_cast<std::size_t>(q)] = (q - p) * double(q - p) + f[static_cast<std::size_t>(p)];
    }
}

/// Exact squared Euclidean distance transform over a grid (index units).
inline void dt_2d(std::vector<double>& grid, int nx, int ny) {
    std::vector<double> f, d, z;
    std::vector<int> v;
    f.resize(static_cast<std::size_t>(std::max(nx, ny)));
    // Columns.
    for (int x = 0; x < nx; ++x) {
        f.assign(static_cast<std::size_t>(ny), 0.0);
        for (int y = 0; y < ny; ++y)
            f[static_cast<std::size_t>(y)] = grid[static_cast<std::size_t>(y) *
                                                      static_cast<std::size_t>(nx) +
                                                  static_cast<std::size_t>(x)];
        dt_1d(f, d, v, z);
        for (int y = 0; y < ny; ++y)
            grid[static_cast<std::size_t>(y) * static_cast<std::size_t>(nx) +
                 static_cast<std::size_t>(x)] = d[static_cast<std::size_t>(y)];
    }
    // Rows.
    for (int y = 0; y < ny; ++y) {
        f.assign(static_cast<std::size_t>(nx), 0.0);
        for (int x = 0; x < nx; ++x)
            f[static_cast<std::size_t>(x)] = grid[static_cast<std::size_t>(y) *
                                                      static_cast<std::size_t>(nx) +
                                                  static_cast<std::size_t>(x)];
        dt_1d(f, d, v, z);
        for (int x = 0; x < nx; ++x)
            grid[static_cast<std::size_t>(y) * static_cast<std::size_t>(nx) +
                 static_cast<std::size_t>(x)] = d[static_cast<std::size_t>(x)];
    }
}

struct Grid {
    double x0 = 0, y0 = 0, res = 0.01;
    int nx = 0, ny = 0;
    Point at(int ix, int iy) const { return {x0 + ix * res, y0 + iy * res}; }
    std::uint64_t size() const {
        return static_cast<std::uint64_t>(nx) * static_cast<std::uint64_t>(ny);
    }
};

inline Grid make_grid(const std::vector<Point>& pts, double margin, double res) {
    Box box;
    for (Point p : pts) box.expand(p);
    Grid g;
    g.res = res;
    g.x0 = box.lo.x - margin;
    g.y0 = box.lo.y - margin;
    g.nx = static_cast<int>(std::floor((box.hi.x + margin - g.x0) / res)) + 1;
    g.ny = static_cast<int>(std::floor((box.hi.y + margin - g.y0) / res)) + 1;
    return g;
}

/// Decision: can at most two grid placements connect P with edges <= lam?
inline bool two_point_decision(const std::vector<Point>& pts, const Grid& g, double lam) {
    const int n = static_cast<int>(pts.size());
    // Terminal components under the lam threshold.
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int m = 0;
    for (int i = 0; i < n; ++i) {
        if (comp[static_cast<std::size_t>(i)] >= 0) continue;
        comp[static_cast<std::size_t>(i)] = m;
        std::vector<int> stack{i};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v)
                if (comp[static_cast<std::size_t>(v)] < 0 &&
                    dist(pts[static_cast<std::size_t>(u)], pts[static_cast<std::size_t>(v)]) <=
                        lam)
                    comp[static_cast<std::size_t>(v)] = m, stack.push_back(v);
        }
        ++m;
    }
    if (m == 1) return true;
    const std::uint32_t full = (1u << m) - 1;

    // Mask of components reachable from each grid node.
    std::vector<std::uint32_t> mask(g.size(), 0);
    std::uint64_t idx = 0;
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix, ++idx) {
            Point p = g.at(ix, iy);
            std::uint32_t mk = 0;
            for (int i = 0; i < n; ++i)
                if (dist(p, pts[static_cast<std::size_t>(i)]) <= lam)
                    mk |= 1u << comp[static_cast<std::size_t>(i)];
            mask[idx] = mk;
            if (mk == full) return true;  // one placement suffices
        }
    }

    // Distinct non-empty masks.
    std::vector<std::uint32_t> values;
    {
        std::vector<bool> seen(full + 1, false);
        for (std::uint32_t mk : mask)
            if (mk && !seen[mk]) {
                seen[mk] = true;
                values.push_back(mk);
            }
    }
    // Non-adjacent pair: masks must cover everything and share a component.
    for (std::uint32_t a : values)
        for (std::uint32_t b : values)
            if ((a | b) == full && (a & b) != 0) return true;

    // Adjacent pair: a partner within lam whose mask covers the complement.
    // One distance transform per required complement set.
    std::vector<std::uint32_t> needs;
    {
        std::vector<bool> seen(full + 1, false);
        for (std::uint32_t a : values) {
            std::uint32_t need = full & ~a;
            if (need && !seen[need]) {
                seen[need] = true;
                needs.push_back(need);
            }
        }
    }
    const double lam2 = (lam / g.res) * (lam / g.res);
    std::vector<double> field;
    for (std::uint32_t need : needs) {
        field.assign(g.size(), std::numeric_limits<double>::max() / 4);
        for (std::uint64_t i = 0; i < g.size(); ++i)
            if ((mask[i] & need) == need) field[i] = 0.0;
        dt_2d(field, g.nx, g.ny);
        for (std::uint64_t i = 0; i < g.size(); ++i) {
            std::uint32_t have = mask[i];
            if (have == 0) continue;
            if ((full & ~have) == need && field[i] <= lam2) return true;
        }
    }
    return false;
}

}  // namespace oracle_detail

/// Minimum over spanning trees of the maximum edge, i.e. the longest edge
/// of any minimum spanning tree.
inline double bottleneck_spanning_value(const std::vector<Point>& points) {
    if (points.size() < 2) throw std::invalid_argument("bottleneck_spanning_value: need >= 2");
    return oracle_detail::prim_max_edge(points);
}

/// Brute-force optimum over k grid placements: min over placements S of
/// bottleneck_spanning_value(P union S). k <= 1 enumerates placements
/// directly; k == 2 binary-searches the equivalent connectivity decision
/// (still exact over the same grid). Larger k is guarded by the placement
/// cap.
inline double brute_force_opt(const std::vector<Point>& points, int k,
                              const OracleConfig& cfg = {}) {
    if (points.size() < 2) throw std::invalid_argument("brute_force_opt: need >= 2 points");
    double base = bottleneck_spanning_value(points);
    if (k <= 0) return base;
    double margin = cfg.boundingMargin >= 0 ? cfg.boundingMargin : base;
    auto grid = oracle_detail::make_grid(points, margin, cfg.gridResolution);

    if (k == 1) {
        if (grid.size() > cfg.maxPlacements)
            throw std::length_error("brute_force_opt: grid too large for exhaustive search");
        auto scanRows = [&](int y0, int y1) {
            double best = base;
            std::vector<Point> aug = points;
            aug.push_back({0, 0});
            for (int iy = y0; iy < y1; ++iy) {
                for (int ix = 0; ix < grid.nx; ++ix) {
                    aug.back() = grid.at(ix, iy);
                    best = std::min(best, oracle_detail::prim_max_edge(aug));
                }
            }
            return best;
        };
        int workers = std::clamp(cfg.workers, 1,
                                 std::max(1, static_cast<int>(std::thread::hardware_concurrency())));
        if (workers <= 1 || grid.ny < 2 * workers) return scanRows(0, grid.ny);
        std::vector<std::future<double>> parts;
        for (int w = 0; w < workers; ++w) {
            int y0 = grid.ny * w / workers;
            int y1 = grid.ny * (w + 1) / workers;
            parts.push_back(std::async(std::launch::async, scanRows, y0, y1));
        }
        double best = base;
        for (auto& f : parts) best = std::min(best, f.get());
        return best;
    }

    if (k == 2) {
        double lo = 0.0, hi = base;
        for (int iter = 0; iter < 60 && hi - lo > std::max(1e-9, 1e-9 * hi); ++iter) {
            double mid = 0.5 * (lo + hi);
            if (oracle_detail::two_point_decision(points, grid, mid)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return hi;
    }

    throw std::length_error("brute_force_opt: k > 2 exceeds the supported search space");
}

}  // namespace ebst
