#pragma once

// Boundary representation for circular domains (closed planar regions
// bounded by circular arcs and segments meeting only at endpoints, plus
// finite point sets as the degenerate case) and the boolean-style
// operations the solver needs: membership, intersection, clipping to grid
// cells, unions of disks, and vertical decomposition into convex pieces.
//
// Loops are stored with the domain interior on the left of the traversal
// direction (outer loops counter-clockwise). Membership uses even-odd ray
// crossing, so hole loops need no special casing.

#include "geometry.hpp"

#include <cassert>
#include <functional>
#include <optional>
#include <utility>

namespace ebst {

using Loop = std::vector<CircularArc>;

/// Closed square grid cell [ix*eps,(ix+1)*eps] x [iy*eps,(iy+1)*eps].
struct GridCell {
    long long ix = 0;
    long long iy = 0;
    double eps = 0.1;

    double x0() const { return ix * eps; }
    double x1() const { return (ix + 1) * eps; }
    double y0() const { return iy * eps; }
    double y1() const { return (iy + 1) * eps; }
    Point center() const { return {(x0() + x1()) * 0.5, (y0() + y1()) * 0.5}; }

    bool contains(Point p, double slack = 0.0) const {
        return p.x >= x0() - slack && p.x <= x1() + slack && p.y >= y0() - slack &&
               p.y <= y1() + slack;
    }
    friend bool operator==(const GridCell& a, const GridCell& b) {
        return a.ix == b.ix && a.iy == b.iy && a.eps == b.eps;
    }
};

/// All closed cells containing p (up to four when p sits on cell edges).
inline std::vector<GridCell> cells_containing(Point p, double eps, const Tolerance& tol = kTol) {
    std::vector<GridCell> out;
    auto indices = [&](double v) {
        std::vector<long long> idx;
        double q = v / eps;
        long long base = static_cast<long long>(std::floor(q));
        for (long long d : {-1LL, 0LL, 1LL}) {
            long long i = base + d;
            if (v >= i * eps - tol.len && v <= (i + 1) * eps + tol.len) idx.push_back(i);
        }
        return idx;
    };
    for (long long ix : indices(p.x))
        for (long long iy : indices(p.y)) out.push_back(GridCell{ix, iy, eps});
    return out;
}

enum class DomainKind : std::uint8_t { Region, PointSet };

class CircularDomain {
public:
    CircularDomain() = default;  // empty region

    static CircularDomain empty() { return CircularDomain(); }

    static CircularDomain region(std::vector<Loop> loops) {
        CircularDomain d;
        d.kind_ = DomainKind::Region;
        d.loops_ = std::move(loops);
        return d;
    }

    static CircularDomain point_set(std::vector<Point> pts) {
        CircularDomain d;
        d.kind_ = DomainKind::PointSet;
        d.points_ = std::move(pts);
        return d;
    }

    static CircularDomain disk(Point c, double r) {
        return region({Loop{CircularArc::full_circle(c, r)}});
    }

    static CircularDomain square(double x0, double y0, double x1, double y1) {
        Loop loop{CircularArc::segment({x0, y0}, {x1, y0}),
                  CircularArc::segment({x1, y0}, {x1, y1}),
                  CircularArc::segment({x1, y1}, {x0, y1}),
                  CircularArc::segment({x0, y1}, {x0, y0})};
        return region({std::move(loop)});
    }

    static CircularDomain cell(const GridCell& c) {
        return square(c.x0(), c.y0(), c.x1(), c.y1());
    }

    DomainKind kind() const { return kind_; }
    bool is_point_set() const { return kind_ == DomainKind::PointSet; }
    bool is_region() const { return kind_ == DomainKind::Region; }
    bool is_empty() const {
        return is_region() ? loops_.empty() : points_.empty();
    }

    const std::vector<Loop>& loops() const { return loops_; }
    const std::vector<Point>& points() const { return points_; }

private:
    DomainKind kind_ = DomainKind::Region;
    std::vector<Loop> loops_;
    std::vector<Point> points_;
};

/// Total number of arcs plus vertices for regions (a closed loop of m arcs
/// has m vertices), point count for point sets.
inline std::size_t complexity(const CircularDomain& d) {
    if (d.is_point_set()) return d.points().size();
    std::size_t total = 0;
    for (const Loop& loop : d.loops()) total += 2 * loop.size();
    return total;
}

/// Signed area enclosed by a loop (positive for counter-clockwise).
inline double signed_area(const Loop& loop) {
    double acc = 0.0;
    for (const CircularArc& arc : loop) {
        Point p0 = arc.start(), p1 = arc.end();
        if (arc.is_segment()) {
            acc += 0.5 * p0.cross(p1);
        } else {
            double dtheta = arc.angleTo - arc.angleFrom;  // signed by traversal
            acc += 0.5 * (arc.center.cross(p1 - p0) + arc.radius * arc.radius * dtheta);
        }
    }
    return acc;
}

inline Box bounding_box(const CircularDomain& d) {
    Box b;
    if (d.is_point_set()) {
        for (Point p : d.points()) b.expand(p);
        return b;
    }
    for (const Loop& loop : d.loops())
        for (const CircularArc& arc : loop) b.expand(arc.bounds());
    return b;
}

inline bool on_boundary(const CircularDomain& d, Point p, const Tolerance& tol = kTol) {
    if (d.is_point_set()) {
        for (Point q : d.points())
            if (almost_equal(p, q, tol.len)) return true;
        return false;
    }
    for (const Loop& loop : d.loops())
        for (const CircularArc& arc : loop)
            if (point_on_arc(p, arc, tol)) return true;
    return false;
}

namespace detail {

struct RayHit {
    double t = 0.0;
    bool bad = false;
};

/// Crossings of the ray p + t*dir (t > 0) with one arc. Flags the attempt
/// as bad near endpoints, tangencies, or the ray origin.
inline void ray_arc_hits(Point p, Vec2 dir, const CircularArc& arc, std::vector<RayHit>& hits) {
    constexpr double kEndpointSlack = 1e-7;
    constexpr double kGraze = 1e-9;
    if (arc.is_segment()) {
        Vec2 d2 = arc.b - arc.a;
        double denom = dir.cross(d2);
        double len2 = d2.norm();
        if (std::abs(denom) <= kGraze * std::max(1.0, len2)) {
            // Parallel. Collinear rays are degenerate; flag so the caller retries.
            double off = (arc.a - p).cross(dir);
            if (std::abs(off) <= kEndpointSlack * std::max(1.0, len2))
                hits.push_back({0.0, true});
            return;
        }
        // p + t*dir = a + u*d2
        double t = (arc.a - p).cross(d2) / denom;
        double u = (arc.a - p).cross(dir) / denom;
        if (u < -kEndpointSlack || u > 1.0 + kEndpointSlack) return;
        if (t <= 0) return;
        RayHit h{t, false};
        if (u < kEndpointSlack || u > 1.0 - kEndpointSlack || t < 1e-12) h.bad = true;
        hits.push_back(h);
        return;
    }
    auto cl = circle_line(arc.center, arc.radius, p, dir, kTol);
    // Tangency (single root) is a graze for parity purposes.
    bool tangent = (cl.count == 1);
    for (int i = 0; i < cl.count; ++i) {
        double t = (cl.p[i] - p).dot(dir);
        if (t <= 0) continue;
        double theta = normalize_angle(std::atan2(cl.p[i].y - arc.center.y, cl.p[i].x - arc.center.x));
        double lo = arc.angle_lo(), hi = arc.angle_hi();
        bool inRange = false, nearEnd = false;
        for (double shift : {0.0, kTwoPi, -kTwoPi}) {
            double th = theta + shift;
            if (th >= lo - kEndpointSlack && th <= hi + kEndpointSlack) {
                inRange = true;
                if (th < lo + kEndpointSlack || th > hi - kEndpointSlack) nearEnd = true;
            }
        }
        if (!inRange) continue;
        RayHit h{t, false};
        if (tangent || nearEnd || t < 1e-12) h.bad = true;
        hits.push_back(h);
    }
}

}  // namespace detail

/// Closed membership: boundary points count as inside. Even-odd ray
/// crossing with retries on degenerate ray directions.
inline bool contains(const CircularDomain& d, Point p, const Tolerance& tol = kTol) {
    if (d.is_point_set()) return on_boundary(d, p, tol);
    if (d.is_empty()) return false;
    if (on_boundary(d, p, tol)) return true;
    for (int attempt = 0; attempt < 24; ++attempt) {
        double theta = 0.5772156649 + attempt * 2.399963229728653;
        Vec2 dir{std::cos(theta), std::sin(theta)};
        std::vector<detail::RayHit> hits;
        bool bad = false;
        for (const Loop& loop : d.loops()) {
            for (const CircularArc& arc : loop) {
                hits.clear();
                detail::ray_arc_hits(p, dir, arc, hits);
                for (const auto& h : hits)
                    if (h.bad) bad = true;
                if (bad) break;
            }
            if (bad) break;
        }
        if (bad) continue;
        int crossings = 0;
        for (const Loop& loop : d.loops())
            for (const CircularArc& arc : loop) {
                hits.clear();
                detail::ray_arc_hits(p, dir, arc, hits);
                crossings += static_cast<int>(hits.size());
            }
        return (crossings % 2) == 1;
    }
    return false;  // unreachable for sane inputs
}

inline bool contains_strictly(const CircularDomain& d, Point p, const Tolerance& tol = kTol) {
    return d.is_region() && !on_boundary(d, p, tol) && contains(d, p, tol);
}

/// True iff every non-segment boundary arc bulges outward, i.e. the domain
/// interior lies on the interior side of the arc's disk. With the
/// interior-on-left storage convention this is exactly "all circle arcs are
/// traversed counter-clockwise".
inline bool is_pseudo_convex(const CircularDomain& d) {
    if (!d.is_region()) return true;  // point sets are vacuously pseudo-convex
    for (const Loop& loop : d.loops())
        for (const CircularArc& arc : loop)
            if (arc.is_circle() && !arc.ccw()) return false;
    return true;
}

/// Convexity check for a region: a single loop, all arcs counter-clockwise,
/// non-negative turning at every vertex, total turning one revolution.
/// Flat (zero-area) loops such as a doubled segment count as convex.
inline bool is_convex(const CircularDomain& d, const Tolerance& tol = kTol) {
    if (!d.is_region() || d.loops().size() != 1) return false;
    const Loop& loop = d.loops().front();
    if (loop.empty()) return false;
    double totalTurn = 0.0;
    const std::size_t m = loop.size();
    for (std::size_t i = 0; i < m; ++i) {
        const CircularArc& cur = loop[i];
        const CircularArc& nxt = loop[(i + 1) % m];
        if (cur.is_circle()) {
            if (!cur.ccw()) return false;
            totalTurn += cur.sweep();
        }
        Vec2 din = cur.tangent_at(1.0).vec();
        Vec2 dout = nxt.tangent_at(0.0).vec();
        double cross = din.cross(dout), dot = din.dot(dout);
        double turn = std::atan2(cross, dot);  // (-pi, pi]
        if (turn < -1e2 * tol.ang) {
            if (turn > -kPi + 1e-9) return false;
            turn = kPi;  // exact U-turn counts as a left turn (flat loops)
        }
        totalTurn += turn;
    }
    return std::abs(totalTurn - kTwoPi) <= 1e-6;
}

// ---------------------------------------------------------------------------
// Arrangement machinery: split boundary arcs at pairwise intersections,
// classify the pieces, and chain kept pieces back into loops.
// ---------------------------------------------------------------------------

namespace detail {

struct SoupEdge {
    CircularArc arc;
    int domain = -1;  // index of the source domain (or piece)
    int twin = -1;    // paired half-edge, -1 if single-sided
    int tail = -1;    // vertex ids, filled by VertexIndex
    int head = -1;
};

class VertexIndex {
public:
    explicit VertexIndex(double snapTol) : snap_(snapTol) {}

    int id_of(Point p) {
        for (std::size_t i = 0; i < pts_.size(); ++i)
            if (almost_equal(pts_[i], p, snap_)) return static_cast<int>(i);
        pts_.push_back(p);
        return static_cast<int>(pts_.size()) - 1;
    }

    Point at(int id) const { return pts_[static_cast<std::size_t>(id)]; }
    std::size_t size() const { return pts_.size(); }

private:
    double snap_;
    std::vector<Point> pts_;
};

/// Split one arc at the given points (assumed on the arc); keeps the
/// original endpoints exact and drops empty slivers.
inline std::vector<CircularArc> split_arc_at_points(const CircularArc& arc,
                                                    std::vector<Point> pts,
                                                    const Tolerance& tol = kTol) {
    if (arc.is_segment()) {
        Vec2 d = arc.b - arc.a;
        double len = d.norm();
        std::vector<std::pair<double, Point>> cuts;
        for (Point p : pts) {
            double t = (p - arc.a).dot(d) / std::max(len * len, tol.len * tol.len);
            if (t > tol.len / std::max(len, tol.len) &&
                t < 1.0 - tol.len / std::max(len, tol.len))
                cuts.push_back({t, p});
        }
        std::sort(cuts.begin(), cuts.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<CircularArc> out;
        Point prev = arc.a;
        double prevT = 0.0;
        for (const auto& [t, p] : cuts) {
            if (t - prevT <= tol.len / std::max(len, tol.len)) continue;
            out.push_back(CircularArc::segment(prev, p));
            prev = p;
            prevT = t;
        }
        out.push_back(CircularArc::segment(prev, arc.b));
        return out;
    }

    const double lo = arc.angle_lo(), hi = arc.angle_hi();
    const double angTol = tol.ang + tol.len / std::max(arc.radius, tol.len);
    std::vector<double> cuts;
    for (Point p : pts) {
        double theta = normalize_angle(std::atan2(p.y - arc.center.y, p.x - arc.center.x));
        for (double shift : {0.0, kTwoPi, -kTwoPi}) {
            double th = theta + shift;
            if (th > lo + angTol && th < hi - angTol) cuts.push_back(th);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [&](double x, double y) { return std::abs(x - y) <= angTol; }),
               cuts.end());
    std::vector<CircularArc> out;
    if (arc.ccw()) {
        double prev = lo;
        for (double c : cuts) {
            out.push_back(CircularArc::circle(arc.center, arc.radius, prev, c));
            prev = c;
        }
        out.push_back(CircularArc::circle(arc.center, arc.radius, prev, hi));
    } else {
        double prev = hi;
        for (auto it = cuts.rbegin(); it != cuts.rend(); ++it) {
            out.push_back(
                CircularArc::circle(arc.center, arc.radius, prev, *it, Orientation::Cw));
            prev = *it;
        }
        out.push_back(CircularArc::circle(arc.center, arc.radius, prev, lo, Orientation::Cw));
    }
    return out;
}

inline bool same_support(const CircularArc& a, const CircularArc& b, const Tolerance& tol) {
    if (a.kind != b.kind) return false;
    if (a.is_circle())
        return almost_equal(a.center, b.center, 10 * tol.len) &&
               std::abs(a.radius - b.radius) <= 10 * tol.len;
    // Segments: collinear supports.
    Vec2 d1 = a.b - a.a, d2 = b.b - b.a;
    double scale = std::max(d1.norm(), d2.norm());
    if (std::abs(d1.cross(d2)) > 10 * tol.len * scale) return false;
    return std::abs((b.a - a.a).cross(d1)) <= 10 * tol.len * std::max(d1.norm(), tol.len);
}

/// Merge consecutive loop arcs that continue on the same supporting circle
/// or line in the same direction; such joints are artifacts of splitting,
/// not real vertices. `joinTol` is the endpoint gap considered coincident.
inline void merge_loop_arcs(Loop& loop, const Tolerance& tol = kTol, double joinTol = -1.0) {
    if (joinTol < 0) joinTol = 100 * tol.len;
    bool changed = true;
    while (changed && loop.size() >= 2) {
        changed = false;
        for (std::size_t i = 0; i < loop.size() && loop.size() >= 2; ++i) {
            std::size_t j = (i + 1) % loop.size();
            CircularArc& x = loop[i];
            const CircularArc& y = loop[j];
            if (x.kind != y.kind) continue;
            if (!almost_equal(x.end(), y.start(), joinTol)) continue;
            if (x.is_segment()) {
                Vec2 d1 = x.b - x.a, d2 = y.b - y.a;
                if (std::abs(d1.cross(d2)) > 10 * tol.len * std::max(d1.norm(), d2.norm()))
                    continue;
                if (d1.dot(d2) <= 0) continue;
                x = CircularArc::segment(x.a, y.b);
            } else {
                if (x.ccw() != y.ccw()) continue;
                if (!almost_equal(x.center, y.center, 10 * tol.len) ||
                    std::abs(x.radius - y.radius) > 10 * tol.len)
                    continue;
                double total = std::min(x.sweep() + y.sweep(), kTwoPi);
                double to = x.ccw() ? x.angleFrom + total : x.angleFrom - total;
                x = CircularArc::circle(x.center, x.radius, x.angleFrom, to, x.orientation);
            }
            loop.erase(loop.begin() + static_cast<std::ptrdiff_t>(j));
            changed = true;
        }
    }
}

/// Walk directed edges into closed loops, always taking the first outgoing
/// edge met when rotating clockwise from the reversed arrival direction
/// (ties broken toward the more right-curving edge). This keeps the region
/// lying to the left of each edge connected around the loop. `joinTol` is
/// forwarded to the co-circular merge of the finished loops.
inline std::vector<Loop> chain_loops(std::vector<SoupEdge>& edges, VertexIndex& verts,
                                     const Tolerance& tol = kTol, double joinTol = -1.0) {
    const int n = static_cast<int>(edges.size());
    std::vector<std::vector<int>> out(verts.size());
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(edges[i].tail)].push_back(i);

    auto next_edge = [&](int cur) -> int {
        const SoupEdge& e = edges[static_cast<std::size_t>(cur)];
        Vec2 back = e.arc.tangent_at(1.0).reversed().vec();
        double backAng = std::atan2(back.y, back.x);
        int best = -1;
        double bestKey = std::numeric_limits<double>::max();
        double bestCurv = 0.0;
        for (int cand : out[static_cast<std::size_t>(e.head)]) {
            if (cand == e.twin && e.twin >= 0) continue;
            const SoupEdge& c = edges[static_cast<std::size_t>(cand)];
            Vec2 dir = c.arc.tangent_at(0.0).vec();
            double ang = std::atan2(dir.y, dir.x);
            double cw = normalize_angle(backAng - ang);  // clockwise rotation amount
            if (cw <= tol.ang) cw += kTwoPi;             // the reverse itself goes last
            double curv = c.arc.curvature();
            if (cw < bestKey - 1e-9 ||
                (cw < bestKey + 1e-9 && curv < bestCurv)) {
                bestKey = cw;
                best = cand;
                bestCurv = curv;
            }
        }
        if (best < 0 && e.twin >= 0) return e.twin;  // dead end: U-turn
        return best;
    };

    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::vector<Loop> loops;
    for (int start = 0; start < n; ++start) {
        if (used[static_cast<std::size_t>(start)]) continue;
        Loop loop;
        int cur = start;
        int guard = 0;
        bool ok = true;
        while (true) {
            if (used[static_cast<std::size_t>(cur)]) {
                ok = false;  // ran into an already-consumed edge: inconsistent soup
                break;
            }
            used[static_cast<std::size_t>(cur)] = true;
            loop.push_back(edges[static_cast<std::size_t>(cur)].arc);
            int nxt = next_edge(cur);
            if (nxt < 0) {
                ok = false;
                break;
            }
            if (nxt == start) break;
            cur = nxt;
            if (++guard > n + 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            merge_loop_arcs(loop, tol, joinTol);
            loops.push_back(std::move(loop));
        }
    }
    return loops;
}

enum class BoolMode { Intersect, Unite };

/// Boundary-classification boolean over region domains. Returns the loops
/// of the result plus candidate isolated points (arrangement vertices that
/// satisfy the predicate but bound no kept area, e.g. tangencies).
struct BoolResult {
    std::vector<Loop> loops;
    std::vector<Point> isolated;
};

inline BoolResult combine_regions(const std::vector<CircularDomain>& domains, BoolMode mode,
                                  const Tolerance& tol = kTol) {
    struct RawEdge {
        CircularArc arc;
        int domain;
        std::vector<Point> cuts;
    };
    std::vector<RawEdge> raw;
    for (std::size_t di = 0; di < domains.size(); ++di)
        for (const Loop& loop : domains[di].loops())
            for (const CircularArc& arc : loop)
                raw.push_back({arc, static_cast<int>(di), {}});

    std::vector<Point> crossings;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        for (std::size_t j = i + 1; j < raw.size(); ++j) {
            if (raw[i].domain == raw[j].domain) continue;
            auto r = arc_arc_intersections(raw[i].arc, raw[j].arc, tol);
            for (Point p : r.points) {
                raw[i].cuts.push_back(p);
                raw[j].cuts.push_back(p);
                push_unique(crossings, p, 10 * tol.len);
            }
            if (r.overlap) {
                // Split each at the other's endpoints so coincident pieces align.
                for (Point p : {raw[j].arc.start(), raw[j].arc.end()})
                    if (point_on_arc(p, raw[i].arc, tol)) raw[i].cuts.push_back(p);
                for (Point p : {raw[i].arc.start(), raw[i].arc.end()})
                    if (point_on_arc(p, raw[j].arc, tol)) raw[j].cuts.push_back(p);
            }
        }
    }

    struct Piece {
        CircularArc arc;
        int domain;
        bool kept = false;
    };
    std::vector<Piece> pieces;
    for (const RawEdge& e : raw)
        for (const CircularArc& sub : split_arc_at_points(e.arc, e.cuts, tol))
            pieces.push_back({sub, e.domain, false});

    auto passes = [&](Point mid, int owner) {
        for (std::size_t dj = 0; dj < domains.size(); ++dj) {
            if (static_cast<int>(dj) == owner) continue;
            if (mode == BoolMode::Intersect) {
                if (!contains(domains[dj], mid, tol)) return false;
            } else {
                if (contains_strictly(domains[dj], mid, tol)) return false;
            }
        }
        return true;
    };
    for (Piece& p : pieces) p.kept = passes(p.arc.point_at(0.5), p.domain);

    // Coincident pieces from overlapping boundaries: keep one copy of
    // same-direction pairs, drop both of opposite-direction pairs.
    const double snap = std::max(100 * tol.len, 1e-6);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (!pieces[i].kept) continue;
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            if (!pieces[j].kept || pieces[i].domain == pieces[j].domain) continue;
            if (!same_support(pieces[i].arc, pieces[j].arc, tol)) continue;
            Point is = pieces[i].arc.start(), ie = pieces[i].arc.end();
            Point js = pieces[j].arc.start(), je = pieces[j].arc.end();
            // Tangent alignment separates the directions even for closed
            // arcs whose start and end coincide.
            double align = pieces[i].arc.tangent_at(0.5).vec().dot(
                pieces[j].arc.tangent_at(0.5).vec());
            bool midTouch = almost_equal(pieces[i].arc.point_at(0.5),
                                         pieces[j].arc.point_at(0.5), snap);
            bool sameDir = align > 0 && midTouch && almost_equal(is, js, snap) &&
                           almost_equal(ie, je, snap);
            bool oppDir = align < 0 && midTouch && almost_equal(is, je, snap) &&
                          almost_equal(ie, js, snap);
            if (sameDir) pieces[j].kept = false;
            if (oppDir) {
                pieces[i].kept = false;
                pieces[j].kept = false;
            }
        }
    }

    // Near-tangent boundaries flip the inside test within a hair of the
    // contact point, leaving sliver sub-arcs from both domains. Dropping
    // anything below the vertex snap keeps the chained boundary closed.
    const double sliverLen = snap / 3;
    VertexIndex verts(snap);
    std::vector<SoupEdge> edges;
    for (const Piece& p : pieces) {
        if (!p.kept) continue;
        if (p.arc.length() <= sliverLen) continue;
        SoupEdge e;
        e.arc = p.arc;
        e.domain = p.domain;
        e.tail = verts.id_of(p.arc.start());
        e.head = verts.id_of(p.arc.end());
        edges.push_back(e);
    }

    BoolResult result;
    result.loops = chain_loops(edges, verts, tol, 2 * snap);

    if (mode == BoolMode::Intersect) {
        // Degenerate intersections (tangencies, point contacts) leave no
        // kept area; surface them as isolated points.
        std::vector<Point> candidates = crossings;
        for (const CircularDomain& d : domains)
            for (const Loop& loop : d.loops())
                for (const CircularArc& arc : loop) push_unique(candidates, arc.start(), 10 * tol.len);
        for (Point p : candidates) {
            bool inAll = true;
            for (const CircularDomain& d : domains)
                if (!contains(d, p, tol)) {
                    inAll = false;
                    break;
                }
            if (inAll) push_unique(result.isolated, p, 10 * tol.len);
        }
    }
    return result;
}

}  // namespace detail

/// Closed intersection of region domains (point sets are filtered through
/// the remaining domains). Degenerate contacts yield a point-set result;
/// an empty intersection yields the empty domain.
inline CircularDomain intersect_domains(const std::vector<CircularDomain>& ds,
                                        const Tolerance& tol = kTol) {
    if (ds.empty()) throw std::invalid_argument("intersect_domains: no inputs");
    if (ds.size() == 1) return ds.front();

    // Point-set inputs reduce to filtering their points through the rest.
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (!ds[i].is_point_set()) continue;
        std::vector<Point> keep;
        for (Point p : ds[i].points()) {
            bool inAll = true;
            for (std::size_t j = 0; j < ds.size(); ++j) {
                if (j == i) continue;
                if (!contains(ds[j], p, tol)) {
                    inAll = false;
                    break;
                }
            }
            if (inAll) keep.push_back(p);
        }
        if (keep.empty()) return CircularDomain::empty();
        return CircularDomain::point_set(std::move(keep));
    }

    for (const CircularDomain& d : ds)
        if (d.is_empty()) return CircularDomain::empty();

    // Cheap rejection: bounding boxes must pairwise meet.
    std::vector<Box> boxes;
    boxes.reserve(ds.size());
    for (const CircularDomain& d : ds) boxes.push_back(bounding_box(d));
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = i + 1; j < ds.size(); ++j)
            if (!boxes[i].intersects(boxes[j], tol.len)) return CircularDomain::empty();

    auto res = detail::combine_regions(ds, detail::BoolMode::Intersect, tol);
    if (!res.loops.empty()) return CircularDomain::region(std::move(res.loops));
    if (!res.isolated.empty()) return CircularDomain::point_set(std::move(res.isolated));
    return CircularDomain::empty();
}

/// Intersection with a closed grid cell.
inline CircularDomain clip_to_cell(const CircularDomain& d, const GridCell& cell,
                                   const Tolerance& tol = kTol) {
    if (d.is_point_set()) {
        std::vector<Point> keep;
        for (Point p : d.points())
            if (cell.contains(p, tol.len)) keep.push_back(p);
        if (keep.empty()) return CircularDomain::empty();
        return CircularDomain::point_set(std::move(keep));
    }
    if (d.is_empty()) return CircularDomain::empty();
    return intersect_domains({d, CircularDomain::cell(cell)}, tol);
}

/// Boundary of the union of equal-radius disks centered at ps.
inline CircularDomain disk_union(const std::vector<Point>& ps, double radius = 1.0,
                                 const Tolerance& tol = kTol) {
    if (ps.empty()) throw std::invalid_argument("disk_union: empty input");
    std::vector<Point> centers;
    for (Point p : ps) detail::push_unique(centers, p, tol.len);
    std::vector<CircularDomain> disks;
    disks.reserve(centers.size());
    for (Point c : centers) disks.push_back(CircularDomain::disk(c, radius));
    if (disks.size() == 1) return disks.front();
    auto res = detail::combine_regions(disks, detail::BoolMode::Unite, tol);
    return CircularDomain::region(std::move(res.loops));
}

/// General union of region domains (used for Minkowski sums of decomposed
/// pieces; the public entry point for unions is disk_union).
inline CircularDomain unite_domains(const std::vector<CircularDomain>& ds,
                                    const Tolerance& tol = kTol) {
    std::vector<CircularDomain> regions;
    for (const CircularDomain& d : ds)
        if (!d.is_empty()) regions.push_back(d);
    if (regions.empty()) return CircularDomain::empty();
    if (regions.size() == 1) return regions.front();
    auto res = detail::combine_regions(regions, detail::BoolMode::Unite, tol);
    return CircularDomain::region(std::move(res.loops));
}

// ---------------------------------------------------------------------------
// Vertical decomposition
// ---------------------------------------------------------------------------

/// Vertical decomposition of a pseudo-convex region into interior-disjoint
/// convex pieces: rays are shot up and down from every reflex boundary
/// vertex, stopping at the first boundary (or previously placed wall) hit.
/// Pseudo-convexity plus vertex angles at most pi makes each piece convex,
/// so convex inputs come back unchanged as a single piece.
inline std::vector<CircularDomain> vertical_decomposition(const CircularDomain& d,
                                                          const Tolerance& tol = kTol) {
    if (!d.is_region()) throw std::invalid_argument("vertical_decomposition: region required");
    if (d.is_empty()) return {};
    if (!is_pseudo_convex(d))
        throw std::invalid_argument("vertical_decomposition: input not pseudo-convex");
    if (is_convex(d, tol)) return {d};

    const std::vector<Loop>& loops = d.loops();

    // Flattened boundary with per-arc cut lists (walls may land mid-arc).
    struct BEdge {
        CircularArc arc;
        std::vector<Point> cuts;
    };
    std::vector<BEdge> boundary;
    for (const Loop& loop : loops)
        for (const CircularArc& arc : loop) boundary.push_back({arc, {}});

    struct Wall {
        Point a, b;  // a = source vertex, b = landing
    };
    std::vector<Wall> walls;

    auto shoot = [&](Point v, double dirY) -> std::optional<Point> {
        Vec2 dir{0.0, dirY};
        double bestT = std::numeric_limits<double>::max();
        int bestArc = -1;
        Point bestP{};
        for (std::size_t bi = 0; bi < boundary.size(); ++bi) {
            const CircularArc& arc = boundary[bi].arc;
            if (arc.is_segment()) {
                Vec2 d2 = arc.b - arc.a;
                double denom = dir.cross(d2);
                if (std::abs(denom) <= 1e-12 * std::max(1.0, d2.norm())) {
                    // Vertical segment collinear with the ray: stop at its
                    // nearest endpoint if the supports coincide.
                    if (std::abs(arc.a.x - v.x) <= tol.len) {
                        for (Point q : {arc.a, arc.b}) {
                            double t = (q - v).dot(dir);
                            if (t > 10 * tol.len && t < bestT) {
                                bestT = t;
                                bestArc = static_cast<int>(bi);
                                bestP = q;
                            }
                        }
                    }
                    continue;
                }
                double t = (arc.a - v).cross(d2) / denom;
                double u = (arc.a - v).cross(dir) / denom;
                if (u < -1e-9 || u > 1.0 + 1e-9) continue;
                if (t > 10 * tol.len && t < bestT) {
                    bestT = t;
                    bestArc = static_cast<int>(bi);
                    bestP = arc.a + d2 * u;
                }
            } else {
                auto cl = detail::circle_line(arc.center, arc.radius, v, dir, tol);
                for (int i = 0; i < cl.count; ++i) {
                    double t = (cl.p[i] - v).dot(dir);
                    if (t <= 10 * tol.len || t >= bestT) continue;
                    double theta = normalize_angle(
                        std::atan2(cl.p[i].y - arc.center.y, cl.p[i].x - arc.center.x));
                    if (!arc.contains_angle(theta, tol)) continue;
                    bestT = t;
                    bestArc = static_cast<int>(bi);
                    bestP = cl.p[i];
                }
            }
        }
        // Previously placed walls are obstacles too (stops collinear overlap).
        for (const Wall& w : walls) {
            if (std::abs(w.a.x - v.x) > tol.len) continue;
            for (Point q : {w.a, w.b}) {
                double t = (q - v).dot(dir);
                if (t > 10 * tol.len && t < bestT) {
                    bestT = t;
                    bestArc = -2;
                    bestP = q;
                }
            }
        }
        if (bestArc == -1) return std::nullopt;
        if (bestArc >= 0) boundary[static_cast<std::size_t>(bestArc)].cuts.push_back(bestP);
        return bestP;
    };

    // Shoot rays from every reflex loop vertex (interior sector wider than
    // pi) whose sector contains the vertical direction strictly.
    for (const Loop& loop : loops) {
        const std::size_t m = loop.size();
        for (std::size_t i = 0; i < m; ++i) {
            const CircularArc& in = loop[i];
            const CircularArc& outArc = loop[(i + 1) % m];
            Point v = outArc.start();
            Vec2 dIn = in.tangent_at(1.0).vec();
            Vec2 dOut = outArc.tangent_at(0.0).vec();
            double beta = normalize_angle(std::atan2(-dIn.y, -dIn.x) - std::atan2(dOut.y, dOut.x));
            if (beta <= tol.ang) beta = (dIn.dot(dOut) < 0) ? kTwoPi : 0.0;
            if (beta <= kPi + tol.ang) continue;
            for (double dirY : {1.0, -1.0}) {
                double alpha =
                    normalize_angle(std::atan2(dirY, 0.0) - std::atan2(dOut.y, dOut.x));
                if (alpha > 1e-7 && alpha < beta - 1e-7) {
                    if (auto hit = shoot(v, dirY)) walls.push_back({v, *hit});
                }
            }
        }
    }

    detail::VertexIndex verts(10 * tol.len);
    std::vector<detail::SoupEdge> edges;
    for (const BEdge& be : boundary) {
        for (const CircularArc& sub : detail::split_arc_at_points(be.arc, be.cuts, tol)) {
            detail::SoupEdge e;
            e.arc = sub;
            e.tail = verts.id_of(sub.start());
            e.head = verts.id_of(sub.end());
            edges.push_back(e);
        }
    }
    for (const Wall& w : walls) {
        if (dist(w.a, w.b) <= tol.len) continue;
        detail::SoupEdge e1, e2;
        e1.arc = CircularArc::segment(w.a, w.b);
        e2.arc = CircularArc::segment(w.b, w.a);
        e1.tail = verts.id_of(w.a);
        e1.head = verts.id_of(w.b);
        e2.tail = e1.head;
        e2.head = e1.tail;
        int base = static_cast<int>(edges.size());
        e1.twin = base + 1;
        e2.twin = base;
        edges.push_back(e1);
        edges.push_back(e2);
    }

    std::vector<Loop> faces = detail::chain_loops(edges, verts, tol);
    std::vector<CircularDomain> pieces;
    for (Loop& face : faces) {
        if (signed_area(face) <= tol.len * tol.len) continue;  // guards stray slivers
        CircularDomain piece = CircularDomain::region({std::move(face)});
        if (!is_convex(piece, tol))
            throw std::logic_error("vertical_decomposition: produced a non-convex piece");
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

/// First boundary vertex of a region, or the first point of a point set.
inline Point pick_point(const CircularDomain& d) {
    if (d.is_point_set()) {
        if (d.points().empty()) throw std::invalid_argument("pick_point: empty domain");
        return d.points().front();
    }
    if (d.is_empty()) throw std::invalid_argument("pick_point: empty domain");
    return d.loops().front().front().start();
}

/// Distance from p to the domain (0 when inside). Test oracle helper.
inline double distance_to_domain(Point p, const CircularDomain& d, const Tolerance& tol = kTol) {
    if (d.is_point_set()) {
        double best = std::numeric_limits<double>::max();
        for (Point q : d.points()) best = std::min(best, dist(p, q));
        return best;
    }
    if (d.is_empty()) return std::numeric_limits<double>::max();
    if (contains(d, p, tol)) return 0.0;
    double best = std::numeric_limits<double>::max();
    for (const Loop& loop : d.loops()) best = std::min(best, distance_to_chain(p, loop, tol));
    return best;
}

}  // namespace ebst
