#pragma once

// Minkowski sum of a pseudo-convex circular domain (or point set) with the
// unit disk, plus the boundary-decomposition and monotonicity utilities
// used to certify complexity bounds in the test suites.

#include "circular_domain.hpp"

namespace ebst {

namespace detail {

/// Outward normal direction (as an angle) at the given traversal parameter
/// of an arc belonging to an interior-on-left loop.
inline double outward_normal_angle(const CircularArc& arc, double t) {
    Vec2 tan = arc.tangent_at(t).vec();
    Vec2 n{tan.y, -tan.x};  // right of the traversal direction
    return std::atan2(n.y, n.x);
}

/// Offset a convex (or flat) single-loop region outward by r: arcs grow in
/// radius, segments translate along their outward normal, and convex
/// vertices sprout vertex arcs sweeping between the adjacent normals.
inline CircularDomain offset_convex(const CircularDomain& d, double r,
                                    const Tolerance& tol = kTol) {
    const Loop& loop = d.loops().front();
    const std::size_t m = loop.size();
    Loop out;
    for (std::size_t i = 0; i < m; ++i) {
        const CircularArc& arc = loop[i];
        if (arc.is_segment()) {
            Vec2 dir = (arc.b - arc.a);
            Vec2 n = Vec2{dir.y, -dir.x} * (1.0 / dir.norm());
            out.push_back(CircularArc::segment(arc.a + n * r, arc.b + n * r));
        } else {
            out.push_back(CircularArc::circle(arc.center, arc.radius + r, arc.angleFrom,
                                              arc.angleTo, arc.orientation));
        }
        const CircularArc& next = loop[(i + 1) % m];
        Point v = next.start();
        double n1 = outward_normal_angle(arc, 1.0);
        double n2 = outward_normal_angle(next, 0.0);
        double sweep = normalize_angle(n2 - n1);
        if (sweep > 1e-7 && sweep < kTwoPi - 1e-7)
            out.push_back(CircularArc::circle(v, r, n1, n1 + sweep));
    }
    merge_loop_arcs(out, tol);
    return CircularDomain::region({std::move(out)});
}

}  // namespace detail

/// d (+) D for the closed unit disk D. Point sets delegate to disk_union;
/// convex regions are offset directly; other pseudo-convex regions go
/// through vertical decomposition, per-piece convex offsets, and a union of
/// the resulting pseudo-disks.
inline CircularDomain minkowski_unit_disk(const CircularDomain& d, const Tolerance& tol = kTol) {
    if (d.is_point_set()) {
        if (d.points().empty()) return CircularDomain::empty();
        return disk_union(d.points(), 1.0, tol);
    }
    if (d.is_empty()) return CircularDomain::empty();
    if (!is_pseudo_convex(d))
        throw std::invalid_argument("minkowski_unit_disk: input not pseudo-convex");
    if (d.loops().size() == 1 && is_convex(d, tol)) return detail::offset_convex(d, 1.0, tol);

    std::vector<CircularDomain> offsets;
    for (const Loop& loop : d.loops()) {
        CircularDomain part = CircularDomain::region({loop});
        if (is_convex(part, tol)) {
            offsets.push_back(detail::offset_convex(part, 1.0, tol));
        } else {
            for (const CircularDomain& piece : vertical_decomposition(part, tol))
                offsets.push_back(detail::offset_convex(piece, 1.0, tol));
        }
    }
    return unite_domains(offsets, tol);
}

/// Sampled star-shape test: for boundary samples p, the segment o-p must
/// stay inside d (10 interior points per segment).
inline bool star_center_check(const CircularDomain& d, Point o, const Tolerance& tol = kTol) {
    if (!d.is_region() || d.is_empty()) return false;
    if (!contains(d, o, tol)) return false;
    for (const Loop& loop : d.loops()) {
        for (const CircularArc& arc : loop) {
            for (int s = 0; s <= 8; ++s) {
                Point p = arc.point_at(s / 8.0);
                for (int j = 1; j <= 10; ++j) {
                    Point q = o + (p - o) * (j / 11.0);
                    if (!contains(d, q, tol)) return false;
                }
            }
        }
    }
    return true;
}

/// Subdivision of the boundary of d into `lambda` pieces by evenly spaced
/// rays from o; hit points are clockwise-ordered and piece i runs from hit
/// i-1 to hit i (clockwise along the boundary).
struct LambdaDecomposition {
    Point anchor;
    int lambda = 0;
    std::vector<Point> rayHits;
    std::vector<std::vector<CircularArc>> pieces;
};

inline LambdaDecomposition lambda_decompose(const CircularDomain& d, Point o, int lambda,
                                            const Tolerance& tol = kTol) {
    if (lambda < 10) throw std::invalid_argument("lambda_decompose: lambda must be >= 10");
    if (!d.is_region() || d.is_empty() || d.loops().size() != 1)
        throw std::invalid_argument("lambda_decompose: single-loop region required");

    const Loop& loop = d.loops().front();
    LambdaDecomposition out;
    out.anchor = o;
    out.lambda = lambda;

    // Hit each ray against the whole boundary; a star-shaped boundary is
    // struck exactly once per ray.
    std::vector<Point> hits;
    for (int i = 0; i < lambda; ++i) {
        double theta = -i * (kTwoPi / lambda);
        Vec2 dir{std::cos(theta), std::sin(theta)};
        std::vector<Point> rayPts;
        for (const CircularArc& arc : loop) {
            if (arc.is_segment()) {
                Vec2 d2 = arc.b - arc.a;
                double denom = dir.cross(d2);
                if (std::abs(denom) <= 1e-12 * std::max(1.0, d2.norm())) continue;
                double t = (arc.a - o).cross(d2) / denom;
                double u = (arc.a - o).cross(dir) / denom;
                if (t > 10 * tol.len && u >= -1e-9 && u <= 1.0 + 1e-9)
                    detail::push_unique(rayPts, arc.a + d2 * u, 10 * tol.len);
            } else {
                auto cl = detail::circle_line(arc.center, arc.radius, o, dir, tol);
                for (int j = 0; j < cl.count; ++j) {
                    double t = (cl.p[j] - o).dot(dir);
                    if (t <= 10 * tol.len) continue;
                    double ang = normalize_angle(
                        std::atan2(cl.p[j].y - arc.center.y, cl.p[j].x - arc.center.x));
                    if (arc.contains_angle(ang, tol))
                        detail::push_unique(rayPts, cl.p[j], 10 * tol.len);
                }
            }
        }
        if (rayPts.size() != 1)
            throw std::logic_error("lambda_decompose: ray does not hit the boundary exactly once");
        hits.push_back(rayPts.front());
    }
    out.rayHits = hits;

    // Split the (ccw) loop at the hit points, then walk it once recording
    // the ccw chain between consecutive hits; reversing gives the clockwise
    // pieces the decomposition is defined with.
    std::vector<CircularArc> chain;
    for (const CircularArc& arc : loop) {
        std::vector<Point> cuts;
        for (Point h : hits)
            if (point_on_arc(h, arc, tol)) cuts.push_back(h);
        for (const CircularArc& sub : detail::split_arc_at_points(arc, cuts, tol))
            chain.push_back(sub);
    }
    const std::size_t n = chain.size();
    auto hit_at = [&](Point p) -> int {
        for (std::size_t i = 0; i < hits.size(); ++i)
            if (almost_equal(hits[i], p, 100 * tol.len)) return static_cast<int>(i);
        return -1;
    };
    // Rotate the chain so it starts right after a hit vertex.
    std::size_t startIdx = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (hit_at(chain[i].start()) >= 0) {
            startIdx = i;
            break;
        }
    std::vector<std::vector<CircularArc>> ccwRuns;
    std::vector<int> runEndHit;  // hit index at the end of each ccw run
    std::vector<CircularArc> cur;
    int firstHit = hit_at(chain[startIdx].start());
    for (std::size_t k = 0; k < n; ++k) {
        const CircularArc& arc = chain[(startIdx + k) % n];
        cur.push_back(arc);
        int h = hit_at(arc.end());
        if (h >= 0) {
            ccwRuns.push_back(cur);
            runEndHit.push_back(h);
            cur.clear();
        }
    }
    if (!cur.empty() || static_cast<int>(ccwRuns.size()) != lambda)
        throw std::logic_error("lambda_decompose: boundary did not split into lambda pieces");

    // Piece i (clockwise from hit i-1 to hit i) is the reversed ccw run
    // that ends at hit i-1 ... i.e. the run whose ccw start is hit i.
    out.pieces.assign(static_cast<std::size_t>(lambda), {});
    int startHit = firstHit;
    for (std::size_t r = 0; r < ccwRuns.size(); ++r) {
        int sHit = startHit;  // hit at the ccw start of this run
        startHit = runEndHit[r];
        // Reversed, the run goes from hit runEndHit[r] to hit sHit, i.e. it
        // is the clockwise piece with index sHit (from hit sHit-1... map by
        // its clockwise endpoint).
        std::vector<CircularArc> rev;
        for (auto it = ccwRuns[r].rbegin(); it != ccwRuns[r].rend(); ++it)
            rev.push_back(it->reversed());
        out.pieces[static_cast<std::size_t>(sHit)] = std::move(rev);
    }
    for (const auto& piece : out.pieces)
        if (piece.empty()) throw std::logic_error("lambda_decompose: empty piece");
    return out;
}

/// True iff the inner product with v is strictly monotone along the chain:
/// no arc has an interior extremum of <v,.> and the sign of <v,tangent> is
/// consistent across the whole chain.
inline bool is_v_monotone(const std::vector<CircularArc>& chain, UnitVector v,
                          const Tolerance& tol = kTol) {
    if (chain.empty()) return false;
    int sign = 0;
    for (const CircularArc& arc : chain) {
        if (arc.is_segment()) {
            double along = v.vec().dot(arc.b - arc.a) / std::max(dist(arc.a, arc.b), tol.len);
            if (std::abs(along) <= tol.ang) return false;
            int s = along > 0 ? 1 : -1;
            if (sign != 0 && s != sign) return false;
            sign = s;
            continue;
        }
        // Interior extrema of <v, .> sit where the radial direction is
        // parallel to v.
        double base = std::atan2(v.dy, v.dx);
        double lo = arc.angle_lo(), hi = arc.angle_hi();
        double angTol = tol.ang + tol.len / std::max(arc.radius, tol.len);
        for (double ext : {base, base + kPi}) {
            double e = normalize_angle(ext);
            for (double shift : {0.0, kTwoPi, -kTwoPi}) {
                double t = e + shift;
                if (t > lo + angTol && t < hi - angTol) return false;
            }
        }
        double mid = v.vec().dot(arc.tangent_at(0.5).vec());
        if (std::abs(mid) <= tol.ang) return false;
        int s = mid > 0 ? 1 : -1;
        if (sign != 0 && s != sign) return false;
        sign = s;
    }
    return true;
}

/// Proper intersection points of two boundary pieces (all-pairs arc
/// intersections; overlapping sub-arcs contribute no points).
inline std::vector<Point> proper_intersections_monotone(const std::vector<CircularArc>& g,
                                                        const std::vector<CircularArc>& h,
                                                        const Tolerance& tol = kTol) {
    std::vector<Point> out;
    for (const CircularArc& a : g)
        for (const CircularArc& b : h)
            for (Point p : arc_arc_intersections(a, b, tol).points)
                detail::push_unique(out, p, 10 * tol.len);
    return out;
}

}  // namespace ebst
