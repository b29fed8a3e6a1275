#pragma once

// Planar primitives shared by all higher-level modules: points, unit
// vectors, circular arcs (including segments as the infinite-radius case),
// and their pairwise intersections under one tolerance policy.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ebst {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Tolerance knobs used by every geometric comparison. `len` is expressed
/// in scaled problem units (the solver normalizes the decision radius to 1).
struct Tolerance {
    double len = 1e-9;
    double ang = 1e-9;
    double norm = 1e-9;
};

inline constexpr Tolerance kTol{};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }

    constexpr double dot(Vec2 r) const { return x * r.x + y * r.y; }
    constexpr double cross(Vec2 r) const { return x * r.y - y * r.x; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }
    /// Perpendicular turned 90 degrees counter-clockwise.
    constexpr Vec2 perp() const { return {-y, x}; }

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

using Point = Vec2;

inline double dist(Point a, Point b) { return (a - b).norm(); }
inline double dist2(Point a, Point b) { return (a - b).norm2(); }

inline bool almost_equal(Point a, Point b, double tolLen = kTol.len) {
    return dist2(a, b) <= tolLen * tolLen;
}

/// Reduce an angle to [0, 2*pi).
inline double normalize_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    if (a >= kTwoPi) a = 0;  // fmod can round up to 2*pi
    return a;
}

/// Direction on the unit circle. Construction validates the normalization
/// invariant; use `of` to normalize an arbitrary non-zero vector.
struct UnitVector {
    double dx = 1.0;
    double dy = 0.0;

    UnitVector() = default;
    UnitVector(double dx_, double dy_, const Tolerance& tol = kTol) : dx(dx_), dy(dy_) {
        double n2 = dx * dx + dy * dy;
        if (std::abs(n2 - 1.0) > 3.0 * tol.norm)
            throw std::invalid_argument("UnitVector: input not normalized");
    }

    static UnitVector of(Vec2 v, const Tolerance& tol = kTol) {
        double n = v.norm();
        if (n <= tol.len) throw std::invalid_argument("UnitVector: zero-length input");
        UnitVector u;
        u.dx = v.x / n;
        u.dy = v.y / n;
        return u;
    }

    static UnitVector from_angle(double a) {
        UnitVector u;
        u.dx = std::cos(a);
        u.dy = std::sin(a);
        return u;
    }

    Vec2 vec() const { return {dx, dy}; }
    /// Polar angle in [0, 2*pi).
    double angle() const { return normalize_angle(std::atan2(dy, dx)); }
    UnitVector reversed() const {
        UnitVector u;
        u.dx = -dx;
        u.dy = -dy;
        return u;
    }
};

/// Angle swept when rotating clockwise from u to v, in [0, 2*pi).
inline double clockwise_angle(UnitVector u, UnitVector v) {
    return normalize_angle(u.angle() - v.angle());
}

/// Counter-clockwise companion of `clockwise_angle`.
inline double ccw_angle(UnitVector u, UnitVector v) {
    return normalize_angle(v.angle() - u.angle());
}

struct Box {
    Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};

    void expand(Point p) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    void expand(const Box& b) {
        expand(b.lo);
        expand(b.hi);
    }
    bool contains(Point p, double slack = 0.0) const {
        return p.x >= lo.x - slack && p.x <= hi.x + slack && p.y >= lo.y - slack &&
               p.y <= hi.y + slack;
    }
    bool intersects(const Box& b, double slack = 0.0) const {
        return lo.x <= b.hi.x + slack && b.lo.x <= hi.x + slack && lo.y <= b.hi.y + slack &&
               b.lo.y <= hi.y + slack;
    }
};

enum class ArcKind : std::uint8_t { CircleArc, Segment };
enum class Orientation : std::uint8_t { Ccw, Cw };

/// A connected portion of one circle or one line, directed along its
/// traversal. Circle arcs keep the smaller of the two angles in [0, 2*pi)
/// and sweep at most a full turn, so the angle interval [lo, hi] with
/// hi <= lo + 2*pi describes the arc without wraparound arithmetic; ccw
/// arcs run from -> to with from <= to, cw arcs mirrored. A full circle is
/// the single ccw arc [0, 2*pi].
struct CircularArc {
    ArcKind kind = ArcKind::Segment;
    // circle-arc fields
    Point center{};
    double radius = 0.0;
    double angleFrom = 0.0;
    double angleTo = 0.0;
    Orientation orientation = Orientation::Ccw;
    // segment fields
    Point a{};
    Point b{};

    static CircularArc segment(Point a_, Point b_) {
        CircularArc s;
        s.kind = ArcKind::Segment;
        s.a = a_;
        s.b = b_;
        return s;
    }

    /// Circle-arc constructor; shifts both angles by whole turns so the
    /// smaller one lands in [0, 2*pi). The sweep |to - from| must not
    /// exceed a full turn.
    static CircularArc circle(Point c, double r, double from, double to,
                              Orientation o = Orientation::Ccw) {
        CircularArc s;
        s.kind = ArcKind::CircleArc;
        s.center = c;
        s.radius = r;
        double lo = std::min(from, to);
        double turns = std::floor(lo / kTwoPi);
        s.angleFrom = from - turns * kTwoPi;
        s.angleTo = to - turns * kTwoPi;
        s.orientation = o;
        return s;
    }

    static CircularArc full_circle(Point c, double r) { return circle(c, r, 0.0, kTwoPi); }

    bool is_segment() const { return kind == ArcKind::Segment; }
    bool is_circle() const { return kind == ArcKind::CircleArc; }
    bool ccw() const { return orientation == Orientation::Ccw; }

    double angle_lo() const { return std::min(angleFrom, angleTo); }
    double angle_hi() const { return std::max(angleFrom, angleTo); }
    /// Unsigned angular extent (0 for segments).
    double sweep() const { return is_segment() ? 0.0 : angle_hi() - angle_lo(); }

    Point point_at_angle(double theta) const {
        return center + Vec2{radius * std::cos(theta), radius * std::sin(theta)};
    }

    Point start() const { return is_segment() ? a : point_at_angle(angleFrom); }
    Point end() const { return is_segment() ? b : point_at_angle(angleTo); }

    /// Point at normalized traversal parameter t in [0, 1].
    Point point_at(double t) const {
        if (is_segment()) return a + (b - a) * t;
        return point_at_angle(angleFrom + (angleTo - angleFrom) * t);
    }

    double length() const {
        if (is_segment()) return dist(a, b);
        return radius * sweep();
    }

    /// Direction of traversal at parameter t.
    UnitVector tangent_at(double t) const {
        if (is_segment()) return UnitVector::of(b - a);
        double theta = angleFrom + (angleTo - angleFrom) * t;
        Vec2 radial{std::cos(theta), std::sin(theta)};
        Vec2 tan = ccw() ? radial.perp() : -radial.perp();
        return UnitVector::of(tan);
    }

    /// Signed curvature along the traversal: +1/r when curving left,
    /// -1/r when curving right, 0 for segments.
    double curvature() const {
        if (is_segment()) return 0.0;
        return ccw() ? 1.0 / radius : -1.0 / radius;
    }

    CircularArc reversed() const {
        CircularArc r = *this;
        if (is_segment()) {
            std::swap(r.a, r.b);
        } else {
            std::swap(r.angleFrom, r.angleTo);
            r.orientation = ccw() ? Orientation::Cw : Orientation::Ccw;
        }
        return r;
    }

    Box bounds() const {
        Box bb;
        if (is_segment()) {
            bb.expand(a);
            bb.expand(b);
            return bb;
        }
        bb.expand(start());
        bb.expand(end());
        const double lo = angle_lo(), hi = angle_hi();
        const double cardinal[4] = {0.0, kPi / 2, kPi, 3 * kPi / 2};
        for (double c : cardinal) {
            for (double shift : {0.0, kTwoPi, -kTwoPi}) {
                double t = c + shift;
                if (t >= lo && t <= hi) bb.expand(point_at_angle(t));
            }
        }
        return bb;
    }

    /// Angular containment with the arc's range, tolerance scaled by radius.
    bool contains_angle(double theta, const Tolerance& tol = kTol) const {
        double slack = tol.ang + (radius > tol.len ? tol.len / radius : 0.0);
        double lo = angle_lo() - slack, hi = angle_hi() + slack;
        for (double shift : {0.0, kTwoPi, -kTwoPi}) {
            double t = theta + shift;
            if (t >= lo && t <= hi) return true;
        }
        return false;
    }

    /// Traversal parameter of a point assumed on the supporting curve,
    /// clamped to [0, 1].
    double param_of(Point p) const {
        if (is_segment()) {
            Vec2 d = b - a;
            double n2 = d.norm2();
            if (n2 == 0) return 0.0;
            return std::clamp((p - a).dot(d) / n2, 0.0, 1.0);
        }
        double theta = normalize_angle(std::atan2(p.y - center.y, p.x - center.x));
        double lo = angle_lo(), hi = angle_hi();
        double best = 0.0, bestErr = std::numeric_limits<double>::max();
        for (double shift : {0.0, kTwoPi, -kTwoPi}) {
            double t = theta + shift;
            double clamped = std::clamp(t, lo, hi);
            double err = std::abs(clamped - t);
            if (err < bestErr) {
                bestErr = err;
                best = clamped;
            }
        }
        double span = hi - lo;
        if (span <= 0) return 0.0;
        double u = (best - lo) / span;
        return ccw() ? u : 1.0 - u;
    }
};

/// Distance from a point to an arc (not the supporting curve: range-aware).
inline double distance_to_arc(Point p, const CircularArc& arc, const Tolerance& tol = kTol) {
    if (arc.is_segment()) {
        Vec2 d = arc.b - arc.a;
        double n2 = d.norm2();
        if (n2 <= tol.len * tol.len) return dist(p, arc.a);
        double t = std::clamp((p - arc.a).dot(d) / n2, 0.0, 1.0);
        return dist(p, arc.a + d * t);
    }
    double theta = normalize_angle(std::atan2(p.y - arc.center.y, p.x - arc.center.x));
    if (arc.contains_angle(theta, tol)) return std::abs(dist(p, arc.center) - arc.radius);
    return std::min(dist(p, arc.start()), dist(p, arc.end()));
}

/// True iff p lies on the arc within tol.len (supporting-curve distance)
/// and within the angular/parameter range.
inline bool point_on_arc(Point p, const CircularArc& arc, const Tolerance& tol = kTol) {
    if (arc.is_segment()) {
        Vec2 d = arc.b - arc.a;
        double len = d.norm();
        if (len <= tol.len) return almost_equal(p, arc.a, tol.len);
        Vec2 u = d * (1.0 / len);
        double off = std::abs((p - arc.a).cross(u));
        if (off > tol.len) return false;
        double t = (p - arc.a).dot(u);
        return t >= -tol.len && t <= len + tol.len;
    }
    if (std::abs(dist(p, arc.center) - arc.radius) > tol.len) return false;
    double theta = normalize_angle(std::atan2(p.y - arc.center.y, p.x - arc.center.x));
    return arc.contains_angle(theta, tol);
}

/// The ccw arc covering the range from `from` to `to` (angles in radians,
/// any values). `from == to` is treated as an empty range, not a full
/// circle; empty ranges return no arc.
inline std::vector<CircularArc> make_ccw_arcs(Point c, double r, double from, double to,
                                              const Tolerance& tol = kTol) {
    std::vector<CircularArc> out;
    double f = normalize_angle(from);
    double sweep = normalize_angle(to - from);
    if (sweep <= tol.ang) return out;
    out.push_back(CircularArc::circle(c, r, f, f + sweep));
    return out;
}

struct ArcIntersections {
    std::vector<Point> points;
    bool overlap = false;
};

namespace detail {

/// Circle-circle intersection on supporting circles. `sameSupport` is set
/// when the circles coincide within tolerance.
struct CircleCircle {
    Point p[2];
    int count = 0;
    bool sameSupport = false;
};

inline CircleCircle circle_circle(Point c1, double r1, Point c2, double r2,
                                  const Tolerance& tol) {
    CircleCircle out;
    double d = dist(c1, c2);
    if (d <= tol.len && std::abs(r1 - r2) <= tol.len) {
        out.sameSupport = true;
        return out;
    }
    if (d <= tol.len) return out;  // concentric, distinct radii
    double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    double h2 = r1 * r1 - a * a;
    Vec2 u = (c2 - c1) * (1.0 / d);
    Point foot = c1 + u * a;
    if (std::abs(h2) <= tol.len * tol.len) {
        out.p[out.count++] = foot;  // tangency reports exactly one point
        return out;
    }
    if (h2 < 0) return out;
    double h = std::sqrt(h2);
    out.p[out.count++] = foot + u.perp() * h;
    out.p[out.count++] = foot - u.perp() * h;
    return out;
}

struct CircleLine {
    Point p[2];
    int count = 0;
};

/// Intersections of a circle with the line through `a` directed by `dir`
/// (not necessarily unit).
inline CircleLine circle_line(Point c, double r, Point a, Vec2 dir, const Tolerance& tol) {
    CircleLine out;
    double len = dir.norm();
    if (len <= tol.len) return out;
    Vec2 u = dir * (1.0 / len);
    double t0 = (c - a).dot(u);
    Point foot = a + u * t0;
    double off2 = dist2(foot, c);
    double h2 = r * r - off2;
    if (std::abs(h2) <= tol.len * tol.len) {
        out.p[out.count++] = foot;
        return out;
    }
    if (h2 < 0) return out;
    double h = std::sqrt(h2);
    out.p[out.count++] = foot + u * h;
    out.p[out.count++] = foot - u * h;
    return out;
}

inline void push_unique(std::vector<Point>& pts, Point p, double tolLen) {
    for (const Point& q : pts)
        if (almost_equal(p, q, tolLen)) return;
    pts.push_back(p);
}

/// Closed-interval overlap length of [a1,b1] and [a2,b2].
inline double interval_overlap(double a1, double b1, double a2, double b2) {
    return std::min(b1, b2) - std::max(a1, a2);
}

}  // namespace detail

/// All proper (isolated) intersection points of two arcs, plus an overlap
/// flag set when the arcs share a sub-arc of positive length. Overlapping
/// portions contribute no proper points; endpoint touches of same-support
/// arcs do.
inline ArcIntersections arc_arc_intersections(const CircularArc& x, const CircularArc& y,
                                              const Tolerance& tol = kTol) {
    ArcIntersections out;
    auto consider = [&](Point p) {
        if (point_on_arc(p, x, tol) && point_on_arc(p, y, tol))
            detail::push_unique(out.points, p, tol.len);
    };

    if (x.is_circle() && y.is_circle()) {
        auto cc = detail::circle_circle(x.center, x.radius, y.center, y.radius, tol);
        if (!cc.sameSupport) {
            for (int i = 0; i < cc.count; ++i) consider(cc.p[i]);
            return out;
        }
        // Same supporting circle: compare closed angular ranges. Ranges never
        // span the zero cut, so interval arithmetic with +-2*pi shifts works.
        double lo1 = x.angle_lo(), hi1 = x.angle_hi();
        double lo2 = y.angle_lo(), hi2 = y.angle_hi();
        double angTol = tol.ang + (x.radius > tol.len ? tol.len / x.radius : 0.0);
        for (double shift : {0.0, kTwoPi, -kTwoPi}) {
            double ov = detail::interval_overlap(lo1, hi1, lo2 + shift, hi2 + shift);
            if (ov > angTol) out.overlap = true;
        }
        if (!out.overlap) {
            consider(x.start());
            consider(x.end());
            consider(y.start());
            consider(y.end());
        }
        return out;
    }

    if (x.is_segment() && y.is_segment()) {
        Vec2 d1 = x.b - x.a, d2 = y.b - y.a;
        double denom = d1.cross(d2);
        double scale = std::max(d1.norm(), d2.norm());
        if (std::abs(denom) <= tol.len * scale) {
            // Parallel; collinear iff offset between lines is tiny.
            double off = (y.a - x.a).cross(d1) / std::max(d1.norm(), tol.len);
            if (std::abs(off) <= tol.len) {
                double len1 = d1.norm();
                Vec2 u = d1 * (1.0 / std::max(len1, tol.len));
                double ta = (y.a - x.a).dot(u), tb = (y.b - x.a).dot(u);
                double lo = std::min(ta, tb), hi = std::max(ta, tb);
                double ov = detail::interval_overlap(0.0, len1, lo, hi);
                if (ov > tol.len) {
                    out.overlap = true;
                } else {
                    consider(x.a);
                    consider(x.b);
                    consider(y.a);
                    consider(y.b);
                }
            }
            return out;
        }
        double t = (y.a - x.a).cross(d2) / denom;
        consider(x.a + d1 * t);
        return out;
    }

    const CircularArc& circ = x.is_circle() ? x : y;
    const CircularArc& seg = x.is_circle() ? y : x;
    auto cl = detail::circle_line(circ.center, circ.radius, seg.a, seg.b - seg.a, tol);
    for (int i = 0; i < cl.count; ++i) consider(cl.p[i]);
    return out;
}

/// Smallest distance from p to any point of the arc chain.
inline double distance_to_chain(Point p, const std::vector<CircularArc>& arcs,
                                const Tolerance& tol = kTol) {
    double best = std::numeric_limits<double>::max();
    for (const CircularArc& a : arcs) best = std::min(best, distance_to_arc(p, a, tol));
    return best;
}

}  // namespace ebst
