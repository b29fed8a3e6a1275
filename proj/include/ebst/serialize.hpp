#pragma once

// Text interfaces: instance parsing, result JSON, the debug serialization
// of circular domains, and static SVG figures for trees and feasible
// regions.

#include "solver.hpp"

#include <json.hpp>

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

namespace ebst {

/// Round-trips a double through 9 significant digits, the precision all
/// emitted floats carry.
inline double round9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::stod(buf);
}

/// Instance format: one point per line, two decimals separated by
/// whitespace; lines starting with '#' (and blank lines) are ignored.
inline std::vector<Point> read_points(std::istream& in) {
    std::vector<Point> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        double x, y;
        if (std::sscanf(line.c_str(), "%lf %lf", &x, &y) != 2)
            throw std::invalid_argument("input line " + std::to_string(lineno) +
                                        ": expected two numbers");
        pts.push_back({x, y});
    }
    return pts;
}

inline void write_points(std::ostream& out, const std::vector<Point>& pts) {
    for (const Point& p : pts) {
        char buf[80];
        std::snprintf(buf, sizeof(buf), "%.9g %.9g\n", p.x, p.y);
        out << buf;
    }
}

inline nlohmann::json arc_to_json(const CircularArc& arc) {
    nlohmann::json j;
    if (arc.is_segment()) {
        j["type"] = "segment";
        j["a"] = {round9(arc.a.x), round9(arc.a.y)};
        j["b"] = {round9(arc.b.x), round9(arc.b.y)};
    } else {
        j["type"] = "arc";
        j["center"] = {round9(arc.center.x), round9(arc.center.y)};
        j["radius"] = round9(arc.radius);
        j["from"] = round9(arc.angleFrom);
        j["to"] = round9(arc.angleTo);
        j["orientation"] = arc.ccw() ? "ccw" : "cw";
    }
    return j;
}

inline nlohmann::json domain_to_json(const CircularDomain& d) {
    nlohmann::json j;
    if (d.is_point_set()) {
        j["kind"] = "points";
        auto& pts = j["points"] = nlohmann::json::array();
        for (Point p : d.points()) pts.push_back({round9(p.x), round9(p.y)});
        return j;
    }
    j["kind"] = "region";
    auto& loops = j["loops"] = nlohmann::json::array();
    for (const Loop& loop : d.loops()) {
        nlohmann::json jl = nlohmann::json::array();
        for (const CircularArc& arc : loop) jl.push_back(arc_to_json(arc));
        loops.push_back(std::move(jl));
    }
    return j;
}

inline nlohmann::json counters_to_json(const Counters& c) {
    return {{"decide_calls", c.decideCalls},
            {"topologies_tried", c.topologiesTried},
            {"cell_maps_tried", c.cellMapsTried},
            {"regions_computed", c.regionsComputed},
            {"max_region_complexity", c.maxRegionComplexity}};
}

/// One solver run with its instrumentation: the result, per-phase wall
/// times, and the search counters.
struct RunReport {
    SolveResult result;
    double solveMs = 0.0;
    double oracleMs = 0.0;
    Counters counters;
};

/// The solve-result schema: terminals are indexed 0..n-1 in input order,
/// Steiner points n..n+k'-1; `edges` carries the full spanning tree.
inline nlohmann::json result_to_json(const SolveResult& r, const Counters& c) {
    nlohmann::json j;
    j["bottleneck"] = round9(r.bottleneck);
    auto& sp = j["steiner_points"] = nlohmann::json::array();
    for (Point p : r.steinerPoints) sp.push_back({round9(p.x), round9(p.y)});
    auto& edges = j["edges"] = nlohmann::json::array();
    for (auto [u, v] : r.keptForestEdges) edges.push_back({u, v});
    for (auto [u, v] : r.treeEdges) edges.push_back({u, v});
    j["k_used"] = r.kUsed;
    j["K"] = r.K;
    j["deviation_note"] = "binary-search optimization";
    j["counters"] = counters_to_json(c);
    return j;
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

namespace svg_detail {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

/// Path data for one loop; y is negated so math-space ccw renders as the
/// conventional orientation (SVG y grows downward).
inline std::string loop_path(const Loop& loop) {
    std::string d;
    Point s = loop.front().start();
    d += "M " + num(s.x) + " " + num(-s.y) + " ";
    for (const CircularArc& arc : loop) {
        Point e = arc.end();
        if (arc.is_segment()) {
            d += "L " + num(e.x) + " " + num(-e.y) + " ";
        } else {
            // Full-turn arcs need two SVG arc commands.
            bool fullish = arc.sweep() > kTwoPi - 1e-9;
            const char* sweepFlag = arc.ccw() ? "0" : "1";
            if (fullish) {
                Point mid = arc.point_at(0.5);
                d += "A " + num(arc.radius) + " " + num(arc.radius) + " 0 0 " + sweepFlag +
                     " " + num(mid.x) + " " + num(-mid.y) + " ";
            }
            const char* largeArc = (!fullish && arc.sweep() > kPi) ? "1" : "0";
            d += "A " + num(arc.radius) + " " + num(arc.radius) + " 0 " + largeArc + " " +
                 sweepFlag + " " + num(e.x) + " " + num(-e.y) + " ";
        }
    }
    d += "Z";
    return d;
}

}  // namespace svg_detail

/// Static figure of the witness tree: circles for terminals, squares for
/// Steiner points, one line per tree edge.
inline std::string svg_tree(const std::vector<Point>& terminals, const SolveResult& r) {
    Box box;
    for (Point p : terminals) box.expand(p);
    for (Point p : r.steinerPoints) box.expand(p);
    double margin = std::max(1.0, 0.1 * std::max(box.hi.x - box.lo.x, box.hi.y - box.lo.y));
    double w = box.hi.x - box.lo.x + 2 * margin;
    double h = box.hi.y - box.lo.y + 2 * margin;
    double markerR = std::max(w, h) / 120.0;

    auto pos = [&](int v) -> Point {
        return v < static_cast<int>(terminals.size())
                   ? terminals[static_cast<std::size_t>(v)]
                   : r.steinerPoints[static_cast<std::size_t>(v - static_cast<int>(terminals.size()))];
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" +
           svg_detail::num(box.lo.x - margin) + " " + svg_detail::num(-(box.hi.y + margin)) +
           " " + svg_detail::num(w) + " " + svg_detail::num(h) + "\">\n";
    auto edge = [&](std::pair<int, int> e, const char* cls) {
        Point a = pos(e.first), b = pos(e.second);
        out += "  <line class=\"" + std::string(cls) + "\" x1=\"" + svg_detail::num(a.x) +
               "\" y1=\"" + svg_detail::num(-a.y) + "\" x2=\"" + svg_detail::num(b.x) +
               "\" y2=\"" + svg_detail::num(-b.y) +
               "\" stroke=\"#555\" stroke-width=\"" + svg_detail::num(markerR / 3) + "\"/>\n";
    };
    for (auto e : r.keptForestEdges) edge(e, "forest-edge");
    for (auto e : r.treeEdges) edge(e, "steiner-edge");
    for (Point p : terminals)
        out += "  <circle class=\"terminal\" cx=\"" + svg_detail::num(p.x) + "\" cy=\"" +
               svg_detail::num(-p.y) + "\" r=\"" + svg_detail::num(markerR) +
               "\" fill=\"#1f4e9c\"/>\n";
    for (Point p : r.steinerPoints)
        out += "  <rect class=\"steiner\" x=\"" + svg_detail::num(p.x - markerR) + "\" y=\"" +
               svg_detail::num(-p.y - markerR) + "\" width=\"" + svg_detail::num(2 * markerR) +
               "\" height=\"" + svg_detail::num(2 * markerR) + "\" fill=\"#c23b21\"/>\n";
    out += "</svg>\n";
    return out;
}

/// Feasible regions of the winning guesses, drawn in the scaled coordinate
/// system (decision radius 1) together with the assigned cells and the
/// scaled terminals.
inline std::string svg_regions(const Instance& inst, const SolveResult& r) {
    const double lam = r.bottleneck;
    std::vector<Point> scaled;
    for (Point p : inst.points) scaled.push_back({p.x / lam, p.y / lam});

    std::vector<FeasibleRegion> regions;
    std::vector<GridCell> cells;
    if (!r.guesses.empty()) {
        Forest f = forest(inst, r.K);
        for (const WinningGuess& g : r.guesses) {
            solver_detail::ComponentSolver solver(scaled, f, g.component, nullptr);
            for (FeasibleRegion& fr : solver.all_regions(g.map)) regions.push_back(std::move(fr));
            for (const GridCell& c : g.map.cells) cells.push_back(c);
        }
    }

    Box box;
    for (Point p : scaled) box.expand(p);
    for (const FeasibleRegion& fr : regions)
        if (!fr.region.is_empty()) box.expand(bounding_box(fr.region));
    double margin = 0.5;
    double w = box.hi.x - box.lo.x + 2 * margin;
    double h = box.hi.y - box.lo.y + 2 * margin;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" +
           svg_detail::num(box.lo.x - margin) + " " + svg_detail::num(-(box.hi.y + margin)) +
           " " + svg_detail::num(w) + " " + svg_detail::num(h) + "\">\n";
    for (const GridCell& c : cells)
        out += "  <rect class=\"cell\" x=\"" + svg_detail::num(c.x0()) + "\" y=\"" +
               svg_detail::num(-c.y1()) + "\" width=\"" + svg_detail::num(c.eps) +
               "\" height=\"" + svg_detail::num(c.eps) +
               "\" fill=\"none\" stroke=\"#999\" stroke-width=\"0.004\"/>\n";
    for (const FeasibleRegion& fr : regions) {
        if (fr.region.is_point_set()) {
            for (Point p : fr.region.points())
                out += "  <circle class=\"region-point\" cx=\"" + svg_detail::num(p.x) +
                       "\" cy=\"" + svg_detail::num(-p.y) + "\" r=\"0.012\" fill=\"#2a9d2a\"/>\n";
            continue;
        }
        for (const Loop& loop : fr.region.loops())
            out += "  <path class=\"region\" d=\"" + svg_detail::loop_path(loop) +
                   "\" fill=\"#2a9d2a\" fill-opacity=\"0.25\" stroke=\"#2a9d2a\" "
                   "stroke-width=\"0.006\"/>\n";
    }
    for (Point p : scaled)
        out += "  <circle class=\"terminal\" cx=\"" + svg_detail::num(p.x) + "\" cy=\"" +
               svg_detail::num(-p.y) + "\" r=\"0.02\" fill=\"#1f4e9c\"/>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace ebst
