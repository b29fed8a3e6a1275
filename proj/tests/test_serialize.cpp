#include <ebst/serialize.hpp>

#include "test_support.hpp"

#include <doctest.h>

#include <sstream>

using namespace ebst;

TEST_CASE("read_points: comments, blanks, and malformed lines") {
    std::istringstream in("# header\n0 0\n\n  3.5 -2.25e-1\n# trailing\n");
    auto pts = read_points(in);
    REQUIRE(pts.size() == 2);
    CHECK(pts[1].x == doctest::Approx(3.5));
    CHECK(pts[1].y == doctest::Approx(-0.225));

    std::istringstream bad("0 0\noops\n");
    CHECK_THROWS_AS(read_points(bad), std::invalid_argument);
}

TEST_CASE("result JSON round-trips and re-validates the bottleneck") {
    Instance inst{{{0, 0}, {3, 0}, {1.1, 2.3}, {4.0, 1.2}}, 1};
    Counters counters;
    auto r = optimize(inst, {}, &counters);
    auto j = result_to_json(r, counters);

    auto parsed = nlohmann::json::parse(j.dump());
    CHECK(parsed["deviation_note"] == "binary-search optimization");
    CHECK(parsed["k_used"].get<int>() == r.kUsed);
    CHECK(parsed["K"].get<int>() == r.K);

    std::vector<Point> nodes = inst.points;
    for (const auto& sp : parsed["steiner_points"])
        nodes.push_back({sp[0].get<double>(), sp[1].get<double>()});
    double bottleneck = parsed["bottleneck"].get<double>();
    double maxEdge = 0;
    for (const auto& e : parsed["edges"]) {
        int u = e[0].get<int>(), v = e[1].get<int>();
        maxEdge = std::max(maxEdge,
                           dist(nodes[static_cast<std::size_t>(u)],
                                nodes[static_cast<std::size_t>(v)]));
    }
    CHECK(maxEdge <= bottleneck * (1 + 1e-6) + 1e-9);
    CHECK(maxEdge >= bottleneck / (1 + 1e-5));  // the witness is tight at the optimum
    CHECK(parsed["edges"].size() == inst.points.size() + parsed["steiner_points"].size() - 1);
}

TEST_CASE("domain JSON carries loops of arcs with centers, radii, angles") {
    auto lens = intersect_domains(
        {CircularDomain::disk({0, 0}, 1.0), CircularDomain::disk({0.05, 0}, 1.0)});
    auto j = domain_to_json(lens);
    CHECK(j["kind"] == "region");
    REQUIRE(j["loops"].size() == 1);
    CHECK(j["loops"][0].size() == 2);
    for (const auto& arc : j["loops"][0]) {
        CHECK(arc["type"] == "arc");
        CHECK(arc["radius"].get<double>() == doctest::Approx(1.0));
        CHECK(arc["orientation"] == "ccw");
    }
    auto pts = domain_to_json(CircularDomain::point_set({{1, 2}}));
    CHECK(pts["kind"] == "points");
    CHECK(pts["points"][0][0].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("tree SVG has one marker per node and one line per edge") {
    Instance inst{{{0, 0}, {3, 0}}, 1};
    auto r = optimize(inst);
    std::string svg = svg_tree(inst.points, r);
    auto count = [&](const std::string& needle) {
        std::size_t c = 0, pos = 0;
        while ((pos = svg.find(needle, pos)) != std::string::npos) {
            ++c;
            pos += needle.size();
        }
        return c;
    };
    CHECK(count("<circle class=\"terminal\"") == inst.points.size());
    CHECK(count("<rect class=\"steiner\"") == static_cast<std::size_t>(r.kUsed));
    CHECK(count("<line") == r.keptForestEdges.size() + r.treeEdges.size());
}

TEST_CASE("regions SVG draws the winning guess") {
    Instance inst{{{0, 0}, {3, 0}}, 1};
    auto r = optimize(inst);
    REQUIRE(!r.guesses.empty());
    std::string svg = svg_regions(inst, r);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("class=\"cell\"") != std::string::npos);
    bool hasRegion = svg.find("class=\"region\"") != std::string::npos ||
                     svg.find("class=\"region-point\"") != std::string::npos;
    CHECK(hasRegion);
}

TEST_CASE("round9 trims floats to nine significant digits") {
    CHECK(round9(1.23456789012345) == doctest::Approx(1.23456789).epsilon(1e-9));
    CHECK(round9(0.0) == 0.0);
    CHECK(round9(-12345.678912345) == doctest::Approx(-12345.6789).epsilon(1e-9));
}
