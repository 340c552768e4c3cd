#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "sdn/errors.hpp"
#include "sdn/graph.hpp"

using namespace sdn;

namespace {

NeighborGraph build(Family f, int n, int threads = 1) {
    return build_graph(seed_code(f, n), f, ExecContext{threads});
}

std::vector<std::uint64_t> census(Family f, int n) { return distance_census(build(f, n)).counts; }

}  // namespace

TEST_CASE("small graphs match the known censuses") {
    using V = std::vector<std::uint64_t>;
    const NeighborGraph g = build(Family::TypeIII, 4);
    CHECK(g.vertex_count() == 8);
    CHECK(g.edge_count() == 16);
    CHECK(distance_census(g).counts == V{1, 4, 3});
    CHECK(census(Family::TypeIV, 2) == V{1, 2});
    CHECK(census(Family::TypeIV, 4) == V{1, 10, 16});
    CHECK(census(Family::TypeIV, 6) == V{1, 42, 336, 512});
    CHECK(census(Family::TypeIII, 8) == V{1, 40, 390, 1080, 729});
}

TEST_CASE("structure and formula reports") {
    for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::TypeIII, 8}, {Family::TypeIV, 6}}) {
        const NeighborGraph g = build(f, n, 2);
        const GraphShape s = graph_shape(g.adj);
        CHECK(s.simple);
        CHECK(s.symmetric);
        CHECK(s.connected);
        CHECK(s.min_degree == s.max_degree);
        for (const auto& r : graph_reports(g, distance_census(g))) {
            CAPTURE(r.label);
            CHECK(r.has_match());
            CHECK(r.match());
        }
        for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(in_family(g.vertices[v], f));
        CHECK(g.find(g.vertices[5]) == VertexId{5});
    }
}

TEST_CASE("BFS distance equals codimension of the intersection") {
    for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::TypeIII, 4}, {Family::TypeIV, 4}, {Family::TypeIV, 6}}) {
        const auto r = verify_distance_codimension(build(f, n), ExecContext{2});
        CHECK(r.violations == 0);
        CHECK(r.pairs > 0);
    }
    const NeighborGraph g8 = build(Family::TypeIII, 8);
    const auto r = verify_distance_codimension_sampled(g8, 50, 5, ExecContext{2});
    CHECK(r.sampled);
    CHECK(r.pairs >= 50 * 2239);
    CHECK(r.violations == 0);
    CHECK_THROWS_AS(verify_distance_codimension(g8, {}, 1000), ResourceError);
}

TEST_CASE("distance-k graphs") {
    const NeighborGraph g = build(Family::TypeIII, 4);
    const Adjacency k2 = k_neighbor_graph(g, 2);
    const GraphShape s = graph_shape(k2);
    CHECK(k2.vertex_count() == 8);
    CHECK(s.min_degree == 3);
    CHECK(s.max_degree == 3);
    CHECK(k_neighbor_graph(g, 1) == g.adj);
    const NeighborGraph h = build(Family::TypeIV, 6);
    for (int k = 1; k <= 3; ++k) {
        const GraphShape sk = graph_shape(k_neighbor_graph(h, k));
        CHECK(BigInt(static_cast<unsigned long>(sk.min_degree)) == k_neighbor_count_formula(Family::TypeIV, 6, k));
        CHECK(sk.max_degree == sk.min_degree);
    }
}

TEST_CASE("builds are identical across thread counts and batch sizes") {
    const NeighborGraph a = build(Family::TypeIII, 8, 1);
    BuildOptions o;
    o.batch = 7;
    const NeighborGraph b = build_graph(seed_code(Family::TypeIII, 8), Family::TypeIII, ExecContext{4}, o);
    CHECK(a.vertices == b.vertices);
    CHECK(a.adj == b.adj);
}

TEST_CASE("checkpoint and resume reproduce the direct build") {
    const auto path = (std::filesystem::temp_directory_path() / "sdn_test_ckpt.bin").string();
    std::remove(path.c_str());
    const LinearCode seed = seed_code(Family::TypeIV, 6);
    BuildOptions o;
    o.checkpoint_path = path;
    o.checkpoint_every = 16;
    o.batch = 8;
    const NeighborGraph direct = build_graph(seed, Family::TypeIV, ExecContext{2}, o);
    CHECK(direct.vertex_count() == 891);
    BuildOptions r;
    r.resume_path = path;
    const NeighborGraph resumed = build_graph(seed, Family::TypeIV, ExecContext{2}, r);
    CHECK(resumed.vertices == direct.vertices);
    CHECK(resumed.adj == direct.adj);
    // A checkpoint for a different length is rejected.
    CHECK_THROWS_AS(build_graph(seed_code(Family::TypeIV, 4), Family::TypeIV, {}, r), UsageError);

    // Type II has no closed form, so the budget trips mid-build and leaves a checkpoint.
    const LinearCode e8 = standard_code(StandardCode::E8);
    BuildOptions small;
    small.vertex_budget = 10;
    small.checkpoint_path = path;
    small.batch = 2;
    CHECK_THROWS_AS(build_graph(e8, Family::TypeII, {}, small), ResourceError);
    BuildOptions again;
    again.resume_path = path;
    const NeighborGraph full = build_graph(e8, Family::TypeII, {}, again);
    CHECK(full.vertices == build_graph(e8, Family::TypeII).vertices);
    CHECK(full.adj == build_graph(e8, Family::TypeII).adj);
    std::remove(path.c_str());
}

TEST_CASE("vertex budget is checked against the closed form") {
    CHECK_THROWS_AS(build(Family::TypeIII, 12), ResourceError);
    BuildOptions o;
    o.vertex_budget = 100;
    CHECK_THROWS_AS(build_graph(seed_code(Family::TypeIII, 8), Family::TypeIII, {}, o), ResourceError);
}

TEST_CASE("exports") {
    const NeighborGraph g = build(Family::TypeIII, 4);
    const std::string csv = to_csv(g.adj);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line == "u,v");
    int rows = 0;
    while (std::getline(is, line)) {
        const auto comma = line.find(',');
        CHECK(std::stoul(line.substr(0, comma)) < std::stoul(line.substr(comma + 1)));
        ++rows;
    }
    CHECK(rows == 16);
    const std::string dot = to_dot(g.adj);
    CHECK(dot.rfind("graph G {", 0) == 0);
    CHECK(std::count(dot.begin(), dot.end(), '-') == 2 * 16);
}

TEST_CASE("Type II neighbor classes") {
    CHECK(neighbor_classes(standard_code(StandardCode::E8), Family::TypeII).size() == 1);
    CHECK(neighbor_classes(standard_code(StandardCode::DnPlus, 16), Family::TypeII).size() == 1);
    const auto cls = neighbor_classes(standard_code(StandardCode::DnPlus, 24), Family::TypeII);
    REQUIRE(cls.size() == 3);
    std::vector<std::uint64_t> a4;
    for (const auto& c : cls) a4.push_back(c.fingerprint.genus1[4]);
    std::sort(a4.begin(), a4.end());
    CHECK(a4 == std::vector<std::uint64_t>{30, 42, 66});
    const auto report = census_report(build(Family::TypeIV, 4), distance_census(build(Family::TypeIV, 4)));
    CHECK(report["formulas_matched"] == true);
}
