#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "giohms/errors.hpp"
#include "giohms/graph.hpp"
#include "giohms/rng.hpp"

using namespace giohms;

namespace {

// Test-side random graph kept as an explicit pair list, so assertions can be
// checked against the raw edges instead of the Graph being tested.
struct RawGraph {
    std::vector<VertexId> vertices;
    std::set<std::pair<VertexId, VertexId>> edges;  // u < v
};

RawGraph random_raw_graph(std::size_t n, double p, std::uint64_t seed) {
    RawGraph raw;
    Rng rng(seed);
    for (VertexId v = 0; v < n; ++v) raw.vertices.push_back(v * 3 + 1);  // sparse ids
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rng.next_double() < p) raw.edges.insert({raw.vertices[i], raw.vertices[j]});
        }
    }
    return raw;
}

Graph to_graph(const RawGraph& raw) {
    std::vector<std::pair<VertexId, VertexId>> edges(raw.edges.begin(), raw.edges.end());
    return Graph::from_edges(edges, raw.vertices);
}

} // namespace

TEST_CASE("parse_edge_list builds the vertex union and edge set") {
    const Graph g = parse_edge_list_text("0\t1\n1\t2");
    CHECK(g.vertices() == std::vector<VertexId>{0, 1, 2});
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("parse_edge_list deduplicates and symmetrizes") {
    const Graph g = parse_edge_list_text("# c\n0\t1\n1\t0\n0\t1");
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(1, 0));
}

TEST_CASE("parse_edge_list drops self-loops but keeps the vertex") {
    const Graph g = parse_edge_list_text("5\t5\n1 2");
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_vertex(5));
    CHECK(g.neighbor_ids(5).empty());
}

TEST_CASE("parse_edge_list reports malformed lines with their number") {
    CHECK_THROWS_WITH_AS(parse_edge_list_text("0 1\nx 2"),
                         doctest::Contains("line 2"), InputError);
    CHECK_THROWS_WITH_AS(parse_edge_list_text("0 1 2"),
                         doctest::Contains("line 1"), InputError);
    CHECK_THROWS_AS(parse_edge_list_text("0 1\n\n2 3"), InputError);
    CHECK_THROWS_AS(parse_edge_list_text("-1 2"), InputError);
}

TEST_CASE("induced_subgraph keeps exactly the selected vertices and their edges") {
    const Graph triangle = parse_edge_list_text("0 1\n1 2\n0 2");
    const Graph sub = induced_subgraph(triangle, {0, 1});
    CHECK(sub.vertices() == std::vector<VertexId>{0, 1});
    CHECK(sub.edge_count() == 1);
    CHECK(sub.has_edge(0, 1));

    const Graph same = induced_subgraph(triangle, triangle.vertices());
    CHECK(same.vertices() == triangle.vertices());
    CHECK(same.edge_count() == triangle.edge_count());

    CHECK_THROWS_AS(induced_subgraph(triangle, {0, 9}), InputError);
}

TEST_CASE("induced_subgraph matches a pairwise scan over the raw edge list") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const RawGraph raw = random_raw_graph(12, 0.4, seed);
        const Graph g = to_graph(raw);

        Rng rng(seed + 100);
        VertexSet s;
        for (const VertexId v : raw.vertices) {
            if (rng.next_double() < 0.5) s.push_back(v);
        }
        if (s.size() < 2) continue;

        const Graph sub = induced_subgraph(g, s);
        CHECK(sub.vertices() == s);
        std::size_t expected_edges = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                const bool in_raw = raw.edges.count({s[i], s[j]}) > 0;
                CHECK(sub.has_edge(s[i], s[j]) == in_raw);
                expected_edges += in_raw;
            }
        }
        CHECK(sub.edge_count() == expected_edges);
    }
}

TEST_CASE("ego_minus_ego removes the focal vertex") {
    const Graph triangle = parse_edge_list_text("0 1\n1 2\n0 2");
    const Graph eme = ego_minus_ego(triangle, 0);
    CHECK(eme.vertices() == std::vector<VertexId>{1, 2});
    CHECK(eme.has_edge(1, 2));

    const Graph star = parse_edge_list_text("9 1\n9 2\n9 3");
    const Graph leaves = ego_minus_ego(star, 9);
    CHECK(leaves.vertices() == std::vector<VertexId>{1, 2, 3});
    CHECK(leaves.edge_count() == 0);

    CHECK_THROWS_AS(ego_minus_ego(star, 4), InputError);
}

TEST_CASE("ego_minus_ego never contains the focal vertex and only original edges") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const RawGraph raw = random_raw_graph(15, 0.3, seed);
        const Graph g = to_graph(raw);
        for (const VertexId v : raw.vertices) {
            const Graph eme = ego_minus_ego(g, v);
            CHECK_FALSE(eme.has_vertex(v));
            for (const auto& [a, b] : eme.edge_ids()) {
                CHECK(raw.edges.count({std::min(a, b), std::max(a, b)}) == 1);
            }
        }
    }
}

TEST_CASE("edge list round-trips through serialization") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const RawGraph raw = random_raw_graph(14, 0.25, seed);
        const Graph g = to_graph(raw);

        std::ostringstream out;
        serialize_edge_list(g, out);
        const Graph back = parse_edge_list_text(out.str());

        CHECK(back.vertices() == g.vertices());
        CHECK(back.edge_count() == g.edge_count());
        CHECK(back.edge_ids() == g.edge_ids());
    }
}
