#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "giohms/errors.hpp"
#include "giohms/ohms.hpp"
#include "giohms/rng.hpp"

using namespace giohms;

TEST_CASE("observed distributions are uniform over a vertex's communities") {
    const Graph g = parse_edge_list_text("0 1\n1 2\n2 3");
    const Cover com = Cover::from_member_sets({{0, 1}, {1, 2, 3}});
    ThreadPool pool(1);
    const OhmsNetwork net = build_ohms(g, com, 2, pool);

    REQUIRE(net.hidden_vertices() == std::vector<VertexId>{0, 1, 2, 3});

    // vertex 0 sits in one community
    const auto& solo = net.observed(net.index_of(0));
    REQUIRE(solo.size() == 1);
    CHECK(solo[0].label == 0);
    CHECK(solo[0].weight == doctest::Approx(1.0));

    // vertex 1 sits in two
    const auto& both = net.observed(net.index_of(1));
    REQUIRE(both.size() == 2);
    CHECK(both[0].weight == doctest::Approx(0.5));
    CHECK(both[1].weight == doctest::Approx(0.5));

    for (std::uint32_t i = 0; i < net.hidden_count(); ++i) {
        double total = 0.0;
        for (const auto& obs : net.observed(i)) {
            total += obs.weight;
            // observed labels are always candidates
            const auto& cand = net.candidates(i);
            CHECK(std::binary_search(cand.begin(), cand.end(), obs.label));
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("candidates collect labels within the hop radius") {
    // path 0-1-2-3-4, communities {0,1}, {2}, {3,4}
    const Graph g = parse_edge_list_text("0 1\n1 2\n2 3\n3 4");
    const Cover com = Cover::from_member_sets({{0, 1}, {2}, {3, 4}});
    ThreadPool pool(1);

    const OhmsNetwork one_hop = build_ohms(g, com, 1, pool);
    CHECK(one_hop.candidates(one_hop.index_of(0)) == std::vector<LabelId>{0});
    CHECK(one_hop.candidates(one_hop.index_of(1)) == std::vector<LabelId>{0, 1});
    CHECK(one_hop.candidates(one_hop.index_of(2)) == std::vector<LabelId>{0, 1, 2});

    const OhmsNetwork two_hop = build_ohms(g, com, 2, pool);
    CHECK(two_hop.candidates(two_hop.index_of(0)) == std::vector<LabelId>{0, 1});
    CHECK(two_hop.candidates(two_hop.index_of(2)) == std::vector<LabelId>{0, 1, 2});
}

TEST_CASE("edges are the original edges between hidden vertices") {
    const Graph g = parse_edge_list_text("0 1\n1 2\n2 3\n0 3\n1 3");
    const Cover com = Cover::from_member_sets({{0, 1, 3}});  // 2 left uncovered
    ThreadPool pool(1);
    const OhmsNetwork net = build_ohms(g, com, 2, pool);

    CHECK(net.hidden_vertices() == std::vector<VertexId>{0, 1, 3});
    CHECK_FALSE(net.has_vertex(2));
    REQUIRE(net.edge_count() == 3);
    for (const auto& [i, j] : net.edges()) {
        CHECK(g.has_edge(net.id_of(i), net.id_of(j)));
    }
}

TEST_CASE("build_ohms rejects covers that leave the graph") {
    const Graph g = parse_edge_list_text("0 1");
    ThreadPool pool(1);
    CHECK_THROWS_AS(build_ohms(g, Cover::from_member_sets({{0, 7}}), 2, pool), InputError);
}

TEST_CASE("label_universe is the union of candidate sets") {
    const Graph single = parse_edge_list_text("0 1\n1 2");
    ThreadPool pool(1);
    const OhmsNetwork one = build_ohms(single, Cover::from_member_sets({{0, 1, 2}}), 2, pool);
    CHECK(label_universe(one) == std::vector<LabelId>{0});

    // k disjoint communities: k labels
    const Graph parts = parse_edge_list_text("0 1\n2 3\n4 5");
    const Cover com = Cover::from_member_sets({{0, 1}, {2, 3}, {4, 5}});
    const OhmsNetwork net = build_ohms(parts, com, 2, pool);
    CHECK(label_universe(net) == std::vector<LabelId>{0, 1, 2});

    // random instance: matches a direct union over candidate sets
    Rng rng(3);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId u = 0; u < 12; ++u) {
        for (VertexId v = u + 1; v < 12; ++v) {
            if (rng.next_double() < 0.3) edges.emplace_back(u, v);
        }
    }
    std::vector<VertexId> all(12);
    for (VertexId v = 0; v < 12; ++v) all[v] = v;
    const Graph g = Graph::from_edges(edges, all);
    std::vector<std::vector<VertexId>> sets;
    for (VertexId v = 0; v < 12; v += 3) sets.push_back({v, v + 1, v + 2});
    const OhmsNetwork rnd = build_ohms(g, Cover::from_member_sets(sets), 2, pool);

    std::vector<LabelId> expected;
    for (std::uint32_t i = 0; i < rnd.hidden_count(); ++i) {
        const auto& cand = rnd.candidates(i);
        expected.insert(expected.end(), cand.begin(), cand.end());
    }
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    CHECK(label_universe(rnd) == expected);
}

TEST_CASE("build_ohms is deterministic across thread counts") {
    Rng rng(11);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId u = 0; u < 30; ++u) {
        for (VertexId v = u + 1; v < 30; ++v) {
            if (rng.next_double() < 0.2) edges.emplace_back(u, v);
        }
    }
    const Graph g = Graph::from_edges(edges);
    std::vector<std::vector<VertexId>> sets;
    for (VertexId v = 0; v + 5 <= 30; v += 5) {
        sets.push_back({v, v + 1, v + 2, v + 3, v + 4});
    }
    const Cover com = Cover::from_member_sets(sets);

    ThreadPool one(1), four(4);
    const OhmsNetwork a = build_ohms(g, com, 2, one);
    const OhmsNetwork b = build_ohms(g, com, 2, four);
    std::ostringstream dump_a, dump_b;
    dump_ohms(a, dump_a);
    dump_ohms(b, dump_b);
    CHECK(dump_a.str() == dump_b.str());
}
