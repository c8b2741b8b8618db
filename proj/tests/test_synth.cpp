#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "giohms/errors.hpp"
#include "giohms/synth.hpp"

using namespace giohms;

namespace {

std::size_t intra_block_edges(const Graph& g, const std::vector<VertexId>& block) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < block.size(); ++i) {
        for (std::size_t j = i + 1; j < block.size(); ++j) {
            count += g.has_edge(block[i], block[j]);
        }
    }
    return count;
}

} // namespace

TEST_CASE("two disjoint cliques with p_in=1, p_out=0") {
    const auto [g, truth] = planted_overlap({2, 20, 0, 1.0, 0.0, 1});
    CHECK(g.vertex_count() == 40);
    CHECK(g.edge_count() == 2 * (20 * 19) / 2);
    REQUIRE(truth.size() == 2);
    CHECK(truth[0].members.size() == 20);
    for (const VertexId u : truth[0].members) {
        for (const VertexId v : truth[1].members) {
            CHECK_FALSE(g.has_edge(u, v));
        }
    }
    // truth covers the vertex set
    CHECK(truth.member_union() == g.vertices());
}

TEST_CASE("consecutive blocks share the configured overlap") {
    const auto [g, truth] = planted_overlap({2, 10, 1, 1.0, 0.0, 1});
    CHECK(g.vertex_count() == 19);
    REQUIRE(truth.size() == 2);
    std::vector<VertexId> shared;
    std::set_intersection(truth[0].members.begin(), truth[0].members.end(),
                          truth[1].members.begin(), truth[1].members.end(),
                          std::back_inserter(shared));
    REQUIRE(shared.size() == 1);
    // the shared vertex touches every other vertex of both cliques
    CHECK(g.neighbor_ids(shared[0]).size() == 18);
}

TEST_CASE("intra-block edge counts follow the binomial moments") {
    // expected edges per block: 0.9 * C(30,2) = 391.5, sigma^2 = 435*0.9*0.1
    const double expectation = 0.9 * 435.0;
    const double sigma = std::sqrt(435.0 * 0.9 * 0.1);
    const auto [g, truth] = planted_overlap({3, 30, 3, 0.9, 0.01, 7});
    for (const auto& block : truth.communities()) {
        const double count = double(intra_block_edges(g, block.members));
        CHECK(count >= expectation - 3.0 * sigma);
        CHECK(count <= expectation + 3.0 * sigma);
    }
}

TEST_CASE("generation is deterministic and validates its config") {
    const PlantedConfig cfg{3, 12, 2, 0.7, 0.05, 99};
    const auto [g1, t1] = planted_overlap(cfg);
    const auto [g2, t2] = planted_overlap(cfg);
    CHECK(g1.edge_ids() == g2.edge_ids());
    CHECK(g1.vertices() == g2.vertices());
    REQUIRE(t1.size() == t2.size());
    for (std::size_t i = 0; i < t1.size(); ++i) CHECK(t1[i].members == t2[i].members);

    CHECK_THROWS_AS(planted_overlap({2, 10, 10, 1.0, 0.0, 0}), ConfigError);
    CHECK_THROWS_AS(planted_overlap({2, 10, 0, 0.5, 0.9, 0}), ConfigError);
    CHECK_THROWS_AS(planted_overlap({2, 10, 0, 1.5, 0.0, 0}), ConfigError);
    CHECK_THROWS_AS(planted_overlap({2, 1, 0, 1.0, 0.0, 0}), ConfigError);
}
