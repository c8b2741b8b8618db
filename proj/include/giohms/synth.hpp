#pragma once

#include <cstdint>
#include <utility>

#include "giohms/cover.hpp"
#include "giohms/graph.hpp"

namespace giohms {

/// Planted-overlap benchmark: a chain of equally sized communities where
/// consecutive blocks share a fixed number of vertices. Vertex pairs inside a
/// common block are connected with probability p_in, all other pairs with
/// p_out.
struct PlantedConfig {
    std::uint32_t num_communities = 2;
    std::uint32_t community_size = 20;
    std::uint32_t overlap_vertices = 0;  // shared between consecutive blocks
    double p_in = 1.0;
    double p_out = 0.0;
    std::uint64_t rng_seed = 0;
};

/// Generates the benchmark graph together with its ground-truth cover.
/// Deterministic given the config. Throws ConfigError on invalid settings
/// (overlap >= community size, probabilities outside [0,1], or p_out > p_in).
std::pair<Graph, Cover> planted_overlap(const PlantedConfig& cfg);

} // namespace giohms
