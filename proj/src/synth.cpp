#include "giohms/synth.hpp"

#include <vector>

#include "giohms/errors.hpp"
#include "giohms/rng.hpp"

namespace giohms {

std::pair<Graph, Cover> planted_overlap(const PlantedConfig& cfg) {
    if (cfg.num_communities < 1) throw ConfigError("need at least one community");
    if (cfg.community_size < 2) throw ConfigError("community size must be at least 2");
    if (cfg.overlap_vertices >= cfg.community_size) {
        throw ConfigError("overlap must be smaller than the community size");
    }
    if (cfg.p_in < 0.0 || cfg.p_in > 1.0 || cfg.p_out < 0.0 || cfg.p_out > 1.0) {
        throw ConfigError("edge probabilities must lie in [0,1]");
    }
    if (cfg.p_out > cfg.p_in) throw ConfigError("p_out must not exceed p_in");

    const std::uint64_t stride = cfg.community_size - cfg.overlap_vertices;
    const std::uint64_t total =
        stride * (cfg.num_communities - 1) + cfg.community_size;

    // block index range covering each vertex: consecutive blocks overlap, so
    // a vertex belongs to every block whose [start, start+size) contains it
    std::vector<std::vector<VertexId>> blocks(cfg.num_communities);
    for (std::uint32_t b = 0; b < cfg.num_communities; ++b) {
        const std::uint64_t start = stride * b;
        blocks[b].reserve(cfg.community_size);
        for (std::uint64_t v = start; v < start + cfg.community_size; ++v) {
            blocks[b].push_back(v);
        }
    }

    const auto first_block = [&](std::uint64_t v) -> std::uint32_t {
        if (v < cfg.community_size) return 0;
        const std::uint64_t b = (v - cfg.community_size) / stride + 1;
        return static_cast<std::uint32_t>(
            std::min<std::uint64_t>(b, cfg.num_communities - 1));
    };
    const auto share_block = [&](std::uint64_t u, std::uint64_t v) {
        // u < v: they share a block iff v still fits in some block holding u
        const std::uint32_t lo = first_block(v);
        const std::uint64_t block_start = stride * lo;
        return u >= block_start && v < block_start + cfg.community_size;
    };

    Rng rng(mix_seed(cfg.rng_seed, 0x504C4E54ULL));  // stream tag "PLNT"
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<VertexId> all_vertices(total);
    for (std::uint64_t v = 0; v < total; ++v) all_vertices[v] = v;

    for (std::uint64_t u = 0; u < total; ++u) {
        for (std::uint64_t v = u + 1; v < total; ++v) {
            const double p = share_block(u, v) ? cfg.p_in : cfg.p_out;
            if (p <= 0.0) continue;
            if (p >= 1.0 || rng.next_double() < p) edges.emplace_back(u, v);
        }
    }

    Graph g = Graph::from_edges(edges, all_vertices);
    Cover truth = Cover::from_member_sets(blocks);
    return {std::move(g), std::move(truth)};
}

} // namespace giohms
