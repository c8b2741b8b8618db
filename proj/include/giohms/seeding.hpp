#pragma once

#include <cstdint>
#include <vector>

#include "giohms/cover.hpp"
#include "giohms/graph.hpp"
#include "giohms/thread_pool.hpp"

namespace giohms {

using LabelId = std::uint64_t;

/// Result of label propagation: one label per vertex of the labeled graph.
struct Labeling {
    std::vector<VertexId> vertices;  // sorted, same order as the graph's
    std::vector<LabelId> labels;     // labels[i] is the label of vertices[i]
};

struct SeedConfig {
    std::uint32_t max_iterations = 100;
    std::uint64_t rng_seed = 0;
};

/// Plurality label propagation with asynchronous sweeps. Each vertex starts
/// with its own id as label and repeatedly adopts the most frequent label
/// among its neighbors (ties broken toward the smallest label id). The sweep
/// order is reshuffled every iteration from (rng_seed, iteration), so the
/// result depends only on (g, cfg). Stops when a full sweep changes nothing
/// or after max_iterations sweeps. Isolated vertices keep their own label.
Labeling label_propagation(const Graph& g, const SeedConfig& cfg);

/// Local communities of v: label propagation on the ego-minus-ego network of
/// v, grouped by final label, with v re-inserted into every group. A vertex
/// of degree zero yields the singleton cover {{v}}.
Cover local_seed(const Graph& g, VertexId v, const SeedConfig& cfg);

/// Runs local_seed for every vertex, distributing vertices over the pool.
/// The result is sorted by vertex id and independent of the thread count.
std::vector<std::pair<VertexId, Cover>> seed_all(const Graph& g, const SeedConfig& cfg,
                                                 ThreadPool& pool);

} // namespace giohms
