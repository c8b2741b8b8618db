#include "giohms/seeding.hpp"

#include <algorithm>
#include <numeric>

#include "giohms/rng.hpp"

namespace giohms {

namespace {

// Plurality label among the neighbors of vertex i, smallest label on ties.
// Neighbor labels are gathered into scratch and sorted; the longest run wins
// and the scan order makes the smallest label win ties.
LabelId plurality_label(const Graph& g, const std::vector<LabelId>& labels, VertexIndex i,
                        std::vector<LabelId>& scratch) {
    const auto nbrs = g.neighbors(i);
    scratch.clear();
    for (const VertexIndex j : nbrs) scratch.push_back(labels[j]);
    std::sort(scratch.begin(), scratch.end());

    LabelId best = labels[i];
    std::size_t best_count = 0;
    std::size_t run_start = 0;
    for (std::size_t k = 1; k <= scratch.size(); ++k) {
        if (k == scratch.size() || scratch[k] != scratch[run_start]) {
            const std::size_t run = k - run_start;
            if (run > best_count) {
                best_count = run;
                best = scratch[run_start];
            }
            run_start = k;
        }
    }
    return best;
}

} // namespace

Labeling label_propagation(const Graph& g, const SeedConfig& cfg) {
    const std::size_t n = g.vertex_count();
    Labeling out;
    out.vertices = g.vertices();
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.labels[i] = g.id_of(static_cast<VertexIndex>(i));
    if (n == 0) return out;

    std::vector<VertexIndex> order(n);
    std::vector<LabelId> scratch;

    for (std::uint32_t iter = 0; iter < cfg.max_iterations; ++iter) {
        // sweep order is a pure function of (rng_seed, iter)
        std::iota(order.begin(), order.end(), 0);
        Rng rng(mix_seed(cfg.rng_seed, iter));
        rng.shuffle(order);
        bool changed = false;
        for (const VertexIndex i : order) {
            if (g.degree(i) == 0) continue;
            const LabelId next = plurality_label(g, out.labels, i, scratch);
            if (next != out.labels[i]) {
                out.labels[i] = next;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return out;
}

Cover local_seed(const Graph& g, VertexId v, const SeedConfig& cfg) {
    const Graph eme = ego_minus_ego(g, v);
    if (eme.vertex_count() == 0) {
        return Cover::from_member_sets({{v}});
    }
    const Labeling labeling = label_propagation(eme, cfg);

    // Group by final label; communities ordered by label id so local covers
    // are deterministic.
    std::vector<std::pair<LabelId, VertexId>> by_label;
    by_label.reserve(labeling.vertices.size());
    for (std::size_t i = 0; i < labeling.vertices.size(); ++i) {
        by_label.emplace_back(labeling.labels[i], labeling.vertices[i]);
    }
    std::sort(by_label.begin(), by_label.end());

    std::vector<std::vector<VertexId>> groups;
    for (std::size_t i = 0; i < by_label.size(); ++i) {
        if (i == 0 || by_label[i].first != by_label[i - 1].first) {
            groups.emplace_back();
            groups.back().push_back(v);
        }
        groups.back().push_back(by_label[i].second);
    }
    return Cover::from_member_sets(groups);
}

std::vector<std::pair<VertexId, Cover>> seed_all(const Graph& g, const SeedConfig& cfg,
                                                 ThreadPool& pool) {
    const std::size_t n = g.vertex_count();
    std::vector<std::pair<VertexId, Cover>> out(n);
    pool.for_each(n, [&](std::size_t i) {
        const VertexId v = g.id_of(static_cast<VertexIndex>(i));
        out[i] = {v, local_seed(g, v, cfg)};
    });
    return out;
}

} // namespace giohms
