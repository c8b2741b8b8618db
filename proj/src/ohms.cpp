#include "giohms/ohms.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <queue>

#include "giohms/errors.hpp"

namespace giohms {

OhmsNetwork OhmsNetwork::from_parts(std::vector<VertexId> hidden,
                                    const std::vector<std::pair<VertexId, VertexId>>& edges,
                                    std::vector<std::vector<Observation>> observed,
                                    std::vector<std::vector<LabelId>> candidates) {
    OhmsNetwork net;
    net.hidden_ = std::move(hidden);
    if (!std::is_sorted(net.hidden_.begin(), net.hidden_.end()) ||
        std::adjacent_find(net.hidden_.begin(), net.hidden_.end()) != net.hidden_.end()) {
        throw InputError("hidden vertex ids must be sorted and unique");
    }
    const std::size_t n = net.hidden_.size();
    if (observed.size() != n || candidates.size() != n) {
        throw InputError("observed/candidate tables must cover every hidden vertex");
    }
    net.observed_ = std::move(observed);
    net.candidates_ = std::move(candidates);
    for (std::size_t i = 0; i < n; ++i) {
        auto& cand = net.candidates_[i];
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        auto& obs = net.observed_[i];
        std::sort(obs.begin(), obs.end(),
                  [](const Observation& a, const Observation& b) { return a.label < b.label; });
        double total = 0.0;
        for (const auto& o : obs) {
            total += o.weight;
            if (o.weight > 0.0 && !std::binary_search(cand.begin(), cand.end(), o.label)) {
                throw InputError("observed label " + std::to_string(o.label) +
                                 " is not a candidate of vertex " +
                                 std::to_string(net.hidden_[i]));
            }
        }
        if (obs.empty() || std::abs(total - 1.0) > 1e-9) {
            throw InputError("observed weights must sum to 1");
        }
        if (cand.empty()) throw InputError("every hidden vertex needs a candidate label");
    }

    net.adj_.resize(n);
    for (const auto& [u, v] : edges) {
        const std::uint32_t i = net.index_of(u);
        const std::uint32_t j = net.index_of(v);
        if (i == j) throw InputError("self-loops are not allowed");
        net.edges_.emplace_back(std::min(i, j), std::max(i, j));
    }
    std::sort(net.edges_.begin(), net.edges_.end());
    net.edges_.erase(std::unique(net.edges_.begin(), net.edges_.end()), net.edges_.end());
    for (std::uint32_t e = 0; e < net.edges_.size(); ++e) {
        const auto [i, j] = net.edges_[e];
        net.adj_[i].emplace_back(j, e);
        net.adj_[j].emplace_back(i, e);
    }
    return net;
}

std::uint32_t OhmsNetwork::index_of(VertexId v) const {
    const auto it = std::lower_bound(hidden_.begin(), hidden_.end(), v);
    if (it == hidden_.end() || *it != v) {
        throw InputError("vertex " + std::to_string(v) + " is not a hidden variable");
    }
    return static_cast<std::uint32_t>(it - hidden_.begin());
}

bool OhmsNetwork::has_vertex(VertexId v) const {
    return std::binary_search(hidden_.begin(), hidden_.end(), v);
}

double OhmsNetwork::observed_weight(std::uint32_t i, LabelId label) const {
    for (const auto& obs : observed_[i]) {
        if (obs.label == label) return obs.weight;
    }
    return 0.0;
}

OhmsNetwork build_ohms(const Graph& g, const Cover& com, unsigned hop_radius, ThreadPool& pool) {
    OhmsNetwork net;

    // Hidden variables: the union of covered vertices.
    net.hidden_ = com.member_union();
    for (const VertexId v : net.hidden_) {
        if (!g.has_vertex(v)) {
            throw InputError("cover references vertex " + std::to_string(v) +
                             " which is not in the graph");
        }
    }
    const std::size_t n = net.hidden_.size();

    // Seed labels per vertex, sorted by label id (community ids ascend in
    // cover order, so one pass keeps them sorted).
    std::vector<std::vector<LabelId>> seed_labels(n);
    for (const auto& community : com.communities()) {
        for (const VertexId v : community.members) {
            const auto it = std::lower_bound(net.hidden_.begin(), net.hidden_.end(), v);
            seed_labels[static_cast<std::size_t>(it - net.hidden_.begin())].push_back(
                community.id);
        }
    }

    net.observed_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& labels = seed_labels[i];
        std::sort(labels.begin(), labels.end());
        const double w = 1.0 / static_cast<double>(labels.size());
        net.observed_[i].reserve(labels.size());
        for (const LabelId l : labels) net.observed_[i].push_back({l, w});
    }

    // Edges of g restricted to hidden vertices. Graph indices are mapped to
    // hidden indices via a lookup keyed by graph index.
    constexpr std::uint32_t kNotHidden = UINT32_MAX;
    std::vector<std::uint32_t> hidden_index_of_graph(g.vertex_count(), kNotHidden);
    for (std::size_t i = 0; i < n; ++i) {
        hidden_index_of_graph[g.index_of(net.hidden_[i])] = static_cast<std::uint32_t>(i);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const VertexIndex gi = g.index_of(net.hidden_[i]);
        for (const VertexIndex gj : g.neighbors(gi)) {
            const std::uint32_t j = hidden_index_of_graph[gj];
            if (j != kNotHidden && static_cast<std::uint32_t>(i) < j) {
                net.edges_.emplace_back(static_cast<std::uint32_t>(i), j);
            }
        }
    }

    net.adj_.resize(n);
    for (std::uint32_t e = 0; e < net.edges_.size(); ++e) {
        const auto [i, j] = net.edges_[e];
        net.adj_[i].emplace_back(j, e);
        net.adj_[j].emplace_back(i, e);
    }

    // Candidate labels: everything observed within hop_radius hops in g.
    // BFS runs over the full graph, so uncovered vertices can still bridge
    // two hidden regions.
    net.candidates_.resize(n);
    pool.for_each(n, [&](std::size_t i) {
        // stamped visited marks, reused across the vertices a worker handles
        thread_local std::vector<std::uint32_t> stamp;
        thread_local std::uint32_t round = 0;
        thread_local std::vector<VertexIndex> frontier, next;
        if (stamp.size() < g.vertex_count()) stamp.assign(g.vertex_count(), 0);
        if (++round == 0) {
            std::fill(stamp.begin(), stamp.end(), 0);
            round = 1;
        }

        std::vector<LabelId> cand = seed_labels[i];
        frontier.assign(1, g.index_of(net.hidden_[i]));
        stamp[frontier[0]] = round;
        for (unsigned hop = 0; hop < hop_radius && !frontier.empty(); ++hop) {
            next.clear();
            for (const VertexIndex u : frontier) {
                for (const VertexIndex w : g.neighbors(u)) {
                    if (stamp[w] == round) continue;
                    stamp[w] = round;
                    next.push_back(w);
                    const std::uint32_t h = hidden_index_of_graph[w];
                    if (h != kNotHidden) {
                        cand.insert(cand.end(), seed_labels[h].begin(), seed_labels[h].end());
                    }
                }
            }
            std::swap(frontier, next);
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        net.candidates_[i] = std::move(cand);
    }, 16);

    return net;
}

std::vector<LabelId> label_universe(const OhmsNetwork& net) {
    std::vector<LabelId> all;
    for (std::uint32_t i = 0; i < net.hidden_count(); ++i) {
        const auto& cand = net.candidates(i);
        all.insert(all.end(), cand.begin(), cand.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

void dump_ohms(const OhmsNetwork& net, std::ostream& out) {
    char buf[64];
    for (std::uint32_t i = 0; i < net.hidden_count(); ++i) {
        out << net.id_of(i) << " | ";
        const auto& obs = net.observed(i);
        for (std::size_t k = 0; k < obs.size(); ++k) {
            if (k > 0) out << ',';
            std::snprintf(buf, sizeof(buf), "%llu:%.6f",
                          static_cast<unsigned long long>(obs[k].label), obs[k].weight);
            out << buf;
        }
        out << " |";
        for (const LabelId l : net.candidates(i)) out << ' ' << l;
        out << '\n';
    }
}

} // namespace giohms
