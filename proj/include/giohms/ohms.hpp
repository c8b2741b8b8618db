#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "giohms/cover.hpp"
#include "giohms/graph.hpp"
#include "giohms/seeding.hpp"
#include "giohms/thread_pool.hpp"

namespace giohms {

/// Observed-hidden network built from a graph and a merged seed cover. Every
/// covered vertex becomes a hidden variable paired with an observed seed-label
/// distribution; edges are the original edges between hidden vertices. A
/// vertex seeded into several communities gets a uniform distribution over
/// those labels, which degenerates to a single observed value for vertices in
/// exactly one community.
class OhmsNetwork {
public:
    struct Observation {
        LabelId label;
        double weight;
    };

    /// Assembles a network from explicit parts, validating the invariants:
    /// hidden ids sorted-unique, edges between hidden vertices, observed
    /// weights summing to 1 within 1e-9, observed labels contained in the
    /// per-vertex candidate sets.
    static OhmsNetwork from_parts(std::vector<VertexId> hidden,
                                  const std::vector<std::pair<VertexId, VertexId>>& edges,
                                  std::vector<std::vector<Observation>> observed,
                                  std::vector<std::vector<LabelId>> candidates);

    std::size_t hidden_count() const { return hidden_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    /// Sorted ids of the hidden vertices.
    const std::vector<VertexId>& hidden_vertices() const { return hidden_; }

    VertexId id_of(std::uint32_t i) const { return hidden_[i]; }
    std::uint32_t index_of(VertexId v) const;
    bool has_vertex(VertexId v) const;

    /// Edges as (i, j) hidden-index pairs with i < j, sorted.
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const { return edges_; }

    /// Observed label distribution at hidden index i, sorted by label,
    /// weights summing to 1.
    const std::vector<Observation>& observed(std::uint32_t i) const { return observed_[i]; }

    /// Admissible labels at hidden index i, sorted. Always a superset of the
    /// labels with positive observed weight.
    const std::vector<LabelId>& candidates(std::uint32_t i) const { return candidates_[i]; }

    /// Neighbors of hidden index i as (neighbor index, edge index) pairs.
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& adjacent(std::uint32_t i) const {
        return adj_[i];
    }

    /// Observed weight of `label` at hidden index i (0 if unobserved).
    double observed_weight(std::uint32_t i, LabelId label) const;

    friend OhmsNetwork build_ohms(const Graph& g, const Cover& com, unsigned hop_radius,
                                  ThreadPool& pool);

private:
    std::vector<VertexId> hidden_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
    std::vector<std::vector<Observation>> observed_;
    std::vector<std::vector<LabelId>> candidates_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj_;
};

/// Builds the observed-hidden network: hidden vertices are the cover's member
/// union, observations are uniform over each vertex's covering communities,
/// and candidates(v) collects every label observed within hop_radius hops of
/// v in g. Vertices of g outside the cover are left out of the network.
/// Throws InputError if the cover references a vertex absent from g.
OhmsNetwork build_ohms(const Graph& g, const Cover& com, unsigned hop_radius, ThreadPool& pool);

/// Union of all candidate label sets, sorted.
std::vector<LabelId> label_universe(const OhmsNetwork& net);

/// Line-oriented debug dump: "v | label:weight,... | candidate candidate ...".
void dump_ohms(const OhmsNetwork& net, std::ostream& out);

} // namespace giohms
