#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace giohms {

using VertexId = std::uint64_t;
using VertexIndex = std::uint32_t;

/// Sorted, duplicate-free set of vertex ids used as a subgraph selector.
using VertexSet = std::vector<VertexId>;

/// Immutable undirected simple graph. Vertex ids are arbitrary non-negative
/// integers (SNAP files have sparse ids); a dense index is built once at
/// construction so adjacency is array-backed. Safe to share across threads
/// after construction.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from an edge list. Edges are symmetrized and
    /// deduplicated, self-loops are dropped (their endpoint is kept as an
    /// isolated vertex), and the vertex set is the union of all endpoints
    /// plus `extra_vertices`.
    static Graph from_edges(const std::vector<std::pair<VertexId, VertexId>>& edges,
                            const std::vector<VertexId>& extra_vertices = {});

    std::size_t vertex_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    /// Sorted vertex ids.
    const std::vector<VertexId>& vertices() const { return ids_; }

    bool has_vertex(VertexId v) const { return index_.find(v) != index_.end(); }

    /// Dense index of v in [0, vertex_count()). Throws InputError if absent.
    VertexIndex index_of(VertexId v) const;

    VertexId id_of(VertexIndex i) const { return ids_[i]; }

    /// Neighbor indices of the vertex at dense index i, sorted ascending.
    /// Index order coincides with id order.
    std::span<const VertexIndex> neighbors(VertexIndex i) const {
        return {adj_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }

    std::size_t degree(VertexIndex i) const { return offsets_[i + 1] - offsets_[i]; }

    /// Neighbor ids of vertex v, sorted ascending. Throws if v is absent.
    std::vector<VertexId> neighbor_ids(VertexId v) const;

    bool has_edge(VertexId u, VertexId v) const;

    /// All edges as (u, v) id pairs with u < v, sorted.
    std::vector<std::pair<VertexId, VertexId>> edge_ids() const;

private:
    std::vector<VertexId> ids_;              // sorted
    std::unordered_map<VertexId, VertexIndex> index_;
    std::vector<std::size_t> offsets_;       // size vertex_count()+1
    std::vector<VertexIndex> adj_;           // CSR neighbor lists, sorted per vertex
    std::size_t edge_count_ = 0;
};

/// Parses a SNAP-style edge list: one edge per line, two whitespace-separated
/// non-negative integer ids, '#' comment lines ignored. Throws InputError
/// with the offending line number on malformed input.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_text(const std::string& text);
Graph load_edge_list(const std::string& path);

/// Canonical edge-list serialization: "u\tv" with u < v, sorted; isolated
/// vertices are written as self-loop lines so that parse(serialize(g)) == g.
void serialize_edge_list(const Graph& g, std::ostream& out);

/// Induced subgraph on s: vertex set is exactly s, an edge is kept iff both
/// endpoints are in s. Throws InputError if s contains an id not in g.
Graph induced_subgraph(const Graph& g, const VertexSet& s);

/// Induced subgraph on the neighbors of v, with v itself removed.
Graph ego_minus_ego(const Graph& g, VertexId v);

} // namespace giohms
