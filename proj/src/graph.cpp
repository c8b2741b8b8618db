#include "giohms/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "giohms/errors.hpp"

namespace giohms {

Graph Graph::from_edges(const std::vector<std::pair<VertexId, VertexId>>& edges,
                        const std::vector<VertexId>& extra_vertices) {
    Graph g;
    g.ids_.reserve(edges.size() / 2 + extra_vertices.size());
    for (const auto& [u, v] : edges) {
        g.ids_.push_back(u);
        g.ids_.push_back(v);
    }
    g.ids_.insert(g.ids_.end(), extra_vertices.begin(), extra_vertices.end());
    std::sort(g.ids_.begin(), g.ids_.end());
    g.ids_.erase(std::unique(g.ids_.begin(), g.ids_.end()), g.ids_.end());

    g.index_.reserve(g.ids_.size());
    for (VertexIndex i = 0; i < g.ids_.size(); ++i) g.index_.emplace(g.ids_[i], i);

    std::vector<std::pair<VertexIndex, VertexIndex>> dir;
    dir.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) {
        if (u == v) continue;
        const VertexIndex ui = g.index_.at(u);
        const VertexIndex vi = g.index_.at(v);
        dir.emplace_back(ui, vi);
        dir.emplace_back(vi, ui);
    }
    std::sort(dir.begin(), dir.end());
    dir.erase(std::unique(dir.begin(), dir.end()), dir.end());

    g.offsets_.assign(g.ids_.size() + 1, 0);
    for (const auto& [ui, vi] : dir) ++g.offsets_[ui + 1];
    for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
    g.adj_.reserve(dir.size());
    for (const auto& [ui, vi] : dir) g.adj_.push_back(vi);
    g.edge_count_ = dir.size() / 2;
    return g;
}

VertexIndex Graph::index_of(VertexId v) const {
    const auto it = index_.find(v);
    if (it == index_.end()) {
        throw InputError("vertex " + std::to_string(v) + " is not in the graph");
    }
    return it->second;
}

std::vector<VertexId> Graph::neighbor_ids(VertexId v) const {
    const auto nbrs = neighbors(index_of(v));
    std::vector<VertexId> out;
    out.reserve(nbrs.size());
    for (const VertexIndex i : nbrs) out.push_back(ids_[i]);
    return out;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    const auto ui = index_.find(u);
    const auto vi = index_.find(v);
    if (ui == index_.end() || vi == index_.end()) return false;
    const auto nbrs = neighbors(ui->second);
    return std::binary_search(nbrs.begin(), nbrs.end(), vi->second);
}

std::vector<std::pair<VertexId, VertexId>> Graph::edge_ids() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(edge_count_);
    for (VertexIndex i = 0; i < ids_.size(); ++i) {
        for (const VertexIndex j : neighbors(i)) {
            if (i < j) out.emplace_back(ids_[i], ids_[j]);
        }
    }
    return out;
}

namespace {

bool parse_id(const std::string& token, VertexId& out) {
    if (token.empty()) return false;
    VertexId value = 0;
    for (const char c : token) {
        if (c < '0' || c > '9') return false;
        const VertexId digit = static_cast<VertexId>(c - '0');
        if (value > (UINT64_MAX - digit) / 10) return false;
        value = value * 10 + digit;
    }
    out = value;
    return true;
}

} // namespace

Graph parse_edge_list(std::istream& in) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<VertexId> loop_vertices;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t pos = line.find_first_not_of(" \t");
        if (pos == std::string::npos) {
            throw InputError("edge list line " + std::to_string(line_no) + ": empty line");
        }
        if (line[pos] == '#') continue;

        std::istringstream fields(line);
        std::string a, b, rest;
        fields >> a >> b;
        if (fields.fail() || (fields >> rest)) {
            throw InputError("edge list line " + std::to_string(line_no) +
                             ": expected exactly two vertex ids");
        }
        VertexId u, v;
        if (!parse_id(a, u) || !parse_id(b, v)) {
            throw InputError("edge list line " + std::to_string(line_no) +
                             ": non-integer vertex id");
        }
        if (u == v) {
            loop_vertices.push_back(u);
        } else {
            edges.emplace_back(u, v);
        }
    }
    return Graph::from_edges(edges, loop_vertices);
}

Graph parse_edge_list_text(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open edge list file: " + path);
    return parse_edge_list(in);
}

void serialize_edge_list(const Graph& g, std::ostream& out) {
    for (VertexIndex i = 0; i < g.vertex_count(); ++i) {
        const VertexId u = g.id_of(i);
        if (g.degree(i) == 0) {
            out << u << '\t' << u << '\n';
            continue;
        }
        for (const VertexIndex j : g.neighbors(i)) {
            if (i < j) out << u << '\t' << g.id_of(j) << '\n';
        }
    }
}

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
    VertexSet sorted = s;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<VertexIndex> members;
    members.reserve(sorted.size());
    for (const VertexId v : sorted) members.push_back(g.index_of(v));

    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const VertexIndex i : members) {
        const auto nbrs = g.neighbors(i);
        // both sides sorted: intersect by binary search over the smaller one
        for (const VertexIndex j : nbrs) {
            if (j <= i) continue;
            if (std::binary_search(members.begin(), members.end(), j)) {
                edges.emplace_back(g.id_of(i), g.id_of(j));
            }
        }
    }
    return Graph::from_edges(edges, sorted);
}

Graph ego_minus_ego(const Graph& g, VertexId v) {
    const auto nbrs = g.neighbors(g.index_of(v));
    VertexSet alters;
    alters.reserve(nbrs.size());
    for (const VertexIndex i : nbrs) alters.push_back(g.id_of(i));
    return induced_subgraph(g, alters);
}

} // namespace giohms
