#include "giohms/merge.hpp"

#include <algorithm>

#include "giohms/errors.hpp"

namespace giohms {

namespace {

// Members of `small` missing from `large`, counted with a two-pointer scan;
// bails out once `cap` absences are seen.
std::size_t count_absent(const std::vector<VertexId>& small, const std::vector<VertexId>& large,
                         std::size_t cap) {
    std::size_t absent = 0;
    std::size_t j = 0;
    for (const VertexId v : small) {
        while (j < large.size() && large[j] < v) ++j;
        if (j == large.size() || large[j] != v) {
            if (++absent > cap) return absent;
        }
    }
    return absent;
}

void order_by_size(const std::vector<VertexId>*& small, const std::vector<VertexId>*& large) {
    if (small->size() > large->size() ||
        (small->size() == large->size() && *large < *small)) {
        std::swap(small, large);
    }
}

// Same comparison as absent_fraction(c, e) <= epsilon, with an early exit
// once the count is safely past the threshold.
bool qualifies(const std::vector<VertexId>& c, const std::vector<VertexId>& e, double epsilon) {
    const std::vector<VertexId>* small = &c;
    const std::vector<VertexId>* large = &e;
    order_by_size(small, large);
    const std::size_t n = small->size();
    const std::size_t cap =
        std::min(n, static_cast<std::size_t>(epsilon * static_cast<double>(n)) + 2);
    const std::size_t absent = count_absent(*small, *large, cap);
    if (absent > cap) return false;
    return static_cast<double>(absent) / static_cast<double>(n) <= epsilon;
}

std::vector<VertexId> sorted_union(const std::vector<VertexId>& a,
                                   const std::vector<VertexId>& b) {
    std::vector<VertexId> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

double absent_fraction(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
    if (a.empty() || b.empty()) {
        throw InputError("absent_fraction requires non-empty communities");
    }
    const std::vector<VertexId>* small = &a;
    const std::vector<VertexId>* large = &b;
    order_by_size(small, large);
    const std::size_t absent = count_absent(*small, *large, small->size());
    return static_cast<double>(absent) / static_cast<double>(small->size());
}

void merge_into(Cover& com, const std::vector<VertexId>& c, const MergeConfig& cfg) {
    std::vector<VertexId> members = c;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) throw InputError("cannot merge an empty community");

    auto& communities = com.mutable_communities();

    // Exact duplicates are absorbed outright, before any threshold check.
    for (const auto& e : communities) {
        if (e.members == members) return;
    }

    for (std::size_t i = 0; i < communities.size(); ++i) {
        if (!qualifies(members, communities[i].members, cfg.epsilon)) continue;
        communities[i].members = sorted_union(communities[i].members, members);
        // The grown set may now collide with another community; keep the
        // lower-id copy so ids stay stable.
        for (std::size_t j = 0; j < communities.size(); ++j) {
            if (j != i && communities[j].members == communities[i].members) {
                communities.erase(communities.begin() + static_cast<std::ptrdiff_t>(
                                      std::max(i, j)));
                break;
            }
        }
        return;
    }
    com.append(std::move(members));
}

Cover merge_all(const std::vector<std::pair<VertexId, Cover>>& seeds, const MergeConfig& cfg) {
    if (cfg.epsilon < 0.0 || cfg.epsilon > 1.0) {
        throw ConfigError("merge epsilon must lie in [0,1]");
    }
    Cover com;
    for (const auto& [v, local] : seeds) {
        for (const auto& community : local.communities()) {
            merge_into(com, community.members, cfg);
        }
    }
    if (cfg.cascade) {
        bool changed = true;
        while (changed) {
            changed = false;
            Cover next;
            for (const auto& community : com.communities()) {
                const std::size_t before = next.size();
                merge_into(next, community.members, cfg);
                if (next.size() == before) changed = true;
            }
            com = std::move(next);
        }
    }
    return com;
}

} // namespace giohms
