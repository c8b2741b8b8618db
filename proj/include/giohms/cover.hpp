#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "giohms/graph.hpp"

namespace giohms {

using CommunityId = std::uint64_t;

/// One community: a sorted set of member vertex ids with a stable id.
struct Community {
    CommunityId id = 0;
    std::vector<VertexId> members;   // sorted, duplicate-free
};

/// A set of possibly overlapping communities. Vertices may appear in several
/// communities; a partition is the special case where each appears once.
class Cover {
public:
    Cover() = default;

    /// Builds a cover from raw member lists (sorted and deduplicated here);
    /// communities get ids 0..n-1 in input order. Empty sets are rejected.
    static Cover from_member_sets(const std::vector<std::vector<VertexId>>& sets);

    const std::vector<Community>& communities() const { return communities_; }
    std::size_t size() const { return communities_.size(); }
    bool empty() const { return communities_.empty(); }

    const Community& operator[](std::size_t i) const { return communities_[i]; }

    /// Appends a community with a fresh id and returns that id.
    CommunityId append(std::vector<VertexId> members);

    /// Direct access for in-place unions during merging.
    std::vector<Community>& mutable_communities() { return communities_; }

    /// Union of all member sets, sorted.
    std::vector<VertexId> member_union() const;

    /// True if no two communities have identical member sets.
    bool member_sets_unique() const;

private:
    std::vector<Community> communities_;
    CommunityId next_id_ = 0;
};

/// Cover file format (same as SNAP ground-truth "cmty" files): one community
/// per line, whitespace-separated member ids. write_cover emits members
/// sorted ascending, single-space separated, lines sorted lexicographically,
/// so identical covers serialize byte-identically.
void write_cover(const Cover& cover, std::ostream& out);
void write_cover_file(const Cover& cover, const std::string& path);
Cover read_cover(std::istream& in);
Cover read_cover_file(const std::string& path);

} // namespace giohms
