#pragma once

#include <vector>

#include "giohms/cover.hpp"
#include "giohms/graph.hpp"

namespace giohms {

struct MergeConfig {
    /// Merge threshold in [0,1]: a local community joins an existing one when
    /// the fraction of the smaller set absent from the larger is <= epsilon.
    double epsilon = 0.1;
    /// When set, re-run merge passes until no further union happens. Off by
    /// default: a single fold is the standard behavior.
    bool cascade = false;
};

/// Fraction of the smaller community's members missing from the larger one.
/// Ties on size are broken toward the lexicographically smaller member list.
/// Ranges over [0,1]: 0 for containment, 1 for disjoint sets.
double absent_fraction(const std::vector<VertexId>& a, const std::vector<VertexId>& b);

/// Folds community c into com: if c's member set already exists it is
/// absorbed unchanged; otherwise the first community (ascending id) with
/// absent_fraction(c, e) <= epsilon takes the union in place; otherwise c is
/// appended with a fresh id. A union that produces a duplicate member set
/// drops the higher-id copy.
void merge_into(Cover& com, const std::vector<VertexId>& c, const MergeConfig& cfg);

/// Folds every local community through merge_into in (vertex id, local
/// community order) order. Input must be sorted by vertex id (the seed_all
/// contract); the fold is sequential and deterministic.
Cover merge_all(const std::vector<std::pair<VertexId, Cover>>& seeds, const MergeConfig& cfg);

} // namespace giohms
