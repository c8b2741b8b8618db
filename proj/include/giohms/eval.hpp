#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "giohms/cover.hpp"
#include "giohms/graph.hpp"

namespace giohms {

struct MetricReport {
    double onmi = 0.0;
    double avg_f1 = 0.0;
    std::size_t detected_count = 0;
    std::size_t truth_count = 0;
};

/// Overlapping normalized mutual information, max-normalized variant.
/// Communities are treated as binary membership indicators over the
/// universe; per-pair conditional entropies are admitted only when the
/// agreement entropies dominate the disagreement entropies
/// (h(a)+h(d) >= h(b)+h(c) on the 2x2 contingency table), each community is
/// matched to its best counterpart, and the result is
/// I(X:Y) / max(H(X), H(Y)) with
/// I = [H(X) - H(X|Y) + H(Y) - H(Y|X)] / 2. Entropies are in bits.
/// When no universe is given, the union of both covers' members is used.
/// Throws InputError on an empty cover or a member outside the universe.
double onmi(const Cover& x, const Cover& y,
            const std::optional<VertexSet>& universe = std::nullopt);

/// Symmetric best-match average F1:
/// [mean over detected of the best F1 against truth +
///  mean over truth of the best F1 against detected] / 2,
/// where F1 is the harmonic mean of set precision and recall.
/// Throws InputError on an empty cover.
double avg_f1(const Cover& detected, const Cover& truth);

MetricReport evaluate(const Cover& detected, const Cover& truth,
                      const std::optional<VertexSet>& universe = std::nullopt);

/// JSON object with keys onmi, avg_f1, detected_count, truth_count.
std::string report_json(const MetricReport& report);

/// The same four values as a single tab-separated line.
std::string report_tsv(const MetricReport& report);

} // namespace giohms
