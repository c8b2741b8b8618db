#include "giohms/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "giohms/errors.hpp"

namespace giohms {

namespace {

double h(double count, double n) {
    if (count <= 0.0) return 0.0;
    const double p = count / n;
    return -p * std::log2(p);
}

std::size_t intersection_size(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
    std::size_t count = 0;
    std::size_t j = 0;
    for (const VertexId v : a) {
        while (j < b.size() && b[j] < v) ++j;
        if (j < b.size() && b[j] == v) {
            ++count;
            ++j;
        }
    }
    return count;
}

// Entropy of community c as a binary indicator over n elements.
double indicator_entropy(const std::vector<VertexId>& c, double n) {
    return h(double(c.size()), n) + h(n - double(c.size()), n);
}

// H(X_i | Y_j) from the 2x2 contingency table, or nothing when the
// disagreement entropies dominate (the validity constraint).
std::optional<double> pair_conditional_entropy(const std::vector<VertexId>& xi,
                                               const std::vector<VertexId>& yj, double n) {
    const double d = double(intersection_size(xi, yj));  // in both
    const double c = double(xi.size()) - d;              // only in X_i
    const double b = double(yj.size()) - d;              // only in Y_j
    const double a = n - double(xi.size()) - double(yj.size()) + d;  // in neither
    if (h(a, n) + h(d, n) < h(b, n) + h(c, n)) return std::nullopt;
    const double joint = h(a, n) + h(b, n) + h(c, n) + h(d, n);
    return joint - indicator_entropy(yj, n);
}

// Sum over X's communities of the best admissible conditional entropy
// against Y, defaulting to the community's own entropy.
double conditional_entropy_sum(const Cover& x, const Cover& y, double n) {
    double total = 0.0;
    for (const auto& xi : x.communities()) {
        double best = indicator_entropy(xi.members, n);
        for (const auto& yj : y.communities()) {
            const auto value = pair_conditional_entropy(xi.members, yj.members, n);
            if (value && *value < best) best = *value;
        }
        total += best;
    }
    return total;
}

void check_cover(const Cover& cover, const std::vector<VertexId>& universe, const char* name) {
    if (cover.empty()) throw InputError(std::string(name) + " cover is empty");
    for (const auto& c : cover.communities()) {
        for (const VertexId v : c.members) {
            if (!std::binary_search(universe.begin(), universe.end(), v)) {
                throw InputError(std::string(name) + " cover member " + std::to_string(v) +
                                 " is outside the universe");
            }
        }
    }
}

double pair_f1(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
    const double overlap = double(intersection_size(a, b));
    if (overlap == 0.0) return 0.0;
    const double precision = overlap / double(a.size());
    const double recall = overlap / double(b.size());
    return 2.0 * precision * recall / (precision + recall);
}

double best_match_mean(const Cover& from, const Cover& against) {
    double total = 0.0;
    for (const auto& c : from.communities()) {
        double best = 0.0;
        for (const auto& t : against.communities()) {
            best = std::max(best, pair_f1(c.members, t.members));
        }
        total += best;
    }
    return total / double(from.size());
}

} // namespace

double onmi(const Cover& x, const Cover& y, const std::optional<VertexSet>& universe) {
    std::vector<VertexId> elements;
    if (universe) {
        elements = *universe;
        std::sort(elements.begin(), elements.end());
        elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    } else {
        const auto ux = x.member_union();
        const auto uy = y.member_union();
        elements.reserve(ux.size() + uy.size());
        std::set_union(ux.begin(), ux.end(), uy.begin(), uy.end(),
                       std::back_inserter(elements));
    }
    check_cover(x, elements, "first");
    check_cover(y, elements, "second");

    const double n = double(elements.size());
    double hx = 0.0, hy = 0.0;
    for (const auto& c : x.communities()) hx += indicator_entropy(c.members, n);
    for (const auto& c : y.communities()) hy += indicator_entropy(c.members, n);

    // Two trivial covers carry the same (zero) information.
    const double h_max = std::max(hx, hy);
    if (h_max == 0.0) return 1.0;

    const double hxy = conditional_entropy_sum(x, y, n);
    const double hyx = conditional_entropy_sum(y, x, n);
    const double mutual = 0.5 * ((hx - hxy) + (hy - hyx));
    return std::clamp(mutual / h_max, 0.0, 1.0);
}

double avg_f1(const Cover& detected, const Cover& truth) {
    if (detected.empty() || truth.empty()) {
        throw InputError("avg_f1 requires non-empty covers");
    }
    return 0.5 * (best_match_mean(detected, truth) + best_match_mean(truth, detected));
}

MetricReport evaluate(const Cover& detected, const Cover& truth,
                      const std::optional<VertexSet>& universe) {
    MetricReport report;
    report.onmi = onmi(detected, truth, universe);
    report.avg_f1 = avg_f1(detected, truth);
    report.detected_count = detected.size();
    report.truth_count = truth.size();
    return report;
}

std::string report_json(const MetricReport& report) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "{\"onmi\": %.9f, \"avg_f1\": %.9f, \"detected_count\": %zu, "
                  "\"truth_count\": %zu}",
                  report.onmi, report.avg_f1, report.detected_count, report.truth_count);
    return buf;
}

std::string report_tsv(const MetricReport& report) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.9f\t%.9f\t%zu\t%zu", report.onmi, report.avg_f1,
                  report.detected_count, report.truth_count);
    return buf;
}

} // namespace giohms
