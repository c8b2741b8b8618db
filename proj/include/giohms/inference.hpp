#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "giohms/cover.hpp"
#include "giohms/ohms.hpp"
#include "giohms/rng.hpp"
#include "giohms/thread_pool.hpp"

namespace giohms {

/// Positive energy weights, one per hidden variable (unary) and one per edge
/// (binary). Indexed like the network: w_unary[i] belongs to hidden index i,
/// w_binary[e] to edge index e. The parameter dimension d is
/// |hidden| + |edges|.
struct EnergyParams {
    std::vector<double> w_unary;
    std::vector<double> w_binary;

    std::size_t dimension() const { return w_unary.size() + w_binary.size(); }

    /// All weights equal to `value`.
    static EnergyParams constant(const OhmsNetwork& net, double value);
};

/// Labels of the hidden variables, aligned with the network's hidden indices.
using Assignment = std::vector<LabelId>;

/// Ensembled per-vertex label probabilities. For each vertex the entries
/// cover its candidate set and sum to 1.
class MarginalTable {
public:
    MarginalTable() = default;
    MarginalTable(std::vector<VertexId> vertices,
                  std::vector<std::vector<std::pair<LabelId, double>>> rows)
        : vertices_(std::move(vertices)), rows_(std::move(rows)) {}

    std::size_t vertex_count() const { return vertices_.size(); }
    const std::vector<VertexId>& vertices() const { return vertices_; }

    /// (label, probability) entries of the i-th vertex, sorted by label.
    const std::vector<std::pair<LabelId, double>>& row(std::size_t i) const { return rows_[i]; }

    /// Probability of `label` at vertex v; 0 when the pair is not present.
    double probability(VertexId v, LabelId label) const;

    /// Largest absolute difference over all (vertex, label) pairs.
    static double max_abs_difference(const MarginalTable& a, const MarginalTable& b);

private:
    std::vector<VertexId> vertices_;
    std::vector<std::vector<std::pair<LabelId, double>>> rows_;
};

/// CSV dump: header "vertex,label,probability", rows sorted by
/// (vertex, label), probabilities with 6 decimal places.
void dump_marginals(const MarginalTable& m, std::ostream& out);

struct InferenceConfig {
    std::uint32_t chains = 8;
    std::uint32_t samples_per_chain = 5000;
    std::uint32_t burn_in = 1000;
    std::uint32_t thin = 2;
    double gamma = 0.0;          // 0 selects the 2.38/sqrt(2d) default
    double jitter = 1e-4;
    /// Median of the log-normal prior on each weight. The prior is kept
    /// narrow (see kWeightLogSd): wide per-edge weight spread randomly tilts
    /// vertices whose neighborhoods are otherwise symmetric, while the
    /// median sets the coupling strength that lets seeded regions order.
    double w_prior_scale = 2.0;
    std::uint64_t rng_seed = 0;
    /// When set, every weight is clamped to this value and the weight
    /// sampler is skipped (the prior collapses to a point mass).
    std::optional<double> fixed_w;
};

/// Penalty for hidden label `label` against the observed distribution:
/// w_i * (1 - observed weight of label). Zero exactly when the observation
/// is concentrated on `label`.
double unary_cost(std::span<const OhmsNetwork::Observation> observed, LabelId label, double w_i);

/// Penalty for two neighboring hidden labels: 0 if equal, else w_ij.
double binary_cost(LabelId l_i, LabelId l_j, double w_ij);

/// Total energy of an assignment: sum of unary costs over hidden variables
/// plus binary costs over edges. Throws InputError if h does not assign
/// every hidden variable.
double energy(const OhmsNetwork& net, const Assignment& h, const EnergyParams& w);

/// Full conditional distribution of hidden variable i given the rest of h,
/// over candidates(i) in candidate order. Sums to 1.
std::vector<double> gibbs_conditional(const OhmsNetwork& net, const Assignment& h,
                                      const EnergyParams& w, std::uint32_t i);

/// One systematic-scan Gibbs sweep: visits hidden variables in id order and
/// resamples each from its full conditional. Vertices with a single
/// candidate are left untouched. Leaves exp(-energy)/Z invariant.
Assignment gibbs_sweep(const OhmsNetwork& net, Assignment h, const EnergyParams& w, Rng& rng);

/// Differential-evolution proposal for chain `chain_index`: picks two other
/// population members r1 != r2 and returns, coordinate-wise in log space,
/// w' = w_c + gamma * (w_r1 - w_r2) + e with e ~ U[-jitter, jitter].
/// Accept/reject is the caller's job. Throws InputError if the population
/// has fewer than 3 members.
EnergyParams demc_propose(const std::vector<EnergyParams>& population, std::size_t chain_index,
                          double gamma, double jitter, Rng& rng);

/// Ensembled marginals from cfg.chains interleaved samplers. Each iteration
/// alternates one Gibbs sweep over the hidden labels with one
/// differential-evolution Metropolis step over the weights (posterior =
/// log-normal prior times the assignment's pseudolikelihood); chains advance
/// in lockstep so results depend only on (net, cfg), never on the worker
/// count. Samples after burn_in are kept at every thin-th iteration and
/// pooled across chains.
MarginalTable run_inference(const OhmsNetwork& net, const InferenceConfig& cfg,
                            ThreadPool& pool);

/// Exact marginals by full enumeration: weights every assignment by
/// exp(-energy) and normalizes. Testing oracle; throws CapacityError when
/// the state space exceeds 10^7 assignments.
MarginalTable exact_marginals(const OhmsNetwork& net, const EnergyParams& w);

/// Overlapping communities from marginals: vertex v joins community l iff
/// m(v,l) >= p * max_l' m(v,l'). The per-vertex argmax always qualifies, so
/// every vertex is covered; empty communities are dropped.
Cover extract_communities(const MarginalTable& m, double p);

} // namespace giohms
