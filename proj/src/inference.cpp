#include "giohms/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "giohms/errors.hpp"

namespace giohms {

EnergyParams EnergyParams::constant(const OhmsNetwork& net, double value) {
    EnergyParams w;
    w.w_unary.assign(net.hidden_count(), value);
    w.w_binary.assign(net.edge_count(), value);
    return w;
}

double MarginalTable::probability(VertexId v, LabelId label) const {
    const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return 0.0;
    const auto& row = rows_[static_cast<std::size_t>(it - vertices_.begin())];
    const auto jt = std::lower_bound(row.begin(), row.end(), label,
                                     [](const auto& e, LabelId l) { return e.first < l; });
    if (jt == row.end() || jt->first != label) return 0.0;
    return jt->second;
}

double MarginalTable::max_abs_difference(const MarginalTable& a, const MarginalTable& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.vertex_count(); ++i) {
        const VertexId v = a.vertices()[i];
        for (const auto& [label, prob] : a.row(i)) {
            worst = std::max(worst, std::abs(prob - b.probability(v, label)));
        }
    }
    for (std::size_t i = 0; i < b.vertex_count(); ++i) {
        const VertexId v = b.vertices()[i];
        for (const auto& [label, prob] : b.row(i)) {
            worst = std::max(worst, std::abs(prob - a.probability(v, label)));
        }
    }
    return worst;
}

void dump_marginals(const MarginalTable& m, std::ostream& out) {
    out << "vertex,label,probability\n";
    char buf[32];
    for (std::size_t i = 0; i < m.vertex_count(); ++i) {
        for (const auto& [label, prob] : m.row(i)) {
            std::snprintf(buf, sizeof(buf), "%.6f", prob);
            out << m.vertices()[i] << ',' << label << ',' << buf << '\n';
        }
    }
}

double unary_cost(std::span<const OhmsNetwork::Observation> observed, LabelId label,
                  double w_i) {
    double weight = 0.0;
    for (const auto& obs : observed) {
        if (obs.label == label) {
            weight = obs.weight;
            break;
        }
    }
    return w_i * (1.0 - weight);
}

double binary_cost(LabelId l_i, LabelId l_j, double w_ij) {
    return l_i == l_j ? 0.0 : w_ij;
}

double energy(const OhmsNetwork& net, const Assignment& h, const EnergyParams& w) {
    if (h.size() != net.hidden_count()) {
        throw InputError("assignment must cover every hidden variable");
    }
    double total = 0.0;
    for (std::uint32_t i = 0; i < net.hidden_count(); ++i) {
        total += unary_cost(net.observed(i), h[i], w.w_unary[i]);
    }
    for (std::uint32_t e = 0; e < net.edge_count(); ++e) {
        const auto [i, j] = net.edges()[e];
        total += binary_cost(h[i], h[j], w.w_binary[e]);
    }
    return total;
}

namespace {

// Candidate-indexed tables for the sampling hot path.
struct SamplerTables {
    std::vector<std::vector<double>> miss;  // 1 - observed weight, per candidate
    std::size_t n = 0;

    explicit SamplerTables(const OhmsNetwork& net) : n(net.hidden_count()) {
        miss.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            const auto& cand = net.candidates(i);
            miss[i].reserve(cand.size());
            for (const LabelId l : cand) miss[i].push_back(1.0 - net.observed_weight(i, l));
        }
    }
};

// Conditional costs of every candidate of vertex i given the labels of its
// neighbors: unary miss plus the total disagreeing edge weight. Written into
// `costs` (resized to the candidate count).
void conditional_costs(const OhmsNetwork& net, const SamplerTables& tables,
                       const std::vector<LabelId>& labels, const EnergyParams& w,
                       std::uint32_t i, std::vector<double>& costs) {
    const auto& cand = net.candidates(i);
    const auto& miss = tables.miss[i];
    double disagree_all = 0.0;
    for (const auto& [j, e] : net.adjacent(i)) disagree_all += w.w_binary[e];

    costs.resize(cand.size());
    for (std::size_t k = 0; k < cand.size(); ++k) {
        costs[k] = w.w_unary[i] * miss[k] + disagree_all;
    }
    // an edge agrees only with the candidate equal to the neighbor's label
    for (const auto& [j, e] : net.adjacent(i)) {
        const auto it = std::lower_bound(cand.begin(), cand.end(), labels[j]);
        if (it != cand.end() && *it == labels[j]) {
            costs[static_cast<std::size_t>(it - cand.begin())] -= w.w_binary[e];
        }
    }
}

// The hot path exploits that every candidate that is neither observed at i
// nor carried by a neighbor has exactly the same conditional cost (full
// unary miss plus every incident edge disagreeing). Those are lumped into
// one background term, so the per-vertex work is O(degree + observations)
// instead of O(candidates). Entries: (candidate index, cost), sorted.
struct LumpedConditional {
    std::vector<std::pair<std::uint32_t, double>> distinct;
    double base_cost = 0.0;
    std::size_t background = 0;  // candidates sharing base_cost
    double lowest = 0.0;
    double lump_mass = 0.0;      // background * exp(lowest - base_cost)
    double total_mass = 0.0;
};

// Gathers the distinct labels around i (neighbor labels plus i's observed
// labels) with their agreeing edge weight, by linear accumulation into a
// small vector - the distinct count is bounded by degree + observations and
// is tiny once regions order. One candidate search per distinct label.
// Fills `pairs` with (candidate index, agreement weight) sorted by index and
// returns the total incident edge weight.
double gather_agreements(const OhmsNetwork& net, const std::vector<LabelId>& labels,
                         const EnergyParams& w, std::uint32_t i,
                         std::vector<std::pair<LabelId, double>>& label_scratch,
                         std::vector<std::pair<std::uint32_t, double>>& pairs) {
    const auto& cand = net.candidates(i);
    label_scratch.clear();
    const auto bump = [&](LabelId label, double weight) {
        for (auto& entry : label_scratch) {
            if (entry.first == label) {
                entry.second += weight;
                return;
            }
        }
        label_scratch.emplace_back(label, weight);
    };
    double disagree_all = 0.0;
    for (const auto& [j, e] : net.adjacent(i)) {
        disagree_all += w.w_binary[e];
        bump(labels[j], w.w_binary[e]);
    }
    for (const auto& obs : net.observed(i)) bump(obs.label, 0.0);

    pairs.clear();
    for (const auto& [label, agree] : label_scratch) {
        const auto it = std::lower_bound(cand.begin(), cand.end(), label);
        if (it != cand.end() && *it == label) {
            pairs.emplace_back(static_cast<std::uint32_t>(it - cand.begin()), agree);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return disagree_all;
}

void finish_lump(const OhmsNetwork& net, const SamplerTables& tables, const EnergyParams& w,
                 std::uint32_t i, double disagree_all, LumpedConditional& out) {
    out.base_cost = w.w_unary[i] + disagree_all;
    out.lowest = std::numeric_limits<double>::infinity();
    for (auto& [idx, agree] : out.distinct) {
        agree = w.w_unary[i] * tables.miss[i][idx] + disagree_all - agree;
        out.lowest = std::min(out.lowest, agree);
    }
    out.background = net.candidates(i).size() - out.distinct.size();
    if (out.background > 0) out.lowest = std::min(out.lowest, out.base_cost);

    out.lump_mass =
        out.background > 0
            ? static_cast<double>(out.background) * std::exp(out.lowest - out.base_cost)
            : 0.0;
    out.total_mass = out.lump_mass;
    for (const auto& [idx, cost] : out.distinct) {
        out.total_mass += std::exp(out.lowest - cost);
    }
}

void lump_conditional(const OhmsNetwork& net, const SamplerTables& tables,
                      const std::vector<LabelId>& labels, const EnergyParams& w,
                      std::uint32_t i, LumpedConditional& out) {
    thread_local std::vector<std::pair<LabelId, double>> label_scratch;
    const double disagree_all =
        gather_agreements(net, labels, w, i, label_scratch, out.distinct);
    finish_lump(net, tables, w, i, disagree_all, out);
}

std::uint32_t sample_lumped(const LumpedConditional& lumped, Rng& rng) {
    double u = rng.next_double() * lumped.total_mass;
    for (const auto& [idx, cost] : lumped.distinct) {
        u -= std::exp(lumped.lowest - cost);
        if (u < 0.0) return idx;
    }
    // background candidates are equiprobable: pick the r-th index that is
    // not a distinct entry (distinct is sorted, so a cursor walk maps it)
    std::uint32_t cursor =
        static_cast<std::uint32_t>(rng.next_below(std::max<std::size_t>(1, lumped.background)));
    for (const auto& [idx, cost] : lumped.distinct) {
        if (idx <= cursor) ++cursor;
        else break;
    }
    return cursor;
}

double lumped_log_prob(const LumpedConditional& lumped, std::uint32_t choice) {
    double own = lumped.base_cost;
    const auto it = std::lower_bound(
        lumped.distinct.begin(), lumped.distinct.end(), choice,
        [](const auto& entry, std::uint32_t c) { return entry.first < c; });
    if (it != lumped.distinct.end() && it->first == choice) own = it->second;
    return (lumped.lowest - own) - std::log(lumped.total_mass);
}

void sweep_labels(const OhmsNetwork& net, const SamplerTables& tables,
                  std::vector<LabelId>& labels, const EnergyParams& w, Rng& rng,
                  LumpedConditional& scratch) {
    for (std::uint32_t i = 0; i < net.hidden_count(); ++i) {
        const auto& cand = net.candidates(i);
        if (cand.size() <= 1) continue;
        lump_conditional(net, tables, labels, w, i, scratch);
        labels[i] = cand[sample_lumped(scratch, rng)];
    }
}

} // namespace

std::vector<double> gibbs_conditional(const OhmsNetwork& net, const Assignment& h,
                                      const EnergyParams& w, std::uint32_t i) {
    if (h.size() != net.hidden_count()) {
        throw InputError("assignment must cover every hidden variable");
    }
    const SamplerTables tables(net);
    std::vector<double> costs;
    conditional_costs(net, tables, h, w, i, costs);
    const double lowest = *std::min_element(costs.begin(), costs.end());
    double total = 0.0;
    for (double& c : costs) {
        c = std::exp(lowest - c);
        total += c;
    }
    for (double& c : costs) c /= total;
    return costs;
}

Assignment gibbs_sweep(const OhmsNetwork& net, Assignment h, const EnergyParams& w, Rng& rng) {
    if (h.size() != net.hidden_count()) {
        throw InputError("assignment must cover every hidden variable");
    }
    const SamplerTables tables(net);
    LumpedConditional scratch;
    sweep_labels(net, tables, h, w, rng, scratch);
    return h;
}

namespace {

// Two distinct partners, both different from the proposing chain.
std::pair<std::size_t, std::size_t> pick_partners(std::size_t size, std::size_t chain_index,
                                                  Rng& rng) {
    std::size_t r1 = rng.next_below(size - 1);
    if (r1 >= chain_index) ++r1;
    std::size_t r2 = rng.next_below(size - 2);
    for (const std::size_t taken : {std::min(chain_index, r1), std::max(chain_index, r1)}) {
        if (r2 >= taken) ++r2;
    }
    return {r1, r2};
}

} // namespace

EnergyParams demc_propose(const std::vector<EnergyParams>& population, std::size_t chain_index,
                          double gamma, double jitter, Rng& rng) {
    const std::size_t size = population.size();
    if (size < 3) throw InputError("differential-evolution proposal needs >= 3 chains");
    if (chain_index >= size) throw InputError("chain index out of range");

    const auto [r1, r2] = pick_partners(size, chain_index, rng);

    const EnergyParams& cur = population[chain_index];
    const EnergyParams& a = population[r1];
    const EnergyParams& b = population[r2];
    EnergyParams out;
    out.w_unary.resize(cur.w_unary.size());
    out.w_binary.resize(cur.w_binary.size());
    const auto update = [&](double wc, double wa, double wb) {
        const double step = gamma * (std::log(wa) - std::log(wb)) +
                            (jitter > 0.0 ? rng.next_uniform(-jitter, jitter) : 0.0);
        return std::exp(std::log(wc) + step);
    };
    for (std::size_t k = 0; k < cur.w_unary.size(); ++k) {
        out.w_unary[k] = update(cur.w_unary[k], a.w_unary[k], b.w_unary[k]);
    }
    for (std::size_t k = 0; k < cur.w_binary.size(); ++k) {
        out.w_binary[k] = update(cur.w_binary[k], a.w_binary[k], b.w_binary[k]);
    }
    return out;
}

namespace {

struct ChainState {
    Rng rng;
    std::vector<LabelId> labels;
    EnergyParams weights;
    std::vector<double> theta;                // log-weights, unary then binary
    double prior_term = 0.0;
    std::vector<std::uint32_t> choice;        // candidate index per vertex
    std::vector<std::vector<std::uint64_t>> counts;
    std::vector<double> prop_theta;
    EnergyParams prop_weights;

    explicit ChainState(std::uint64_t seed) : rng(seed) {}
};

// Spread of the log-normal weight prior. Narrow on purpose: the tilt a
// vertex feels from its incident edge weights has standard deviation
// ~sqrt(degree) * sd(w), and vertices with symmetric neighborhoods must not
// be pinned to one side by quenched weight noise.
constexpr double kWeightLogSd = 0.03;

// Log pseudolikelihood of the assignment under two weight vectors at once:
// the product of per-vertex full conditionals. The model likelihood
// exp(-energy)/Z(w) needs the intractable partition function, so this
// standard surrogate stands in for it in the weight posterior; the bare
// exp(-energy) numerator is not usable there, as it only ever rewards
// shrinking active weights and the sampler then drifts toward a disordered
// high-temperature regime. The label-run scan is shared between the two
// evaluations.
void dual_pseudolikelihood(const OhmsNetwork& net, const SamplerTables& tables,
                           const std::vector<LabelId>& labels,
                           const std::vector<std::uint32_t>& choice, const EnergyParams& w_a,
                           const EnergyParams& w_b, double& pl_a, double& pl_b) {
    struct LabelAgreement {
        LabelId label;
        double agree_a;
        double agree_b;
    };
    thread_local std::vector<LabelAgreement> runs;
    thread_local LumpedConditional lump_a, lump_b;

    pl_a = 0.0;
    pl_b = 0.0;
    for (std::uint32_t i = 0; i < net.hidden_count(); ++i) {
        const auto& cand = net.candidates(i);
        if (cand.size() <= 1) continue;

        runs.clear();
        const auto bump = [&](LabelId label, double wa, double wb) {
            for (auto& entry : runs) {
                if (entry.label == label) {
                    entry.agree_a += wa;
                    entry.agree_b += wb;
                    return;
                }
            }
            runs.push_back({label, wa, wb});
        };
        double dis_a = 0.0, dis_b = 0.0;
        for (const auto& [j, e] : net.adjacent(i)) {
            dis_a += w_a.w_binary[e];
            dis_b += w_b.w_binary[e];
            bump(labels[j], w_a.w_binary[e], w_b.w_binary[e]);
        }
        for (const auto& obs : net.observed(i)) bump(obs.label, 0.0, 0.0);

        lump_a.distinct.clear();
        lump_b.distinct.clear();
        for (const auto& run : runs) {
            const auto it = std::lower_bound(cand.begin(), cand.end(), run.label);
            if (it != cand.end() && *it == run.label) {
                const auto idx = static_cast<std::uint32_t>(it - cand.begin());
                lump_a.distinct.emplace_back(idx, run.agree_a);
                lump_b.distinct.emplace_back(idx, run.agree_b);
            }
        }
        const auto by_index = [](const auto& x, const auto& y) { return x.first < y.first; };
        std::sort(lump_a.distinct.begin(), lump_a.distinct.end(), by_index);
        std::sort(lump_b.distinct.begin(), lump_b.distinct.end(), by_index);
        finish_lump(net, tables, w_a, i, dis_a, lump_a);
        finish_lump(net, tables, w_b, i, dis_b, lump_b);
        pl_a += lumped_log_prob(lump_a, choice[i]);
        pl_b += lumped_log_prob(lump_b, choice[i]);
    }
}

// Normal prior on log-weights; constants cancel in Metropolis ratios.
double log_prior_of(const std::vector<double>& theta, double mu) {
    const double inv2s2 = 1.0 / (2.0 * kWeightLogSd * kWeightLogSd);
    double total = 0.0;
    for (const double t : theta) {
        const double dev = t - mu;
        total -= dev * dev * inv2s2;
    }
    return total;
}

} // namespace

MarginalTable run_inference(const OhmsNetwork& net, const InferenceConfig& cfg,
                            ThreadPool& pool) {
    if (net.hidden_count() == 0) throw InputError("inference needs a non-empty network");
    if (cfg.chains < 4) throw ConfigError("inference needs at least 4 chains");
    if (cfg.samples_per_chain == 0) throw ConfigError("samples_per_chain must be positive");
    if (cfg.burn_in >= cfg.samples_per_chain) {
        throw ConfigError("burn_in must be smaller than samples_per_chain");
    }
    if (cfg.thin == 0) throw ConfigError("thin must be positive");
    if (cfg.w_prior_scale <= 0.0) throw ConfigError("w_prior_scale must be positive");
    if (cfg.jitter < 0.0 || cfg.gamma < 0.0) throw ConfigError("gamma/jitter must be >= 0");
    if (cfg.fixed_w && *cfg.fixed_w <= 0.0) throw ConfigError("fixed_w must be positive");

    const std::size_t n = net.hidden_count();
    const std::size_t d = n + net.edge_count();
    const double gamma = cfg.gamma > 0.0 ? cfg.gamma : 2.38 / std::sqrt(2.0 * double(d));
    const double mu = std::log(cfg.w_prior_scale);
    const SamplerTables tables(net);

    std::vector<ChainState> chains;
    chains.reserve(cfg.chains);
    for (std::uint32_t c = 0; c < cfg.chains; ++c) {
        // stream tag 0x4348 ("CH") + chain index keeps chain streams disjoint
        ChainState chain(mix_seed(cfg.rng_seed, 0x43480000ULL + c));
        chain.choice.resize(n);
        chain.labels.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            // start from the observation: the seed labels are the trusted
            // side of the model, and candidate-uniform starts let chains
            // fall into label-swapped modes that the seeds rule out
            const auto& cand = net.candidates(i);
            const auto& obs = net.observed(i);
            double u = chain.rng.next_double();
            LabelId start = obs.back().label;
            for (const auto& o : obs) {
                u -= o.weight;
                if (u < 0.0) {
                    start = o.label;
                    break;
                }
            }
            const auto it = std::lower_bound(cand.begin(), cand.end(), start);
            chain.choice[i] = static_cast<std::uint32_t>(it - cand.begin());
            chain.labels[i] = cand[chain.choice[i]];
        }
        if (cfg.fixed_w) {
            chain.weights = EnergyParams::constant(net, *cfg.fixed_w);
        } else {
            chain.theta.resize(d);
            for (double& t : chain.theta) t = mu + kWeightLogSd * chain.rng.next_normal();
            chain.weights.w_unary.resize(n);
            chain.weights.w_binary.resize(net.edge_count());
            for (std::size_t k = 0; k < d; ++k) {
                (k < n ? chain.weights.w_unary[k] : chain.weights.w_binary[k - n]) =
                    std::exp(chain.theta[k]);
            }
            chain.prior_term = log_prior_of(chain.theta, mu);
            chain.prop_theta.resize(d);
            chain.prop_weights.w_unary.resize(n);
            chain.prop_weights.w_binary.resize(net.edge_count());
        }
        chain.counts.resize(n);
        for (std::size_t i = 0; i < n; ++i) chain.counts[i].assign(net.candidates(i).size(), 0);
        chains.push_back(std::move(chain));
    }

    // Log-weight snapshot of the whole population, refreshed once per
    // iteration; chains propose against the snapshot so lockstep execution
    // is independent of how chains map onto workers.
    std::vector<std::vector<double>> snapshot;
    snapshot.reserve(chains.size());
    for (const auto& chain : chains) snapshot.push_back(chain.theta);
    std::vector<std::uint8_t> accepted(chains.size(), 0);

    for (std::uint32_t iter = 0; iter < cfg.samples_per_chain; ++iter) {
        const bool keep = iter >= cfg.burn_in && (iter - cfg.burn_in) % cfg.thin == 0;
        pool.for_each(chains.size(), [&](std::size_t c) {
            auto& chain = chains[c];
            thread_local LumpedConditional scratch;
            for (std::uint32_t i = 0; i < n; ++i) {
                const auto& cand = net.candidates(i);
                if (cand.size() <= 1) continue;
                lump_conditional(net, tables, chain.labels, chain.weights, i, scratch);
                chain.choice[i] = sample_lumped(scratch, chain.rng);
                chain.labels[i] = cand[chain.choice[i]];
            }
            if (!cfg.fixed_w) {
                // same update as demc_propose, applied to the stored
                // log-weights to avoid re-taking 2d logarithms per step
                const auto [r1, r2] = pick_partners(chains.size(), c, chain.rng);
                const auto& ta = snapshot[r1];
                const auto& tb = snapshot[r2];
                double prop_prior = 0.0;
                const double inv2s2 = 1.0 / (2.0 * kWeightLogSd * kWeightLogSd);
                for (std::size_t k = 0; k < d; ++k) {
                    double t = chain.theta[k] + gamma * (ta[k] - tb[k]);
                    if (cfg.jitter > 0.0) t += chain.rng.next_uniform(-cfg.jitter, cfg.jitter);
                    chain.prop_theta[k] = t;
                    const double dev = t - mu;
                    prop_prior -= dev * dev * inv2s2;
                    (k < n ? chain.prop_weights.w_unary[k]
                           : chain.prop_weights.w_binary[k - n]) = std::exp(t);
                }
                double cur_pl = 0.0, prop_pl = 0.0;
                dual_pseudolikelihood(net, tables, chain.labels, chain.choice, chain.weights,
                                      chain.prop_weights, cur_pl, prop_pl);
                if (std::log(chain.rng.next_double() + 1e-300) <
                    (prop_prior + prop_pl) - (chain.prior_term + cur_pl)) {
                    chain.theta.swap(chain.prop_theta);
                    std::swap(chain.weights, chain.prop_weights);
                    chain.prior_term = prop_prior;
                    accepted[c] = 1;
                }
            }
            if (keep) {
                for (std::size_t i = 0; i < n; ++i) ++chain.counts[i][chain.choice[i]];
            }
        }, 1);
        if (!cfg.fixed_w) {
            for (std::size_t c = 0; c < chains.size(); ++c) {
                if (accepted[c]) {
                    snapshot[c] = chains[c].theta;
                    accepted[c] = 0;
                }
            }
        }
    }

    const std::uint64_t retained_per_chain =
        (cfg.samples_per_chain - cfg.burn_in + cfg.thin - 1) / cfg.thin;
    const double total = double(retained_per_chain) * double(cfg.chains);

    std::vector<std::vector<std::pair<LabelId, double>>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& cand = net.candidates(i);
        rows[i].reserve(cand.size());
        for (std::size_t k = 0; k < cand.size(); ++k) {
            std::uint64_t count = 0;
            for (const auto& chain : chains) count += chain.counts[i][k];
            rows[i].emplace_back(cand[k], double(count) / total);
        }
    }
    return MarginalTable(net.hidden_vertices(), std::move(rows));
}

MarginalTable exact_marginals(const OhmsNetwork& net, const EnergyParams& w) {
    const std::size_t n = net.hidden_count();
    double state_count = 1.0;
    for (std::uint32_t i = 0; i < n; ++i) {
        state_count *= static_cast<double>(net.candidates(i).size());
        if (state_count > 1e7) {
            throw CapacityError("state space exceeds 10^7 assignments");
        }
    }
    const SamplerTables tables(net);

    const auto assignment_energy = [&](const std::vector<std::uint32_t>& choice) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += w.w_unary[i] * tables.miss[i][choice[i]];
        for (std::uint32_t e = 0; e < net.edge_count(); ++e) {
            const auto [i, j] = net.edges()[e];
            if (net.candidates(i)[choice[i]] != net.candidates(j)[choice[j]]) {
                total += w.w_binary[e];
            }
        }
        return total;
    };
    const auto for_each_assignment = [&](auto&& visit) {
        std::vector<std::uint32_t> choice(n, 0);
        for (;;) {
            visit(choice);
            std::size_t i = 0;
            while (i < n) {
                if (++choice[i] < net.candidates(static_cast<std::uint32_t>(i)).size()) break;
                choice[i] = 0;
                ++i;
            }
            if (i == n) break;
        }
    };

    // exp(-energy) can underflow for large weights; shift by the minimum
    double min_energy = std::numeric_limits<double>::infinity();
    for_each_assignment(
        [&](const std::vector<std::uint32_t>& c) { min_energy = std::min(min_energy, assignment_energy(c)); });

    std::vector<std::vector<double>> acc(n);
    for (std::size_t i = 0; i < n; ++i) acc[i].assign(net.candidates(i).size(), 0.0);
    double z = 0.0;
    for_each_assignment([&](const std::vector<std::uint32_t>& c) {
        const double weight = std::exp(min_energy - assignment_energy(c));
        z += weight;
        for (std::size_t i = 0; i < n; ++i) acc[i][c[i]] += weight;
    });

    std::vector<std::vector<std::pair<LabelId, double>>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& cand = net.candidates(i);
        rows[i].reserve(cand.size());
        for (std::size_t k = 0; k < cand.size(); ++k) {
            rows[i].emplace_back(cand[k], acc[i][k] / z);
        }
    }
    return MarginalTable(net.hidden_vertices(), std::move(rows));
}

Cover extract_communities(const MarginalTable& m, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("probability threshold must be in (0,1]");

    std::vector<std::pair<LabelId, VertexId>> memberships;
    for (std::size_t i = 0; i < m.vertex_count(); ++i) {
        const auto& row = m.row(i);
        if (row.empty()) continue;
        double best = 0.0;
        for (const auto& [label, prob] : row) best = std::max(best, prob);
        for (const auto& [label, prob] : row) {
            if (prob >= p * best) memberships.emplace_back(label, m.vertices()[i]);
        }
    }
    std::sort(memberships.begin(), memberships.end());

    std::vector<std::vector<VertexId>> sets;
    for (std::size_t k = 0; k < memberships.size(); ++k) {
        if (k == 0 || memberships[k].first != memberships[k - 1].first) sets.emplace_back();
        sets.back().push_back(memberships[k].second);
    }
    return Cover::from_member_sets(sets);
}

} // namespace giohms
