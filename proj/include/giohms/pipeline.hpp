#pragma once

#include <optional>
#include <string>
#include <vector>

#include "giohms/cover.hpp"
#include "giohms/eval.hpp"
#include "giohms/graph.hpp"
#include "giohms/inference.hpp"
#include "giohms/merge.hpp"
#include "giohms/ohms.hpp"
#include "giohms/seeding.hpp"
#include "giohms/synth.hpp"

namespace giohms {

struct PipelineConfig {
    std::string edges_path;
    std::string ground_truth_path;  // empty: skip evaluation
    double epsilon = 0.1;
    double prob_threshold = 0.8;
    unsigned hop_radius = 2;
    unsigned threads = 0;           // 0: machine parallelism
    std::uint64_t seed = 42;
    std::uint32_t max_lp_iterations = 100;
    InferenceConfig inference;      // rng_seed is derived from `seed`
    std::string output_path;        // empty: do not write the cover
    bool dump_seeds = false;
    bool dump_ohms = false;
    bool dump_marginals = false;
    std::string report_format = "json";  // "json" or "tsv"
};

struct StageTiming {
    std::string name;
    double seconds = 0.0;
};

struct TimingReport {
    std::vector<StageTiming> stages;
    double total_seconds = 0.0;
    unsigned threads = 1;

    std::string to_json() const;
};

struct PipelineResult {
    Cover cover;
    std::optional<MetricReport> metrics;
    TimingReport timing;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
};

/// Runs the whole pipeline: parse, per-vertex seeding, epsilon merging,
/// observed-hidden network construction, MCMC inference, community
/// extraction, and (with ground truth) evaluation. Derived per-stage seeds
/// all flow from cfg.seed, and the thread count influences timings only.
/// Writes the cover, report, and requested dumps next to cfg.output_path.
PipelineResult run_pipeline(const PipelineConfig& cfg);

/// In-memory variant used by tests and bindings: same stages, no file IO
/// besides the optional output files controlled by cfg.
PipelineResult run_pipeline_on(const Graph& g, const std::optional<Cover>& truth,
                               const PipelineConfig& cfg);

/// Output file names derived from the configured output path.
std::string report_path_for(const PipelineConfig& cfg);
std::string seeds_path_for(const PipelineConfig& cfg);
std::string ohms_path_for(const PipelineConfig& cfg);
std::string marginals_path_for(const PipelineConfig& cfg);

} // namespace giohms
