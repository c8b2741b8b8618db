#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "giohms/errors.hpp"
#include "giohms/pipeline.hpp"
#include "giohms/synth.hpp"

namespace {

int run_synth(const giohms::PlantedConfig& cfg, const std::string& edges_out,
              const std::string& truth_out) {
    const auto [graph, truth] = giohms::planted_overlap(cfg);
    std::ofstream edges(edges_out);
    if (!edges) throw giohms::InputError("cannot open output file: " + edges_out);
    giohms::serialize_edge_list(graph, edges);
    if (!truth_out.empty()) giohms::write_cover_file(truth, truth_out);
    std::cout << "generated " << graph.vertex_count() << " vertices, " << graph.edge_count()
              << " edges, " << truth.size() << " communities\n";
    return 0;
}

int run_detect(const giohms::PipelineConfig& cfg) {
    const giohms::PipelineResult result = giohms::run_pipeline(cfg);
    std::cout << "communities: " << result.cover.size() << "\n";
    if (result.metrics) {
        std::cout << "metrics: " << giohms::report_json(*result.metrics) << "\n";
    }
    std::cout << "timing: " << result.timing.to_json() << "\n";
    if (!cfg.output_path.empty()) {
        std::cout << "cover written to " << cfg.output_path << "\n";
        if (result.metrics) {
            std::cout << "report written to " << giohms::report_path_for(cfg) << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Overlapping community detection via ego-network seeding and "
                 "observed-hidden MRF inference"};
    app.require_subcommand(0, 1);

    giohms::PipelineConfig cfg;
    app.add_option("--edges", cfg.edges_path, "edge list file (SNAP format)");
    app.add_option("--truth", cfg.ground_truth_path,
                   "ground-truth cover file for evaluation");
    app.add_option("--epsilon", cfg.epsilon, "merge threshold in [0,1]")
        ->capture_default_str();
    app.add_option("--prob-threshold", cfg.prob_threshold,
                   "relative marginal threshold for membership, in (0,1]")
        ->capture_default_str();
    app.add_option("--hop-radius", cfg.hop_radius, "candidate label search radius")
        ->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "master random seed")->capture_default_str();
    app.add_option("--chains", cfg.inference.chains, "MCMC chains (>= 4)")
        ->capture_default_str();
    app.add_option("--samples", cfg.inference.samples_per_chain, "iterations per chain")
        ->capture_default_str();
    app.add_option("--burn-in", cfg.inference.burn_in, "discarded leading iterations")
        ->capture_default_str();
    app.add_option("--out", cfg.output_path, "output cover file");
    app.add_flag("--dump-seeds", cfg.dump_seeds, "also write the merged seed cover");
    app.add_flag("--dump-ohms", cfg.dump_ohms, "also write the observed-hidden network");
    app.add_flag("--dump-marginals", cfg.dump_marginals, "also write the marginal table");
    app.add_option("--report", cfg.report_format, "report format: json or tsv")
        ->check(CLI::IsMember({"json", "tsv"}))
        ->capture_default_str();

    giohms::PlantedConfig planted;
    std::string edges_out = "benchmark.edges";
    std::string truth_out;
    auto* synth = app.add_subcommand("synth", "generate a planted-overlap benchmark");
    synth->add_option("--num-communities", planted.num_communities, "number of blocks")
        ->capture_default_str();
    synth->add_option("--size", planted.community_size, "vertices per block")
        ->capture_default_str();
    synth->add_option("--overlap", planted.overlap_vertices,
                      "vertices shared by consecutive blocks")
        ->capture_default_str();
    synth->add_option("--p-in", planted.p_in, "intra-community edge probability")
        ->capture_default_str();
    synth->add_option("--p-out", planted.p_out, "inter-community edge probability")
        ->capture_default_str();
    synth->add_option("--seed", planted.rng_seed, "generator seed")->capture_default_str();
    synth->add_option("--edges-out", edges_out, "edge list output path")
        ->capture_default_str();
    synth->add_option("--truth-out", truth_out, "ground-truth cover output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (synth->parsed()) return run_synth(planted, edges_out, truth_out);
        if (cfg.edges_path.empty()) {
            std::cerr << "error: --edges is required (see --help)\n";
            return 2;
        }
        return run_detect(cfg);
    } catch (const giohms::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const giohms::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const giohms::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
