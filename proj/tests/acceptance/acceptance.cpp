#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "giohms/pipeline.hpp"
#include "giohms/rng.hpp"
#include "../metric_oracles.hpp"

using namespace giohms;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(int criterion, const char* name, bool pass, const std::string& detail) {
    std::printf("criterion %d (%s): %s — %s\n", criterion, name, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

// Random observed-hidden instance: up to `max_vertices` hidden variables,
// candidate sets drawn from a 3-label universe, random edges, observations
// concentrated on one label or split over two.
OhmsNetwork random_instance(std::uint64_t seed, std::size_t max_vertices) {
    Rng rng(seed);
    const std::size_t n = 2 + rng.next_below(max_vertices - 1);
    std::vector<VertexId> hidden(n);
    for (std::size_t i = 0; i < n; ++i) hidden[i] = i;

    std::vector<std::vector<LabelId>> candidates(n);
    std::vector<std::vector<OhmsNetwork::Observation>> observed(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t count = 1 + rng.next_below(3);
        std::vector<LabelId> pool{0, 1, 2};
        rng.shuffle(pool);
        candidates[i] = {pool.begin(), pool.begin() + count};
        std::sort(candidates[i].begin(), candidates[i].end());
        if (count >= 2 && rng.next_double() < 0.4) {
            observed[i] = {{candidates[i][0], 0.5}, {candidates[i][1], 0.5}};
        } else {
            observed[i] = {{candidates[i][rng.next_below(count)], 1.0}};
        }
    }

    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rng.next_double() < 0.3) edges.emplace_back(i, j);
        }
    }
    return OhmsNetwork::from_parts(std::move(hidden), edges, std::move(observed),
                                   std::move(candidates));
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

void write_benchmark(const Graph& g, const Cover& truth, const std::string& edges_path,
                     const std::string& truth_path) {
    std::ofstream edges(edges_path);
    serialize_edge_list(g, edges);
    write_cover_file(truth, truth_path);
}

} // namespace

TEST_CASE("criterion 1: sampled marginals track the enumeration oracle") {
    ThreadPool pool(2);
    InferenceConfig cfg;
    cfg.chains = 8;
    cfg.samples_per_chain = 3000;
    cfg.burn_in = 500;
    cfg.thin = 1;  // 8 x 2500 = 20,000 retained samples
    cfg.fixed_w = 1.0;

    double worst = 0.0;
    double slowest = 0.0;
    bool all_ok = true;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const OhmsNetwork net = random_instance(1000 + seed, 10);
        cfg.rng_seed = seed;
        const auto start = std::chrono::steady_clock::now();
        const MarginalTable sampled = run_inference(net, cfg, pool);
        const double elapsed = seconds_since(start);
        const MarginalTable exact = exact_marginals(net, EnergyParams::constant(net, 1.0));
        const double diff = MarginalTable::max_abs_difference(sampled, exact);
        worst = std::max(worst, diff);
        slowest = std::max(slowest, elapsed);
        all_ok = all_ok && diff <= 0.05 && elapsed < 10.0;
    }
    std::ostringstream detail;
    detail << "worst Linf " << worst << " (limit 0.05), slowest instance " << slowest
           << "s (limit 10s) over 50 instances";
    report(1, "MCMC vs oracle", all_ok, detail.str());
    CHECK(all_ok);
}

TEST_CASE("criterion 2: exact recovery of two disjoint 20-cliques") {
    const auto [g, truth] = planted_overlap({2, 20, 0, 1.0, 0.0, 42});
    TempFile edges("acc2.edges"), cmty("acc2.cmty"), out("acc2.cover");
    TempFile rep("acc2.cover.report.json");
    write_benchmark(g, truth, edges.path, cmty.path);

    PipelineConfig cfg;
    cfg.edges_path = edges.path;
    cfg.ground_truth_path = cmty.path;
    cfg.output_path = out.path;
    cfg.inference.samples_per_chain = 600;
    cfg.inference.burn_in = 100;
    const PipelineResult result = run_pipeline(cfg);

    const bool pass = result.metrics && std::abs(result.metrics->onmi - 1.0) <= 1e-9 &&
                      std::abs(result.metrics->avg_f1 - 1.0) <= 1e-9;
    std::ostringstream detail;
    detail << "onmi " << (result.metrics ? result.metrics->onmi : -1.0) << ", avg_f1 "
           << (result.metrics ? result.metrics->avg_f1 : -1.0) << " (tolerance 1e-9)";
    report(2, "exact recovery", pass, detail.str());
    CHECK(pass);
}

TEST_CASE("criterion 3: the shared vertex of two cliques gets both memberships") {
    const auto [g, truth] = planted_overlap({2, 10, 1, 1.0, 0.0, 42});
    const VertexId shared = 9;  // blocks [0,10) and [9,19)

    int hits = 0;
    const int runs = 20;
    for (int run = 0; run < runs; ++run) {
        PipelineConfig cfg;  // default sampler settings
        cfg.seed = 1000 + run;
        cfg.prob_threshold = 0.8;
        const PipelineResult result = run_pipeline_on(g, std::nullopt, cfg);
        int memberships = 0;
        for (const auto& c : result.cover.communities()) {
            memberships += std::binary_search(c.members.begin(), c.members.end(), shared);
        }
        hits += memberships >= 2;
    }
    const bool pass = hits >= runs * 95 / 100;
    std::ostringstream detail;
    detail << "both memberships in " << hits << "/" << runs << " runs (need >= 19)";
    report(3, "overlap detection", pass, detail.str());
    CHECK(pass);
}

TEST_CASE("criterion 4: metrics agree with from-definition oracles") {
    double worst_onmi = 0.0, worst_f1 = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed * 7 + 1);
        const std::size_t n = 4 + rng.next_below(9);  // universe of 4..12
        std::vector<VertexId> universe(n);
        for (std::size_t v = 0; v < n; ++v) universe[v] = v;

        const auto random_cover = [&]() {
            const std::size_t communities = 1 + rng.next_below(4);
            std::vector<std::vector<VertexId>> sets(communities);
            for (VertexId v = 0; v < n; ++v) {
                bool placed = false;
                for (auto& s : sets) {
                    if (rng.next_double() < 0.4) {
                        s.push_back(v);
                        placed = true;
                    }
                }
                if (!placed) sets[rng.next_below(sets.size())].push_back(v);
            }
            std::erase_if(sets, [](const auto& s) { return s.empty(); });
            return sets;
        };
        const auto xs = random_cover();
        const auto ys = random_cover();
        worst_onmi = std::max(worst_onmi,
                              std::abs(onmi(Cover::from_member_sets(xs),
                                            Cover::from_member_sets(ys), universe) -
                                       test_oracles::oracle_onmi(xs, ys, universe)));
        worst_f1 = std::max(worst_f1, std::abs(avg_f1(Cover::from_member_sets(xs),
                                                      Cover::from_member_sets(ys)) -
                                               test_oracles::oracle_avg_f1(xs, ys)));
    }
    const bool pass = worst_onmi <= 1e-9 && worst_f1 <= 1e-9;
    std::ostringstream detail;
    detail << "worst onmi gap " << worst_onmi << ", worst avg_f1 gap " << worst_f1
           << " over 100 covers (limit 1e-9)";
    report(4, "metric oracles", pass, detail.str());
    CHECK(pass);
}

TEST_CASE("criterion 5: inference does not fall behind the merged seeds") {
    // 2,000-vertex planted benchmark at p_in = 0.3, p_out = 0.01
    const auto [g, truth] = planted_overlap({20, 100, 0, 0.3, 0.01, 42});
    ThreadPool pool(2);

    std::vector<double> onmi_final, onmi_seeds;
    for (int run = 0; run < 10; ++run) {
        SeedConfig seed_cfg{100, mix_seed(2000 + run, 0x53454544ULL)};
        const auto seeds = seed_all(g, seed_cfg, pool);
        const Cover merged = merge_all(seeds, {0.1});
        const OhmsNetwork net = build_ohms(g, merged, 1, pool);
        InferenceConfig inf;
        inf.chains = 4;
        inf.samples_per_chain = 300;
        inf.burn_in = 100;
        inf.thin = 1;
        inf.rng_seed = mix_seed(2000 + run, 0x494E4652ULL);
        const MarginalTable marginals = run_inference(net, inf, pool);
        const Cover detected = extract_communities(marginals, 0.8);

        onmi_seeds.push_back(onmi(merged, truth));
        onmi_final.push_back(onmi(detected, truth));
    }
    const double med_final = median(onmi_final);
    const double med_seeds = median(onmi_seeds);
    const bool pass = med_final >= med_seeds;
    std::ostringstream detail;
    detail << "median onmi with inference " << med_final << " vs merged seeds alone "
           << med_seeds << " over 10 seeds";
    report(5, "relative improvement", pass, detail.str());
    CHECK(pass);
}

TEST_CASE("criterion 6: thread count never changes the output files") {
    const auto [g, truth] = planted_overlap({4, 30, 2, 0.8, 0.01, 42});
    TempFile edges("acc6.edges"), cmty("acc6.cmty");
    write_benchmark(g, truth, edges.path, cmty.path);

    std::vector<std::string> covers, reports;
    for (const unsigned threads : {1u, 4u, 8u}) {
        const std::string out = "acc6_t" + std::to_string(threads) + ".cover";
        TempFile cover(out), rep(out + ".report.json");
        PipelineConfig cfg;
        cfg.edges_path = edges.path;
        cfg.ground_truth_path = cmty.path;
        cfg.output_path = out;
        cfg.threads = threads;
        cfg.inference.samples_per_chain = 500;
        cfg.inference.burn_in = 100;
        run_pipeline(cfg);
        covers.push_back(slurp(cover.path));
        reports.push_back(slurp(rep.path));
    }
    const bool pass = covers[0] == covers[1] && covers[1] == covers[2] &&
                      reports[0] == reports[1] && reports[1] == reports[2] &&
                      !covers[0].empty() && !reports[0].empty();
    report(6, "thread determinism", pass,
           pass ? "cover and report files byte-identical at 1, 4, and 8 threads"
                : "outputs differ across thread counts");
    CHECK(pass);
}

TEST_CASE("criterion 7: seeding speeds up with threads") {
    // dense-ish 10,000-vertex graph so per-vertex work dominates scheduling
    const auto [g, truth] = planted_overlap({50, 200, 0, 0.5, 0.0005, 42});
    REQUIRE(g.vertex_count() == 10000);
    const SeedConfig cfg{100, 7};

    const auto time_with = [&](unsigned threads) {
        ThreadPool pool(threads);
        double best = 1e100;
        for (int rep = 0; rep < 3; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            const auto seeds = seed_all(g, cfg, pool);
            best = std::min(best, seconds_since(start));
            if (seeds.size() != g.vertex_count()) return -1.0;
        }
        return best;
    };
    const double serial = time_with(1);
    const double parallel = time_with(4);
    const bool pass = serial > 0 && parallel > 0 && parallel <= 0.6 * serial;
    std::ostringstream detail;
    detail << "seeding 1 thread " << serial << "s, 4 threads " << parallel << "s, ratio "
           << parallel / serial << " (limit 0.6)";
    report(7, "parallel speedup", pass, detail.str());
    CHECK(pass);
}

TEST_CASE("criterion 8: a 10,000-vertex pipeline finishes in half an hour") {
    // ~139k edges, matching the 10,000-vertex synthetic scale
    const auto [g, truth] = planted_overlap({100, 100, 0, 0.25, 0.0003, 42});
    TempFile edges("acc8.edges"), cmty("acc8.cmty"), out("acc8.cover");
    TempFile rep("acc8.cover.report.json");
    write_benchmark(g, truth, edges.path, cmty.path);

    PipelineConfig cfg;
    cfg.edges_path = edges.path;
    cfg.ground_truth_path = cmty.path;
    cfg.output_path = out.path;
    // the large-graph settings the README recommends: a 1-hop candidate
    // search (2 hops hits thousands of labels per vertex at this scale) and
    // a shorter chain
    cfg.hop_radius = 1;
    cfg.inference.samples_per_chain = 2500;
    cfg.inference.burn_in = 500;

    const auto start = std::chrono::steady_clock::now();
    const PipelineResult result = run_pipeline(cfg);
    const double elapsed = seconds_since(start);

    const bool pass = elapsed < 1800.0 && !result.cover.empty();
    std::ostringstream detail;
    detail << g.vertex_count() << " vertices, " << g.edge_count()
           << " edges (hop radius 1, 8x2500 samples) in " << elapsed
           << "s (limit 1800s), " << result.cover.size() << " communities, onmi "
           << (result.metrics ? result.metrics->onmi : -1.0);
    report(8, "scale smoke test", pass, detail.str());
    CHECK(pass);
}
