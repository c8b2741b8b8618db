#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "giohms/errors.hpp"
#include "giohms/pipeline.hpp"

namespace py = pybind11;
using namespace giohms;

namespace {

std::vector<std::vector<VertexId>> cover_to_lists(const Cover& cover) {
    std::vector<std::vector<VertexId>> out;
    out.reserve(cover.size());
    for (const auto& c : cover.communities()) out.push_back(c.members);
    return out;
}

Cover cover_from_lists(const std::vector<std::vector<VertexId>>& sets) {
    return Cover::from_member_sets(sets);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Overlapping community detection: ego-network seeding, epsilon "
              "merging, and MCMC inference on an observed-hidden network";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

    py::class_<Graph>(m, "Graph")
        .def_static("from_edges",
                    [](const std::vector<std::pair<VertexId, VertexId>>& edges,
                       const std::vector<VertexId>& extra) {
                        return Graph::from_edges(edges, extra);
                    },
                    py::arg("edges"), py::arg("extra_vertices") = std::vector<VertexId>{})
        .def_property_readonly("vertex_count", &Graph::vertex_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("vertices", &Graph::vertices)
        .def("neighbors", &Graph::neighbor_ids, py::arg("v"))
        .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
        .def("edges", &Graph::edge_ids)
        .def("__repr__", [](const Graph& g) {
            std::ostringstream s;
            s << "Graph(" << g.vertex_count() << " vertices, " << g.edge_count() << " edges)";
            return s.str();
        });

    m.def("parse_edge_list", &parse_edge_list_text, py::arg("text"));
    m.def("load_edge_list", &load_edge_list, py::arg("path"));
    m.def("induced_subgraph", &induced_subgraph, py::arg("graph"), py::arg("vertices"));
    m.def("ego_minus_ego", &ego_minus_ego, py::arg("graph"), py::arg("v"));

    m.def("local_seed",
          [](const Graph& g, VertexId v, std::uint64_t seed, std::uint32_t max_iterations) {
              SeedConfig cfg{max_iterations, seed};
              return cover_to_lists(local_seed(g, v, cfg));
          },
          py::arg("graph"), py::arg("v"), py::arg("seed") = 0, py::arg("max_iterations") = 100);

    m.def("detect_communities",
          [](const std::string& edges_path, const std::string& truth_path, double epsilon,
             double prob_threshold, unsigned hop_radius, unsigned threads, std::uint64_t seed,
             std::uint32_t chains, std::uint32_t samples, std::uint32_t burn_in,
             const std::string& out_path) {
              PipelineConfig cfg;
              cfg.edges_path = edges_path;
              cfg.ground_truth_path = truth_path;
              cfg.epsilon = epsilon;
              cfg.prob_threshold = prob_threshold;
              cfg.hop_radius = hop_radius;
              cfg.threads = threads;
              cfg.seed = seed;
              cfg.inference.chains = chains;
              cfg.inference.samples_per_chain = samples;
              cfg.inference.burn_in = burn_in;
              cfg.output_path = out_path;
              const PipelineResult result = [&] {
                  py::gil_scoped_release release;
                  return run_pipeline(cfg);
              }();

              py::dict out;
              out["communities"] = cover_to_lists(result.cover);
              if (result.metrics) {
                  py::dict metrics;
                  metrics["onmi"] = result.metrics->onmi;
                  metrics["avg_f1"] = result.metrics->avg_f1;
                  metrics["detected_count"] = result.metrics->detected_count;
                  metrics["truth_count"] = result.metrics->truth_count;
                  out["metrics"] = metrics;
              }
              py::dict timing;
              for (const auto& s : result.timing.stages) timing[s.name.c_str()] = s.seconds;
              timing["total_seconds"] = result.timing.total_seconds;
              out["timing"] = timing;
              return out;
          },
          py::arg("edges_path"), py::arg("truth_path") = std::string(),
          py::arg("epsilon") = 0.1, py::arg("prob_threshold") = 0.8, py::arg("hop_radius") = 2,
          py::arg("threads") = 0, py::arg("seed") = 42, py::arg("chains") = 8,
          py::arg("samples") = 5000, py::arg("burn_in") = 1000,
          py::arg("out_path") = std::string());

    m.def("planted_overlap",
          [](std::uint32_t num_communities, std::uint32_t community_size,
             std::uint32_t overlap_vertices, double p_in, double p_out, std::uint64_t seed) {
              PlantedConfig cfg{num_communities, community_size, overlap_vertices,
                                p_in, p_out, seed};
              auto [graph, truth] = planted_overlap(cfg);
              return py::make_tuple(std::move(graph), cover_to_lists(truth));
          },
          py::arg("num_communities"), py::arg("community_size"),
          py::arg("overlap_vertices") = 0, py::arg("p_in") = 1.0, py::arg("p_out") = 0.0,
          py::arg("seed") = 0);

    m.def("onmi",
          [](const std::vector<std::vector<VertexId>>& x,
             const std::vector<std::vector<VertexId>>& y,
             const std::optional<std::vector<VertexId>>& universe) {
              return onmi(cover_from_lists(x), cover_from_lists(y), universe);
          },
          py::arg("x"), py::arg("y"), py::arg("universe") = std::nullopt);

    m.def("avg_f1",
          [](const std::vector<std::vector<VertexId>>& detected,
             const std::vector<std::vector<VertexId>>& truth) {
              return avg_f1(cover_from_lists(detected), cover_from_lists(truth));
          },
          py::arg("detected"), py::arg("truth"));

    m.def("write_cover",
          [](const std::vector<std::vector<VertexId>>& cover, const std::string& path) {
              write_cover_file(cover_from_lists(cover), path);
          },
          py::arg("cover"), py::arg("path"));
    m.def("read_cover",
          [](const std::string& path) { return cover_to_lists(read_cover_file(path)); },
          py::arg("path"));

    m.attr("__version__") = "0.1.0";
}
