#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "egomap/errors.hpp"
#include "egomap/http_client.hpp"
#include "egomap/pipeline.hpp"
#include "egomap/synth.hpp"

namespace py = pybind11;
using namespace egomap;

namespace {

Dimension dimension_from_token(const std::string& token) {
    if (token == "geography") return Dimension::geography;
    if (token == "affiliation") return Dimension::affiliation;
    throw InvalidSpecError("unknown dimension '" + token + "'");
}

CodingMap coding_from_dict(const py::dict& coding) {
    CodingMap map;
    for (const auto& item : coding) {
        auto id = item.first.cast<AccountId>();
        auto pair = item.second.cast<std::pair<std::string, std::string>>();
        auto g = geography_from_token(pair.first);
        auto a = affiliation_from_token(pair.second);
        if (!g || !a) {
            throw InvalidSpecError("bad coding tokens for '" + id + "'");
        }
        map[id] = Coding{*g, *a};
    }
    return map;
}

py::dict coding_to_dict(const CodingMap& map) {
    py::dict out;
    for (const auto& [id, coding] : map) {
        out[py::str(id)] =
            py::make_tuple(to_token(coding.geography), to_token(coding.affiliation));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_egomap, m) {
    m.doc() = "Reciprocal-interaction community mapping: C++ core operations";

    py::register_exception<Error>(m, "EgomapError");

    py::class_<AccountProfile>(m, "AccountProfile")
        .def(py::init<>())
        .def_readwrite("id", &AccountProfile::id)
        .def_readwrite("handle", &AccountProfile::handle)
        .def_readwrite("bio", &AccountProfile::bio)
        .def_readwrite("declared_location", &AccountProfile::declared_location)
        .def_readwrite("url", &AccountProfile::url)
        .def_readwrite("protected_account", &AccountProfile::protected_account)
        .def("__repr__", [](const AccountProfile& p) {
            return "<AccountProfile id='" + p.id + "'>";
        });

    py::class_<EgoArchive>(m, "EgoArchive")
        .def(py::init<>())
        .def_readwrite("ego", &EgoArchive::ego)
        .def_readwrite("fetched_at", &EgoArchive::fetched_at)
        .def_readwrite("followers", &EgoArchive::followers)
        .def_readwrite("followees", &EgoArchive::followees)
        .def_readwrite("member_followees", &EgoArchive::member_followees)
        .def_readwrite("profiles", &EgoArchive::profiles)
        .def("__eq__", [](const EgoArchive& a, const EgoArchive& b) { return a == b; })
        .def("__repr__", [](const EgoArchive& a) {
            return "<EgoArchive ego='" + a.ego.id +
                   "' followers=" + std::to_string(a.followers.size()) +
                   " followees=" + std::to_string(a.followees.size()) + ">";
        });

    m.def("load_archive", &load_archive, py::arg("path"));
    m.def("save_archive", &save_archive, py::arg("archive"), py::arg("path"));
    m.def("archive_to_string", &archive_to_string);
    m.def("archive_from_string", &archive_from_string);
    m.def("validate_archive", &validate_archive);

    py::class_<InteractionCommunity>(m, "InteractionCommunity")
        .def_readonly("ego", &InteractionCommunity::ego)
        .def_readonly("members", &InteractionCommunity::members)
        .def("__len__", [](const InteractionCommunity& c) { return c.members.size(); });

    m.def("interaction_community", &interaction_community, py::arg("archive"));

    py::class_<DirectedFollowGraph>(m, "DirectedFollowGraph")
        .def_readonly("ego", &DirectedFollowGraph::ego)
        .def_readonly("nodes", &DirectedFollowGraph::nodes)
        .def_readonly("edges", &DirectedFollowGraph::edges);

    py::class_<UndirectedFollowGraph>(m, "UndirectedFollowGraph")
        .def_readonly("nodes", &UndirectedFollowGraph::nodes)
        .def_readonly("edges", &UndirectedFollowGraph::edges);

    m.def("build_graph", &build_graph, py::arg("archive"));
    m.def(
        "symmetrize",
        [](const DirectedFollowGraph& g, const std::string& mode) {
            return symmetrize(g, symmetrize_mode_from_token(mode));
        },
        py::arg("graph"), py::arg("mode") = "any");

    py::class_<NodeDegrees>(m, "NodeDegrees")
        .def_readonly("in_degree", &NodeDegrees::in)
        .def_readonly("out_degree", &NodeDegrees::out)
        .def_readonly("mutual_degree", &NodeDegrees::mutual);
    py::class_<DegreeSummary>(m, "DegreeSummary")
        .def_readonly("per_node", &DegreeSummary::per_node)
        .def_readonly("density", &DegreeSummary::density);
    m.def("degree_summary", &degree_summary, py::arg("graph"));

    py::class_<RelationsSummary>(m, "RelationsSummary")
        .def_readonly("followers", &RelationsSummary::followers)
        .def_readonly("followees", &RelationsSummary::followees)
        .def_readonly("community", &RelationsSummary::community)
        .def("__repr__", [](const RelationsSummary& s) {
            return "<RelationsSummary followers=" + std::to_string(s.followers) +
                   " followees=" + std::to_string(s.followees) +
                   " community=" + std::to_string(s.community) + ">";
        });
    m.def("relations_summary", &relations_summary, py::arg("archive"));

    py::class_<AttributedGraph>(m, "AttributedGraph")
        .def_readonly("graph", &AttributedGraph::graph)
        .def_readonly("home_country", &AttributedGraph::home_country)
        .def_property_readonly(
            "coding", [](const AttributedGraph& ag) { return coding_to_dict(ag.coding); });

    m.def(
        "annotate",
        [](const DirectedFollowGraph& graph, const py::dict& coding,
           const std::string& home_country) {
            return annotate(graph, coding_from_dict(coding), home_country);
        },
        py::arg("graph"), py::arg("coding"), py::arg("home_country"));

    m.def(
        "load_coding_sheet",
        [](const std::filesystem::path& path, const InteractionCommunity& community) {
            return coding_to_dict(load_coding_sheet(path, community));
        },
        py::arg("path"), py::arg("community"));
    m.def(
        "coding_template_csv",
        [](const EgoArchive& archive) {
            return coding_sheet_to_string(
                generate_coding_template(interaction_community(archive), archive));
        },
        py::arg("archive"));

    py::class_<CategoryShares>(m, "CategoryShares")
        .def_readonly("categories", &CategoryShares::categories)
        .def_readonly("counts", &CategoryShares::counts)
        .def_readonly("shares", &CategoryShares::shares)
        .def_readonly("total", &CategoryShares::total);
    m.def(
        "category_shares",
        [](const AttributedGraph& ag, const std::string& dimension) {
            return category_shares(ag, dimension_from_token(dimension));
        },
        py::arg("attributed_graph"), py::arg("dimension"));

    py::class_<MixingMatrix>(m, "MixingMatrix")
        .def_readonly("categories", &MixingMatrix::categories)
        .def_readonly("m", &MixingMatrix::m)
        .def_readonly("assortativity", &MixingMatrix::assortativity);
    m.def(
        "mixing_matrix",
        [](const AttributedGraph& ag, const std::string& dimension) {
            return mixing_matrix(ag, dimension_from_token(dimension));
        },
        py::arg("attributed_graph"), py::arg("dimension"));

    py::class_<Clustering>(m, "Clustering")
        .def_readonly("assignment", &Clustering::assignment)
        .def_readonly("modularity", &Clustering::modularity)
        .def_readonly("resolution", &Clustering::resolution)
        .def_readonly("seed", &Clustering::seed);
    m.def("cluster", &cluster, py::arg("graph"), py::arg("resolution") = 1.0,
          py::arg("seed") = 1);
    m.def("partition_modularity", &partition_modularity, py::arg("graph"),
          py::arg("assignment"), py::arg("resolution") = 1.0);

    py::class_<CategoryEnrichment>(m, "CategoryEnrichment")
        .def_readonly("count", &CategoryEnrichment::count)
        .def_readonly("share", &CategoryEnrichment::share)
        .def_readonly("ratio", &CategoryEnrichment::ratio);
    py::class_<ClusterEnrichment>(m, "ClusterEnrichment")
        .def_readonly("cluster_sizes", &ClusterEnrichment::cluster_sizes)
        .def_readonly("clusters", &ClusterEnrichment::clusters);
    m.def(
        "cluster_enrichment",
        [](const Clustering& c, const AttributedGraph& ag, const std::string& dimension) {
            return cluster_enrichment(c, ag, dimension_from_token(dimension));
        },
        py::arg("clustering"), py::arg("attributed_graph"), py::arg("dimension"));

    py::class_<ProfileThresholds>(m, "ProfileThresholds")
        .def(py::init<>())
        .def_readwrite("globally_academic_max_non_academic",
                       &ProfileThresholds::globally_academic_max_non_academic)
        .def_readwrite("globally_academic_max_local",
                       &ProfileThresholds::globally_academic_max_local)
        .def_readwrite("locally_engaged_min_non_academic",
                       &ProfileThresholds::locally_engaged_min_non_academic)
        .def_readwrite("locally_engaged_min_enrichment",
                       &ProfileThresholds::locally_engaged_min_enrichment);

    py::class_<EngagementProfile>(m, "EngagementProfile")
        .def_property_readonly(
            "label", [](const EngagementProfile& p) { return to_token(p.label); })
        .def_property_readonly(
            "non_academic_share",
            [](const EngagementProfile& p) { return p.evidence.non_academic_share; })
        .def_property_readonly(
            "local_share", [](const EngagementProfile& p) { return p.evidence.local_share; })
        .def_property_readonly("max_cluster_non_academic_enrichment",
                               [](const EngagementProfile& p) {
                                   return p.evidence.max_cluster_non_academic_enrichment;
                               });
    m.def("classify_profile", &classify_profile, py::arg("attributed_graph"),
          py::arg("clustering"), py::arg("thresholds") = ProfileThresholds{});

    py::class_<LayoutResult>(m, "LayoutResult")
        .def_readonly("positions", &LayoutResult::positions)
        .def_readonly("seed", &LayoutResult::seed)
        .def_readonly("iterations", &LayoutResult::iterations);
    m.def("layout", &layout, py::arg("graph"), py::arg("seed") = 1,
          py::arg("iterations") = 200);

    m.def(
        "export_graph",
        [](const AttributedGraph& ag, const Clustering& clustering,
           const LayoutResult& positions, const std::string& format) {
            return export_graph(ag, clustering, positions, export_format_from_token(format));
        },
        py::arg("attributed_graph"), py::arg("clustering"), py::arg("layout"),
        py::arg("format"));

    m.def(
        "render_svg",
        [](const LayoutResult& positions, const AttributedGraph& ag,
           const Clustering& clustering, const std::string& color_by,
           const std::optional<std::string>& shape_by, bool degree_scaled_size) {
            VisualEncoding encoding;
            encoding.color_by = color_by_from_token(color_by);
            if (shape_by && *shape_by != "none") {
                encoding.shape_by = color_by_from_token(*shape_by);
            } else {
                encoding.shape_by.reset();
            }
            encoding.degree_scaled_size = degree_scaled_size;
            return render_svg(positions, ag, clustering, encoding);
        },
        py::arg("layout"), py::arg("attributed_graph"), py::arg("clustering"),
        py::arg("color_by") = "affiliation", py::arg("shape_by") = std::nullopt,
        py::arg("degree_scaled_size") = false);

    py::class_<GroundTruthEntry>(m, "GroundTruthEntry")
        .def_readonly("pole", &GroundTruthEntry::pole)
        .def_property_readonly(
            "geography", [](const GroundTruthEntry& e) { return to_token(e.geography); })
        .def_property_readonly(
            "affiliation", [](const GroundTruthEntry& e) { return to_token(e.affiliation); });
    m.def(
        "synth_generate",
        [](const std::string& spec_json) {
            SynthResult result = synth_generate(synth_spec_from_string(spec_json));
            return py::make_tuple(result.archive, result.truth);
        },
        py::arg("spec_json"),
        "Generate a planted-community archive; returns (archive, ground_truth)");

    py::class_<FetchBudget>(m, "FetchBudget")
        .def(py::init<>())
        .def_readwrite("max_requests_per_window", &FetchBudget::max_requests_per_window)
        .def_readwrite("window_seconds", &FetchBudget::window_seconds)
        .def_readwrite("max_pages_per_list", &FetchBudget::max_pages_per_list);

    m.def(
        "fetch_from_fixture",
        [](const EgoArchive& fixture, const std::string& handle, const FetchBudget& budget,
           std::int64_t started_at) -> std::optional<EgoArchive> {
            FixtureListProvider client(fixture);
            FetchOutcome outcome = fetch_ego(handle, client, budget, started_at);
            if (!outcome.complete()) return std::nullopt;
            return outcome.archive;
        },
        py::arg("fixture"), py::arg("handle"), py::arg("budget") = FetchBudget{},
        py::arg("started_at") = 0,
        "Replay a fetch against an archive fixture; None when the budget runs out");

    m.def(
        "run_pipeline",
        [](const std::filesystem::path& config_path) {
            PipelineResult result = run_pipeline(load_run_config(config_path));
            return report_to_json(result.report);
        },
        py::arg("config_path"), "Run the full pipeline; returns the report as a JSON string");

    m.def("report_text",
          [](const std::filesystem::path& config_path) {
              RunConfig config = load_run_config(config_path);
              EgoArchive archive = load_archive(config.archive_path);
              InteractionCommunity community = interaction_community(archive);
              CodingMap coding = load_coding_sheet(config.coding_sheet_path, community);
              AttributedGraph ag =
                  annotate(build_graph(archive), coding, config.home_country);
              Clustering clustering =
                  cluster(symmetrize(ag.graph, config.symmetrization),
                          config.clustering_resolution, config.clustering_seed);
              return report_to_text(
                  build_report(archive, ag, clustering, config.thresholds));
          });
}
