#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "egomap/analysis.hpp"
#include "egomap/attributes.hpp"
#include "egomap/layout.hpp"

namespace egomap {

enum class ExportFormat { graphml, dot, json };

ExportFormat export_format_from_token(const std::string& token);
std::string to_token(ExportFormat format);

// What a graph document carries: the directed edges plus per-node codes,
// cluster labels and positions. Re-parsing an exported document yields an
// equal value (ids are preserved, so isomorphism is equality here).
struct GraphDocument {
    AccountId ego;
    std::string home_country;
    std::set<AccountId> nodes;
    std::set<std::pair<AccountId, AccountId>> edges;
    std::map<AccountId, Coding> coding;
    std::map<AccountId, int> cluster;
    std::map<AccountId, std::array<double, 2>> position;

    bool operator==(const GraphDocument&) const = default;
};

GraphDocument make_document(const AttributedGraph& ag, const Clustering& clustering,
                            const LayoutResult& layout);

// Serialize with sorted ids throughout; output is byte-reproducible.
// Throws InconsistentInputs when the inputs disagree on the node set.
std::string export_graph(const AttributedGraph& ag, const Clustering& clustering,
                         const LayoutResult& layout, ExportFormat format);

// Parses documents produced by export_graph (the exporter's subset of each
// format, not arbitrary GraphML/DOT).
GraphDocument parse_graph_document(const std::string& text, ExportFormat format);

enum class ColorBy { geography, affiliation, cluster };

struct VisualEncoding {
    ColorBy color_by = ColorBy::affiliation;
    std::optional<ColorBy> shape_by;
    bool degree_scaled_size = false;  // uniform radius otherwise
};

// Static map: one glyph per node, one line per edge (any-mode
// symmetrization), embedded legend with an entry per present category.
// Deterministic bytes for fixed inputs. Throws UnencodableCategory when a
// shape_by dimension has more distinct values than available shapes.
std::string render_svg(const LayoutResult& layout, const AttributedGraph& ag,
                       const Clustering& clustering, const VisualEncoding& encoding);

}  // namespace egomap
