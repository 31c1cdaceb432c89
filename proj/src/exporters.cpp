#include "egomap/exporters.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "egomap/errors.hpp"

namespace egomap {

using nlohmann::json;

ExportFormat export_format_from_token(const std::string& token) {
    if (token == "graphml") return ExportFormat::graphml;
    if (token == "dot") return ExportFormat::dot;
    if (token == "json") return ExportFormat::json;
    throw InvalidSpecError("unknown export format '" + token + "'");
}

std::string to_token(ExportFormat format) {
    switch (format) {
        case ExportFormat::graphml: return "graphml";
        case ExportFormat::dot: return "dot";
        case ExportFormat::json: return "json";
    }
    return "json";
}

namespace {

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string xml_unescape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '&') {
            out += text[i];
            continue;
        }
        auto end = text.find(';', i);
        if (end == std::string::npos) {
            throw SchemaViolationError("bad XML entity");
        }
        std::string entity = text.substr(i, end - i + 1);
        if (entity == "&amp;") out += '&';
        else if (entity == "&lt;") out += '<';
        else if (entity == "&gt;") out += '>';
        else if (entity == "&quot;") out += '"';
        else if (entity == "&apos;") out += '\'';
        else throw SchemaViolationError("unknown XML entity " + entity);
        i = end;
    }
    return out;
}

std::string dot_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '\\' || c == '"') out += '\\';
        out += c;
    }
    return out;
}

// ---------------------------------------------------------------- graphml

const char* kGraphmlKeys[] = {"geography", "affiliation", "cluster", "x", "y"};

std::string write_graphml(const GraphDocument& doc) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    const char* types[] = {"string", "string", "int", "double", "double"};
    for (std::size_t i = 0; i < std::size(kGraphmlKeys); ++i) {
        out += "  <key id=\"d" + std::to_string(i) + "\" for=\"node\" attr.name=\"" +
               kGraphmlKeys[i] + "\" attr.type=\"" + types[i] + "\"/>\n";
    }
    out += "  <key id=\"g0\" for=\"graph\" attr.name=\"ego\" attr.type=\"string\"/>\n";
    out += "  <key id=\"g1\" for=\"graph\" attr.name=\"home_country\" attr.type=\"string\"/>\n";
    out += "  <graph id=\"G\" edgedefault=\"directed\">\n";
    out += "    <data key=\"g0\">" + xml_escape(doc.ego) + "</data>\n";
    out += "    <data key=\"g1\">" + xml_escape(doc.home_country) + "</data>\n";
    for (const auto& id : doc.nodes) {
        const Coding& coding = doc.coding.at(id);
        const auto& pos = doc.position.at(id);
        out += "    <node id=\"" + xml_escape(id) + "\">\n";
        out += "      <data key=\"d0\">" + to_token(coding.geography) + "</data>\n";
        out += "      <data key=\"d1\">" + to_token(coding.affiliation) + "</data>\n";
        out += "      <data key=\"d2\">" + std::to_string(doc.cluster.at(id)) + "</data>\n";
        out += "      <data key=\"d3\">" + format_double(pos[0]) + "</data>\n";
        out += "      <data key=\"d4\">" + format_double(pos[1]) + "</data>\n";
        out += "    </node>\n";
    }
    for (const auto& [u, v] : doc.edges) {
        out += "    <edge source=\"" + xml_escape(u) + "\" target=\"" + xml_escape(v) +
               "\"/>\n";
    }
    out += "  </graph>\n";
    out += "</graphml>\n";
    return out;
}

// Tiny scanner for the exporter's own XML subset.
struct XmlTag {
    std::string name;
    std::map<std::string, std::string> attributes;
    bool closing = false;
    bool self_closing = false;
    std::size_t end = 0;  // index just past '>'
};

XmlTag parse_tag(const std::string& text, std::size_t start) {
    XmlTag tag;
    std::size_t i = start + 1;
    if (i < text.size() && text[i] == '/') {
        tag.closing = true;
        ++i;
    }
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                               text[i] == '.' || text[i] == '_' || text[i] == '?')) {
        tag.name += text[i++];
    }
    while (i < text.size() && text[i] != '>') {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] == '/' || text[i] == '?') {
            tag.self_closing = true;
            ++i;
            continue;
        }
        std::string name;
        while (i < text.size() && text[i] != '=' &&
               !std::isspace(static_cast<unsigned char>(text[i]))) {
            name += text[i++];
        }
        while (i < text.size() && (text[i] == '=' || std::isspace(static_cast<unsigned char>(text[i])))) ++i;
        if (i >= text.size() || text[i] != '"') {
            throw SchemaViolationError("malformed XML attribute near '" + name + "'");
        }
        std::size_t close = text.find('"', i + 1);
        if (close == std::string::npos) {
            throw SchemaViolationError("unterminated XML attribute value");
        }
        tag.attributes[name] = xml_unescape(text.substr(i + 1, close - i - 1));
        i = close + 1;
    }
    if (i >= text.size()) {
        throw SchemaViolationError("unterminated XML tag");
    }
    tag.end = i + 1;
    return tag;
}

GraphDocument parse_graphml(const std::string& text) {
    GraphDocument doc;
    std::map<std::string, std::string> key_names;  // key id -> attr.name
    std::string current_node;                       // empty = graph scope
    bool in_graph = false;

    std::size_t i = 0;
    while ((i = text.find('<', i)) != std::string::npos) {
        XmlTag tag = parse_tag(text, i);
        if (tag.name == "?xml" || tag.name == "graphml" || tag.closing) {
            if (tag.closing && tag.name == "node") current_node.clear();
            i = tag.end;
            continue;
        }
        if (tag.name == "key") {
            key_names[tag.attributes.at("id")] = tag.attributes.at("attr.name");
        } else if (tag.name == "graph") {
            in_graph = true;
        } else if (tag.name == "node") {
            current_node = tag.attributes.at("id");
            doc.nodes.insert(current_node);
            doc.coding[current_node] = Coding{};
            doc.cluster[current_node] = 0;
            doc.position[current_node] = {0.0, 0.0};
            if (tag.self_closing) current_node.clear();
        } else if (tag.name == "edge") {
            doc.edges.emplace(tag.attributes.at("source"), tag.attributes.at("target"));
        } else if (tag.name == "data") {
            std::size_t close = text.find("</data>", tag.end);
            if (close == std::string::npos) {
                throw SchemaViolationError("unterminated <data> element");
            }
            std::string value = xml_unescape(text.substr(tag.end, close - tag.end));
            auto it = key_names.find(tag.attributes.at("key"));
            if (it == key_names.end()) {
                throw SchemaViolationError("data references undeclared key");
            }
            const std::string& name = it->second;
            if (current_node.empty()) {
                if (name == "ego") doc.ego = value;
                else if (name == "home_country") doc.home_country = value;
            } else {
                if (name == "geography") {
                    auto g = geography_from_token(value);
                    if (!g) throw SchemaViolationError("bad geography token '" + value + "'");
                    doc.coding[current_node].geography = *g;
                } else if (name == "affiliation") {
                    auto a = affiliation_from_token(value);
                    if (!a) throw SchemaViolationError("bad affiliation token '" + value + "'");
                    doc.coding[current_node].affiliation = *a;
                } else if (name == "cluster") {
                    doc.cluster[current_node] = std::atoi(value.c_str());
                } else if (name == "x") {
                    doc.position[current_node][0] = std::strtod(value.c_str(), nullptr);
                } else if (name == "y") {
                    doc.position[current_node][1] = std::strtod(value.c_str(), nullptr);
                }
            }
            i = close + 7;
            continue;
        }
        i = tag.end;
    }
    if (!in_graph) {
        throw SchemaViolationError("document contains no <graph> element");
    }
    return doc;
}

// -------------------------------------------------------------------- dot

std::string write_dot(const GraphDocument& doc) {
    std::string out = "digraph egonet {\n";
    out += "  graph [ego=\"" + dot_escape(doc.ego) + "\", home_country=\"" +
           dot_escape(doc.home_country) + "\"];\n";
    for (const auto& id : doc.nodes) {
        const Coding& coding = doc.coding.at(id);
        const auto& pos = doc.position.at(id);
        out += "  \"" + dot_escape(id) + "\" [geography=\"" + to_token(coding.geography) +
               "\", affiliation=\"" + to_token(coding.affiliation) + "\", cluster=\"" +
               std::to_string(doc.cluster.at(id)) + "\", x=\"" + format_double(pos[0]) +
               "\", y=\"" + format_double(pos[1]) + "\"];\n";
    }
    for (const auto& [u, v] : doc.edges) {
        out += "  \"" + dot_escape(u) + "\" -> \"" + dot_escape(v) + "\";\n";
    }
    out += "}\n";
    return out;
}

struct DotTokenizer {
    const std::string& text;
    std::size_t i = 0;

    // Returns quoted strings unescaped, identifiers, or single symbols.
    std::optional<std::string> next() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size()) return std::nullopt;
        char c = text[i];
        if (c == '"') {
            std::string value;
            ++i;
            while (i < text.size() && text[i] != '"') {
                if (text[i] == '\\' && i + 1 < text.size()) ++i;
                value += text[i++];
            }
            if (i >= text.size()) throw SchemaViolationError("unterminated DOT string");
            ++i;
            return value;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            i += 2;
            return std::string("->");
        }
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                       text[i] == '_')) {
                word += text[i++];
            }
            return word;
        }
        ++i;
        return std::string(1, c);
    }
};

std::map<std::string, std::string> parse_dot_attributes(DotTokenizer& tokens) {
    std::map<std::string, std::string> attributes;
    // caller consumed '['
    while (true) {
        auto name = tokens.next();
        if (!name) throw SchemaViolationError("unterminated DOT attribute list");
        if (*name == "]") break;
        if (*name == ",") continue;
        auto equals = tokens.next();
        auto value = tokens.next();
        if (!equals || *equals != "=" || !value) {
            throw SchemaViolationError("malformed DOT attribute");
        }
        attributes[*name] = *value;
    }
    return attributes;
}

GraphDocument parse_dot(const std::string& text) {
    GraphDocument doc;
    DotTokenizer tokens{text};
    auto keyword = tokens.next();
    auto graph_name = tokens.next();
    auto brace = tokens.next();
    if (!keyword || *keyword != "digraph" || !brace || *brace != "{") {
        throw SchemaViolationError("not a digraph document");
    }
    (void)graph_name;

    while (true) {
        auto token = tokens.next();
        if (!token) throw SchemaViolationError("unterminated digraph body");
        if (*token == "}") break;
        if (*token == ";") continue;
        if (*token == "graph") {
            auto open = tokens.next();
            if (!open || *open != "[") throw SchemaViolationError("malformed graph attributes");
            auto attributes = parse_dot_attributes(tokens);
            if (attributes.count("ego")) doc.ego = attributes["ego"];
            if (attributes.count("home_country")) doc.home_country = attributes["home_country"];
            continue;
        }
        // node id, possibly followed by attributes or an edge
        std::string id = *token;
        auto next = tokens.next();
        if (next && *next == "[") {
            auto attributes = parse_dot_attributes(tokens);
            doc.nodes.insert(id);
            Coding coding;
            if (auto g = geography_from_token(attributes["geography"])) coding.geography = *g;
            else throw SchemaViolationError("bad geography token in DOT node '" + id + "'");
            if (auto a = affiliation_from_token(attributes["affiliation"]))
                coding.affiliation = *a;
            else throw SchemaViolationError("bad affiliation token in DOT node '" + id + "'");
            doc.coding[id] = coding;
            doc.cluster[id] = std::atoi(attributes["cluster"].c_str());
            doc.position[id] = {std::strtod(attributes["x"].c_str(), nullptr),
                                std::strtod(attributes["y"].c_str(), nullptr)};
        } else if (next && *next == "->") {
            auto target = tokens.next();
            if (!target) throw SchemaViolationError("dangling DOT edge");
            doc.edges.emplace(id, *target);
        } else {
            throw SchemaViolationError("unexpected DOT token after '" + id + "'");
        }
    }
    return doc;
}

// ------------------------------------------------------------------- json

std::string write_json(const GraphDocument& doc) {
    json j;
    j["directed"] = true;
    j["ego"] = doc.ego;
    j["home_country"] = doc.home_country;
    j["nodes"] = json::array();
    for (const auto& id : doc.nodes) {
        const Coding& coding = doc.coding.at(id);
        const auto& pos = doc.position.at(id);
        json node;
        node["id"] = id;
        node["geography"] = to_token(coding.geography);
        node["affiliation"] = to_token(coding.affiliation);
        node["cluster"] = doc.cluster.at(id);
        node["x"] = pos[0];
        node["y"] = pos[1];
        j["nodes"].push_back(std::move(node));
    }
    j["edges"] = json::array();
    for (const auto& [u, v] : doc.edges) {
        json edge;
        edge["source"] = u;
        edge["target"] = v;
        j["edges"].push_back(std::move(edge));
    }
    return j.dump(2) + "\n";
}

GraphDocument parse_json_graph(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object() || !j.value("directed", false)) {
        throw SchemaViolationError("not a directed graph JSON document");
    }
    GraphDocument doc;
    doc.ego = j.value("ego", std::string{});
    doc.home_country = j.value("home_country", std::string{});
    for (const auto& node : j.at("nodes")) {
        AccountId id = node.at("id").get<std::string>();
        doc.nodes.insert(id);
        Coding coding;
        auto g = geography_from_token(node.at("geography").get<std::string>());
        auto a = affiliation_from_token(node.at("affiliation").get<std::string>());
        if (!g || !a) throw SchemaViolationError("bad category token in JSON node '" + id + "'");
        coding.geography = *g;
        coding.affiliation = *a;
        doc.coding[id] = coding;
        doc.cluster[id] = node.at("cluster").get<int>();
        doc.position[id] = {node.at("x").get<double>(), node.at("y").get<double>()};
    }
    for (const auto& edge : j.at("edges")) {
        doc.edges.emplace(edge.at("source").get<std::string>(),
                          edge.at("target").get<std::string>());
    }
    return doc;
}

}  // namespace

GraphDocument make_document(const AttributedGraph& ag, const Clustering& clustering,
                            const LayoutResult& layout) {
    for (const auto& node : ag.graph.nodes) {
        if (!clustering.assignment.count(node)) {
            throw InconsistentInputsError("node '" + node + "' has no cluster label");
        }
        if (!layout.positions.count(node)) {
            throw InconsistentInputsError("node '" + node + "' has no layout position");
        }
    }
    if (clustering.assignment.size() != ag.graph.nodes.size()) {
        throw InconsistentInputsError("clustering covers a different node set");
    }
    if (layout.positions.size() != ag.graph.nodes.size()) {
        throw InconsistentInputsError("layout covers a different node set");
    }
    GraphDocument doc;
    doc.ego = ag.graph.ego;
    doc.home_country = ag.home_country;
    doc.nodes = ag.graph.nodes;
    doc.edges = ag.graph.edges;
    doc.coding = ag.coding;
    doc.cluster = clustering.assignment;
    doc.position = layout.positions;
    return doc;
}

std::string export_graph(const AttributedGraph& ag, const Clustering& clustering,
                         const LayoutResult& layout, ExportFormat format) {
    GraphDocument doc = make_document(ag, clustering, layout);
    switch (format) {
        case ExportFormat::graphml: return write_graphml(doc);
        case ExportFormat::dot: return write_dot(doc);
        case ExportFormat::json: return write_json(doc);
    }
    throw InvalidSpecError("unreachable export format");
}

GraphDocument parse_graph_document(const std::string& text, ExportFormat format) {
    switch (format) {
        case ExportFormat::graphml: return parse_graphml(text);
        case ExportFormat::dot: return parse_dot(text);
        case ExportFormat::json: return parse_json_graph(text);
    }
    throw InvalidSpecError("unreachable export format");
}

// -------------------------------------------------------------------- svg

namespace {

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a045", "#e15759", "#b07aa1",
                          "#9c755f", "#76b7b2", "#edc948", "#ff9da7", "#bab0ac"};
const char* kShapes[] = {"circle", "square", "triangle", "diamond", "cross", "star"};

std::string svg_number(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
    return buffer;
}

// Category values present among nodes, in canonical order.
std::vector<std::string> present_values(ColorBy what, const AttributedGraph& ag,
                                        const Clustering& clustering) {
    std::vector<std::string> present;
    if (what == ColorBy::cluster) {
        std::set<int> labels;
        for (const auto& [_, label] : clustering.assignment) labels.insert(label);
        for (int label : labels) present.push_back("cluster " + std::to_string(label));
        return present;
    }
    Dimension dim = what == ColorBy::geography ? Dimension::geography : Dimension::affiliation;
    std::set<std::string> seen;
    for (const auto& node : ag.graph.nodes) {
        seen.insert(node_category(ag.coding.at(node), dim));
    }
    for (const auto& category : dimension_categories(dim)) {
        if (seen.count(category)) present.push_back(category);
    }
    return present;
}

std::string node_value(ColorBy what, const AccountId& id, const AttributedGraph& ag,
                       const Clustering& clustering) {
    if (what == ColorBy::cluster) {
        return "cluster " + std::to_string(clustering.assignment.at(id));
    }
    Dimension dim = what == ColorBy::geography ? Dimension::geography : Dimension::affiliation;
    return node_category(ag.coding.at(id), dim);
}

std::string glyph(const std::string& shape, double x, double y, double r,
                  const std::string& fill) {
    std::string attrs = " fill=\"" + fill + "\" stroke=\"#333333\" stroke-width=\"0.5\"";
    if (shape == "circle") {
        return "<circle cx=\"" + svg_number(x) + "\" cy=\"" + svg_number(y) + "\" r=\"" +
               svg_number(r) + "\"" + attrs + "/>";
    }
    if (shape == "square") {
        return "<rect x=\"" + svg_number(x - r) + "\" y=\"" + svg_number(y - r) +
               "\" width=\"" + svg_number(2 * r) + "\" height=\"" + svg_number(2 * r) + "\"" +
               attrs + "/>";
    }
    auto point = [](double px, double py) {
        return svg_number(px) + "," + svg_number(py);
    };
    if (shape == "triangle") {
        return "<polygon points=\"" + point(x, y - r) + " " + point(x - r, y + r) + " " +
               point(x + r, y + r) + "\"" + attrs + "/>";
    }
    if (shape == "diamond") {
        return "<polygon points=\"" + point(x, y - r) + " " + point(x + r, y) + " " +
               point(x, y + r) + " " + point(x - r, y) + "\"" + attrs + "/>";
    }
    if (shape == "cross") {
        double w = r * 0.4;
        return "<path d=\"M" + point(x - w, y - r) + " H" + svg_number(x + w) + " V" +
               svg_number(y - w) + " H" + svg_number(x + r) + " V" + svg_number(y + w) +
               " H" + svg_number(x + w) + " V" + svg_number(y + r) + " H" +
               svg_number(x - w) + " V" + svg_number(y + w) + " H" + svg_number(x - r) +
               " V" + svg_number(y - w) + " H" + svg_number(x - w) + " Z\"" + attrs + "/>";
    }
    // star
    std::string points;
    for (int i = 0; i < 10; ++i) {
        double angle = -1.5707963267948966 + i * 0.6283185307179586;
        double radius = i % 2 == 0 ? r : r * 0.45;
        if (i) points += " ";
        points += point(x + std::cos(angle) * radius, y + std::sin(angle) * radius);
    }
    return "<polygon points=\"" + points + "\"" + attrs + "/>";
}

}  // namespace

std::string render_svg(const LayoutResult& layout, const AttributedGraph& ag,
                       const Clustering& clustering, const VisualEncoding& encoding) {
    GraphDocument doc = make_document(ag, clustering, layout);

    auto colors = present_values(encoding.color_by, ag, clustering);
    std::map<std::string, std::string> color_of;
    for (std::size_t i = 0; i < colors.size(); ++i) {
        color_of[colors[i]] = kPalette[i % std::size(kPalette)];
    }
    std::vector<std::string> shapes;
    std::map<std::string, std::string> shape_of;
    if (encoding.shape_by) {
        shapes = present_values(*encoding.shape_by, ag, clustering);
        if (shapes.size() > std::size(kShapes)) {
            throw UnencodableCategoryError(std::to_string(shapes.size()) +
                                           " categories exceed the " +
                                           std::to_string(std::size(kShapes)) +
                                           " available shapes");
        }
        for (std::size_t i = 0; i < shapes.size(); ++i) shape_of[shapes[i]] = kShapes[i];
    }

    constexpr double kWidth = 840, kHeight = 600;
    constexpr double kPlotX = 30, kPlotY = 30, kPlotSize = 540;
    auto px = [&](double x) { return kPlotX + x * kPlotSize; };
    auto py = [&](double y) { return kPlotY + (1.0 - y) * kPlotSize; };

    std::map<AccountId, std::size_t> degree;
    std::size_t max_degree = 1;
    if (encoding.degree_scaled_size) {
        for (const auto& node : doc.nodes) degree[node] = 0;
        for (const auto& [u, v] : doc.edges) {
            degree[u] += 1;
            degree[v] += 1;
        }
        for (const auto& [_, d] : degree) max_degree = std::max(max_degree, d);
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_number(kWidth) +
           "\" height=\"" + svg_number(kHeight) + "\" viewBox=\"0 0 " + svg_number(kWidth) +
           " " + svg_number(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    // Edges drawn under nodes, any-mode symmetrization for visual parity.
    svg += "<g stroke=\"#c8c8c8\" stroke-width=\"0.6\">\n";
    std::set<std::pair<AccountId, AccountId>> drawn;
    for (const auto& [u, v] : doc.edges) {
        auto key = std::minmax(u, v);
        if (!drawn.emplace(key.first, key.second).second) continue;
        const auto& a = doc.position.at(u);
        const auto& b = doc.position.at(v);
        svg += "<line x1=\"" + svg_number(px(a[0])) + "\" y1=\"" + svg_number(py(a[1])) +
               "\" x2=\"" + svg_number(px(b[0])) + "\" y2=\"" + svg_number(py(b[1])) +
               "\"/>\n";
    }
    svg += "</g>\n";

    svg += "<g>\n";
    for (const auto& id : doc.nodes) {
        const auto& pos = doc.position.at(id);
        double radius = 6.0;
        if (encoding.degree_scaled_size) {
            radius = 4.0 + 8.0 * static_cast<double>(degree[id]) /
                               static_cast<double>(max_degree);
        }
        std::string color = color_of.at(node_value(encoding.color_by, id, ag, clustering));
        std::string shape = "circle";
        if (encoding.shape_by) {
            shape = shape_of.at(node_value(*encoding.shape_by, id, ag, clustering));
        }
        svg += glyph(shape, px(pos[0]), py(pos[1]), radius, color);
        svg += "\n";
    }
    svg += "</g>\n";

    // Legend column on the right.
    double lx = kPlotX + kPlotSize + 40, ly = kPlotY + 10;
    svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<text x=\"" + svg_number(lx) + "\" y=\"" + svg_number(ly) +
           "\" font-weight=\"bold\">" +
           xml_escape(encoding.color_by == ColorBy::cluster
                          ? "cluster"
                          : to_token(encoding.color_by == ColorBy::geography
                                         ? Dimension::geography
                                         : Dimension::affiliation)) +
           "</text>\n";
    ly += 8;
    for (const auto& value : colors) {
        ly += 18;
        svg += glyph("circle", lx + 6, ly - 4, 6.0, color_of.at(value));
        svg += "\n<text x=\"" + svg_number(lx + 20) + "\" y=\"" + svg_number(ly) + "\">" +
               xml_escape(value) + "</text>\n";
    }
    if (encoding.shape_by) {
        ly += 28;
        svg += "<text x=\"" + svg_number(lx) + "\" y=\"" + svg_number(ly) +
               "\" font-weight=\"bold\">" +
               xml_escape(*encoding.shape_by == ColorBy::cluster
                              ? "cluster"
                              : to_token(*encoding.shape_by == ColorBy::geography
                                             ? Dimension::geography
                                             : Dimension::affiliation)) +
               "</text>\n";
        ly += 8;
        for (const auto& value : shapes) {
            ly += 18;
            svg += glyph(shape_of.at(value), lx + 6, ly - 4, 6.0, "#888888");
            svg += "\n<text x=\"" + svg_number(lx + 20) + "\" y=\"" + svg_number(ly) + "\">" +
                   xml_escape(value) + "</text>\n";
        }
    }
    svg += "</g>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace egomap
