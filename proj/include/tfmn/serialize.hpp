#pragma once

// Network files (JSON, GraphML) and report writers. Output is byte-stable:
// maps are ordered, numbers go through nlohmann's shortest round-trip form.

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tfmn/analysis.hpp"
#include "tfmn/emotion.hpp"
#include "tfmn/error.hpp"
#include "tfmn/lexicons.hpp"
#include "tfmn/metrics.hpp"
#include "tfmn/network.hpp"
#include "tfmn/stats.hpp"

namespace tfmn {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kNetworkFormat = "tfmn-network";
inline constexpr int kNetworkVersion = 1;

inline json emotions_json(EmotionSet es)
{
    json a = json::array();
    for (auto e : es.members()) a.push_back(std::string(to_string(e)));
    return a;
}

inline json to_json(const MultiplexLexicalNetwork& net)
{
    json j;
    j["format"] = kNetworkFormat;
    j["version"] = kNetworkVersion;
    j["provenance"] = {{"corpus_id", net.provenance().corpus_id},
                       {"config_hash", net.provenance().config_hash},
                       {"edge_direction", net.provenance().edge_direction}};
    json nodes = json::array();
    for (const auto& [st, c] : net.nodes()) {
        json n;
        n["stem"] = c.stem;
        n["label"] = c.label;
        n["valence_label"] = to_string(c.valence_label);
        n["valence_score"] = c.valence_score ? json(*c.valence_score) : json(nullptr);
        n["emotions"] = emotions_json(c.emotions);
        n["negation"] = c.is_negation_marker;
        n["occurrences"] = c.occurrences;
        nodes.push_back(std::move(n));
    }
    j["nodes"] = std::move(nodes);
    json syn = json::array();
    for (const auto& [e, k] : net.syntactic_edges()) syn.push_back({{"source", e.first}, {"target", e.second}, {"count", k}});
    j["syntactic_edges"] = std::move(syn);
    json sem = json::array();
    for (const auto& e : net.synonym_edges()) sem.push_back({{"source", e.first}, {"target", e.second}});
    j["synonym_edges"] = std::move(sem);
    return j;
}

namespace serialize_detail {

[[noreturn]] inline void corrupt(const std::string& what)
{
    throw Error("corrupt_network", "network file failed validation: " + what);
}

template <class T>
T get(const json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) corrupt(where + " lacks '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        corrupt(where + " has a malformed '" + key + "'");
    }
}

inline EmotionSet parse_emotions(const json& a, const std::string& where)
{
    EmotionSet es;
    if (!a.is_array()) corrupt(where + " emotions is not an array");
    for (const auto& e : a) {
        if (!e.is_string()) corrupt(where + " has a non-string emotion");
        auto em = parse_emotion(e.get<std::string>());
        if (!em) corrupt(where + " has unknown emotion '" + e.get<std::string>() + "'");
        es.insert(*em);
    }
    return es;
}

inline void check(const MultiplexLexicalNetwork& net)
{
    if (auto err = net.validate()) corrupt(*err);
}

}  // namespace serialize_detail

inline MultiplexLexicalNetwork network_from_json(const json& j)
{
    using namespace serialize_detail;
    if (!j.is_object()) corrupt("top level is not an object");
    if (get<std::string>(j, "format", "file") != kNetworkFormat) corrupt("format is not '" + std::string(kNetworkFormat) + "'");
    if (get<int>(j, "version", "file") != kNetworkVersion) corrupt("unsupported version");
    MultiplexLexicalNetwork net;
    const auto& prov = j.contains("provenance") ? j["provenance"] : json::object();
    net.provenance().corpus_id = prov.value("corpus_id", "");
    net.provenance().config_hash = prov.value("config_hash", "");
    net.provenance().edge_direction = prov.value("edge_direction", "undirected");

    if (!j.contains("nodes") || !j["nodes"].is_array()) corrupt("nodes array missing");
    for (const auto& n : j["nodes"]) {
        Concept c;
        c.stem = get<std::string>(n, "stem", "node");
        const auto where = "node '" + c.stem + "'";
        if (net.has_node(c.stem)) corrupt("duplicate node '" + c.stem + "'");
        c.label = n.value("label", "");
        auto vl = parse_valence_label(get<std::string>(n, "valence_label", where));
        if (!vl) corrupt(where + " has an unknown valence label");
        c.valence_label = *vl;
        if (n.contains("valence_score") && !n["valence_score"].is_null()) c.valence_score = get<double>(n, "valence_score", where);
        if ((c.valence_label == ValenceLabel::unrated) != !c.valence_score)
            corrupt(where + " valence label disagrees with its score");
        c.emotions = parse_emotions(n.value("emotions", json::array()), where);
        c.is_negation_marker = n.value("negation", false);
        c.occurrences = n.value("occurrences", std::size_t{0});
        net.add_node(std::move(c));
    }
    const auto edge = [&](const json& e, const char* layer) {
        auto a = get<std::string>(e, "source", std::string(layer) + " edge");
        auto b = get<std::string>(e, "target", std::string(layer) + " edge");
        if (a == b) corrupt(std::string(layer) + " self-loop on '" + a + "'");
        if (!net.has_node(a) || !net.has_node(b))
            corrupt(std::string(layer) + " edge (" + a + ", " + b + ") has an endpoint outside the node set");
        return std::pair{a, b};
    };
    if (!j.contains("syntactic_edges") || !j["syntactic_edges"].is_array()) corrupt("syntactic_edges array missing");
    if (!j.contains("synonym_edges") || !j["synonym_edges"].is_array()) corrupt("synonym_edges array missing");
    for (const auto& e : j["syntactic_edges"]) {
        auto [a, b] = edge(e, "syntactic");
        const auto k = e.value("count", std::size_t{1});
        if (k == 0) corrupt("syntactic edge with zero multiplicity");
        if (net.has_edge(Layer::syntactic, a, b)) corrupt("duplicate syntactic edge (" + a + ", " + b + ")");
        net.add_edge(Layer::syntactic, a, b, k);
    }
    for (const auto& e : j["synonym_edges"]) {
        auto [a, b] = edge(e, "synonym");
        net.add_edge(Layer::synonym, a, b);
    }
    check(net);
    return net;
}

inline MultiplexLexicalNetwork read_network_json(const std::string& path)
{
    auto in = text::open_input(path);
    json j;
    try {
        j = json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("corrupt_network", "network file '" + path + "' is not valid JSON: " + e.what());
    }
    return network_from_json(j);
}

// --- GraphML --------------------------------------------------------------

namespace graphml_detail {

inline std::string escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
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

inline std::string unescape(std::string_view s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '&') {
            out += s[i];
            continue;
        }
        const auto semi = s.find(';', i);
        if (semi == std::string_view::npos) throw Error("corrupt_network", "GraphML: bad entity");
        const auto ent = s.substr(i + 1, semi - i - 1);
        if (ent == "amp") out += '&';
        else if (ent == "lt") out += '<';
        else if (ent == "gt") out += '>';
        else if (ent == "quot") out += '"';
        else if (ent == "apos") out += '\'';
        else throw Error("corrupt_network", "GraphML: unknown entity '" + std::string(ent) + "'");
        i = semi;
    }
    return out;
}

inline std::string number(double v)
{
    return json(v).dump();
}

// Value of attribute `name` in an element's opening tag.
inline std::optional<std::string> attribute(std::string_view tag, std::string_view name)
{
    const std::string key = " " + std::string(name) + "=\"";
    const auto p = tag.find(key);
    if (p == std::string_view::npos) return std::nullopt;
    const auto start = p + key.size();
    const auto end = tag.find('"', start);
    if (end == std::string_view::npos) return std::nullopt;
    return unescape(tag.substr(start, end - start));
}

}  // namespace graphml_detail

/// GraphML with a `layer` attribute on edges, valence/emotion attributes on
/// nodes and the edge drawing class. Parallel edges of the two layers are
/// kept as separate edge elements.
inline std::string to_graphml(const MultiplexLexicalNetwork& net)
{
    using graphml_detail::escape;
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    o << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
    o << "  <key id=\"valence\" for=\"node\" attr.name=\"valence\" attr.type=\"string\"/>\n";
    o << "  <key id=\"valence_score\" for=\"node\" attr.name=\"valence_score\" attr.type=\"double\"/>\n";
    o << "  <key id=\"emotions\" for=\"node\" attr.name=\"emotions\" attr.type=\"string\"/>\n";
    o << "  <key id=\"negation\" for=\"node\" attr.name=\"negation\" attr.type=\"boolean\"/>\n";
    o << "  <key id=\"occurrences\" for=\"node\" attr.name=\"occurrences\" attr.type=\"int\"/>\n";
    o << "  <key id=\"layer\" for=\"edge\" attr.name=\"layer\" attr.type=\"string\"/>\n";
    o << "  <key id=\"count\" for=\"edge\" attr.name=\"count\" attr.type=\"int\"/>\n";
    o << "  <key id=\"edge_class\" for=\"edge\" attr.name=\"edge_class\" attr.type=\"string\"/>\n";
    o << "  <graph id=\"" << escape(net.provenance().corpus_id) << "\" edgedefault=\"undirected\" config_hash=\""
      << escape(net.provenance().config_hash) << "\">\n";
    for (const auto& [st, c] : net.nodes()) {
        o << "    <node id=\"" << escape(st) << "\">\n";
        o << "      <data key=\"label\">" << escape(c.label) << "</data>\n";
        o << "      <data key=\"valence\">" << to_string(c.valence_label) << "</data>\n";
        if (c.valence_score) o << "      <data key=\"valence_score\">" << graphml_detail::number(*c.valence_score) << "</data>\n";
        std::string em;
        for (auto e : c.emotions.members()) em += (em.empty() ? "" : " ") + std::string(to_string(e));
        o << "      <data key=\"emotions\">" << em << "</data>\n";
        o << "      <data key=\"negation\">" << (c.is_negation_marker ? "true" : "false") << "</data>\n";
        o << "      <data key=\"occurrences\">" << c.occurrences << "</data>\n";
        o << "    </node>\n";
    }
    for (const auto& [e, k] : net.syntactic_edges()) {
        o << "    <edge source=\"" << escape(e.first) << "\" target=\"" << escape(e.second) << "\">\n";
        o << "      <data key=\"layer\">syntactic</data>\n";
        o << "      <data key=\"count\">" << k << "</data>\n";
        o << "      <data key=\"edge_class\">" << edge_class(net, Layer::syntactic, e) << "</data>\n";
        o << "    </edge>\n";
    }
    for (const auto& e : net.synonym_edges()) {
        o << "    <edge source=\"" << escape(e.first) << "\" target=\"" << escape(e.second) << "\">\n";
        o << "      <data key=\"layer\">synonym</data>\n";
        o << "      <data key=\"edge_class\">synonym</data>\n";
        o << "    </edge>\n";
    }
    o << "  </graph>\n</graphml>\n";
    return o.str();
}

/// Reads GraphML as written by to_graphml (one element per line).
inline MultiplexLexicalNetwork network_from_graphml(std::istream& in)
{
    using namespace graphml_detail;
    using serialize_detail::corrupt;
    MultiplexLexicalNetwork net;
    std::optional<Concept> node;
    struct PendingEdge {
        std::string a, b, layer;
        std::size_t count = 1;
    };
    std::optional<PendingEdge> edge;
    std::vector<PendingEdge> edges;
    std::string line;
    while (std::getline(in, line)) {
        const auto t = std::string(text::trim(line));
        if (t.starts_with("<graph ")) {
            net.provenance().corpus_id = attribute(t, "id").value_or("");
            net.provenance().config_hash = attribute(t, "config_hash").value_or("");
        } else if (t.starts_with("<node ")) {
            node.emplace();
            node->stem = attribute(t, "id").value_or("");
            if (node->stem.empty()) corrupt("GraphML node without id");
        } else if (t == "</node>") {
            if (!node) corrupt("GraphML: stray </node>");
            if (net.has_node(node->stem)) corrupt("duplicate node '" + node->stem + "'");
            net.add_node(std::move(*node));
            node.reset();
        } else if (t.starts_with("<edge ")) {
            edge.emplace();
            edge->a = attribute(t, "source").value_or("");
            edge->b = attribute(t, "target").value_or("");
        } else if (t == "</edge>") {
            if (!edge) corrupt("GraphML: stray </edge>");
            edges.push_back(std::move(*edge));
            edge.reset();
        } else if (t.starts_with("<data ")) {
            const auto key = attribute(t, "key").value_or("");
            const auto gt = t.find('>');
            const auto lt = t.rfind("</data>");
            if (gt == std::string::npos || lt == std::string::npos || lt < gt) corrupt("GraphML: malformed data element");
            const auto value = unescape(std::string_view(t).substr(gt + 1, lt - gt - 1));
            try {
                if (node) {
                    if (key == "label") node->label = value;
                    else if (key == "valence") {
                        auto vl = parse_valence_label(value);
                        if (!vl) corrupt("unknown valence label '" + value + "'");
                        node->valence_label = *vl;
                    } else if (key == "valence_score") node->valence_score = std::stod(value);
                    else if (key == "emotions") {
                        for (const auto& w : text::split_whitespace(value)) {
                            auto e = parse_emotion(w);
                            if (!e) corrupt("unknown emotion '" + w + "'");
                            node->emotions.insert(*e);
                        }
                    } else if (key == "negation") node->is_negation_marker = value == "true";
                    else if (key == "occurrences") node->occurrences = std::stoull(value);
                } else if (edge) {
                    if (key == "layer") edge->layer = value;
                    else if (key == "count") edge->count = std::stoull(value);
                }
            } catch (const std::logic_error&) {
                corrupt("GraphML: bad numeric value '" + value + "'");
            }
        }
    }
    for (const auto& e : edges) {
        if (e.a == e.b) corrupt(e.layer + " self-loop on '" + e.a + "'");
        if (!net.has_node(e.a) || !net.has_node(e.b))
            corrupt(e.layer + " edge (" + e.a + ", " + e.b + ") has an endpoint outside the node set");
        if (e.layer == "syntactic") net.add_edge(Layer::syntactic, e.a, e.b, e.count);
        else if (e.layer == "synonym") net.add_edge(Layer::synonym, e.a, e.b);
        else corrupt("edge with unknown layer '" + e.layer + "'");
    }
    serialize_detail::check(net);
    return net;
}

inline MultiplexLexicalNetwork network_from_graphml(const std::string& s)
{
    std::istringstream in(s);
    return network_from_graphml(in);
}

// --- reports --------------------------------------------------------------

inline std::string csv_number(double v) { return json(v).dump(); }

inline std::string centrality_csv(const std::vector<CentralityEntry>& rows)
{
    std::string out = "stem,closeness,degree,component_size\n";
    for (const auto& r : rows)
        out += r.stem + "," + (r.closeness ? csv_number(*r.closeness) : std::string()) + "," +
               std::to_string(r.degree) + "," + std::to_string(r.component_size) + "\n";
    return out;
}

inline json to_json(const AuraReport& r)
{
    return {{"target", r.target},
            {"aura", r.aura},
            {"counts", {{"positive", r.positive}, {"neutral", r.neutral}, {"negative", r.negative}}},
            {"unrated", r.unrated},
            {"fractions",
             {{"positive", r.positive_fraction}, {"neutral", r.neutral_fraction}, {"negative", r.negative_fraction}}}};
}

inline std::string aura_csv(const std::vector<AuraReport>& rows)
{
    std::string out = "target,aura,positive,neutral,negative,unrated,positive_fraction,neutral_fraction,negative_fraction\n";
    for (const auto& r : rows)
        out += r.target + "," + r.aura + "," + std::to_string(r.positive) + "," + std::to_string(r.neutral) + "," +
               std::to_string(r.negative) + "," + std::to_string(r.unrated) + "," + csv_number(r.positive_fraction) +
               "," + csv_number(r.neutral_fraction) + "," + csv_number(r.negative_fraction) + "\n";
    return out;
}

inline json to_json(const EmotionalProfile& p)
{
    json counts = json::object();
    json fractions = json::object();
    for (auto e : kAllEmotions) {
        counts[std::string(to_string(e))] = p.count(e);
        if (p.fractions) fractions[std::string(to_string(e))] = (*p.fractions)[static_cast<std::size_t>(e)];
    }
    json contrib = json::array();
    for (const auto& c : p.contributions)
        contrib.push_back({{"associate", c.associate}, {"source", c.source}, {"negated", c.negated},
                           {"emotions", emotions_json(c.emotions)}});
    return {{"target", p.target},
            {"associates", p.associates},
            {"negated_associates", p.negated_associates},
            {"counts", counts},
            {"fractions", fractions},
            {"contributions", contrib},
            {"missing_antonyms", p.missing_antonyms}};
}

inline std::string profile_csv(const std::vector<EmotionalProfile>& rows)
{
    std::string out = "target,emotion,count,fraction\n";
    for (const auto& p : rows)
        for (auto e : kAllEmotions)
            out += p.target + "," + std::string(to_string(e)) + "," + std::to_string(p.count(e)) + "," +
                   (p.fractions ? csv_number((*p.fractions)[static_cast<std::size_t>(e)]) : std::string()) + "\n";
    return out;
}

/// Bar-chart data: emotion -> fraction, in the fixed emotion order.
inline json chart_data(const EmotionalProfile& p)
{
    json bars = json::array();
    for (auto e : kAllEmotions)
        bars.push_back({{"emotion", std::string(to_string(e))},
                        {"count", p.count(e)},
                        {"fraction", p.fractions ? json((*p.fractions)[static_cast<std::size_t>(e)]) : json(nullptr)}});
    return {{"chart", "emotional_profile"}, {"target", p.target}, {"bars", bars}};
}

inline json to_json(const MannWhitneyResult& r)
{
    return {{"U", r.u}, {"p_value", r.p_value}, {"z", r.z}, {"n1", r.n1}, {"n2", r.n2},
            {"median1", r.median1}, {"median2", r.median2}};
}

inline json to_json(const BenchmarkReport& r)
{
    json topics = json::array();
    for (const auto& t : r.topics) {
        json tj = {{"topic", t.topic},
                   {"stems", t.measured},
                   {"empirical_distances", t.empirical},
                   {"null_median", t.null_distances.empty() ? json(nullptr) : json(median(t.null_distances))},
                   {"null_count", t.null_distances.size()},
                   {"absent", t.absent},
                   {"unreachable", t.unreachable},
                   {"self", t.self}};
        if (t.test) tj["test"] = to_json(*t.test);
        topics.push_back(std::move(tj));
    }
    return {{"randomized_network", r.randomized_network},
            {"n_realizations", r.n_realizations},
            {"seed", r.seed},
            {"realization_seeds", r.realization_seeds},
            {"skipped_topics", r.skipped_topics},
            {"empirical_median", median(r.empirical)},
            {"null_median", median(r.null_distances)},
            {"n_empirical", r.empirical.size()},
            {"n_null", r.null_distances.size()},
            {"mann_whitney", to_json(r.test)},
            {"topics", topics}};
}

inline json to_json(const ClusteringNull& r)
{
    return {{"empirical_mean_clustering", r.empirical},
            {"ensemble_mean", r.ensemble_mean},
            {"ensemble_sd", r.ensemble_sd},
            {"z", std::isfinite(r.z()) ? json(r.z()) : json(nullptr)},
            {"n_realizations", r.ensemble.size()},
            {"ensemble", r.ensemble}};
}

inline json to_json(const CommunityPartition& p)
{
    std::map<int, std::vector<std::string>> groups;
    for (const auto& [s, c] : p.community) groups[c].push_back(s);
    json comms = json::array();
    for (const auto& [c, ss] : groups) comms.push_back({{"id", c}, {"size", ss.size()}, {"members", ss}});
    return {{"seed", p.seed}, {"modularity", p.modularity}, {"communities", comms}};
}

inline json to_json(const BuildSummary& s)
{
    return {{"sentences", s.sentences},
            {"invalid_sentences", s.invalid_sentences},
            {"sentences_without_edges", s.sentences_without_edges},
            {"unstemmable_tokens", s.unstemmable_tokens},
            {"nodes", s.nodes},
            {"syntactic_edges", s.syntactic_edges},
            {"synonym_edges", s.synonym_edges},
            {"valence", {{"positive", s.positive}, {"negative", s.negative}, {"neutral", s.neutral}, {"unrated", s.unrated}}}};
}

inline void write_file(const std::string& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io_error", "cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("io_error", "write failed for '" + path + "'");
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace tfmn
