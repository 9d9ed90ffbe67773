#pragma once

// Neighbourhood affect analyses: valence auras, emotional profiles,
// Louvain communities and neighbourhood subgraphs.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tfmn/emotion.hpp"
#include "tfmn/error.hpp"
#include "tfmn/lexicons.hpp"
#include "tfmn/metrics.hpp"
#include "tfmn/network.hpp"
#include "tfmn/numeric.hpp"

namespace tfmn {

/// Distinct neighbours of `stem` in the chosen view.
inline std::set<std::string> neighbors(const MultiplexLexicalNetwork& net, const std::string& stem,
                                       LayerMode mode = LayerMode::aggregate)
{
    if (!net.has_node(stem)) throw Error("unknown_node", "no concept '" + stem + "' in network");
    std::set<std::string> out;
    const auto visit = [&](const StemPair& e) {
        if (e.first == stem) out.insert(e.second);
        else if (e.second == stem) out.insert(e.first);
    };
    if (mode != LayerMode::synonym_only)
        for (const auto& [e, k] : net.syntactic_edges()) visit(e);
    if (mode != LayerMode::syntactic_only)
        for (const auto& e : net.synonym_edges()) visit(e);
    return out;
}

// --- valence aura ---------------------------------------------------------

struct AuraReport {
    std::string target;
    std::size_t positive = 0;
    std::size_t neutral = 0;
    std::size_t negative = 0;
    std::size_t unrated = 0;
    // Fractions over rated neighbours only; all zero when none is rated.
    double positive_fraction = 0.0;
    double neutral_fraction = 0.0;
    double negative_fraction = 0.0;
    std::string aura;  // positive, neutral, negative, mixed or undetermined

    std::size_t rated() const { return positive + neutral + negative; }
};

inline AuraReport valence_aura(const MultiplexLexicalNetwork& net, const std::string& target)
{
    const auto nb = neighbors(net, target);
    if (nb.empty()) throw Error("isolated_node", "concept '" + target + "' has no neighbours");
    AuraReport r;
    r.target = target;
    for (const auto& w : nb) {
        switch (net.node(w).valence_label) {
        case ValenceLabel::positive: ++r.positive; break;
        case ValenceLabel::neutral: ++r.neutral; break;
        case ValenceLabel::negative: ++r.negative; break;
        case ValenceLabel::unrated: ++r.unrated; break;
        }
    }
    const auto rated = r.rated();
    if (rated == 0) {
        r.aura = "undetermined";
        return r;
    }
    const auto d = static_cast<double>(rated);
    r.positive_fraction = static_cast<double>(r.positive) / d;
    r.neutral_fraction = static_cast<double>(r.neutral) / d;
    r.negative_fraction = static_cast<double>(r.negative) / d;
    const std::size_t top = std::max({r.positive, r.neutral, r.negative});
    const int winners = (r.positive == top) + (r.neutral == top) + (r.negative == top);
    if (winners > 1) r.aura = "mixed";
    else if (r.positive == top) r.aura = "positive";
    else if (r.negative == top) r.aura = "negative";
    else r.aura = "neutral";
    return r;
}

// --- emotional profile ----------------------------------------------------

struct ProfileContribution {
    std::string associate;  // the neighbour of the target
    std::string source;     // stem whose emotions were counted
    bool negated = false;   // source is the antonym of a negated associate
    EmotionSet emotions;
};

struct EmotionalProfile {
    std::string target;
    std::array<std::size_t, kEmotionCount> counts{};
    // Empty when no associate carries an emotion.
    std::optional<std::array<double, kEmotionCount>> fractions;
    std::vector<ProfileContribution> contributions;
    std::size_t associates = 0;
    std::size_t negated_associates = 0;
    std::vector<std::string> missing_antonyms;

    std::size_t count(Emotion e) const { return counts[static_cast<std::size_t>(e)]; }
    std::size_t total() const
    {
        std::size_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }
};

/// Associates are the distinct aggregate neighbours of the target other than
/// negation particles. An associate that shares a syntactic link with a
/// negation particle also contributes the emotions of its preferred antonym.
inline EmotionalProfile emotional_profile(const MultiplexLexicalNetwork& net, const std::string& target,
                                          const EmotionLexicon& emotions, const AntonymLexicon& antonyms)
{
    const auto nb = neighbors(net, target);
    EmotionalProfile p;
    p.target = target;
    const auto add = [&](const std::string& associate, const std::string& source, bool negated, EmotionSet es) {
        for (auto e : es.members()) ++p.counts[static_cast<std::size_t>(e)];
        p.contributions.push_back({associate, source, negated, es});
    };
    for (const auto& w : nb) {
        const auto& c = net.node(w);
        if (c.is_negation_marker) continue;
        ++p.associates;
        add(w, w, false, c.emotions);

        bool negated = false;
        for (const auto& x : neighbors(net, w, LayerMode::syntactic_only))
            if (net.node(x).is_negation_marker) negated = true;
        if (!negated) continue;
        ++p.negated_associates;
        if (auto ant = antonyms.preferred(w)) add(w, *ant, true, emotions.emotions(*ant));
        else p.missing_antonyms.push_back(w);
    }
    if (const auto total = p.total(); total > 0) {
        std::array<double, kEmotionCount> f{};
        for (std::size_t i = 0; i < kEmotionCount; ++i)
            f[i] = static_cast<double>(p.counts[i]) / static_cast<double>(total);
        p.fractions = f;
    }
    return p;
}

// --- Louvain --------------------------------------------------------------

struct CommunityPartition {
    std::map<std::string, int> community;  // ids 0.. in order of first member stem
    double modularity = 0.0;
    std::uint64_t seed = 0;

    std::size_t count() const
    {
        std::set<int> ids;
        for (const auto& [s, c] : community) ids.insert(c);
        return ids.size();
    }

    std::set<std::string> members(int id) const
    {
        std::set<std::string> out;
        for (const auto& [s, c] : community)
            if (c == id) out.insert(s);
        return out;
    }
};

/// Newman-Girvan modularity (resolution 1) of a labelling of g's nodes.
inline double modularity(const GraphView& g, const std::vector<int>& labels)
{
    const double m = static_cast<double>(g.edge_count());
    if (m == 0.0) return 0.0;
    std::map<int, double> inside, total;
    for (std::size_t i = 0; i < g.size(); ++i) {
        total[labels[i]] += static_cast<double>(g.degree(i));
        for (auto j : g.neighbors(i))
            if (labels[j] == labels[i]) inside[labels[i]] += 1.0;  // counted from both ends
    }
    double q = 0.0;
    for (const auto& [c, tot] : total) q += inside[c] / (2.0 * m) - (tot / (2.0 * m)) * (tot / (2.0 * m));
    return q;
}

inline double modularity(const GraphView& g, const CommunityPartition& p)
{
    std::vector<int> labels(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto it = p.community.find(g.name(i));
        if (it == p.community.end()) throw Error("invalid_partition", "node '" + g.name(i) + "' has no community");
        labels[i] = it->second;
    }
    return modularity(g, labels);
}

namespace louvain_detail {

// Weighted graph for the aggregation levels; self-loop weight is stored once
// and counts twice towards the node's strength.
struct WGraph {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj;
    std::vector<double> self;
    std::vector<double> strength;
    double two_m = 0.0;
};

inline WGraph from_view(const GraphView& g)
{
    WGraph w;
    const auto n = g.size();
    w.adj.resize(n);
    w.self.assign(n, 0.0);
    w.strength.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto j : g.neighbors(i)) w.adj[i].emplace_back(j, 1.0);
        w.strength[i] = static_cast<double>(g.degree(i));
        w.two_m += w.strength[i];
    }
    return w;
}

// One local-moving phase. Returns true if any node changed community.
inline bool move_nodes(const WGraph& g, std::vector<std::size_t>& comm, std::mt19937_64& rng)
{
    const auto n = g.adj.size();
    std::vector<double> tot(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) tot[comm[i]] += g.strength[i];
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    shuffle(order, rng);

    bool moved_any = false;
    std::vector<double> link(n, 0.0);
    std::vector<std::size_t> touched;
    for (bool improved = true; improved;) {
        improved = false;
        for (auto i : order) {
            const auto own = comm[i];
            touched.clear();
            for (const auto& [j, wt] : g.adj[i]) {
                if (link[comm[j]] == 0.0) touched.push_back(comm[j]);
                link[comm[j]] += wt;
            }
            tot[own] -= g.strength[i];
            // Gain of joining community c, up to a constant: k_i,in(c) - tot_c k_i / 2m.
            const auto gain = [&](std::size_t c) { return link[c] - tot[c] * g.strength[i] / g.two_m; };
            std::size_t best = own;
            double best_gain = gain(own);
            std::sort(touched.begin(), touched.end());
            for (auto c : touched)
                if (gain(c) > best_gain + 1e-12) {
                    best = c;
                    best_gain = gain(c);
                }
            tot[best] += g.strength[i];
            for (auto c : touched) link[c] = 0.0;
            link[own] = 0.0;
            if (best != own) {
                comm[i] = best;
                improved = true;
                moved_any = true;
            }
        }
    }
    return moved_any;
}

inline void renumber(std::vector<std::size_t>& comm)
{
    std::map<std::size_t, std::size_t> ids;
    for (auto& c : comm) c = ids.emplace(c, ids.size()).first->second;
}

inline WGraph aggregate(const WGraph& g, const std::vector<std::size_t>& comm, std::size_t k)
{
    WGraph out;
    out.adj.resize(k);
    out.self.assign(k, 0.0);
    out.strength.assign(k, 0.0);
    out.two_m = g.two_m;
    std::vector<std::map<std::size_t, double>> w(k);
    for (std::size_t i = 0; i < g.adj.size(); ++i) {
        out.strength[comm[i]] += g.strength[i];
        out.self[comm[i]] += g.self[i];
        for (const auto& [j, wt] : g.adj[i]) {
            if (comm[i] == comm[j]) out.self[comm[i]] += wt / 2.0;  // each internal edge seen twice
            else w[comm[i]][comm[j]] += wt;
        }
    }
    for (std::size_t c = 0; c < k; ++c)
        for (const auto& [d, wt] : w[c]) out.adj[c].emplace_back(d, wt);
    return out;
}

}  // namespace louvain_detail

/// Louvain modularity optimisation at resolution 1. The seed fixes the node
/// visiting order at every level, so equal seeds give equal partitions.
inline CommunityPartition louvain_communities(const GraphView& view, std::uint64_t seed)
{
    using namespace louvain_detail;
    if (view.size() == 0) throw Error("empty_network", "cannot detect communities in an empty graph");
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> node_comm(view.size());
    for (std::size_t i = 0; i < view.size(); ++i) node_comm[i] = i;

    if (view.edge_count() > 0) {
        WGraph g = from_view(view);
        for (;;) {
            std::vector<std::size_t> comm(g.adj.size());
            for (std::size_t i = 0; i < comm.size(); ++i) comm[i] = i;
            if (!move_nodes(g, comm, rng)) break;
            renumber(comm);
            const auto k = 1 + *std::max_element(comm.begin(), comm.end());
            for (auto& c : node_comm) c = comm[c];
            if (k == g.adj.size()) break;
            g = aggregate(g, comm, k);
        }
    }

    // Final ids follow the smallest member stem (nodes are sorted).
    std::map<std::size_t, int> ids;
    CommunityPartition p;
    p.seed = seed;
    std::vector<int> labels(view.size());
    for (std::size_t i = 0; i < view.size(); ++i) {
        labels[i] = ids.emplace(node_comm[i], static_cast<int>(ids.size())).first->second;
        p.community[view.name(i)] = labels[i];
    }
    p.modularity = modularity(view, labels);
    return p;
}

inline CommunityPartition louvain_communities(const MultiplexLexicalNetwork& net, std::uint64_t seed)
{
    return louvain_communities(GraphView(net, LayerMode::aggregate), seed);
}

// --- neighbourhood subgraphs ----------------------------------------------

enum class NeighborhoodMode { neighbors, community };

inline NeighborhoodMode parse_neighborhood_mode(std::string_view s)
{
    if (s == "neighbors") return NeighborhoodMode::neighbors;
    if (s == "community") return NeighborhoodMode::community;
    throw Error("invalid_argument", "unknown neighbourhood mode '" + std::string(s) + "'");
}

inline MultiplexLexicalNetwork neighborhood_subgraph(const MultiplexLexicalNetwork& net, const std::string& target,
                                                     NeighborhoodMode mode,
                                                     const CommunityPartition* partition = nullptr)
{
    if (!net.has_node(target)) throw Error("unknown_node", "no concept '" + target + "' in network");
    std::set<std::string> keep;
    if (mode == NeighborhoodMode::neighbors) {
        keep = neighbors(net, target);
    } else {
        if (!partition) throw Error("missing_partition", "community mode needs a partition");
        auto it = partition->community.find(target);
        if (it == partition->community.end())
            throw Error("invalid_partition", "target '" + target + "' has no community");
        keep = partition->members(it->second);
    }
    keep.insert(target);
    return induced_subnetwork(net, keep);
}

/// Drawing class of an edge: synonym links are their own class; syntactic
/// links are positive or negative when both ends share that label, mixed when
/// they join a positive and a negative concept, neutral otherwise.
inline std::string edge_class(const MultiplexLexicalNetwork& net, Layer layer, const StemPair& e)
{
    if (layer == Layer::synonym) return "synonym";
    const auto a = net.node(e.first).valence_label;
    const auto b = net.node(e.second).valence_label;
    if (a == ValenceLabel::positive && b == ValenceLabel::positive) return "positive";
    if (a == ValenceLabel::negative && b == ValenceLabel::negative) return "negative";
    if ((a == ValenceLabel::positive && b == ValenceLabel::negative) ||
        (a == ValenceLabel::negative && b == ValenceLabel::positive))
        return "mixed";
    return "neutral";
}

struct ClassifiedEdge {
    std::string source;
    std::string target;
    Layer layer = Layer::syntactic;
    std::string edge_class;
};

inline std::vector<ClassifiedEdge> classify_edges(const MultiplexLexicalNetwork& net)
{
    std::vector<ClassifiedEdge> out;
    for (const auto& [e, k] : net.syntactic_edges())
        out.push_back({e.first, e.second, Layer::syntactic, edge_class(net, Layer::syntactic, e)});
    for (const auto& e : net.synonym_edges())
        out.push_back({e.first, e.second, Layer::synonym, edge_class(net, Layer::synonym, e)});
    return out;
}

}  // namespace tfmn
