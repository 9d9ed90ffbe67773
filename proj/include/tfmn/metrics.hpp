#pragma once

// Distances, closeness, degree and clustering over a chosen layer view.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tfmn/error.hpp"
#include "tfmn/network.hpp"
#include "tfmn/parallel.hpp"

namespace tfmn {

enum class LayerMode { aggregate, syntactic_only, synonym_only };

inline constexpr std::string_view to_string(LayerMode m)
{
    switch (m) {
    case LayerMode::aggregate: return "aggregate";
    case LayerMode::syntactic_only: return "syntactic_only";
    case LayerMode::synonym_only: return "synonym_only";
    }
    return "aggregate";
}

inline LayerMode parse_layer_mode(std::string_view s)
{
    for (auto m : {LayerMode::aggregate, LayerMode::syntactic_only, LayerMode::synonym_only})
        if (to_string(m) == s) return m;
    throw Error("invalid_argument", "unknown layer mode '" + std::string(s) +
                                       "' (expected aggregate, syntactic_only or synonym_only)");
}

/// Simple undirected graph over the network's stems (sorted order), built
/// from one layer or from both.
class GraphView {
public:
    GraphView() = default;

    GraphView(const MultiplexLexicalNetwork& net, LayerMode mode)
    {
        std::vector<std::string> names;
        names.reserve(net.node_count());
        for (const auto& [st, c] : net.nodes()) names.push_back(st);
        std::set<StemPair> edges;
        switch (mode) {
        case LayerMode::aggregate: edges = net.aggregate_edges(); break;
        case LayerMode::syntactic_only: edges = net.edge_set(Layer::syntactic); break;
        case LayerMode::synonym_only: edges = net.edge_set(Layer::synonym); break;
        }
        *this = GraphView(std::move(names), edges);
    }

    GraphView(std::vector<std::string> names, const std::set<StemPair>& edges) : names_(std::move(names))
    {
        std::sort(names_.begin(), names_.end());
        names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
        adj_.resize(names_.size());
        for (const auto& [a, b] : edges) {
            const auto ia = index(a);
            const auto ib = index(b);
            if (!ia || !ib) throw Error("invalid_edge", "edge (" + a + ", " + b + ") references a missing node");
            if (*ia == *ib) continue;
            adj_[*ia].push_back(*ib);
            adj_[*ib].push_back(*ia);
        }
        for (auto& v : adj_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::size_t>& neighbors(std::size_t i) const { return adj_[i]; }
    std::size_t degree(std::size_t i) const { return adj_[i].size(); }

    std::optional<std::size_t> index(const std::string& stem) const
    {
        auto it = std::lower_bound(names_.begin(), names_.end(), stem);
        if (it == names_.end() || *it != stem) return std::nullopt;
        return static_cast<std::size_t>(it - names_.begin());
    }

    std::size_t edge_count() const
    {
        std::size_t twice = 0;
        for (const auto& v : adj_) twice += v.size();
        return twice / 2;
    }

    std::set<StemPair> edges() const
    {
        std::set<StemPair> out;
        for (std::size_t i = 0; i < adj_.size(); ++i)
            for (auto j : adj_[i])
                if (i < j) out.emplace(names_[i], names_[j]);
        return out;
    }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<std::size_t>> adj_;
};

/// Hop distances from `source`; -1 marks unreachable nodes.
inline std::vector<int> bfs_distances(const GraphView& g, std::size_t source)
{
    std::vector<int> dist(g.size(), -1);
    std::deque<std::size_t> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const auto x = queue.front();
        queue.pop_front();
        for (auto y : g.neighbors(x)) {
            if (dist[y] >= 0) continue;
            dist[y] = dist[x] + 1;
            queue.push_back(y);
        }
    }
    return dist;
}

/// Component id per node, ids numbered by smallest member index.
inline std::vector<std::size_t> connected_components(const GraphView& g)
{
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp(g.size(), unset);
    std::size_t next = 0;
    for (std::size_t s = 0; s < g.size(); ++s) {
        if (comp[s] != unset) continue;
        std::vector<std::size_t> stack{s};
        comp[s] = next;
        while (!stack.empty()) {
            const auto x = stack.back();
            stack.pop_back();
            for (auto y : g.neighbors(x))
                if (comp[y] == unset) {
                    comp[y] = next;
                    stack.push_back(y);
                }
        }
        ++next;
    }
    return comp;
}

/// Pairwise hop distances within connected components. Pairs in different
/// components have no distance.
class DistanceMatrix {
public:
    explicit DistanceMatrix(const GraphView& g) : names_(g.names()), component_(connected_components(g))
    {
        dist_.resize(g.size());
        parallel_for(g.size(), [&](std::size_t i) { dist_[i] = bfs_distances(g, i); });
        std::map<std::size_t, std::size_t> sizes;
        for (auto c : component_) ++sizes[c];
        component_size_.resize(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) component_size_[i] = sizes[component_[i]];
    }

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& nodes() const { return names_; }
    std::size_t component(std::size_t i) const { return component_[i]; }
    std::size_t component_size(std::size_t i) const { return component_size_[i]; }

    std::optional<int> distance(std::size_t i, std::size_t j) const
    {
        const int d = dist_[i][j];
        if (d < 0) return std::nullopt;
        return d;
    }

    std::optional<int> distance(const std::string& a, const std::string& b) const
    {
        const auto ia = index(a);
        const auto ib = index(b);
        if (!ia || !ib) throw Error("unknown_node", "distance query on unknown node");
        return distance(*ia, *ib);
    }

    std::optional<std::size_t> index(const std::string& stem) const
    {
        auto it = std::lower_bound(names_.begin(), names_.end(), stem);
        if (it == names_.end() || *it != stem) return std::nullopt;
        return static_cast<std::size_t>(it - names_.begin());
    }

private:
    std::vector<std::string> names_;
    std::vector<std::size_t> component_;
    std::vector<std::size_t> component_size_;
    std::vector<std::vector<int>> dist_;
};

inline DistanceMatrix shortest_paths(const MultiplexLexicalNetwork& net, LayerMode mode)
{
    return DistanceMatrix(GraphView(net, mode));
}

inline DistanceMatrix shortest_paths(const MultiplexLexicalNetwork& net, std::string_view mode)
{
    return shortest_paths(net, parse_layer_mode(mode));
}

/// c(i) = N / sum_j d_ij over the N nodes of i's component, d_ii = 0
/// included. Isolated nodes have no closeness.
inline std::optional<double> closeness(const GraphView& g, std::size_t i)
{
    const auto dist = bfs_distances(g, i);
    std::size_t n = 0;
    long long total = 0;
    for (int d : dist)
        if (d >= 0) {
            ++n;
            total += d;
        }
    if (n < 2) return std::nullopt;
    return static_cast<double>(n) / static_cast<double>(total);
}

inline std::optional<double> closeness(const MultiplexLexicalNetwork& net, const std::string& stem,
                                       LayerMode mode = LayerMode::aggregate)
{
    const GraphView g(net, mode);
    const auto i = g.index(stem);
    if (!i) throw Error("unknown_node", "no concept '" + stem + "' in network");
    return closeness(g, *i);
}

struct CentralityEntry {
    std::string stem;
    std::optional<double> closeness;
    std::size_t degree = 0;
    std::size_t component_size = 0;
};

inline std::vector<CentralityEntry> centrality_report(const GraphView& g)
{
    std::vector<CentralityEntry> out(g.size());
    const auto comp = connected_components(g);
    std::map<std::size_t, std::size_t> sizes;
    for (auto c : comp) ++sizes[c];
    parallel_for(g.size(), [&](std::size_t i) {
        out[i] = {g.name(i), closeness(g, i), g.degree(i), sizes.at(comp[i])};
    });
    return out;
}

inline std::vector<CentralityEntry> centrality_report(const MultiplexLexicalNetwork& net,
                                                      LayerMode mode = LayerMode::aggregate)
{
    return centrality_report(GraphView(net, mode));
}

/// Node indices of the largest component; ties go to the component holding
/// the lexicographically smallest stem.
inline std::vector<std::size_t> largest_component(const GraphView& g)
{
    const auto comp = connected_components(g);
    std::map<std::size_t, std::size_t> sizes;
    for (auto c : comp) ++sizes[c];
    std::size_t best = 0, best_size = 0;
    for (const auto& [c, s] : sizes)
        if (s > best_size) {
            best = c;
            best_size = s;
        }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (!sizes.empty() && comp[i] == best) out.push_back(i);
    return out;
}

struct RankedConcept {
    std::string stem;
    double closeness = 0.0;
};

/// Top-k of the largest component by descending closeness, ties broken by
/// stem.
inline std::vector<RankedConcept> rank_concepts(const GraphView& g, int top_k)
{
    if (top_k <= 0) throw Error("invalid_argument", "top_k must be positive");
    const auto lcc = largest_component(g);
    if (lcc.empty()) throw Error("empty_network", "network has no nodes to rank");
    std::vector<RankedConcept> ranked(lcc.size());
    parallel_for(lcc.size(), [&](std::size_t k) {
        const auto c = closeness(g, lcc[k]);
        ranked[k] = {g.name(lcc[k]), c.value_or(0.0)};
    });
    std::sort(ranked.begin(), ranked.end(), [](const RankedConcept& a, const RankedConcept& b) {
        if (a.closeness != b.closeness) return a.closeness > b.closeness;
        return a.stem < b.stem;
    });
    if (ranked.size() > static_cast<std::size_t>(top_k)) ranked.resize(static_cast<std::size_t>(top_k));
    return ranked;
}

inline std::vector<RankedConcept> rank_concepts(const MultiplexLexicalNetwork& net, int top_k,
                                                LayerMode mode = LayerMode::aggregate)
{
    return rank_concepts(GraphView(net, mode), top_k);
}

/// Local clustering: triangles through i over k(k-1)/2; 0 when k < 2.
inline double local_clustering(const GraphView& g, std::size_t i)
{
    const auto& nb = g.neighbors(i);
    const auto k = nb.size();
    if (k < 2) return 0.0;
    std::size_t links = 0;
    for (std::size_t a = 0; a < k; ++a) {
        const auto& na = g.neighbors(nb[a]);
        for (std::size_t b = a + 1; b < k; ++b)
            if (std::binary_search(na.begin(), na.end(), nb[b])) ++links;
    }
    return static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
}

inline double mean_clustering(const GraphView& g)
{
    if (g.size() == 0) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) total += local_clustering(g, i);
    return total / static_cast<double>(g.size());
}

inline double mean_clustering(const MultiplexLexicalNetwork& net)
{
    return mean_clustering(GraphView(net, LayerMode::aggregate));
}

}  // namespace tfmn
