#pragma once

// Configuration-model ensembles, the Mann-Whitney U test and the
// free-association topic-relevance benchmark.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tfmn/error.hpp"
#include "tfmn/lexicons.hpp"
#include "tfmn/metrics.hpp"
#include "tfmn/network.hpp"
#include "tfmn/numeric.hpp"
#include "tfmn/parallel.hpp"
#include "tfmn/porter.hpp"
#include "tfmn/text.hpp"

namespace tfmn {

// --- configuration model --------------------------------------------------

struct RewireStats {
    std::size_t edges = 0;
    std::size_t swaps = 0;     // accepted swaps
    std::size_t attempts = 0;
    bool skipped = false;      // fewer than two edges
};

/// Degree-preserving double-edge swaps on a simple graph. Swaps that would
/// create a self-loop or a duplicate edge are rejected and retried, up to
/// 100 attempts per requested swap.
inline std::set<StemPair> rewire_edges(const std::set<StemPair>& edges, std::mt19937_64& rng,
                                       int swaps_per_edge = 10, RewireStats* stats = nullptr)
{
    RewireStats local;
    RewireStats& st = stats ? *stats : local;
    st = {};
    st.edges = edges.size();
    if (edges.size() < 2) {
        st.skipped = true;
        return edges;
    }
    std::vector<StemPair> list(edges.begin(), edges.end());
    std::set<StemPair> present = edges;
    const auto target = static_cast<std::size_t>(std::max(0, swaps_per_edge)) * list.size();
    const auto max_attempts = 100 * target;
    while (st.swaps < target && st.attempts < max_attempts) {
        ++st.attempts;
        const auto i = static_cast<std::size_t>(uniform_index(rng, list.size()));
        const auto j = static_cast<std::size_t>(uniform_index(rng, list.size()));
        if (i == j) continue;
        const auto& [a, b] = list[i];
        auto c = list[j].first;
        auto d = list[j].second;
        if (uniform_index(rng, 2) == 1) std::swap(c, d);
        // (a,b),(c,d) -> (a,d),(c,b)
        if (a == d || c == b) continue;
        auto e1 = make_pair_key(a, d);
        auto e2 = make_pair_key(c, b);
        if (present.count(e1) || present.count(e2)) continue;
        present.erase(list[i]);
        present.erase(list[j]);
        present.insert(e1);
        present.insert(e2);
        list[i] = std::move(e1);
        list[j] = std::move(e2);
        ++st.swaps;
    }
    return present;
}

struct LayerRewire {
    RewireStats syntactic;
    RewireStats synonym;
    std::vector<std::string> warnings;
};

/// Rewires each layer independently. Rewired syntactic edges carry
/// multiplicity 1 since every analysis uses the simple graph.
inline MultiplexLexicalNetwork configuration_rewire(const MultiplexLexicalNetwork& net, std::uint64_t seed,
                                                    int swaps_per_edge = 10, LayerRewire* info = nullptr)
{
    LayerRewire local;
    LayerRewire& inf = info ? *info : local;
    inf = {};
    MultiplexLexicalNetwork out;
    for (const auto& [st, c] : net.nodes()) out.add_node(c);
    out.provenance() = net.provenance();
    std::mt19937_64 syn_rng(derive_seed(seed, 1));
    std::mt19937_64 sem_rng(derive_seed(seed, 2));
    for (const auto& e : rewire_edges(net.edge_set(Layer::syntactic), syn_rng, swaps_per_edge, &inf.syntactic))
        out.add_edge(Layer::syntactic, e.first, e.second);
    for (const auto& e : rewire_edges(net.synonym_edges(), sem_rng, swaps_per_edge, &inf.synonym))
        out.add_edge(Layer::synonym, e.first, e.second);
    if (inf.syntactic.skipped) inf.warnings.push_back("syntactic layer has fewer than 2 edges; left unchanged");
    if (inf.synonym.skipped) inf.warnings.push_back("synonym layer has fewer than 2 edges; left unchanged");
    return out;
}

inline GraphView configuration_rewire(const GraphView& g, std::uint64_t seed, int swaps_per_edge = 10,
                                      RewireStats* stats = nullptr)
{
    std::mt19937_64 rng(seed);
    return GraphView(g.names(), rewire_edges(g.edges(), rng, swaps_per_edge, stats));
}

/// Degree of every node, in the given node order.
inline std::vector<std::size_t> degree_sequence(const std::set<StemPair>& edges, const std::vector<std::string>& nodes)
{
    std::map<std::string, std::size_t> deg;
    for (const auto& [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    std::vector<std::size_t> out;
    out.reserve(nodes.size());
    for (const auto& n : nodes) out.push_back(deg.count(n) ? deg[n] : 0);
    return out;
}

// --- Mann-Whitney U -------------------------------------------------------

struct MannWhitneyResult {
    double u = 0.0;  // statistic of the first sample
    double p_value = 1.0;
    double z = 0.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    double median1 = 0.0;
    double median2 = 0.0;
};

/// U from midrank sums; two-sided p from the normal approximation with tie
/// and continuity corrections.
inline MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.empty() || b.empty()) throw Error("invalid_argument", "Mann-Whitney test needs two nonempty samples");
    struct Obs {
        double v;
        bool first;
    };
    std::vector<Obs> all;
    all.reserve(a.size() + b.size());
    for (double v : a) all.push_back({v, true});
    for (double v : b) all.push_back({v, false});
    std::sort(all.begin(), all.end(), [](const Obs& x, const Obs& y) { return x.v < y.v; });

    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    const double n = n1 + n2;
    double rank_sum = 0.0;
    double tie_term = 0.0;
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        while (j < all.size() && all[j].v == all[i].v) ++j;
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            if (all[k].first) rank_sum += midrank;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    MannWhitneyResult r;
    r.n1 = a.size();
    r.n2 = b.size();
    r.u = rank_sum - n1 * (n1 + 1.0) / 2.0;
    r.median1 = median(a);
    r.median2 = median(b);

    const double mu = n1 * n2 / 2.0;
    const double var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (!(var > 0.0)) {
        r.p_value = 1.0;
        return r;
    }
    const double sigma = std::sqrt(var);
    r.z = (std::abs(r.u - mu) - 0.5) / sigma;
    const double p = std::erfc(std::max(r.z, 0.0) / std::sqrt(2.0));
    r.p_value = std::clamp(p, std::numeric_limits<double>::min(), 1.0);
    if (r.u < mu) r.z = -r.z;
    return r;
}

// --- free-association benchmark -------------------------------------------

struct FreeAssociationNetwork {
    GraphView graph;
    std::set<std::string> cues;  // stems appearing in the first column
    LoadReport report;
};

/// Undirected stem graph from `cue<TAB>response` rows, stemmed at load;
/// self-pairs and duplicate rows collapse.
inline FreeAssociationNetwork load_free_associations(std::istream& in)
{
    FreeAssociationNetwork fa;
    std::set<StemPair> edges;
    std::set<std::string> nodes;
    std::vector<std::string> bad;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        text::strip_cr(line);
        if (text::trim(line).empty() || line.front() == '#') continue;
        ++fa.report.rows;
        const auto f = text::split(line, '\t');
        if (f.size() != 2) {
            bad.push_back("row " + std::to_string(line_no) + ": expected 2 tab-separated fields");
            continue;
        }
        const auto a = text::lower(text::trim(f[0]));
        const auto b = text::lower(text::trim(f[1]));
        if (!is_alphabetic(a) || !is_alphabetic(b)) {
            bad.push_back("row " + std::to_string(line_no) + ": non-alphabetic word");
            continue;
        }
        const auto sa = stem(a);
        const auto sb = stem(b);
        fa.cues.insert(sa);
        nodes.insert(sa);
        nodes.insert(sb);
        if (sa == sb) {
            ++fa.report.ignored;
            continue;
        }
        edges.insert(make_pair_key(sa, sb));
    }
    if (!bad.empty()) throw Error("load_failure", "free associations: malformed rows", bad);
    if (edges.empty()) throw Error("load_failure", "free associations: no edges");
    fa.graph = GraphView(std::vector<std::string>(nodes.begin(), nodes.end()), edges);
    return fa;
}

inline FreeAssociationNetwork load_free_associations(const std::string& path)
{
    auto in = text::open_input(path);
    return load_free_associations(in);
}

struct BenchmarkOptions {
    int n_realizations = 50;
    std::uint64_t seed = 1;
    int swaps_per_edge = 10;
    bool per_topic_tests = false;
};

struct TopicDistances {
    std::string topic;
    std::vector<std::string> measured;   // ranked stems with a defined distance
    std::vector<double> empirical;       // parallel to `measured`
    std::vector<double> null_distances;  // pooled over realizations
    std::size_t absent = 0;              // ranked stems missing from the oracle
    std::size_t unreachable = 0;         // present but in another component
    std::size_t self = 0;                // the topic stem itself
    std::optional<MannWhitneyResult> test;
};

struct BenchmarkReport {
    std::string randomized_network = "free_association_oracle";
    std::vector<TopicDistances> topics;
    std::vector<std::string> skipped_topics;
    std::vector<double> empirical;  // pooled, sorted
    std::vector<double> null_distances;
    MannWhitneyResult test;
    int n_realizations = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> realization_seeds;
};

namespace bench_detail {

// Distances from `topic` to each stem of `stems` that is reachable.
inline void measure(const GraphView& g, const std::string& topic, const std::vector<std::string>& stems,
                    std::vector<double>& out, TopicDistances* record)
{
    const auto ti = g.index(topic);
    const auto dist = bfs_distances(g, *ti);
    for (const auto& s : stems) {
        if (s == topic) {
            if (record) ++record->self;
            continue;
        }
        const auto si = g.index(s);
        if (!si) {
            if (record) ++record->absent;
            continue;
        }
        if (dist[*si] < 0) {
            if (record) ++record->unreachable;
            continue;
        }
        out.push_back(static_cast<double>(dist[*si]));
        if (record) record->measured.push_back(s);
    }
}

}  // namespace bench_detail

/// Oracle distances between each topic and its ranked stems, against the same
/// distances on configuration rewires of the oracle. The pooled samples are
/// compared with a Mann-Whitney test.
inline BenchmarkReport benchmark_topic_relevance(const std::map<std::string, std::vector<std::string>>& rankings,
                                                 const FreeAssociationNetwork& oracle, const BenchmarkOptions& opt)
{
    if (opt.n_realizations < 2) throw Error("invalid_argument", "benchmark needs at least 2 realizations");
    BenchmarkReport rep;
    rep.n_realizations = opt.n_realizations;
    rep.seed = opt.seed;
    const auto& g = oracle.graph;

    std::vector<std::pair<std::string, const std::vector<std::string>*>> active;
    for (const auto& [topic, stems] : rankings) {
        if (!g.index(topic)) {
            rep.skipped_topics.push_back(topic);
            continue;
        }
        TopicDistances td;
        td.topic = topic;
        bench_detail::measure(g, topic, stems, td.empirical, &td);
        rep.topics.push_back(std::move(td));
        active.emplace_back(topic, &stems);
    }
    if (active.empty()) throw Error("benchmark_error", "no topic is present in the oracle network");
    std::size_t measured = 0;
    for (const auto& t : rep.topics) measured += t.empirical.size();
    if (measured == 0) throw Error("benchmark_error", "no ranked stem has a distance to its topic in the oracle");

    const auto n_real = static_cast<std::size_t>(opt.n_realizations);
    for (std::size_t r = 0; r < n_real; ++r) rep.realization_seeds.push_back(derive_seed(opt.seed, r));
    // per_real[r][t]: distances for topic t on realization r
    std::vector<std::vector<std::vector<double>>> per_real(n_real, std::vector<std::vector<double>>(active.size()));
    parallel_for(n_real, [&](std::size_t r) {
        const auto rg = configuration_rewire(g, rep.realization_seeds[r], opt.swaps_per_edge);
        for (std::size_t t = 0; t < active.size(); ++t)
            bench_detail::measure(rg, active[t].first, *active[t].second, per_real[r][t], nullptr);
    });
    for (std::size_t t = 0; t < active.size(); ++t) {
        auto& td = rep.topics[t];
        for (std::size_t r = 0; r < n_real; ++r)
            td.null_distances.insert(td.null_distances.end(), per_real[r][t].begin(), per_real[r][t].end());
        rep.empirical.insert(rep.empirical.end(), td.empirical.begin(), td.empirical.end());
        rep.null_distances.insert(rep.null_distances.end(), td.null_distances.begin(), td.null_distances.end());
        if (opt.per_topic_tests && !td.empirical.empty() && !td.null_distances.empty())
            td.test = mann_whitney_u(td.empirical, td.null_distances);
    }
    std::sort(rep.empirical.begin(), rep.empirical.end());
    std::sort(rep.null_distances.begin(), rep.null_distances.end());
    if (rep.null_distances.empty()) throw Error("benchmark_error", "no distances measured on the null ensemble");
    rep.test = mann_whitney_u(rep.empirical, rep.null_distances);
    return rep;
}

// --- clustering null ------------------------------------------------------

struct ClusteringNull {
    double empirical = 0.0;
    double ensemble_mean = 0.0;
    double ensemble_sd = 0.0;
    std::vector<double> ensemble;
    std::vector<std::uint64_t> seeds;

    /// Distance of the empirical value from the ensemble mean in ensemble SDs.
    double z() const
    {
        if (ensemble_sd == 0.0)
            return empirical == ensemble_mean ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), empirical - ensemble_mean);
        return (empirical - ensemble_mean) / ensemble_sd;
    }
};

/// Mean aggregate clustering against layer-wise configuration rewires.
inline ClusteringNull clustering_null(const MultiplexLexicalNetwork& net, int n_realizations, std::uint64_t seed,
                                      int swaps_per_edge = 10)
{
    if (n_realizations < 2) throw Error("invalid_argument", "null test needs at least 2 realizations");
    ClusteringNull r;
    r.empirical = mean_clustering(net);
    const auto n = static_cast<std::size_t>(n_realizations);
    for (std::size_t i = 0; i < n; ++i) r.seeds.push_back(derive_seed(seed, i));
    r.ensemble.resize(n);
    parallel_for(n, [&](std::size_t i) {
        r.ensemble[i] = mean_clustering(configuration_rewire(net, r.seeds[i], swaps_per_edge));
    });
    r.ensemble_mean = mean(r.ensemble);
    r.ensemble_sd = stddev(r.ensemble);
    return r;
}

}  // namespace tfmn
