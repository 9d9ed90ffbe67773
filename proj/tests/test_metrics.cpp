#include <random>

#include <gtest/gtest.h>

#include "fixture_graphs.hpp"
#include "tfmn/metrics.hpp"

using namespace tfmn;
using namespace fixtures;

namespace {

// Triangles through i counted over every pair of nodes.
double brute_local(int n, const std::vector<std::vector<bool>>& a, int i)
{
    int k = 0;
    for (int j = 0; j < n; ++j) k += a[i][j];
    if (k < 2) return 0.0;
    int tri = 0;
    for (int j = 0; j < n; ++j)
        for (int l = j + 1; l < n; ++l) tri += a[i][j] && a[i][l] && a[j][l];
    return tri / (k * (k - 1) / 2.0);
}

double brute_mean_clustering(int n, const Edges& edges)
{
    std::vector<std::vector<bool>> a(n, std::vector<bool>(n));
    for (const auto& [x, y] : edges) a[x[0] - 'a'][y[0] - 'a'] = a[y[0] - 'a'][x[0] - 'a'] = true;
    double s = 0;
    for (int i = 0; i < n; ++i) s += brute_local(n, a, i);
    return s / n;
}

// Floyd-Warshall distances, independent of the BFS in the library.
std::vector<std::vector<int>> floyd(int n, const Edges& edges)
{
    const int inf = 1 << 20;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (const auto& [x, y] : edges) d[x[0] - 'a'][y[0] - 'a'] = d[y[0] - 'a'][x[0] - 'a'] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (auto& row : d)
        for (auto& x : row)
            if (x >= inf) x = -1;
    return d;
}

}  // namespace

TEST(ShortestPaths, PathAndLayers)
{
    auto net = network({{"a", "b"}}, {{"b", "c"}});
    auto agg = shortest_paths(net, LayerMode::aggregate);
    EXPECT_EQ(agg.distance("a", "c"), 2);
    EXPECT_EQ(agg.distance("a", "a"), 0);
    auto syn = shortest_paths(net, "syntactic_only");
    EXPECT_FALSE(syn.distance("a", "c"));
    EXPECT_EQ(syn.distance("a", "b"), 1);
    auto sem = shortest_paths(net, "synonym_only");
    EXPECT_EQ(sem.distance("b", "c"), 1);
    EXPECT_THROW(shortest_paths(net, "both"), Error);
}

TEST(ShortestPaths, MatchFloydWarshallAndMetricAxioms)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const auto pairs = n * (n - 1) / 2;
        const auto edges = from_mask(n, rng() & ((1ULL << pairs) - 1));
        const auto g = view(letters(n), edges);
        const DistanceMatrix dm(g);
        const auto fw = floyd(n, edges);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                auto d = dm.distance(i, j);
                EXPECT_EQ(d.value_or(-1), fw[i][j]);
                EXPECT_EQ(d, dm.distance(j, i));
                EXPECT_EQ(d.has_value(), dm.component(i) == dm.component(j));
            }
    }
}

TEST(ShortestPaths, AggregateNeverLongerThanALayer)
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = from_mask(6, rng() & 0x7fff);
        const auto b = from_mask(6, rng() & 0x7fff);
        if (a.empty() || b.empty()) continue;
        // both layers over all six nodes
        Edges full_a = a, full_b = b;
        auto net = network(full_a, full_b);
        const auto agg = shortest_paths(net, LayerMode::aggregate);
        for (auto mode : {LayerMode::syntactic_only, LayerMode::synonym_only}) {
            const auto one = shortest_paths(net, mode);
            for (std::size_t i = 0; i < one.size(); ++i)
                for (std::size_t j = 0; j < one.size(); ++j)
                    if (auto d = one.distance(i, j)) {
                        EXPECT_LE(*agg.distance(i, j), *d);
                    }
        }
    }
}

TEST(Closeness, HandValues)
{
    const auto p3 = view(letters(3), path(3));
    EXPECT_DOUBLE_EQ(*closeness(p3, 1), 1.5);
    EXPECT_DOUBLE_EQ(*closeness(p3, 0), 1.0);
    const auto k4 = view(letters(4), complete(4));
    for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(*closeness(k4, i), 4.0 / 3.0);
    const auto edge = view(letters(2), path(2));
    EXPECT_DOUBLE_EQ(*closeness(edge, 0), 2.0);
    // star with 5 leaves: centre 6/5, leaf 6/(1 + 2*4)
    const auto s5 = view(letters(6), star(5));
    EXPECT_DOUBLE_EQ(*closeness(s5, 0), 6.0 / 5.0);
    EXPECT_DOUBLE_EQ(*closeness(s5, 3), 6.0 / 9.0);
    // path of 5: ends 5/10, next 5/7, middle 5/6
    const auto p5 = view(letters(5), path(5));
    EXPECT_DOUBLE_EQ(*closeness(p5, 0), 0.5);
    EXPECT_DOUBLE_EQ(*closeness(p5, 1), 5.0 / 7.0);
    EXPECT_DOUBLE_EQ(*closeness(p5, 2), 5.0 / 6.0);
}

TEST(Closeness, PerComponentAndIsolated)
{
    // a-b-c plus d-e: N is the component size
    const auto g = view(letters(6), {{"a", "b"}, {"b", "c"}, {"d", "e"}});
    EXPECT_DOUBLE_EQ(*closeness(g, 1), 1.5);
    EXPECT_DOUBLE_EQ(*closeness(g, 3), 2.0);
    EXPECT_FALSE(closeness(g, 5));
    auto net = network({{"a", "b"}});
    EXPECT_THROW(closeness(net, "zzz"), Error);
}

TEST(Closeness, ArgmaxIsArgminTotalDistanceAndRelabelInvariant)
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        auto edges = from_mask(n, rng() & ((1ULL << (n * (n - 1) / 2)) - 1));
        for (const auto& e : path(n)) edges.push_back(e);  // keep it connected
        const auto g = view(letters(n), edges);
        const auto fw = floyd(n, edges);
        double best_c = -1;
        int best_sum = 1 << 30;
        for (int i = 0; i < n; ++i) {
            int sum = 0;
            for (int j = 0; j < n; ++j) sum += fw[i][j];
            best_sum = std::min(best_sum, sum);
            best_c = std::max(best_c, *closeness(g, i));
        }
        EXPECT_DOUBLE_EQ(best_c, static_cast<double>(n) / best_sum);

        // relabel a..h -> permuted letters
        auto names = letters(n);
        auto perm = names;
        std::shuffle(perm.begin(), perm.end(), rng);
        Edges relabeled;
        for (const auto& [a, b] : edges) relabeled.emplace_back(perm[a[0] - 'a'], perm[b[0] - 'a']);
        const auto h = view(letters(n), relabeled);
        for (int i = 0; i < n; ++i) EXPECT_DOUBLE_EQ(*closeness(g, i), *closeness(h, *h.index(perm[i])));
    }
}

TEST(Ranking, StarCentreFirstAndLexicographicTies)
{
    const auto g = view(letters(5), star(4));
    auto r = rank_concepts(g, 3);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0].stem, "a");
    EXPECT_EQ(r[1].stem, "b");
    EXPECT_EQ(r[2].stem, "c");
    EXPECT_EQ(rank_concepts(g, 50).size(), 5u);
    EXPECT_THROW(rank_concepts(g, 0), Error);
}

TEST(Ranking, LargestComponentOnly)
{
    // the K2 "x-y" has higher closeness (2.0) but lies outside the largest component
    const auto g = view({"a", "b", "c", "x", "y"}, {{"a", "b"}, {"b", "c"}, {"x", "y"}});
    auto r = rank_concepts(g, 10);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0].stem, "b");
    EXPECT_EQ(r[1].stem, "a");
}

TEST(Ranking, EmptyNetworkRejected)
{
    EXPECT_THROW(rank_concepts(GraphView{}, 10), Error);
}

TEST(Clustering, HandValues)
{
    EXPECT_DOUBLE_EQ(mean_clustering(view(letters(3), complete(3))), 1.0);
    EXPECT_DOUBLE_EQ(mean_clustering(view(letters(3), path(3))), 0.0);
    const auto tp = view(letters(4), {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"c", "d"}});
    EXPECT_NEAR(mean_clustering(tp), (1 + 1 + 1.0 / 3 + 0) / 4, 1e-15);
    EXPECT_NEAR(mean_clustering(tp), 0.58333333333333337, 1e-15);
}

TEST(Clustering, ExhaustiveUpToFiveNodes)
{
    for (int n = 1; n <= 5; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (unsigned long long m = 0; m < (1ULL << pairs); ++m) {
            const auto e = from_mask(n, m);
            EXPECT_NEAR(mean_clustering(view(letters(n), e)), brute_mean_clustering(n, e), 1e-12);
        }
    }
}

TEST(Clustering, RandomGraphsSixToEightNodes)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 3000; ++trial) {
        const int n = 6 + static_cast<int>(rng() % 3);
        const auto e = from_mask(n, rng() & ((1ULL << (n * (n - 1) / 2)) - 1));
        const double c = mean_clustering(view(letters(n), e));
        EXPECT_NEAR(c, brute_mean_clustering(n, e), 1e-12);
        EXPECT_GE(c, 0.0);
        EXPECT_LE(c, 1.0);
    }
}

TEST(Centrality, ReportDegreesAndComponents)
{
    auto net = network({{"a", "b"}, {"b", "c"}}, {{"a", "b"}, {"c", "d"}});
    auto rep = centrality_report(net);
    ASSERT_EQ(rep.size(), 4u);
    EXPECT_EQ(rep[0].stem, "a");
    EXPECT_EQ(rep[0].degree, 1u);  // the two a-b links count once
    EXPECT_EQ(rep[1].degree, 2u);
    EXPECT_EQ(rep[3].component_size, 4u);
    for (const auto& r : rep) EXPECT_GT(*r.closeness, 0.0);
}

TEST(LayerMode, ParseAndPrint)
{
    for (auto m : {LayerMode::aggregate, LayerMode::syntactic_only, LayerMode::synonym_only})
        EXPECT_EQ(parse_layer_mode(to_string(m)), m);
    EXPECT_THROW(parse_layer_mode("multiplex"), Error);
}
