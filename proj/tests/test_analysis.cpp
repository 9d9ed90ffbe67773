#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "fixture_graphs.hpp"
#include "tfmn/analysis.hpp"
#include "tfmn/lexicons.hpp"

using namespace tfmn;
using namespace fixtures;

namespace {

MultiplexLexicalNetwork labelled(const Edges& syntactic, const std::map<std::string, ValenceLabel>& labels,
                                 const Edges& synonym = {})
{
    auto net = network(syntactic, synonym);
    for (const auto& [s, l] : labels) {
        Concept c = net.node(s);
        c.valence_label = l;
        if (l != ValenceLabel::unrated) c.valence_score = 5.0;
        net.add_node(c);
    }
    return net;
}

void set_emotions(MultiplexLexicalNetwork& net, const std::string& s, EmotionSet es)
{
    Concept c = net.node(s);
    c.emotions = es;
    net.add_node(c);
}

void mark_negation(MultiplexLexicalNetwork& net, const std::string& s)
{
    Concept c = net.node(s);
    c.is_negation_marker = true;
    net.add_node(c);
}

// Modularity from its definition, summing over all ordered node pairs.
double modularity_oracle(const GraphView& g, const std::vector<int>& label)
{
    const double m = static_cast<double>(g.edge_count());
    if (m == 0) return 0.0;
    double q = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (label[i] != label[j]) continue;
            const auto& nb = g.neighbors(i);
            const double a = std::binary_search(nb.begin(), nb.end(), j) ? 1.0 : 0.0;
            q += a - static_cast<double>(g.degree(i) * g.degree(j)) / (2 * m);
        }
    return q / (2 * m);
}

// Best modularity over every set partition (restricted growth strings).
double best_modularity(const GraphView& g, std::vector<int>* best_labels = nullptr)
{
    const auto n = g.size();
    std::vector<int> label(n, 0);
    double best = -1;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
        if (i == n) {
            const double q = modularity_oracle(g, label);
            if (q > best + 1e-12) {
                best = q;
                if (best_labels) *best_labels = label;
            }
            return;
        }
        for (int c = 0; c <= used; ++c) {
            label[i] = c;
            rec(i + 1, std::max(used, c + 1));
        }
    };
    rec(0, 0);
    return best;
}

Edges two_cliques()
{
    Edges e;
    const char* a[] = {"a", "b", "c", "d"};
    const char* b[] = {"e", "f", "g", "h"};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            e.emplace_back(a[i], a[j]);
            e.emplace_back(b[i], b[j]);
        }
    e.emplace_back("d", "e");
    return e;
}

}  // namespace

TEST(Aura, ModeAndFractions)
{
    using enum ValenceLabel;
    auto net = labelled({{"t", "p1"}, {"t", "p2"}, {"t", "n1"}, {"t", "u1"}},
                        {{"p1", positive}, {"p2", positive}, {"n1", negative}});
    auto r = valence_aura(net, "t");
    EXPECT_EQ(r.aura, "positive");
    EXPECT_EQ(r.positive, 2u);
    EXPECT_EQ(r.negative, 1u);
    EXPECT_EQ(r.unrated, 1u);
    EXPECT_DOUBLE_EQ(r.positive_fraction, 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(r.neutral_fraction, 0.0);
    EXPECT_DOUBLE_EQ(r.negative_fraction, 1.0 / 3.0);
    EXPECT_NEAR(r.positive_fraction + r.neutral_fraction + r.negative_fraction, 1.0, 1e-9);
}

TEST(Aura, TieIsMixedAndUnratedIsUndetermined)
{
    using enum ValenceLabel;
    auto tie = labelled({{"t", "p"}, {"t", "n"}}, {{"p", positive}, {"n", negative}});
    EXPECT_EQ(valence_aura(tie, "t").aura, "mixed");
    auto none = labelled({{"t", "x"}}, {});
    EXPECT_EQ(valence_aura(none, "t").aura, "undetermined");
    EXPECT_THROW(valence_aura(none, "missing"), Error);
}

TEST(Aura, FortyPercentPositiveModeIsPositive)
{
    using enum ValenceLabel;
    // "stem" with 10 neighbours: 4 positive, 3 neutral, 3 negative
    Edges e;
    std::map<std::string, ValenceLabel> lab;
    for (int i = 0; i < 10; ++i) {
        const auto w = std::string("w") + static_cast<char>('a' + i);
        e.emplace_back("stem", w);
        lab[w] = i < 4 ? positive : i < 7 ? neutral : negative;
    }
    auto r = valence_aura(labelled(e, lab), "stem");
    EXPECT_DOUBLE_EQ(r.positive_fraction, 0.4);
    EXPECT_EQ(r.aura, "positive");
}

TEST(Aura, CountsDistinctNeighboursAcrossLayers)
{
    using enum ValenceLabel;
    auto net = labelled({{"t", "p"}}, {{"p", positive}, {"n", negative}}, {{"t", "p"}, {"t", "n"}});
    auto r = valence_aura(net, "t");
    EXPECT_EQ(r.positive, 1u);
    EXPECT_EQ(r.negative, 1u);
}

TEST(Profile, NegatedAssociateAddsAntonymOnce)
{
    // "appreciation" is linked to the target and to "not"; its antonym is "disgust"
    auto net = network({{"show", "appreci"}, {"appreci", "not"}, {"show", "not"}});
    mark_negation(net, "not");
    set_emotions(net, "appreci", {Emotion::joy, Emotion::trust});
    EmotionLexicon emo({{"appreci", {Emotion::joy, Emotion::trust}},
                        {"disgust", {Emotion::anger, Emotion::disgust, Emotion::fear, Emotion::sadness}}});
    std::istringstream in("appreciation\tdisgust\n");
    const auto ant = load_antonyms(in);
    auto p = emotional_profile(net, "show", emo, ant);
    EXPECT_EQ(p.associates, 1u);
    EXPECT_EQ(p.negated_associates, 1u);
    int negated = 0;
    for (const auto& c : p.contributions)
        if (c.negated) {
            ++negated;
            EXPECT_EQ(c.associate, "appreci");
            EXPECT_EQ(c.source, "disgust");
        }
    EXPECT_EQ(negated, 1);
    EXPECT_EQ(p.count(Emotion::disgust), 1u);
    EXPECT_EQ(p.count(Emotion::anger), 1u);
    EXPECT_EQ(p.count(Emotion::joy), 1u);
    EXPECT_EQ(p.count(Emotion::trust), 1u);
    EXPECT_EQ(p.total(), 6u);
    ASSERT_TRUE(p.fractions);
    double sum = 0;
    for (double f : *p.fractions) sum += f;
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_TRUE(p.missing_antonyms.empty());
}

TEST(Profile, NegationOnSynonymLayerIgnoredAndMissingAntonymReported)
{
    auto net = network({{"t", "win"}, {"t", "calm"}, {"calm", "not"}}, {{"win", "not"}});
    mark_negation(net, "not");
    set_emotions(net, "win", {Emotion::joy, Emotion::trust});
    auto p = emotional_profile(net, "t", EmotionLexicon{}, AntonymLexicon{});
    EXPECT_EQ(p.count(Emotion::joy), 1u);
    EXPECT_EQ(p.count(Emotion::trust), 1u);
    EXPECT_EQ(p.negated_associates, 1u);
    EXPECT_EQ(p.missing_antonyms, std::vector<std::string>{"calm"});
}

TEST(Profile, EmptyWhenNoEmotions)
{
    auto net = network({{"t", "x"}, {"t", "y"}});
    auto p = emotional_profile(net, "t", EmotionLexicon{}, AntonymLexicon{});
    EXPECT_EQ(p.total(), 0u);
    EXPECT_FALSE(p.fractions);
    EXPECT_THROW(emotional_profile(net, "zzz", EmotionLexicon{}, AntonymLexicon{}), Error);
}

TEST(Profile, WithoutNegationEqualsPlainSum)
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        auto net = network(from_mask(7, rng() & 0x1fffff));
        if (!net.has_node("a")) continue;
        std::array<std::size_t, kEmotionCount> want{};
        for (const auto& [s, c] : std::map<std::string, Concept>(net.nodes())) {
            EmotionSet es;
            for (auto e : kAllEmotions)
                if (rng() % 3 == 0) es.insert(e);
            set_emotions(net, s, es);
        }
        for (const auto& w : neighbors(net, "a"))
            for (auto e : net.node(w).emotions.members()) ++want[static_cast<std::size_t>(e)];
        EXPECT_EQ(emotional_profile(net, "a", EmotionLexicon{}, AntonymLexicon{}).counts, want);
    }
}

TEST(Louvain, TwoCliquesMatchExhaustiveOptimum)
{
    const auto g = view(letters(8), two_cliques());
    std::vector<int> best_labels;
    const double best = best_modularity(g, &best_labels);
    auto p = louvain_communities(g, 7);
    EXPECT_EQ(p.count(), 2u);
    EXPECT_NEAR(p.modularity, best, 1e-12);
    EXPECT_EQ(p.members(p.community.at("a")), (std::set<std::string>{"a", "b", "c", "d"}));
    EXPECT_EQ(p.members(p.community.at("h")), (std::set<std::string>{"e", "f", "g", "h"}));
    for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_EQ(louvain_communities(g, seed).count(), 2u);
}

TEST(Louvain, CompleteGraphIsOneCommunity)
{
    EXPECT_EQ(louvain_communities(view(letters(4), complete(4)), 1).count(), 1u);
}

TEST(Louvain, DeterministicAndConsistentModularity)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const auto g = view(letters(n), from_mask(n, rng() & ((1ULL << (n * (n - 1) / 2)) - 1)));
        if (g.edge_count() == 0) continue;
        const auto seed = rng();
        const auto p = louvain_communities(g, seed);
        EXPECT_EQ(p.community, louvain_communities(g, seed).community);
        std::vector<int> labels(g.size()), singletons(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            labels[i] = p.community.at(g.name(i));
            singletons[i] = static_cast<int>(i);
        }
        EXPECT_NEAR(p.modularity, modularity_oracle(g, labels), 1e-12);
        EXPECT_GE(p.modularity + 1e-12, modularity_oracle(g, singletons));
        EXPECT_LE(p.modularity, best_modularity(g) + 1e-12);
    }
}

TEST(Louvain, EmptyGraphRejected)
{
    EXPECT_THROW(louvain_communities(GraphView{}, 1), Error);
}

TEST(Neighbourhood, StarAndCommunity)
{
    auto net = network(star(4));
    auto sub = neighborhood_subgraph(net, "a", NeighborhoodMode::neighbors);
    EXPECT_EQ(sub.node_count(), 5u);
    EXPECT_EQ(sub.syntactic_edges().size(), 4u);

    auto cl = network(two_cliques());
    auto part = louvain_communities(cl, 3);
    auto comm = neighborhood_subgraph(cl, "b", NeighborhoodMode::community, &part);
    std::set<std::string> got;
    for (const auto& [s, c] : comm.nodes()) got.insert(s);
    EXPECT_EQ(got, part.members(part.community.at("b")));
    EXPECT_EQ(comm.node_count(), 4u);
    EXPECT_THROW(neighborhood_subgraph(cl, "b", NeighborhoodMode::community), Error);
    EXPECT_THROW(neighborhood_subgraph(cl, "zz", NeighborhoodMode::neighbors), Error);
}

TEST(Neighbourhood, MixedValenceEdgesClassified)
{
    using enum ValenceLabel;
    auto net = labelled({{"bia", "stereotyp"}, {"bia", "win"}, {"win", "prize"}},
                        {{"bia", negative}, {"stereotyp", negative}, {"win", positive}, {"prize", positive}},
                        {{"win", "prize"}});
    auto sub = neighborhood_subgraph(net, "bia", NeighborhoodMode::neighbors);
    std::map<std::string, std::string> cls;
    for (const auto& e : classify_edges(sub)) cls[e.source + "-" + e.target + "/" + std::string(to_string(e.layer))] = e.edge_class;
    EXPECT_EQ(cls.at("bia-win/syntactic"), "mixed");
    EXPECT_EQ(cls.at("bia-stereotyp/syntactic"), "negative");
    EXPECT_FALSE(sub.has_node("prize"));
    EXPECT_EQ(edge_class(net, Layer::syntactic, {"prize", "win"}), "positive");
    EXPECT_EQ(edge_class(net, Layer::synonym, {"prize", "win"}), "synonym");
}
