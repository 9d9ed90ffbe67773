// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fixture_graphs.hpp"
#include "tfmn/tfmn.hpp"

using namespace tfmn;
using namespace fixtures;

namespace {

const std::string kData = TFMN_DATA_DIR;

// Pinned tolerances.
constexpr double kMedianSize = 49.0;
constexpr double kMedianSizeTolerance = 20.0;
constexpr double kMinLccShare = 0.90;
constexpr int kMinParagraphsMatched = 5;
constexpr int kMinTableHits = 4;
constexpr double kAlpha = 0.05;
constexpr double kMinClusteringZ = 3.0;
constexpr int kRealizations = 50;
constexpr std::uint64_t kSeed = 1;

const std::vector<std::string> kHubs{"support", "inspire", "celebrate", "encourage",
                                     "empower", "champion", "welcome",   "mentor"};
const std::vector<std::string> kNegatives{"harassment", "discrimination", "bias",    "stereotype",
                                          "exclusion",  "sexism",         "barrier", "inequality"};
// Published top-10 words per paragraph, stemmed before matching.
const std::vector<std::vector<std::string>> kPublishedTop10{
    {"component", "interact", "whole", "study", "system", "make", "difficult", "part", "new", "consist"},
    {"system", "property", "part", "component", "whole", "sum", "phenomenon", "complex", "exhibit", "deduce"},
    {"system", "change", "state", "behaviour", "point", "show", "variable", "dynamic", "tend", "depend"},
    {"pattern", "emerge", "may", "organ", "become", "interact", "system", "produce", "property", "lead"},
    {"adapt", "system", "able", "become", "function", "damage", "evolve", "go", "may", "robust"},
    {"system", "understand", "science", "complex", "use", "variety", "manage", "domain", "ecology", "biology"},
    {"compute", "model", "method", "mathematics", "lead", "require", "involve", "analysis", "forecast", "rule"}};
const std::vector<std::string> kTopics{"interaction", "emergence",     "dynamics", "selforganization",
                                       "adaptation",  "interdisciplinary", "methods"};

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, const std::function<Outcome()>& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = f();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("criterion %d %-26s %s  %s (%.2fs)\n", id, name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                secs);
    std::fflush(stdout);
}

std::string fmt(double v, int prec = 4)
{
    std::ostringstream o;
    o.precision(prec);
    o << v;
    return o.str();
}

const WordLists& lists()
{
    static const WordLists wl = WordLists::load(kData + "/wordlists");
    return wl;
}

const Lexicons& lexicons()
{
    static const Lexicons lex = load_lexicons(LexiconPaths::in_directory(kData + "/lexicons"));
    return lex;
}

std::vector<MultiplexLexicalNetwork> paragraph_networks()
{
    std::vector<MultiplexLexicalNetwork> out;
    for (const auto& d : read_corpus(kData + "/corpora/complexity_explained.txt"))
        out.push_back(build_network(parse_text_corpus({d}, lists(), 3), lexicons(), lists()).network);
    return out;
}

Outcome worked_example()
{
    const auto edges = [](const std::string& s) {
        return build_from_texts({s}, lexicons(), lists()).network.aggregate_edges();
    };
    const auto a = edges("Love is weakness.");
    const auto b = edges("The cat sat on the chair.");
    const bool ok = a == std::set<StemPair>{{"love", "weak"}} && b == std::set<StemPair>{{"cat", "sit"}, {"chair", "sit"}};
    std::string d;
    for (const auto* s : {&a, &b}) {
        d += "{";
        for (const auto& [x, y] : *s) d += "(" + x + "," + y + ")";
        d += "}";
    }
    return {ok, d};
}

Outcome benchmark_structure()
{
    std::vector<double> sizes;
    double worst = 1.0;
    for (const auto& net : paragraph_networks()) {
        const GraphView g(net, LayerMode::aggregate);
        sizes.push_back(static_cast<double>(g.size()));
        worst = std::min(worst, static_cast<double>(largest_component(g).size()) / static_cast<double>(g.size()));
    }
    const double med = median(sizes);
    const bool ok = sizes.size() == 7 && std::abs(med - kMedianSize) <= kMedianSizeTolerance && worst >= kMinLccShare;
    return {ok, "paragraphs=" + std::to_string(sizes.size()) + " median_size=" + fmt(med) + " (49+-20) min_lcc_share=" +
                    fmt(worst) + " (>=0.9)"};
}

Outcome ranking_overlap()
{
    const auto nets = paragraph_networks();
    int matched = 0;
    std::string hits;
    for (std::size_t p = 0; p < nets.size() && p < kPublishedTop10.size(); ++p) {
        std::set<std::string> top;
        for (const auto& r : rank_concepts(nets[p], 10)) top.insert(r.stem);
        int h = 0;
        for (const auto& w : kPublishedTop10[p]) h += top.count(stem(w)) ? 1 : 0;
        matched += h >= kMinTableHits ? 1 : 0;
        hits += (hits.empty() ? "" : ",") + std::to_string(h);
    }
    return {matched >= kMinParagraphsMatched,
            "paragraphs_with_4plus=" + std::to_string(matched) + "/7 (>=5) hits=" + hits};
}

Outcome topic_relevance()
{
    const auto nets = paragraph_networks();
    std::map<std::string, std::vector<std::string>> rankings;
    for (std::size_t p = 0; p < nets.size() && p < kTopics.size(); ++p) {
        auto& r = rankings[stem(kTopics[p])];
        for (const auto& c : rank_concepts(nets[p], 10)) r.push_back(c.stem);
    }
    const auto oracle = load_free_associations(kData + "/oracle/free_associations.tsv");
    BenchmarkOptions opt;
    opt.n_realizations = kRealizations;
    opt.seed = kSeed;
    const auto rep = benchmark_topic_relevance(rankings, oracle, opt);
    const double me = median(rep.empirical);
    const double mn = median(rep.null_distances);
    return {me < mn && rep.test.p_value < kAlpha && rep.skipped_topics.empty(),
            "median_empirical=" + fmt(me) + " median_null=" + fmt(mn) + " U=" + fmt(rep.test.u, 8) +
                " p=" + fmt(rep.test.p_value) + " n=" + std::to_string(rep.empirical.size()) + "/" +
                std::to_string(rep.null_distances.size())};
}

Outcome synthetic_case()
{
    IngestReport ingest;
    const auto sentences = parse_text_corpus(read_corpus(kData + "/corpora/stem_gender_synthetic.txt"), lists(), 3, &ingest);
    const auto net = build_network(sentences, lexicons(), lists()).network;
    const auto null = clustering_null(net, kRealizations, kSeed);
    const GraphView g(net, LayerMode::aggregate);
    std::vector<double> hub_deg, neg_deg;
    int positive_hubs = 0;
    std::string auras;
    for (const auto& h : kHubs) {
        const auto s = stem(h);
        hub_deg.push_back(static_cast<double>(g.degree(*g.index(s))));
        const auto a = valence_aura(net, s);
        positive_hubs += a.aura == "positive" ? 1 : 0;
        if (a.aura != "positive") auras += " " + s + "=" + a.aura;
    }
    for (const auto& n : kNegatives) neg_deg.push_back(static_cast<double>(g.degree(*g.index(stem(n)))));
    const auto mw = mann_whitney_u(hub_deg, neg_deg);
    const bool ok = null.z() > kMinClusteringZ && positive_hubs == static_cast<int>(kHubs.size()) &&
                    mw.median1 > mw.median2 && mw.p_value < kAlpha;
    return {ok, "docs=" + std::to_string(ingest.documents) + " C=" + fmt(null.empirical) + " null=" +
                    fmt(null.ensemble_mean) + "+-" + fmt(null.ensemble_sd) + " z=" + fmt(null.z()) +
                    " positive_hubs=" + std::to_string(positive_hubs) + "/8" + auras + " deg_median hub=" +
                    fmt(mw.median1) + " neg=" + fmt(mw.median2) + " p=" + fmt(mw.p_value)};
}

double brute_clustering(int n, const Edges& e)
{
    std::vector<std::vector<bool>> a(n, std::vector<bool>(n));
    for (const auto& [x, y] : e) a[x[0] - 'a'][y[0] - 'a'] = a[y[0] - 'a'][x[0] - 'a'] = true;
    double s = 0;
    for (int i = 0; i < n; ++i) {
        int k = 0, t = 0;
        for (int j = 0; j < n; ++j) k += a[i][j];
        for (int j = 0; j < n; ++j)
            for (int l = j + 1; l < n; ++l) t += a[i][j] && a[i][l] && a[j][l];
        if (k >= 2) s += 2.0 * t / (k * (k - 1));
    }
    return s / n;
}

Outcome property_suites()
{
    std::vector<std::string> bad;
    const auto near = [](std::optional<double> v, double want) { return v && std::abs(*v - want) < 1e-12; };
    // closeness: N / sum of distances, d_ii included
    {
        const auto p5 = view(letters(5), path(5));
        const auto k4 = view(letters(4), complete(4));
        const auto s5 = view(letters(6), star(5));
        if (!near(closeness(p5, 0), 5.0 / 10) || !near(closeness(p5, 2), 5.0 / 6) || !near(closeness(k4, 1), 4.0 / 3) ||
            !near(closeness(s5, 0), 6.0 / 5) || !near(closeness(s5, 3), 6.0 / 9))
            bad.push_back("closeness");
    }
    // clustering: every graph up to 5 nodes, 600 random graphs on 6 to 8 nodes
    {
        std::size_t graphs = 0;
        bool ok = true;
        for (int n = 1; n <= 5; ++n)
            for (unsigned long long m = 0; m < (1ULL << (n * (n - 1) / 2)); ++m, ++graphs) {
                const auto e = from_mask(n, m);
                ok = ok && std::abs(mean_clustering(view(letters(n), e)) - brute_clustering(n, e)) < 1e-12;
            }
        std::mt19937_64 rng(7);
        for (int i = 0; i < 600; ++i, ++graphs) {
            const int n = 6 + i % 3;
            const auto e = from_mask(n, rng() & ((1ULL << (n * (n - 1) / 2)) - 1));
            ok = ok && std::abs(mean_clustering(view(letters(n), e)) - brute_clustering(n, e)) < 1e-12;
        }
        if (!ok) bad.push_back("clustering");
    }
    // rewires keep per-layer degree sequences
    {
        std::vector<MultiplexLexicalNetwork> nets{network(path(8)), network(complete(5), {{"a", "f"}, {"f", "g"}}),
                                                  network(star(6), {{"b", "c"}, {"d", "e"}}),
                                                  network(from_mask(8, 0x5a5a5a5ULL), from_mask(8, 0x0f0f0f0ULL)),
                                                  network(from_mask(7, 0x1f3e7cULL), {{"a", "g"}})};
        bool ok = true;
        for (const auto& net : nets) {
            std::vector<std::string> names;
            for (const auto& [s, c] : net.nodes()) names.push_back(s);
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                const auto r = configuration_rewire(net, seed);
                for (auto layer : {Layer::syntactic, Layer::synonym})
                    ok = ok && degree_sequence(r.edge_set(layer), names) == degree_sequence(net.edge_set(layer), names);
            }
        }
        if (!ok) bad.push_back("rewire");
    }
    // Mann-Whitney U against the pair count over all samples from {0,1,2}, sizes 1 to 8
    {
        std::vector<std::vector<double>> samples;
        for (int n = 1; n <= 8; ++n)
            for (int z = 0; z <= n; ++z)
                for (int o = 0; z + o <= n; ++o) {
                    std::vector<double> v(z, 0.0);
                    v.insert(v.end(), o, 1.0);
                    v.insert(v.end(), n - z - o, 2.0);
                    samples.push_back(v);
                }
        bool ok = true;
        for (const auto& a : samples)
            for (const auto& b : samples) {
                double u = 0;
                for (double x : a)
                    for (double y : b) u += x > y ? 1.0 : x == y ? 0.5 : 0.0;
                ok = ok && mann_whitney_u(a, b).u == u;
            }
        if (!ok) bad.push_back("mann_whitney");
    }
    // negated associate contributes its antonym once
    {
        auto net = network({{"show", "appreci"}, {"appreci", "not"}, {"show", "not"}});
        Concept c = net.node("not");
        c.is_negation_marker = true;
        net.add_node(c);
        c = net.node("appreci");
        c.emotions = EmotionSet{Emotion::joy, Emotion::trust};
        net.add_node(c);
        EmotionLexicon emo({{"appreci", {Emotion::joy, Emotion::trust}},
                            {"disgust", {Emotion::anger, Emotion::disgust, Emotion::fear, Emotion::sadness}}});
        std::istringstream in("appreciation\tdisgust\n");
        const auto p = emotional_profile(net, "show", emo, load_antonyms(in));
        int from_antonym = 0;
        for (const auto& k : p.contributions) from_antonym += k.negated && k.source == "disgust" ? 1 : 0;
        if (from_antonym != 1 || p.count(Emotion::disgust) != 1 || p.total() != 6) bad.push_back("profile");
    }
    std::string d = "closeness clustering rewire mann_whitney profile";
    if (!bad.empty()) {
        d = "failed:";
        for (const auto& b : bad) d += " " + b;
    }
    return {bad.empty(), d};
}

// Every serialized artifact of one pipeline run, concatenated.
std::string pipeline_bytes()
{
    const auto docs = read_corpus(kData + "/corpora/stem_gender_synthetic.txt");
    BuildConfig cfg;
    cfg.corpus_id = "stem_gender_synthetic";
    cfg.config_hash = "acceptance";
    const auto net = build_network(parse_text_corpus(docs, lists(), 3), lexicons(), lists(), cfg).network;
    std::string out = dump(to_json(net)) + to_graphml(net) + centrality_csv(centrality_report(net));
    std::vector<AuraReport> auras;
    std::vector<EmotionalProfile> profiles;
    for (const auto& h : kHubs) {
        auras.push_back(valence_aura(net, stem(h)));
        profiles.push_back(emotional_profile(net, stem(h), lexicons().emotions, lexicons().antonyms));
    }
    out += aura_csv(auras) + profile_csv(profiles) + dump(to_json(louvain_communities(net, kSeed)));
    out += dump(to_json(clustering_null(net, 20, kSeed)));
    std::map<std::string, std::vector<std::string>> rankings;
    const auto nets = paragraph_networks();
    for (std::size_t p = 0; p < nets.size(); ++p)
        for (const auto& c : rank_concepts(nets[p], 10)) rankings[stem(kTopics[p])].push_back(c.stem);
    BenchmarkOptions opt;
    opt.n_realizations = 20;
    out += dump(to_json(benchmark_topic_relevance(rankings, load_free_associations(kData + "/oracle/free_associations.tsv"), opt)));
    return out;
}

Outcome determinism()
{
    const auto a = pipeline_bytes();
    const auto b = pipeline_bytes();
    return {a == b && !a.empty(), "bytes=" + std::to_string(a.size()) + (a == b ? " identical" : " differ")};
}

}  // namespace

int main()
{
    run(1, "worked_example", worked_example);
    run(2, "benchmark_structure", benchmark_structure);
    run(3, "ranking_overlap", ranking_overlap);
    run(4, "topic_relevance_null", topic_relevance);
    run(5, "synthetic_case_study", synthetic_case);
    run(6, "property_suites", property_suites);
    run(7, "determinism", determinism);
    std::printf("%d of 7 criteria passed\n", 7 - failures);
    return failures == 0 ? 0 : 1;
}
