// tfmn_cli: build textual forma mentis networks and run the analyses on them.
//
// Options may come from a key=value config file (--config); flags given on the
// command line override the file.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "tfmn/tfmn.hpp"

namespace fs = std::filesystem;
using namespace tfmn;

#ifndef TFMN_DEFAULT_DATA_DIR
#define TFMN_DEFAULT_DATA_DIR "data"
#endif

namespace {

struct RunConfig {
    std::string command;
    std::string corpus;
    std::string format = "text";
    std::string lexicons;
    std::string wordlists;
    std::string valence_column = "V.Mean.Sum";
    std::string out = "tfmn_out";
    std::string network;
    std::string oracle;
    std::vector<std::string> targets;
    std::vector<std::string> topics;
    std::size_t min_words = 3;
    int top_k = 10;
    std::uint64_t seed = 1;
    std::string layer_mode = "aggregate";
    int realizations = 50;
    int swaps_per_edge = 10;
    bool per_document = false;
    bool per_topic_tests = false;

    /// Canonical text of every setting that can change an output.
    std::string canonical() const
    {
        std::string s;
        const auto kv = [&](std::string_view k, const std::string& v) { s += std::string(k) + "=" + v + "\n"; };
        const auto list = [](const std::vector<std::string>& v) {
            std::string r;
            for (const auto& x : v) r += (r.empty() ? "" : ",") + x;
            return r;
        };
        kv("command", command);
        kv("corpus", corpus);
        kv("format", format);
        kv("lexicons", lexicons);
        kv("wordlists", wordlists);
        kv("valence_column", valence_column);
        kv("network", network);
        kv("oracle", oracle);
        kv("targets", list(targets));
        kv("topics", list(topics));
        kv("min_words", std::to_string(min_words));
        kv("top_k", std::to_string(top_k));
        kv("seed", std::to_string(seed));
        kv("layer_mode", layer_mode);
        kv("realizations", std::to_string(realizations));
        kv("swaps_per_edge", std::to_string(swaps_per_edge));
        kv("per_document", per_document ? "true" : "false");
        kv("per_topic_tests", per_topic_tests ? "true" : "false");
        return s;
    }

    std::string hash() const
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical())));
        return buf;
    }
};

std::string default_lexicon_dir()
{
    if (const char* env = std::getenv("TFMN_LEXICON_DIR"); env && *env) return env;
    return (fs::path(TFMN_DEFAULT_DATA_DIR) / "lexicons").string();
}

void require_file(const std::string& what, const std::string& path)
{
    if (path.empty()) throw Error("invalid_config", what + " is required");
    if (!fs::exists(path)) throw Error("invalid_config", what + " '" + path + "' does not exist");
}

class Runner {
public:
    explicit Runner(RunConfig cfg) : cfg_(std::move(cfg)), hash_(cfg_.hash()) {}

    int run()
    {
        const auto& c = cfg_.command;
        if (c == "build") return build();
        if (c == "rank") return rank();
        if (c == "aura") return aura();
        if (c == "profile") return profile();
        if (c == "communities") return communities();
        if (c == "nulltest") return nulltest();
        if (c == "benchmark") return benchmark();
        if (c == "export") return export_network();
        throw Error("invalid_argument", "unknown command '" + c + "'");
    }

private:
    RunConfig cfg_;
    std::string hash_;

    json run_info() const { return {{"command", cfg_.command}, {"config_hash", hash_}, {"seed", cfg_.seed}}; }

    // Output directory is created on first write, so failed runs leave nothing behind.
    std::string path(const std::string& name) const
    {
        fs::create_directories(cfg_.out);
        return (fs::path(cfg_.out) / name).string();
    }

    void emit_json(const std::string& name, json body) const
    {
        json j;
        j["run"] = run_info();
        for (auto& [k, v] : body.items()) j[k] = std::move(v);
        write_file(path(name), dump(j));
        std::cout << path(name) << "\n";
    }

    void emit_csv(const std::string& name, const std::string& body) const
    {
        write_file(path(name), "# config_hash=" + hash_ + " seed=" + std::to_string(cfg_.seed) + "\n" + body);
        std::cout << path(name) << "\n";
    }

    void emit_graphml(const std::string& name, const MultiplexLexicalNetwork& net) const
    {
        auto g = to_graphml(net);
        const auto eol = g.find('\n') + 1;
        g.insert(eol, "<!-- config_hash=" + hash_ + " seed=" + std::to_string(cfg_.seed) + " -->\n");
        write_file(path(name), g);
        std::cout << path(name) << "\n";
    }

    LayerMode layer_mode() const { return parse_layer_mode(cfg_.layer_mode); }

    Lexicons lexicons(LexiconLoadReport* report = nullptr) const
    {
        const auto paths = LexiconPaths::in_directory(cfg_.lexicons);
        for (const auto& p : {paths.valence, paths.emotions, paths.synonyms, paths.antonyms}) require_file("lexicon", p);
        ValenceCsvOptions opts;
        opts.score_column = cfg_.valence_column;
        return load_lexicons(paths, opts, report);
    }

    WordLists wordlists() const
    {
        require_file("wordlists directory", cfg_.wordlists);
        return WordLists::load(cfg_.wordlists);
    }

    MultiplexLexicalNetwork network() const
    {
        require_file("network", cfg_.network);
        if (cfg_.network.ends_with(".graphml")) {
            auto in = text::open_input(cfg_.network);
            return network_from_graphml(in);
        }
        return read_network_json(cfg_.network);
    }

    /// Parsed sentences grouped into the networks to build, in corpus order.
    std::vector<std::pair<std::string, std::vector<ParsedSentence>>> corpus_groups(const WordLists& lists,
                                                                                   IngestReport& report) const
    {
        require_file("corpus", cfg_.corpus);
        std::vector<ParsedSentence> sentences;
        if (cfg_.format == "conllu") sentences = read_conllu_corpus(cfg_.corpus, &report);
        else if (cfg_.format == "text") sentences = parse_text_corpus(read_corpus(cfg_.corpus), lists, cfg_.min_words, &report);
        else throw Error("invalid_config", "format must be 'text' or 'conllu'");

        const auto corpus_id = fs::path(cfg_.corpus).stem().string();
        std::vector<std::pair<std::string, std::vector<ParsedSentence>>> groups;
        if (!cfg_.per_document) {
            groups.emplace_back(corpus_id, std::move(sentences));
            return groups;
        }
        std::map<std::string, std::size_t> at;
        for (auto& s : sentences) {
            auto [it, fresh] = at.emplace(s.doc_id, groups.size());
            if (fresh) groups.emplace_back(s.doc_id, std::vector<ParsedSentence>{});
            groups[it->second].second.push_back(std::move(s));
        }
        return groups;
    }

    /// Resolves user-supplied words to node stems; the rest are unknown.
    std::pair<std::vector<std::string>, std::vector<std::string>> resolve(const MultiplexLexicalNetwork& net) const
    {
        if (cfg_.targets.empty()) throw Error("invalid_config", "targets are required");
        std::vector<std::string> found, unknown;
        for (const auto& t : cfg_.targets) {
            const auto low = text::lower(t);
            if (net.has_node(low)) found.push_back(low);
            else if (is_alphabetic(low) && net.has_node(stem(low))) found.push_back(stem(low));
            else unknown.push_back(t);
        }
        return {found, unknown};
    }

    // Exit 2 when any target failed to resolve; reports cover the ones that did.
    static int target_exit(const std::vector<std::string>& unknown) { return unknown.empty() ? 0 : 2; }

    int build()
    {
        LexiconLoadReport lr;
        const auto lex = lexicons(&lr);
        const auto lists = wordlists();
        IngestReport ir;
        auto groups = corpus_groups(lists, ir);
        json nets = json::array();
        for (const auto& [name, sentences] : groups) {
            BuildConfig bc;
            bc.corpus_id = name;
            bc.config_hash = hash_;
            auto r = build_network(sentences, lex, lists, bc);
            json nj = to_json(r.network);
            nj["run"] = run_info();
            write_file(path(name + ".network.json"), dump(nj));
            std::cout << path(name + ".network.json") << "\n";
            emit_graphml(name + ".graphml", r.network);
            json s = to_json(r.summary);
            s["name"] = name;
            s["files"] = {name + ".network.json", name + ".graphml"};
            nets.push_back(std::move(s));
        }
        const auto load = [](const LoadReport& r) {
            return json{{"rows", r.rows}, {"ignored", r.ignored}, {"warnings", r.warnings}};
        };
        emit_json("build_summary.json",
                  {{"ingest",
                    {{"documents", ir.documents},
                     {"dropped_short", ir.dropped_short},
                     {"sentences", ir.sentences},
                     {"unparsed_sentences", ir.unparsed},
                     {"rejected", ir.rejected}}},
                   {"lexicons",
                    {{"valence", load(lr.valence)},
                     {"emotions", load(lr.emotions)},
                     {"synonyms", load(lr.synonyms)},
                     {"antonyms", load(lr.antonyms)}}},
                   {"networks", nets}});
        return 0;
    }

    int rank()
    {
        const auto net = network();
        const GraphView g(net, layer_mode());
        json ranked = json::array();
        int pos = 1;
        for (const auto& r : rank_concepts(g, cfg_.top_k))
            ranked.push_back({{"rank", pos++}, {"stem", r.stem}, {"label", net.node(r.stem).label}, {"closeness", r.closeness}});
        emit_json("rank.json", {{"layer_mode", cfg_.layer_mode},
                                {"top_k", cfg_.top_k},
                                {"nodes", g.size()},
                                {"largest_component", largest_component(g).size()},
                                {"ranking", ranked}});
        emit_csv("centrality.csv", centrality_csv(centrality_report(g)));
        return 0;
    }

    int aura()
    {
        const auto net = network();
        auto [found, unknown] = resolve(net);
        std::vector<AuraReport> rows;
        json reports = json::array();
        for (const auto& t : found) {
            rows.push_back(valence_aura(net, t));
            reports.push_back(to_json(rows.back()));
        }
        emit_json("aura.json", {{"auras", reports}, {"unknown_targets", unknown}});
        emit_csv("aura.csv", aura_csv(rows));
        return target_exit(unknown);
    }

    int profile()
    {
        const auto lex = lexicons();
        const auto net = network();
        auto [found, unknown] = resolve(net);
        std::vector<EmotionalProfile> rows;
        json reports = json::array();
        for (const auto& t : found) {
            rows.push_back(emotional_profile(net, t, lex.emotions, lex.antonyms));
            reports.push_back(to_json(rows.back()));
            emit_json("profile_" + t + ".chart.json", chart_data(rows.back()));
        }
        emit_json("profile.json", {{"profiles", reports}, {"unknown_targets", unknown}});
        emit_csv("profile.csv", profile_csv(rows));
        return target_exit(unknown);
    }

    int communities()
    {
        const auto net = network();
        const auto part = louvain_communities(GraphView(net, layer_mode()), cfg_.seed);
        std::vector<std::string> found, unknown;
        if (!cfg_.targets.empty()) std::tie(found, unknown) = resolve(net);
        for (const auto& t : found) {
            emit_graphml(t + ".neighbors.graphml", neighborhood_subgraph(net, t, NeighborhoodMode::neighbors));
            emit_graphml(t + ".community.graphml", neighborhood_subgraph(net, t, NeighborhoodMode::community, &part));
        }
        json body = to_json(part);
        body["layer_mode"] = cfg_.layer_mode;
        body["unknown_targets"] = unknown;
        emit_json("communities.json", body);
        return target_exit(unknown);
    }

    int nulltest()
    {
        const auto net = network();
        const auto r = clustering_null(net, cfg_.realizations, cfg_.seed, cfg_.swaps_per_edge);
        json body = to_json(r);
        body["realization_seeds"] = r.seeds;
        body["swaps_per_edge"] = cfg_.swaps_per_edge;
        emit_json("nulltest.json", body);
        return 0;
    }

    int benchmark()
    {
        if (cfg_.realizations < 2) throw Error("invalid_argument", "benchmark needs at least 2 realizations");
        require_file("oracle", cfg_.oracle);
        const auto lex = lexicons();
        const auto lists = wordlists();
        auto saved = cfg_.per_document;
        cfg_.per_document = true;
        IngestReport ir;
        auto groups = corpus_groups(lists, ir);
        cfg_.per_document = saved;
        if (groups.size() != cfg_.topics.size())
            throw Error("invalid_config", "benchmark needs one topic per document: " + std::to_string(groups.size()) +
                                              " documents, " + std::to_string(cfg_.topics.size()) + " topics");
        std::map<std::string, std::vector<std::string>> rankings;
        json per_doc = json::array();
        for (std::size_t i = 0; i < groups.size(); ++i) {
            auto r = build_network(groups[i].second, lex, lists, {groups[i].first, hash_});
            const GraphView g(r.network, layer_mode());
            const auto topic = stem(text::lower(cfg_.topics[i]));
            auto& stems = rankings[topic];
            for (const auto& rc : rank_concepts(g, cfg_.top_k)) stems.push_back(rc.stem);
            per_doc.push_back({{"document", groups[i].first}, {"topic", topic}, {"nodes", g.size()},
                               {"largest_component", largest_component(g).size()}, {"top", stems}});
        }
        const auto oracle = load_free_associations(cfg_.oracle);
        BenchmarkOptions opt;
        opt.n_realizations = cfg_.realizations;
        opt.seed = cfg_.seed;
        opt.swaps_per_edge = cfg_.swaps_per_edge;
        opt.per_topic_tests = cfg_.per_topic_tests;
        json body = to_json(benchmark_topic_relevance(rankings, oracle, opt));
        body["rankings"] = per_doc;
        body["oracle"] = {{"nodes", oracle.graph.size()}, {"edges", oracle.graph.edge_count()}};
        emit_json("benchmark.json", body);
        return 0;
    }

    int export_network()
    {
        const auto net = network();
        const auto name = net.provenance().corpus_id.empty() ? std::string("network") : net.provenance().corpus_id;
        json nj = to_json(net);
        nj["run"] = run_info();
        write_file(path(name + ".network.json"), dump(nj));
        std::cout << path(name + ".network.json") << "\n";
        emit_graphml(name + ".graphml", net);
        std::string edges = "source,target,layer,edge_class\n";
        for (const auto& e : classify_edges(net))
            edges += e.source + "," + e.target + "," + std::string(to_string(e.layer)) + "," + e.edge_class + "\n";
        emit_csv(name + ".edges.csv", edges);
        std::string nodes = "stem,label,valence,valence_score,emotions\n";
        for (const auto& [st, c] : net.nodes()) {
            std::string em;
            for (auto e : c.emotions.members()) em += (em.empty() ? "" : " ") + std::string(to_string(e));
            nodes += st + "," + c.label + "," + std::string(to_string(c.valence_label)) + "," +
                     (c.valence_score ? csv_number(*c.valence_score) : std::string()) + "," + em + "\n";
        }
        emit_csv(name + ".nodes.csv", nodes);
        return 0;
    }
};

int fail(const std::string& code, const std::string& message, const std::vector<std::string>& details = {})
{
    json j = {{"error", {{"code", code}, {"message", message}, {"details", details}}}};
    std::cerr << j.dump() << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Textual forma mentis networks: build, rank, aura, profile, communities, nulltest, benchmark, export"};
    app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");
    app.allow_config_extras(false);
    app.fallthrough();
    app.require_subcommand(1, 1);

    RunConfig cfg;
    cfg.lexicons = default_lexicon_dir();
    cfg.wordlists = (fs::path(TFMN_DEFAULT_DATA_DIR) / "wordlists").string();

    app.add_option("--corpus", cfg.corpus, "corpus file: one 'id<TAB>text' document per line, or CoNLL-U");
    app.add_option("--format", cfg.format, "corpus format")->check(CLI::IsMember({"text", "conllu"}));
    app.add_option("--lexicons", cfg.lexicons, "lexicon directory (default: $TFMN_LEXICON_DIR)");
    app.add_option("--wordlists", cfg.wordlists, "function-word list directory");
    app.add_option("--valence-column", cfg.valence_column, "valence score column in valence.csv");
    app.add_option("--out", cfg.out, "output directory");
    app.add_option("--network", cfg.network, "network file (.network.json or .graphml)");
    app.add_option("--oracle", cfg.oracle, "free-association edge list");
    app.add_option("--targets", cfg.targets, "target words")->delimiter(',');
    app.add_option("--topics", cfg.topics, "benchmark topic words, one per document")->delimiter(',');
    app.add_option("--min-words", cfg.min_words, "drop documents with fewer words");
    app.add_option("--top-k", cfg.top_k, "ranking length");
    app.add_option("--seed", cfg.seed, "top-level random seed");
    app.add_option("--layer-mode", cfg.layer_mode, "aggregate, syntactic_only or synonym_only")
        ->check(CLI::IsMember({"aggregate", "syntactic_only", "synonym_only"}));
    app.add_option("--realizations", cfg.realizations, "null-model realizations");
    app.add_option("--swaps-per-edge", cfg.swaps_per_edge, "edge swaps per edge in each rewire");
    app.add_flag("--per-document", cfg.per_document, "one network per corpus document");
    app.add_flag("--per-topic-tests", cfg.per_topic_tests, "also test each benchmark topic separately");

    const std::vector<std::pair<const char*, const char*>> commands{
        {"build", "build networks from --corpus"},
        {"rank", "closeness ranking of --network"},
        {"aura", "valence auras of --targets"},
        {"profile", "emotional profiles of --targets"},
        {"communities", "Louvain communities, with neighbourhood exports for --targets"},
        {"nulltest", "clustering against configuration rewires"},
        {"benchmark", "topic relevance against the free-association --oracle"},
        {"export", "GraphML, JSON and CSV copies of --network"}};
    for (const auto& [name, help] : commands)
        app.add_subcommand(name, help)->callback([&cfg, n = name] { cfg.command = n; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("invalid_arguments", e.what());
    }

    try {
        return Runner(cfg).run();
    } catch (const Error& e) {
        return fail(e.code(), e.what(), e.details());
    } catch (const std::exception& e) {
        return fail("internal_error", e.what());
    }
}
