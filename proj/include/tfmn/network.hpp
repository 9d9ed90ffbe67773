#pragma once

// The two-layer lexical network and its construction from dependency trees.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tfmn/conllu.hpp"
#include "tfmn/emotion.hpp"
#include "tfmn/error.hpp"
#include "tfmn/lexicons.hpp"
#include "tfmn/porter.hpp"
#include "tfmn/wordlists.hpp"

namespace tfmn {

struct Concept {
    std::string stem;
    std::string label;  // most frequent lemma seen for this stem
    ValenceLabel valence_label = ValenceLabel::unrated;
    std::optional<double> valence_score;
    EmotionSet emotions;
    bool is_negation_marker = false;
    std::size_t occurrences = 0;

    friend bool operator==(const Concept&, const Concept&) = default;
};

enum class Layer { syntactic, synonym };

inline constexpr std::string_view to_string(Layer l) { return l == Layer::syntactic ? "syntactic" : "synonym"; }

struct Provenance {
    std::string corpus_id;
    std::string config_hash;
    // Dependency direction is dropped when edges are merged.
    std::string edge_direction = "undirected";

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Concepts keyed by stem with a syntactic layer (edge multiplicities kept)
/// and a synonym layer. Edges are unordered stem pairs, smaller stem first.
class MultiplexLexicalNetwork {
public:
    bool has_node(const std::string& stem) const { return nodes_.count(stem) != 0; }

    const Concept& node(const std::string& stem) const
    {
        auto it = nodes_.find(stem);
        if (it == nodes_.end()) throw Error("unknown_node", "no concept '" + stem + "' in network");
        return it->second;
    }

    void add_node(Concept c)
    {
        auto key = c.stem;
        nodes_.insert_or_assign(std::move(key), std::move(c));
    }

    void add_edge(Layer layer, const std::string& a, const std::string& b, std::size_t count = 1)
    {
        if (a == b) throw Error("invalid_edge", "self-loop on '" + a + "'");
        if (!has_node(a) || !has_node(b))
            throw Error("invalid_edge", "edge (" + a + ", " + b + ") references a missing node");
        auto key = make_pair_key(a, b);
        if (layer == Layer::syntactic) syntactic_[key] += count;
        else synonym_.insert(std::move(key));
    }

    bool has_edge(Layer layer, const std::string& a, const std::string& b) const
    {
        const auto key = make_pair_key(a, b);
        return layer == Layer::syntactic ? syntactic_.count(key) != 0 : synonym_.count(key) != 0;
    }

    const std::map<std::string, Concept>& nodes() const { return nodes_; }
    const std::map<StemPair, std::size_t>& syntactic_edges() const { return syntactic_; }
    const std::set<StemPair>& synonym_edges() const { return synonym_; }

    std::set<StemPair> edge_set(Layer layer) const
    {
        if (layer == Layer::synonym) return synonym_;
        std::set<StemPair> out;
        for (const auto& [e, c] : syntactic_) out.insert(e);
        return out;
    }

    /// Union of both layers as a simple graph.
    std::set<StemPair> aggregate_edges() const
    {
        auto out = edge_set(Layer::syntactic);
        out.insert(synonym_.begin(), synonym_.end());
        return out;
    }

    std::size_t node_count() const { return nodes_.size(); }

    Provenance& provenance() { return provenance_; }
    const Provenance& provenance() const { return provenance_; }

    void clear_layer(Layer layer)
    {
        if (layer == Layer::syntactic) syntactic_.clear();
        else synonym_.clear();
    }

    /// First violated structural invariant, if any.
    std::optional<std::string> validate() const
    {
        for (const auto& [stem, c] : nodes_) {
            if (stem.empty()) return "node with empty stem";
            if (c.stem != stem) return "node key '" + stem + "' does not match its stem '" + c.stem + "'";
        }
        const auto check = [&](const StemPair& e, std::string_view layer) -> std::optional<std::string> {
            if (e.first == e.second) return std::string(layer) + " self-loop on '" + e.first + "'";
            if (!has_node(e.first) || !has_node(e.second))
                return std::string(layer) + " edge (" + e.first + ", " + e.second + ") has an endpoint outside the node set";
            if (!(e.first < e.second)) return std::string(layer) + " edge (" + e.first + ", " + e.second + ") not in canonical order";
            return std::nullopt;
        };
        for (const auto& [e, count] : syntactic_) {
            if (auto err = check(e, "syntactic")) return err;
            if (count == 0) return "syntactic edge with zero multiplicity";
        }
        for (const auto& e : synonym_)
            if (auto err = check(e, "synonym")) return err;
        return std::nullopt;
    }

    friend bool operator==(const MultiplexLexicalNetwork&, const MultiplexLexicalNetwork&) = default;

private:
    std::map<std::string, Concept> nodes_;
    std::map<StemPair, std::size_t> syntactic_;
    std::set<StemPair> synonym_;
    Provenance provenance_;
};

enum class TokenClass { content, function };

/// CONTENT: nouns, proper nouns, verbs, adjectives, adverbs, pronouns and
/// negation particles. Everything else, including any closed-class word and
/// be/have/do used as auxiliaries or copulas, is FUNCTION.
inline TokenClass classify_token(const Token& t, const WordLists& lists)
{
    const auto lemma = text::lower(t.lemma.empty() ? t.surface : t.lemma);
    const auto surface = text::lower(t.surface);
    if (lists.is_negation(lemma) || lists.is_negation(surface)) return TokenClass::content;
    if (t.deprel == "cop" || t.deprel == "aux" || t.deprel == "aux:pass" || t.deprel == "expl" ||
        t.deprel == "det" || t.deprel == "case" || t.deprel == "mark" || t.deprel == "cc" ||
        t.deprel == "punct")
        return TokenClass::function;
    if (lists.is_closed_function_word(lemma) || lists.is_closed_function_word(surface)) return TokenClass::function;
    static const std::set<std::string> content_upos = {"NOUN", "PROPN", "VERB", "ADJ", "ADV", "PRON"};
    if (!content_upos.count(t.upos)) return TokenClass::function;
    if (lemma == "be") return TokenClass::function;
    return TokenClass::content;
}

/// Lemma-then-stem key of a content token; negations keep their canonical
/// particle ("n't" becomes "not"). nullopt when the lemma is not alphabetic.
inline std::optional<std::string> concept_key(const Token& t, const WordLists& lists)
{
    auto lemma = text::lower(t.lemma.empty() ? t.surface : t.lemma);
    if (lemma == "n't" || text::lower(t.surface) == "n't") return std::string("not");
    if (lists.is_negation(lemma)) return lemma;
    if (!is_alphabetic(lemma)) return std::nullopt;
    return stem(lemma);
}

inline std::string concept_lemma(const Token& t)
{
    auto lemma = text::lower(t.lemma.empty() ? t.surface : t.lemma);
    return lemma == "n't" ? std::string("not") : lemma;
}

struct SentenceExtraction {
    std::set<StemPair> edges;
    std::vector<std::pair<std::string, std::string>> concepts;  // (stem, lemma) per content token kept
    std::size_t content_tokens = 0;
    std::size_t unstemmable = 0;
};

/// Contracts every FUNCTION token of the tree (linking all its neighbours
/// pairwise, to a fixed point) and returns the remaining tree edges between
/// CONTENT tokens as stem pairs. Content tokens whose lemma cannot be stemmed
/// are contracted like function tokens so connectivity survives.
inline SentenceExtraction extract_sentence(const ParsedSentence& s, const WordLists& lists)
{
    SentenceExtraction out;
    const auto n = s.tokens.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int h = s.tokens[i].head;
        if (h > 0) {
            adj[i].push_back(static_cast<std::size_t>(h - 1));
            adj[static_cast<std::size_t>(h - 1)].push_back(i);
        }
    }
    std::vector<std::optional<std::string>> key(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (classify_token(s.tokens[i], lists) != TokenClass::content) continue;
        ++out.content_tokens;
        key[i] = concept_key(s.tokens[i], lists);
        if (!key[i]) ++out.unstemmable;
        else out.concepts.emplace_back(*key[i], concept_lemma(s.tokens[i]));
    }
    // Eliminating a vertex set by clique-joining neighbours yields an edge
    // u-v exactly when the tree has a u..v path whose interior is eliminated.
    std::vector<char> seen(n);
    std::vector<std::size_t> stack;
    for (std::size_t u = 0; u < n; ++u) {
        if (!key[u]) continue;
        std::fill(seen.begin(), seen.end(), 0);
        seen[u] = 1;
        stack.assign(1, u);
        while (!stack.empty()) {
            const auto x = stack.back();
            stack.pop_back();
            for (auto y : adj[x]) {
                if (seen[y]) continue;
                seen[y] = 1;
                if (key[y]) {
                    if (u < y && *key[u] != *key[y]) out.edges.insert(make_pair_key(*key[u], *key[y]));
                } else {
                    stack.push_back(y);
                }
            }
        }
    }
    return out;
}

inline std::set<StemPair> extract_syntactic_edges(const ParsedSentence& s, const WordLists& lists)
{
    return extract_sentence(s, lists).edges;
}

/// Synonym edges among `nodes` only; lexicon pairs with an absent endpoint
/// contribute nothing.
inline std::set<StemPair> add_synonym_layer(const std::set<std::string>& nodes, const SynonymLexicon& lexicon)
{
    std::set<StemPair> out;
    for (const auto& a : nodes)
        for (const auto& b : lexicon.synonyms(a))
            if (a < b && nodes.count(b)) out.emplace(a, b);
    return out;
}

struct BuildConfig {
    std::string corpus_id = "corpus";
    std::string config_hash;
};

struct BuildSummary {
    std::size_t sentences = 0;
    std::size_t invalid_sentences = 0;
    std::size_t sentences_without_edges = 0;
    std::size_t unstemmable_tokens = 0;
    std::size_t nodes = 0;
    std::size_t syntactic_edges = 0;
    std::size_t synonym_edges = 0;
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t neutral = 0;
    std::size_t unrated = 0;
};

struct BuildResult {
    MultiplexLexicalNetwork network;
    BuildSummary summary;
};

/// Nodes are the endpoints of syntactic edges; sentences contribute no edges
/// across each other. The result does not depend on sentence order.
inline BuildResult build_network(const std::vector<ParsedSentence>& sentences, const Lexicons& lex,
                                 const WordLists& lists, const BuildConfig& config = {})
{
    if (sentences.empty()) throw Error("no_sentences", "no sentences");
    BuildResult r;
    auto& sum = r.summary;
    sum.sentences = sentences.size();

    std::map<StemPair, std::size_t> counts;
    std::map<std::string, std::map<std::string, std::size_t>> lemma_counts;
    for (const auto& s : sentences) {
        if (validate_tree(s)) {
            ++sum.invalid_sentences;
            continue;
        }
        auto ex = extract_sentence(s, lists);
        sum.unstemmable_tokens += ex.unstemmable;
        if (ex.edges.empty()) {
            ++sum.sentences_without_edges;
            continue;
        }
        std::set<std::string> linked;
        for (const auto& e : ex.edges) {
            ++counts[e];
            linked.insert(e.first);
            linked.insert(e.second);
        }
        for (const auto& [st, lemma] : ex.concepts)
            if (linked.count(st)) ++lemma_counts[st][lemma];
    }

    auto& net = r.network;
    for (const auto& [st, lemmas] : lemma_counts) {
        Concept c;
        c.stem = st;
        std::size_t best = 0;
        for (const auto& [lemma, k] : lemmas) {
            c.occurrences += k;
            if (k > best) {  // map order: ties keep the smaller lemma
                best = k;
                c.label = lemma;
            }
        }
        if (auto v = lex.valence.find(st)) c.valence_score = v->score;
        c.valence_label = lex.valence.label(st);
        c.emotions = lex.emotions.emotions(st);
        c.is_negation_marker = lists.is_negation(st);
        net.add_node(std::move(c));
    }
    for (const auto& [e, k] : counts) net.add_edge(Layer::syntactic, e.first, e.second, k);

    std::set<std::string> node_set;
    for (const auto& [st, c] : net.nodes()) node_set.insert(st);
    for (const auto& e : add_synonym_layer(node_set, lex.synonyms)) net.add_edge(Layer::synonym, e.first, e.second);

    net.provenance().corpus_id = config.corpus_id;
    net.provenance().config_hash = config.config_hash;

    sum.nodes = net.node_count();
    sum.syntactic_edges = net.syntactic_edges().size();
    sum.synonym_edges = net.synonym_edges().size();
    for (const auto& [st, c] : net.nodes()) {
        switch (c.valence_label) {
        case ValenceLabel::positive: ++sum.positive; break;
        case ValenceLabel::negative: ++sum.negative; break;
        case ValenceLabel::neutral: ++sum.neutral; break;
        case ValenceLabel::unrated: ++sum.unrated; break;
        }
    }
    return r;
}

/// Induced subnetwork over `keep` (both layers, labels preserved).
inline MultiplexLexicalNetwork induced_subnetwork(const MultiplexLexicalNetwork& net, const std::set<std::string>& keep)
{
    MultiplexLexicalNetwork out;
    for (const auto& st : keep)
        if (net.has_node(st)) out.add_node(net.node(st));
    for (const auto& [e, k] : net.syntactic_edges())
        if (out.has_node(e.first) && out.has_node(e.second)) out.add_edge(Layer::syntactic, e.first, e.second, k);
    for (const auto& e : net.synonym_edges())
        if (out.has_node(e.first) && out.has_node(e.second)) out.add_edge(Layer::synonym, e.first, e.second);
    out.provenance() = net.provenance();
    return out;
}

}  // namespace tfmn
