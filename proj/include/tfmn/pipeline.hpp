#pragma once

// Corpus-to-network pipeline shared by the CLI and the test suites.

#include <filesystem>
#include <string>
#include <vector>

#include "tfmn/conllu.hpp"
#include "tfmn/error.hpp"
#include "tfmn/heuristic_parser.hpp"
#include "tfmn/ingest.hpp"
#include "tfmn/lexicons.hpp"
#include "tfmn/network.hpp"
#include "tfmn/parallel.hpp"
#include "tfmn/wordlists.hpp"

namespace tfmn {

struct LexiconPaths {
    std::string valence;
    std::string emotions;
    std::string synonyms;
    std::string antonyms;

    /// Conventional file names inside a lexicon directory.
    static LexiconPaths in_directory(const std::filesystem::path& dir)
    {
        return {(dir / "valence.csv").string(), (dir / "emotions.tsv").string(), (dir / "synonyms.tsv").string(),
                (dir / "antonyms.tsv").string()};
    }
};

struct LexiconLoadReport {
    LoadReport valence, emotions, synonyms, antonyms;
};

inline Lexicons load_lexicons(const LexiconPaths& paths, const ValenceCsvOptions& valence_opts = {},
                              LexiconLoadReport* report = nullptr)
{
    LexiconLoadReport local;
    auto& rep = report ? *report : local;
    Lexicons lex;
    lex.valence = load_valence_norms(paths.valence, valence_opts, &rep.valence);
    lex.emotions = load_emotion_lexicon(paths.emotions, &rep.emotions);
    lex.synonyms = load_synonyms(paths.synonyms, true, &rep.synonyms);
    lex.antonyms = load_antonyms(paths.antonyms, true, &rep.antonyms);
    return lex;
}

struct IngestReport {
    std::size_t documents = 0;
    std::size_t dropped_short = 0;
    std::size_t sentences = 0;
    std::size_t unparsed = 0;
    std::vector<std::string> rejected;  // CoNLL-U sentences failing tree checks
};

/// Cleans, filters and parses one-document-per-line text with the rule-based
/// parser. Documents are parsed in parallel; output keeps corpus order.
inline std::vector<ParsedSentence> parse_text_corpus(const std::vector<RawDocument>& docs, const WordLists& lists,
                                                     std::size_t min_words, IngestReport* report = nullptr)
{
    IngestReport local;
    auto& rep = report ? *report : local;
    rep.documents = docs.size();
    std::vector<RawDocument> cleaned;
    cleaned.reserve(docs.size());
    for (const auto& d : docs) cleaned.push_back(clean_document(d));
    auto filtered = filter_short(std::move(cleaned), min_words);
    rep.dropped_short = filtered.dropped;

    const HeuristicParser parser(lists);
    std::vector<std::vector<ParsedSentence>> per_doc(filtered.kept.size());
    std::vector<std::size_t> unparsed(filtered.kept.size(), 0);
    parallel_for(filtered.kept.size(), [&](std::size_t i) {
        const auto& d = filtered.kept[i];
        for (const auto& s : split_sentences(d.text)) {
            auto outcome = parser.parse(s, d.id);
            if (outcome.sentence) per_doc[i].push_back(std::move(*outcome.sentence));
            else ++unparsed[i];
        }
    });
    std::vector<ParsedSentence> out;
    for (std::size_t i = 0; i < per_doc.size(); ++i) {
        rep.unparsed += unparsed[i];
        for (auto& s : per_doc[i]) out.push_back(std::move(s));
    }
    rep.sentences = out.size();
    return out;
}

inline std::vector<ParsedSentence> read_conllu_corpus(const std::string& path, IngestReport* report = nullptr)
{
    IngestReport local;
    auto& rep = report ? *report : local;
    auto r = parse_conllu_file(path);
    rep.sentences = r.sentences.size();
    rep.rejected = r.rejected;
    std::set<std::string> docs;
    for (const auto& s : r.sentences) docs.insert(s.doc_id);
    rep.documents = docs.size();
    return std::move(r.sentences);
}

/// Network from plain sentences, one document per string.
inline BuildResult build_from_texts(const std::vector<std::string>& texts, const Lexicons& lex, const WordLists& lists,
                                    std::size_t min_words = 3, const BuildConfig& config = {},
                                    IngestReport* report = nullptr)
{
    std::vector<RawDocument> docs;
    for (std::size_t i = 0; i < texts.size(); ++i) docs.push_back({"doc" + std::to_string(i + 1), texts[i]});
    return build_network(parse_text_corpus(docs, lists, min_words, report), lex, lists, config);
}

}  // namespace tfmn
