#include <gtest/gtest.h>

#include "tfmn/heuristic_parser.hpp"
#include "tfmn/ingest.hpp"

using namespace tfmn;

namespace {

const WordLists& lists()
{
    static const WordLists wl = WordLists::load(TFMN_DATA_DIR "/wordlists");
    return wl;
}

ParsedSentence parse(const std::string& s)
{
    auto o = HeuristicParser(lists()).parse(s);
    if (!o.sentence) throw std::runtime_error("unparsed: " + s + " (" + o.reason + ")");
    return *o.sentence;
}

const Token& tok(const ParsedSentence& s, const std::string& surface)
{
    for (const auto& t : s.tokens)
        if (t.surface == surface) return t;
    throw std::runtime_error("no token " + surface);
}

}  // namespace

TEST(HeuristicParser, CopulaSentence)
{
    auto s = parse("love is weakness");
    EXPECT_EQ(tok(s, "weakness").head, 0);
    EXPECT_EQ(tok(s, "love").deprel, "nsubj");
    EXPECT_EQ(tok(s, "love").head, tok(s, "weakness").index);
    EXPECT_EQ(tok(s, "is").deprel, "cop");
    EXPECT_EQ(tok(s, "is").head, tok(s, "weakness").index);
}

TEST(HeuristicParser, PrepositionalObject)
{
    auto s = parse("the cat sat on the chair");
    const int sat = tok(s, "sat").index;
    const int chair = tok(s, "chair").index;
    EXPECT_EQ(tok(s, "sat").head, 0);
    EXPECT_EQ(tok(s, "sat").lemma, "sit");
    EXPECT_EQ(tok(s, "cat").deprel, "nsubj");
    EXPECT_EQ(tok(s, "cat").head, sat);
    EXPECT_EQ(tok(s, "chair").deprel, "obl");
    EXPECT_EQ(tok(s, "chair").head, sat);
    EXPECT_EQ(tok(s, "on").deprel, "case");
    EXPECT_EQ(tok(s, "on").head, chair);
    for (const auto& t : s.tokens)
        if (t.surface == "the") {
            EXPECT_EQ(t.deprel, "det");
        }
}

TEST(HeuristicParser, NoVerbOrNoun)
{
    auto o = HeuristicParser(lists()).parse("wow");
    EXPECT_FALSE(o.sentence);
    EXPECT_FALSE(o.reason.empty());
    EXPECT_FALSE(HeuristicParser(lists()).parse("").sentence);
}

TEST(HeuristicParser, Contractions)
{
    const auto toks = HeuristicParser(lists()).tokenize("Don't stop, self-organised!");
    const std::vector<std::string> want{"do", "n't", "stop", ",", "self", "organised", "!"};
    EXPECT_EQ(toks, want);
}

TEST(HeuristicParser, TreesAreValidOnBundledCorpora)
{
    for (const char* name : {"/corpora/complexity_explained.txt", "/corpora/stem_gender_synthetic.txt"}) {
        std::size_t parsed = 0;
        for (const auto& d : read_corpus(std::string(TFMN_DATA_DIR) + name))
            for (const auto& sent : split_sentences(clean_document(d).text)) {
                auto o = HeuristicParser(lists()).parse(sent, d.id);
                if (!o.sentence) continue;
                ++parsed;
                EXPECT_FALSE(validate_tree(*o.sentence)) << sent;
                EXPECT_EQ(o.sentence->doc_id, d.id);
            }
        EXPECT_GT(parsed, 0u) << name;
    }
}
