#include <sstream>

#include <gtest/gtest.h>

#include "tfmn/lexicons.hpp"
#include "tfmn/numeric.hpp"
#include "tfmn/pipeline.hpp"

using namespace tfmn;

namespace {

ValenceLexicon valence_from(const std::string& csv, LoadReport* rep = nullptr)
{
    std::istringstream in(csv);
    return load_valence_norms(in, {}, rep);
}

}  // namespace

TEST(Quantiles, LinearInterpolation)
{
    const std::vector<double> four{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(quantile_type7(four, 0.25), 1.75);
    EXPECT_DOUBLE_EQ(quantile_type7(four, 0.75), 3.25);
    // numpy.percentile (linear) on the same sorted sample
    std::vector<double> v{6.1, 2.5, 7.9, 4.4, 5.0, 3.3, 8.2, 1.7, 5.5, 6.6, 4.9};
    std::sort(v.begin(), v.end());
    EXPECT_NEAR(quantile_type7(v, 0.25), 3.85, 1e-12);
    EXPECT_NEAR(quantile_type7(v, 0.75), 6.35, 1e-12);
    EXPECT_DOUBLE_EQ(median(v), 5.0);
}

TEST(Valence, AveragesOverStem)
{
    auto lex = valence_from("Word,V.Mean.Sum\nweak,2.0\nweakness,3.0\nstrong,7\n");
    ASSERT_TRUE(lex.find("weak"));
    EXPECT_DOUBLE_EQ(lex.find("weak")->score, 2.5);
    EXPECT_EQ(lex.find("weak")->word_count, 2);
    EXPECT_EQ(lex.size(), 2u);
}

TEST(Valence, QuartilesOverStemScores)
{
    auto lex = valence_from("Word,V.Mean.Sum\na,1\nb,2\nc,3\nd,4\n");
    EXPECT_DOUBLE_EQ(lex.q1(), 1.75);
    EXPECT_DOUBLE_EQ(lex.q3(), 3.25);
    EXPECT_EQ(lex.label("d"), ValenceLabel::positive);
    EXPECT_EQ(lex.label("a"), ValenceLabel::negative);
    EXPECT_EQ(lex.label("b"), ValenceLabel::neutral);
    EXPECT_EQ(lex.label_for_score(3.25), ValenceLabel::neutral);
    EXPECT_EQ(lex.label_for_score(1.75), ValenceLabel::neutral);
    EXPECT_EQ(lex.label("zzz"), ValenceLabel::unrated);
}

TEST(Valence, StemAveragingHappensBeforeQuartiles)
{
    // Raw scores {1,3,5,7,9}; "walk"/"walking" share a stem so stem scores are {2,5,7,9}.
    auto lex = valence_from("Word,V.Mean.Sum\nwalk,1\nwalking,3\nb,5\nc,7\nd,9\n");
    EXPECT_DOUBLE_EQ(lex.q1(), quantile_type7(std::vector<double>{2, 5, 7, 9}, 0.25));
    EXPECT_DOUBLE_EQ(lex.q1(), 4.25);
}

TEST(Valence, QuarterSplitUnderDistinctScores)
{
    std::string csv = "Word,V.Mean.Sum\n";
    const char* words[] = {"alpha", "bravo", "charli", "delta", "echo", "foxtrot", "golf", "hotel", "india"};
    for (int i = 0; i < 9; ++i) csv += std::string(words[i]) + "," + std::to_string(1 + i * 0.75) + "\n";
    auto lex = valence_from(csv);
    int pos = 0, neg = 0;
    for (const auto& [s, e] : lex.entries()) {
        pos += lex.label(s) == ValenceLabel::positive;
        neg += lex.label(s) == ValenceLabel::negative;
    }
    EXPECT_EQ(pos, 2);
    EXPECT_EQ(neg, 2);
}

TEST(Valence, ConfigurableColumns)
{
    std::istringstream in("term;score\nlove;8.0\nhate;2.0\n");
    ValenceCsvOptions opt;
    opt.word_column = "term";
    opt.score_column = "score";
    opt.separator = ';';
    auto lex = load_valence_norms(in, opt);
    EXPECT_DOUBLE_EQ(lex.find("love")->score, 8.0);
}

TEST(Valence, Errors)
{
    try {
        valence_from("");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("no entries"), std::string::npos);
    }
    EXPECT_THROW(valence_from("Word,V.Mean.Sum\n"), Error);
    EXPECT_THROW(valence_from("Word,Other\nlove,8\n"), Error);
    try {
        valence_from("Word,V.Mean.Sum\nlove,eight\nhate,12\nok,5\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "load_failure");
        ASSERT_EQ(e.details().size(), 2u);
        EXPECT_NE(e.details()[0].find("row 2"), std::string::npos);
        EXPECT_NE(e.details()[1].find("row 3"), std::string::npos);
    }
}

TEST(Valence, NonAlphabeticWordsSkippedWithWarning)
{
    LoadReport rep;
    auto lex = valence_from("Word,V.Mean.Sum\nlove,8\nt-shirt,5\n", &rep);
    EXPECT_EQ(lex.size(), 1u);
    EXPECT_EQ(rep.rows, 2u);
    EXPECT_EQ(rep.ignored, 1u);
    EXPECT_EQ(rep.warnings.size(), 1u);
}

TEST(Emotions, FlagsAndStemUnion)
{
    std::istringstream in("win\tjoy\t1\nwin\tanger\t0\nkill\tanger\t1\nkilling\tfear\t1\n"
                          "win\tpositive\t1\nwin\tlove\t1\nblank\tjoy\t0\n");
    LoadReport rep;
    auto lex = load_emotion_lexicon(in, &rep);
    EXPECT_EQ(lex.emotions("win").members(), std::vector<Emotion>{Emotion::joy});
    auto kill = lex.emotions("kill");
    EXPECT_TRUE(kill.contains(Emotion::anger));
    EXPECT_TRUE(kill.contains(Emotion::fear));
    EXPECT_EQ(kill.members().size(), 2u);
    EXPECT_TRUE(lex.contains("blank"));
    EXPECT_TRUE(lex.emotions("blank").empty());
    EXPECT_EQ(rep.ignored, 2u);
    EXPECT_EQ(rep.warnings.size(), 1u);  // "love"; sentiment rows are silent
}

TEST(Emotions, MalformedRowsListed)
{
    std::istringstream in("win\tjoy\nwin\tjoy\t2\nwin\tjoy\t1\n");
    try {
        load_emotion_lexicon(in);
        FAIL();
    } catch (const Error& e) {
        ASSERT_EQ(e.details().size(), 2u);
        EXPECT_NE(e.details()[0].find("row 1"), std::string::npos);
        EXPECT_NE(e.details()[1].find("row 2"), std::string::npos);
    }
}

TEST(Pairs, SymmetricDedupedNoSelf)
{
    std::istringstream in("famous\tnotable\nnotable\tfamous\nquiet\tquiet\n");
    LoadReport rep;
    auto syn = load_synonyms(in, true, &rep);
    EXPECT_EQ(syn.size(), 1u);
    EXPECT_TRUE(syn.contains("famou", "notabl"));
    EXPECT_TRUE(syn.contains("notabl", "famou"));
    EXPECT_EQ(syn.synonyms("famou").count("notabl"), 1u);
    EXPECT_EQ(syn.synonyms("notabl").count("famou"), 1u);
    EXPECT_FALSE(syn.contains("quiet", "quiet"));
    EXPECT_EQ(rep.ignored, 1u);
}

TEST(Pairs, WrongFieldCount)
{
    std::istringstream in("a\tb\tc\n");
    EXPECT_THROW(load_antonyms(in), Error);
}

TEST(Pairs, AntonymPreferredIsSmallest)
{
    std::istringstream in("appreciation\tdisgust\n");
    auto ant = load_antonyms(in);
    EXPECT_EQ(ant.preferred(stem("appreciation")), stem("disgust"));
    std::istringstream in2("good\tbad\ngood\tevil\n");
    auto ant2 = load_antonyms(in2, false);
    EXPECT_EQ(ant2.preferred("good"), "bad");
    EXPECT_EQ(ant2.preferred("evil"), "good");
    EXPECT_FALSE(ant2.preferred("neutral"));
}

TEST(BundledLexicons, LoadCleanly)
{
    LexiconLoadReport rep;
    auto lex = load_lexicons(LexiconPaths::in_directory(TFMN_DATA_DIR "/lexicons"), {}, &rep);
    EXPECT_GT(lex.valence.size(), 300u);
    EXPECT_LT(lex.valence.q1(), lex.valence.q3());
    EXPECT_TRUE(lex.synonyms.contains(stem("famous"), stem("notable")));
    EXPECT_EQ(lex.antonyms.preferred(stem("appreciation")), stem("disgust"));
    EXPECT_EQ(rep.valence.ignored, 0u);
    EXPECT_TRUE(rep.emotions.warnings.empty());
    EXPECT_EQ(rep.synonyms.ignored, 0u);
    EXPECT_EQ(rep.antonyms.ignored, 0u);
}
