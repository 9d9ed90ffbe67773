#pragma once

// Affect and semantic resources keyed by word stem: valence norms, the
// word-emotion association table, and synonym/antonym pair tables.

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tfmn/emotion.hpp"
#include "tfmn/error.hpp"
#include "tfmn/numeric.hpp"
#include "tfmn/porter.hpp"
#include "tfmn/text.hpp"

namespace tfmn {

enum class ValenceLabel { positive, neutral, negative, unrated };

inline constexpr std::string_view to_string(ValenceLabel v)
{
    switch (v) {
    case ValenceLabel::positive: return "positive";
    case ValenceLabel::neutral: return "neutral";
    case ValenceLabel::negative: return "negative";
    case ValenceLabel::unrated: return "unrated";
    }
    return "unrated";
}

inline std::optional<ValenceLabel> parse_valence_label(std::string_view s)
{
    for (auto v : {ValenceLabel::positive, ValenceLabel::neutral, ValenceLabel::negative,
                   ValenceLabel::unrated})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

/// Rows skipped or tolerated while loading a resource.
struct LoadReport {
    std::size_t rows = 0;
    std::size_t ignored = 0;
    std::vector<std::string> warnings;
};

struct ValenceScale {
    double min = 1.0;
    double max = 9.0;
};

struct ValenceEntry {
    double score = 0.0;
    int word_count = 0;
};

/// Stem-level valence scores with quartile bounds over the stem distribution.
class ValenceLexicon {
public:
    ValenceLexicon() = default;

    ValenceLexicon(std::map<std::string, ValenceEntry> entries, ValenceScale scale)
        : entries_(std::move(entries))
        , scale_(scale)
    {
        if (entries_.empty()) throw Error("load_failure", "valence lexicon: no entries");
        std::vector<double> scores;
        scores.reserve(entries_.size());
        for (const auto& [stem, e] : entries_) {
            if (e.score < scale.min || e.score > scale.max)
                throw Error("load_failure", "valence score for '" + stem + "' outside scale");
            scores.push_back(e.score);
        }
        std::sort(scores.begin(), scores.end());
        q1_ = quantile_type7(scores, 0.25);
        q3_ = quantile_type7(scores, 0.75);
    }

    std::optional<ValenceEntry> find(std::string_view stem) const
    {
        auto it = entries_.find(std::string(stem));
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    /// Interquartile range is closed: scores equal to q1 or q3 are neutral.
    ValenceLabel label_for_score(double score) const
    {
        if (score > q3_) return ValenceLabel::positive;
        if (score < q1_) return ValenceLabel::negative;
        return ValenceLabel::neutral;
    }

    ValenceLabel label(std::string_view stem) const
    {
        auto e = find(stem);
        return e ? label_for_score(e->score) : ValenceLabel::unrated;
    }

    double q1() const { return q1_; }
    double q3() const { return q3_; }
    ValenceScale scale() const { return scale_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::map<std::string, ValenceEntry>& entries() const { return entries_; }

private:
    std::map<std::string, ValenceEntry> entries_;
    ValenceScale scale_;
    double q1_ = 0.0;
    double q3_ = 0.0;
};

inline ValenceLabel valence_label(const ValenceLexicon& lexicon, std::string_view stem)
{
    return lexicon.label(stem);
}

struct ValenceCsvOptions {
    std::string word_column = "Word";
    std::string score_column = "V.Mean.Sum";
    ValenceScale scale;
    char separator = ',';
};

namespace lexicon_detail {

inline std::optional<double> parse_double(std::string_view s)
{
    s = text::trim(s);
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

inline std::string row_ref(std::size_t line_no) { return "row " + std::to_string(line_no); }

}  // namespace lexicon_detail

/// Reads valence norms, averages scores over words sharing a stem and
/// computes quartiles over the resulting stem scores.
inline ValenceLexicon load_valence_norms(std::istream& in, const ValenceCsvOptions& opts = {},
                                         LoadReport* report = nullptr)
{
    using lexicon_detail::row_ref;
    LoadReport local;
    LoadReport& rep = report ? *report : local;

    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> word_col, score_col;
    std::size_t header_fields = 0;
    while (std::getline(in, line)) {
        ++line_no;
        text::strip_cr(line);
        if (text::trim(line).empty()) continue;
        auto header = text::split_csv(line, opts.separator);
        header_fields = header.size();
        for (std::size_t i = 0; i < header.size(); ++i) {
            const auto name = text::trim(header[i]);
            if (name == opts.word_column) word_col = i;
            if (name == opts.score_column) score_col = i;
        }
        break;
    }
    if (header_fields == 0) throw Error("load_failure", "valence norms: no entries");
    std::vector<std::string> missing;
    if (!word_col) missing.push_back("missing column '" + opts.word_column + "'");
    if (!score_col) missing.push_back("missing column '" + opts.score_column + "'");
    if (!missing.empty())
        throw Error("load_failure", "valence norms: required columns absent", missing);

    std::map<std::string, std::pair<double, int>> sums;
    std::vector<std::string> bad_rows;
    while (std::getline(in, line)) {
        ++line_no;
        text::strip_cr(line);
        if (text::trim(line).empty()) continue;
        ++rep.rows;
        auto fields = text::split_csv(line, opts.separator);
        if (fields.size() <= std::max(*word_col, *score_col)) {
            bad_rows.push_back(row_ref(line_no) + ": too few fields");
            continue;
        }
        const auto score = lexicon_detail::parse_double(fields[*score_col]);
        if (!score) {
            bad_rows.push_back(row_ref(line_no) + ": unparsable score '" + fields[*score_col] + "'");
            continue;
        }
        if (*score < opts.scale.min || *score > opts.scale.max) {
            bad_rows.push_back(row_ref(line_no) + ": score " + fields[*score_col] +
                               " outside scale");
            continue;
        }
        const auto word = text::lower(text::trim(fields[*word_col]));
        if (!is_alphabetic(word)) {
            ++rep.ignored;
            rep.warnings.push_back(row_ref(line_no) + ": non-alphabetic word '" + word +
                                   "' skipped");
            continue;
        }
        auto& acc = sums[stem(word)];
        acc.first += *score;
        acc.second += 1;
    }
    if (!bad_rows.empty())
        throw Error("load_failure", "valence norms: " + std::to_string(bad_rows.size()) +
                                        " malformed row(s)",
                    bad_rows);
    if (sums.empty()) throw Error("load_failure", "valence norms: no entries");

    std::map<std::string, ValenceEntry> entries;
    for (const auto& [s, acc] : sums) entries.emplace(s, ValenceEntry{acc.first / acc.second, acc.second});
    return ValenceLexicon(std::move(entries), opts.scale);
}

inline ValenceLexicon load_valence_norms(const std::string& path, const ValenceCsvOptions& opts = {},
                                         LoadReport* report = nullptr)
{
    auto in = text::open_input(path);
    return load_valence_norms(in, opts, report);
}

/// Stem -> emotions evoked. A known stem may carry an empty set.
class EmotionLexicon {
public:
    EmotionLexicon() = default;
    explicit EmotionLexicon(std::map<std::string, EmotionSet> entries) : entries_(std::move(entries)) {}

    EmotionSet emotions(std::string_view stem) const
    {
        auto it = entries_.find(std::string(stem));
        return it == entries_.end() ? EmotionSet{} : it->second;
    }
    bool contains(std::string_view stem) const { return entries_.count(std::string(stem)) != 0; }
    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, EmotionSet>& entries() const { return entries_; }

private:
    std::map<std::string, EmotionSet> entries_;
};

/// `word<TAB>emotion<TAB>flag` rows. Flagged rows are unioned per stem;
/// sentiment rows (positive/negative) are skipped silently, any other
/// out-of-universe label is skipped with a warning.
inline EmotionLexicon load_emotion_lexicon(std::istream& in, LoadReport* report = nullptr)
{
    using lexicon_detail::row_ref;
    LoadReport local;
    LoadReport& rep = report ? *report : local;

    std::map<std::string, EmotionSet> entries;
    std::vector<std::string> bad_rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        text::strip_cr(line);
        if (text::trim(line).empty() || line.front() == '#') continue;
        ++rep.rows;
        auto fields = text::split(line, '\t');
        if (fields.size() != 3) {
            bad_rows.push_back(row_ref(line_no) + ": expected 3 tab-separated fields");
            continue;
        }
        const auto flag = text::trim(fields[2]);
        if (flag != "0" && flag != "1") {
            bad_rows.push_back(row_ref(line_no) + ": flag must be 0 or 1");
            continue;
        }
        const auto word = text::lower(text::trim(fields[0]));
        const auto label = text::lower(text::trim(fields[1]));
        const auto emotion = parse_emotion(label);
        if (!emotion) {
            ++rep.ignored;
            if (label != "positive" && label != "negative")
                rep.warnings.push_back(row_ref(line_no) + ": unknown emotion '" + label + "'");
            continue;
        }
        if (!is_alphabetic(word)) {
            ++rep.ignored;
            rep.warnings.push_back(row_ref(line_no) + ": non-alphabetic word '" + word + "'");
            continue;
        }
        auto& set = entries[stem(word)];
        if (flag == "1") set.insert(*emotion);
    }
    if (!bad_rows.empty())
        throw Error("load_failure", "emotion lexicon: " + std::to_string(bad_rows.size()) +
                                        " malformed row(s)",
                    bad_rows);
    return EmotionLexicon(std::move(entries));
}

inline EmotionLexicon load_emotion_lexicon(const std::string& path, LoadReport* report = nullptr)
{
    auto in = text::open_input(path);
    return load_emotion_lexicon(in, report);
}

using StemPair = std::pair<std::string, std::string>;

/// Unordered pair stored with the lexicographically smaller stem first.
inline StemPair make_pair_key(std::string a, std::string b)
{
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

/// Symmetric relation over stems without self-pairs.
class PairLexicon {
public:
    PairLexicon() = default;
    explicit PairLexicon(const std::set<StemPair>& pairs)
    {
        for (const auto& [a, b] : pairs) add(a, b);
    }

    /// Returns false for self-pairs, which are never stored.
    bool add(const std::string& a, const std::string& b)
    {
        if (a == b) return false;
        pairs_.insert(make_pair_key(a, b));
        index_[a].insert(b);
        index_[b].insert(a);
        return true;
    }

    bool contains(const std::string& a, const std::string& b) const
    {
        return a != b && pairs_.count(make_pair_key(a, b)) != 0;
    }

    const std::set<std::string>& related(const std::string& s) const
    {
        static const std::set<std::string> none;
        auto it = index_.find(s);
        return it == index_.end() ? none : it->second;
    }

    const std::set<StemPair>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }

private:
    std::set<StemPair> pairs_;
    std::map<std::string, std::set<std::string>> index_;
};

class SynonymLexicon : public PairLexicon {
public:
    using PairLexicon::PairLexicon;
    const std::set<std::string>& synonyms(const std::string& s) const { return related(s); }
};

class AntonymLexicon : public PairLexicon {
public:
    using PairLexicon::PairLexicon;

    /// Lexicographically smallest antonym, if any.
    std::optional<std::string> preferred(const std::string& s) const
    {
        const auto& r = related(s);
        if (r.empty()) return std::nullopt;
        return *r.begin();
    }
};

namespace lexicon_detail {

template <class Lexicon>
Lexicon load_pairs(std::istream& in, bool stem_at_load, LoadReport* report, std::string_view what)
{
    LoadReport local;
    LoadReport& rep = report ? *report : local;
    Lexicon lex;
    std::vector<std::string> bad_rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        text::strip_cr(line);
        if (text::trim(line).empty() || line.front() == '#') continue;
        ++rep.rows;
        auto fields = text::split(line, '\t');
        if (fields.size() != 2) {
            bad_rows.push_back(row_ref(line_no) + ": expected 2 tab-separated fields");
            continue;
        }
        auto a = text::lower(text::trim(fields[0]));
        auto b = text::lower(text::trim(fields[1]));
        if (!is_alphabetic(a) || !is_alphabetic(b)) {
            ++rep.ignored;
            rep.warnings.push_back(row_ref(line_no) + ": non-alphabetic entry skipped");
            continue;
        }
        if (stem_at_load) {
            a = stem(a);
            b = stem(b);
        }
        if (!lex.add(a, b)) {
            ++rep.ignored;
            rep.warnings.push_back(row_ref(line_no) + ": self-pair '" + a + "' dropped");
        }
    }
    if (!bad_rows.empty())
        throw Error("load_failure", std::string(what) + ": " + std::to_string(bad_rows.size()) +
                                        " malformed row(s)",
                    bad_rows);
    return lex;
}

}  // namespace lexicon_detail

inline SynonymLexicon load_synonyms(std::istream& in, bool stem_at_load = true,
                                    LoadReport* report = nullptr)
{
    return lexicon_detail::load_pairs<SynonymLexicon>(in, stem_at_load, report, "synonyms");
}

inline SynonymLexicon load_synonyms(const std::string& path, bool stem_at_load = true,
                                    LoadReport* report = nullptr)
{
    auto in = text::open_input(path);
    return load_synonyms(in, stem_at_load, report);
}

inline AntonymLexicon load_antonyms(std::istream& in, bool stem_at_load = true,
                                    LoadReport* report = nullptr)
{
    return lexicon_detail::load_pairs<AntonymLexicon>(in, stem_at_load, report, "antonyms");
}

inline AntonymLexicon load_antonyms(const std::string& path, bool stem_at_load = true,
                                    LoadReport* report = nullptr)
{
    auto in = text::open_input(path);
    return load_antonyms(in, stem_at_load, report);
}

/// The four resources a network build consumes.
struct Lexicons {
    ValenceLexicon valence;
    EmotionLexicon emotions;
    SynonymLexicon synonyms;
    AntonymLexicon antonyms;
};

}  // namespace tfmn
