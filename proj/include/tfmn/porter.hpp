#pragma once

// Porter (1980) suffix-stripping stemmer, following the published rule
// tables (no later departures such as "logi" -> "log").

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>

#include "tfmn/error.hpp"

namespace tfmn {

namespace porter_detail {

class Word {
public:
    explicit Word(std::string w) : b_(std::move(w)) {}

    std::string& str() { return b_; }

    bool consonant(std::size_t i) const
    {
        switch (b_[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
            return false;
        case 'y':
            return i == 0 ? true : !consonant(i - 1);
        default:
            return true;
        }
    }

    // Number of VC sequences in b_[0, len).
    int measure(std::size_t len) const
    {
        int m = 0;
        std::size_t i = 0;
        while (i < len && consonant(i)) ++i;
        while (i < len) {
            while (i < len && !consonant(i)) ++i;
            if (i >= len) break;
            while (i < len && consonant(i)) ++i;
            ++m;
        }
        return m;
    }

    bool has_vowel(std::size_t len) const
    {
        for (std::size_t i = 0; i < len; ++i)
            if (!consonant(i)) return true;
        return false;
    }

    bool double_consonant(std::size_t len) const
    {
        return len >= 2 && b_[len - 1] == b_[len - 2] && consonant(len - 1);
    }

    // cvc where the final c is not w, x or y.
    bool cvc(std::size_t len) const
    {
        if (len < 3) return false;
        if (!consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) return false;
        const char c = b_[len - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends(std::string_view s) const
    {
        return b_.size() >= s.size() && std::string_view(b_).substr(b_.size() - s.size()) == s;
    }

    std::size_t stem_len(std::string_view suffix) const { return b_.size() - suffix.size(); }

    void replace(std::string_view suffix, std::string_view with)
    {
        b_.resize(b_.size() - suffix.size());
        b_.append(with);
    }

private:
    std::string b_;
};

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// First rule whose suffix matches decides; the replacement happens only when
// the measure of the remaining stem exceeds `min_measure`.
template <std::size_t N>
inline bool apply_first(Word& w, const Rule (&rules)[N], int min_measure)
{
    for (const auto& r : rules) {
        if (w.ends(r.suffix)) {
            if (w.measure(w.stem_len(r.suffix)) > min_measure) w.replace(r.suffix, r.replacement);
            return true;
        }
    }
    return false;
}

inline void step1a(Word& w)
{
    if (w.ends("sses")) w.replace("sses", "ss");
    else if (w.ends("ies")) w.replace("ies", "i");
    else if (w.ends("ss")) return;
    else if (w.ends("s")) w.replace("s", "");
}

inline void step1b(Word& w)
{
    if (w.ends("eed")) {
        if (w.measure(w.stem_len("eed")) > 0) w.replace("eed", "ee");
        return;
    }
    bool stripped = false;
    if (w.ends("ed") && w.has_vowel(w.stem_len("ed"))) {
        w.replace("ed", "");
        stripped = true;
    } else if (w.ends("ing") && w.has_vowel(w.stem_len("ing"))) {
        w.replace("ing", "");
        stripped = true;
    }
    if (!stripped) return;

    if (w.ends("at")) w.replace("at", "ate");
    else if (w.ends("bl")) w.replace("bl", "ble");
    else if (w.ends("iz")) w.replace("iz", "ize");
    else {
        const auto len = w.str().size();
        if (w.double_consonant(len)) {
            const char last = w.str().back();
            if (last != 'l' && last != 's' && last != 'z') w.str().pop_back();
        } else if (w.measure(len) == 1 && w.cvc(len)) {
            w.str().push_back('e');
        }
    }
}

inline void step1c(Word& w)
{
    if (w.ends("y") && w.has_vowel(w.stem_len("y"))) w.replace("y", "i");
}

inline void step2(Word& w)
{
    static constexpr Rule rules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
    };
    apply_first(w, rules, 0);
}

inline void step3(Word& w)
{
    static constexpr Rule rules[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    };
    apply_first(w, rules, 0);
}

inline void step4(Word& w)
{
    static constexpr std::string_view suffixes[] = {
        "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
        "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize",
    };
    // Longest match first, so "ement" wins over "ment" and "ent".
    std::string_view match;
    for (auto s : suffixes)
        if (w.ends(s) && s.size() > match.size()) match = s;
    if (match.empty()) return;
    const auto len = w.stem_len(match);
    if (match == "ion") {
        if (len == 0) return;
        const char c = w.str()[len - 1];
        if (c != 's' && c != 't') return;
    }
    if (w.measure(len) > 1) w.replace(match, "");
}

inline void step5(Word& w)
{
    if (w.ends("e")) {
        const auto len = w.stem_len("e");
        const int m = w.measure(len);
        if (m > 1 || (m == 1 && !w.cvc(len))) w.replace("e", "");
    }
    const auto len = w.str().size();
    if (w.measure(len) > 1 && w.double_consonant(len) && w.str().back() == 'l') w.str().pop_back();
}

}  // namespace porter_detail

/// True when `word` is a nonempty run of ASCII letters.
inline bool is_alphabetic(std::string_view word)
{
    return !word.empty() && std::all_of(word.begin(), word.end(), [](unsigned char c) {
        return std::isalpha(c) != 0;
    });
}

/// Porter stem of an alphabetic token. Uppercase input is folded first.
inline std::string stem(std::string_view word)
{
    if (!is_alphabetic(word))
        throw Error("invalid_token", "cannot stem '" + std::string(word) +
                                         "': expected a nonempty alphabetic token");
    std::string lower(word);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower.size() <= 2) return lower;

    porter_detail::Word w(std::move(lower));
    porter_detail::step1a(w);
    porter_detail::step1b(w);
    porter_detail::step1c(w);
    porter_detail::step2(w);
    porter_detail::step3(w);
    porter_detail::step4(w);
    porter_detail::step5(w);
    return std::move(w.str());
}

}  // namespace tfmn
