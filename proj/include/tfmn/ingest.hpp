#pragma once

// Corpus reading and tweet-style cleaning.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tfmn/error.hpp"
#include "tfmn/text.hpp"

namespace tfmn {

struct RawDocument {
    std::string id;
    std::string text;

    friend bool operator==(const RawDocument&, const RawDocument&) = default;
};

namespace ingest_detail {

// Decodes one UTF-8 sequence starting at s[i]; advances i. Invalid bytes are
// returned as themselves so the text passes through unchanged.
inline std::uint32_t next_codepoint(std::string_view s, std::size_t& i, std::size_t& len)
{
    const auto c = static_cast<unsigned char>(s[i]);
    len = 1;
    std::uint32_t cp = c;
    if (c >= 0xF0 && i + 3 < s.size()) {
        len = 4;
        cp = ((c & 0x07u) << 18) | ((static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 12) |
             ((static_cast<unsigned char>(s[i + 2]) & 0x3Fu) << 6) |
             (static_cast<unsigned char>(s[i + 3]) & 0x3Fu);
    } else if (c >= 0xE0 && c < 0xF0 && i + 2 < s.size()) {
        len = 3;
        cp = ((c & 0x0Fu) << 12) | ((static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 6) |
             (static_cast<unsigned char>(s[i + 2]) & 0x3Fu);
    } else if (c >= 0xC0 && c < 0xE0 && i + 1 < s.size()) {
        len = 2;
        cp = ((c & 0x1Fu) << 6) | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
    }
    i += len;
    return cp;
}

inline bool pictographic(std::uint32_t cp)
{
    return (cp >= 0x1F000 && cp <= 0x1FAFF)   // emoji, symbols, flags
        || (cp >= 0x2600 && cp <= 0x27BF)     // misc symbols, dingbats
        || (cp >= 0x2B00 && cp <= 0x2BFF)     // arrows, stars
        || (cp >= 0x2190 && cp <= 0x21FF)     // arrows
        || (cp >= 0x2300 && cp <= 0x23FF)     // misc technical (watch, hourglass)
        || cp == 0x200D || cp == 0xFE0F || cp == 0xFE0E || cp == 0x20E3
        || (cp >= 0xE0020 && cp <= 0xE007F);  // tag sequences
}

inline bool is_url(std::string_view tok)
{
    const auto t = text::lower(tok);
    return t.starts_with("http://") || t.starts_with("https://") || t.starts_with("www.");
}

inline bool is_emoticon(std::string_view tok)
{
    if (tok == "<3" || tok == "</3") return true;
    if (tok.size() < 2 || tok.size() > 4) return false;
    constexpr std::string_view eyes = ":;=";
    constexpr std::string_view parts = ":;=-^'()[]{}DPpOo3<>/\\|*xX";
    bool has_eyes = false;
    for (char c : tok) {
        if (parts.find(c) == std::string_view::npos) return false;
        if (eyes.find(c) != std::string_view::npos) has_eyes = true;
    }
    return has_eyes;
}

}  // namespace ingest_detail

/// Strips '#' (keeping the hashtag word), drops URLs, @mentions, emoji and
/// ASCII emoticons, and collapses whitespace. Idempotent.
inline RawDocument clean_document(const RawDocument& doc)
{
    std::string no_pictos;
    no_pictos.reserve(doc.text.size());
    for (std::size_t i = 0; i < doc.text.size();) {
        std::size_t len = 0;
        const auto start = i;
        const auto cp = ingest_detail::next_codepoint(doc.text, i, len);
        if (ingest_detail::pictographic(cp)) {
            no_pictos.push_back(' ');
            continue;
        }
        no_pictos.append(doc.text, start, len);
    }
    std::erase(no_pictos, '#');

    std::string out;
    for (const auto& tok : text::split_whitespace(no_pictos)) {
        if (ingest_detail::is_url(tok) || tok.front() == '@' || ingest_detail::is_emoticon(tok))
            continue;
        if (!out.empty()) out.push_back(' ');
        out += tok;
    }
    return {doc.id, std::move(out)};
}

/// Whitespace-delimited tokens containing at least one letter or digit.
inline std::size_t word_count(std::string_view s)
{
    std::size_t n = 0;
    for (const auto& tok : text::split_whitespace(s))
        for (unsigned char c : tok)
            if (std::isalnum(c)) {
                ++n;
                break;
            }
    return n;
}

struct FilterResult {
    std::vector<RawDocument> kept;
    std::size_t dropped = 0;
};

inline FilterResult filter_short(std::vector<RawDocument> docs, std::size_t min_words = 3)
{
    FilterResult r;
    for (auto& d : docs) {
        if (word_count(d.text) < min_words) ++r.dropped;
        else r.kept.push_back(std::move(d));
    }
    return r;
}

/// Splits on '.', '!' or '?' followed by whitespace or end of text. The
/// terminator stays with its sentence.
inline std::vector<std::string> split_sentences(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c != '.' && c != '!' && c != '?') continue;
        std::size_t j = i + 1;
        while (j < s.size() && (s[j] == '.' || s[j] == '!' || s[j] == '?')) ++j;
        if (j == s.size() || std::isspace(static_cast<unsigned char>(s[j]))) {
            auto piece = text::trim(s.substr(start, j - start));
            if (!piece.empty()) out.emplace_back(piece);
            start = j;
            i = j - 1;
        }
    }
    auto rest = text::trim(s.substr(std::min(start, s.size())));
    if (!rest.empty()) out.emplace_back(rest);
    return out;
}

/// One document per line as `id<TAB>text`. Lines without a tab get the id
/// `line-<n>`. Duplicate ids are rejected.
inline std::vector<RawDocument> read_corpus(std::istream& in)
{
    std::vector<RawDocument> docs;
    std::set<std::string> seen;
    std::vector<std::string> dupes;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        text::strip_cr(line);
        if (text::trim(line).empty()) continue;
        RawDocument d;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            d.id = "line-" + std::to_string(line_no);
            d.text = std::string(text::trim(line));
        } else {
            d.id = std::string(text::trim(std::string_view(line).substr(0, tab)));
            d.text = std::string(text::trim(std::string_view(line).substr(tab + 1)));
        }
        if (!seen.insert(d.id).second) dupes.push_back("line " + std::to_string(line_no) + ": '" + d.id + "'");
        docs.push_back(std::move(d));
    }
    if (!dupes.empty()) throw Error("corpus_error", "duplicate document ids", dupes);
    return docs;
}

inline std::vector<RawDocument> read_corpus(const std::string& path)
{
    auto in = text::open_input(path);
    return read_corpus(in);
}

}  // namespace tfmn
