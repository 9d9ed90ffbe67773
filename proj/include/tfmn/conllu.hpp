#pragma once

// Dependency-tree sentences and a CoNLL-U reader/writer.

#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tfmn/error.hpp"
#include "tfmn/text.hpp"

namespace tfmn {

struct Token {
    int index = 0;  // 1-based
    std::string surface;
    std::string lemma;
    std::string upos;
    int head = 0;  // 0 = root
    std::string deprel;

    friend bool operator==(const Token&, const Token&) = default;
};

struct ParsedSentence {
    std::string doc_id;
    std::vector<Token> tokens;

    friend bool operator==(const ParsedSentence&, const ParsedSentence&) = default;
};

/// Describes the first tree violation, or nullopt for a well-formed tree.
inline std::optional<std::string> validate_tree(const ParsedSentence& s)
{
    const int n = static_cast<int>(s.tokens.size());
    if (n == 0) return "empty sentence";
    int roots = 0;
    for (int i = 0; i < n; ++i) {
        const auto& t = s.tokens[static_cast<std::size_t>(i)];
        if (t.index != i + 1)
            return "non-contiguous token index " + std::to_string(t.index) + " at position " +
                   std::to_string(i + 1);
        if (t.head < 0 || t.head > n)
            return "head " + std::to_string(t.head) + " of token " + std::to_string(t.index) +
                   " out of range [0, " + std::to_string(n) + "]";
        if (t.head == t.index) return "token " + std::to_string(t.index) + " is its own head";
        if (t.head == 0) ++roots;
    }
    if (roots != 1) return "expected exactly one root, found " + std::to_string(roots);
    for (int i = 1; i <= n; ++i) {
        int cur = i;
        for (int steps = 0; cur != 0; ++steps) {
            if (steps > n) return "cycle through token " + std::to_string(i);
            cur = s.tokens[static_cast<std::size_t>(cur - 1)].head;
        }
    }
    return std::nullopt;
}

struct ConlluReadResult {
    std::vector<ParsedSentence> sentences;
    std::vector<std::string> rejected;  // "line N: reason"
};

namespace conllu_detail {

inline std::optional<int> parse_int(std::string_view s)
{
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

inline std::string field_or_empty(const std::string& f) { return f == "_" ? std::string() : f; }

}  // namespace conllu_detail

/// Reads every sentence block. Multiword-token ranges and empty nodes are
/// skipped; invalid trees are rejected per sentence; malformed lines abort.
/// `# newdoc id = X` sets the document id of the sentences that follow.
inline ConlluReadResult parse_conllu(std::istream& in, std::string default_doc_id = "doc")
{
    using conllu_detail::parse_int;
    ConlluReadResult result;
    std::string doc_id = std::move(default_doc_id);
    ParsedSentence current;
    std::size_t block_start = 0;
    bool dirty = false;  // a token line was seen in the current block

    const auto flush = [&] {
        if (!dirty) return;
        current.doc_id = doc_id;
        if (auto err = validate_tree(current))
            result.rejected.push_back("line " + std::to_string(block_start) + ": " + *err);
        else
            result.sentences.push_back(std::move(current));
        current = {};
        dirty = false;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        text::strip_cr(line);
        if (text::trim(line).empty()) {
            flush();
            continue;
        }
        if (line.front() == '#') {
            auto body = text::trim(std::string_view(line).substr(1));
            if (body.starts_with("newdoc id")) {
                const auto eq = body.find('=');
                if (eq != std::string_view::npos) {
                    flush();
                    doc_id = std::string(text::trim(body.substr(eq + 1)));
                }
            }
            continue;
        }
        auto fields = text::split(line, '\t');
        if (fields.size() != 10)
            throw Error("parse_error", "line " + std::to_string(line_no) + ": expected 10 fields, got " +
                                           std::to_string(fields.size()));
        const auto& id = fields[0];
        if (id.find('-') != std::string::npos || id.find('.') != std::string::npos) continue;
        const auto index = parse_int(id);
        if (!index) throw Error("parse_error", "line " + std::to_string(line_no) + ": bad token id '" + id + "'");
        const auto head = parse_int(fields[6]);
        if (!head) throw Error("parse_error", "line " + std::to_string(line_no) + ": bad head '" + fields[6] + "'");
        if (!dirty) block_start = line_no;
        dirty = true;
        Token t;
        t.index = *index;
        t.surface = fields[1];
        t.lemma = conllu_detail::field_or_empty(fields[2]);
        if (t.lemma.empty()) t.lemma = t.surface;
        t.upos = fields[3];
        t.head = *head;
        t.deprel = fields[7];
        current.tokens.push_back(std::move(t));
    }
    flush();
    return result;
}

inline ConlluReadResult parse_conllu_file(const std::string& path)
{
    auto in = text::open_input(path);
    return parse_conllu(in);
}

/// Writes one sentence block followed by a blank line.
inline void write_conllu(std::ostream& out, const ParsedSentence& s)
{
    for (const auto& t : s.tokens) {
        out << t.index << '\t' << t.surface << '\t' << (t.lemma.empty() ? "_" : t.lemma) << '\t'
            << (t.upos.empty() ? "_" : t.upos) << "\t_\t_\t" << t.head << '\t'
            << (t.deprel.empty() ? "_" : t.deprel) << "\t_\t_\n";
    }
    out << '\n';
}

/// Serializes sentences, emitting `# newdoc id` whenever the document changes.
inline std::string to_conllu(const std::vector<ParsedSentence>& sentences)
{
    std::ostringstream out;
    std::optional<std::string> doc;
    for (const auto& s : sentences) {
        if (!doc || *doc != s.doc_id) {
            out << "# newdoc id = " << s.doc_id << '\n';
            doc = s.doc_id;
        }
        write_conllu(out, s);
    }
    return out.str();
}

}  // namespace tfmn
