#pragma once

// Closed-class word lists plus the small open-class dictionaries used by the
// rule-based parser. Each list is a plain one-word-per-line file.

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "tfmn/error.hpp"
#include "tfmn/text.hpp"

namespace tfmn {

struct IrregularForm {
    std::string lemma;
    std::string upos;  // NOUN, VERB, ADJ
};

struct WordLists {
    std::set<std::string> determiners;
    std::set<std::string> prepositions;
    std::set<std::string> modals;
    std::set<std::string> aux_verbs;  // do/have forms: auxiliary only before a verb
    std::set<std::string> copulas;    // forms of "be"
    std::set<std::string> negations;
    std::set<std::string> conjunctions;
    std::set<std::string> subordinators;
    std::set<std::string> pronouns;
    std::set<std::string> adverbs;
    std::set<std::string> adjectives;
    std::set<std::string> verbs;  // base forms
    std::set<std::string> interjections;
    std::map<std::string, IrregularForm> irregular;

    bool is_negation(std::string_view w) const { return negations.count(std::string(w)) != 0; }

    /// Words that never become network nodes whatever tag a parser gave them.
    bool is_closed_function_word(std::string_view w) const
    {
        const std::string s(w);
        return determiners.count(s) || prepositions.count(s) || modals.count(s) ||
               copulas.count(s) || conjunctions.count(s) || subordinators.count(s);
    }

    static WordLists load(const std::filesystem::path& dir)
    {
        const auto read = [&](const char* name, bool required = true) {
            const auto p = dir / name;
            if (!std::filesystem::exists(p)) {
                if (required) throw Error("io_error", "word list missing: " + p.string());
                return std::set<std::string>{};
            }
            auto in = text::open_input(p.string());
            auto words = text::read_word_list(in);
            return std::set<std::string>(words.begin(), words.end());
        };
        WordLists w;
        w.determiners = read("determiners.txt");
        w.prepositions = read("prepositions.txt");
        w.modals = read("modals.txt");
        w.aux_verbs = read("aux_verbs.txt");
        w.copulas = read("copulas.txt");
        w.negations = read("negations.txt");
        w.conjunctions = read("conjunctions.txt");
        w.subordinators = read("subordinators.txt");
        w.pronouns = read("pronouns.txt");
        w.adverbs = read("adverbs.txt", false);
        w.adjectives = read("adjectives.txt", false);
        w.verbs = read("verbs.txt", false);
        w.interjections = read("interjections.txt", false);

        const auto irr = dir / "irregular.tsv";
        if (std::filesystem::exists(irr)) {
            auto in = text::open_input(irr.string());
            std::string line;
            std::size_t line_no = 0;
            while (std::getline(in, line)) {
                ++line_no;
                text::strip_cr(line);
                if (text::trim(line).empty() || line.front() == '#') continue;
                auto f = text::split(line, '\t');
                if (f.size() != 3)
                    throw Error("load_failure", "irregular.tsv line " + std::to_string(line_no) +
                                                    ": expected form<TAB>lemma<TAB>upos");
                w.irregular[text::lower(f[0])] = {text::lower(f[1]), f[2]};
            }
        }
        return w;
    }
};

}  // namespace tfmn
