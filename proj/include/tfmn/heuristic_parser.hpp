#pragma once

// Rule-based dependency parser for short English sentences. It exists so the
// pipeline can run without an external parser; its trees are coarse (chunk
// heads linked by subject/object/oblique/clause rules) and it is meant for
// tests, fixtures and quick exploration. Real corpora should be parsed with a
// proper dependency parser and fed in as CoNLL-U.

#include <algorithm>
#include <cctype>
#include <set>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tfmn/conllu.hpp"
#include "tfmn/text.hpp"
#include "tfmn/wordlists.hpp"

namespace tfmn {

struct ParseOutcome {
    std::optional<ParsedSentence> sentence;  // nullopt: unparsed
    std::string reason;
};

class HeuristicParser {
public:
    explicit HeuristicParser(const WordLists& lists) : lists_(&lists) {}

    /// Lowercased word and punctuation tokens; contractions split ("don't" ->
    /// "do" "n't"), hyphenated compounds split into their parts.
    std::vector<std::string> tokenize(std::string_view sentence) const
    {
        std::vector<std::string> out;
        constexpr std::string_view lead = "\"'([{";
        constexpr std::string_view trail = ".,;:!?\"')]}";
        for (auto piece : text::split_whitespace(sentence)) {
            std::string_view p(piece);
            std::vector<std::string> tail;
            while (!p.empty() && lead.find(p.front()) != std::string_view::npos) {
                out.emplace_back(1, p.front());
                p.remove_prefix(1);
            }
            while (!p.empty() && trail.find(p.back()) != std::string_view::npos) {
                tail.emplace_back(1, p.back());
                p.remove_suffix(1);
            }
            split_word(text::lower(p), out);
            out.insert(out.end(), tail.rbegin(), tail.rend());
        }
        return out;
    }

    ParseOutcome parse(std::string_view sentence, const std::string& doc_id = "doc") const
    {
        Work w;
        for (auto& s : tokenize(sentence)) {
            Tok t;
            t.surface = s;
            t.lemma = s;
            w.toks.push_back(std::move(t));
        }
        if (w.toks.empty()) return {std::nullopt, "empty sentence"};
        tag(w);
        attach(w);
        return finish(w, doc_id);
    }

private:
    enum class Tag {
        noun, verb, adj, adv, pron, det, adp, to, modal, be, have, do_, neg, cconj, sconj,
        punct, num, poss, expl, intj, other, verb_candidate,
    };
    enum class Form { base, third, past, ing };

    struct Tok {
        std::string surface;
        std::string lemma;
        Tag tag = Tag::other;
        Form form = Form::base;
        bool auxiliary = false;  // be/have/do used as auxiliary
        int head = -1;           // -1 unattached, -2 root
        std::string deprel;
    };

    struct Work {
        std::vector<Tok> toks;
    };

    static void split_word(const std::string& w, std::vector<std::string>& out)
    {
        if (w.empty()) return;
        if (w.size() > 3 && w.ends_with("n't")) {
            std::string base = w.substr(0, w.size() - 3);
            if (base == "ca") base = "can";
            else if (base == "wo") base = "will";
            else if (base == "sha") base = "shall";
            out.push_back(base);
            out.emplace_back("n't");
            return;
        }
        const auto apos = w.find('\'');
        if (apos != std::string::npos && apos > 0) {
            out.push_back(w.substr(0, apos));
            out.push_back(w.substr(apos));
            return;
        }
        std::size_t start = 0;
        for (;;) {
            const auto dash = w.find('-', start);
            const auto part = w.substr(start, dash == std::string::npos ? std::string::npos : dash - start);
            if (!part.empty()) out.push_back(part);
            if (dash == std::string::npos) break;
            start = dash + 1;
        }
    }

    static bool is_punct(const std::string& s)
    {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
                   return std::ispunct(c) != 0;
               }) && s != "'s" && s != "n't";
    }

    static bool has(const std::set<std::string>& set, const std::string& w) { return set.count(w) != 0; }

    // Lemma of w if it is an inflected or base form of a known verb.
    std::optional<std::pair<std::string, Form>> verb_form(const std::string& w) const
    {
        const auto& verbs = lists_->verbs;
        if (auto it = lists_->irregular.find(w); it != lists_->irregular.end() && it->second.upos == "VERB")
            return std::pair{it->second.lemma, it->second.lemma == w ? Form::base : Form::past};
        if (has(verbs, w)) return std::pair{w, Form::base};
        const auto n = w.size();
        const auto try_base = [&](const std::string& b, Form f) -> std::optional<std::pair<std::string, Form>> {
            if (b.size() >= 2 && has(verbs, b)) return std::pair{b, f};
            return std::nullopt;
        };
        if (n > 4 && w.ends_with("ies"))
            if (auto r = try_base(w.substr(0, n - 3) + "y", Form::third)) return r;
        if (n > 3 && w.ends_with("es"))
            if (auto r = try_base(w.substr(0, n - 2), Form::third)) return r;
        if (n > 2 && w.ends_with("s") && !w.ends_with("ss"))
            if (auto r = try_base(w.substr(0, n - 1), Form::third)) return r;
        if (n > 4 && w.ends_with("ied"))
            if (auto r = try_base(w.substr(0, n - 3) + "y", Form::past)) return r;
        if (n > 3 && w.ends_with("ed")) {
            if (auto r = try_base(w.substr(0, n - 2), Form::past)) return r;
            if (auto r = try_base(w.substr(0, n - 1), Form::past)) return r;
            if (n > 4 && w[n - 3] == w[n - 4])
                if (auto r = try_base(w.substr(0, n - 3), Form::past)) return r;
        }
        if (n > 4 && w.ends_with("ing")) {
            const auto stem = w.substr(0, n - 3);
            if (auto r = try_base(stem, Form::ing)) return r;
            if (auto r = try_base(stem + "e", Form::ing)) return r;
            if (stem.size() > 2 && stem.back() == stem[stem.size() - 2])
                if (auto r = try_base(stem.substr(0, stem.size() - 1), Form::ing)) return r;
        }
        return std::nullopt;
    }

    static std::string singular(const std::string& w)
    {
        const auto n = w.size();
        if (n > 4 && w.ends_with("ies")) return w.substr(0, n - 3) + "y";
        if (n > 4 && (w.ends_with("sses") || w.ends_with("shes") || w.ends_with("ches") || w.ends_with("xes")))
            return w.substr(0, n - 2);
        if (n > 3 && w.ends_with("s") && !w.ends_with("ss") && !w.ends_with("us") && !w.ends_with("is"))
            return w.substr(0, n - 1);
        return w;
    }

    static bool adjective_suffix(const std::string& w)
    {
        for (std::string_view s : {"ous", "ful", "ive", "able", "ible", "ical", "less", "ish"})
            if (w.size() > s.size() + 2 && w.ends_with(s)) return true;
        return false;
    }

    // Context-free first guess.
    void base_tag(Tok& t, const std::string* prev, const std::string* next) const
    {
        const auto& L = *lists_;
        const auto& w = t.surface;
        if (is_punct(w)) { t.tag = Tag::punct; return; }
        if (w == "n't" || L.is_negation(w)) {
            t.tag = Tag::neg;
            t.lemma = w == "n't" ? "not" : w;
            return;
        }
        if (w == "'s") {
            const bool after_pron = prev && has(L.pronouns, *prev);
            t.tag = after_pron ? Tag::be : Tag::poss;
            t.lemma = after_pron ? "be" : "'s";
            return;
        }
        if (w == "'re" || w == "'m") { t.tag = Tag::be; t.lemma = "be"; return; }
        if (w == "'ve") { t.tag = Tag::have; t.lemma = "have"; return; }
        if (w == "'ll" || w == "'d") { t.tag = Tag::modal; t.lemma = w == "'ll" ? "will" : "would"; return; }
        if (has(L.interjections, w)) { t.tag = Tag::intj; return; }
        if (w == "there" && next && has(L.copulas, *next)) { t.tag = Tag::expl; return; }
        if (w == "to") {
            const bool verbal = next && (verb_form(*next) || has(L.copulas, *next) || has(L.aux_verbs, *next)) &&
                                !has(L.determiners, *next);
            t.tag = verbal ? Tag::to : Tag::adp;
            return;
        }
        if (w == "that") {
            const bool det = !prev || has(L.prepositions, *prev);
            t.tag = det ? Tag::det : Tag::sconj;
            return;
        }
        if (has(L.determiners, w)) { t.tag = Tag::det; return; }
        if (has(L.subordinators, w)) { t.tag = Tag::sconj; return; }
        if (has(L.conjunctions, w)) { t.tag = Tag::cconj; return; }
        if (has(L.prepositions, w)) { t.tag = Tag::adp; return; }
        if (has(L.modals, w)) { t.tag = Tag::modal; return; }
        if (has(L.copulas, w)) { t.tag = Tag::be; t.lemma = "be"; return; }
        if (has(L.aux_verbs, w)) {
            const bool is_do = w == "do" || w == "does" || w == "did";
            t.tag = is_do ? Tag::do_ : Tag::have;
            t.lemma = is_do ? "do" : "have";
            t.form = (w == "did" || w == "had") ? Form::past : Form::base;
            return;
        }
        if (has(L.pronouns, w)) { t.tag = Tag::pron; return; }
        if (std::any_of(w.begin(), w.end(), [](unsigned char c) { return std::isdigit(c); })) {
            t.tag = Tag::num;
            return;
        }
        if (!std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isalpha(c); })) {
            t.tag = Tag::other;
            return;
        }
        if (has(L.adverbs, w)) { t.tag = Tag::adv; return; }
        if (auto it = L.irregular.find(w); it != L.irregular.end() && it->second.upos != "VERB") {
            t.lemma = it->second.lemma;
            t.tag = it->second.upos == "ADJ" ? Tag::adj : Tag::noun;
            return;
        }
        if (has(L.adjectives, w)) { t.tag = Tag::adj; return; }
        if (auto vf = verb_form(w)) {
            t.tag = Tag::verb_candidate;
            t.lemma = vf->first;
            t.form = vf->second;
            return;
        }
        if (w.size() > 4 && w.ends_with("ly")) { t.tag = Tag::adv; return; }
        if (adjective_suffix(w)) { t.tag = Tag::adj; return; }
        t.tag = Tag::noun;
        t.lemma = singular(w);
    }

    static bool verbal(Tag t) { return t == Tag::verb || t == Tag::verb_candidate; }

    void tag(Work& w) const
    {
        auto& toks = w.toks;
        const auto n = toks.size();
        for (std::size_t i = 0; i < n; ++i)
            base_tag(toks[i], i > 0 ? &toks[i - 1].surface : nullptr,
                     i + 1 < n ? &toks[i + 1].surface : nullptr);

        const auto next_core = [&](std::size_t i) -> std::optional<std::size_t> {
            for (std::size_t k = i + 1; k < n; ++k)
                if (toks[k].tag != Tag::adv && toks[k].tag != Tag::neg) return k;
            return std::nullopt;
        };

        // Auxiliary readings of be/have/do.
        for (std::size_t i = 0; i < n; ++i) {
            auto& t = toks[i];
            if (t.tag != Tag::be && t.tag != Tag::have && t.tag != Tag::do_) continue;
            const auto k = next_core(i);
            if (!k) continue;
            const auto& nx = toks[*k];
            if (t.tag == Tag::be) {
                t.auxiliary = nx.tag == Tag::verb_candidate && (nx.form == Form::ing || nx.form == Form::past);
                if (nx.tag == Tag::be && (nx.surface == "been" || nx.surface == "being")) t.auxiliary = true;
            } else if (t.tag == Tag::have) {
                t.auxiliary = (nx.tag == Tag::verb_candidate && nx.form == Form::past) ||
                              (nx.tag == Tag::be && nx.surface == "been");
            } else {
                t.auxiliary = nx.tag == Tag::verb_candidate || nx.tag == Tag::have || nx.tag == Tag::be;
            }
        }

        // Noun/verb/adjective decisions for verb candidates, left to right.
        bool finite_in_clause = false;
        for (std::size_t i = 0; i < n; ++i) {
            auto& t = toks[i];
            if (t.tag == Tag::punct || t.tag == Tag::sconj) finite_in_clause = false;
            if (t.tag == Tag::modal || ((t.tag == Tag::be || t.tag == Tag::have || t.tag == Tag::do_))) {
                finite_in_clause = true;
                if ((t.tag == Tag::have || t.tag == Tag::do_) && !t.auxiliary) t.tag = Tag::verb;
                continue;
            }
            if (t.tag != Tag::verb_candidate) continue;

            std::optional<std::size_t> p;
            for (std::size_t k = i; k-- > 0;)
                if (toks[k].tag != Tag::adv) {
                    p = k;
                    break;
                }
            const Tag prev = p ? toks[*p].tag : Tag::other;
            const bool after_aux = p && (toks[*p].tag == Tag::modal || toks[*p].tag == Tag::to ||
                                         ((toks[*p].tag == Tag::do_ || toks[*p].tag == Tag::be ||
                                           toks[*p].tag == Tag::have) && toks[*p].auxiliary) ||
                                         (toks[*p].tag == Tag::neg && *p > 0 &&
                                          (toks[*p - 1].tag == Tag::modal || toks[*p - 1].auxiliary)));
            // "let us celebrate", "help girls learn": bare infinitive after a causative.
            const bool causative = p && *p > 0 && (prev == Tag::pron || prev == Tag::noun) &&
                                   (toks[*p - 1].lemma == "let" || toks[*p - 1].lemma == "help" ||
                                    toks[*p - 1].lemma == "make");
            const bool nominal_ctx = prev == Tag::det || prev == Tag::adj || prev == Tag::poss ||
                                     prev == Tag::num || prev == Tag::adp;
            const auto next_is_noun = i + 1 < n && toks[i + 1].tag == Tag::noun;
            // Nouns are rarely followed directly by a determiner or possessive.
            const auto next_is_det = i + 1 < n && (toks[i + 1].tag == Tag::det || toks[i + 1].tag == Tag::poss);
            const bool subject_ctx = prev == Tag::noun || prev == Tag::pron || prev == Tag::sconj || !p;
            const auto nc = next_core(i);
            const bool before_copula = nc && toks[*nc].tag == Tag::be && !toks[*nc].auxiliary;
            const bool coordinated_verb = prev == Tag::cconj && *p > 0 && toks[*p - 1].tag == Tag::verb;

            bool verb = false;
            switch (t.form) {
            case Form::ing:
                verb = !(prev == Tag::det || prev == Tag::adj || prev == Tag::poss);
                break;
            case Form::past:
                if (prev == Tag::det || prev == Tag::adj) verb = false;
                else if (after_aux) verb = true;
                else if (subject_ctx && !finite_in_clause) verb = true;
                else verb = !next_is_noun;
                if (!verb) {
                    t.tag = Tag::adj;
                    t.lemma = t.surface;
                    continue;
                }
                break;
            case Form::base:
            case Form::third:
                if (after_aux || causative) verb = true;
                else if (before_copula) verb = false;
                else if (nominal_ctx) verb = false;
                else if (next_is_det) verb = true;
                else if (coordinated_verb) verb = true;
                else verb = subject_ctx && !finite_in_clause;
                break;
            }
            if (verb) {
                t.tag = Tag::verb;
                if (t.form != Form::ing && !(t.form == Form::past && prev == Tag::noun && finite_in_clause))
                    finite_in_clause = true;
            } else {
                t.tag = Tag::noun;
                t.lemma = t.form == Form::ing ? t.surface : singular(t.surface);
            }
        }
    }

    // --- attachment -------------------------------------------------------

    enum class Kind { none, np, vp, adj };
    enum class Link { none, conj, advcl, parataxis };

    struct State {
        int root = -1;
        int pred = -1;
        int prev_pred = -1;
        int last_verb = -1;
        int last_np = -1;
        int last_head = -1;
        Kind last_kind = Kind::none;
        std::vector<int> subjects;
        std::vector<int> cop;      // copula chunk tokens waiting for a predicate
        std::vector<int> waiting;  // dependents of the next clause predicate
        std::vector<int> orphans;  // subordinate predicates waiting for the main clause
        int cc = -1;
        int sconj = -1;
        bool relative = false;
        bool boundary = false;
        Link link = Link::none;
        bool subordinate = false;
    };

    static void set_head(Work& w, int dep, int head, std::string rel)
    {
        if (dep < 0 || dep == head) return;
        auto& t = w.toks[static_cast<std::size_t>(dep)];
        t.head = head;
        t.deprel = std::move(rel);
    }

    static bool np_member(Tag t) { return t == Tag::det || t == Tag::adj || t == Tag::noun || t == Tag::num || t == Tag::poss; }

    // Attaches the current clause predicate to the rest of the sentence.
    void seat_predicate(Work& w, State& s, int p) const
    {
        s.pred = p;
        for (int d : s.waiting) set_head(w, d, p, w.toks[static_cast<std::size_t>(d)].tag == Tag::adp ? "case" : "advmod");
        s.waiting.clear();
        if (s.cc >= 0) { set_head(w, s.cc, p, "cc"); }
        if (s.sconj >= 0 && !s.relative) set_head(w, s.sconj, p, "mark");

        if (s.root < 0 && s.prev_pred < 0) {
            if (s.subordinate) {
                s.orphans.push_back(p);
            } else {
                s.root = p;
                for (int o : s.orphans) set_head(w, o, p, "advcl");
                s.orphans.clear();
            }
        } else if (s.root < 0) {
            // Earlier clauses were subordinate.
            if (s.subordinate) {
                s.orphans.push_back(p);
            } else {
                s.root = p;
                for (int o : s.orphans) set_head(w, o, p, "advcl");
                s.orphans.clear();
            }
        } else {
            const int anchor = s.prev_pred >= 0 ? s.prev_pred : s.root;
            const char* rel = s.link == Link::conj ? "conj" : s.link == Link::advcl ? "advcl" : "parataxis";
            set_head(w, p, anchor, rel);
        }
        s.cc = -1;
        s.sconj = -1;
        s.link = Link::none;
        s.subordinate = false;
        s.boundary = false;
    }

    void new_clause(State& s) const
    {
        if (s.pred >= 0) s.prev_pred = s.pred;
        s.pred = -1;
        s.last_verb = -1;
        s.subjects.clear();
        s.relative = false;
        s.link = s.cc >= 0 ? Link::conj : s.sconj >= 0 ? Link::advcl : Link::parataxis;
        s.subordinate = s.sconj >= 0;
    }

    // Copula (+ negation/adverbs/modals) followed by its predicate head.
    void make_copular_predicate(Work& w, State& s, int head) const
    {
        int neg = -1;
        for (int c : s.cop) {
            const auto& t = w.toks[static_cast<std::size_t>(c)];
            if (t.tag == Tag::be) set_head(w, c, head, "cop");
            else if (t.tag == Tag::neg) { if (neg < 0) neg = c; set_head(w, c, head, "advmod"); }
            else if (t.tag == Tag::to) set_head(w, c, head, "mark");
            else if (t.tag == Tag::adv) set_head(w, c, head, "advmod");
            else set_head(w, c, head, "aux");
        }
        s.cop.clear();
        // A negated copular clause routes the subject through the negation.
        for (std::size_t k = 0; k < s.subjects.size(); ++k)
            set_head(w, s.subjects[k], (k == 0 && neg >= 0) ? neg : head, "nsubj");
        s.subjects.clear();
        if (s.pred >= 0) {
            // predicate of a non-finite or secondary copula ("to be X")
            set_head(w, head, s.last_verb >= 0 ? s.last_verb : s.pred, "xcomp");
        } else {
            seat_predicate(w, s, head);
        }
        s.last_verb = -1;
    }

    std::optional<std::size_t> next_core_after(const Work& w, std::size_t j) const
    {
        for (std::size_t k = j; k < w.toks.size(); ++k)
            if (w.toks[k].tag != Tag::adv) return k;
        return std::nullopt;
    }

    bool finite_start(const Work& w, std::size_t k) const
    {
        const auto& t = w.toks[k];
        return (t.tag == Tag::verb && t.form != Form::ing) || t.tag == Tag::modal || t.tag == Tag::be ||
               t.tag == Tag::have || t.tag == Tag::do_ || (t.tag == Tag::neg && k + 1 < w.toks.size() &&
                                                          w.toks[k + 1].tag == Tag::verb);
    }

    void attach(Work& w) const
    {
        State s;
        auto& toks = w.toks;
        const auto n = toks.size();
        int pending_case = -1;
        std::vector<int> stray;  // function tokens without a head yet

        std::size_t i = 0;
        while (i < n) {
            const Tag tg = toks[i].tag;
            const int ii = static_cast<int>(i);

            if (tg == Tag::punct) {
                if (toks[i].surface == "," || toks[i].surface == ";" || toks[i].surface == ":") s.boundary = true;
                ++i;
                continue;
            }
            if (tg == Tag::cconj) { s.cc = ii; s.boundary = true; ++i; continue; }
            if (tg == Tag::sconj) {
                s.sconj = ii;
                const auto& word = toks[i].surface;
                s.relative = (word == "that" || word == "which" || word == "who" || word == "whom" || word == "whose") &&
                             s.last_kind == Kind::np;
                s.boundary = true;
                ++i;
                continue;
            }
            if (tg == Tag::adp) {
                if (pending_case >= 0) stray.push_back(pending_case);
                pending_case = ii;
                ++i;
                continue;
            }
            if (tg == Tag::intj || tg == Tag::other || tg == Tag::expl) {
                if (tg == Tag::expl) s.subjects.push_back(ii);
                else stray.push_back(ii);
                ++i;
                continue;
            }

            // Verb group or copula group: (to) (modal|aux|be|have|do|adv|neg)* verb?
            if (tg == Tag::to || tg == Tag::modal || tg == Tag::be || tg == Tag::do_ || tg == Tag::verb ||
                (tg == Tag::have && toks[i].auxiliary) || (tg == Tag::neg && i + 1 < n && toks[i + 1].tag != Tag::noun && toks[i + 1].tag != Tag::det && toks[i + 1].tag != Tag::adj) ||
                (tg == Tag::adv && i + 1 < n && (toks[i + 1].tag == Tag::verb || toks[i + 1].tag == Tag::modal || toks[i + 1].tag == Tag::be))) {
                std::vector<int> members;
                std::size_t j = i;
                int verb = -1;
                bool copula = false;
                while (j < n) {
                    const Tag t = toks[j].tag;
                    if (t == Tag::verb) { verb = static_cast<int>(j); ++j; break; }
                    if (t == Tag::be && !toks[j].auxiliary) copula = true;
                    if (t == Tag::to || t == Tag::modal || t == Tag::be || t == Tag::have || t == Tag::do_ ||
                        t == Tag::adv || t == Tag::neg) {
                        members.push_back(static_cast<int>(j));
                        ++j;
                        continue;
                    }
                    break;
                }
                if (verb < 0 && !copula) {
                    // adverbs/negations with no verb: hold for the next head
                    for (int m : members) s.waiting.push_back(m);
                    i = j;
                    continue;
                }
                if (verb < 0) {
                    // copula: predicate follows
                    if (s.pred >= 0 && s.boundary && s.subjects.empty() && s.cop.empty() && !s.relative) new_clause(s);
                    if (s.relative && s.last_np >= 0 && s.subjects.empty()) {
                        // "X that is Y": relative copular clause on X
                        s.relative = false;
                    }
                    s.cop.insert(s.cop.end(), members.begin(), members.end());
                    i = j;
                    continue;
                }
                on_verb(w, s, verb, members);
                i = j;
                continue;
            }

            if (tg == Tag::adv) {
                if (s.pred >= 0) set_head(w, ii, s.last_verb >= 0 ? s.last_verb : s.pred, "advmod");
                else s.waiting.push_back(ii);
                ++i;
                continue;
            }

            if (tg == Tag::pron || tg == Tag::neg || np_member(tg) || tg == Tag::have || tg == Tag::verb_candidate) {
                // Nominal group.
                std::size_t j = i;
                std::vector<int> run;
                if (tg == Tag::pron) {
                    run.push_back(ii);
                    j = i + 1;
                } else {
                    while (j < n && (np_member(toks[j].tag) || toks[j].tag == Tag::neg ||
                                     (toks[j].tag == Tag::adv && j + 1 < n && toks[j + 1].tag == Tag::adj))) {
                        run.push_back(static_cast<int>(j));
                        ++j;
                    }
                    if (run.empty()) {  // lone have/verb_candidate leftovers
                        run.push_back(ii);
                        j = i + 1;
                    }
                }
                // head = last noun/pronoun; fall back to last adjective
                int head = -1;
                for (int r : run)
                    if (toks[static_cast<std::size_t>(r)].tag == Tag::noun || toks[static_cast<std::size_t>(r)].tag == Tag::pron) head = r;
                bool adjectival = false;
                if (head < 0)
                    for (int r : run)
                        if (toks[static_cast<std::size_t>(r)].tag == Tag::adj) { head = r; adjectival = true; }
                if (head < 0) {
                    for (int r : run) stray.push_back(r);
                    i = j;
                    continue;
                }
                // tokens after the head start the next chunk
                j = static_cast<std::size_t>(head) + 1;
                for (int r : run) {
                    if (r >= head) break;
                    const auto& t = toks[static_cast<std::size_t>(r)];
                    int target = head;
                    std::string rel;
                    switch (t.tag) {
                    case Tag::det: rel = "det"; break;
                    case Tag::adj: rel = "amod"; break;
                    case Tag::num: rel = "nummod"; break;
                    case Tag::neg: rel = "advmod"; break;
                    case Tag::adv: rel = "advmod"; target = r + 1; break;
                    case Tag::poss:
                        rel = "case";
                        target = r - 1 >= static_cast<int>(i) ? r - 1 : head;
                        break;
                    case Tag::noun:
                        rel = (r + 1 < head && toks[static_cast<std::size_t>(r + 1)].tag == Tag::poss) ? "nmod:poss" : "compound";
                        break;
                    default: rel = "dep"; break;
                    }
                    set_head(w, r, target, rel);
                }
                on_nominal(w, s, head, adjectival, pending_case, j);
                pending_case = -1;
                i = j;
                continue;
            }
            stray.push_back(ii);
            ++i;
        }
        if (pending_case >= 0) stray.push_back(pending_case);

        // Sentence end: settle whatever is still open.
        if (!s.cop.empty()) {
            // copula with no predicate: the copula heads the clause itself
            const int c = s.cop.back();
            s.cop.pop_back();
            std::vector<int> rest = s.cop;
            s.cop.clear();
            for (int r : rest) set_head(w, r, c, "aux");
            for (int subj : s.subjects) set_head(w, subj, c, "nsubj");
            s.subjects.clear();
            if (s.pred < 0) seat_predicate(w, s, c);
            else set_head(w, c, s.pred, "conj");
        }
        if (s.root < 0 && !s.orphans.empty()) {
            s.root = s.orphans.front();
            for (std::size_t k = 1; k < s.orphans.size(); ++k) set_head(w, s.orphans[k], s.root, "advcl");
        }
        if (s.root < 0) {
            // verbless fragment: first content head becomes root
            for (std::size_t k = 0; k < n; ++k) {
                const Tag t = toks[k].tag;
                if ((t == Tag::noun || t == Tag::pron || t == Tag::adj || t == Tag::verb) && toks[k].head == -1) {
                    s.root = static_cast<int>(k);
                    break;
                }
            }
        }
        if (s.root < 0) return;
        toks[static_cast<std::size_t>(s.root)].head = -2;
        toks[static_cast<std::size_t>(s.root)].deprel = "root";
        for (int subj : s.subjects) set_head(w, subj, s.root, "dep");
        for (int d : s.waiting) set_head(w, d, s.root, "advmod");
        for (int d : stray) set_head(w, d, s.root, "dep");
        for (std::size_t k = 0; k < n; ++k) {
            auto& t = toks[k];
            if (t.head != -1) continue;
            if (t.tag == Tag::punct) set_head(w, static_cast<int>(k), s.root, "punct");
            else if (t.tag == Tag::cconj) set_head(w, static_cast<int>(k), s.root, "cc");
            else if (t.tag == Tag::sconj) set_head(w, static_cast<int>(k), s.root, "mark");
            else set_head(w, static_cast<int>(k), s.root, "dep");
        }
    }

    void on_verb(Work& w, State& s, int v, const std::vector<int>& members) const
    {
        auto& toks = w.toks;
        bool has_aux = false;
        bool has_to = false;
        for (int m : members) {
            const auto& t = toks[static_cast<std::size_t>(m)];
            std::string rel = "advmod";
            if (t.tag == Tag::to) { rel = "mark"; has_to = true; }
            else if (t.tag == Tag::modal || t.tag == Tag::do_ || t.tag == Tag::have) { rel = "aux"; has_aux = true; }
            else if (t.tag == Tag::be) {
                rel = toks[static_cast<std::size_t>(v)].form == Form::past ? "aux:pass" : "aux";
                has_aux = true;
            }
            set_head(w, m, v, rel);
        }
        const auto& vt = toks[static_cast<std::size_t>(v)];
        const bool nonfinite = !has_aux && (vt.form == Form::ing || (vt.form == Form::past && s.pred >= 0));

        if (s.relative && s.last_np >= 0) {
            set_head(w, v, s.last_np, "acl:relcl");
            if (s.sconj >= 0) set_head(w, s.sconj, v, "nsubj");
            s.sconj = -1;
            s.relative = false;
            s.boundary = false;
            s.cc = -1;
            s.last_verb = v;
            s.last_head = v;
            s.last_kind = Kind::vp;
            return;
        }
        if (has_to) {
            const int anchor = s.last_verb >= 0 ? s.last_verb : s.pred >= 0 ? s.pred : s.last_head;
            if (anchor >= 0) {
                set_head(w, v, anchor, s.last_kind == Kind::np && s.last_verb < 0 ? "acl" : "xcomp");
                s.last_verb = v;
            } else {
                // clause-initial infinitive: treat as predicate
                seat_predicate(w, s, v);
                s.last_verb = v;
            }
            s.last_head = v;
            s.last_kind = Kind::vp;
            return;
        }
        if (nonfinite && s.last_kind == Kind::np && s.last_np >= 0 && !s.boundary) {
            set_head(w, v, s.last_np, "acl");
            s.last_verb = v;
            s.last_head = v;
            s.last_kind = Kind::vp;
            return;
        }
        if (s.pred >= 0 && s.boundary && s.subjects.empty()) {
            if (s.cc >= 0 || s.sconj >= 0 || !nonfinite) {
                // coordinated or new clause sharing the subject
                new_clause(s);
            }
        }
        if (s.pred < 0) {
            for (std::size_t k = 0; k < s.subjects.size(); ++k) set_head(w, s.subjects[k], v, k == 0 ? "nsubj" : "conj");
            s.subjects.clear();
            seat_predicate(w, s, v);
        } else {
            const int anchor = s.last_verb >= 0 ? s.last_verb : s.pred;
            set_head(w, v, anchor, nonfinite ? "advcl" : "xcomp");
            s.cc = -1;
            s.boundary = false;
        }
        s.last_verb = v;
        s.last_head = v;
        s.last_kind = Kind::vp;
    }

    void on_nominal(Work& w, State& s, int head, bool adjectival, int case_tok, std::size_t next) const
    {
        auto& toks = w.toks;
        const auto finish = [&](Kind k) {
            s.last_head = head;
            if (k == Kind::np) s.last_np = head;
            s.last_kind = k;
        };
        const Kind kind = adjectival ? Kind::adj : Kind::np;

        if (case_tok >= 0) {
            set_head(w, case_tok, head, "case");
            if (!s.cop.empty()) {
                make_copular_predicate(w, s, head);
                finish(kind);
                return;
            }
            const int anchor = s.last_head;
            if (anchor >= 0) {
                const bool verbal_anchor = toks[static_cast<std::size_t>(anchor)].tag == Tag::verb || anchor == s.pred;
                set_head(w, head, anchor, verbal_anchor ? "obl" : "nmod");
            } else {
                s.waiting.push_back(head);
            }
            s.cc = -1;
            finish(kind);
            return;
        }

        if (!s.cop.empty()) {
            make_copular_predicate(w, s, head);
            finish(kind);
            return;
        }

        // Coordination with the previous nominal.
        if (s.cc >= 0 && (s.last_kind == Kind::np || s.last_kind == Kind::adj) && s.last_head >= 0) {
            const auto k = next_core_after(w, next);
            const bool new_subject = s.pred >= 0 && k && finite_start(w, *k);
            if (!new_subject) {
                set_head(w, head, s.last_head, "conj");
                set_head(w, s.cc, head, "cc");
                s.cc = -1;
                s.boundary = false;
                finish(kind);
                return;
            }
        }

        if (s.pred >= 0 && s.boundary) {
            const auto k = next_core_after(w, next);
            if (k && finite_start(w, *k)) {
                new_clause(s);
                s.subjects.push_back(head);
                finish(kind);
                return;
            }
        }

        if (s.pred < 0 && s.last_verb < 0) {
            if (adjectival && s.last_np >= 0 && !s.subjects.empty()) {
                set_head(w, head, s.last_np, "amod");
            } else if (!s.subjects.empty()) {
                set_head(w, head, s.subjects.back(), s.boundary ? "appos" : "dep");
            } else {
                s.subjects.push_back(head);
            }
            s.boundary = false;
            finish(kind);
            return;
        }

        if (s.last_verb >= 0) {
            if (adjectival && s.last_kind == Kind::np) {
                set_head(w, head, s.last_verb, "xcomp");
            } else {
                set_head(w, head, s.last_verb, adjectival ? "xcomp" : "obj");
            }
        } else if (s.last_head >= 0) {
            set_head(w, head, s.last_head, adjectival ? "amod" : "nmod");
        } else {
            s.subjects.push_back(head);
        }
        s.boundary = false;
        s.cc = -1;
        finish(kind);
    }

    static std::string upos(const Tok& t)
    {
        switch (t.tag) {
        case Tag::noun: return "NOUN";
        case Tag::verb: return "VERB";
        case Tag::verb_candidate: return "VERB";
        case Tag::adj: return "ADJ";
        case Tag::adv: return "ADV";
        case Tag::pron: return "PRON";
        case Tag::expl: return "PRON";
        case Tag::det: return "DET";
        case Tag::adp: return "ADP";
        case Tag::to: return "PART";
        case Tag::modal: return "AUX";
        case Tag::be: return "AUX";
        case Tag::have: return t.auxiliary ? "AUX" : "VERB";
        case Tag::do_: return t.auxiliary ? "AUX" : "VERB";
        case Tag::neg: return "PART";
        case Tag::cconj: return "CCONJ";
        case Tag::sconj: return "SCONJ";
        case Tag::punct: return "PUNCT";
        case Tag::num: return "NUM";
        case Tag::poss: return "PART";
        case Tag::intj: return "INTJ";
        case Tag::other: return "X";
        }
        return "X";
    }

    ParseOutcome finish(Work& w, const std::string& doc_id) const
    {
        auto& toks = w.toks;
        int root = -1;
        std::size_t content = 0;
        for (std::size_t k = 0; k < toks.size(); ++k) {
            if (toks[k].head == -2) root = static_cast<int>(k);
            const Tag t = toks[k].tag;
            if (t == Tag::noun || t == Tag::verb || t == Tag::adj || t == Tag::adv || t == Tag::pron || t == Tag::neg ||
                ((t == Tag::have || t == Tag::do_) && !toks[k].auxiliary))
                ++content;
        }
        if (root < 0 || content < 2) return {std::nullopt, "no recognizable verb/noun pattern"};

        ParsedSentence out;
        out.doc_id = doc_id;
        for (std::size_t k = 0; k < toks.size(); ++k) {
            const auto& t = toks[k];
            Token tok;
            tok.index = static_cast<int>(k) + 1;
            tok.surface = t.surface;
            tok.lemma = t.lemma;
            tok.upos = upos(t);
            tok.head = t.head == -2 ? 0 : t.head + 1;
            tok.deprel = t.deprel.empty() ? "dep" : t.deprel;
            out.tokens.push_back(std::move(tok));
        }
        if (auto err = validate_tree(out)) return {std::nullopt, "internal tree error: " + *err};
        return {std::move(out), {}};
    }

    const WordLists* lists_;
};

}  // namespace tfmn
