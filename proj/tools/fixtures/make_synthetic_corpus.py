#!/usr/bin/env python3
"""Writes data/corpora/stem_gender_synthetic.txt: 500 tweet-like documents
about women in science with planted structure.

Planted structure:
  * twelve topical clusters (lab work, coding, space, ...) each own a few
    subjects, verbs, objects and adjectives; most tweets draw all their
    words from one cluster, so links close into triangles inside clusters;
  * eight positive hub verbs are used across every cluster together with
    positive objects, giving them high degree and a positive neighbourhood;
  * eight negative concepts each draw their neighbours from a small fixed
    set of mostly negative words, so they keep a low degree.
Tweet noise (hashtags, links, mentions, emoji, two-word replies) exercises
the cleaning rules. Output depends only on SEED.
"""
import random
import sys
from pathlib import Path

SEED = 20200316
N_DOCS = 500

# (subjects, verbs, objects, adjectives)
CLUSTERS = [
    (["chemists", "scientists"], ["discover", "test"], ["molecules", "results", "experiments"], ["careful", "curious"]),
    (["programmers", "developers"], ["write", "build"], ["code", "software", "apps"], ["clever", "creative"]),
    (["astronauts", "astronomers"], ["explore", "observe"], ["stars", "planets", "galaxies"], ["bold", "brave"]),
    (["doctors", "nurses"], ["heal", "treat"], ["patients", "diseases", "lives"], ["caring", "skilled"]),
    (["mathematicians", "statisticians"], ["solve", "prove"], ["problems", "theorems", "puzzles"], ["brilliant", "logical"]),
    (["engineers", "architects"], ["design", "construct"], ["bridges", "robots", "machines"], ["innovative", "practical"]),
    (["teachers", "professors"], ["teach", "guide"], ["students", "classes", "lessons"], ["patient", "wise"]),
    (["mothers", "daughters"], ["share", "tell"], ["stories", "memories", "families"], ["loving", "gentle"]),
    (["biologists", "ecologists"], ["protect", "study"], ["forests", "oceans", "species"], ["passionate", "dedicated"]),
    (["winners", "researchers"], ["win", "receive"], ["prizes", "awards", "grants"], ["talented", "successful"]),
    (["leaders", "founders"], ["lead", "launch"], ["companies", "teams", "startups"], ["strong", "visionary"]),
    (["volunteers", "organizers"], ["organize", "host"], ["workshops", "events", "hackathons"], ["friendly", "generous"]),
]
HUBS = ["support", "inspire", "celebrate", "encourage", "empower", "champion", "welcome", "mentor"]
POS_OBJ = ["success", "talent", "dreams", "achievement", "creativity", "passion", "excellence", "innovation",
           "hope", "curiosity", "friendship", "progress", "joy", "courage", "kindness", "freedom"]
# Each negative concept keeps a small, mostly negative neighbourhood.
NEG = {
    "harassment": ["toxic", "report", "victims"],
    "discrimination": ["unfair", "fight", "victims"],
    "bias": ["unconscious", "hidden", "fight"],
    "stereotype": ["harmful", "old", "reject"],
    "exclusion": ["painful", "unfair", "suffer"],
    "sexism": ["toxic", "hostile", "reject"],
    "barrier": ["invisible", "hidden", "suffer"],
    "inequality": ["unfair", "painful", "fight"],
}
NEG_VERB_OBJ = {"fight", "reject", "report", "suffer"}
TAGS = ["#WomenInSTEM", "#WomenInScience", "#GirlsWhoCode", "#STEM", "#science"]
EMOJI = ["\U0001F469‍\U0001F52C", "\U0001F4AA", "✨", "\U0001F680", "\U0001F62D", "❤️"]
MENTIONS = ["@sciencegirl", "@stemnetwork", "@labnews", "@unistem"]
SHORT = ["so true", "Amazing!", "yes", "well said", "love it"]


def cluster_tweet(r):
    subjects, verbs, objects, adjectives = r.choice(CLUSTERS)
    s1, s2 = r.sample(subjects, 2)
    v = r.choice(verbs)
    o1, o2 = r.sample(objects, 2)
    a = r.choice(adjectives)
    form = r.randrange(4)
    if form == 0:
        return f"{a.capitalize()} {s1} {v} {o1}."
    if form == 1:
        return f"{s1.capitalize()} and {s2} {v} {o1} and {o2}."
    if form == 2:
        return f"{s1.capitalize()} {v} {a} {o1}."
    return f"{a.capitalize()} {s1} and {a} {s2} {v} {o2}."


def hub_tweet(r):
    subjects, _, objects, adjectives = r.choice(CLUSTERS)
    hub = r.choice(HUBS)
    s = r.choice(subjects)
    p1, p2 = r.sample(POS_OBJ, 2)
    form = r.randrange(4)
    if form == 0:
        return f"{s.capitalize()} {hub} {p1} and {p2}."
    if form == 1:
        return f"We {hub} {r.choice(adjectives)} {s} and their {p1}."
    if form == 2:
        return f"Let us {hub} {p1} in {r.choice(objects)}!"
    p3 = r.choice([w for w in POS_OBJ if w not in (p1, p2)])
    return f"{p1.capitalize()} and {p2} {hub} {p3}."


def negative_tweet(r):
    concept = r.choice(sorted(NEG))
    w = r.choice(NEG[concept])
    if w in NEG_VERB_OBJ:
        return f"We must {w} {concept}."
    if w == "victims":
        return f"{concept.capitalize()} has many victims."
    return f"{concept.capitalize()} is {w}."


def negation_tweet(r):
    subjects = r.choice(CLUSTERS)[0]
    return f"{r.choice(subjects).capitalize()} are not weak."


def decorate(r, text):
    if r.random() < 0.35:
        text = f"{text} {r.choice(TAGS)}"
    if r.random() < 0.2:
        text = f"{r.choice(MENTIONS)} {text}"
    if r.random() < 0.15:
        text = f"{text} https://t.co/{r.randrange(16**6):06x}"
    if r.random() < 0.25:
        text = f"{text} {r.choice(EMOJI)}"
    return text


def main(out_path):
    r = random.Random(SEED)
    lines = []
    for i in range(N_DOCS):
        u = r.random()
        if u < 0.05:
            text = r.choice(SHORT)
        elif u < 0.50:
            text = cluster_tweet(r)
            if r.random() < 0.3:
                text += " " + cluster_tweet(r)
        elif u < 0.75:
            text = hub_tweet(r)
        elif u < 0.95:
            text = negative_tweet(r)
        else:
            text = negation_tweet(r)
        lines.append(f"tw{i + 1:04d}\t{decorate(r, text)}")
    Path(out_path).write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/corpora/stem_gender_synthetic.txt")
