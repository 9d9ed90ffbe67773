"""Freeze NLTK's Porter stems (ORIGINAL_ALGORITHM mode) for every word in the
bundled corpora, lexicons and word lists, for the C++ stemmer test."""
import re
import sys
from pathlib import Path

from nltk.stem.porter import PorterStemmer

ROOT = Path(__file__).resolve().parents[2]
OUT = ROOT / "tests" / "fixtures" / "porter_oracle.tsv"


def words():
    found = set()
    for path in sorted((ROOT / "data").rglob("*")):
        if path.is_file() and path.suffix in {".txt", ".tsv", ".csv"}:
            for w in re.findall(r"[A-Za-z]+", path.read_text(encoding="utf-8")):
                found.add(w.lower())
    return sorted(found)


def main():
    stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)
    rows = [f"{w}\t{stemmer.stem(w)}" for w in words()]
    OUT.write_text("# word\tstem (nltk %s, ORIGINAL_ALGORITHM)\n" % __import__("nltk").__version__ + "\n".join(rows) + "\n")
    print(f"{len(rows)} words -> {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
