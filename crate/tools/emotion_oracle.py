"""Independent recomputation of fixture emotion profiles.

Exact rational arithmetic over the fixture lexicon; tokenization by a plain
character-class regex and the scikit-learn English stop-word list.
Usage: emotion_oracle.py <lexicon.tsv> <corpus dir> [<corpus dir> ...]
"""
import os, re, sys
from fractions import Fraction
from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS

lex_path, *dirs = sys.argv[1:]
lines = open(lex_path).read().splitlines()
lex = {}
for line in lines[1:]:
    w, *v = line.split("\t")
    lex[w] = [Fraction(x) for x in v]

def tokens(text):
    for frag in re.split(r"[^A-Za-z']+", text):
        frag = frag.strip("'").lower()
        if frag and frag not in ENGLISH_STOP_WORDS:
            yield frag

for d in dirs:
    profiles = []
    for name in sorted(os.listdir(d)):
        if not name.endswith(".txt"):
            continue
        raw = [Fraction(0)] * 8
        matched = 0
        for t in tokens(open(os.path.join(d, name)).read()):
            if t in lex:
                matched += 1
                raw = [a + b for a, b in zip(raw, lex[t])]
        total = sum(raw)
        if matched and total:
            profiles.append([x / total for x in raw])
        print(f"# {d}/{name}: matched={matched}")
    mean = [sum(p[e] for p in profiles) / len(profiles) for e in range(8)]
    s = sum(mean)
    agg = [m / s for m in mean]
    print(d, "[" + ", ".join(repr(float(x)) for x in agg) + "]")
