"""Regenerates crates/core/data/tagger_lexicon.tsv.

Word list: most frequent English words (wordfreq). Tags: lemminflect's
word-form lookup table, collapsed to NOUN/VERB/ADJ/ADV. Closed-class words
and stopwords are excluded; the tagger handles those itself.
"""
import gzip, sys, importlib.resources as ir
from collections import defaultdict
import wordfreq
from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS

LEMMA_LU = sys.argv[1]
INFL_LU = LEMMA_LU.replace("lemma_lu", "infl_lu")
TARGET = 5000
MAP = {"noun": "NOUN", "verb": "VERB", "adj": "ADJ", "adv": "ADV"}

tags = defaultdict(dict)
with gzip.open(LEMMA_LU, "rt") as f:
    for line in f:
        form, upos, lemmas = line.rstrip("\n").split(",", 2)
        if upos in MAP and form.isalpha() and form.islower():
            tags[form][MAP[upos]] = lemmas.split("/")

# Adjectives with real comparative forms (good/better) read as adjectives first.
gradable = set()
with gzip.open(INFL_LU, "rt") as f:
    for line in f:
        parts = line.rstrip("\n").split(",")
        if parts[1] == "adj" and len(parts) > 2 and parts[2]:
            gradable.add(parts[0])

def choose(word, options):
    if len(options) == 1:
        return next(iter(options))
    if "ADV" in options and word.endswith("ly"):
        return "ADV"
    if "VERB" in options and word not in options["VERB"] and (word.endswith("ed") or word.endswith("ing")):
        return "VERB"
    if "ADJ" in options and word in gradable:
        return "ADJ"
    for t in ("NOUN", "VERB", "ADJ", "ADV"):
        if t in options:
            return t

out = []
for word in wordfreq.top_n_list("en", 40000):
    if word in ENGLISH_STOP_WORDS or word not in tags or len(word) < 2:
        continue
    out.append((word, choose(word, tags[word])))
    if len(out) == TARGET:
        break
out.sort()
sys.stdout.write("# word<TAB>tag; generated by tools/gen_tagger_lexicon.py\n")
for w, t in out:
    sys.stdout.write(f"{w}\t{t}\n")
