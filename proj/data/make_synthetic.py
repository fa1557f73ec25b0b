#!/usr/bin/env python3
"""Regenerates the synthetic fixture corpus.

The real corpora and lexicons are external resources; this produces a small
stand-in whose labels follow the toy scored lexicon bundled in fixtures/:
positive/negative by sign of the summed word scores, neutral when the text
carries no scored words, mixed when both polarities appear together with a
contrast word.
"""

import random

POS = ["جميل", "رائع", "ممتاز", "حلو", "سعيد"]
NEG = ["سيء", "قبيح", "رديء", "مزعج", "حزين"]
NEUTRAL = ["يوم", "سياره", "كتاب", "مدرسه", "عمل", "طريق", "بيت", "مدينه", "قهوه", "خبر"]
CONTRAST = "لكن"

rng = random.Random(20240817)


def words(pool, lo, hi):
    return [rng.choice(pool) for _ in range(rng.randint(lo, hi))]


def make(label, i):
    if label == "positive":
        toks = words(POS, 2, 4) + words(NEUTRAL, 0, 3)
        rng.shuffle(toks)
        if rng.random() < 0.3:
            toks.append(":)")
        if rng.random() < 0.3:
            toks.append("!")
    elif label == "negative":
        toks = words(NEG, 2, 4) + words(NEUTRAL, 0, 3)
        rng.shuffle(toks)
        if rng.random() < 0.3:
            toks.append(":(")
        if rng.random() < 0.3:
            toks.append("!")
    elif label == "neutral":
        toks = words(NEUTRAL, 3, 6)
        rng.shuffle(toks)
        if rng.random() < 0.3:
            toks.append("؟")
    else:  # mixed
        toks = words(POS, 1, 2) + [CONTRAST] + words(NEG, 1, 2) + words(NEUTRAL, 0, 2)
    return f"t{i:04d}\t{label}\t{' '.join(toks)}"


rows = []
i = 0
for label, n in [("positive", 60), ("negative", 60), ("neutral", 50), ("mixed", 30)]:
    for _ in range(n):
        rows.append(make(label, i))
        i += 1

with open("fixtures/corpus_synthetic.tsv", "w", encoding="utf-8") as f:
    f.write("# synthetic stand-in corpus, regenerate with make_synthetic.py\n")
    f.write("\n".join(rows) + "\n")
print(f"wrote {len(rows)} tweets")
