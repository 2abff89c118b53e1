#!/usr/bin/env python3
"""Generate the synthetic planted-signal corpus used by the benchmark tests.

Writes into data/synthetic/:
  corpus.json            300 sonnets (240 annotated DISCO_PAL, 40 DISCO, 20 XX_EXTENSION)
  sentence_dim8.jsonl    sentence-level embeddings, dim 8
  tokens_dim4.jsonl      token-level embeddings, dim 4 (for pooling)
  lexicon_affect.csv     toy affective lexicon
  lexicon_semantic.csv   toy lexico-semantic lexicon

psychological/solitude is planted as a noisy linear function of embedding
dims 0 and 1; every other label is independent noise.

Usage: make_synthetic.py [--out DIR] [--seed N]
"""

import argparse
import json
import os
import random

PSYCHOLOGICAL = [
    "solitude", "anxiety", "illusion", "anger", "daydream", "instability", "grandeur",
    "idealization", "pride", "depression", "irritability", "disappointment", "dramatisation",
    "prejudice", "aversion", "insecurity", "helplessness", "vulnerability", "fear",
    "obsession", "compulsion",
]
SCALED = [
    "valence", "arousal", "happiness", "disgust", "anger", "sadness", "fear",
    "concreteness", "imageability", "context_availability",
]

CONTENT = [
    "amor", "muerte", "vida", "alma", "fuego", "sombra", "noche", "rosa", "mar", "cielo",
    "viento", "llanto", "gloria", "tiempo", "olvido", "ceniza", "herida", "dolor", "pena",
    "luz", "tierra", "sangre", "sueño", "esperanza", "fortuna", "hielo", "flor", "río",
    "camino", "lágrima", "silencio", "memoria", "ausencia", "deseo", "voz", "mano",
    "llama", "polvo", "nube", "estrella", "ardiente", "triste", "dulce", "fiero", "claro",
    "oscuro", "solo", "eterno", "cansado", "perdido", "canta", "llora", "muere", "arde",
    "vuelve", "espera", "mira", "huye", "duerme", "busca",
]
STOP = ["el", "la", "los", "las", "de", "en", "y", "que", "mi", "tu", "su", "por", "con", "sin", "del", "al"]

N_ANNOTATED = 240
N_DISCO = 40
N_EXTENSION = 20
SHAPE = (4, 4, 3, 3)


def line(rng):
    words = []
    for _ in range(rng.randint(5, 7)):
        words.append(rng.choice(STOP) if rng.random() < 0.35 else rng.choice(CONTENT))
    return " ".join(words).capitalize()


def sonnet(rng, idx, source, period):
    return {
        "id": f"syn{idx:03d}",
        "author": f"Autor {rng.randint(1, 25)}",
        "period": period,
        "title": f"Soneto sintético {idx}",
        "source": source,
        "stanzas": [[line(rng) for _ in range(n)] for n in SHAPE],
    }


def fmt(x):
    return float(repr(x))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "synthetic"))
    ap.add_argument("--seed", type=int, default=20240607)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    os.makedirs(args.out, exist_ok=True)

    sonnets, annotations, vectors = [], {}, {}
    periods = ["XVI", "XVII", "XVIII", "XIX"]
    plan = [("DISCO_PAL", N_ANNOTATED), ("DISCO", N_DISCO), ("XX_EXTENSION", N_EXTENSION)]
    idx = 0
    for source, count in plan:
        for _ in range(count):
            period = "XX" if source == "XX_EXTENSION" else rng.choice(periods)
            s = sonnet(rng, idx, source, period)
            x = [rng.gauss(0.0, 1.0) for _ in range(8)]
            vectors[s["id"]] = x
            if source == "DISCO_PAL":
                score = 1.0 * x[0] + 0.8 * x[1] + rng.gauss(0.0, 0.35)
                psych = {c: int(rng.random() < 0.3) for c in PSYCHOLOGICAL}
                psych["solitude"] = int(score > 0.3)
                scaled = {c: rng.randint(1, 4) for c in SCALED}
                annotations[s["id"]] = {"psychological": psych, "scaled": scaled}
            sonnets.append(s)
            idx += 1

    with open(os.path.join(args.out, "corpus.json"), "w", encoding="utf-8") as f:
        json.dump({"sonnets": sonnets, "annotations": annotations}, f, ensure_ascii=False, indent=1)
        f.write("\n")

    with open(os.path.join(args.out, "sentence_dim8.jsonl"), "w", encoding="utf-8") as f:
        f.write(json.dumps({"model": "synthetic-sentence-8", "level": "sentence", "dim": 8}) + "\n")
        for s in sonnets:
            f.write(json.dumps({"id": s["id"], "vector": [fmt(v) for v in vectors[s["id"]]]}) + "\n")

    # Token vectors: one fixed vector per word type plus per-occurrence jitter.
    word_vec = {w: [rng.gauss(0.0, 1.0) for _ in range(4)] for w in CONTENT}
    stop = set(STOP)
    with open(os.path.join(args.out, "tokens_dim4.jsonl"), "w", encoding="utf-8") as f:
        f.write(json.dumps({"model": "synthetic-token-4", "level": "token", "dim": 4}) + "\n")
        for s in sonnets:
            toks = []
            for stanza in s["stanzas"]:
                for ln in stanza:
                    for w in ln.lower().split():
                        if w in stop:
                            continue
                        toks.append({"t": w, "v": [fmt(v + rng.gauss(0.0, 0.1)) for v in word_vec[w]]})
            f.write(json.dumps({"id": s["id"], "tokens": toks}, ensure_ascii=False) + "\n")

    # Two toy lexicons covering overlapping parts of the vocabulary.
    affect_dims = ["valence", "arousal", "happiness", "anger", "sadness", "fear", "disgust"]
    with open(os.path.join(args.out, "lexicon_affect.csv"), "w", encoding="utf-8") as f:
        f.write("word," + ",".join(f"{d}_mean,{d}_sd" for d in affect_dims) + "\n")
        for w in CONTENT[:40]:
            cells = []
            for d in affect_dims:
                hi = 9.0 if d in ("valence", "arousal") else 5.0
                cells.append(f"{rng.uniform(1.0, hi):.2f}")
                cells.append(f"{rng.uniform(0.3, 2.0):.2f}")
            f.write(w + "," + ",".join(cells) + "\n")
    sem_dims = ["concreteness", "imageability", "context_availability"]
    with open(os.path.join(args.out, "lexicon_semantic.csv"), "w", encoding="utf-8") as f:
        f.write("word," + ",".join(f"{d}_mean,{d}_sd" for d in sem_dims) + "\n")
        for w in CONTENT[20:55]:
            cells = []
            for _ in sem_dims:
                cells.append(f"{rng.uniform(1.0, 9.0):.2f}")
                cells.append(f"{rng.uniform(0.3, 2.0):.2f}")
            f.write(w + "," + ",".join(cells) + "\n")


if __name__ == "__main__":
    main()
