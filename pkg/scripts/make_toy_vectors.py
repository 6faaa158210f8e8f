"""Regenerate data/vectors.txt: 50 words in three topical clusters.

Each word is its topic centre plus isotropic noise, so cosine similarity is
high within a topic and low across topics.
"""

import numpy as np

TOPICS = {
    "cooking": "pizza pasta soup bread cake cheese butter sauce water ice steam oven pot vegetables rice chicken fish",
    "sports": "team game match player ball goal coach race champion trophy crowd referee athlete stadium league medal fans",
    "politics": "government parliament law election party minister president taxes budget vote treaty senate court policy bill voters",
}
DIM = 8
SPREAD = 0.45


def main(path="src/honeyenc/data/vectors.txt", seed=20201):
    rng = np.random.default_rng(seed)
    centres = np.linalg.qr(rng.normal(size=(DIM, DIM)))[0][: len(TOPICS)]
    rows = []
    for centre, words in zip(centres, TOPICS.values()):
        for w in words.split():
            rows.append((w, centre + SPREAD * rng.normal(size=DIM) / np.sqrt(DIM)))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(rows)} {DIM}\n")
        for w, v in rows:
            fh.write(w + " " + " ".join(f"{x:.6f}" for x in v) + "\n")


if __name__ == "__main__":
    main()
