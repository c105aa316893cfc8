"""Writes the synthetic triplet and Recall@k fixtures (seeded, reproducible).

    python3 tools/fixtures/make_sts_fixtures.py data/fixtures
"""
import json
import random
import sys
from pathlib import Path

# concept -> (snippet templates, query templates). Queries use wording that
# only partly overlaps the snippet, so a trained projection has room to help.
CONCEPTS = {
    "fabric": (["Fabric: {v} cotton", "Material: pure {v} cotton fabric"],
               ["what material is the {item} made of", "is the {item} fabric soft",
                "which material is used for this {item}"]),
    "wash": (["Wash Care: machine wash cold", "Care Instructions: gentle machine wash"],
             ["how do i wash the {item}", "can the {item} go in a washing machine",
              "what are the care instructions for the {item}"]),
    "fit": (["Fit: {v} fit", "Fit Type: {v} fit through the body"],
            ["is the {item} slim or loose", "how does the {item} fit",
             "will this {item} fit a broad frame"]),
    "sleeve": (["Sleeve Length: full sleeve", "Sleeves: half sleeve"],
               ["how long are the sleeves of the {item}", "does the {item} have short sleeves",
                "what sleeve length does this {item} have"]),
    "neck": (["Neck: round neck", "Neckline: v neck collar"],
             ["what is the neckline of the {item}", "does the {item} have a collar",
              "which neck style is this {item}"]),
    "pattern": (["Pattern: solid plain", "Print: floral printed pattern"],
                ["is the {item} printed or plain", "does the {item} have a print",
                 "what pattern is on the {item}"]),
    "occasion": (["Occasion: casual wear", "Occasion: office and formal wear"],
                 ["can i wear the {item} to the office", "is this {item} good for a party",
                  "what occasion suits this {item}"]),
    "length": (["Length: knee length", "Garment Length: ankle length"],
               ["how long is the {item}", "what is the length of this {item}",
                "does the {item} reach the knee"]),
    "closure": (["Closure: zip closure", "Fastening: button closure"],
                ["does the {item} have buttons or a zip", "how do i close the {item}",
                 "what kind of closure does this {item} use"]),
    "colour": (["Colour: navy blue", "Shade: maroon red colour"],
               ["what colour is the {item}", "is the {item} available in a dark shade",
                "which shade is this {item}"]),
}
ITEMS = ["shirt", "kurta", "dress", "jacket", "top", "trousers", "hoodie", "skirt"]
VALUES = ["regular", "slim", "relaxed", "combed", "organic", "soft"]
FILLER = [
    "Delivered on time and well packed.",
    "Looks exactly like the picture.",
    "Good value for the price paid.",
    "My friend liked it a lot.",
    "Returned once because of a delay.",
]


def snippet(rng, concept):
    return rng.choice(CONCEPTS[concept][0]).format(v=rng.choice(VALUES))


def query(rng, concept, item):
    return rng.choice(CONCEPTS[concept][1]).format(item=item)


def triplets(rng, n):
    names = sorted(CONCEPTS)
    out = []
    for i in range(n):
        c = names[i % len(names)]
        other = rng.choice([x for x in names if x != c])
        out.append({"q": query(rng, c, rng.choice(ITEMS)), "p": snippet(rng, c), "n": snippet(rng, other)})
    return out


def recall_cases(rng, n, per_case=30):
    names = sorted(CONCEPTS)
    out = []
    for i in range(n):
        c = names[(i * 3) % len(names)]
        item = rng.choice(ITEMS)
        cands = []
        truth = []
        for k in range(per_case):
            cid = f"c{i:02d}_{k:02d}"
            if k == 0:
                text, concept = snippet(rng, c), c
            elif k < 20:
                concept = rng.choice([x for x in names if x != c])
                text = snippet(rng, concept)
            else:
                concept = None
                text = rng.choice(FILLER) + f" The {item} is nice."
            if concept == c:
                truth.append(cid)
            cands.append({"id": cid, "text": text})
        rng.shuffle(cands)
        out.append({"query": query(rng, c, item), "candidates": cands, "truth_ids": truth})
    return out


def main():
    target = Path(sys.argv[1] if len(sys.argv) > 1 else "data/fixtures")
    rng = random.Random(20240601)
    with open(target / "triplets.jsonl", "w") as f:
        for t in triplets(rng, 50):
            f.write(json.dumps(t) + "\n")
    with open(target / "recall_cases.jsonl", "w") as f:
        for c in recall_cases(rng, 20):
            f.write(json.dumps(c) + "\n")


if __name__ == "__main__":
    main()
