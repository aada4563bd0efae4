"""
A map of elections
==================

Sample a dataset across all thirteen cultures, compute one metric on all
pairs, and lay the elections out in the plane so that point distances
approximate the metric. The result is written as CSV and SVG.
"""

from pathlib import Path

from electodist import (
    DEFAULT_CULTURES,
    EmbedConfig,
    distance_matrix,
    embed,
    export_map,
    sample_many,
)

m, n, seed, per_culture = 5, 10, 7, 4

labels, elections, classes = [], [], {}
for spec in DEFAULT_CULTURES:
    for i, e in enumerate(sample_many(spec, m, n, seed, per_culture)):
        label = f"{spec.label()}-{i}"
        labels.append(label)
        elections.append(e)
        classes[label] = spec.label()
print(f"dataset: {len(elections)} elections from {len(DEFAULT_CULTURES)} cultures")

dm = distance_matrix(elections, "emdpos", labels=labels)
print(f"distance matrix: {dm.cells.shape}, max {dm.cells.max():.0f}")

emb = embed(dm, EmbedConfig(seed=seed))
print(f"embedding stress: {emb.stress:.4f}")

outdir = Path("map-demo-out")
outdir.mkdir(exist_ok=True)
export_map(emb, classes, "csv", path=outdir / "map.csv")
export_map(emb, classes, "svg", path=outdir / "map.svg")
print("wrote", outdir / "map.csv", "and", outdir / "map.svg")
