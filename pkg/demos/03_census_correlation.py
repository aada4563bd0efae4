"""
Census of tiny elections and metric agreement
=============================================

For tiny shapes every election can be enumerated up to candidate renaming
and voter reordering. The census counts those classes and how coarsely
each representation merges them, then measures how strongly the cheap
metrics track the expensive swap distance across the full census.
"""

import itertools

from electodist import correlation, count_equivalence_classes, enumerate_anecs

print("m,n,anecs,positionwise,pairwise,bordawise")
for m, n in [(3, 3), (3, 4), (3, 5), (4, 3)]:
    print(count_equivalence_classes(m, n).to_csv_row())

# every pair of distinct 3x3 classes, swap against each cheaper metric
reps = list(enumerate_anecs(3, 3))
print(f"\n{len(reps)} classes at m=3 n=3,"
      f" {len(reps) * (len(reps) - 1) // 2} unordered pairs")
print(f"{'metric':10s} {'pearson':>8s} {'spearman':>9s}")
for kind in ("emdpos", "pairwise", "bordawise", "l1pos", "discrete"):
    rep = correlation(reps, "swap", kind)
    print(f"{kind:10s} {rep.pearson:8.4f} {rep.spearman:9.4f}")
