"""
Six distances between two small elections
=========================================

Three voters rank three candidates. The second election differs from the
first in a single vote, and every metric sees that difference at its own
scale.
"""

from electodist import Election, METRIC_KINDS, distance

a = Election(3, [(0, 1, 2), (1, 2, 0), (1, 0, 2)])
b = Election(3, [(0, 1, 2), (0, 1, 2), (1, 0, 2)])

# each metric returns the value plus the matchings that realize it
for kind in METRIC_KINDS:
    out = distance(a, b, kind)
    print(f"{kind:10s} {out.value}")

# the isomorphic swap distance also reports how candidates and voters
# were matched to reach the minimum
out = distance(a, b, "swap")
print("swap candidate matching:", out.candidate_matching)
print("swap voter matching:   ", out.voter_matching)

# renaming candidates and shuffling voters never changes any distance
from electodist import apply_matchings

moved = apply_matchings(a, (2, 0, 1), (1, 2, 0))
for kind in METRIC_KINDS:
    assert distance(a, moved, kind).value == 0
print("all six metrics vanish on an isomorphic copy")
