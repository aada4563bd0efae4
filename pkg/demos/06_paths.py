"""
Walking between elections in unit steps
=======================================

Both positionwise metrics admit constructive paths: a chain of position
matrices from one election to the other where every hop has the smallest
nonzero distance the metric allows (4 for the l1 variant, 2 for the
earth mover variant) and the walked length never exceeds twice the
direct distance.
"""

import numpy as np

from electodist import (
    Election,
    emdpos_intrinsic_path,
    l1pos_intrinsic_path,
    position_matrix,
    positionwise_distance,
)

rng = np.random.default_rng(6)
a = Election(4, [tuple(map(int, rng.permutation(4))) for _ in range(6)])
b = Election(4, [tuple(map(int, rng.permutation(4))) for _ in range(6)])

for build, variant in ((l1pos_intrinsic_path, "L1"), (emdpos_intrinsic_path, "EMD")):
    direct = positionwise_distance(a, b, variant).value
    path = build(a, b)
    print(f"{variant}: direct {direct}, path of {len(path.steps) - 1} hops"
          f" of size {path.step_distance}, walked {path.total}")
    # every hop distance is honest: recompute it from the matrices
    for s, t in zip(path.steps, path.steps[1:]):
        assert positionwise_distance(s, t, variant).value == path.step_distance
    assert path.total <= 2 * direct

# the intermediate matrices are themselves valid elections
mid = emdpos_intrinsic_path(a, b).steps
print("\nfirst three matrices of the EMD walk:")
for matrix in mid[:3]:
    print(matrix, "")

# and each one can be materialized as actual votes
elections = emdpos_intrinsic_path(a, b).elections()
print("votes at the first interior point:", elections[1].votes[:3], "...")
