"""
Which summary statistics come from real elections
=================================================

A Borda score vector, a position matrix, or a weighted majority matrix
summarizes an election, but not every plausible-looking summary is
realizable. These procedures either produce a witness election or prove
there is none.
"""

import numpy as np

from electodist import (
    Election,
    borda_realizable,
    borda_vector,
    majority_matrix,
    majority_realizable_bruteforce,
    position_matrix,
    recover_election,
)

# scores (3, 5, 1) with three voters: realizable, and here is a witness
witness = borda_realizable((3, 5, 1), 3)
print("witness votes for scores (3,5,1):", witness.votes)
print("its Borda vector:", borda_vector(witness).tolist())

# two candidates cannot both take the maximum score
print("scores (6,6,0,0) with n=2:", borda_realizable((6, 6, 0, 0), 2))

# any integer matrix with equal row and column sums is a position matrix,
# and peeling perfect matchings recovers an election for it
target = np.array([[2, 1, 0], [1, 2, 0], [0, 0, 3]])
e = recover_election(target)
print("\nrecovered votes:", e.votes)
print("round-trip exact:", np.array_equal(position_matrix(e), target))

# majority matrices at tiny sizes are decided by exhaustive search
cyclic = Election(3, [(0, 1, 2), (1, 2, 0), (2, 0, 1)])
found = majority_realizable_bruteforce(majority_matrix(cyclic), 3)
print("\ncyclic majority matrix realized by:", found.votes)

# a one-voter Condorcet cycle is impossible
impossible = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
print("one-voter cycle realizable:", majority_realizable_bruteforce(impossible, 1))
