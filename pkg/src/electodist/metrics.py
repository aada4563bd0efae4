"""The six election metrics, with exact algorithms and witnesses.

Two isomorphic metrics (swap, discrete) optimize over candidate and voter
matchings jointly; two positionwise metrics (EMD, l1) and the pairwise
metric optimize over candidate matchings only; the Bordawise metric needs
no matching at all.  Every routine returns exact values: integer inputs
give integer distances, Fraction inputs give Fraction distances.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from .elections import Election, all_orders, majority_matrix, borda_vector, position_matrix

__all__ = [
    "METRIC_KINDS",
    "DistanceOutcome",
    "vote_swap_distance",
    "vote_discrete_distance",
    "l1",
    "emd",
    "solve_assignment",
    "iso_distance",
    "positionwise_distance",
    "pairwise_cost_at",
    "pairwise_distance",
    "bordawise_distance",
    "distance",
    "brute_force_iso_distance",
]

METRIC_KINDS = ("swap", "discrete", "emdpos", "l1pos", "pairwise", "bordawise")

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class DistanceOutcome:
    """A distance value plus optional optimal matchings.

    ``candidate_matching`` maps candidates of the first election to
    candidates of the second; ``voter_matching`` maps voter i of the first
    to a voter of the second (isomorphic metrics only).  ``exact`` is False
    only if a search was truncated, which no current algorithm does.
    """

    value: Number
    candidate_matching: Optional[tuple[int, ...]] = None
    voter_matching: Optional[tuple[int, ...]] = None
    exact: bool = True


def vote_swap_distance(u: Sequence[int], v: Sequence[int]) -> int:
    """Number of candidate pairs that u and v rank oppositely."""
    m = len(u)
    if len(v) != m:
        raise ValueError(f"votes have different lengths {m} and {len(v)}")
    pos_v = [0] * m
    for i, c in enumerate(v):
        pos_v[c] = i
    count = 0
    for i in range(m):
        for j in range(i + 1, m):
            if pos_v[u[i]] > pos_v[u[j]]:
                count += 1
    return count


def vote_discrete_distance(u: Sequence[int], v: Sequence[int]) -> int:
    """0 if the votes are identical, 1 otherwise."""
    if len(u) != len(v):
        raise ValueError(f"votes have different lengths {len(u)} and {len(v)}")
    return 0 if tuple(u) == tuple(v) else 1


def l1(x: Sequence[Number], y: Sequence[Number]) -> Number:
    """Sum of absolute coordinate differences."""
    if len(x) != len(y):
        raise ValueError(f"vectors have different lengths {len(x)} and {len(y)}")
    total = 0
    for a, b in zip(x, y):
        total += abs(a - b)
    return total


def _sums_match(sx: Number, sy: Number) -> bool:
    if isinstance(sx, float) or isinstance(sy, float):
        return math.isclose(sx, sy, rel_tol=1e-9, abs_tol=1e-9)
    return sx == sy


def emd(x: Sequence[Number], y: Sequence[Number]) -> Number:
    """Earth mover's distance between two same-sum nonnegative vectors.

    Computed as the l1 distance of the prefix-sum vectors, which equals the
    minimum total move cost of any transport between the distributions.
    """
    if len(x) != len(y):
        raise ValueError(f"vectors have different lengths {len(x)} and {len(y)}")
    for v in itertools.chain(x, y):
        if v < 0:
            raise ValueError(f"negative entry {v} in emd input")
    if not _sums_match(sum(x), sum(y)):
        raise ValueError(f"emd inputs have different sums {sum(x)} and {sum(y)}")
    running = 0
    total = 0
    for a, b in zip(x, y):
        running += a - b
        total += abs(running)
    return total


def _exact_total(costs: Sequence[Sequence[Number]], matching: Sequence[int]) -> Number:
    total = 0
    for i, c in enumerate(matching):
        total += costs[i][c]
    return total


def _numeric_matrix(costs) -> tuple[np.ndarray, list[list[Number]]]:
    # returns (float array for the solver, python-number rows for exact sums)
    arr = np.asarray(costs)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"cost matrix must be square, got shape {arr.shape}")
    rows = [list(r) for r in (costs.tolist() if hasattr(costs, "tolist") else costs)]
    if arr.dtype == object:
        flat = [v for row in rows for v in row]
        if any(isinstance(v, float) for v in flat):
            num = arr.astype(float)
        else:
            # Fractions and ints: scale by the lcm of denominators so the
            # float solve is exact (values must stay below 2**53)
            denoms = [v.denominator for v in flat if isinstance(v, Fraction)]
            scale = math.lcm(*denoms) if denoms else 1
            scaled = [[int(v * scale) for v in row] for row in rows]
            peak = max((abs(v) for row in scaled for v in row), default=0)
            if peak * max(arr.shape[0], 1) >= 2**53:
                raise ValueError("cost matrix values too large for exact solving")
            num = np.array(scaled, dtype=float)
    else:
        num = arr.astype(float)
    if not np.all(np.isfinite(num)):
        raise ValueError("cost matrix entries must be finite")
    return num, rows


def _values_equal(a: Number, b: Number) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9)
    return a == b


def solve_assignment(costs, lexmin: bool = True) -> tuple[tuple[int, ...], Number]:
    """Minimum-cost perfect matching on a square cost matrix.

    Returns (matching, total) where matching[i] is the column assigned to
    row i.  With lexmin=True the matching is the lexicographically smallest
    among all optimal ones; the refinement re-solves reduced problems, so
    skip it in inner loops that only need the value.
    """
    num, rows = _numeric_matrix(costs)
    k = num.shape[0]
    if k == 0:
        return (), 0
    ri, ci = linear_sum_assignment(num)
    matching = [0] * k
    for r, c in zip(ri, ci):
        matching[r] = int(c)
    best_total = _exact_total(rows, matching)
    if not lexmin:
        return tuple(matching), best_total

    cols_left = list(range(k))
    fixed: list[int] = []
    fixed_cost: Number = 0
    for i in range(k):
        rest_rows = list(range(i + 1, k))
        for c in cols_left:
            rest_cols = [x for x in cols_left if x != c]
            if rest_rows:
                sub = num[np.ix_(rest_rows, rest_cols)]
                sri, sci = linear_sum_assignment(sub)
                sub_total = _exact_total(
                    [[rows[r][rest_cols[x]] for x in range(len(rest_cols))] for r in rest_rows],
                    [int(x) for x in sci[np.argsort(sri)]],
                )
            else:
                sub_total = 0
            if _values_equal(fixed_cost + rows[i][c] + sub_total, best_total):
                fixed.append(c)
                fixed_cost = fixed_cost + rows[i][c]
                cols_left.remove(c)
                break
        else:
            raise RuntimeError("lexmin refinement failed to place a row")
    return tuple(fixed), best_total


@lru_cache(maxsize=None)
def _perm_array(m: int) -> np.ndarray:
    arr = np.array(all_orders(m), dtype=np.int64)
    arr.setflags(write=False)
    return arr


def _order_matrices(election: Election) -> np.ndarray:
    # O[v, a, b] = 1 iff voter v prefers a to b
    arr = election.array
    n, m = arr.shape
    pos = np.empty((n, m), dtype=np.int64)
    rows = np.arange(n)[:, None]
    pos[rows, arr] = np.arange(m)[None, :]
    return (pos[:, :, None] < pos[:, None, :]).astype(np.int64)


def _check_same_shape(a: Election, b: Election) -> None:
    if a.m != b.m or a.n != b.n:
        raise ValueError(
            f"elections differ in shape: ({a.m}, {a.n}) vs ({b.m}, {b.n})"
        )


def _iso_swap(a: Election, b: Election, guard: int) -> DistanceOutcome:
    m, n = a.m, a.n
    if m > guard:
        raise ValueError(f"swap distance guarded at m <= {guard} (got m={m})")
    ma = majority_matrix(a)
    mb = majority_matrix(b)
    perms = _perm_array(m)
    # lower bound per relabeling: half the l1 distance of majority matrices,
    # since every disagreeing voter pair forces at least one inversion
    mb_perm = mb[perms[:, :, None], perms[:, None, :]]
    lbs = np.abs(mb_perm - ma[None, :, :]).sum(axis=(1, 2)) // 2
    suffix_min = np.minimum.accumulate(lbs[::-1])[::-1]

    oa = _order_matrices(a)
    ob_flat = _order_matrices(b).reshape(n, m * m)
    k_total = m * (m - 1) // 2
    inv = np.empty(m, dtype=np.int64)

    best = None
    best_sigma: tuple[int, ...] = ()
    best_rho: tuple[int, ...] = ()
    orders = all_orders(m)
    for idx in range(len(orders)):
        if best is not None:
            if best <= suffix_min[idx]:
                break
            if lbs[idx] >= best:
                continue
        sigma = orders[idx]
        inv[np.array(sigma)] = np.arange(m)
        oa_sigma = oa[:, inv][:, :, inv].reshape(n, m * m)
        cost = k_total - oa_sigma @ ob_flat.T
        ri, ci = linear_sum_assignment(cost)
        value = int(cost[ri, ci].sum())
        if best is None or value < best:
            best = value
            best_sigma = sigma
            rho = [0] * n
            for r, c in zip(ri, ci):
                rho[r] = int(c)
            best_rho = tuple(rho)
    return DistanceOutcome(best, best_sigma, best_rho)


def _iso_discrete(a: Election, b: Election) -> DistanceOutcome:
    m, n = a.m, a.n
    counts_b: dict[tuple[int, ...], int] = {}
    for w in b.votes:
        counts_b[w] = counts_b.get(w, 0) + 1
    # any relabeling with a shared vote maps some vote of a onto some vote
    # of b exactly, which determines it completely
    candidates = set()
    for u in set(a.votes):
        for w in counts_b:
            sigma = [0] * m
            for uc, wc in zip(u, w):
                sigma[uc] = wc
            candidates.add(tuple(sigma))
    best_overlap = 0
    best_sigma = tuple(range(m))
    for sigma in sorted(candidates):
        counts_a: dict[tuple[int, ...], int] = {}
        for u in a.votes:
            t = tuple(sigma[c] for c in u)
            counts_a[t] = counts_a.get(t, 0) + 1
        overlap = sum(min(cnt, counts_b.get(t, 0)) for t, cnt in counts_a.items())
        if overlap > best_overlap:
            best_overlap = overlap
            best_sigma = sigma

    relabeled = [tuple(best_sigma[c] for c in u) for u in a.votes]
    free_b: dict[tuple[int, ...], list[int]] = {}
    for j in range(n - 1, -1, -1):
        free_b.setdefault(b.votes[j], []).append(j)
    rho = [-1] * n
    for i, t in enumerate(relabeled):
        stack = free_b.get(t)
        if stack:
            rho[i] = stack.pop()
    leftover_b = sorted(j for stack in free_b.values() for j in stack)
    it = iter(leftover_b)
    for i in range(n):
        if rho[i] < 0:
            rho[i] = next(it)
    return DistanceOutcome(n - best_overlap, best_sigma, tuple(rho))


def iso_distance(a: Election, b: Election, kind: str, guard: int = 8) -> DistanceOutcome:
    """Exact isomorphic distance, minimizing over candidate and voter matchings.

    kind is "swap" (inversion counts per matched vote pair; m guarded,
    default 8) or "discrete" (count of unmatched votes; polynomial).
    """
    _check_same_shape(a, b)
    if kind == "swap":
        return _iso_swap(a, b, guard)
    if kind == "discrete":
        return _iso_discrete(a, b)
    raise ValueError(f"unknown isomorphic kind {kind!r}, expected 'swap' or 'discrete'")


def _position_columns(x) -> list[list[Number]]:
    if isinstance(x, Election):
        mat = position_matrix(x)
        return [[int(mat[i, c]) for i in range(x.m)] for c in range(x.m)]
    arr = np.asarray(x)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"position matrix must be square, got shape {arr.shape}")
    rows = arr.tolist()
    m = arr.shape[0]
    return [[rows[i][c] for i in range(m)] for c in range(m)]


def positionwise_distance(a, b, variant: str = "EMD") -> DistanceOutcome:
    """Positionwise distance between elections or position/frequency matrices.

    Each candidate contributes the EMD (or l1, per variant) between its two
    position distributions; the reported value is the minimum total over all
    candidate matchings.
    """
    v = variant.upper()
    if v not in ("EMD", "L1"):
        raise ValueError(f"unknown variant {variant!r}, expected 'EMD' or 'L1'")
    if isinstance(a, Election) and isinstance(b, Election):
        _check_same_shape(a, b)
    cols_a = _position_columns(a)
    cols_b = _position_columns(b)
    if len(cols_a) != len(cols_b):
        raise ValueError(
            f"matrices differ in size: {len(cols_a)} vs {len(cols_b)}"
        )
    dist = emd if v == "EMD" else l1
    m = len(cols_a)
    costs = [[dist(cols_a[c], cols_b[d]) for d in range(m)] for c in range(m)]
    matching, total = solve_assignment(np.array(costs, dtype=object))
    return DistanceOutcome(total, matching, None)


def _majority_of(x) -> np.ndarray:
    if isinstance(x, Election):
        return majority_matrix(x)
    arr = np.asarray(x, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"majority matrix must be square, got shape {arr.shape}")
    return arr


def pairwise_cost_at(a, b, sigma: Sequence[int]) -> int:
    """Sum over ordered candidate pairs of |M_a(c,d) - M_b(sigma c, sigma d)|."""
    ma = _majority_of(a)
    mb = _majority_of(b)
    if isinstance(a, Election) and isinstance(b, Election):
        _check_same_shape(a, b)
    if ma.shape != mb.shape:
        raise ValueError(f"matrices differ in shape: {ma.shape} vs {mb.shape}")
    m = ma.shape[0]
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(m)):
        raise ValueError(f"matching must be a permutation of 0..{m - 1}")
    s = np.array(sigma)
    return int(np.abs(ma - mb[s[:, None], s[None, :]]).sum())


def pairwise_distance(a, b, guard: int = 10) -> DistanceOutcome:
    """Exact pairwise distance: minimum of pairwise_cost_at over all matchings.

    Branch and bound over candidate matchings built in lexicographic order.
    The bound charges every unassigned candidate its cheapest possible
    disagreement against the already-assigned ones, which never overcounts.
    """
    ma = _majority_of(a)
    mb = _majority_of(b)
    if isinstance(a, Election) and isinstance(b, Election):
        _check_same_shape(a, b)
    if ma.shape != mb.shape:
        raise ValueError(f"matrices differ in shape: {ma.shape} vs {mb.shape}")
    m = ma.shape[0]
    if m > guard:
        raise ValueError(f"pairwise distance guarded at m <= {guard} (got m={m})")

    identity = tuple(range(m))
    best = pairwise_cost_at(ma, mb, identity)
    best_sigma = identity

    sigma = [0] * m
    assigned: list[int] = []

    def extension_cost(c: int, t: int) -> int:
        total = 0
        for d in assigned:
            total += abs(int(ma[c, d]) - int(mb[t, sigma[d]]))
            total += abs(int(ma[d, c]) - int(mb[sigma[d], t]))
        return total

    def lower_bound(free_cols: list[int], next_row: int) -> int:
        total = 0
        for c in range(next_row, m):
            total += min(extension_cost(c, t) for t in free_cols)
        return total

    def search(row: int, partial: int, free_cols: list[int]) -> None:
        nonlocal best, best_sigma
        if row == m:
            if partial < best:
                best = partial
                best_sigma = tuple(sigma)
            return
        for t in free_cols:
            step = partial + extension_cost(row, t)
            if step >= best:
                continue
            rest = [x for x in free_cols if x != t]
            sigma[row] = t
            assigned.append(row)
            if rest and step + lower_bound(rest, row + 1) >= best:
                assigned.pop()
                continue
            search(row + 1, step, rest)
            assigned.pop()

    search(0, 0, list(range(m)))
    return DistanceOutcome(best, best_sigma, None)


def bordawise_distance(a: Election, b: Election) -> DistanceOutcome:
    """EMD between the nonincreasingly sorted Borda score vectors."""
    _check_same_shape(a, b)
    sa = sorted((int(v) for v in borda_vector(a)), reverse=True)
    sb = sorted((int(v) for v in borda_vector(b)), reverse=True)
    return DistanceOutcome(emd(sa, sb), None, None)


def distance(a: Election, b: Election, kind: str) -> DistanceOutcome:
    """Dispatch to one of the six metrics by name."""
    if kind == "swap" or kind == "discrete":
        return iso_distance(a, b, kind)
    if kind == "emdpos":
        return positionwise_distance(a, b, "EMD")
    if kind == "l1pos":
        return positionwise_distance(a, b, "L1")
    if kind == "pairwise":
        return pairwise_distance(a, b)
    if kind == "bordawise":
        return bordawise_distance(a, b)
    raise ValueError(f"unknown metric kind {kind!r}, expected one of {METRIC_KINDS}")


def brute_force_iso_distance(a: Election, b: Election, kind: str) -> int:
    """Exhaustive minimum over all candidate and voter matchings; m, n <= 4."""
    _check_same_shape(a, b)
    if a.m > 4 or a.n > 4:
        raise ValueError(f"brute force guarded at m <= 4, n <= 4 (got {a.m}, {a.n})")
    if kind == "swap":
        vote_dist = vote_swap_distance
    elif kind == "discrete":
        vote_dist = vote_discrete_distance
    else:
        raise ValueError(f"unknown isomorphic kind {kind!r}, expected 'swap' or 'discrete'")
    best = None
    for sigma in itertools.permutations(range(a.m)):
        relabeled = [tuple(sigma[c] for c in u) for u in a.votes]
        for rho in itertools.permutations(range(a.n)):
            total = sum(
                vote_dist(relabeled[i], b.votes[rho[i]]) for i in range(a.n)
            )
            if best is None or total < best:
                best = total
    return best
