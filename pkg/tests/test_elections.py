from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from electodist import (
    COMPASS_KINDS,
    Election,
    all_orders,
    apply_matchings,
    borda_vector,
    canonical_anec_key,
    compass_election,
    compass_matrix,
    frequency_matrix,
    majority_matrix,
    parse_election,
    position_matrix,
    position_of,
    serialize_election,
)

from conftest import ALL_ORDERS_3, CYCLIC_DOUBLED, SMALL_A, SPLIT_REVERSED, elections


def test_election_basic_shape():
    assert SMALL_A.m == 3
    assert SMALL_A.n == 3
    assert SMALL_A.votes[1] == (1, 2, 0)
    assert SMALL_A.array.shape == (3, 3)
    assert SMALL_A.array.dtype == np.int64


def test_election_rejects_bad_votes():
    with pytest.raises(ValueError):
        Election(3, [(0, 1)])
    with pytest.raises(ValueError):
        Election(3, [(0, 1, 1)])
    with pytest.raises(ValueError):
        Election(3, [(0, 1, 3)])
    with pytest.raises(ValueError):
        Election(3, [])
    with pytest.raises(ValueError):
        Election(0, [()])


def test_election_is_immutable():
    with pytest.raises(AttributeError):
        SMALL_A.m = 5
    arr = SMALL_A.array
    with pytest.raises(ValueError):
        arr[0, 0] = 9


def test_election_equality_and_hash():
    again = Election(3, [(0, 1, 2), (1, 2, 0), (1, 0, 2)])
    assert again == SMALL_A
    assert hash(again) == hash(SMALL_A)
    assert SMALL_A != Election(3, [(0, 1, 2)] * 3)


def test_position_of():
    vote = (1, 2, 0)
    assert position_of(vote, 1) == 1
    assert position_of(vote, 2) == 2
    assert position_of(vote, 0) == 3
    with pytest.raises(ValueError):
        position_of(vote, 3)


def test_majority_matrix_known_values():
    expected = np.array([[0, 1, 2], [2, 0, 3], [1, 0, 0]])
    assert np.array_equal(majority_matrix(SMALL_A), expected)


def test_position_matrix_known_values():
    expected = np.array([[1, 2, 0], [1, 1, 1], [1, 0, 2]])
    assert np.array_equal(position_matrix(SMALL_A), expected)


def test_borda_vector_known_values():
    assert borda_vector(SMALL_A).tolist() == [3, 5, 1]


@given(elections())
@settings(max_examples=60, deadline=None)
def test_aggregate_invariants(election):
    m, n = election.m, election.n
    wins = majority_matrix(election)
    assert np.array_equal(np.diag(wins), np.zeros(m, dtype=np.int64))
    off = wins + wins.T
    np.fill_diagonal(off, n)
    assert np.all(off == n)
    counts = position_matrix(election)
    assert counts.sum(axis=0).tolist() == [n] * m
    assert counts.sum(axis=1).tolist() == [n] * m
    scores = borda_vector(election)
    assert scores.sum() == n * m * (m - 1) // 2
    # Borda is recoverable from both aggregates
    assert np.array_equal(scores, wins.sum(axis=1))
    weights = np.arange(m - 1, -1, -1)
    assert np.array_equal(scores, weights @ counts)


def test_frequency_matrix_is_bistochastic_fractions():
    freq = frequency_matrix(SMALL_A)
    assert freq[0, 1] == Fraction(2, 3)
    for i in range(3):
        assert sum(freq[i, :]) == 1
        assert sum(freq[:, i]) == 1


def test_apply_matchings_small_case():
    moved = apply_matchings(SMALL_A, (2, 0, 1), (1, 0, 2))
    # vote 0 of the result relabels vote 1 of the input
    assert moved.votes[0] == tuple((2, 0, 1)[c] for c in SMALL_A.votes[1])
    assert moved.votes[2] == tuple((2, 0, 1)[c] for c in SMALL_A.votes[2])


def test_apply_matchings_identity_is_noop():
    assert apply_matchings(SMALL_A, (0, 1, 2), (0, 1, 2)) == SMALL_A


def test_apply_matchings_validates():
    with pytest.raises(ValueError):
        apply_matchings(SMALL_A, (0, 1), (0, 1, 2))
    with pytest.raises(ValueError):
        apply_matchings(SMALL_A, (0, 1, 1), (0, 1, 2))
    with pytest.raises(ValueError):
        apply_matchings(SMALL_A, (0, 1, 2), (0, 2, 2))


def test_all_orders_lexicographic():
    orders = all_orders(3)
    assert len(orders) == 6
    assert orders[0] == (0, 1, 2)
    assert list(orders) == sorted(orders)


def test_compass_id():
    e = compass_election("ID", 4, 5)
    assert e.votes == ((0, 1, 2, 3),) * 5


def test_compass_an():
    e = compass_election("AN", 3, 6)
    assert e.votes[:3] == ((0, 1, 2),) * 3
    assert e.votes[3:] == ((2, 1, 0),) * 3
    assert e == SPLIT_REVERSED


def test_compass_un():
    e = compass_election("UN", 3, 12)
    counts = {}
    for v in e.votes:
        counts[v] = counts.get(v, 0) + 1
    assert counts == {v: 2 for v in all_orders(3)}


def test_compass_st():
    e = compass_election("ST", 4, 8)
    counts = {}
    for v in e.votes:
        assert set(v[:2]) == {0, 1}, "first block must fill the top half"
        counts[v] = counts.get(v, 0) + 1
    assert len(counts) == 4
    assert set(counts.values()) == {2}


def test_compass_divisibility_errors():
    with pytest.raises(ValueError):
        compass_election("AN", 3, 5)
    with pytest.raises(ValueError):
        compass_election("UN", 3, 8)
    with pytest.raises(ValueError):
        compass_election("ST", 3, 4)
    with pytest.raises(ValueError):
        compass_election("ST", 4, 6)
    with pytest.raises(ValueError):
        compass_election("XX", 3, 6)


@pytest.mark.parametrize("kind", COMPASS_KINDS)
def test_compass_matrix_matches_generated_election(kind):
    mat = compass_matrix(kind, 4)
    freq = frequency_matrix(compass_election(kind, 4, 24))
    assert np.array_equal(mat, freq)


def test_compass_matrix_an_odd_m():
    mat = compass_matrix("AN", 3)
    assert mat[1, 1] == 1
    assert mat[0, 0] == Fraction(1, 2)
    assert mat[0, 2] == Fraction(1, 2)
    assert mat[0, 1] == 0


def test_compass_matrix_st_rejects_odd_m():
    with pytest.raises(ValueError):
        compass_matrix("ST", 5)


@given(elections(), st.data())
@settings(max_examples=40, deadline=None)
def test_canonical_key_is_isomorphism_invariant(election, data):
    sigma = data.draw(st.permutations(range(election.m)))
    rho = data.draw(st.permutations(range(election.n)))
    moved = apply_matchings(election, tuple(sigma), tuple(rho))
    assert canonical_anec_key(moved) == canonical_anec_key(election)


def test_canonical_key_separates_known_nonisomorphic_triple():
    keys = {
        canonical_anec_key(ALL_ORDERS_3),
        canonical_anec_key(CYCLIC_DOUBLED),
        canonical_anec_key(SPLIT_REVERSED),
    }
    assert len(keys) == 3


def test_canonical_key_guard():
    big = Election(9, [tuple(range(9))])
    with pytest.raises(ValueError):
        canonical_anec_key(big)


def test_serialize_parse_round_trip():
    assert parse_election(serialize_election(SMALL_A)) == SMALL_A


def test_parse_accepts_comments_and_blank_lines():
    text = "# header comment\n3 2\n\n0 1 2\n# between votes\n2 1 0\n"
    e = parse_election(text)
    assert e.votes == ((0, 1, 2), (2, 1, 0))


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_election("")
    with pytest.raises(ValueError):
        parse_election("3\n0 1 2\n")
    with pytest.raises(ValueError):
        parse_election("a b\n0 1 2\n")
    with pytest.raises(ValueError):
        parse_election("3 2\n0 1 2\n")
    with pytest.raises(ValueError):
        parse_election("3 1\n0 1 1\n")
    with pytest.raises(ValueError):
        parse_election("3 1\n0 x 2\n")
    with pytest.raises(ValueError):
        parse_election("0 1\n\n")


def test_serialized_form_is_plain():
    text = serialize_election(Election(2, [(1, 0)]))
    assert text == "2 1\n1 0\n"
