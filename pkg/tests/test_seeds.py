import json

import numpy as np
import pytest

from qcluster.seeds import (
    SeedError,
    apply_symmetry,
    chiral_dual,
    langlands_dual,
    mutate_seed,
    new_seed,
    random_seed,
    relabel_seed,
    seed_from_json,
    seed_to_json,
    sgn,
)


def test_sgn_zero_convention():
    assert sgn(0) == 0 and sgn(3) == 1 and sgn(-2) == -1


def test_new_seed_accepts_skew_integer_matrix():
    s = new_seed([1, 2], [[0, 1], [-1, 0]], [1, 1])
    assert s.epsilon == ((0, 1), (-1, 0))


def test_new_seed_accepts_multiplier_skew():
    # eps_ij/d_j = [[0, 1], [-1, 0]] exactly
    s = new_seed([1, 2], [[0, 2], [-1, 0]], [1, 2])
    eh = s.epsilon_hat()
    assert eh[0][1] == 1 and eh[1][0] == -1


def test_new_seed_rejects_symmetric_matrix():
    with pytest.raises(SeedError):
        new_seed([1, 2], [[0, 1], [1, 0]], [1, 1])


def test_new_seed_rejects_bad_multipliers_and_shape():
    with pytest.raises(SeedError):
        new_seed([1, 2], [[0, 1], [-1, 0]], [1, 0])
    with pytest.raises(SeedError):
        new_seed([1, 2], [[0, 1], [-1, 0]], [1])
    with pytest.raises(SeedError):
        new_seed([1, 2], [[0, 1, 0], [-1, 0, 0]], [1, 1])


def test_mutation_rank2_negates():
    s = new_seed([1, 2], [[0, 1], [-1, 0]], [1, 1])
    assert mutate_seed(s, 1).epsilon == ((0, -1), (1, 0))


def test_mutation_rank3_three_case_formula():
    s = new_seed([1, 2, 3], [[0, 1, 0], [-1, 0, 1], [0, -1, 0]], [1, 1, 1])
    assert mutate_seed(s, 2).epsilon == ((0, -1, 1), (1, 0, -1), (-1, 1, 0))


def test_mutation_involutive_on_random_seeds():
    rng = np.random.default_rng(11)
    for _ in range(100):
        s = random_seed(rng, rank=int(rng.integers(1, 7)))
        k = s.labels[int(rng.integers(0, s.rank))]
        assert mutate_seed(mutate_seed(s, k), k) == s


def test_mutation_preserves_skew_invariant():
    rng = np.random.default_rng(5)
    for _ in range(40):
        s = random_seed(rng, rank=4)
        k = s.labels[int(rng.integers(0, 4))]
        m = mutate_seed(s, k)
        eh = m.epsilon_hat()
        for i in range(4):
            for j in range(4):
                assert eh[i][j] == -eh[j][i]


def test_mutation_unknown_label():
    s = new_seed([1, 2], [[0, 1], [-1, 0]], [1, 1])
    with pytest.raises(SeedError):
        mutate_seed(s, 99)


def test_symmetry_identity_and_rejection():
    s = new_seed([1, 2], [[0, 1], [-1, 0]], [1, 1])
    assert apply_symmetry(s, {1: 1, 2: 2}) == s
    with pytest.raises(SeedError):
        apply_symmetry(s, {1: 2, 2: 1})      # eps_21 != eps_12


def test_symmetry_of_zero_matrix():
    s = new_seed([1, 2], [[0, 0], [0, 0]], [1, 1])
    assert apply_symmetry(s, {1: 2, 2: 1}) == s


def test_relabel_transports_matrix():
    s = new_seed([1, 2], [[0, 1], [-1, 0]], [1, 1])
    r = relabel_seed(s, {1: 2, 2: 1})
    assert r.epsilon == ((0, -1), (1, 0))


def test_chiral_dual_examples():
    s = new_seed([1, 2], [[0, 1], [-1, 0]], [1, 1])
    assert chiral_dual(s).epsilon == ((0, -1), (1, 0))
    assert chiral_dual(chiral_dual(s)) == s


def test_chiral_commutes_with_mutation():
    rng = np.random.default_rng(13)
    for _ in range(40):
        s = random_seed(rng, rank=3)
        k = s.labels[int(rng.integers(0, 3))]
        assert chiral_dual(mutate_seed(s, k)) == mutate_seed(chiral_dual(s), k)


def test_langlands_examples():
    s = new_seed([1, 2], [[0, 1], [-1, 0]], [1, 1])
    assert langlands_dual(s) == s
    s2 = new_seed([1, 2], [[0, 2], [-1, 0]], [1, 2])
    d = langlands_dual(s2)
    assert d.epsilon == ((0, 1), (-2, 0))
    assert d.d == (2, 1)


def test_langlands_commutes_with_mutation():
    rng = np.random.default_rng(17)
    for _ in range(40):
        s = random_seed(rng, rank=3)
        k = s.labels[int(rng.integers(0, 3))]
        assert langlands_dual(mutate_seed(s, k)) == mutate_seed(langlands_dual(s), k)


def test_json_round_trip():
    s = new_seed([1, 2], [[0, 2], [-1, 0]], [1, 2])
    text = seed_to_json(s)
    doc = json.loads(text)
    assert doc["schema"] == 1
    assert seed_from_json(text) == s


def test_json_rejects_malformed():
    with pytest.raises(SeedError):
        seed_from_json("{not json")
    with pytest.raises(SeedError):
        seed_from_json('{"labels": [1]}')
