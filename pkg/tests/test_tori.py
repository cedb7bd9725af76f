import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from qcluster import seeds, tori
from qcluster.tori import (
    RationalExpr,
    WordError,
    avar,
    compose_word,
    eval_positive,
    identity_map,
    is_trivial_word,
    log_mutation_image,
    mutate_a_map,
    mutate_x_map,
    parse_word,
    projection_p,
    word_report,
    xvar,
)

PENTAGON = [("m", 1), ("m", 2), ("m", 1), ("m", 2), ("m", 1), ("s", {1: 2, 2: 1})]


def test_rational_expr_reduces_and_compares():
    x = RationalExpr(xvar(1))
    expr = (x * x - RationalExpr(1)) / (x + RationalExpr(1))
    assert expr == x - RationalExpr(1)
    assert (expr + RationalExpr(1)) == x


def test_x_mutation_sends_xk_to_inverse(a2):
    for k in (1, 2):
        m = mutate_x_map(a2, k)
        assert m.image(k) == RationalExpr(1) / RationalExpr(xvar(k))


def test_x_mutation_zero_column_fixes_variable():
    s = seeds.new_seed([1, 2], [[0, 0], [0, 0]], [1, 1])
    m = mutate_x_map(s, 2)
    assert m.image(1) == RationalExpr(xvar(1))


def test_x_mutation_a2_reduced_form(a2):
    # eps_12 = 1: X_1 -> X_1 (1 + X_2**-1)**-1 = X_1 X_2 / (1 + X_2)
    m = mutate_x_map(a2, 2)
    x1, x2 = RationalExpr(xvar(1)), RationalExpr(xvar(2))
    assert m.image(1) == x1 * x2 / (x2 + RationalExpr(1))


def test_a_mutation_examples(a2):
    m = mutate_a_map(a2, 1)
    a1, a2v = RationalExpr(avar(1)), RationalExpr(avar(2))
    assert m.image(1) == (a2v + RationalExpr(1)) / a1
    assert m.image(2) == a2v
    zero = seeds.new_seed([1, 2], [[0, 0], [0, 0]], [1, 1])
    assert mutate_a_map(zero, 1).image(1) == RationalExpr(2) / a1


def test_projection_examples(a2):
    p = projection_p(a2)
    assert p.image(1) == RationalExpr(avar(2))
    assert p.image(2) == RationalExpr(1) / RationalExpr(avar(1))
    zero = seeds.new_seed([1, 2], [[0, 0], [0, 0]], [1, 1])
    pz = projection_p(zero)
    assert pz.image(1) == RationalExpr(1) and pz.image(2) == RationalExpr(1)


def test_projection_naturality_on_positive_points(a2, rng):
    """p' o mu_A = mu_X o p, checked numerically: push a positive A-point
    through either route to the mutated X-coordinates."""
    k = 2
    a_map = mutate_a_map(a2, k)
    x_map = mutate_x_map(a2, k)
    s_mut = a_map.target
    for _ in range(25):
        apt = {1: float(rng.uniform(0.2, 3.0)), 2: float(rng.uniform(0.2, 3.0))}
        xpt = eval_positive(projection_p(a2), apt)
        route1 = eval_positive(x_map, xpt)
        apt_m = eval_positive(a_map, apt)
        route2 = eval_positive(projection_p(s_mut), apt_m)
        for lab in a2.labels:
            assert math.isclose(route1[lab], route2[lab], rel_tol=1e-12)


def test_empty_word_is_identity(a2):
    final, comp = compose_word(a2, [], family="x")
    assert final == a2 and comp.is_identity()


def test_double_mutation_words_are_identity(a2, rank3):
    for s in (a2, rank3):
        for k in s.labels:
            for family in ("x", "a"):
                final, comp = compose_word(s, [("m", k), ("m", k)], family=family)
                assert final == s
                assert comp.is_identity()


def test_pentagon_word_is_trivial(a2):
    rep = word_report(a2, PENTAGON)
    assert rep["returns_to_seed"]
    assert rep["a_trivial"]
    assert rep["x_trivial"]          # reported; the boolean contract is A-side
    assert is_trivial_word(a2, PENTAGON) is True


def test_pentagon_prefixes_not_trivial(a2):
    for cut in (2, 4):
        word = PENTAGON[:cut]
        if word_report(a2, word)["returns_to_seed"]:
            assert is_trivial_word(a2, word) is False


def test_non_returning_word_raises(a2):
    with pytest.raises(WordError):
        is_trivial_word(a2, [("m", 1)])


def test_eval_positive_identity_and_example(a2):
    ident = identity_map(a2, "x")
    pt = {1: Fraction(3, 2), 2: Fraction(1, 3)}
    assert eval_positive(ident, pt) == pt
    out = eval_positive(mutate_x_map(a2, 2), {1: 1, 2: 1})
    assert out == {1: Fraction(1, 2), 2: Fraction(1, 1)}


def test_eval_positive_rejects_nonpositive(a2):
    with pytest.raises(ValueError):
        eval_positive(mutate_x_map(a2, 1), {1: -1.0, 2: 1.0})


def test_positivity_preserved_on_random_points(a2, rank3, rng):
    for s in (a2, rank3):
        for k in s.labels:
            m = mutate_x_map(s, k)
            for _ in range(20):
                pt = {lab: float(rng.uniform(0.05, 10.0)) for lab in s.labels}
                out = eval_positive(m, pt)
                assert all(v > 0 for v in out.values())


def test_log_coordinate_consistency(a2, rank3, rng):
    """log of the multiplicative mutation equals the additive-coordinates
    formula at 200 random positive points, to 1e-12 absolute."""
    cases = [(a2, k) for k in a2.labels] + [(rank3, k) for k in rank3.labels]
    per_case = 200 // len(cases) + 1
    for s, k in cases:
        m = mutate_x_map(s, k)
        for _ in range(per_case):
            x = rng.uniform(-2.5, 2.5, size=s.rank)
            pt = {lab: float(np.exp(v)) for lab, v in zip(s.labels, x)}
            out = eval_positive(m, pt)
            got = [math.log(out[lab]) for lab in s.labels]
            want = log_mutation_image(s, k, list(x))
            assert np.allclose(got, want, atol=1e-12, rtol=0)


def test_parse_word_roundtrip():
    word = parse_word("m1,m2,m1,m2,m1,s(1 2)")
    assert word == PENTAGON
    with pytest.raises(WordError):
        parse_word("z3")


def test_compose_word_with_relabeling_step(a2):
    # a symmetry step is a relabeling, valid even when sigma does not fix eps
    final, comp = compose_word(a2, [("m", 1), ("s", {1: 2, 2: 1})], family="x")
    assert final.epsilon == ((0, 1), (-1, 0))
