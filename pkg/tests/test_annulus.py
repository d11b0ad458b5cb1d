import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinlab.annulus import (
    AnnulusElement,
    decorated_value,
    expand_to_patterns,
    h,
    h_star,
    meridian_eigencheck,
    meridian_tangle,
    pattern_tangle,
    q_lambda_mu,
    q_matrix,
    star,
)
from skeinlab.diagram import BraidWord, Partition, census, close_in_plane, components
from skeinlab.ring import LambdaScalar, exact_divide
from skeinlab.skein import homfly_z

s = LambdaScalar.s
ONE = LambdaScalar(1)
DELTA = LambdaScalar.delta()

small_parts = st.sampled_from([lam for n in range(0, 4) for lam in Partition.all_of(n)])


def test_examples():
    assert q_lambda_mu(Partition((1,)), Partition((1,))) == h(1) * h_star(1) - 1
    assert q_lambda_mu(Partition((1, 1))) == h(1) * h(1) - h(2)
    assert q_lambda_mu(Partition((2,))) == h(2)
    assert q_lambda_mu(Partition(), Partition()) == AnnulusElement.one()
    assert h(0) == 1 and h(-1) == 0 and h_star(0) == 1


def test_displayed_matrix():
    m = q_matrix(Partition((2, 2, 1)), Partition((3, 2)))
    H, Hs = h, h_star
    expected = [
        [Hs(2), Hs(1), 1, 0, 0],
        [Hs(4), Hs(3), Hs(2), Hs(1), 1],
        [1, H(1), H(2), H(3), H(4)],
        [0, 1, H(1), H(2), H(3)],
        [0, 0, 0, 1, H(1)],
    ]
    assert [[AnnulusElement.make({}) + x for x in row] for row in expected] == m


def test_jacobi_trudi_three():
    # s_(2,1) = h2 h1 - h3
    assert q_lambda_mu(Partition((2, 1))) == h(2) * h(1) - h(3)
    # s_(1,1,1) = h1^3 - 2 h1 h2 + h3
    assert q_lambda_mu(Partition((1, 1, 1))) == h(1) * h(1) * h(1) - 2 * h(1) * h(2) + h(3)


def test_mixed_example():
    q = q_lambda_mu(Partition((2, 1)), Partition((1,)))
    assert q == h(1) * h(2) * h_star(1) - h(3) * h_star(1) - h(1) * h(1)


@given(small_parts, small_parts)
def test_star_swaps_partitions(lam, mu):
    assert star(q_lambda_mu(lam, mu)) == q_lambda_mu(mu, lam)
    assert star(star(q_lambda_mu(lam, mu))) == q_lambda_mu(lam, mu)


@given(small_parts, small_parts)
def test_bidegrees(lam, mu):
    for up, down in q_lambda_mu(lam, mu).bidegrees():
        assert up - down == lam.size - mu.size
        assert up <= lam.size + min(lam.size, mu.size)


def test_star_is_an_algebra_map():
    a, b = h(2) + h_star(1), h(1) * h_star(3) - 2
    assert star(a * b) == star(a) * star(b)
    assert star(h(2)) == h_star(2)
    q = h(1) * h_star(1) - 1
    assert star(q) == q


def test_pattern_expansion_of_h2():
    coll = expand_to_patterns(h(2)).collapsed()
    den = 1 + s(2)
    assert coll == {((0, 1), ()): exact_divide(ONE, den), ((1, 0), ()): exact_divide(s(), den)}


def test_pattern_expansion_small_cases():
    assert expand_to_patterns(h(1)).collapsed() == {((0,), ()): ONE}
    assert expand_to_patterns(h(1) * h_star(1)).collapsed() == {((0,), (0,)): ONE}


@settings(max_examples=20, deadline=None)
@given(small_parts, small_parts)
def test_resymbolize_roundtrip(lam, mu):
    if lam.size + mu.size > 4:
        return
    q = q_lambda_mu(lam, mu)
    assert expand_to_patterns(q).resymbolize() == q


def test_expansion_respects_products():
    a, b = h(2), h(1) * h_star(1)
    prod = expand_to_patterns(a * b)
    ea, eb = expand_to_patterns(a), expand_to_patterns(b)
    assert len(prod) == len(ea) * len(eb)


def test_pattern_tangle_and_meridian_shapes():
    d = pattern_tangle((1, 0), (0,))
    assert d.surface.n == 2 and d.surface.p == 1 and d.crossing_count() == 1
    m = meridian_tangle(2, 1)
    assert m.crossing_count() == 6 and m.writhe() == 2


def test_satellite_values_of_the_unknot():
    # empty diagram = 1: the core is delta, the reverse two-component unlink delta^2
    u = census("unknot")
    assert decorated_value(u, h(1)) == DELTA
    assert decorated_value(u, h(1) * h_star(1)) == DELTA * DELTA
    q11 = q_lambda_mu(Partition((1,)), Partition((1,)))
    # with the unknot normalised to 1 instead this reads delta - 1/delta
    assert decorated_value(u, q11) == DELTA * DELTA - 1


def test_core_decoration_is_homfly():
    for name in ("trefoil", "fig8"):
        k = census(name)
        assert decorated_value(k, h(1)) == homfly_z(k.closure()).to_lambda() * DELTA


def test_meridian_of_core_is_hopf_link():
    u = census("unknot")
    # both crossings of the loop with an upward string are positive
    hopf = homfly_z(BraidWord.parse("1 1").closure(), normalization="empty").to_lambda()
    assert decorated_value(u, h(1), meridian=True) == hopf


def test_meridian_closure_components():
    d = close_in_plane(meridian_tangle(1, 1))
    assert len(components(d)) == 3


def test_meridian_eigencheck():
    knots = [census("unknot"), census("trefoil")]
    assert meridian_eigencheck(q_lambda_mu(Partition((1,)), Partition((1,))), knots)
    assert meridian_eigencheck(h(2), knots)
    assert meridian_eigencheck(h(1), knots)
    assert not meridian_eigencheck(h(1) + h(2), knots)
    assert meridian_eigencheck(h(1), [census("unknot")])
    with pytest.raises(ValueError):
        meridian_eigencheck(h(1), [])


def test_json_is_stable():
    q = q_lambda_mu(Partition((2,)), Partition((1,)))
    data = json.loads(q.to_json())
    assert data == json.loads(q_lambda_mu(Partition((2,)), Partition((1,))).to_json())
    assert {tuple(r["h"]) for r in data} == {(2,), (1,)}
