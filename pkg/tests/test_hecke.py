import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinlab.diagram import BraidWord, Partition, add_curls, cable, census, inversions, stack
from skeinlab.hecke import (
    HeckeElement,
    basis_diagram,
    basis_keys,
    build_e_lambda,
    contraction_scalar,
    hecke_multiply,
    k0_key,
    k0_perms,
    key_k,
    perm_contraction,
    symmetrizer,
    tangle_k0_coeffs,
)
from skeinlab.ring import IntLaurent2, LambdaScalar, ZForm, exact_divide
from skeinlab.skein import homfly_z, resolve

s = LambdaScalar.s
z = LambdaScalar.z()
ONE = LambdaScalar(1)


def sigma(i: int, m: int, e: int = 1, down: bool = False) -> HeckeElement:
    return HeckeElement.from_braid(BraidWord(m, ((i, e),)), down=down)


def compose(a, b):
    return tuple(b[a[i]] for i in range(len(a)))


@pytest.mark.parametrize("np_", [(1, 0), (2, 0), (3, 0), (1, 1), (2, 1), (0, 2)])
def test_basis_size_and_self_resolution(np_):
    n, p = np_
    keys = basis_keys(n, p)
    assert len(keys) == math.factorial(n + p)
    assert sum(1 for k in keys if key_k(k) == 0) == math.factorial(n) * math.factorial(p)
    for key in keys:
        comb, _ = resolve(basis_diagram(key, n, p))
        assert dict(comb.items()) == {key: ZForm.one()}


def test_quadratic_relation():
    sg = sigma(1, 2)
    assert sg * sg == HeckeElement.identity(2) + sg.scale(z)
    inv = sigma(1, 2, -1)
    assert sg * inv == HeckeElement.identity(2)
    assert inv == sg - HeckeElement.identity(2).scale(z)


def test_length_additive_basis_products():
    for a in itertools.permutations(range(3)):
        for b in itertools.permutations(range(3)):
            c = compose(a, b)
            if inversions(c) == inversions(a) + inversions(b):
                prod = HeckeElement.from_permutations(a) * HeckeElement.from_permutations(b)
                assert prod == HeckeElement.from_permutations(c)


coeffs = st.sampled_from([ONE, s(), -z, s(-2), LambdaScalar.v(), LambdaScalar(IntLaurent2({(1, 1): 2, (0, 0): -1}))])
h3 = st.dictionaries(st.sampled_from(basis_keys(3, 0)), coeffs, min_size=1, max_size=3).map(
    lambda t: HeckeElement.make(3, 0, t)
)


@settings(max_examples=15, deadline=None)
@given(h3, h3, h3)
def test_associativity_in_h3(x, y, w):
    assert (x * y) * w == x * (y * w)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(basis_keys(1, 1) + basis_keys(2, 1)), st.data())
def test_turnback_span_is_an_ideal(key, data):
    shape = (1, 1) if key in basis_keys(1, 1) else (2, 1)
    other = data.draw(st.sampled_from(basis_keys(*shape)))
    if key_k(key) == 0:
        return
    x, y = HeckeElement.basis(key, *shape), HeckeElement.basis(other, *shape)
    for prod in (x * y, y * x):
        assert all(key_k(k) > 0 for k in prod.terms)


def test_shape_mismatch():
    with pytest.raises(ValueError):
        hecke_multiply(HeckeElement.identity(2), HeckeElement.identity(3))


def test_symmetrizer_two():
    a2 = symmetrizer(2)
    expected = (HeckeElement.identity(2) + sigma(1, 2).scale(s())).scale(exact_divide(ONE, 1 + s(2)))
    assert a2 == expected
    assert a2 * a2 == a2
    assert sigma(1, 2) * a2 == a2.scale(s())
    assert symmetrizer(1) == HeckeElement.identity(1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_symmetrizer_eigenvalue(n):
    a = symmetrizer(n)
    for i in range(1, n):
        assert sigma(i, n) * a == a.scale(s())
        assert a * sigma(i, n) == a.scale(s())


def test_antisymmetrizer():
    e11 = build_e_lambda(Partition((1, 1))).element
    expected = (HeckeElement.identity(2) - sigma(1, 2).scale(s(-1))).scale(exact_divide(ONE, 1 + s(-2)))
    assert e11 == expected
    flipped = symmetrizer(2).map_coefficients(lambda c: c.flip_s())
    assert e11 == flipped


@pytest.mark.parametrize("lam", [lam for n in range(1, 5) for lam in Partition.all_of(n)])
def test_idempotents(lam):
    for down in (False, True):
        e = build_e_lambda(lam, down=down).element
        assert e * e == e
        assert e.shape == ((0, lam.size) if down else (lam.size, 0))


def test_single_row_is_symmetrizer():
    for n in (1, 2, 3):
        assert build_e_lambda(Partition((n,))).element == symmetrizer(n)


@pytest.mark.parametrize("n", [2, 3])
def test_orthogonality(n):
    parts = list(Partition.all_of(n))
    for a, b in itertools.combinations(parts, 2):
        ea, eb = build_e_lambda(a).element, build_e_lambda(b).element
        assert (ea * eb).is_zero() and (eb * ea).is_zero()


def test_contraction_scalars():
    assert contraction_scalar(BraidWord.parse("1"), Partition((2,))) == s()
    assert contraction_scalar(BraidWord.parse("1"), Partition((1, 1))) == -s(-1)
    assert contraction_scalar(BraidWord(2), Partition((1, 1))) == 1
    assert contraction_scalar(BraidWord(3), Partition((2, 1))) == 1
    for m in (1, 2, 3, -1, -2):
        word = BraidWord(2, tuple((1, 1 if m > 0 else -1) for _ in range(abs(m))))
        assert contraction_scalar(word, Partition((2,))) == s(m)
    with pytest.raises(ValueError):
        contraction_scalar(BraidWord.parse("1"), Partition((2, 1)))


@pytest.mark.parametrize("lam", [lam for n in range(1, 4) for lam in Partition.all_of(n)])
def test_permutation_contractions_are_in_z_s(lam):
    for w in itertools.permutations(range(lam.size)):
        for down in (False, True):
            c = perm_contraction(w, lam, down=down)
            assert c.is_integral() and set(c.num.columns()) <= {0}


def test_k0_coefficients_unknot():
    for n, p in [(1, 0), (2, 0), (1, 1), (2, 1)]:
        coeffs = tangle_k0_coeffs(census("unknot"), n, p)
        assert coeffs == {(tuple(range(n)), tuple(range(p))): ZForm.one()}


def test_k0_coefficient_of_trefoil_is_homfly():
    k = census("trefoil")
    coeffs = tangle_k0_coeffs(k, 1, 0)
    assert coeffs == {((0,), ()): homfly_z(k.closure())}


def test_k0_coefficients_fig8():
    coeffs = tangle_k0_coeffs(census("fig8"), 1, 1)
    assert set(coeffs) == {((0,), (0,))}
    assert all(c.min_z() >= 0 for c in coeffs.values())
    comb, _ = resolve(cable(census("fig8"), 1, 1))
    assert len(comb) == 2  # one k = 0 term and one turnback term


def test_curl_cable_is_full_twist():
    # each parallel copy also picks up a kink of its own
    full = HeckeElement.from_diagram(cable(add_curls(census("unknot"), 1), 2, 0))
    sg = sigma(1, 2)
    assert full == (sg * sg).scale(LambdaScalar.v(-2))


def test_k0_key_roundtrip():
    for pi in itertools.permutations(range(2)):
        for rho in itertools.permutations(range(2)):
            assert k0_perms(k0_key(pi, rho), 2) == (pi, rho)


def test_split_k():
    d = stack(basis_diagram(basis_keys(1, 1)[0], 1, 1), basis_diagram(basis_keys(1, 1)[1], 1, 1))
    x = HeckeElement.from_diagram(d)
    t0, t1 = x.split_k()
    assert t0 + t1 == x
    assert all(key_k(k) == 0 for k in t0.terms) and all(key_k(k) > 0 for k in t1.terms)
