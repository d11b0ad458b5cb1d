import json
import pathlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import bracket, kauffman_l_to_bracket
from skeinlab.diagram import BraidWord, add_curls, census
from skeinlab.kauffman import (
    KauffmanEngine,
    UnorientedDiagram,
    kauffman_bruteforce,
    kauffman_poly,
    match_up_to_v2k,
    rudolph_check,
)
from skeinlab.ring import ZForm, mod2_reduce, poly_from_json

FROZEN = json.loads(pathlib.Path(__file__).with_name("frozen_oracles.json").read_text())


def table(rows):
    """``{z power: {v power: coefficient}}`` to a ZForm."""
    return ZForm({(a, b): c for b, row in rows.items() for a, c in row.items()})


FIG8_TABLE = table({
    3: {-1: 1, 1: 1},
    2: {-2: 1, 0: 2, 2: 1},
    1: {-1: -1, 1: -1},
    0: {-2: -1, 0: -1, 2: -1},
})
# the reference trefoil table lists the z^0 row without its minus signs
TREFOIL_TABLE_REFERENCE = table({2: {-4: 1, -2: 1}, 1: {-5: 1, -3: 1}, 0: {-4: 1, -2: 2}})
TREFOIL_TABLE_SIGNED = table({2: {-4: 1, -2: 1}, 1: {-5: 1, -3: 1}, 0: {-4: -1, -2: -2}})


@st.composite
def braids(draw, max_strands=4, max_len=7):
    m = draw(st.integers(2, max_strands))
    word = draw(st.lists(st.tuples(st.integers(1, m - 1), st.sampled_from((1, -1))), max_size=max_len))
    return BraidWord(m, tuple(word))


def l_value(d: UnorientedDiagram) -> ZForm:
    return KauffmanEngine().bracket_l(d)


def modify(d: UnorientedDiagram, k: int, pairs=None, switched=False) -> UnorientedDiagram:
    """Switch crossing ``k`` or replace it by the smoothing joining ``pairs``."""
    xs = list(d.crossings)
    if switched:
        a, b, c, e = xs[k]
        xs[k] = (b, c, e, a)
        return UnorientedDiagram(tuple(xs), d.free_loops)
    del xs[k]
    parent = {}

    def find(e):
        parent.setdefault(e, e)
        while parent[e] != e:
            e = parent[e]
        return e

    for x, y in pairs:
        parent[find(x)] = find(y)
    xs = [tuple(find(e) for e in x) for x in xs]
    used = {e for x in xs for e in x}
    classes = {find(e) for pair in pairs for e in pair}
    loops = sum(1 for cl in classes if cl not in used)
    return UnorientedDiagram(tuple(xs), d.free_loops + loops)


def test_census_against_frozen_oracles():
    for name, rec in FROZEN["census"].items():
        assert kauffman_poly(census(name)) == poly_from_json(rec["kauffman"])


@pytest.mark.parametrize("name", ["unknot", "trefoil", "trefoil-left", "fig8"])
def test_bracket_specialisation(name):
    d = census(name).closure()
    u = UnorientedDiagram.from_planar(d)
    expected = [[e, c] for e, c in sorted(bracket(u.crossings, u.free_loops).items())]
    assert expected == FROZEN["census"][name]["bracket"]
    assert kauffman_l_to_bracket(l_value(u)) == bracket(u.crossings, u.free_loops)


def test_fig8_table():
    assert kauffman_poly(census("fig8")) == FIG8_TABLE


def test_trefoil_tables():
    left = kauffman_poly(census("trefoil-left"))
    assert left == TREFOIL_TABLE_SIGNED
    assert mod2_reduce(left) == mod2_reduce(TREFOIL_TABLE_REFERENCE)
    right = kauffman_poly(census("trefoil"))
    assert right == ZForm({(-a, b): c for (a, b), c in left.items()})


@settings(max_examples=40, deadline=None)
@given(braids(), st.data())
def test_unoriented_skein_relation(word, data):
    if not word.word:
        return
    d = UnorientedDiagram.from_planar(word.closure())
    k = data.draw(st.integers(0, len(d.crossings) - 1))
    a, b, c, e = d.crossings[k]
    lhs = l_value(d) + l_value(modify(d, k, switched=True))
    rhs = l_value(modify(d, k, [(a, b), (c, e)])) + l_value(modify(d, k, [(a, e), (b, c)]))
    assert lhs == ZForm.z() * rhs


@settings(max_examples=30, deadline=None)
@given(braids())
def test_memo_matches_bruteforce(word):
    d = word.closure()
    assert kauffman_poly(d) == kauffman_bruteforce(d)


@pytest.mark.parametrize("curls", [-2, -1, 1, 3])
def test_f_ignores_framing(curls):
    for name in ("trefoil", "fig8"):
        k = census(name)
        assert kauffman_poly(add_curls(k, curls)) == kauffman_poly(k)


@settings(max_examples=20, deadline=None)
@given(braids(), st.integers(0, 6), st.integers(1, 3), st.sampled_from((1, -1)))
def test_regular_isotopy_r2(word, pos, gen, e):
    if gen >= word.strands:
        return
    pos = min(pos, len(word.word))
    longer = BraidWord(word.strands, word.word[:pos] + ((gen, e), (gen, -e)) + word.word[pos:])
    assert kauffman_poly(longer.closure()) == kauffman_poly(word.closure())


def test_normalizations():
    u = census("unknot")
    assert kauffman_poly(u) == 1
    delta = ZForm({(1, -1): 1, (-1, -1): 1, (0, 0): -1})
    assert kauffman_poly(u, normalization="empty") == delta
    with pytest.raises(ValueError):
        UnorientedDiagram(((0, 1, 2, 3),))


def test_match_up_to_v2k():
    x = ZForm({(0, 0): 1, (2, 2): 3})
    assert match_up_to_v2k(x.shift(4, 0), x) == 2
    assert match_up_to_v2k(x.shift(1, 0), x) is None
    assert match_up_to_v2k(ZForm({(0, 0): 3}), ZForm({(0, 0): 1})) == 0
    assert match_up_to_v2k(ZForm({(0, 0): 3}), ZForm({(0, 0): 1}), modulus=None) is None


def test_rudolph_census():
    assert rudolph_check(census("fig8")).verdict() == "equal, k=0"
    assert rudolph_check(census("trefoil")).verdict() == "equal, k=-3"
    assert rudolph_check(census("trefoil-left")).verdict() == "equal, k=3"
    assert rudolph_check(census("unknot")).verdict() == "equal, k=0"


@pytest.mark.parametrize("curls", [-2, -1, 1])
def test_rudolph_shift_follows_framing(curls):
    k = add_curls(census("trefoil-left"), curls)
    rep = rudolph_check(k)
    assert rep.equal and rep.k == -k.framing


def test_rudolph_report_dict():
    rep = rudolph_check(census("fig8"))
    data = rep.to_dict()
    assert data["equal"] and data["k"] == 0 and data["knot"] == "fig8"
