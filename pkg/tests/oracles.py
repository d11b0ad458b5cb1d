"""Independent reference computations used by the tests.

Nothing here calls the skein or Kauffman engines.  Polynomials in one
variable are plain ``{exponent: coefficient}`` dicts.
"""

from __future__ import annotations

import itertools
import random
from collections import defaultdict
from typing import Dict, List, Sequence, Tuple

from skeinlab.diagram import BraidWord, PlanarDiagram, add_curls, knot_from_braid
from skeinlab.ring import IntLaurent2, ZForm

Poly1 = Dict[int, int]


def p_add(p: Poly1, q: Poly1) -> Poly1:
    out = defaultdict(int, p)
    for e, c in q.items():
        out[e] += c
    return {e: c for e, c in out.items() if c}


def p_mul(p: Poly1, q: Poly1) -> Poly1:
    out: Dict[int, int] = defaultdict(int)
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] += x * y
    return {e: c for e, c in out.items() if c}


def p_pow(p: Poly1, n: int) -> Poly1:
    out = {0: 1}
    for _ in range(n):
        out = p_mul(out, p)
    return out


def p_mono(e: int, c: int = 1) -> Poly1:
    return {e: c}


# ---------------------------------------------------------------------------
# Kauffman bracket by full state sum


def bracket(crossings: Sequence[Tuple[int, int, int, int]], free_loops: int = 0) -> Poly1:
    """<D> in Z[A^+-1] with the crossingless circle equal to 1.

    Crossings are counterclockwise port tuples starting from the incoming
    under edge.  The A-smoothing joins ports (a, b) and (c, d).
    """
    delta = {2: -1, -2: -1}
    edges = sorted({e for x in crossings for e in x})
    total: Poly1 = {}
    for state in itertools.product((0, 1), repeat=len(crossings)):
        parent = {e: e for e in edges}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for (a, b, c, d), st in zip(crossings, state):
            pairs = ((a, b), (c, d)) if st == 0 else ((a, d), (b, c))
            for x, y in pairs:
                parent[find(x)] = find(y)
        loops = len({find(e) for e in edges}) + free_loops
        exp = sum(1 if st == 0 else -1 for st in state)
        total = p_add(total, p_mul(p_mono(exp), p_pow(delta, loops - 1)))
    return total


def jones_from_bracket(crossings, writhe: int, free_loops: int = 0) -> Poly1:
    """Jones polynomial in A (t = A^-4): (-A^3)^(-w) <D>."""
    sign = -1 if writhe % 2 else 1
    return p_mul(p_mono(-3 * writhe, sign), bracket(crossings, free_loops))


def homfly_to_jones(p: ZForm, writhe: int) -> Poly1:
    """Substitute v = A^-4, z = A^-2 - A^2 into ``v^w P`` (knots only: no negative z powers)."""
    z = {-2: 1, 2: -1}
    out: Poly1 = {}
    for (a, b), c in p.items():
        if b < 0:
            raise ValueError("negative z power")
        out = p_add(out, p_mul(p_mono(-4 * (a + writhe), c), p_pow(z, b)))
    return out


def kauffman_l_to_bracket(l: ZForm) -> Poly1:
    """Substitute v = -A^-3, z = A + A^-1 into the regular-isotopy ``L``."""
    z = {1: 1, -1: 1}
    out: Poly1 = {}
    for (a, b), c in l.items():
        if b < 0:
            raise ValueError("negative z power")
        sign = -1 if a % 2 else 1
        out = p_add(out, p_mul(p_mono(-3 * a, sign * c), p_pow(z, b)))
    return out


# ---------------------------------------------------------------------------
# coloured Jones for the adjoint-type decoration, in Z[s^+-1]


def _bracket_s(a: int) -> IntLaurent2:
    return IntLaurent2({(0, a): 1, (0, -a): -1})


def _q(e: int) -> IntLaurent2:
    return IntLaurent2({(0, 2 * e): 1})


def coloured_jones_fig8() -> IntLaurent2:
    """1 + {4}{2} + {4}{2}{5}{1}, with {a} = s^a - s^-a."""
    b = _bracket_s
    return 1 + b(4) * b(2) + b(4) * b(2) * b(5) * b(1)


def coloured_jones_trefoil(N: int = 3) -> IntLaurent2:
    """q^(1-N) sum_n q^(-nN) (q^(1-N); q)_n with q = s^2."""
    total = IntLaurent2(0)
    for n in range(N):
        poch = IntLaurent2(1)
        for j in range(n):
            poch = poch * (1 - _q(1 - N + j))
        total = total + _q(-n * N) * poch
    return _q(1 - N) * total


def bar_s(p: IntLaurent2) -> IntLaurent2:
    return IntLaurent2({(a, -b): c for (a, b), c in p.items()})


# ---------------------------------------------------------------------------
# random diagrams


def random_braid(rng: random.Random, strands: int, length: int) -> BraidWord:
    letters = [(rng.randrange(1, strands), rng.choice((1, -1))) for _ in range(length)]
    return BraidWord(strands, tuple(letters))


def random_knot_braid(rng: random.Random, max_len: int = 8) -> BraidWord:
    """A random braid whose closure is a knot."""
    while True:
        strands = rng.randint(2, 4)
        w = random_braid(rng, strands, rng.randint(strands - 1, max_len))
        perm = w.permutation()
        i, seen = 0, 0
        while True:
            i = perm[i]
            seen += 1
            if i == 0:
                break
        if seen == strands:
            return w


def random_diagrams(seed: int, count: int, max_crossings: int = 8) -> List[PlanarDiagram]:
    """Closed diagrams with at most ``max_crossings`` crossings: braid closures
    (knots and links) and curled long knots closed in the plane."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        if rng.random() < 0.7:
            strands = rng.randint(2, 4)
            length = rng.randint(1, max_crossings)
            out.append(random_braid(rng, strands, length).closure())
        else:
            w = random_knot_braid(rng, max_crossings - 2)
            curls = rng.randint(-2, 2)
            k = add_curls(knot_from_braid(w), curls)
            if k.crossing_count <= max_crossings:
                out.append(k.closure())
    return out
