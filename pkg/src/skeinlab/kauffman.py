"""Unoriented Kauffman polynomial and the mod 2 comparison with ``a_K((1),(1))``.

A crossing is a 4-tuple of edge ids ``(a, b, c, d)`` listed counterclockwise,
with ``a - c`` the under strand.  With ``X`` a crossing, ``X'`` the switched
crossing ``(b, c, d, a)`` and the smoothings ``S1 = {a-b, c-d}``,
``S2 = {a-d, b-c}``::

    L(X) + L(X') = z (L(S1) + L(S2))
    positive kink = v^-1 L(straight)
    circle        = delta = (v + 1/v) / z - 1

and ``F = v^w L`` for an oriented diagram of writhe ``w``.  Kinks carry the
same factor as curls in the Homfly engine, so one ``v`` serves both.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Tuple

from .diagram import FramedTangleKnot, PlanarDiagram
from .ring import ZForm, mod2_reduce, poly_to_json

__all__ = [
    "UnorientedDiagram",
    "KauffmanEngine",
    "RudolphReport",
    "kauffman_poly",
    "kauffman_bruteforce",
    "rudolph_check",
    "match_up_to_v2k",
]

Coeff = Dict[Tuple[int, int], int]


@dataclass(frozen=True)
class UnorientedDiagram:
    """A closed unoriented diagram; ``writhe`` is remembered from an oriented source."""

    crossings: Tuple[Tuple[int, int, int, int], ...]
    free_loops: int = 0
    writhe: int = 0

    def __post_init__(self):
        count: Dict[int, int] = {}
        for x in self.crossings:
            if len(x) != 4:
                raise ValueError("crossings have four ports")
            for e in x:
                count[e] = count.get(e, 0) + 1
        bad = [e for e, c in count.items() if c != 2]
        if bad:
            raise ValueError(f"edges {bad} do not appear exactly twice")

    @classmethod
    def from_planar(cls, d: PlanarDiagram) -> "UnorientedDiagram":
        if d.surface.kind == "rectangle":
            raise ValueError("Kauffman polynomial needs a closed diagram")
        return cls(tuple(x.pd() for x in d.crossings), len(d.free_loops), d.writhe())

    @classmethod
    def from_knot(cls, knot: FramedTangleKnot) -> "UnorientedDiagram":
        return cls.from_planar(knot.closure())

    def crossing_count(self) -> int:
        return len(self.crossings)


# ---------------------------------------------------------------------------
# coefficient helpers


def _mul(p: Coeff, q: Coeff) -> Coeff:
    out: Coeff = {}
    for (a1, k1), c1 in p.items():
        for (a2, k2), c2 in q.items():
            key = (a1 + a2, k1 + k2)
            x = out.get(key, 0) + c1 * c2
            if x:
                out[key] = x
            else:
                out.pop(key, None)
    return out


def _add(p: Coeff, q: Coeff, scale: Coeff | None = None) -> Coeff:
    if scale is not None:
        q = _mul(q, scale)
    out = dict(p)
    for k, c in q.items():
        x = out.get(k, 0) + c
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


_DELTA = {(1, -1): 1, (-1, -1): 1, (0, 0): -1}
_DELTA_POW: Dict[int, Coeff] = {0: {(0, 0): 1}}


def _delta_pow(m: int) -> Coeff:
    if m < 0:
        raise ValueError("negative power of the circle value")
    while m not in _DELTA_POW:
        k = max(_DELTA_POW)
        _DELTA_POW[k + 1] = _mul(_DELTA_POW[k], _DELTA)
    return _DELTA_POW[m]


# ---------------------------------------------------------------------------
# state manipulation: xs is a list of [a, b, c, d]


def _rename(xs, old, new):
    for x in xs:
        for r in range(4):
            if x[r] == old:
                x[r] = new


def _join(xs, e, f) -> int:
    """Connect edge ends ``e`` and ``f``; returns 1 when that closes a circle."""
    if e == f:
        return 1
    _rename(xs, f, e)
    return 0


def _smooth(xs, k, which: int) -> int:
    a, b, c, d = xs.pop(k)
    if which == 1:
        pairs = ((a, b), (c, d))
    else:
        pairs = ((a, d), (b, c))
    free = 0
    # the second pair may refer to a name changed by the first join
    e, f = pairs[0]
    free += _join(xs, e, f)
    g, h = pairs[1]
    if f != e:
        g = e if g == f else g
        h = e if h == f else h
    free += _join(xs, g, h)
    return free


def _strip_kinks(xs) -> Tuple[int, int]:
    v_exp = free = 0
    changed = True
    while changed:
        changed = False
        for k, (a, b, c, d) in enumerate(xs):
            if a == b or c == d:
                v_exp -= 1
                del xs[k]
                if a == b and c == d:
                    free += 1
                elif a == b:
                    free += _join(xs, c, d)
                else:
                    free += _join(xs, a, b)
                changed = True
                break
            if a == d or b == c:
                v_exp += 1
                del xs[k]
                if a == d and b == c:
                    free += 1
                elif a == d:
                    free += _join(xs, b, c)
                else:
                    free += _join(xs, a, d)
                changed = True
                break
    return v_exp, free


@dataclass
class _Scan:
    bad: Optional[int]
    key: Hashable
    closed: int
    self_writhe: int


def _scan(xs, start=min, reverse: bool = False) -> _Scan:
    where: Dict[int, List[Tuple[int, int]]] = {}
    for k, x in enumerate(xs):
        for port, e in enumerate(x):
            where.setdefault(e, []).append((k, port))
    label: Dict[int, int] = {}
    comp: Dict[int, int] = {}
    entry: Dict[Tuple[int, str], int] = {}
    bad = None
    ncomp = 0
    remaining = set(where)
    while remaining:
        e0 = start(remaining)
        # enter the crossing at the first (or, reversed, second) end of e0
        k, port = where[e0][1 if reverse else 0]
        e = e0
        while True:
            label.setdefault(e, len(label))
            comp[e] = ncomp
            remaining.discard(e)
            role = "u" if port % 2 == 0 else "o"
            if (k, "u") not in entry and (k, "o") not in entry and role == "u" and bad is None:
                bad = k
            entry.setdefault((k, role), port)
            out_port = (port + 2) % 4
            e = xs[k][out_port]
            ends = where[e]
            nxt = ends[0] if ends[0] != (k, out_port) else ends[1]
            k, port = nxt
            if e == e0:
                break
        ncomp += 1
    writhe = 0
    for k, x in enumerate(xs):
        if comp[x[0]] == comp[x[1]]:
            pu, po = entry[(k, "u")], entry[(k, "o")]
            writhe += 1 if po == (pu + 3) % 4 else -1
    canon = []
    for x in xs:
        r = tuple(label[e] for e in x)
        canon.append(min(r, r[2:] + r[:2]))
    return _Scan(bad, tuple(sorted(canon)), ncomp, writhe)


def _switch(x):
    a, b, c, d = x
    return [b, c, d, a]


# ---------------------------------------------------------------------------


class KauffmanEngine:
    """Memoised evaluation of the regular-isotopy Kauffman polynomial ``L``."""

    def __init__(self, memo: bool = True):
        self.use_memo = memo
        self._memo: Dict[Hashable, Coeff] = {}
        self._lock = threading.Lock()

    def _eval(self, xs) -> Coeff:
        """Value of a nonempty state without free loops (unknot = 1)."""
        v_exp, free = _strip_kinks(xs)
        if not xs:
            res = _delta_pow(free - 1)
        else:
            scan = _scan(xs)
            res = self._memo.get(scan.key) if self.use_memo else None
            if res is None:
                if scan.bad is None:
                    res = _mul(_delta_pow(scan.closed - 1), {(-scan.self_writhe, 0): 1})
                else:
                    res = self._branch(xs, scan.bad)
                if self.use_memo:
                    self._memo[scan.key] = res
            if free:
                res = _mul(res, _delta_pow(free))
        return _mul(res, {(v_exp, 0): 1}) if v_exp else res

    def _branch(self, xs, k) -> Coeff:
        # L(X) = z (L(S1) + L(S2)) - L(X')
        total: Coeff = {}
        for which in (1, 2):
            ys = [list(x) for x in xs]
            f = _smooth(ys, k, which)
            total = _add(total, self._eval_loops(ys, f), {(0, 1): 1})
        ys = [list(x) for x in xs]
        ys[k] = _switch(ys[k])
        return _add(total, self._eval(ys), {(0, 0): -1})

    def _eval_loops(self, xs, free: int) -> Coeff:
        if not xs:
            return _delta_pow(free - 1)
        res = self._eval(xs)
        return _mul(res, _delta_pow(free)) if free else res

    def bracket_l(self, d: UnorientedDiagram) -> ZForm:
        """Regular-isotopy invariant ``L`` with the unknot normalised to 1."""
        xs = [list(x) for x in d.crossings]
        if not xs and not d.free_loops:
            raise ValueError("the empty diagram has no unknot-normalised value")
        return ZForm(self._eval_loops(xs, d.free_loops))

    def poly(self, d: UnorientedDiagram, normalization: str = "unknot") -> ZForm:
        if not d.crossings and not d.free_loops:
            if normalization == "empty":
                return ZForm.one()
            raise ValueError("the empty diagram has no unknot-normalised value")
        val = self.bracket_l(d) * ZForm.v(d.writhe)
        if normalization == "empty":
            val = val * ZForm(_DELTA)
        elif normalization != "unknot":
            raise ValueError(f"unknown normalization {normalization!r}")
        return val


_DEFAULT = KauffmanEngine()


def kauffman_poly(d, normalization: str = "unknot") -> ZForm:
    """Kauffman polynomial ``F`` of a closed diagram (or framed knot), unknot = 1 by default."""
    if isinstance(d, FramedTangleKnot):
        d = UnorientedDiagram.from_knot(d)
    elif isinstance(d, PlanarDiagram):
        d = UnorientedDiagram.from_planar(d)
    return _DEFAULT.poly(d, normalization)


# ---------------------------------------------------------------------------
# brute force: no memo, no kink removal, reversed traversal


def _brute(xs, free: int, path: Coeff, out: List[Coeff]) -> None:
    if not xs:
        out.append(_mul(path, _delta_pow(free - 1)))
        return
    scan = _scan(xs, start=max, reverse=True)
    if scan.bad is None:
        out.append(_mul(_mul(path, _delta_pow(scan.closed + free - 1)), {(-scan.self_writhe, 0): 1}))
        return
    k = scan.bad
    for which in (1, 2):
        ys = [list(x) for x in xs]
        f = _smooth(ys, k, which)
        _brute(ys, free + f, _mul(path, {(0, 1): 1}), out)
    ys = [list(x) for x in xs]
    ys[k] = _switch(ys[k])
    _brute(ys, free, _mul(path, {(0, 0): -1}), out)


def kauffman_bruteforce(d) -> ZForm:
    """Full expansion of ``F`` (unknot = 1) without memoisation or kink removal."""
    if isinstance(d, FramedTangleKnot):
        d = UnorientedDiagram.from_knot(d)
    elif isinstance(d, PlanarDiagram):
        d = UnorientedDiagram.from_planar(d)
    leaves: List[Coeff] = []
    _brute([list(x) for x in d.crossings], d.free_loops, {(0, 0): 1}, leaves)
    total: Coeff = {}
    for leaf in leaves:
        total = _add(total, leaf)
    return ZForm(total) * ZForm.v(d.writhe)


# ---------------------------------------------------------------------------
# mod 2 comparison


def match_up_to_v2k(x: ZForm, y: ZForm, modulus: int | None = 2) -> Optional[int]:
    """``k`` with ``x == v^(2k) y`` (coefficients mod ``modulus``), or None."""
    if modulus:
        x, y = _reduce(x, modulus), _reduce(y, modulus)
    if x.is_zero() or y.is_zero():
        return 0 if x.is_zero() and y.is_zero() else None
    (ax, _), (ay, _) = min(x.terms), min(y.terms)
    shift = ax - ay
    if shift % 2:
        return None
    return shift // 2 if x == y.shift(shift, 0) else None


def _reduce(p: ZForm, m: int) -> ZForm:
    if m == 2:
        return mod2_reduce(p)
    return ZForm({k: c % m for k, c in p.items() if c % m})


@dataclass
class RudolphReport:
    knot: str
    homfly_side: ZForm
    kauffman_side: ZForm
    equal: bool
    k: Optional[int]

    def verdict(self) -> str:
        return f"equal, k={self.k}" if self.equal else "different"

    def to_dict(self) -> dict:
        return {
            "knot": self.knot,
            "homfly_mod2": poly_to_json(self.homfly_side),
            "kauffman_mod2": poly_to_json(self.kauffman_side),
            "equal": self.equal,
            "k": self.k,
        }


def rudolph_check(knot: FramedTangleKnot) -> RudolphReport:
    """Compare ``a_K((1),(1))`` mod 2 with ``F_K(v^2, z^2)`` mod 2, up to ``v^(2k)``."""
    from .diagram import Partition
    from .invariants import a_invariant

    rep = a_invariant(knot, Partition((1,)), Partition((1,)))
    if rep.zform is None:
        raise ArithmeticError("a_K((1),(1)) is not a polynomial in z")
    homfly_side = mod2_reduce(rep.zform)
    kauffman_side = mod2_reduce(kauffman_poly(knot).substitute_squares())
    k = match_up_to_v2k(homfly_side, kauffman_side)
    return RudolphReport(knot.name, homfly_side, kauffman_side, k is not None, k)
