"""Oriented diagrams in the plane, the annulus and the (n, p) rectangle.

A diagram is stored combinatorially.  Each edge is an integer id.  A crossing
records the four incident edges by role (incoming/outgoing, under/over) and
its sign; the counterclockwise port order follows from those two pieces of
data, see :meth:`Crossing.pd`.

Rectangle boundary points are ``('b', i)`` (bottom) and ``('t', i)`` (top),
``i = 0 .. n+p-1`` counted from the left.  Positions ``0 .. n-1`` carry the
upward strands and ``n .. n+p-1`` the downward ones.  An upward strand enters
at the bottom and leaves at the top; a downward strand the reverse.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

__all__ = [
    "SurfaceKind",
    "Crossing",
    "PlanarDiagram",
    "BraidWord",
    "FramedTangleKnot",
    "Partition",
    "Point",
    "permutation_braid",
    "reduced_word",
    "inversions",
    "cable",
    "stack",
    "tensor",
    "close_in_annulus",
    "close_in_plane",
    "null_homotopic_count",
    "components",
    "add_curls",
    "knot_from_braid",
    "knot_from_pd",
    "census",
    "CENSUS_NAMES",
    "boundary_order",
]

Point = Tuple[str, int]


def boundary_order(point: Point) -> Tuple[int, int]:
    """Counterclockwise position of a boundary point, starting at the bottom left."""
    side, i = point
    return (0, i) if side == "b" else (1, -i)


@dataclass(frozen=True)
class SurfaceKind:
    kind: str  # 'plane' | 'annulus' | 'rectangle'
    n: int = 0
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("plane", "annulus", "rectangle"):
            raise ValueError(f"unknown surface {self.kind!r}")
        if self.n < 0 or self.p < 0:
            raise ValueError("strand counts must be nonnegative")

    @classmethod
    def rectangle(cls, n: int, p: int = 0) -> "SurfaceKind":
        return cls("rectangle", n, p)


PLANE = SurfaceKind("plane")
ANNULUS = SurfaceKind("annulus")


class Crossing(NamedTuple):
    in_u: int
    out_u: int
    in_o: int
    out_o: int
    sign: int

    def pd(self) -> Tuple[int, int, int, int]:
        """Edge ids counterclockwise, starting from the incoming under edge."""
        if self.sign > 0:
            return (self.in_u, self.out_o, self.out_u, self.in_o)
        return (self.in_u, self.in_o, self.out_u, self.out_o)

    def switched(self) -> "Crossing":
        return Crossing(self.in_o, self.out_o, self.in_u, self.out_u, -self.sign)

    def renamed(self, old: int, new: int) -> "Crossing":
        return Crossing(*(new if e == old else e for e in self[:4]), self.sign)


@dataclass(frozen=True)
class PlanarDiagram:
    """An oriented diagram in a surface.

    ``free_loops`` lists the crossingless closed curves by winding number
    around the annulus core (always 0 outside the annulus).  ``winding``
    records, for annulus diagrams, how many times each edge runs once around
    the core; it is accumulated by :func:`close_in_annulus`.
    """

    surface: SurfaceKind
    crossings: Tuple[Crossing, ...] = ()
    inputs: Tuple[Tuple[Point, int], ...] = ()
    outputs: Tuple[Tuple[Point, int], ...] = ()
    free_loops: Tuple[int, ...] = ()
    winding: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        self.validate()

    # ------------------------------------------------------------------
    def validate(self) -> None:
        tails: Dict[int, object] = {}
        heads: Dict[int, object] = {}

        def put(table, e, where):
            if e in table:
                raise ValueError(f"edge {e} has two {'tails' if table is tails else 'heads'}")
            table[e] = where

        for k, x in enumerate(self.crossings):
            if x.sign not in (1, -1):
                raise ValueError("crossing sign must be +1 or -1")
            put(heads, x.in_u, (k, "u"))
            put(heads, x.in_o, (k, "o"))
            put(tails, x.out_u, (k, "u"))
            put(tails, x.out_o, (k, "o"))
        for pt, e in self.inputs:
            put(tails, e, pt)
        for pt, e in self.outputs:
            put(heads, e, pt)
        if set(tails) != set(heads):
            raise ValueError("every edge needs exactly one tail and one head")
        if self.surface.kind == "rectangle":
            n, p = self.surface.n, self.surface.p
            want_in = {("b", i) for i in range(n)} | {("t", i) for i in range(n, n + p)}
            want_out = {("t", i) for i in range(n)} | {("b", i) for i in range(n, n + p)}
            if {pt for pt, _ in self.inputs} != want_in or {pt for pt, _ in self.outputs} != want_out:
                raise ValueError("boundary does not match the rectangle's strand pattern")
        elif self.inputs or self.outputs:
            raise ValueError("only rectangle diagrams have boundary points")

    # ------------------------------------------------------------------
    @property
    def edges(self) -> List[int]:
        out = set()
        for x in self.crossings:
            out.update(x[:4])
        out.update(e for _, e in self.inputs)
        return sorted(out)

    def crossing_count(self) -> int:
        return len(self.crossings)

    def writhe(self) -> int:
        return sum(x.sign for x in self.crossings)

    def max_edge(self) -> int:
        return max(self.edges, default=-1)

    def input_map(self) -> Dict[Point, int]:
        return dict(self.inputs)

    def output_map(self) -> Dict[Point, int]:
        return dict(self.outputs)

    def relabel(self, offset: int) -> "PlanarDiagram":
        return PlanarDiagram(
            self.surface,
            tuple(Crossing(*(e + offset for e in x[:4]), x.sign) for x in self.crossings),
            tuple((pt, e + offset) for pt, e in self.inputs),
            tuple((pt, e + offset) for pt, e in self.outputs),
            self.free_loops,
            tuple((e + offset, w) for e, w in self.winding),
        )

    def pd_code(self) -> List[dict]:
        return [{"pd": list(x.pd()), "sign": x.sign} for x in self.crossings]

    def to_json(self) -> str:
        return json.dumps(
            {
                "surface": [self.surface.kind, self.surface.n, self.surface.p],
                "crossings": [list(x) for x in self.crossings],
                "inputs": [[list(pt), e] for pt, e in self.inputs],
                "outputs": [[list(pt), e] for pt, e in self.outputs],
                "free_loops": list(self.free_loops),
            }
        )


class _Builder:
    """Mutable scratch space used while gluing diagrams."""

    def __init__(self, d: PlanarDiagram):
        self.crossings = list(d.crossings)
        self.inputs = dict(d.inputs)
        self.outputs = dict(d.outputs)
        self.free = list(d.free_loops)
        self.winding = dict(d.winding)
        self.alias: Dict[int, int] = {}

    def find(self, e: int) -> int:
        while e in self.alias:
            e = self.alias[e]
        return e

    def rename(self, old: int, new: int) -> None:
        self.alias[old] = new
        for k, x in enumerate(self.crossings):
            if old in x[:4]:
                self.crossings[k] = x.renamed(old, new)
        for table in (self.inputs, self.outputs):
            for pt, e in table.items():
                if e == old:
                    table[pt] = new
        w = self.winding.pop(old, 0)
        if w:
            self.winding[new] = self.winding.get(new, 0) + w

    def join(self, first: int, second: int, extra_winding: int = 0) -> None:
        """The head of edge ``first`` continues into edge ``second``."""
        if first == second:
            self.free.append(self.winding.pop(first, 0) + extra_winding)
            return
        if extra_winding:
            self.winding[first] = self.winding.get(first, 0) + extra_winding
        self.rename(second, first)

    def build(self, surface: SurfaceKind) -> PlanarDiagram:
        return PlanarDiagram(
            surface,
            tuple(self.crossings),
            tuple(sorted(self.inputs.items(), key=lambda t: boundary_order(t[0]))),
            tuple(sorted(self.outputs.items(), key=lambda t: boundary_order(t[0]))),
            tuple(self.free),
            tuple(sorted((e, w) for e, w in self.winding.items() if w)),
        )


# ---------------------------------------------------------------------------
# partitions


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts if int(x) != 0)
        if any(x < 0 for x in parts):
            raise ValueError("partition parts must be positive")
        return super().__new__(cls, sorted(parts, reverse=True))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if text in ("", "0", "-", "phi", "empty", "()"):
            return cls(())
        parts = [int(t) for t in text.replace("(", "").replace(")", "").split(",")]
        if any(a < b for a, b in zip(parts, parts[1:])) or min(parts) <= 0:
            raise ValueError("parts must be positive and weakly decreasing")
        return cls(parts)

    @property
    def size(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition(())
        return Partition(sum(1 for x in self if x > j) for j in range(self[0]))

    def __repr__(self):
        return "(" + ",".join(map(str, self)) + ")" if self else "()"

    __str__ = __repr__

    @classmethod
    def all_of(cls, n: int, largest: int | None = None) -> Iterable["Partition"]:
        """All partitions of ``n`` in reverse lexicographic order."""
        largest = n if largest is None else largest
        if n == 0:
            yield cls(())
            return
        for first in range(min(n, largest), 0, -1):
            for rest in cls.all_of(n - first, first):
                yield cls((first,) + tuple(rest))


# ---------------------------------------------------------------------------
# braids


@dataclass(frozen=True)
class BraidWord:
    """A braid on ``strands`` strings; ``(i, eps)`` crosses positions ``i, i+1`` (1-based)."""

    strands: int
    word: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        for i, eps in self.word:
            if not 1 <= i <= self.strands - 1 or eps not in (1, -1):
                raise ValueError(f"bad generator {(i, eps)} on {self.strands} strands")

    @classmethod
    def parse(cls, text: str, strands: int | None = None) -> "BraidWord":
        """Whitespace separated signed integers, e.g. ``"1 -2 1 -2"``."""
        letters = [int(t) for t in text.replace(",", " ").split()]
        if any(t == 0 for t in letters):
            raise ValueError("generator index 0 is not allowed")
        m = max((abs(t) for t in letters), default=0) + 1
        return cls(strands or m, tuple((abs(t), 1 if t > 0 else -1) for t in letters))

    def permutation(self) -> Tuple[int, ...]:
        """``perm[i]`` is the top position of the string starting at bottom ``i``."""
        pos = list(range(self.strands))  # pos[k] = string at position k
        for i, _ in self.word:
            pos[i - 1], pos[i] = pos[i], pos[i - 1]
        perm = [0] * self.strands
        for k, string in enumerate(pos):
            perm[string] = k
        return tuple(perm)

    def to_tangle(self, orientations: Sequence[int] | None = None) -> PlanarDiagram:
        """The braid as a rectangle tangle, read from bottom to top.

        ``orientations[k]`` is +1 (up) or -1 (down) for the string starting at
        bottom position ``k``; strings of each kind must be grouped so the
        result is an (n, p) tangle.  Geometry does not depend on orientation;
        each crossing's sign is ``eps`` times both string orientations.
        """
        m = self.strands
        orient = list(orientations) if orientations is not None else [1] * m
        n = sum(1 for o in orient if o > 0)
        if any(o < 0 for o in orient[:n]):
            raise ValueError("upward strings must occupy the left positions")
        ids = itertools.count()
        cur = [next(ids) for _ in range(m)]
        string_at = list(range(m))
        b = _Builder(PlanarDiagram(PLANE))
        for k in range(m):
            if orient[k] > 0:
                b.inputs[("b", k)] = cur[k]
            else:
                b.outputs[("b", k)] = cur[k]
        for i, eps in self.word:
            lft, rgt = i - 1, i
            el, er = cur[lft], cur[rgt]
            fl, fr = next(ids), next(ids)
            ol, orr = orient[string_at[lft]], orient[string_at[rgt]]
            # left string moves right (el -> fr), right string moves left (er -> fl)
            if eps > 0:
                over, under = (el, fr, ol), (er, fl, orr)
            else:
                over, under = (er, fl, orr), (el, fr, ol)
            ob, oa, oo = over
            ub, ua, uo = under
            in_o, out_o = (ob, oa) if oo > 0 else (oa, ob)
            in_u, out_u = (ub, ua) if uo > 0 else (ua, ub)
            b.crossings.append(Crossing(in_u, out_u, in_o, out_o, eps * oo * uo))
            cur[lft], cur[rgt] = fl, fr
            string_at[lft], string_at[rgt] = string_at[rgt], string_at[lft]
        for k in range(m):
            if orient[string_at[k]] > 0:
                b.outputs[("t", k)] = cur[k]
            else:
                b.inputs[("t", k)] = cur[k]
        up_top = sum(1 for k in range(m) if orient[string_at[k]] > 0)
        if up_top != n or any(orient[string_at[k]] < 0 for k in range(n)):
            raise ValueError("braid does not preserve the up/down grouping")
        return b.build(SurfaceKind.rectangle(n, m - n))

    def closure(self) -> PlanarDiagram:
        return close_in_plane(self.to_tangle())


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])


def reduced_word(perm: Sequence[int]) -> List[int]:
    """A reduced word (1-based generator indices, bottom first) realising ``perm``."""
    # sort the target positions by adjacent swaps
    target = list(perm)
    word = []
    changed = True
    while changed:
        changed = False
        for k in range(len(target) - 1):
            if target[k] > target[k + 1]:
                target[k], target[k + 1] = target[k + 1], target[k]
                word.append(k + 1)
                changed = True
    return word


def permutation_braid(perm: Sequence[int], down: bool = False) -> PlanarDiagram:
    """Positive permutation braid: strings ``i < j`` cross once iff ``perm`` inverts them.

    ``perm[i]`` is the top position of the string starting at bottom ``i``.
    With ``down=True`` all strings run from top to bottom, giving the
    reversed-orientation basis braid; the string entering at top ``i`` then
    leaves at bottom ``perm[i]``.
    """
    m = len(perm)
    if sorted(perm) != list(range(m)):
        raise ValueError(f"{perm} is not a permutation")
    if not down:
        word = BraidWord(m, tuple((i, 1) for i in reduced_word(perm)))
        return word.to_tangle()
    # the string from top i to bottom perm[i]; read bottom-up this is perm^-1
    inv = [0] * m
    for i, j in enumerate(perm):
        inv[j] = i
    word = BraidWord(m, tuple((i, 1) for i in reduced_word(inv)))
    return word.to_tangle([-1] * m)


# ---------------------------------------------------------------------------
# gluing


def stack(lower: PlanarDiagram, upper: PlanarDiagram) -> PlanarDiagram:
    """Place ``upper`` on top of ``lower`` (both rectangle tangles of the same type)."""
    if lower.surface != upper.surface or lower.surface.kind != "rectangle":
        raise ValueError("stack needs two rectangle tangles of the same (n, p)")
    up = upper.relabel(lower.max_edge() + 1)
    b = _Builder(lower)
    b.crossings += up.crossings
    b.free += up.free_loops
    for e, w in up.winding:
        b.winding[e] = b.winding.get(e, 0) + w
    # keep the lower tangle's bottom and the upper tangle's top
    tops_low = {pt: e for pt, e in lower.outputs if pt[0] == "t"}
    tops_low_in = {pt: e for pt, e in lower.inputs if pt[0] == "t"}
    b.outputs = {pt: e for pt, e in lower.outputs if pt[0] == "b"}
    b.inputs = {pt: e for pt, e in lower.inputs if pt[0] == "b"}
    pending = []
    for pt, e in up.outputs:
        if pt[0] == "t":
            b.outputs[pt] = e
        else:
            pending.append(("down", pt[1], e))
    for pt, e in up.inputs:
        if pt[0] == "t":
            b.inputs[pt] = e
        else:
            pending.append(("up", pt[1], e))
    for kind, i, e in pending:
        if kind == "up":
            b.join(b.find(tops_low[("t", i)]), b.find(e))
        else:
            b.join(b.find(e), b.find(tops_low_in[("t", i)]))
    return b.build(lower.surface)


def tensor(left: PlanarDiagram, right: PlanarDiagram) -> PlanarDiagram:
    """Juxtapose two upward-only (or two downward-only) tangles side by side."""
    sl, sr = left.surface, right.surface
    if sl.kind != "rectangle" or sr.kind != "rectangle":
        raise ValueError("tensor needs rectangle tangles")
    if sl.p and sr.n:
        raise ValueError("upward strands must stay to the left of downward strands")
    shift = sl.n + sl.p
    r = right.relabel(left.max_edge() + 1)
    b = _Builder(left)
    b.crossings += r.crossings
    b.free += r.free_loops
    for pt, e in r.inputs:
        b.inputs[(pt[0], pt[1] + shift)] = e
    for pt, e in r.outputs:
        b.outputs[(pt[0], pt[1] + shift)] = e
    return b.build(SurfaceKind.rectangle(sl.n + sr.n, sl.p + sr.p))


def _close(d: PlanarDiagram, surface: SurfaceKind, keep: Sequence[int] = ()) -> PlanarDiagram:
    if d.surface.kind != "rectangle":
        raise ValueError("only rectangle tangles can be closed")
    n, p = d.surface.n, d.surface.p
    b = _Builder(d)
    track = surface.kind == "annulus"
    for i in range(n + p):
        if i in keep:
            continue
        if i < n:
            e1 = b.outputs.pop(("t", i))
            e2 = b.inputs.pop(("b", i))
            b.join(e1, e2, 1 if track else 0)
        else:
            e1 = b.outputs.pop(("b", i))
            e2 = b.inputs.pop(("t", i))
            b.join(e1, e2, -1 if track else 0)
    if keep:
        return b.build(SurfaceKind.rectangle(len(keep), 0))
    return b.build(surface)


def close_in_annulus(d: PlanarDiagram) -> PlanarDiagram:
    """Join top ``i`` to bottom ``i`` around the annulus core."""
    return _close(d, ANNULUS)


def close_in_plane(d: PlanarDiagram) -> PlanarDiagram:
    """Join top ``i`` to bottom ``i`` by nested arcs in the plane."""
    return _close(d, PLANE)


def as_plane(d: PlanarDiagram) -> PlanarDiagram:
    """Forget the annulus: the standard embedding of the annulus in the plane."""
    return replace(d, surface=PLANE, free_loops=tuple(0 for _ in d.free_loops), winding=())


# ---------------------------------------------------------------------------
# components and counts


def components(d: PlanarDiagram) -> List[Tuple[str, List[int]]]:
    """Components as ``('arc'|'closed', [edge ids in order])``; free loops excluded."""
    nxt: Dict[int, int | None] = {}
    for x in d.crossings:
        nxt[x.in_u] = x.out_u
        nxt[x.in_o] = x.out_o
    for _, e in d.outputs:
        nxt[e] = None
    seen = set()
    out = []
    for _, e in d.inputs:
        seq = []
        while e is not None:
            seq.append(e)
            seen.add(e)
            e = nxt[e]
        out.append(("arc", seq))
    for e0 in sorted(nxt):
        if e0 in seen:
            continue
        seq = []
        e = e0
        while e not in seen:
            seq.append(e)
            seen.add(e)
            e = nxt[e]
        out.append(("closed", seq))
    return out


def null_homotopic_count(d: PlanarDiagram) -> int:
    """Number of closed components with winding number 0 around the annulus core.

    In the plane and the rectangle every closed component counts.
    """
    comps = [seq for kind, seq in components(d) if kind == "closed"]
    if d.surface.kind != "annulus":
        return len(comps) + len(d.free_loops)
    w = dict(d.winding)
    count = sum(1 for seq in comps if sum(w.get(e, 0) for e in seq) == 0)
    return count + sum(1 for x in d.free_loops if x == 0)


# ---------------------------------------------------------------------------
# framed knots as (1,1)-tangles


@dataclass(frozen=True)
class FramedTangleKnot:
    """A framed knot cut open into a (1,1)-tangle; the framing is the writhe."""

    name: str
    diagram: PlanarDiagram = field(repr=False)

    def __post_init__(self):
        d = self.diagram
        if d.surface != SurfaceKind.rectangle(1, 0):
            raise ValueError("a (1,1)-tangle lives in the (1, 0) rectangle")
        comps = components(d)
        if len(comps) != 1 or d.free_loops:
            raise ValueError("a knot tangle must be a single arc")

    @property
    def framing(self) -> int:
        return self.diagram.writhe()

    @property
    def crossing_count(self) -> int:
        return self.diagram.crossing_count()

    def closure(self) -> PlanarDiagram:
        return close_in_plane(self.diagram)

    def with_framing(self, framing: int) -> "FramedTangleKnot":
        return add_curls(self, framing - self.framing)


def add_curls(knot: FramedTangleKnot, count: int) -> FramedTangleKnot:
    """Insert ``|count|`` kinks of sign ``sign(count)`` just below the top of the arc."""
    if count == 0:
        return knot
    sign = 1 if count > 0 else -1
    b = _Builder(knot.diagram)
    ids = itertools.count(knot.diagram.max_edge() + 1)
    for _ in range(abs(count)):
        e = b.outputs[("t", 0)]
        loop, after = next(ids), next(ids)
        b.crossings.append(Crossing(e, loop, loop, after, sign))
        b.outputs[("t", 0)] = after
    suffix = f"{'+' if count > 0 else ''}{count}"
    return FramedTangleKnot(f"{knot.name}[{suffix}]", b.build(knot.diagram.surface))


def knot_from_braid(word: BraidWord, name: str = "braid") -> FramedTangleKnot:
    """Close every string but the leftmost, on the right; the leftmost stays open."""
    d = word.to_tangle()
    t = _close(d, PLANE, keep=(0,))
    return FramedTangleKnot(name, t)


def knot_from_pd(records: Sequence, name: str = "pd") -> FramedTangleKnot:
    """Knot from PD records ``[a, b, c, d]`` (counterclockwise from the incoming
    under edge) with a sign, given either as ``{"pd": [...], "sign": s}`` or as
    ``[a, b, c, d, s]``.  The knot is cut open on the edge with the smallest label.
    """
    xs = []
    for r in records:
        if isinstance(r, dict):
            (a, b, c, d_), s = r["pd"], r["sign"]
        else:
            a, b, c, d_, s = r
        if s > 0:
            xs.append(Crossing(a, c, d_, b, 1))
        else:
            xs.append(Crossing(a, c, b, d_, -1))
    if not xs:
        return census("unknot")
    cut = min(min(x[:4]) for x in xs)
    fresh = max(max(x[:4]) for x in xs) + 1
    out = []
    for x in xs:
        if x.out_u == cut:
            x = x._replace(out_u=fresh)
        if x.out_o == cut:
            x = x._replace(out_o=fresh)
        out.append(x)
    d = PlanarDiagram(SurfaceKind.rectangle(1, 0), tuple(out), ((("b", 0), cut),), ((("t", 0), fresh),))
    return FramedTangleKnot(name, d)


CENSUS_NAMES = ("unknot", "trefoil", "trefoil-left", "fig8")

_CENSUS_BRAIDS = {
    "trefoil": "1 1 1",
    "trefoil-left": "-1 -1 -1",
    "fig8": "1 -2 1 -2",
}


def census(name: str) -> FramedTangleKnot:
    """Built-in knots: unknot (framing 0), right trefoil (writhe +3),
    left trefoil (writhe -3) and the figure-eight (writhe 0)."""
    if name == "unknot":
        d = PlanarDiagram(SurfaceKind.rectangle(1, 0), (), ((("b", 0), 0),), ((("t", 0), 0),))
        return FramedTangleKnot("unknot", d)
    if name not in _CENSUS_BRAIDS:
        raise KeyError(f"unknown census knot {name!r}; choose from {CENSUS_NAMES}")
    return knot_from_braid(BraidWord.parse(_CENSUS_BRAIDS[name]), name)


# ---------------------------------------------------------------------------
# cabling


def cable(knot: FramedTangleKnot | PlanarDiagram, n: int, p: int) -> PlanarDiagram:
    """Blackboard parallel of a (1,1)-tangle: ``n`` copies along the arc, ``p`` against it.

    Copy ``c`` sits at position ``c`` counted from the left of the direction
    of travel, so the result is an (n, p) rectangle tangle with
    ``(n + p)**2`` crossings for every crossing of the arc.
    """
    d = knot.diagram if isinstance(knot, FramedTangleKnot) else knot
    if d.surface != SurfaceKind.rectangle(1, 0):
        raise ValueError("cable expects a (1,1)-tangle")
    m = n + p
    if m < 1:
        raise ValueError("need at least one strand")
    orient = [1] * n + [-1] * p
    ids = itertools.count()
    copy: Dict[Tuple[int, int], int] = {}

    def cid(e, c):
        if (e, c) not in copy:
            copy[(e, c)] = next(ids)
        return copy[(e, c)]

    crossings = []
    for x in d.crossings:
        if x.sign > 0:
            j_order = list(range(m))
            i_order = list(range(m - 1, -1, -1))
        else:
            j_order = list(range(m - 1, -1, -1))
            i_order = list(range(m))
        over_seg: Dict[Tuple[int, int], Tuple[int, int]] = {}
        for i in range(m):
            chain = [cid(x.in_o, i)] + [next(ids) for _ in range(m - 1)] + [cid(x.out_o, i)]
            for pos, j in enumerate(j_order):
                over_seg[(i, j)] = (chain[pos], chain[pos + 1])
        under_seg: Dict[Tuple[int, int], Tuple[int, int]] = {}
        for j in range(m):
            chain = [cid(x.in_u, j)] + [next(ids) for _ in range(m - 1)] + [cid(x.out_u, j)]
            for pos, i in enumerate(i_order):
                under_seg[(i, j)] = (chain[pos], chain[pos + 1])
        for i in range(m):
            for j in range(m):
                ob, oa = over_seg[(i, j)]
                ub, ua = under_seg[(i, j)]
                in_o, out_o = (ob, oa) if orient[i] > 0 else (oa, ob)
                in_u, out_u = (ub, ua) if orient[j] > 0 else (ua, ub)
                crossings.append(Crossing(in_u, out_u, in_o, out_o, x.sign * orient[i] * orient[j]))
    (_, e_in), = d.inputs
    (_, e_out), = d.outputs
    inputs, outputs = [], []
    for c in range(m):
        if orient[c] > 0:
            inputs.append((("b", c), cid(e_in, c)))
            outputs.append((("t", c), cid(e_out, c)))
        else:
            outputs.append((("b", c), cid(e_in, c)))
            inputs.append((("t", c), cid(e_out, c)))
    inputs.sort(key=lambda t: boundary_order(t[0]))
    outputs.sort(key=lambda t: boundary_order(t[0]))
    return PlanarDiagram(SurfaceKind.rectangle(n, p), tuple(crossings), tuple(inputs), tuple(outputs))
