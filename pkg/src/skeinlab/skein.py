"""Resolution of oriented diagrams by the Homfly skein relations.

Conventions (framed, so no writhe correction is applied)::

    X+  -  X-  =  z X0            z = s - 1/s
    positive curl  =  v^-1 (straight strand)
    disjoint null-homotopic circle  =  delta = (v^-1 - v) / z

The engine walks the components in a fixed order: open arcs first, starting
from their initial boundary points counterclockwise from the bottom left,
then closed components from their smallest edge id.  The first crossing met
for the first time on its under strand is switched and smoothed,
``X_e = X_{-e} + e z X_0``.  A diagram with no such crossing is a stack of
unknotted pieces; it evaluates to a basis element times ``v^-(self writhe)``
and a power of ``delta``.  Coefficients live in Z[v^+-1, z^+-1] throughout.

Results are memoised on a relabelled encoding of the diagram (edges numbered
in traversal order), which determines the diagram up to isomorphism.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Hashable, List, Optional, Tuple

from .diagram import PlanarDiagram, SurfaceKind, as_plane, boundary_order
from .ring import LambdaScalar, ZForm

__all__ = [
    "UNKNOT",
    "SkeinCombination",
    "LeafRecord",
    "ResolutionTrace",
    "AuditReport",
    "SkeinEngine",
    "default_engine",
    "resolve",
    "resolve_bruteforce",
    "homfly",
    "homfly_z",
    "homfly_bruteforce",
    "lemma1_audit",
]

UNKNOT = "unknot"

Coeff = Dict[Tuple[int, int], int]
Result = Dict[Hashable, Coeff]


# ---------------------------------------------------------------------------
# raw coefficient helpers


_DELTA_POW: Dict[int, Coeff] = {}


def _delta_pow(m: int) -> Coeff:
    if m not in _DELTA_POW:
        if m < 0:
            raise ValueError("negative power of delta")
        # ((v^-1 - v) z^-1)^m
        _DELTA_POW[m] = {(-m + 2 * j, -m): (-1) ** j * comb(m, j) for j in range(m + 1)}
    return _DELTA_POW[m]


def _add_scaled(target: Result, src: Result, poly: Coeff) -> None:
    for basis, coeff in src.items():
        out = target.setdefault(basis, {})
        for (a1, k1), c1 in coeff.items():
            for (a2, k2), c2 in poly.items():
                key = (a1 + a2, k1 + k2)
                x = out.get(key, 0) + c1 * c2
                if x:
                    out[key] = x
                else:
                    out.pop(key, None)
        if not out:
            del target[basis]


def _scaled(src: Result, poly: Coeff) -> Result:
    out: Result = {}
    _add_scaled(out, src, poly)
    return out


# ---------------------------------------------------------------------------
# internal diagram state
#
#   xs   : list of [in_u, out_u, in_o, out_o, sign]
#   ins  : list of (boundary point, edge), counterclockwise order
#   outs : dict edge -> boundary point


def _rename(xs, ins, outs, old, new):
    for x in xs:
        for r in range(4):
            if x[r] == old:
                x[r] = new
    for k, (pt, e) in enumerate(ins):
        if e == old:
            ins[k] = (pt, new)
    if old in outs:
        outs[new] = outs.pop(old)


def _strip_curls(xs, ins, outs):
    """Remove kinks in place.  Returns (v exponent picked up, new free loops)."""
    v_exp = 0
    free = 0
    changed = True
    while changed:
        changed = False
        for k, (iu, ou, io, oo, sg) in enumerate(xs):
            if ou == io or oo == iu:
                del xs[k]
                v_exp -= sg
                if ou == io and oo == iu:
                    free += 1
                elif ou == io:
                    _rename(xs, ins, outs, oo, iu)
                else:
                    _rename(xs, ins, outs, ou, io)
                changed = True
                break
    return v_exp, free


def _smooth(xs, ins, outs, k):
    """Oriented smoothing of crossing ``k`` in place; returns new free loops."""
    iu, ou, io, oo, _ = xs.pop(k)
    free = 0
    if iu == oo:
        free += 1
    else:
        _rename(xs, ins, outs, oo, iu)
    if io == ou:
        free += 1
    else:
        _rename(xs, ins, outs, ou, io)
    return free


@dataclass
class _Scan:
    bad: Optional[int]
    key: Hashable
    arcs: Tuple[Tuple[Hashable, Hashable], ...]
    closed: int
    self_writhe: int


def _scan(xs, ins, outs, *, reverse: bool = False, closed_start=min) -> _Scan:
    """Walk all components, find the first bad crossing and a relabelled key.

    ``reverse`` walks every closed component against its orientation (only
    sensible in the plane, where it is used by the brute-force oracle).
    """
    head = {}
    tail = {}
    for k, x in enumerate(xs):
        head[x[0]] = (k, 0)
        head[x[2]] = (k, 1)
        tail[x[1]] = (k, 0)
        tail[x[3]] = (k, 1)
    label: Dict[int, int] = {}
    comp: Dict[int, int] = {}
    seen = set()
    bad = None
    arcs = []

    def walk(e, c, backwards=False):
        nonlocal bad
        start = e
        while True:
            label[e] = len(label)
            comp[e] = c
            h = (tail if backwards else head).get(e)
            if h is None:
                return outs.get(e)
            k, role = h
            if k not in seen:
                seen.add(k)
                if role == 0 and bad is None:
                    bad = k
            x = xs[k]
            if backwards:
                e = x[0] if role == 0 else x[2]
            else:
                e = x[1] if role == 0 else x[3]
            if e == start:
                return None

    for c, (pt, e) in enumerate(ins):
        arcs.append((pt, walk(e, c)))
    ncomp = len(ins)
    closed = 0
    remaining = [e for e in head if e not in label]
    while remaining:
        e = closed_start(remaining)
        walk(e, ncomp, backwards=reverse)
        ncomp += 1
        closed += 1
        remaining = [e for e in remaining if e not in label]
    writhe = sum(x[4] for x in xs if comp[x[0]] == comp[x[2]])
    key = (
        tuple(sorted((label[x[0]], label[x[1]], label[x[2]], label[x[3]], x[4]) for x in xs)),
        tuple((pt, label[e]) for pt, e in ins),
        tuple(sorted((label[e], pt) for e, pt in outs.items())),
    )
    return _Scan(bad, key, tuple(arcs), closed, writhe)


def _state_of(d: PlanarDiagram):
    xs = [list(x) for x in d.crossings]
    ins = sorted(d.inputs, key=lambda t: boundary_order(t[0]))
    outs = {e: pt for pt, e in d.outputs}
    return xs, list(ins), outs, len(d.free_loops)


def _closed_count(d: PlanarDiagram) -> int:
    return _scan(*_state_of(d)[:3]).closed + len(d.free_loops)


# ---------------------------------------------------------------------------
# public data types


@dataclass(frozen=True)
class SkeinCombination:
    """A linear combination of basis diagrams of one surface.

    Basis keys are :data:`UNKNOT` in the plane, and in a rectangle the tuple
    of ``(start point, end point)`` pairs of the arcs, in counterclockwise
    order of their start points; this connectivity determines the totally
    descending tangle up to isotopy.
    """

    surface: SurfaceKind
    terms: Dict[Hashable, ZForm]

    def __getitem__(self, basis) -> ZForm:
        return self.terms.get(basis, ZForm.zero())

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def __eq__(self, other):
        if not isinstance(other, SkeinCombination):
            return NotImplemented
        return self.surface == other.surface and self.terms == other.terms


@dataclass(frozen=True)
class LeafRecord:
    basis: Hashable
    coefficient: ZForm
    k: int


@dataclass
class ResolutionTrace:
    """Leaves of a resolution tree and the number ``k`` of closed curves of the root."""

    root_k: int
    leaves: List[LeafRecord] = field(default_factory=list)


@dataclass
class AuditReport:
    passed: bool
    checked: int
    failures: List[Tuple[Hashable, ZForm]] = field(default_factory=list)

    def __bool__(self):
        return self.passed


def lemma1_audit(trace: ResolutionTrace) -> AuditReport:
    """Check ``coefficient * z^(k(root) - k(leaf))`` has no negative powers of ``z``."""
    failures = []
    for leaf in trace.leaves:
        if leaf.coefficient.is_zero():
            continue
        if leaf.coefficient.min_z() + trace.root_k - leaf.k < 0:
            failures.append((leaf.basis, leaf.coefficient))
    return AuditReport(not failures, len(trace.leaves), failures)


def _leaf_k(surface: SurfaceKind) -> int:
    return 1 if surface.kind == "plane" else 0


# ---------------------------------------------------------------------------
# the engine


class SkeinEngine:
    """Memoising resolver.

    One engine may be shared between threads: memo entries for a given key
    are always identical, so concurrent inserts are harmless.
    """

    def __init__(self, memo: bool = True):
        self.use_memo = memo
        self._memo: Dict[Hashable, Result] = {}
        self._lock = threading.Lock()
        self.calls = 0
        self.hits = 0

    def clear(self) -> None:
        with self._lock:
            self._memo.clear()

    def _eval(self, xs, ins, outs, plane: bool) -> Result:
        """Value of a state without free loops, as ``{basis: coeff}``."""
        self.calls += 1
        v_exp, free = _strip_curls(xs, ins, outs)
        if not xs:
            if plane:
                if free == 0:
                    raise ValueError("empty diagram has no unknot-normalised value")
                res = {UNKNOT: _delta_pow(free - 1)}
            else:
                conn = tuple((pt, outs[e]) for pt, e in ins)
                res = {conn: _delta_pow(free)}
            return _scaled(res, {(v_exp, 0): 1}) if v_exp else res
        scan = _scan(xs, ins, outs)
        memo_key = (plane, scan.key)
        cached = self._memo.get(memo_key) if self.use_memo else None
        if cached is not None:
            self.hits += 1
            res = cached
        elif scan.bad is None:
            if plane:
                res = {UNKNOT: _scaled({0: _delta_pow(scan.closed - 1)}, {(-scan.self_writhe, 0): 1})[0]}
            else:
                res = {scan.arcs: _scaled({0: _delta_pow(scan.closed)}, {(-scan.self_writhe, 0): 1})[0]}
            if self.use_memo:
                self._memo[memo_key] = res
        else:
            k = scan.bad
            sg = xs[k][4]
            xs1 = [list(x) for x in xs]
            iu, ou, io, oo, _ = xs1[k]
            xs1[k] = [io, oo, iu, ou, -sg]
            res = {}
            _add_scaled(res, self._eval(xs1, list(ins), dict(outs), plane), {(0, 0): 1})
            xs0 = [list(x) for x in xs]
            ins0, outs0 = list(ins), dict(outs)
            f0 = _smooth(xs0, ins0, outs0, k)
            sub = self._eval_with_free(xs0, ins0, outs0, f0, plane)
            _add_scaled(res, sub, {(0, 1): sg})
            if self.use_memo:
                self._memo[memo_key] = res
        extra = {(v_exp, 0): 1}
        if free:
            extra = _mul_coeff(extra, _delta_pow(free))
        if extra != {(0, 0): 1}:
            res = _scaled(res, extra)
        return res

    def _eval_with_free(self, xs, ins, outs, f: int, plane: bool) -> Result:
        """Like ``_eval`` but with ``f`` extra free loops alongside."""
        if plane and not xs:
            # nothing left but loops: normalise against one of them
            return {UNKNOT: _delta_pow(f - 1)}
        sub = self._eval(xs, ins, outs, plane)
        return _scaled(sub, _delta_pow(f)) if f else sub

    # public -------------------------------------------------------------------
    def resolve(self, d: PlanarDiagram) -> Tuple[SkeinCombination, ResolutionTrace]:
        """Express ``d`` in the basis of its surface, with the aggregated trace."""
        if d.surface.kind == "annulus":
            raise ValueError("annulus diagrams are evaluated through their plane embedding")
        plane = d.surface.kind == "plane"
        xs, ins, outs, free = _state_of(d)
        root_k = _closed_count(d)
        if plane and not xs and free == 0:
            raise ValueError("the empty diagram has no unknot-normalised value")
        if plane and not xs:
            res = {UNKNOT: _delta_pow(free - 1)}
        else:
            res = self._eval(xs, ins, outs, plane)
            if free:
                res = _scaled(res, _delta_pow(free))
        terms = {b: ZForm(c) for b, c in res.items() if c}
        lk = _leaf_k(d.surface)
        trace = ResolutionTrace(root_k, [LeafRecord(b, c, lk) for b, c in terms.items()])
        return SkeinCombination(d.surface, terms), trace

    def homfly_z(self, d: PlanarDiagram, normalization: str = "unknot") -> ZForm:
        """Framed Homfly polynomial of a closed diagram.

        ``normalization='unknot'`` gives 1 on the unknot; ``'empty'`` gives 1
        on the empty diagram (so the unknot has value ``delta``).
        """
        if d.surface.kind == "annulus":
            d = as_plane(d)
        if d.surface.kind != "plane":
            raise ValueError("homfly needs a closed diagram")
        if not d.crossings and not d.free_loops:
            if normalization == "empty":
                return ZForm.one()
            raise ValueError("the empty diagram has no unknot-normalised value")
        comb_, _ = self.resolve(d)
        value = comb_[UNKNOT]
        if normalization == "empty":
            value = value * ZForm(_delta_pow(1))
        elif normalization != "unknot":
            raise ValueError(f"unknown normalization {normalization!r}")
        return value

    def homfly(self, d: PlanarDiagram, normalization: str = "unknot") -> LambdaScalar:
        return self.homfly_z(d, normalization).to_lambda()


def _mul_coeff(p: Coeff, q: Coeff) -> Coeff:
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


# ---------------------------------------------------------------------------
# brute-force oracle: no memo, no curl removal, different base points


def _bruteforce(xs, ins, outs, free, plane: bool, path: Coeff, leaves: list) -> None:
    if not xs:
        if plane:
            coeff = _mul_coeff(path, _delta_pow(free - 1))
            leaves.append((UNKNOT, coeff))
        else:
            conn = tuple((pt, outs[e]) for pt, e in ins)
            leaves.append((conn, _mul_coeff(path, _delta_pow(free))))
        return
    scan = _scan(xs, ins, outs, reverse=plane, closed_start=max)
    if scan.bad is None:
        closed = scan.closed + free
        dp = _delta_pow(closed - 1) if plane else _delta_pow(closed)
        coeff = _mul_coeff(_mul_coeff(path, dp), {(-scan.self_writhe, 0): 1})
        leaves.append((UNKNOT if plane else scan.arcs, coeff))
        return
    k = scan.bad
    sg = xs[k][4]
    xs1 = [list(x) for x in xs]
    iu, ou, io, oo, _ = xs1[k]
    xs1[k] = [io, oo, iu, ou, -sg]
    _bruteforce(xs1, list(ins), dict(outs), free, plane, path, leaves)
    xs0 = [list(x) for x in xs]
    ins0, outs0 = list(ins), dict(outs)
    f0 = _smooth(xs0, ins0, outs0, k)
    _bruteforce(xs0, ins0, outs0, free + f0, plane, _mul_coeff(path, {(0, 1): sg}), leaves)


def resolve_bruteforce(d: PlanarDiagram) -> Tuple[SkeinCombination, ResolutionTrace]:
    """Full resolution tree without memoisation, recording every leaf."""
    if d.surface.kind == "annulus":
        d = as_plane(d)
    plane = d.surface.kind == "plane"
    xs, ins, outs, free = _state_of(d)
    leaves: list = []
    _bruteforce(xs, ins, outs, free, plane, {(0, 0): 1}, leaves)
    lk = _leaf_k(d.surface)
    total: Dict[Hashable, ZForm] = {}
    records = []
    for basis, coeff in leaves:
        z = ZForm(coeff)
        records.append(LeafRecord(basis, z, lk))
        total[basis] = total.get(basis, ZForm.zero()) + z
    terms = {b: c for b, c in total.items() if not c.is_zero()}
    return SkeinCombination(d.surface, terms), ResolutionTrace(_closed_count(d), records)


def homfly_bruteforce(d: PlanarDiagram) -> ZForm:
    return resolve_bruteforce(d)[0][UNKNOT]


# ---------------------------------------------------------------------------

_DEFAULT = SkeinEngine()


def default_engine() -> SkeinEngine:
    return _DEFAULT


def resolve(d: PlanarDiagram) -> Tuple[SkeinCombination, ResolutionTrace]:
    return _DEFAULT.resolve(d)


def homfly_z(d: PlanarDiagram, normalization: str = "unknot") -> ZForm:
    return _DEFAULT.homfly_z(d, normalization)


def homfly(d: PlanarDiagram, normalization: str = "unknot") -> LambdaScalar:
    """Framed Homfly polynomial in the coefficient ring (unknot = 1 by default)."""
    return _DEFAULT.homfly(d, normalization)
