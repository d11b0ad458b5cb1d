"""The annulus skein as a polynomial algebra in h_k and h*_k.

``h_k`` is the closure of the upward symmetrizer on ``k`` strings and
``h*_k`` its orientation reverse.  Elements are polynomials in these
commuting generators with coefficients in Lambda.  A monomial is a pair of
sorted index tuples ``(up, down)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

from .diagram import (
    Crossing,
    FramedTangleKnot,
    Partition,
    PlanarDiagram,
    SurfaceKind,
    cable,
    close_in_plane,
    inversions,
    permutation_braid,
    stack,
    tensor,
)
from .ring import LambdaScalar, exact_divide
from .skein import default_engine, homfly_z, lemma1_audit

__all__ = [
    "Monomial",
    "AnnulusElement",
    "PatternTerm",
    "PatternExpansion",
    "EigenReport",
    "h",
    "h_star",
    "q_lambda_mu",
    "star",
    "expand_to_patterns",
    "pattern_tangle",
    "satellite_diagram",
    "meridian_tangle",
    "pattern_value",
    "decorated_value",
    "meridian_eigencheck",
]

Monomial = Tuple[Tuple[int, ...], Tuple[int, ...]]
ONE_MONO: Monomial = ((), ())


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return (tuple(sorted(a[0] + b[0])), tuple(sorted(a[1] + b[1])))


@dataclass(frozen=True, eq=False)
class AnnulusElement:
    terms: Dict[Monomial, LambdaScalar] = field(default_factory=dict)

    @classmethod
    def make(cls, terms: Mapping[Monomial, object]) -> "AnnulusElement":
        out = {}
        for m, c in terms.items():
            c = LambdaScalar.coerce(c)
            if not c.is_zero():
                out[(tuple(sorted(m[0])), tuple(sorted(m[1])))] = c
        return cls(out)

    @classmethod
    def one(cls) -> "AnnulusElement":
        return cls({ONE_MONO: LambdaScalar(1)})

    @classmethod
    def zero(cls) -> "AnnulusElement":
        return cls({})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return AnnulusElement({m: c for m, c in out.items() if not c.is_zero()})

    __radd__ = __add__

    def __neg__(self):
        return AnnulusElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: Dict[Monomial, LambdaScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return AnnulusElement({m: c for m, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def bidegrees(self) -> List[Tuple[int, int]]:
        return sorted({(sum(u), sum(d)) for u, d in self.terms})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (u, d), c in sorted(self.terms.items(), key=lambda t: (-sum(t[0][0]) - sum(t[0][1]), t[0])):
            gens = [f"h{k}" for k in u] + [f"h*{k}" for k in d]
            mono = "*".join(gens) or "1"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> str:
        from .ring import poly_to_json

        rows = []
        for (u, d), c in sorted(self.terms.items()):
            row = {"h": list(u), "h_star": list(d), "num": poly_to_json(c.num)}
            if not c.is_integral():
                row["den"] = list(c.den)
            rows.append(row)
        return json.dumps(rows, sort_keys=True)


def _coerce(x) -> AnnulusElement:
    if isinstance(x, AnnulusElement):
        return x
    c = LambdaScalar.coerce(x)
    return AnnulusElement({ONE_MONO: c} if not c.is_zero() else {})


def h(k: int) -> AnnulusElement:
    """``h_k``; ``h_0 = 1`` and ``h_k = 0`` for ``k < 0``."""
    if k < 0:
        return AnnulusElement.zero()
    if k == 0:
        return AnnulusElement.one()
    return AnnulusElement({((k,), ()): LambdaScalar(1)})


def h_star(k: int) -> AnnulusElement:
    if k < 0:
        return AnnulusElement.zero()
    if k == 0:
        return AnnulusElement.one()
    return AnnulusElement({((), (k,)): LambdaScalar(1)})


def star(q: AnnulusElement) -> AnnulusElement:
    """Turn the annulus over: ``h_k <-> h*_k``."""
    return AnnulusElement({(d, u): c for (u, d), c in q.terms.items()})


def _det(rows: List[List[AnnulusElement]]) -> AnnulusElement:
    size = len(rows)
    if size == 0:
        return AnnulusElement.one()
    total = AnnulusElement.zero()
    # expand along the first row
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = entry * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def q_matrix(lam: Partition, mu: Partition) -> List[List[AnnulusElement]]:
    """The matrix whose determinant is ``Q_{lambda, mu}``.

    Rows for ``mu`` come first, parts increasing; row ``r`` with part ``d``
    has ``h*_{d+r-j}`` in column ``j``.  Rows for ``lambda`` follow, parts
    decreasing; row ``r`` with part ``d`` has ``h_{d+j-r}`` in column ``j``.
    """
    lam, mu = Partition(lam), Partition(mu)
    size = len(lam) + len(mu)
    rows = []
    r = 0
    for d in sorted(mu):
        rows.append([h_star(d + r - j) for j in range(size)])
        r += 1
    for d in lam:
        rows.append([h(d + j - r) for j in range(size)])
        r += 1
    return rows


@lru_cache(maxsize=None)
def _q_cached(lam: Partition, mu: Partition) -> AnnulusElement:
    return _det(q_matrix(lam, mu))


def q_lambda_mu(lam: Partition, mu: Partition = Partition()) -> AnnulusElement:
    """``Q_{lambda, mu} = det M``."""
    return _q_cached(Partition(lam), Partition(mu))


# ---------------------------------------------------------------------------
# patterns


@dataclass(frozen=True)
class PatternTerm:
    """A product of closed positive permutation braids: upward groups then downward groups.

    Each group is ``(k, w)`` with ``w`` a permutation of ``range(k)``.
    """

    up: Tuple[Tuple[int, Tuple[int, ...]], ...] = ()
    down: Tuple[Tuple[int, Tuple[int, ...]], ...] = ()

    @property
    def shape(self) -> Tuple[int, int]:
        return (sum(k for k, _ in self.up), sum(k for k, _ in self.down))

    def permutations(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """The juxtaposed groups as one permutation on the up strings and one on the down strings."""
        return _concat(self.up), _concat(self.down)

    def monomial(self) -> Monomial:
        return (tuple(sorted(k for k, _ in self.up)), tuple(sorted(k for k, _ in self.down)))


def _concat(groups) -> Tuple[int, ...]:
    out: List[int] = []
    for k, w in groups:
        base = len(out)
        out.extend(base + x for x in w)
    return tuple(out)


@lru_cache(maxsize=None)
def _symmetrizer_weights(k: int) -> Tuple[Tuple[Tuple[int, ...], LambdaScalar], ...]:
    perms = list(itertools.permutations(range(k)))
    norm = sum((LambdaScalar.s(2 * inversions(w)) for w in perms), LambdaScalar(0))
    inv = exact_divide(LambdaScalar(1), norm)
    return tuple((w, LambdaScalar.s(inversions(w)) * inv) for w in perms)


@dataclass(frozen=True)
class PatternExpansion:
    terms: Dict[PatternTerm, LambdaScalar]

    def collapsed(self) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], LambdaScalar]:
        """Sum terms that give the same tangle ``b_pi (x) b*_rho``."""
        out: Dict = {}
        for t, c in self.terms.items():
            key = t.permutations()
            out[key] = out[key] + c if key in out else c
        return {k: c for k, c in out.items() if not c.is_zero()}

    def resymbolize(self) -> AnnulusElement:
        """Recover the h-polynomial from the identity-braid terms."""
        out: Dict[Monomial, LambdaScalar] = {}
        for t, c in self.terms.items():
            if any(w != tuple(range(k)) for k, w in t.up + t.down):
                continue
            for k, _ in t.up + t.down:
                c = exact_divide(c, dict(_symmetrizer_weights(k))[tuple(range(k))])
            out[t.monomial()] = c
        return AnnulusElement.make(out)

    def __len__(self):
        return len(self.terms)


def expand_to_patterns(q: AnnulusElement) -> PatternExpansion:
    """Replace each ``h_k`` (``h*_k``) by the closed upward (downward) symmetrizer."""
    out: Dict[PatternTerm, LambdaScalar] = {}
    for (u, d), c in q.terms.items():
        choices = [[(k, w, a) for w, a in _symmetrizer_weights(k)] for k in u]
        choices_d = [[(k, w, a) for w, a in _symmetrizer_weights(k)] for k in d]
        for pick in itertools.product(*choices, *choices_d):
            coeff = c
            for _, _, a in pick:
                coeff = coeff * a
            up = tuple((k, w) for k, w, _ in pick[: len(u)])
            down = tuple((k, w) for k, w, _ in pick[len(u):])
            term = PatternTerm(up, down)
            out[term] = out[term] + coeff if term in out else coeff
    return PatternExpansion({t: c for t, c in out.items() if not c.is_zero()})


def pattern_tangle(pi: Sequence[int], rho: Sequence[int]) -> PlanarDiagram:
    """``b_pi (x) b*_rho`` as an (n, p) tangle."""
    pieces = []
    if pi:
        pieces.append(permutation_braid(pi))
    if rho:
        pieces.append(permutation_braid(rho, down=True))
    if len(pieces) == 2:
        return tensor(*pieces)
    return pieces[0]


def meridian_tangle(n: int, p: int) -> PlanarDiagram:
    """The identity (n, p) tangle with one loop encircling all strings.

    The loop runs over the strings left to right and back under them right to
    left; its crossings are positive with upward strings and negative with
    downward ones.
    """
    m = n + p
    orient = [1] * n + [-1] * p
    ids = itertools.count()
    # strings: bottom segment -> lower crossing (string over) -> middle -> upper crossing (string under) -> top
    low, mid, top = ([next(ids) for _ in range(m)] for _ in range(3))
    loop = [next(ids) for _ in range(2 * m)]
    crossings = []
    for i in range(m):
        # upper level: loop over going right, edges loop[i] -> loop[i+1]
        lo_in, lo_out = loop[i], loop[i + 1] if i + 1 < 2 * m else loop[0]
        s_in, s_out = (mid[i], top[i]) if orient[i] > 0 else (top[i], mid[i])
        crossings.append(Crossing(s_in, s_out, lo_in, lo_out, orient[i]))
    for r, i in enumerate(range(m - 1, -1, -1)):
        # lower level: loop under going left
        a = m + r
        lo_in, lo_out = loop[a], loop[(a + 1) % (2 * m)]
        s_in, s_out = (low[i], mid[i]) if orient[i] > 0 else (mid[i], low[i])
        crossings.append(Crossing(lo_in, lo_out, s_in, s_out, orient[i]))
    inputs, outputs = [], []
    for i in range(m):
        if orient[i] > 0:
            inputs.append((("b", i), low[i]))
            outputs.append((("t", i), top[i]))
        else:
            inputs.append((("t", i), top[i]))
            outputs.append((("b", i), low[i]))
    return PlanarDiagram(SurfaceKind.rectangle(n, p), tuple(crossings), tuple(inputs), tuple(outputs))


def satellite_diagram(
    knot: FramedTangleKnot, pi: Sequence[int], rho: Sequence[int], meridian: bool = False
) -> PlanarDiagram:
    """``K * closure(b_pi (x) b*_rho)`` in the plane, optionally with a meridian loop."""
    n, p = len(pi), len(rho)
    if n + p == 0:
        d = PlanarDiagram(SurfaceKind("plane"))
        if meridian:
            d = PlanarDiagram(SurfaceKind("plane"), free_loops=(0,))
        return d
    t = stack(cable(knot, n, p), pattern_tangle(pi, rho))
    if meridian:
        t = stack(meridian_tangle(n, p), t)
    return close_in_plane(t)


def pattern_value(
    knot: FramedTangleKnot, pi: Sequence[int], rho: Sequence[int], meridian: bool = False, audits: list | None = None
) -> LambdaScalar:
    """Homfly (empty diagram = 1) of a decorated satellite.

    When ``audits`` is a list, the z-power audit of the resolution is appended to it.
    """
    d = satellite_diagram(knot, pi, rho, meridian)
    if d.crossings and audits is not None:
        _, trace = default_engine().resolve(d)
        audits.append(lemma1_audit(trace))
    return homfly_z(d, normalization="empty").to_lambda()


def decorated_value(
    knot: FramedTangleKnot, q: AnnulusElement, meridian: bool = False, audits: list | None = None
) -> LambdaScalar:
    """``P(K * Q)``, or ``P(K * phi(Q))`` with ``meridian``, normalised by ``P(empty) = 1``."""
    total = LambdaScalar(0)
    for (pi, rho), c in sorted(expand_to_patterns(q).collapsed().items()):
        total = total + c * pattern_value(knot, pi, rho, meridian, audits)
    return total


# ---------------------------------------------------------------------------
# meridian map


@dataclass
class EigenReport:
    element: str
    ratios: Dict[str, Tuple[LambdaScalar, LambdaScalar]]
    skipped: List[str]
    consistent: bool

    def __bool__(self):
        return self.consistent


def meridian_eigencheck(q: AnnulusElement, knots: Sequence[FramedTangleKnot]) -> EigenReport:
    """Compare ``P(K * phi(Q)) / P(K * Q)`` across knots.

    Ratios are kept as (numerator, denominator) pairs and compared by
    cross-multiplication.
    """
    if not knots:
        raise ValueError("need at least one knot")
    ratios: Dict[str, Tuple[LambdaScalar, LambdaScalar]] = {}
    skipped = []
    for k in knots:
        den = decorated_value(k, q)
        if den.is_zero():
            skipped.append(k.name)
            continue
        ratios[k.name] = (decorated_value(k, q, meridian=True), den)
    vals = list(ratios.values())
    consistent = all(a * d0 == b * n0 for (n0, d0) in vals[:1] for a, b in vals[1:])
    return EigenReport(str(q), ratios, skipped, consistent)
