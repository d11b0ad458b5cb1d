"""The skein algebras H_{n,p} of (n, p)-tangles and their idempotents.

Basis elements are the totally descending tangles, one for each way of
pairing the inputs with the outputs.  A basis element is identified by its
connectivity key: the tuple of ``(start point, end point)`` pairs, listed in
counterclockwise order of the start points (the order in which the skein
engine traverses arcs).  Products are computed by stacking basis tangles and
resolving; ``x * y`` places ``x`` below ``y``.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .diagram import (
    BraidWord,
    Crossing,
    FramedTangleKnot,
    Partition,
    PlanarDiagram,
    SurfaceKind,
    boundary_order,
    cable,
    inversions,
    reduced_word,
    stack,
)
from .ring import IntLaurent2, LambdaScalar, ZForm, exact_divide
from .skein import SkeinEngine, default_engine, lemma1_audit

__all__ = [
    "HeckeElement",
    "IdempotentRecord",
    "basis_keys",
    "basis_diagram",
    "key_k",
    "k0_key",
    "k0_perms",
    "hecke_multiply",
    "symmetrizer",
    "build_e_lambda",
    "contraction_scalar",
    "contraction_scalar_element",
    "perm_contraction",
    "tangle_k0_coeffs",
]

Key = Tuple[Tuple[Tuple[str, int], Tuple[str, int]], ...]


# ---------------------------------------------------------------------------
# basis bookkeeping


def _inputs(n: int, p: int):
    pts = [("b", i) for i in range(n)] + [("t", i) for i in range(n, n + p)]
    return sorted(pts, key=boundary_order)


def _outputs(n: int, p: int):
    return [("t", i) for i in range(n)] + [("b", i) for i in range(n, n + p)]


def basis_keys(n: int, p: int) -> List[Key]:
    """All ``(n+p)!`` connectivity keys of H_{n,p}, in a fixed order."""
    ins = _inputs(n, p)
    outs = _outputs(n, p)
    return [tuple(zip(ins, perm)) for perm in itertools.permutations(outs)]


def key_k(key: Key) -> int:
    """Number of arcs joining two bottom points (equally, two top points)."""
    return sum(1 for a, b in key if a[0] == "b" and b[0] == "b")


def k0_key(pi: Sequence[int], rho: Sequence[int] = ()) -> Key:
    """Key of ``b_pi (x) b*_rho``: up string bottom i -> top pi[i], down string top n+j -> bottom n+rho[j]."""
    n = len(pi)
    arcs = [(("b", i), ("t", pi[i])) for i in range(n)]
    arcs += [(("t", n + j), ("b", n + rho[j])) for j in range(len(rho))]
    return tuple(sorted(arcs, key=lambda a: boundary_order(a[0])))


def k0_perms(key: Key, n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Inverse of :func:`k0_key` for a key with ``k = 0``."""
    if key_k(key):
        raise ValueError("key has turnbacks")
    m = len(key)
    pi = [0] * n
    rho = [0] * (m - n)
    for (s, i), (_, j) in key:
        if s == "b":
            pi[i] = j
        else:
            rho[i - n] = j - n
    return tuple(pi), tuple(rho)


def _angle(pt, m: int) -> float:
    side, i = pt
    # a small irregular nudge keeps chords in general position
    nudge = 0.01 * math.sin(3.1 * i + (0.7 if side == "t" else 0.0) + 1.3)
    base = math.pi + (i + 0.5) * math.pi / m if side == "b" else math.pi - (i + 0.5) * math.pi / m
    return base + nudge


@lru_cache(maxsize=None)
def basis_diagram(key: Key, n: int, p: int) -> PlanarDiagram:
    """A totally descending tangle with the given connectivity.

    The rectangle is viewed as a disk and every arc drawn as a straight chord;
    chords listed earlier in the key pass over later ones.
    """
    m = n + p
    pos = {}
    for a, b in key:
        for pt in (a, b):
            t = _angle(pt, m)
            pos[pt] = (math.cos(t), math.sin(t))
    hits: List[List[Tuple[float, int, str]]] = [[] for _ in key]
    signs = []
    for a, b in itertools.combinations(range(len(key)), 2):
        (p1, q1), (p2, q2) = [(pos[x], pos[y]) for x, y in (key[a], key[b])]
        d1 = (q1[0] - p1[0], q1[1] - p1[1])
        d2 = (q2[0] - p2[0], q2[1] - p2[1])
        den = d1[0] * d2[1] - d1[1] * d2[0]
        if abs(den) < 1e-12:
            continue
        w = (p2[0] - p1[0], p2[1] - p1[1])
        t1 = (w[0] * d2[1] - w[1] * d2[0]) / den
        t2 = (w[0] * d1[1] - w[1] * d1[0]) / den
        if 0 < t1 < 1 and 0 < t2 < 1:
            c = len(signs)
            # over chord a (earlier), under chord b; sign = sgn(over x under)
            signs.append(1 if den > 0 else -1)
            hits[a].append((t1, c, "o"))
            hits[b].append((t2, c, "u"))
    ids = itertools.count()
    ends: Dict[Tuple[int, str], Tuple[int, int]] = {}
    inputs, outputs = [], []
    for arc, row in enumerate(hits):
        row.sort()
        e = next(ids)
        inputs.append((key[arc][0], e))
        for _, c, role in row:
            f = next(ids)
            ends[(c, role)] = (e, f)
            e = f
        outputs.append((key[arc][1], e))
    crossings = []
    for c, sg in enumerate(signs):
        iu, ou = ends[(c, "u")]
        io, oo = ends[(c, "o")]
        crossings.append(Crossing(iu, ou, io, oo, sg))
    return PlanarDiagram(SurfaceKind.rectangle(n, p), tuple(crossings), tuple(inputs), tuple(outputs))


# ---------------------------------------------------------------------------
# elements


def _clean(terms: Mapping[Hashable, LambdaScalar]) -> Dict[Hashable, LambdaScalar]:
    return {k: c for k, c in terms.items() if not c.is_zero()}


@dataclass(frozen=True, eq=False)
class HeckeElement:
    """A Lambda-linear combination of basis tangles of H_{n,p}."""

    n: int
    p: int
    terms: Dict[Key, LambdaScalar] = field(default_factory=dict)

    @classmethod
    def make(cls, n: int, p: int, terms: Mapping[Key, object]) -> "HeckeElement":
        return cls(n, p, _clean({k: LambdaScalar.coerce(c) for k, c in terms.items()}))

    @classmethod
    def identity(cls, n: int, p: int = 0) -> "HeckeElement":
        return cls.make(n, p, {k0_key(range(n), range(p)): 1})

    @classmethod
    def basis(cls, key: Key, n: int, p: int) -> "HeckeElement":
        return cls.make(n, p, {key: 1})

    @classmethod
    def from_permutations(cls, pi: Sequence[int], rho: Sequence[int] = ()) -> "HeckeElement":
        return cls.make(len(pi), len(rho), {k0_key(pi, rho): 1})

    @classmethod
    def from_diagram(cls, d: PlanarDiagram, engine: SkeinEngine | None = None) -> "HeckeElement":
        if d.surface.kind != "rectangle":
            raise ValueError("Hecke elements come from rectangle tangles")
        comb, _ = (engine or default_engine()).resolve(d)
        return cls.make(d.surface.n, d.surface.p, {k: c.to_lambda() for k, c in comb.items()})

    @classmethod
    def from_braid(cls, word: BraidWord, down: bool = False) -> "HeckeElement":
        """A braid word on upward strings (or, with ``down``, on downward strings)."""
        orient = [-1] * word.strands if down else None
        return cls.from_diagram(word.to_tangle(orient))

    # ------------------------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n, self.p)

    def __getitem__(self, key) -> LambdaScalar:
        return self.terms.get(key, LambdaScalar(0))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "HeckeElement"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: H{self.shape} vs H{other.shape}")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return HeckeElement(self.n, self.p, _clean(out))

    def __neg__(self):
        return HeckeElement(self.n, self.p, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HeckeElement":
        c = LambdaScalar.coerce(c)
        return HeckeElement(self.n, self.p, _clean({k: c * x for k, x in self.terms.items()}))

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return hecke_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.shape == other.shape and self.terms == other.terms

    def __hash__(self):
        return hash((self.shape, frozenset(self.terms.items())))

    def map_coefficients(self, f) -> "HeckeElement":
        return HeckeElement(self.n, self.p, _clean({k: f(c) for k, c in self.terms.items()}))

    def split_k(self) -> Tuple["HeckeElement", "HeckeElement"]:
        """``(T0, T1)`` with ``self = T0 + T1``: the k = 0 part and the turnback ideal part."""
        t0 = {k: c for k, c in self.terms.items() if key_k(k) == 0}
        t1 = {k: c for k, c in self.terms.items() if key_k(k) > 0}
        return HeckeElement(self.n, self.p, t0), HeckeElement(self.n, self.p, t1)

    def ratio_to(self, other: "HeckeElement") -> Optional[LambdaScalar]:
        """``c`` with ``self == c * other``, or None when not proportional."""
        self._check(other)
        if other.is_zero():
            return LambdaScalar(0) if self.is_zero() else None
        if set(self.terms) - set(other.terms):
            return None
        k0 = next(iter(other.terms))
        c = exact_divide(self[k0], other[k0])
        for k, x in other.terms.items():
            if self[k] != c * x:
                return None
        return c

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{_key_label(k, self.n)}" for k, c in sorted(self.terms.items()))


def _key_label(key: Key, n: int) -> str:
    if key_k(key) == 0:
        pi, rho = k0_perms(key, n)
        return f"b{list(pi)}" + (f"*{list(rho)}" if rho else "")
    return "t[" + ",".join(f"{a[0]}{a[1]}>{b[0]}{b[1]}" for a, b in key) + "]"


# ---------------------------------------------------------------------------
# multiplication


_PRODUCTS: Dict[Tuple[int, int, Key, Key], Dict[Key, LambdaScalar]] = {}
_PRODUCT_LOCK = threading.Lock()


def _basis_product(n: int, p: int, k1: Key, k2: Key) -> Dict[Key, LambdaScalar]:
    tag = (n, p, k1, k2)
    hit = _PRODUCTS.get(tag)
    if hit is not None:
        return hit
    d = stack(basis_diagram(k1, n, p), basis_diagram(k2, n, p))
    comb, _ = default_engine().resolve(d)
    out = {k: c.to_lambda() for k, c in comb.items()}
    with _PRODUCT_LOCK:
        _PRODUCTS[tag] = out
    return out


def hecke_multiply(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    """``x * y``: the tangle ``x`` placed below ``y``, resolved into the basis."""
    x._check(y)
    acc: Dict[Key, LambdaScalar] = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            c = c1 * c2
            for k, b in _basis_product(x.n, x.p, k1, k2).items():
                t = c * b
                acc[k] = acc[k] + t if k in acc else t
    return HeckeElement(x.n, x.p, _clean(acc))


# ---------------------------------------------------------------------------
# symmetrizers and idempotents


def _perm_compose(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(a[i] for i in b)


def _weighted_sum(perms: Iterable[Tuple[int, ...]], weight, m: int, down: bool) -> HeckeElement:
    """``sum weight(l(w)) b_w``, as an element of H_{m,0} or H_{0,m}."""
    terms = {}
    for w in perms:
        key = k0_key((), w) if down else k0_key(w)
        terms[key] = weight(inversions(w))
    return HeckeElement.make(0 if down else m, m if down else 0, terms)


def _block_perms(blocks: Sequence[Sequence[int]], m: int):
    """Permutations of ``range(m)`` preserving each block setwise."""
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        w = list(range(m))
        for block, image in zip(blocks, parts):
            for i, j in zip(block, image):
                w[i] = j
        yield tuple(w)


def _blocks(sizes: Sequence[int]) -> List[List[int]]:
    out, start = [], 0
    for r in sizes:
        out.append(list(range(start, start + r)))
        start += r
    return out


def _s_power(e: int) -> LambdaScalar:
    return LambdaScalar.s(e)


def _flip_weight(e: int) -> LambdaScalar:
    # (-s^-1)^e
    return LambdaScalar(IntLaurent2({(0, -e): (-1) ** e}))


def symmetrizer(n: int, down: bool = False) -> HeckeElement:
    """``a_n = sum s^l(w) b_w / sum s^2l(w)``; ``sigma_i a_n = s a_n`` and ``a_n^2 = a_n``."""
    if n < 1:
        raise ValueError("symmetrizer needs n >= 1")
    perms = list(itertools.permutations(range(n)))
    norm = sum((_s_power(2 * inversions(w)) for w in perms), LambdaScalar(0))
    return _weighted_sum(perms, _s_power, n, down) * exact_divide(LambdaScalar(1), norm)


def _braid_of_perm(w: Sequence[int], m: int, down: bool, inverse: bool = False) -> HeckeElement:
    """``T_w`` (or its inverse) as an element."""
    if not inverse:
        return _weighted_sum([tuple(w)], lambda _: LambdaScalar(1), m, down)
    letters = reduced_word(w if not down else _inv(w))
    word = BraidWord(m, tuple((i, -1) for i in reversed(letters)))
    return HeckeElement.from_braid(word, down=down)


def _inv(w: Sequence[int]) -> Tuple[int, ...]:
    out = [0] * len(w)
    for i, j in enumerate(w):
        out[j] = i
    return tuple(out)


@dataclass(frozen=True)
class IdempotentRecord:
    """``element = E / gamma`` where ``E`` is the unnormalised Young-type product."""

    partition: Partition
    element: HeckeElement
    gamma: LambdaScalar
    twist: Tuple[int, ...]
    down: bool = False


_IDEMPOTENTS: Dict[Tuple[Partition, bool], IdempotentRecord] = {}


def build_e_lambda(lam: Partition, down: bool = False) -> IdempotentRecord:
    """The idempotent ``e_lambda`` in H_{|lambda|,0} (or H_{0,|lambda|} with ``down``).

    ``E = x T_d y T_d^-1`` where ``x`` symmetrizes the rows of ``lambda`` with
    weights ``s^l``, ``y`` antisymmetrizes the columns with weights
    ``(-s^-1)^l`` and ``d`` is any permutation with ``x T_d y != 0``.  Then
    ``E^2 = gamma E`` and ``e_lambda = E / gamma``.
    """
    lam = Partition(lam)
    tag = (lam, down)
    if tag in _IDEMPOTENTS:
        return _IDEMPOTENTS[tag]
    m = lam.size
    if m < 1:
        raise ValueError("empty partition has no idempotent")
    x = _weighted_sum(_block_perms(_blocks(lam), m), _s_power, m, down)
    y = _weighted_sum(_block_perms(_blocks(lam.conjugate()), m), _flip_weight, m, down)
    for d in itertools.permutations(range(m)):
        td = _braid_of_perm(d, m, down)
        xty = x * td * y
        if not xty.is_zero():
            break
    else:  # pragma: no cover - xHy is never zero
        raise ArithmeticError(f"no twist found for {lam}")
    big = xty * _braid_of_perm(d, m, down, inverse=True)
    sq = big * big
    gamma = sq.ratio_to(big)
    if gamma is None:
        raise ArithmeticError(f"E^2 is not proportional to E for {lam}")
    if gamma.is_zero():
        raise ArithmeticError(f"E is nilpotent for {lam}")
    e = big.scale(exact_divide(LambdaScalar(1), gamma))
    if e * e != e:
        raise ArithmeticError(f"e_{lam} is not idempotent")
    rec = IdempotentRecord(lam, e, gamma, tuple(d), down)
    _IDEMPOTENTS[tag] = rec
    return rec


def contraction_scalar_element(beta: HeckeElement, lam: Partition) -> LambdaScalar:
    """``c`` with ``e beta e = c e``; ``beta`` in H_{m,0} or H_{0,m}."""
    down = beta.n == 0 and beta.p > 0
    rec = build_e_lambda(lam, down=down)
    e = rec.element
    c = (e * beta * e).ratio_to(e)
    if c is None:
        raise ArithmeticError(f"e beta e is not a multiple of e for {lam}")
    if not c.is_integral() or c.num.columns().keys() - {0}:
        raise ArithmeticError(f"contraction scalar {c} lies outside Z[s^+-1]")
    return c


def contraction_scalar(gamma: BraidWord, lam: Partition) -> LambdaScalar:
    """``c(gamma, lambda)`` with ``e_lambda gamma e_lambda = c e_lambda``."""
    lam = Partition(lam)
    if gamma.strands != lam.size:
        raise ValueError("braid and partition sizes differ")
    return contraction_scalar_element(HeckeElement.from_braid(gamma), lam)


@lru_cache(maxsize=None)
def _perm_contraction(w: Tuple[int, ...], lam: Partition, down: bool) -> LambdaScalar:
    beta = _weighted_sum([w], lambda _: LambdaScalar(1), len(w), down)
    return contraction_scalar_element(beta, lam)


def perm_contraction(w: Sequence[int], lam: Partition, down: bool = False) -> LambdaScalar:
    """``c(b_w, lambda)`` for a positive permutation braid (upward or downward)."""
    return _perm_contraction(tuple(w), Partition(lam), down)


# ---------------------------------------------------------------------------
# the knot cable in H_{n,p}


def tangle_k0_coeffs(knot: FramedTangleKnot, n: int, p: int, audit: bool = True):
    """``{(pi, rho): c}`` for the k = 0 part of the (n, p) cable of ``knot``.

    Every coefficient is checked to lie in Z[v^+-1, z].
    """
    if n + p < 1:
        raise ValueError("need n + p >= 1")
    comb, trace = default_engine().resolve(cable(knot, n, p))
    if audit and not lemma1_audit(trace):
        raise ArithmeticError("resolution trace failed the z-power audit")
    out: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], ZForm] = {}
    for key, c in comb.items():
        if key_k(key):
            continue
        if c.min_z() < 0:
            raise ArithmeticError(f"coefficient {c} has negative powers of z")
        out[k0_perms(key, n)] = c
    return out
