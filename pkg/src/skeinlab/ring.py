"""Exact coefficient rings for the Homfly skein calculus.

Three scalar types are provided:

``IntLaurent2``
    integer Laurent polynomials in ``v`` and ``s``.
``ZForm``
    integer Laurent polynomials in ``v`` and ``z``, where ``z = s - s^-1``.
    The skein engine works in this ring.
``LambdaScalar``
    the localised ring: an ``IntLaurent2`` numerator over a polynomial in
    ``s`` alone, kept in lowest terms.  Division by anything that is not a
    unit in ``v`` goes through :func:`exact_divide`.

All values are immutable and hashable, and equality is structural.
"""

from __future__ import annotations

from math import gcd
from typing import Dict, Iterable, Mapping, Tuple

__all__ = [
    "IntLaurent2",
    "ZForm",
    "LambdaScalar",
    "NotExpressible",
    "NotDivisible",
    "exact_divide",
    "to_z_form",
    "specialize_v",
    "mod2_reduce",
    "render_table",
    "poly_to_json",
    "poly_from_json",
]


class NotExpressible(ValueError):
    """A Laurent polynomial in ``s`` is not a polynomial in ``z = s - 1/s``."""


class NotDivisible(ArithmeticError):
    """An exact quotient was requested but a nonzero remainder survived."""


# ---------------------------------------------------------------------------
# dense univariate integer polynomials: tuple of ints, index = degree

Poly = Tuple[int, ...]
_ONE: Poly = (1,)


def _ptrim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _ptrim(out)


def _pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def _pcontent(a: Poly) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


def _pscale_div(a: Poly, k: int) -> Poly:
    return tuple(c // k for c in a)


def _pprimitive(a: Poly) -> Poly:
    c = _pcontent(a)
    if c == 0:
        return ()
    if a[-1] < 0:
        c = -c
    return _pscale_div(a, c)


def _pprem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder of ``a`` by ``b``."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for i, c in enumerate(b):
            a[i + shift] -= la * c
        a = list(_ptrim(a))
    return tuple(a)


def _pgcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor in Z[s], leading coefficient positive."""
    if not a:
        return _pprimitive(b) if b else ()
    if not b:
        return _pprimitive(a)
    g = gcd(_pcontent(a), _pcontent(b))
    a, b = _pprimitive(a), _pprimitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pprem(a, b)
        a, b = b, (_pprimitive(r) if r else ())
    return tuple(g * c for c in a)


def _pdiv_exact(a: Poly, b: Poly) -> Poly:
    """``a / b`` in Z[s]; raises when the division leaves a remainder."""
    if not a:
        return ()
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * max(len(a) - db, 1)
    while a and len(a) - 1 >= db:
        la = a[-1]
        if la % lb:
            raise NotDivisible("non-integral quotient")
        c = la // lb
        shift = len(a) - 1 - db
        q[shift] = c
        for i, x in enumerate(b):
            a[i + shift] -= c * x
        a = list(_ptrim(a))
    if a:
        raise NotDivisible("nonzero remainder")
    return _ptrim(q)


# ---------------------------------------------------------------------------
# sparse two-variable Laurent polynomials


Key = Tuple[int, int]


class _Laurent2:
    """Shared machinery for sparse integer Laurent polynomials in two variables."""

    __slots__ = ("_terms", "_hash")
    VARS = ("x", "y")

    def __init__(self, terms: Mapping[Key, int] | int | None = None):
        if terms is None:
            t: Dict[Key, int] = {}
        elif isinstance(terms, int):
            t = {(0, 0): terms} if terms else {}
        else:
            t = {k: c for k, c in terms.items() if c}
        self._terms = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Key, int]):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, c: int = 1):
        return cls._raw({(a, b): c} if c else {})

    @classmethod
    def one(cls):
        return cls.monomial()

    @classmethod
    def zero(cls):
        return cls._raw({})

    @property
    def terms(self) -> Dict[Key, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, a: int, b: int) -> int:
        return self._terms.get((a, b), 0)

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, int):
            return type(self)(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            n = out.get(k, 0) + c
            if n:
                out[k] = n
            else:
                out.pop(k, None)
        return self._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Key, int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                k = (a1 + a2, b1 + b2)
                n = out.get(k, 0) + c1 * c2
                if n:
                    out[k] = n
                else:
                    out.pop(k, None)
        return self._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have negative powers")
            ((a, b), c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial is not a unit")
            return self._raw({(a * e, b * e): c ** (-e)})
        out = self.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, da: int, db: int, c: int = 1):
        """Multiply by the monomial ``c x^da y^db``."""
        return self._raw({(a + da, b + db): k * c for (a, b), k in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = type(self)(other)
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def columns(self) -> Dict[int, Dict[int, int]]:
        """Group the terms by the first exponent."""
        out: Dict[int, Dict[int, int]] = {}
        for (a, b), c in self._terms.items():
            out.setdefault(a, {})[b] = c
        return out

    def degree_range(self, index: int) -> Tuple[int, int]:
        if not self._terms:
            return (0, 0)
        ks = [k[index] for k in self._terms]
        return min(ks), max(ks)

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        x, y = self.VARS
        parts = []
        for (a, b) in sorted(self._terms, key=lambda k: (k[0], -k[1])):
            c = self._terms[(a, b)]
            mono = "*".join(
                f"{name}^{e}" if e != 1 else name
                for name, e in ((x, a), (y, b))
                if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class IntLaurent2(_Laurent2):
    """Element of Z[v^+-1, s^+-1]; keys are ``(power of v, power of s)``."""

    __slots__ = ()
    VARS = ("v", "s")

    @classmethod
    def v(cls, e: int = 1):
        return cls.monomial(e, 0)

    @classmethod
    def s(cls, e: int = 1):
        return cls.monomial(0, e)

    def flip_s(self) -> "IntLaurent2":
        """Apply the substitution ``s -> -1/s``."""
        return self._raw({(a, -b): (-c if b % 2 else c) for (a, b), c in self._terms.items()})

    def mirror(self) -> "IntLaurent2":
        """Apply ``v -> 1/v`` and ``s -> -1/s`` (so ``z -> z``)."""
        return self._raw({(-a, -b): (-c if b % 2 else c) for (a, b), c in self._terms.items()})


class ZForm(_Laurent2):
    """Element of Z[v^+-1, z^+-1]; keys are ``(power of v, power of z)``."""

    __slots__ = ()
    VARS = ("v", "z")

    @classmethod
    def v(cls, e: int = 1):
        return cls.monomial(e, 0)

    @classmethod
    def z(cls, e: int = 1):
        return cls.monomial(0, e)

    def min_z(self) -> int:
        return min((k for _, k in self._terms), default=0)

    def expand(self) -> IntLaurent2:
        """Substitute ``z = s - 1/s``; defined when no negative ``z`` powers occur."""
        if self.min_z() < 0:
            raise NotExpressible("negative powers of z are not Laurent in s")
        out: Dict[Key, int] = {}
        for (a, k), c in self._terms.items():
            for b, binom in _z_power(k).items():
                key = (a, b)
                n = out.get(key, 0) + c * binom
                if n:
                    out[key] = n
                else:
                    out.pop(key, None)
        return IntLaurent2._raw(out)

    def to_lambda(self) -> "LambdaScalar":
        m = self.min_z()
        if m >= 0:
            return LambdaScalar(self.expand())
        # z^m = s^-m / (s^2 - 1)^-m
        shifted = ZForm._raw({(a, k - m): c for (a, k), c in self._terms.items()})
        den = _ONE
        for _ in range(-m):
            den = _pmul(den, (-1, 0, 1))
        return LambdaScalar(shifted.expand().shift(0, -m), den)

    def substitute_squares(self) -> "ZForm":
        """Replace ``v`` by ``v^2`` and ``z`` by ``z^2``."""
        return ZForm._raw({(2 * a, 2 * k): c for (a, k), c in self._terms.items()})


_ZPOW_CACHE: Dict[int, Dict[int, int]] = {}


def _z_power(k: int) -> Dict[int, int]:
    """Expansion of ``(s - 1/s)^k`` as ``{s exponent: coefficient}``."""
    if k not in _ZPOW_CACHE:
        from math import comb

        _ZPOW_CACHE[k] = {k - 2 * j: (-1) ** j * comb(k, j) for j in range(k + 1)}
    return _ZPOW_CACHE[k]


# ---------------------------------------------------------------------------
# the localised ring


def _column_poly(col: Mapping[int, int]) -> Tuple[int, Poly]:
    """Split a Laurent column in ``s`` as ``s^low * poly``."""
    low = min(col)
    high = max(col)
    return low, _ptrim(col.get(low + i, 0) for i in range(high - low + 1))


def _times_poly(n: IntLaurent2, p: Poly) -> IntLaurent2:
    if p == _ONE:
        return n
    out: Dict[Key, int] = {}
    for (a, b), c in n.items():
        for i, d in enumerate(p):
            if d:
                key = (a, b + i)
                x = out.get(key, 0) + c * d
                if x:
                    out[key] = x
                else:
                    out.pop(key, None)
    return IntLaurent2._raw(out)


class LambdaScalar:
    """An element ``N(v, s) / D(s)`` of the localised coefficient ring.

    ``D`` is stored as a dense integer polynomial in ``s`` with nonzero
    constant term and positive leading coefficient, and the fraction is kept
    in lowest terms over Z[s], so equal values have equal representations.

    >>> x = LambdaScalar(IntLaurent2({(0, 2): 1, (0, -2): -1}))
    >>> y = LambdaScalar(IntLaurent2({(0, 1): 1, (0, -1): -1}))
    >>> print(exact_divide(x, y))
    s^-1 + s
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: IntLaurent2 | int = 0, den: Poly = _ONE):
        if isinstance(num, int):
            num = IntLaurent2(num)
        if not den or not any(den):
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = self._normalize(num, _ptrim(den))
        self._hash = None

    @classmethod
    def _raw(cls, num: IntLaurent2, den: Poly):
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        obj._hash = None
        return obj

    @staticmethod
    def _normalize(num: IntLaurent2, den: Poly):
        if num.is_zero():
            return num, _ONE
        low = 0
        while den[low] == 0:
            low += 1
        if low:
            den = den[low:]
            num = num.shift(0, low)
        if den == _ONE:
            return num, den
        g = den
        cols = num.columns()
        split = {}
        for a, col in cols.items():
            split[a] = _column_poly(col)
            g = _pgcd(g, split[a][1])
            if g == _ONE:
                break
        if g != _ONE:
            den = _pdiv_exact(den, g)
            out: Dict[Key, int] = {}
            for a, (lo, p) in split.items():
                for i, c in enumerate(_pdiv_exact(p, g)):
                    if c:
                        out[(a, lo + i)] = c
            num = IntLaurent2._raw(out)
        if den[-1] < 0:
            den = _pneg(den)
            num = -num
        return num, den

    # construction helpers -------------------------------------------------
    @classmethod
    def v(cls, e: int = 1):
        return cls._raw(IntLaurent2.v(e), _ONE)

    @classmethod
    def s(cls, e: int = 1):
        return cls._raw(IntLaurent2.s(e), _ONE)

    @classmethod
    def z(cls):
        return cls._raw(IntLaurent2({(0, 1): 1, (0, -1): -1}), _ONE)

    @classmethod
    def quantum_integer(cls, r: int):
        """``{r} = s^r - s^-r``."""
        return cls._raw(IntLaurent2({(0, r): 1, (0, -r): -1}), _ONE)

    @classmethod
    def delta(cls):
        """Value of a disjoint null-homotopic circle, ``(1/v - v) / z``."""
        return ZForm({(-1, -1): 1, (1, -1): -1}).to_lambda()

    @classmethod
    def coerce(cls, x) -> "LambdaScalar":
        if isinstance(x, LambdaScalar):
            return x
        if isinstance(x, int):
            return cls._raw(IntLaurent2(x), _ONE)
        if isinstance(x, IntLaurent2):
            return cls._raw(x, _ONE)
        if isinstance(x, ZForm):
            return x.to_lambda()
        raise TypeError(f"cannot coerce {type(x).__name__} to LambdaScalar")

    # arithmetic ---------------------------------------------------------------
    def __add__(self, other):
        try:
            other = LambdaScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return LambdaScalar(self.num + other.num, self.den)
        return LambdaScalar(
            _times_poly(self.num, other.den) + _times_poly(other.num, self.den),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return LambdaScalar._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            other = LambdaScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = LambdaScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == _ONE and other.den == _ONE:
            return LambdaScalar._raw(self.num * other.num, _ONE)
        return LambdaScalar(self.num * other.num, _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = LambdaScalar(1)
        for _ in range(e):
            out = out * self
        return out

    def __truediv__(self, other):
        return exact_divide(self, LambdaScalar.coerce(other))

    def __rtruediv__(self, other):
        return exact_divide(LambdaScalar.coerce(other), self)

    def v_support(self) -> Tuple[int, ...]:
        return tuple(sorted({a for a, _ in self.num.terms}))

    def inverse(self) -> "LambdaScalar":
        """Inverse of an element whose numerator involves one power of ``v``."""
        cols = self.num.columns()
        if len(cols) != 1:
            raise NotDivisible("only elements with a single power of v are invertible")
        (a, col), = cols.items()
        low, p = _column_poly(col)
        num = IntLaurent2({(-a, -low + i): c for i, c in enumerate(self.den) if c})
        return LambdaScalar(num, p)

    def __eq__(self, other):
        if isinstance(other, (int, IntLaurent2, ZForm)):
            other = LambdaScalar.coerce(other)
        if not isinstance(other, LambdaScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    # properties & conversions -------------------------------------------------
    def is_integral(self) -> bool:
        """True when the value lies in Z[v^+-1, s^+-1]."""
        return self.den == _ONE

    def to_laurent(self) -> IntLaurent2:
        if not self.is_integral():
            raise NotDivisible(f"{self} has a nontrivial denominator")
        return self.num

    def flip_s(self) -> "LambdaScalar":
        """``s -> -1/s``."""
        deg = len(self.den) - 1
        den = tuple(c * (-1) ** i for i, c in enumerate(self.den))[::-1]
        # D(-1/s) = s^-deg * reversed(D with alternating signs)
        return LambdaScalar(self.num.flip_s().shift(0, deg), den)

    def subs_v(self, n: int) -> "LambdaScalar":
        """Substitute ``v = s^n``."""
        out: Dict[Key, int] = {}
        for (a, b), c in self.num.items():
            k = (0, b + n * a)
            x = out.get(k, 0) + c
            if x:
                out[k] = x
            else:
                out.pop(k, None)
        return LambdaScalar(IntLaurent2._raw(out), self.den)

    def __str__(self):
        if self.den == _ONE:
            return str(self.num)
        den = IntLaurent2({(0, i): c for i, c in enumerate(self.den) if c})
        return f"({self.num}) / ({den})"

    def __repr__(self):
        return f"LambdaScalar({self})"


# ---------------------------------------------------------------------------
# operations


def exact_divide(num: LambdaScalar, den: LambdaScalar) -> LambdaScalar:
    """Return ``q`` with ``q * den == num``.

    Long division in ``v`` over the field of rational functions in ``s``.
    Raises :class:`ZeroDivisionError` for ``den == 0`` and
    :class:`NotDivisible` when the quotient is not a Laurent polynomial in ``v``.
    """
    num = LambdaScalar.coerce(num)
    den = LambdaScalar.coerce(den)
    if den.is_zero():
        raise ZeroDivisionError("division by zero in Lambda")
    if num.is_zero():
        return num
    dcols = den.num.columns()
    if len(dcols) == 1:
        return num * den.inverse()
    dlead = max(dcols)
    lead = LambdaScalar(IntLaurent2({(dlead, b): c for b, c in dcols[dlead].items()}), den.den)
    lead_inv = lead.inverse()
    dlow = min(dcols)
    quotient = LambdaScalar(0)
    rem = num
    # each step removes the top v-power of the remainder
    guard = 0
    while not rem.is_zero():
        rcols = rem.num.columns()
        rtop, rlow = max(rcols), min(rcols)
        if rtop - rlow < dlead - dlow:
            raise NotDivisible("nonzero remainder in exact_divide")
        top = LambdaScalar(IntLaurent2({(rtop, b): c for b, c in rcols[rtop].items()}), rem.den)
        step = top * lead_inv
        quotient = quotient + step
        rem = rem - step * den
        guard += 1
        if guard > 10_000:
            raise NotDivisible("exact_divide did not terminate")
    return quotient


def to_z_form(p) -> ZForm:
    """Rewrite an element of Z[v, s] as a polynomial in ``v`` and ``z = s - 1/s``.

    Each ``v`` column is peeled from its top ``s`` degree downwards.
    """
    if isinstance(p, LambdaScalar):
        p = p.to_laurent()
    if isinstance(p, ZForm):
        return p
    if isinstance(p, int):
        p = IntLaurent2(p)
    out: Dict[Key, int] = {}
    for a, col in p.columns().items():
        col = dict(col)
        while col:
            d = max(col)
            if d < 0:
                raise NotExpressible(f"{p} is not a polynomial in z")
            c = col[d]
            out[(a, d)] = c
            for b, binom in _z_power(d).items():
                x = col.get(b, 0) - c * binom
                if x:
                    col[b] = x
                else:
                    col.pop(b, None)
    return ZForm._raw(out)


def specialize_v(p, n: int) -> Tuple[LambdaScalar, bool]:
    """Substitute ``v = s^n``; returns the reduced value and whether it is in Z[s^+-1]."""
    q = LambdaScalar.coerce(p).subs_v(n)
    return q, q.is_integral()


def mod2_reduce(p: ZForm) -> ZForm:
    """Reduce coefficients modulo 2 (result has coefficients in {0, 1})."""
    return ZForm({k: c % 2 for k, c in p.items()})


def render_table(p: ZForm, step: int | None = None) -> str:
    """Coefficient table: rows are z powers (descending), columns v powers (ascending)."""
    if p.is_zero():
        return "0"
    vs = sorted({a for a, _ in p.terms})
    zs = sorted({k for _, k in p.terms}, reverse=True)
    if step is None:
        g = 0
        for a, b in zip(vs, vs[1:]):
            g = gcd(g, b - a)
        step = g or 1
    cols = list(range(vs[0], vs[-1] + 1, step))
    zrows = list(range(zs[0], zs[-1] - 1, -1))
    zrows = [k for k in zrows if any(p.coeff(a, k) for a in cols)]
    width = max(len(str(c)) for _, c in p.items())
    width = max(width, max(len(str(a)) for a in cols)) + 1
    lines = ["z\\v " + "".join(str(a).rjust(width) for a in cols)]
    for k in zrows:
        cells = "".join((str(p.coeff(a, k)) if p.coeff(a, k) else "").rjust(width) for a in cols)
        lines.append(str(k).rjust(3) + " " + cells)
    return "\n".join(lines)


def poly_to_json(p) -> list:
    """Serialise as a list of ``{v, s|z, c}`` records, sorted by exponents."""
    if isinstance(p, LambdaScalar):
        p = p.to_laurent()
    second = "z" if isinstance(p, ZForm) else "s"
    return [{"v": a, second: b, "c": c} for (a, b), c in sorted(p.items())]


def poly_from_json(records: Iterable[Mapping[str, int]]):
    records = list(records)
    if records and "z" in records[0]:
        return ZForm({(r["v"], r["z"]): r["c"] for r in records})
    return IntLaurent2({(r["v"], r["s"]): r["c"] for r in records})
