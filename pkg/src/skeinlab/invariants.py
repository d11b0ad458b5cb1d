"""Satellite invariants and the (1,1)-tangle invariant ``a_K(lambda, mu)``.

Two independent computations of ``a_K``:

* satellite quotient: ``P(K * Q) / P(U * Q)`` with ``Q = Q_{lambda,mu}``,
  evaluating every decorated satellite diagram with the skein engine;
* eigenvalue sum: ``sum c_{pi,rho}(K) c(b_pi, lambda) c(b*_rho, mu)`` over the
  k = 0 part of the (n, p) cable of ``K`` in H_{n,p}.

Homfly values of satellites are normalised by ``P(empty) = 1``; the quotient
does not depend on that choice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional

from .annulus import AnnulusElement, decorated_value, q_lambda_mu
from .diagram import FramedTangleKnot, Partition, census
from .hecke import perm_contraction, tangle_k0_coeffs
from .ring import (
    IntLaurent2,
    LambdaScalar,
    NotDivisible,
    NotExpressible,
    ZForm,
    exact_divide,
    poly_to_json,
    render_table,
    to_z_form,
)

__all__ = [
    "InvariantReport",
    "SymmetryReport",
    "IntegralityError",
    "satellite_homfly",
    "a_invariant",
    "a_invariant_routeB",
    "check_symmetries",
    "specialize",
    "suite_pairs",
]


class IntegralityError(ArithmeticError):
    """``P(K*Q) / P(U*Q)`` is not a Laurent polynomial in v and s."""


def satellite_homfly(knot: FramedTangleKnot, q: AnnulusElement, audits: list | None = None) -> LambdaScalar:
    """``P(K * Q)`` with the empty diagram normalised to 1."""
    return decorated_value(knot, q, audits=audits)


@dataclass
class InvariantReport:
    knot: str
    framing: int
    lam: Partition
    mu: Partition
    a: IntLaurent2
    zform: Optional[ZForm]
    route_a: LambdaScalar
    route_b: Optional[LambdaScalar] = None
    integral: bool = True
    lemma1: bool = True
    routes_agree: Optional[bool] = None
    symmetries: Dict[str, bool] = field(default_factory=dict)
    specializations: Dict[int, LambdaScalar] = field(default_factory=dict)

    def table(self) -> str:
        if self.zform is None:
            return str(self.a)
        return render_table(self.zform)

    def to_dict(self) -> dict:
        out = {
            "knot": self.knot,
            "framing": self.framing,
            "lambda": list(self.lam),
            "mu": list(self.mu),
            "a": poly_to_json(self.a),
            "zform": poly_to_json(self.zform) if self.zform is not None else None,
            "checks": {
                "integral": self.integral,
                "lemma1": self.lemma1,
                "routes_agree": self.routes_agree,
                **{f"symmetry:{k}": v for k, v in sorted(self.symmetries.items())},
            },
        }
        if self.specializations:
            out["specializations"] = {
                str(n): poly_to_json(val.to_laurent()) for n, val in sorted(self.specializations.items())
            }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@lru_cache(maxsize=None)
def _route_a(knot: FramedTangleKnot, lam: Partition, mu: Partition):
    q = q_lambda_mu(lam, mu)
    audits: list = []
    num = satellite_homfly(knot, q, audits)
    den = satellite_homfly(census("unknot"), q, audits)
    return num, den, all(audits)


def a_invariant(
    knot: FramedTangleKnot,
    lam: Partition,
    mu: Partition = Partition(),
    route_b: bool = False,
) -> InvariantReport:
    """``a_K(lambda, mu) = P(K * Q) / P(U * Q)``; raises :class:`IntegralityError` if not integral."""
    lam, mu = Partition(lam), Partition(mu)
    num, den, lemma1 = _route_a(knot, lam, mu)
    try:
        a = exact_divide(num, den)
    except NotDivisible as exc:
        raise IntegralityError(f"P(K*Q)/P(U*Q) is not a polynomial in v for {knot.name}") from exc
    if not a.is_integral():
        raise IntegralityError(f"a_{knot.name}{tuple(lam), tuple(mu)} = {a} has denominators")
    laurent = a.to_laurent()
    try:
        zf = to_z_form(laurent)
    except NotExpressible:
        zf = None
    report = InvariantReport(knot.name, knot.framing, lam, mu, laurent, zf, a, lemma1=lemma1)
    if route_b:
        report.route_b = a_invariant_routeB(knot, lam, mu)
        report.routes_agree = report.route_b == a
    return report


@lru_cache(maxsize=None)
def a_invariant_routeB(knot: FramedTangleKnot, lam: Partition, mu: Partition = Partition()) -> LambdaScalar:
    """``sum_{pi, rho} c_{pi,rho}(K) c(b_pi, lambda) c(b*_rho, mu)``."""
    lam, mu = Partition(lam), Partition(mu)
    n, p = lam.size, mu.size
    if n + p == 0:
        return LambdaScalar(1)
    total = LambdaScalar(0)
    for (pi, rho), c in sorted(tangle_k0_coeffs(knot, n, p).items()):
        term = c.to_lambda()
        if n:
            term = term * perm_contraction(pi, lam)
        if p:
            term = term * perm_contraction(rho, mu, down=True)
        total = total + term
    return total


@dataclass
class SymmetryReport:
    knot: str
    lam: Partition
    mu: Partition
    swap: bool
    conjugate: bool

    def __bool__(self):
        return self.swap and self.conjugate


def check_symmetries(knot: FramedTangleKnot, lam: Partition, mu: Partition = Partition()) -> SymmetryReport:
    """``a(mu, lambda) == a(lambda, mu)`` and ``a(lambda', mu') == a(lambda, mu)`` with ``s -> -1/s``."""
    lam, mu = Partition(lam), Partition(mu)
    a = a_invariant(knot, lam, mu).a
    swapped = a_invariant(knot, mu, lam).a
    conj = a_invariant(knot, lam.conjugate(), mu.conjugate()).a
    return SymmetryReport(knot.name, lam, mu, swapped == a, conj == a.flip_s())


def specialize(report: InvariantReport, n: int) -> LambdaScalar:
    """Substitute ``v = s^n`` into ``a``; the result is recorded on the report."""
    val = LambdaScalar(report.a).subs_v(n)
    report.specializations[n] = val
    return val


def suite_pairs(max_weight: int = 2) -> List[tuple]:
    """The ``(lambda, mu)`` pairs with ``|lambda| + |mu| <= max_weight``, excluding (empty, empty)."""
    out = []
    for wl in range(max_weight + 1):
        for wm in range(max_weight + 1 - wl):
            if wl + wm == 0:
                continue
            for lam in Partition.all_of(wl):
                for mu in Partition.all_of(wm):
                    out.append((lam, mu))
    return out
