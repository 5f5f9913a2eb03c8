"""Cocycles, trivializing maps, the splitting isomorphisms and the covariant algebra.

The covariant algebra is the quotient of ``hat-A-star`` by
``sigma_r(a) (x) t^m - q^(-m r) a (x) t^m``, where ``sigma_r`` shifts the second
index of ``G``.  Its canonical basis is ``Gbar[a,m]`` (the class of
``G[a,0] (x) t^m``), ``c1bar`` (the class of ``K1 (x) 1``) and ``K2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .liealg import (
    C1, C1BAR, C2, CATALOGUE, K1, K2, ZERO_ELEM, AlgebraSpec, E, G, Gbar, LieElem, Loop,
    _bilinear, _bracket, a_cocycle, basis, hat_a_cocycle, hat_astar_bracket,
)
from .qcoeff import ZERO, QLaurent, as_qlaurent, q_pow

__all__ = [
    "Cocycle", "TrivializingMap", "PSI_A", "PSI_GL", "PSI2", "MU", "MU2",
    "check_cocycle", "check_trivial", "extension_iso", "covariant_reduce",
    "covariant_bracket", "vq_covariant_iso", "COVARIANT", "lift_covariant",
]


@dataclass(frozen=True)
class Cocycle:
    rule: Callable[[object, object], object]
    home: AlgebraSpec

    def __call__(self, x: LieElem, y: LieElem) -> QLaurent:
        return _bilinear(self.home, self.rule, x, y)


@dataclass(frozen=True)
class TrivializingMap:
    """A linear functional given on basis keys."""

    mu: Callable[[object], object]
    home: AlgebraSpec

    def __call__(self, x: LieElem) -> QLaurent:
        total = ZERO
        for k, c in x.terms.items():
            v = as_qlaurent(self.mu(k))
            if v:
                total = total + v * c
        return total


def _mu_a(key) -> Fraction:
    if type(key) is G and key.a == 0:
        return Fraction(key.m, 2)
    return Fraction(0)


def _mu2(key) -> Fraction:
    if type(key) is Loop and type(key.inner) is G and key.i == -1:
        return _mu_a(key.inner)
    return Fraction(0)


PSI_A = Cocycle(a_cocycle, CATALOGUE["A"])
PSI_GL = Cocycle(CATALOGUE["gl-inf"].cocycle_rule, CATALOGUE["gl-inf"])
PSI2 = Cocycle(hat_a_cocycle, CATALOGUE["hat-A"])
MU = TrivializingMap(_mu_a, CATALOGUE["A"])
MU2 = TrivializingMap(_mu2, CATALOGUE["hat-A"])


def check_cocycle(psi: Cocycle, x: LieElem, y: LieElem, z: LieElem) -> bool:
    """Skew-symmetry on the three pairs and the cyclic identity."""
    A = psi.home
    for a in (x, y, z):
        A.check(a)
    for a, b in ((x, y), (y, z), (z, x), (x, x)):
        if psi(a, b) + psi(b, a):
            return False
    cyc = (
        psi(x, _bracket(A, y, z))
        + psi(y, _bracket(A, z, x))
        + psi(z, _bracket(A, x, y))
    )
    return cyc.is_zero()


def check_trivial(psi: Cocycle, mu: TrivializingMap, x: LieElem, y: LieElem) -> bool:
    """``psi(x, y) == mu([x, y])``."""
    if psi.home is not mu.home:
        raise ValueError("cocycle and trivializing map live on different algebras")
    return psi(x, y) == mu(_bracket(psi.home, x, y))


# ---------------------------------------------------------------------------
# splitting isomorphisms
# ---------------------------------------------------------------------------

_ISO = {
    # name: (direct-sum algebra, extended algebra, functional)
    "f": ("A+K1", "A-star", MU),
    "f2": ("hat-A+K1", "tilde-A", MU2),
}


def extension_iso(kind: str, direction: str, x: LieElem) -> LieElem:
    """``(a, lam K1) -> a + (mu(a) + lam) K1`` and its inverse.

    ``kind`` is ``"f"`` (``A + C K1 -> A-star``) or ``"f2"``
    (``hat-A + C K1 -> tilde-A``); ``direction`` is ``"forward"`` or ``"inverse"``.
    """
    src, dst, mu = _ISO[kind]
    if direction == "inverse":
        src, dst = dst, src
        sign = -1
    elif direction == "forward":
        sign = 1
    else:
        raise ValueError(f"direction must be forward or inverse, not {direction!r}")
    CATALOGUE[src].check(x)
    lam = x.coeff(K1)
    a = x - basis(K1, lam) if lam else x
    return a + basis(K1, lam + sign * mu(a))


def iso_algebras(kind: str) -> tuple[AlgebraSpec, AlgebraSpec]:
    src, dst, _ = _ISO[kind]
    return CATALOGUE[src], CATALOGUE[dst]


# ---------------------------------------------------------------------------
# covariant algebra
# ---------------------------------------------------------------------------


def _reduce_key(key) -> LieElem:
    if key == K2:
        return basis(K2)
    if type(key) is Loop:
        a, m = key.inner, key.i
        if a == K1:
            # (1 - q^(-m r)) K1 (x) t^m lies in the quotient subspace; q generic
            return basis(C1BAR) if m == 0 else ZERO_ELEM
        if type(a) is G:
            return LieElem._raw({Gbar(a.a, m): q_pow(-a.m * m)})
    raise ValueError(f"cannot reduce key {key.text()}: not in hat-A-star")


def covariant_reduce(x: LieElem) -> LieElem:
    """Canonical form of the image of ``x`` (an element of ``hat-A-star``)."""
    out = ZERO_ELEM
    for k, c in x.terms.items():
        if type(k) is Gbar or k == C1BAR:
            out = out + basis(k, c)
        else:
            out = out + _reduce_key(k) * c
    return out


def lift_covariant(key):
    """Representative in ``hat-A-star`` of a canonical covariant key."""
    if type(key) is Gbar:
        return Loop(G(key.a, 0), key.m)
    if key == C1BAR:
        return Loop(K1, 0)
    if key == K2:
        return K2
    raise ValueError(f"{key.text()} is not a covariant key")


def _sigma(key, r: int):
    inner = key.inner
    if type(inner) is G:
        return Loop(G(inner.a, inner.m + r), key.i)
    return key


def shift_candidates(x, y) -> tuple[int, ...]:
    """All ``r`` with ``[sigma_r(x), y] != 0`` in ``hat-A-star``.

    For ``x = G[a,p] (x) t^m`` and ``y = G[b,s] (x) t^n`` the bracket of
    ``G[a,p+r]`` with ``G[b,s]`` is nonzero only if ``a+b = p+r-s``,
    ``a+b = s-p-r`` or (cocycle / form term) ``p+r = s``.
    """
    if type(x) is not Loop or type(y) is not Loop:
        return ()
    a, b = x.inner, y.inner
    if type(a) is not G or type(b) is not G:
        return ()
    al, p, be, s = a.a, a.m, b.a, b.m
    return tuple(sorted({al + be + s - p, s - p - al - be, s - p}))


def gamma_bracket_keys(x, y) -> LieElem:
    """Bracket of two ``hat-A-star`` keys in the covariant algebra (defining sum)."""
    out = ZERO_ELEM
    if type(x) is not Loop:
        return out
    m = x.i
    for r in shift_candidates(x, y):
        term = hat_astar_bracket(_sigma(x, r), y)
        if term:
            out = out + covariant_reduce(term) * q_pow(m * r)
    return out


def covariant_bracket_closed_keys(x, y) -> LieElem:
    """Closed form on canonical keys ``Gbar[a,m]``, ``Gbar[b,n]``."""
    if type(x) is not Gbar or type(y) is not Gbar:
        return ZERO_ELEM
    al, m, be, n = x.a, x.m, y.a, y.m
    terms = {}
    e = m * be - n * al
    if e:
        terms[Gbar(al + be, m + n)] = q_pow(e) - q_pow(-e)
    if al + be == 0 and m + n == 0:
        if al:
            terms[C1BAR] = QLaurent.const(al)
        if m:
            terms[K2] = QLaurent.const(m)
    return LieElem._raw(terms)


def _covariant_sum_keys(x, y) -> LieElem:
    return gamma_bracket_keys(lift_covariant(x), lift_covariant(y))


def covariant_bracket(x: LieElem, y: LieElem, method: str = "sum") -> LieElem:
    """Bracket in the covariant algebra.

    ``method="sum"`` evaluates the defining sum over shifts ``r`` (only the
    shifts solving the Kronecker constraints contribute); ``method="closed"``
    uses the closed formula.  Both must agree.
    """
    COVARIANT.check(x)
    COVARIANT.check(y)
    rule = _covariant_sum_keys if method == "sum" else covariant_bracket_closed_keys
    out = ZERO_ELEM
    for ka, ca in x.terms.items():
        for kb, cb in y.terms.items():
            r = rule(ka, kb)
            if r:
                out = out + r * (ca * cb)
    return out


def _theta_key(key):
    if type(key) is E:
        return Gbar(key.k, key.l)
    if key == C1:
        return C1BAR
    if key == C2:
        return K2
    raise ValueError(f"{key.text()} is not in vq")


def vq_covariant_iso(x: LieElem) -> LieElem:
    """``E[a,m] -> Gbar[a,m]``, ``c1 -> c1bar``, ``c2 -> K2``."""
    CATALOGUE["vq"].check(x)
    return x.map_keys(_theta_key)


def _sample_cov(rng, lo, hi):
    u = rng.random()
    if u < 0.05:
        return C1BAR
    if u < 0.1:
        return K2
    return Gbar(rng.randint(lo, hi), rng.randint(lo, hi))


COVARIANT = AlgebraSpec(
    "covariant",
    lambda k: type(k) is Gbar or k in (C1BAR, K2),
    _covariant_sum_keys,
    lambda k: k in (C1BAR, K2),
    _sample_cov,
)
