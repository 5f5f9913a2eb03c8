"""Sparse Lie algebras over :class:`~qdiffops.qcoeff.QLaurent`.

An algebra is a bundle of pure rules on basis keys.  The generic engine here
extends them bilinearly; the concrete instances (the q-difference operator
algebra, ``gl_inf``, the even-parity subalgebra ``A`` and its affinizations)
are registered in :data:`CATALOGUE`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .qcoeff import ONE, ZERO, QLaurent, as_qlaurent, q_pow

__all__ = [
    "E", "Eij", "G", "Loop", "Gbar", "Central", "C1", "C2", "K1", "K2", "C1BAR",
    "LieElem", "AlgebraSpec", "AlgebraError", "basis", "bracket", "form", "cocycle",
    "check_jacobi", "check_invariance", "check_antisymmetry", "get_algebra", "CATALOGUE",
    "g_to_gl", "gl_to_g", "key_text",
]


class AlgebraError(ValueError):
    """Key of the wrong kind for an algebra, or a missing form/cocycle."""


# ---------------------------------------------------------------------------
# basis keys
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class E:
    k: int
    l: int

    def order(self):
        return (1, self.k, self.l)

    def text(self):
        return f"E[{self.k},{self.l}]"


@dataclass(frozen=True, slots=True)
class Eij:
    m: int
    n: int

    def order(self):
        return (2, self.m, self.n)

    def text(self):
        return f"Eij[{self.m},{self.n}]"


@dataclass(frozen=True, slots=True)
class G:
    a: int
    m: int

    def order(self):
        return (3, self.a, self.m)

    def text(self):
        return f"G[{self.a},{self.m}]"


@dataclass(frozen=True, slots=True)
class Loop:
    inner: object
    i: int

    def order(self):
        return (4, self.i, self.inner.order())

    def text(self):
        return f"({self.inner.text()})@t^{self.i}"


@dataclass(frozen=True, slots=True)
class Gbar:
    """Canonical representative of the class of ``G[a,0] (x) t^m`` in the covariant algebra."""

    a: int
    m: int

    def order(self):
        return (5, self.a, self.m)

    def text(self):
        return f"Gbar[{self.a},{self.m}]"


_CENTRAL_RANK = {"c1": 0, "c2": 1, "K1": 2, "K2": 3, "c1bar": 4}


@dataclass(frozen=True, slots=True)
class Central:
    name: str

    def order(self):
        return (9, _CENTRAL_RANK[self.name], 0)

    def text(self):
        return self.name


C1 = Central("c1")
C2 = Central("c2")
K1 = Central("K1")
K2 = Central("K2")
C1BAR = Central("c1bar")


def key_text(key) -> str:
    return key.text()


def g_to_gl(key: G) -> Eij:
    """``G[a,m] = E_{m+a, m-a}`` inside ``gl_inf``."""
    return Eij(key.m + key.a, key.m - key.a)


def gl_to_g(key: Eij) -> G:
    if (key.m + key.n) % 2:
        raise AlgebraError(f"{key.text()} is not in A: m+n must be even")
    return G((key.m - key.n) // 2, (key.m + key.n) // 2)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


def _drop_forbidden(key) -> bool:
    # E_{0,0} is zero in the q-difference operator algebra
    return type(key) is E and key.k == 0 and key.l == 0


class LieElem:
    """Immutable finite linear combination ``key -> QLaurent``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, c in items:
                if _drop_forbidden(key):
                    continue
                c = as_qlaurent(c)
                if c is NotImplemented:
                    raise TypeError("coefficients must be scalars")
                if c:
                    s = clean.get(key, ZERO) + c
                    if s:
                        clean[key] = s
                    else:
                        clean.pop(key, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def keys(self):
        return self._terms.keys()

    def items(self):
        """Terms in canonical key order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].order())

    def coeff(self, key) -> QLaurent:
        return self._terms.get(key, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, LieElem):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LieElem._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LieElem._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, LieElem):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        s = as_qlaurent(scalar)
        if s is NotImplemented:
            return NotImplemented
        if not s:
            return ZERO_ELEM
        if s == ONE:
            return self
        return LieElem._raw({k: c * s for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, LieElem):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def map_keys(self, fn) -> "LieElem":
        """Linear extension of a key map ``key -> key``."""
        return LieElem((fn(k), c) for k, c in self._terms.items())

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c.pretty()} * {k.text()}" for k, c in self.items())

    def to_json(self) -> list:
        return [[k.text(), c.to_json()] for k, c in self.items()]

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"LieElem({self.to_text()!r})"


ZERO_ELEM = LieElem._raw({})


def basis(key, coeff=1) -> LieElem:
    return LieElem({key: coeff})


# ---------------------------------------------------------------------------
# algebra specs
# ---------------------------------------------------------------------------

Rule = Callable[[object, object], object]


@dataclass(eq=False)
class AlgebraSpec:
    """A named algebra: key predicate plus bracket, form and cocycle rules.

    ``bracket_rule`` returns a :class:`LieElem`; ``form_rule`` and
    ``cocycle_rule`` return scalars.  ``sampler(rng, lo, hi)`` draws a random
    basis key with indices in ``[lo, hi]`` for property tests.
    """

    name: str
    key_ok: Callable[[object], bool]
    bracket_rule: Rule
    is_central: Callable[[object], bool]
    sampler: Callable[[random.Random, int, int], object]
    form_rule: Optional[Rule] = None
    cocycle_rule: Optional[Rule] = None
    _cache: dict = field(default_factory=dict, repr=False)

    def bracket_keys(self, a, b) -> LieElem:
        # write-once memo; rules are pure so concurrent fills agree
        k = (a, b)
        r = self._cache.get(k)
        if r is None:
            r = self.bracket_rule(a, b)
            self._cache[k] = r
        return r

    def check(self, x: LieElem) -> None:
        for k in x.keys():
            if not self.key_ok(k):
                raise AlgebraError(f"key {k.text()} does not belong to algebra {self.name}")

    def sample_key(self, rng: random.Random, lo: int = -4, hi: int = 4):
        return self.sampler(rng, lo, hi)

    def sample_elem(self, rng: random.Random, lo: int = -4, hi: int = 4, max_terms: int = 2) -> LieElem:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            coeff = rng.choice([1, -1, 2, q_pow(1), q_pow(-1) - 2])
            key = self.sample_key(rng, lo, hi)
            terms[key] = as_qlaurent(coeff) + terms.get(key, ZERO)
        return LieElem(terms)


def bracket(A: AlgebraSpec, x: LieElem, y: LieElem) -> LieElem:
    """Bilinear extension of ``A.bracket_rule``."""
    A.check(x)
    A.check(y)
    return _bracket(A, x, y)


def _bracket(A: AlgebraSpec, x: LieElem, y: LieElem) -> LieElem:
    out: dict = {}
    for ka, ca in x._terms.items():
        for kb, cb in y._terms.items():
            r = A.bracket_keys(ka, kb)
            if not r._terms:
                continue
            c = ca * cb
            for k, v in r._terms.items():
                s = out.get(k, ZERO) + v * c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
    return LieElem._raw(out)


def _bilinear(A: AlgebraSpec, rule: Rule, x: LieElem, y: LieElem) -> QLaurent:
    total = ZERO
    for ka, ca in x._terms.items():
        for kb, cb in y._terms.items():
            v = as_qlaurent(rule(ka, kb))
            if v:
                total = total + v * ca * cb
    return total


def form(A: AlgebraSpec, x: LieElem, y: LieElem) -> QLaurent:
    if A.form_rule is None:
        raise AlgebraError(f"algebra {A.name} has no invariant form")
    A.check(x)
    A.check(y)
    return _bilinear(A, A.form_rule, x, y)


def cocycle(A: AlgebraSpec, x: LieElem, y: LieElem) -> QLaurent:
    if A.cocycle_rule is None:
        raise AlgebraError(f"algebra {A.name} has no registered cocycle")
    A.check(x)
    A.check(y)
    return _bilinear(A, A.cocycle_rule, x, y)


def check_antisymmetry(A: AlgebraSpec, x: LieElem, y: LieElem) -> bool:
    return (bracket(A, x, y) + bracket(A, y, x)).is_zero()


def check_jacobi(A: AlgebraSpec, x: LieElem, y: LieElem, z: LieElem) -> bool:
    total = (
        bracket(A, x, bracket(A, y, z))
        + bracket(A, y, bracket(A, z, x))
        + bracket(A, z, bracket(A, x, y))
    )
    return total.is_zero()


def check_invariance(A: AlgebraSpec, x: LieElem, y: LieElem, z: LieElem) -> bool:
    """``<[x,y],z> == <x,[y,z]>``."""
    return form(A, bracket(A, x, y), z) == form(A, x, bracket(A, y, z))


# ---------------------------------------------------------------------------
# structure constants
# ---------------------------------------------------------------------------


def _delta(a, b) -> int:
    return 1 if a == b else 0


def vq_bracket(a, b) -> LieElem:
    if type(a) is not E or type(b) is not E:
        return ZERO_ELEM
    k, l, r, s = a.k, a.l, b.k, b.l
    terms = {}
    e = r * l - s * k
    if e != 0 and not (k + r == 0 and l + s == 0):
        terms[E(k + r, l + s)] = q_pow(e) - q_pow(-e)
    if k == -r and l == -s:
        if k:
            terms[C1] = QLaurent.const(k)
        if l:
            terms[C2] = QLaurent.const(l)
    return LieElem._raw(terms)


def gl_bracket(a: Eij, b: Eij) -> LieElem:
    out = LieElem()
    if a.n == b.m:
        out = out + basis(Eij(a.m, b.n))
    if b.n == a.m:
        out = out - basis(Eij(b.m, a.n))
    return out


def gl_form(a: Eij, b: Eij) -> int:
    return _delta(a.m, b.n) * _delta(a.n, b.m)


def gl_cocycle(a: Eij, b: Eij) -> int:
    if not (a.m == b.n and a.n == b.m):
        return 0
    if a.m <= 0 and a.n >= 1:
        return 1
    if a.m >= 1 and a.n <= 0:
        return -1
    return 0


def a_bracket(x: G, y: G) -> LieElem:
    al, m, be, n = x.a, x.m, y.a, y.m
    out = LieElem()
    if al + be == m - n:
        out = out + basis(G(al + be, al + n))
    if al + be == n - m:
        out = out - basis(G(al + be, n - al))
    return out


def a_form(x: G, y: G) -> int:
    return _delta(x.a + y.a, 0) * _delta(x.m, y.m)


def a_cocycle(x: G, y: G) -> int:
    return x.a * _delta(x.a + y.a, 0) * _delta(x.m, y.m)


# A* = A + C K1 via the cocycle


def astar_bracket(x, y) -> LieElem:
    if type(x) is not G or type(y) is not G:
        return ZERO_ELEM
    out = a_bracket(x, y)
    c = a_cocycle(x, y)
    if c:
        out = out + basis(K1, c)
    return out


def astar_form(x, y) -> int:
    if type(x) is not G or type(y) is not G:
        return 0
    return a_form(x, y)


def a_plus_k1_bracket(x, y) -> LieElem:
    if type(x) is not G or type(y) is not G:
        return ZERO_ELEM
    return a_bracket(x, y)


def _loop_parts(key):
    return (key.inner, key.i) if type(key) is Loop else (None, None)


def _tensor(elem: LieElem, i: int) -> LieElem:
    return LieElem._raw({Loop(k, i): c for k, c in elem._terms.items()})


def hat_a_bracket(x, y) -> LieElem:
    a, i = _loop_parts(x)
    b, j = _loop_parts(y)
    if a is None or b is None:
        return ZERO_ELEM
    out = _tensor(a_bracket(a, b), i + j)
    if i + j == 0 and i:
        f = a_form(a, b)
        if f:
            out = out + basis(K2, i * f)
    return out


def hat_astar_bracket(x, y) -> LieElem:
    a, i = _loop_parts(x)
    b, j = _loop_parts(y)
    if a is None or b is None:
        return ZERO_ELEM
    out = _tensor(astar_bracket(a, b), i + j)
    if i + j == 0 and i:
        f = astar_form(a, b)
        if f:
            out = out + basis(K2, i * f)
    return out


def tilde_a_bracket(x, y) -> LieElem:
    a, i = _loop_parts(x)
    b, j = _loop_parts(y)
    if a is None or b is None:
        return ZERO_ELEM
    out = _tensor(a_bracket(a, b), i + j)
    if i + j + 1 == 0:
        c = a_cocycle(a, b)
        if c:
            out = out + basis(K1, c)
    if i + j == 0 and i:
        f = a_form(a, b)
        if f:
            out = out + basis(K2, i * f)
    return out


def hat_a_cocycle(x, y) -> int:
    """The extension of the ``A`` cocycle to the affine algebra (zero on ``K2``)."""
    a, i = _loop_parts(x)
    b, j = _loop_parts(y)
    if a is None or b is None:
        return 0
    return a_cocycle(a, b) * _delta(i + j + 1, 0)


# ---------------------------------------------------------------------------
# samplers and key predicates
# ---------------------------------------------------------------------------


def _pick(rng, lo, hi):
    return rng.randint(lo, hi)


def _sample_e(rng, lo, hi):
    while True:
        k, l = _pick(rng, lo, hi), _pick(rng, lo, hi)
        if (k, l) != (0, 0):
            return E(k, l)


def _with_central(inner, centrals, weight=0.1):
    def sampler(rng, lo, hi):
        if centrals and rng.random() < weight:
            return rng.choice(centrals)
        return inner(rng, lo, hi)

    return sampler


def _sample_g(rng, lo, hi):
    return G(_pick(rng, lo, hi), _pick(rng, lo, hi))


def _sample_eij(rng, lo, hi):
    return Eij(_pick(rng, lo, hi), _pick(rng, lo, hi))


def _sample_loop_g(rng, lo, hi):
    return Loop(_sample_g(rng, lo, hi), _pick(rng, lo, hi))


def _sample_loop_gstar(rng, lo, hi):
    if rng.random() < 0.1:
        return Loop(K1, _pick(rng, lo, hi))
    return _sample_loop_g(rng, lo, hi)


def _is(*types):
    return lambda k: type(k) in types


def _vq_ok(k):
    return (type(k) is E and (k.k, k.l) != (0, 0)) or k in (C1, C2)


def _loop_of(inner_ok, centrals):
    return lambda k: (type(k) is Loop and inner_ok(k.inner)) or k in centrals


def _never(_):
    return False


def _in(*keys):
    return lambda k: k in keys


def _loop_k1_central(k):
    return k == K2 or (type(k) is Loop and k.inner == K1)


def _build_catalogue() -> dict:
    vq = AlgebraSpec(
        "vq", _vq_ok, vq_bracket, _in(C1, C2), _with_central(_sample_e, [C1, C2])
    )
    gl = AlgebraSpec(
        "gl-inf", _is(Eij), gl_bracket, _never, _sample_eij, gl_form, gl_cocycle
    )
    a = AlgebraSpec("A", _is(G), a_bracket, _never, _sample_g, a_form, a_cocycle)
    astar = AlgebraSpec(
        "A-star",
        lambda k: type(k) is G or k == K1,
        astar_bracket,
        _in(K1),
        _with_central(_sample_g, [K1]),
        astar_form,
    )
    a_plus = AlgebraSpec(
        "A+K1",
        lambda k: type(k) is G or k == K1,
        a_plus_k1_bracket,
        _in(K1),
        _with_central(_sample_g, [K1]),
        astar_form,
    )
    hat_a = AlgebraSpec(
        "hat-A",
        _loop_of(_is(G), (K2,)),
        hat_a_bracket,
        _in(K2),
        _with_central(_sample_loop_g, [K2]),
        cocycle_rule=hat_a_cocycle,
    )
    hat_a_plus = AlgebraSpec(
        "hat-A+K1",
        _loop_of(_is(G), (K1, K2)),
        hat_a_bracket,
        _in(K1, K2),
        _with_central(_sample_loop_g, [K1, K2]),
    )
    hat_astar = AlgebraSpec(
        "hat-A-star",
        _loop_of(lambda k: type(k) is G or k == K1, (K2,)),
        hat_astar_bracket,
        _loop_k1_central,
        _with_central(_sample_loop_gstar, [K2]),
    )
    tilde_a = AlgebraSpec(
        "tilde-A",
        _loop_of(_is(G), (K1, K2)),
        tilde_a_bracket,
        _in(K1, K2),
        _with_central(_sample_loop_g, [K1, K2]),
    )
    return {
        s.name: s
        for s in (vq, gl, a, astar, hat_a, hat_astar, tilde_a, a_plus, hat_a_plus)
    }


CATALOGUE: dict = _build_catalogue()

# primary instances; the two "+K1" direct sums are auxiliary
PRIMARY_ALGEBRAS = ("vq", "gl-inf", "A", "A-star", "hat-A", "hat-A-star", "tilde-A")


def get_algebra(name: str) -> AlgebraSpec:
    if name == "covariant":
        from .central import COVARIANT

        return COVARIANT
    try:
        return CATALOGUE[name]
    except KeyError:
        raise AlgebraError(f"unknown algebra {name!r}; known: {', '.join(CATALOGUE)}, covariant") from None
