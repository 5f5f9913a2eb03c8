"""Exact Laurent polynomials in a formal variable ``q`` over the rationals.

Every scalar in the package is a :class:`QLaurent`.  Because ``q`` is a formal
variable, a nonzero Laurent polynomial is never the zero scalar, so ``q``
behaves as a generic (non root of unity) parameter without any further care.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["QLaurent", "GenericityError", "q_pow", "is_zero", "eval_at", "as_qlaurent", "ZERO", "ONE"]


class GenericityError(ValueError):
    """Raised when ``q`` is specialised to 0, 1 or -1."""


def _norm(c):
    # keep integral coefficients as plain ints; Fraction arithmetic is slow
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class QLaurent:
    """Immutable finitely supported map ``exponent -> rational``.

    Zero coefficients are never stored, so equality is equality of the
    underlying dicts.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                if not isinstance(e, int):
                    raise TypeError(f"exponent must be int, got {e!r}")
                c = _norm(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
                if c:
                    clean[e] = _norm(clean.get(e, 0) + c)
                    if not clean[e]:
                        del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "QLaurent":
        return cls({0: c})

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def constant_term(self):
        return self._terms.get(0, 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __bool__(self):
        return bool(self._terms)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = as_qlaurent(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = _norm(out.get(e, 0) + c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return QLaurent._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return QLaurent._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = as_qlaurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_qlaurent(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_qlaurent(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(b) == 1:
            ((eb, cb),) = b.items()
            return QLaurent._raw({e + eb: _norm(c * cb) for e, c in a.items()})
        if len(a) == 1:
            return other * self
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                s = _norm(out.get(e, 0) + ca * cb)
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return QLaurent._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by nonzero rationals and by monomials is supported
        other = as_qlaurent(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other._terms) != 1:
            raise ZeroDivisionError("division only by nonzero monomials")
        ((e, c),) = other._terms.items()
        return QLaurent._raw({k - e: _norm(Fraction(v) / c) for k, v in self._terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ZeroDivisionError("negative powers only of monomials")
            ((e, c),) = self._terms.items()
            return QLaurent({e * n: Fraction(c) ** n})
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / hashing ----------------------------------------------
    def __eq__(self, other):
        other = as_qlaurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- text / json --------------------------------------------------------
    def to_text(self) -> str:
        """Canonical text, increasing exponents: ``1*q^-1 + -1*q^1``."""
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            parts.append(f"{_frac_text(c)}*q^{e}")
        return " + ".join(parts)

    def to_json(self) -> list:
        out = []
        for e, c in self.items():
            f = Fraction(c)
            out.append([e, f.numerator, f.denominator])
        return out

    @classmethod
    def from_json(cls, data) -> "QLaurent":
        return cls({int(e): Fraction(int(n), int(d)) for e, n, d in data})

    @classmethod
    def parse(cls, text: str) -> "QLaurent":
        """Parse a scalar expression (canonical text or free-form)."""
        from .parsing import parse_scalar

        return parse_scalar(text)

    def pretty(self) -> str:
        """Compact text used inside element and state expressions."""
        if self.is_constant():
            return _frac_text(self.constant_term())
        return "(" + self.to_text() + ")"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"QLaurent({self.to_text()!r})"


def _frac_text(c) -> str:
    f = Fraction(c)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def as_qlaurent(x):
    """Coerce ints and rationals; ``NotImplemented`` for anything else."""
    if isinstance(x, QLaurent):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return QLaurent._raw({0: _norm(Fraction(x))}) if x else ZERO
    return NotImplemented


ZERO = QLaurent._raw({})
ONE = QLaurent._raw({0: 1})

_POW_CACHE: dict[int, QLaurent] = {}


def q_pow(n: int) -> QLaurent:
    """The monomial ``q**n``."""
    m = _POW_CACHE.get(n)
    if m is None:
        m = QLaurent._raw({n: 1})
        if -64 <= n <= 64:
            _POW_CACHE[n] = m
    return m


def is_zero(a) -> bool:
    return as_qlaurent(a).is_zero()


def eval_at(a, r) -> Fraction:
    """Evaluate at ``q = r`` exactly.  ``r`` must avoid 0, 1 and -1."""
    r = Fraction(r)
    if r in (0, 1, -1):
        raise GenericityError(f"q = {r} is not generic")
    total = Fraction(0)
    for e, c in as_qlaurent(a).items():
        total += c * r**e
    return total

