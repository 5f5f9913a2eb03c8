"""Two-variable formal distributions on finite windows.

A :class:`DistWindow` stores the coefficients of ``x1**a * x2**b`` for ``(a, b)``
in a rectangle of exponents.  Entries inside the rectangle are exact; the
rectangle shrinks when an operation would need coefficients from outside it.

Generating functions are one-variable series ``sum_e f_e x**e`` whose
coefficients are computed on demand (:class:`GenFun`).  Products of a
generating function in ``x2`` with a delta function are exact everywhere
because each ``x1``-row of a delta function has a single term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .liealg import C1, C2, K1, K2, ZERO_ELEM, E, G, LieElem, Loop, _bracket, a_cocycle, a_form, basis, get_algebra
from .qcoeff import ONE, ZERO, QLaurent, as_qlaurent, q_pow

__all__ = [
    "GenFun", "Delta", "DistWindow", "WindowError", "delta", "series_times_delta",
    "commutator_window", "check_gf_identity", "check_quasi_locality", "IDENTITIES",
    "e_family", "ehat", "etilde", "gloop", "loop_genfun",
]

VARIANTS = ("plain", "x1inv_prefixed", "x2_ddx2", "ddx2_x1inv")


class WindowError(ValueError):
    """Window empty, or too small for the requested operation."""


def _range(w) -> tuple[int, int]:
    lo, hi = w
    return int(lo), int(hi)


# ---------------------------------------------------------------------------
# generating functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GenFun:
    """``sum_e coeff(e) x**e`` with ``x`` optionally rescaled to ``q**scale x``."""

    family: str
    params: tuple
    algebra: str
    base: Callable[[int], LieElem] = field(compare=False)
    scale: int = 0

    def coeff(self, e: int) -> LieElem:
        c = self.base(e)
        if self.scale and e and c:
            return c * q_pow(self.scale * e)
        return c

    def scaled(self, s: int) -> "GenFun":
        """The series in ``q**s x``."""
        return GenFun(self.family, self.params, self.algebra, self.base, self.scale + s)


def e_family(k: int) -> GenFun:
    """``E_k(x) = sum_l E[k,l] x**(-l-1)``."""
    return GenFun("E", (k,), "vq", lambda e: basis(E(k, -e - 1)))


def ehat(k: int) -> GenFun:
    """``x E_k(x) = sum_l E[k,l] x**(-l)``."""
    return GenFun("Ehat", (k,), "vq", lambda e: basis(E(k, -e)))


def etilde(k: int, m: int) -> GenFun:
    """``Ehat_k(q**m x)``; the coefficient of ``x**(-l)`` is ``q**(-m l) E[k,l]``."""
    g = ehat(k).scaled(m)
    return GenFun("Etilde", (k, m), "vq", g.base, g.scale)


def gloop(a: int, m: int) -> GenFun:
    """``G[a,m](x) = sum_i (G[a,m] (x) t^i) x**(-i-1)`` in ``tilde-A``."""
    return GenFun("Gloop", (a, m), "tilde-A", lambda e: basis(Loop(G(a, m), -e - 1)))


def loop_genfun(elem: LieElem) -> GenFun:
    """Generating function of ``elem (x) t^i`` for an element of ``A``."""
    items = elem.terms

    def base(e):
        return LieElem._raw({Loop(k, -e - 1): c for k, c in items.items()})

    return GenFun("loop", (elem.to_text(),), "tilde-A", base)


# ---------------------------------------------------------------------------
# delta functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Delta:
    """``coef * x1**s1 * x2**s2 * D(delta(scale * x2 / x1))``.

    ``scale`` is a monomial ``c * q**e`` and ``D`` is one of
    ``plain`` (identity), ``x1inv_prefixed`` (``x1**-1``), ``x2_ddx2``
    (``x2 d/dx2``) or ``ddx2_x1inv`` (``d/dx2 x1**-1``).
    """

    scale_exp: int = 0
    variant: str = "plain"
    scale_coef: Fraction = Fraction(1)
    shift: tuple = (0, 0)

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown delta variant {self.variant!r}")
        if not self.scale_coef:
            raise ValueError("delta scale must be nonzero")

    def row(self, a: int) -> list[tuple[int, QLaurent]]:
        """Terms ``(b, coefficient)`` of the ``x1**a`` row (at most one)."""
        a0 = a - self.shift[0]
        if self.variant in ("plain", "x2_ddx2"):
            n = -a0
            b0 = n
        else:
            n = -a0 - 1
            b0 = n - 1 if self.variant == "ddx2_x1inv" else n
        c = QLaurent({self.scale_exp * n: Fraction(self.scale_coef) ** n})
        if self.variant in ("x2_ddx2", "ddx2_x1inv"):
            c = c * n
        if not c:
            return []
        return [(b0 + self.shift[1], c)]

    def coeff(self, a: int, b: int) -> QLaurent:
        for bb, c in self.row(a):
            if bb == b:
                return c
        return ZERO

    def times_monomial(self, e1: int, e2: int) -> "Delta":
        return Delta(self.scale_exp, self.variant, self.scale_coef, (self.shift[0] + e1, self.shift[1] + e2))


@dataclass
class DistWindow:
    """Coefficients of ``x1**a x2**b`` on the rectangle ``x1_range x x2_range``.

    Missing entries inside the rectangle are zero.  Values are scalars or
    :class:`LieElem` (or anything supporting ``+`` and scalar ``*``).
    """

    entries: dict
    x1_range: tuple
    x2_range: tuple

    def __post_init__(self):
        self.x1_range = _range(self.x1_range)
        self.x2_range = _range(self.x2_range)
        for a, b in self.entries:
            if not self.contains(a, b):
                raise WindowError(f"entry ({a},{b}) outside window")

    @classmethod
    def build(cls, fn, x1_range, x2_range) -> "DistWindow":
        x1_range, x2_range = _range(x1_range), _range(x2_range)
        if x1_range[0] > x1_range[1] or x2_range[0] > x2_range[1]:
            raise WindowError("empty window")
        out = {}
        for a in range(x1_range[0], x1_range[1] + 1):
            for b in range(x2_range[0], x2_range[1] + 1):
                v = fn(a, b)
                if v:
                    out[(a, b)] = v
        return cls(out, x1_range, x2_range)

    def contains(self, a: int, b: int) -> bool:
        return self.x1_range[0] <= a <= self.x1_range[1] and self.x2_range[0] <= b <= self.x2_range[1]

    def is_empty_window(self) -> bool:
        return self.x1_range[0] > self.x1_range[1] or self.x2_range[0] > self.x2_range[1]

    def modes(self):
        for a in range(self.x1_range[0], self.x1_range[1] + 1):
            for b in range(self.x2_range[0], self.x2_range[1] + 1):
                yield a, b

    def get(self, a: int, b: int, default=0):
        if not self.contains(a, b):
            raise WindowError(f"({a},{b}) is outside the valid window")
        return self.entries.get((a, b), default)

    def _intersect(self, other):
        x1 = (max(self.x1_range[0], other.x1_range[0]), min(self.x1_range[1], other.x1_range[1]))
        x2 = (max(self.x2_range[0], other.x2_range[0]), min(self.x2_range[1], other.x2_range[1]))
        return x1, x2

    def __add__(self, other: "DistWindow") -> "DistWindow":
        x1, x2 = self._intersect(other)
        out = {}
        for src in (self.entries, other.entries):
            for (a, b), v in src.items():
                if x1[0] <= a <= x1[1] and x2[0] <= b <= x2[1]:
                    s = out[(a, b)] + v if (a, b) in out else v
                    if s:
                        out[(a, b)] = s
                    else:
                        out.pop((a, b), None)
        return DistWindow(out, x1, x2)

    def __neg__(self):
        return DistWindow({k: -v for k, v in self.entries.items()}, self.x1_range, self.x2_range)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DistWindow":
        c = as_qlaurent(c)
        if not c:
            return DistWindow({}, self.x1_range, self.x2_range)
        return DistWindow({k: v * c for k, v in self.entries.items()}, self.x1_range, self.x2_range)

    def times(self, elem: LieElem) -> "DistWindow":
        """Scalar-valued entries times a fixed element."""
        return DistWindow({k: elem * v for k, v in self.entries.items()}, self.x1_range, self.x2_range)

    def mul_monomial(self, e1: int, e2: int, c=1) -> "DistWindow":
        c = as_qlaurent(c)
        out = {(a + e1, b + e2): v * c for (a, b), v in self.entries.items()}
        out = {k: v for k, v in out.items() if v}
        return DistWindow(
            out,
            (self.x1_range[0] + e1, self.x1_range[1] + e1),
            (self.x2_range[0] + e2, self.x2_range[1] + e2),
        )

    def x2_ddx2(self) -> "DistWindow":
        out = {(a, b): v * b for (a, b), v in self.entries.items() if b}
        return DistWindow(out, self.x1_range, self.x2_range)

    def ddx2(self) -> "DistWindow":
        out = {(a, b - 1): v * b for (a, b), v in self.entries.items() if b}
        return DistWindow(out, self.x1_range, (self.x2_range[0] - 1, self.x2_range[1] - 1))

    def mul_poly(self, poly: dict) -> "DistWindow":
        """Multiply by ``sum p[(e1, e2)] x1**e1 x2**e2``; the valid window shrinks."""
        if not poly:
            raise ValueError("empty polynomial")
        e1s = [e for e, _ in poly]
        e2s = [e for _, e in poly]
        x1 = (self.x1_range[0] + max(e1s), self.x1_range[1] + min(e1s))
        x2 = (self.x2_range[0] + max(e2s), self.x2_range[1] + min(e2s))
        if x1[0] > x1[1] or x2[0] > x2[1]:
            raise WindowError("window too small for polynomial multiplication")
        out = {}
        for a in range(x1[0], x1[1] + 1):
            for b in range(x2[0], x2[1] + 1):
                acc = None
                for (e1, e2), p in poly.items():
                    v = self.entries.get((a - e1, b - e2))
                    if v:
                        t = v * p
                        acc = t if acc is None else acc + t
                if acc:
                    out[(a, b)] = acc
        return DistWindow(out, x1, x2)

    def restrict(self, x1_range, x2_range) -> "DistWindow":
        x1, x2 = self._intersect(DistWindow({}, x1_range, x2_range))
        return DistWindow(
            {k: v for k, v in self.entries.items() if x1[0] <= k[0] <= x1[1] and x2[0] <= k[1] <= x2[1]}, x1, x2
        )

    def mismatches(self, other: "DistWindow") -> list[tuple[int, int]]:
        x1, x2 = self._intersect(other)
        bad = []
        for a in range(x1[0], x1[1] + 1):
            for b in range(x2[0], x2[1] + 1):
                u = self.entries.get((a, b), 0)
                v = other.entries.get((a, b), 0)
                if u != v and not (not u and not v):
                    bad.append((a, b))
        return bad


def delta(scale=1, variant: str = "plain", window=(-5, 5), x2_window=None) -> DistWindow:
    """Scalar delta function ``delta(scale x2/x1)`` (with variant) on a window.

    ``scale`` is a monomial ``c * q**e`` (a :class:`QLaurent` or a rational).
    """
    s = as_qlaurent(scale)
    if s is NotImplemented or not s.is_monomial():
        raise ValueError("delta scale must be a nonzero monomial c*q^e")
    ((e, c),) = s.items()
    d = Delta(e, variant, Fraction(c))
    return delta_window(d, window, x2_window)


def delta_window(d: Delta, window, x2_window=None) -> DistWindow:
    x2_window = window if x2_window is None else x2_window
    return DistWindow.build(d.coeff, window, x2_window)


def series_times_delta(g: GenFun, d: Delta, window, x2_window=None, coef=1) -> DistWindow:
    """Exact ``coef * g(x2) * d`` on the window."""
    x2_window = window if x2_window is None else x2_window
    c = as_qlaurent(coef)

    def entry(a, b):
        acc = ZERO_ELEM
        for bb, dc in d.row(a):
            acc = acc + g.coeff(b - bb) * (dc * c)
        return acc

    return DistWindow.build(entry, window, x2_window)


def commutator_window(A, f: GenFun, g: GenFun, window, x2_window=None) -> DistWindow:
    """Entry ``(a, b)`` is ``[f_a, g_b]`` computed with ``A``'s bracket."""
    if isinstance(A, str):
        A = get_algebra(A)
    if f.algebra != A.name or g.algebra != A.name:
        raise ValueError(f"generating functions live in {f.algebra}/{g.algebra}, not {A.name}")
    x2_window = window if x2_window is None else x2_window
    return DistWindow.build(lambda a, b: _bracket(A, f.coeff(a), g.coeff(b)), window, x2_window)


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------


def _kd(a, b) -> int:
    return 1 if a == b else 0


def _central_term(d: Delta, key, coef, window) -> DistWindow:
    return delta_window(d, window).scale(coef).times(basis(key))


def _eq25(params, window):
    al, m, be, n = params
    A = get_algebra("tilde-A")
    a, b = basis(G(al, m)), basis(G(be, n))
    lhs = commutator_window(A, loop_genfun(a), loop_genfun(b), window)
    ab = _bracket(get_algebra("A"), a, b)
    rhs = series_times_delta(loop_genfun(ab), Delta(0, "x1inv_prefixed"), window)
    rhs = rhs + _central_term(Delta(0, "x1inv_prefixed"), K1, a_cocycle(G(al, m), G(be, n)), window)
    rhs = rhs + _central_term(Delta(0, "ddx2_x1inv"), K2, a_form(G(al, m), G(be, n)), window)
    return lhs, rhs


def _eq38(params, window):
    k, r = params
    lhs = commutator_window("vq", e_family(k), e_family(r), window)
    rhs = series_times_delta(e_family(k + r).scaled(k), Delta(k + r, "x1inv_prefixed"), window, coef=q_pow(k))
    rhs = rhs - series_times_delta(
        e_family(k + r).scaled(-k), Delta(-k - r, "x1inv_prefixed"), window, coef=q_pow(-k)
    )
    dd = _kd(k, -r)
    rhs = rhs + _central_term(Delta(0, "x1inv_prefixed").times_monomial(0, -1), C1, k * dd, window)
    rhs = rhs + _central_term(Delta(0, "ddx2_x1inv"), C2, dd, window)
    return lhs, rhs


def _eq42(params, window):
    k, r = params
    lhs = commutator_window("vq", ehat(k), ehat(r), window)
    rhs = series_times_delta(ehat(k + r).scaled(k), Delta(k + r), window)
    rhs = rhs - series_times_delta(ehat(k + r).scaled(-k), Delta(-k - r), window)
    dd = _kd(k, -r)
    rhs = rhs + _central_term(Delta(0), C1, k * dd, window)
    rhs = rhs + _central_term(Delta(0, "x2_ddx2"), C2, dd, window)
    return lhs, rhs


def _eq43(params, window):
    k, m, r, n = params
    lhs = commutator_window("vq", etilde(k, m), etilde(r, n), window)
    # delta arguments carry x2: delta(q^(-m+n+k+r) x2 / x1) etc.
    rhs = series_times_delta(etilde(k + r, n + k), Delta(-m + n + k + r), window)
    rhs = rhs - series_times_delta(etilde(k + r, n - k), Delta(-m + n - k - r), window)
    dd = _kd(k, -r)
    rhs = rhs + _central_term(Delta(n - m), C1, k * dd, window)
    rhs = rhs + _central_term(Delta(n - m, "x2_ddx2"), C2, dd, window)
    return lhs, rhs


def _eq44(params, window):
    k, m, r, n = params
    lhs = commutator_window("tilde-A", gloop(k, m), gloop(r, n), window)
    d = Delta(0, "x1inv_prefixed")
    rhs = series_times_delta(gloop(k + r, n + k), d, window, coef=_kd(-m + n + k + r, 0))
    rhs = rhs - series_times_delta(gloop(k + r, n - k), d, window, coef=_kd(-m + n - k - r, 0))
    dd = _kd(k, -r) * _kd(n, m)
    rhs = rhs + _central_term(d, K1, k * dd, window)
    rhs = rhs + _central_term(Delta(0, "ddx2_x1inv"), K2, dd, window)
    return lhs, rhs


IDENTITIES = {
    "eq2.5": (_eq25, ("a", "m", "b", "n")),
    "eq3.8": (_eq38, ("k", "r")),
    "eq4.2": (_eq42, ("k", "r")),
    "eq4.3": (_eq43, ("k", "m", "r", "n")),
    "eq4.4": (_eq44, ("k", "m", "r", "n")),
}


def identity_sides(identity: str, params, window=(-5, 5)) -> tuple[DistWindow, DistWindow]:
    try:
        builder, names = IDENTITIES[identity]
    except KeyError:
        raise ValueError(f"unknown identity {identity!r}; known: {', '.join(IDENTITIES)}") from None
    if isinstance(params, dict):
        params = tuple(int(params[n]) for n in names)
    params = tuple(params)
    if len(params) != len(names):
        raise ValueError(f"{identity} takes parameters {','.join(names)}")
    lo, hi = _range(window)
    if lo > hi:
        raise WindowError("window too small to contain any mode")
    return builder(params, (lo, hi))


def check_gf_identity(identity: str, params, window=(-5, 5)) -> dict:
    """Compare both sides of a generating-function identity mode by mode."""
    lhs, rhs = identity_sides(identity, params, window)
    names = IDENTITIES[identity][1]
    if isinstance(params, dict):
        params = tuple(int(params[n]) for n in names)
    bad = lhs.mismatches(rhs)
    return {
        "identity": identity,
        "params": dict(zip(names, params)),
        "window": list(_range(window)),
        "checked": (lhs.x1_range[1] - lhs.x1_range[0] + 1) * (lhs.x2_range[1] - lhs.x2_range[0] + 1),
        "mismatches": [list(m) for m in bad],
    }


# ---------------------------------------------------------------------------
# quasi-locality
# ---------------------------------------------------------------------------


def _poly_mul(p: dict, r: dict) -> dict:
    out: dict = {}
    for (a1, a2), u in p.items():
        for (b1, b2), v in r.items():
            k = (a1 + b1, a2 + b2)
            s = out.get(k, ZERO) + u * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def quasi_locality_poly(k: int, m: int, r: int, n: int) -> dict:
    """``(x1 - q^(-m+n+k+r) x2)(x1 - q^(-m+n-k-r) x2)(x1 - q^(n-m) x2)^2``."""
    poly = {(0, 0): ONE}
    for e in (-m + n + k + r, -m + n - k - r, n - m, n - m):
        poly = _poly_mul(poly, {(1, 0): ONE, (0, 1): -q_pow(e)})
    return poly


def check_quasi_locality(k: int, m: int, r: int, n: int, spec, states, window=(-5, 5)) -> dict:
    """Check that the quartic polynomial kills the module commutator.

    For every state ``w`` and modes ``(a, b)`` the commutator
    ``Et_a (Et'_b w) - Et'_b (Et_a w)`` is computed with the straightening
    engine of ``spec``; the polynomial product must vanish on every interior
    mode of the window.
    """
    from .pbwmod import act

    lo, hi = _range(window)
    if hi - lo < 4:
        raise WindowError("window too small: quasi-locality needs a margin of 4 modes")
    f, g = etilde(k, m), etilde(r, n)
    poly = quasi_locality_poly(k, m, r, n)
    failures = []
    interior = None
    for idx, w in enumerate(states):
        fw = {a: act(spec, f.coeff(a), w) for a in range(lo, hi + 1)}

        def entry(a, b):
            gb = g.coeff(b)
            return act(spec, f.coeff(a), act(spec, gb, w)) - act(spec, gb, fw[a])

        F = DistWindow.build(entry, (lo, hi), (lo, hi))
        PF = F.mul_poly(poly)
        interior = (PF.x1_range, PF.x2_range)
        for (a, b), v in sorted(PF.entries.items()):
            if v:
                failures.append({"state": idx, "mode": [a, b]})
    return {
        "params": {"k": k, "m": m, "r": r, "n": n},
        "window": [lo, hi],
        "interior": [list(interior[0]), list(interior[1])] if interior else None,
        "states": len(states),
        "failures": failures,
    }
