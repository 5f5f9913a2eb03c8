"""Induced modules by PBW straightening.

A state is a finite combination of normal-ordered creation monomials applied
to basis vectors of a bottom module.  Acting with a generator either merges it
into the monomial (creation side), pushes it to the right through the
monomial using bracket corrections until it reaches the bottom (annihilator
side), or multiplies by a level (central).

Supported specs:

* highest-weight / induced modules over ``vq`` (creation ``E[k,l]``, ``l < 0``;
  ``E[k,l]``, ``l >= 0`` act on the bottom),
* vacuum modules over ``tilde-A`` and ``hat-A`` (creation ``a (x) t^i``, ``i < 0``;
  ``i >= 0`` kill the vacuum).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .central import MU
from .liealg import (
    C1, C2, K1, K2, AlgebraSpec, E, G, LieElem, Loop, _bracket, basis, get_algebra,
)
from .qcoeff import ONE, ZERO, QLaurent, as_qlaurent, q_pow

__all__ = [
    "PBWState", "InductionSpec", "MatrixBottom", "SymbolicBottom", "BottomError",
    "act", "act_key", "check_module_axiom", "check_bottom_consistency", "restrictedness_bound",
    "check_support_lemma", "phi_intertwiner_check", "phi_of", "vacuum_monomials", "verma_spec", "ind_spec", "vacuum_spec",
    "tail_bottom", "tabulated_bottom", "spec_from_json", "spec_to_json", "RestrictednessError",
]


class BottomError(ValueError):
    """The bottom module does not respect the bracket."""


class RestrictednessError(AssertionError):
    """A generator above the computed bound failed to annihilate a state."""


# ---------------------------------------------------------------------------
# states
# ---------------------------------------------------------------------------


def _add_into(out: dict, key, c) -> None:
    s = out.get(key, ZERO) + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


class PBWState:
    """Immutable combination ``(monomial, bottom label) -> QLaurent``."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for (mono, label), c in items:
                c = as_qlaurent(c)
                if c:
                    _add_into(clean, (tuple(mono), label), c)
        self._terms = clean

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: _state_order(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, PBWState):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            _add_into(out, k, c)
        return PBWState._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return PBWState._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, PBWState):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        s = as_qlaurent(scalar)
        if s is NotImplemented:
            return NotImplemented
        if not s:
            return PBWState._raw({})
        return PBWState._raw({k: c * s for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, PBWState):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def to_text(self, bottom=None) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (mono, label), c in self.items():
            lab = bottom.label_text(label) if bottom is not None else _default_label_text(label)
            body = " ".join([k.text() for k in mono] + [lab])
            parts.append(f"{c.pretty()} * {body}")
        return " + ".join(parts)

    def to_json(self, bottom=None) -> list:
        out = []
        for (mono, label), c in self.items():
            lab = bottom.label_text(label) if bottom is not None else _default_label_text(label)
            out.append({"monomial": [k.text() for k in mono], "bottom": lab, "coeff": c.to_json()})
        return out

    def __repr__(self):
        return f"PBWState({self.to_text()!r})"


def _state_order(k):
    mono, label = k
    return (len(mono), [x.order() for x in mono], repr(label))


def _default_label_text(label) -> str:
    return "v" if label == 0 else f"v{label}"


# ---------------------------------------------------------------------------
# bottom modules
# ---------------------------------------------------------------------------


def _l_index(key) -> Optional[int]:
    if type(key) is E:
        return key.l
    if type(key) is Loop:
        return key.i
    return None


class MatrixBottom:
    """Finite-dimensional bottom: ``key -> dim x dim`` matrix, zero by default.

    ``table`` holds explicitly tabulated matrices; ``rule`` (optional) is a
    function ``key -> matrix or None`` consulted for keys not in the table.
    ``cutoff`` is the largest ``l`` (or loop degree) of a generator that may
    act nontrivially.
    """

    def __init__(self, dim: int, table: Optional[dict] = None, rule=None, cutoff: int = 0, name: str = "v"):
        if dim < 1:
            raise ValueError("bottom dimension must be positive")
        self.dim = dim
        self.table = {k: _as_matrix(m, dim) for k, m in (table or {}).items()}
        self.rule = rule
        self.cutoff = cutoff
        self.name = name

    def labels(self):
        return list(range(self.dim))

    def matrix(self, key):
        m = self.table.get(key)
        if m is None and self.rule is not None:
            lidx = _l_index(key)
            if lidx is None or lidx <= self.cutoff:
                m = self.rule(key)
                if m is not None:
                    m = _as_matrix(m, self.dim)
        return m

    def apply(self, key, label) -> dict:
        m = self.matrix(key)
        if m is None:
            return {}
        out = {}
        for i in range(self.dim):
            c = m[i][label]
            if c:
                out[i] = c
        return out

    def label_text(self, label) -> str:
        if self.dim == 1:
            return self.name
        return f"{self.name}{label}"

    def parse_label(self, text: str):
        if self.dim == 1 and text == self.name:
            return 0
        if text.startswith(self.name) and text[len(self.name):].isdigit():
            i = int(text[len(self.name):])
            if i < self.dim:
                return i
        raise ValueError(f"unknown bottom vector {text!r}")


class SymbolicBottom:
    """Bottom left symbolic: its vectors are words ``X1 ... Xr v`` in b-generators.

    Generators with ``l > cutoff`` annihilate every vector (they span an ideal
    of ``b``); others are recorded freely.  Only used to trace which single
    bottom-level operator survives a straightening computation.
    """

    dim = None

    def __init__(self, cutoff: int):
        self.cutoff = cutoff
        self.rule = None
        self.table = {}

    def labels(self):
        return [()]

    def apply(self, key, label) -> dict:
        lidx = _l_index(key)
        if lidx is not None and lidx > self.cutoff:
            return {}
        return {(key,) + label: ONE}

    def label_text(self, label) -> str:
        if not label:
            return "v"
        return "v{" + " ".join(k.text() for k in label) + "}"

    def parse_label(self, text: str):
        from .parsing import parse_key

        if text == "v":
            return ()
        if text.startswith("v{") and text.endswith("}"):
            return tuple(parse_key(t) for t in text[2:-1].split())
        raise ValueError(f"unknown symbolic bottom vector {text!r}")


def _as_matrix(m, dim):
    if not isinstance(m, (list, tuple)):
        m = [[m if i == j else 0 for j in range(dim)] for i in range(dim)]
    rows = [[as_qlaurent(_scalar(c)) for c in row] for row in m]
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise ValueError(f"matrix must be {dim}x{dim}")
    return rows


def _scalar(c):
    if isinstance(c, str):
        from .parsing import parse_scalar

        return parse_scalar(c)
    if isinstance(c, float):
        raise TypeError("floating point scalars are not allowed")
    return c


# ---------------------------------------------------------------------------
# induction specs
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class InductionSpec:
    name: str
    algebra: AlgebraSpec
    is_creation: Callable[[object], bool]
    bottom: object
    levels: dict
    order: Callable[[object], tuple]
    depth_of: Callable[[object], int]
    _memo: dict = field(default_factory=dict, repr=False)

    def is_central(self, key) -> bool:
        return self.algebra.is_central(key)

    def level(self, key) -> QLaurent:
        return as_qlaurent(self.levels.get(key, ZERO))

    @property
    def cutoff(self) -> int:
        return self.bottom.cutoff

    def vacuum(self, label=None) -> PBWState:
        if label is None:
            label = self.bottom.labels()[0]
        return PBWState._raw({((), label): ONE})

    def depth(self, w: PBWState) -> int:
        return max((sum(self.depth_of(k) for k in mono) for mono, _ in w.terms), default=0)

    def monomial_state(self, keys, label=None) -> PBWState:
        """``keys[0] keys[1] ... keys[-1] v`` (applied right to left)."""
        w = self.vacuum(label)
        for k in reversed(list(keys)):
            w = act(self, basis(k), w)
        return w


def _vq_order(key):
    return (key.l, key.k)


def _loop_order(key):
    return (key.i, key.inner.order())


def _vq_creation(key) -> bool:
    return type(key) is E and key.l < 0


def _loop_creation(key) -> bool:
    return type(key) is Loop and key.i < 0


def ind_spec(bottom, l1=0, l2=0, name: str = "ind") -> InductionSpec:
    """``U(vq) (x)_{U(b)} V`` with ``b = span{E[k,l], l >= 0} + C c1 + C c2``."""
    return InductionSpec(
        name, get_algebra("vq"), _vq_creation, bottom,
        {C1: as_qlaurent(_scalar(l1)), C2: as_qlaurent(_scalar(l2))},
        _vq_order, lambda k: -k.l,
    )


def verma_spec(l1=0, l2=1, weights: Optional[dict] = None) -> InductionSpec:
    """Highest-weight module: one-dimensional bottom, ``E[k,0] v = weights[k] v``."""
    table = {E(k, 0): [[w]] for k, w in (weights or {}).items() if k != 0}
    return ind_spec(MatrixBottom(1, table, cutoff=0), l1, l2, name="verma")


def vacuum_spec(algebra: str = "tilde-A", l1=0, l2=1) -> InductionSpec:
    """Vacuum module: ``g (x) C[t]`` kills the vacuum, ``K1, K2`` act by levels."""
    A = get_algebra(algebra)
    levels = {K2: as_qlaurent(_scalar(l2))}
    if algebra == "tilde-A":
        levels[K1] = as_qlaurent(_scalar(l1))
    return InductionSpec(
        f"vacuum-{algebra}", A, _loop_creation, MatrixBottom(1, cutoff=-1, name="vac"),
        levels, _loop_order, lambda k: -k.i,
    )


def _tail_rule(key):
    # E[k,0] -> (q^-k - q^k)/2 * h, E[k,1] -> e, with h = diag(1,-1), e = E_12
    if type(key) is not E:
        return None
    if key.l == 0:
        c = (q_pow(-key.k) - q_pow(key.k)) * Fraction(1, 2)
        return [[c, 0], [0, -c]]
    if key.l == 1:
        return [[0, 1], [0, 0]]
    return None


def tail_bottom() -> MatrixBottom:
    """Two-dimensional b-module with cutoff 1 in which every ``E[k,1]`` acts nontrivially.

    ``[E[k,0], E[r,1]] = (q^-k - q^k) E[k+r,1]`` holds because ``[h, e] = 2e``;
    the ``E[k,1]`` commute and ``E[k,l]``, ``l >= 2`` act as zero.  Forces ``l1 = 0``.
    """
    return MatrixBottom(2, rule=_tail_rule, cutoff=1)


def tabulated_bottom() -> MatrixBottom:
    """Two-dimensional bottom with a finite action table (cutoff 0)."""
    e = [[0, 1], [0, 0]]
    return MatrixBottom(
        2,
        {E(1, 0): e, E(-1, 0): [[0, 3], [0, 0]], E(2, 0): [[q_pow(1), 0], [0, q_pow(1)]]},
        cutoff=0,
    )


# ---------------------------------------------------------------------------
# straightening
# ---------------------------------------------------------------------------


def act_key(spec: InductionSpec, key, mono: tuple, label) -> dict:
    """Raw action of one basis key on one normal-ordered basis state."""
    memo = spec._memo
    mk = (key, mono, label)
    out = memo.get(mk)
    if out is not None:
        return out
    A = spec.algebra
    if spec.is_central(key):
        lev = spec.level(key)
        out = {(mono, label): lev} if lev else {}
    elif spec.is_creation(key) and (not mono or spec.order(key) <= spec.order(mono[0])):
        out = {((key,) + mono, label): ONE}
    elif not mono:
        out = {((), lab): c for lab, c in spec.bottom.apply(key, label).items()}
    else:
        # x Y rest = Y (x rest) + [x, Y] rest
        y, rest = mono[0], mono[1:]
        out = {}
        for (m2, l2), c in act_key(spec, key, rest, label).items():
            for k3, c3 in act_key(spec, y, m2, l2).items():
                _add_into(out, k3, c * c3)
        for k2, c2 in A.bracket_keys(key, y)._terms.items():
            for k3, c3 in act_key(spec, k2, rest, label).items():
                _add_into(out, k3, c2 * c3)
    memo[mk] = out
    return out


def act(spec: InductionSpec, x: LieElem, w: PBWState) -> PBWState:
    """``x . w`` in normal form."""
    spec.algebra.check(x)
    out: dict = {}
    for key, c in x._terms.items():
        for (mono, label), cw in w._terms.items():
            for k3, c3 in act_key(spec, key, mono, label).items():
                _add_into(out, k3, c * cw * c3)
    return PBWState._raw(out)


def check_module_axiom(spec: InductionSpec, x: LieElem, y: LieElem, w: PBWState) -> bool:
    """``x.(y.w) - y.(x.w) == [x, y].w``."""
    lhs = act(spec, x, act(spec, y, w)) - act(spec, y, act(spec, x, w))
    return lhs == act(spec, _bracket(spec.algebra, x, y), w)


# ---------------------------------------------------------------------------
# bottom consistency
# ---------------------------------------------------------------------------


def _mat_mul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]


def _mat_sub(a, b):
    return [[a[i][j] - b[i][j] for j in range(len(a))] for i in range(len(a))]


def _zero_mat(n):
    return [[ZERO] * n for _ in range(n)]


def _b_keys(spec: InductionSpec, window: int) -> list:
    keys = set(spec.bottom.table)
    if spec.algebra.name == "vq":
        for k in range(-window, window + 1):
            for l in range(0, max(window, spec.cutoff) + 1):
                if (k, l) != (0, 0):
                    keys.add(E(k, l))
    else:
        for a in range(-window, window + 1):
            for m in range(-window, window + 1):
                for i in range(0, window + 1):
                    keys.add(Loop(G(a, m), i))
    return sorted(keys, key=lambda k: k.order())


def _rho(spec: InductionSpec, x: LieElem):
    n = spec.bottom.dim
    out = _zero_mat(n)
    for key, c in x.terms.items():
        if spec.is_central(key):
            lev = spec.level(key) * c
            for i in range(n):
                out[i][i] = out[i][i] + lev
            continue
        m = spec.bottom.matrix(key)
        if m is None:
            continue
        for i in range(n):
            for j in range(n):
                if m[i][j]:
                    out[i][j] = out[i][j] + m[i][j] * c
    return out


def check_bottom_consistency(spec: InductionSpec, window: int = 2) -> dict:
    """Check ``rho([X,Y]) == [rho X, rho Y]`` on b-generators in the window.

    Generators outside the table act as zero, so the check covers all pairs
    drawn from the tabulated keys and the window.
    """
    if not isinstance(spec.bottom, MatrixBottom):
        raise BottomError("only matrix bottoms can be checked")
    keys = _b_keys(spec, window)
    violations = []
    forced = []
    for x, y in itertools.combinations(keys, 2):
        rx, ry = _rho(spec, basis(x)), _rho(spec, basis(y))
        br = _bracket(spec.algebra, basis(x), basis(y))
        lhs = _rho(spec, br)
        rhs = _mat_sub(_mat_mul(rx, ry), _mat_mul(ry, rx))
        if lhs != rhs:
            violations.append([x.text(), y.text()])
            central = [k for k in br.keys() if spec.is_central(k)]
            if central and all(spec.is_central(k) for k in br.keys()) and spec.bottom.dim == 1:
                for k in central:
                    msg = f"one-dimensional bottom forces level of {k.text()} to vanish"
                    if msg not in forced:
                        forced.append(msg)
    return {
        "consistent": not violations,
        "pairs_checked": len(keys) * (len(keys) - 1) // 2,
        "violations": violations,
        "forced": forced,
    }


# ---------------------------------------------------------------------------
# restrictedness (category O evidence)
# ---------------------------------------------------------------------------


def restrictedness_bound(spec: InductionSpec, w: PBWState, k_samples, margin: int = 3) -> int:
    """Bound ``t`` with ``E[k,l] w = 0`` for all ``l >= t``; verified on samples.

    ``t = depth(w) + cutoff + 1``: each creation factor lowers the l-index of a
    generator passing through it by its depth, and the bottom is killed above
    its cutoff.
    """
    if spec.algebra.name != "vq":
        raise ValueError("restrictedness bound is defined for vq specs")
    t = spec.depth(w) + spec.cutoff + 1
    t = max(t, 1)
    for k in k_samples:
        for l in range(t, t + margin + 1):
            if (k, l) == (0, 0):
                continue
            if act(spec, basis(E(k, l)), w):
                raise RestrictednessError(f"E[{k},{l}] does not annihilate the state (bound {t})")
    return t


# ---------------------------------------------------------------------------
# support of iterated E-actions on induced modules
# ---------------------------------------------------------------------------


def check_support_lemma(t: int, kp: int, k1: int, j1: int, i1: int, j: int, l1=0, l2=0) -> dict:
    """Reduce ``E[kp, t+j] E[k1,-j1]^i1 v`` over a symbolic bottom with cutoff ``t``.

    The result must be a multiple of ``E[kp + i1*k1, t] v`` when ``j == i1*j1``
    and zero when ``j > i1*j1``.
    """
    if t < 1 or j1 < 1 or i1 < 0 or j < 0:
        raise ValueError("need t >= 1, j1 >= 1, i1 >= 0, j >= 0")
    if j < i1 * j1:
        raise ValueError("the support lemma needs j >= i1*j1")
    spec = ind_spec(SymbolicBottom(t), l1, l2, name="symbolic")
    w = spec.monomial_state([E(k1, -j1)] * i1)
    res = act(spec, basis(E(kp, t + j)), w)
    target = ((), (E(kp + i1 * k1, t),))
    if j > i1 * j1:
        ok = res.is_zero()
        scalar = ZERO
    else:
        ok = set(res.terms) <= {target}
        scalar = res.terms.get(target, ZERO)
    return {
        "params": {"t": t, "kp": kp, "k1": k1, "j1": j1, "i1": i1, "j": j},
        "predicted": "0" if j > i1 * j1 else f"c * {E(kp + i1 * k1, t).text()} v",
        "result": res.to_text(spec.bottom),
        "scalar": scalar.to_text(),
        "ok": ok,
    }


# ---------------------------------------------------------------------------
# the vacuum-module isomorphism for a trivial cocycle
# ---------------------------------------------------------------------------


class _Twisted:
    """``hat-A`` vacuum module viewed as a ``tilde-A`` module.

    ``a (x) t^i`` acts as ``a (x) t^i - mu(a) delta_{i,-1} l1`` and ``K1`` by ``l1``.
    """

    def __init__(self, l1, l2):
        self.l1 = as_qlaurent(_scalar(l1))
        self.hat = vacuum_spec("hat-A", l2=l2)

    def act(self, x: LieElem, w: PBWState) -> PBWState:
        out = PBWState()
        for key, c in x.terms.items():
            if key == K1:
                out = out + w * (c * self.l1)
                continue
            out = out + act(self.hat, basis(key, c), w)
            if type(key) is Loop and key.i == -1:
                mu = MU(basis(key.inner))
                if mu:
                    out = out - w * (c * mu * self.l1)
        return out


def _phi_builder(native: InductionSpec, twisted: _Twisted):
    cache: dict = {}

    def phi_mono(mono):
        r = cache.get(mono)
        if r is None:
            if not mono:
                r = twisted.hat.vacuum()
            else:
                r = twisted.act(basis(mono[0]), phi_mono(mono[1:]))
            cache[mono] = r
        return r

    def phi(w: PBWState) -> PBWState:
        out = PBWState()
        for (mono, _), c in w.terms.items():
            out = out + phi_mono(mono) * c
        return out

    return phi


def vacuum_monomials(spec: InductionSpec, inner_keys, max_degree: int) -> list[PBWState]:
    """All normal-ordered monomial states of degree <= ``max_degree`` over ``inner_keys``."""
    gens = [Loop(a, -m) for m in range(1, max_degree + 1) for a in inner_keys]
    gens.sort(key=spec.order)
    out = []

    def rec(start, deg, mono):
        out.append(PBWState._raw({(tuple(mono), 0): ONE}))
        for idx in range(start, len(gens)):
            g = gens[idx]
            d = -g.i
            if deg + d <= max_degree:
                rec(idx, deg + d, mono + [g])

    rec(0, 0, [])
    return out


def phi_intertwiner_check(l1, l2, max_degree: int = 3, generators=None, inner_keys=None, seed: int = 0,
                          n_generators: int = 100) -> dict:
    """Check ``phi(X.w) == X.phi(w)`` between the two vacuum modules.

    ``phi`` is built from ``phi(1) = 1`` and the module-map property on
    creation monomials; the check then runs over all monomial states of
    degree <= ``max_degree`` (built from ``inner_keys``) and the sampled
    generators ``X`` of ``tilde-A``.
    """
    native = vacuum_spec("tilde-A", l1, l2)
    twisted = _Twisted(l1, l2)
    phi = _phi_builder(native, twisted)
    if inner_keys is None:
        inner_keys = [G(0, 1), G(0, 2), G(1, 0), G(-1, 1)]
    if generators is None:
        rng = random.Random(seed)
        A = native.algebra
        generators = [basis(A.sample_key(rng, -2, 2)) for _ in range(n_generators)]
    states = vacuum_monomials(native, inner_keys, max_degree)
    failures = []
    for gi, x in enumerate(generators):
        for si, w in enumerate(states):
            if phi(act(native, x, w)) != twisted.act(x, phi(w)):
                failures.append({"generator": x.to_text(), "state": w.to_text(native.bottom)})
    identity = all(phi(w) == w for w in states)
    return {
        "levels": [as_qlaurent(_scalar(l1)).to_text(), as_qlaurent(_scalar(l2)).to_text()],
        "states": len(states),
        "generators": len(generators),
        "failures": failures,
        "identity_on_states": identity,
    }


def phi_of(l1, l2, w: PBWState) -> PBWState:
    """``phi`` applied to a state of the ``tilde-A`` vacuum module."""
    native = vacuum_spec("tilde-A", l1, l2)
    return _phi_builder(native, _Twisted(l1, l2))(w)


# ---------------------------------------------------------------------------
# spec files
# ---------------------------------------------------------------------------


def spec_from_json(data) -> InductionSpec:
    """Build a spec from the bottom-module file format.

    ``{algebra, levels: {l1, l2}, cutoff_t, dim, action: [{key, matrix}]}``;
    ``"preset": "tail"`` selects :func:`tail_bottom` for ``vq``.
    """
    from .parsing import parse_key

    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    algebra = data.get("algebra", "vq")
    levels = data.get("levels", {})
    l1, l2 = levels.get("l1", 0), levels.get("l2", 0)
    if algebra in ("tilde-A", "hat-A"):
        return vacuum_spec(algebra, l1, l2)
    if algebra != "vq":
        raise ValueError(f"no induction spec for algebra {algebra!r}")
    if data.get("preset") == "tail":
        return ind_spec(tail_bottom(), l1, l2, name="tail")
    dim = int(data.get("dim", 1))
    table = {}
    for entry in data.get("action", []):
        key = parse_key(entry["key"])
        if type(key) is not E or key.l < 0:
            raise ValueError(f"{entry['key']} is not in b")
        table[key] = entry["matrix"]
    cutoff = int(data.get("cutoff_t", max((k.l for k in table), default=0)))
    name = "verma" if dim == 1 and cutoff == 0 else "ind"
    return ind_spec(MatrixBottom(dim, table, cutoff=cutoff), l1, l2, name=name)


def spec_to_json(spec: InductionSpec) -> dict:
    levels = {"l1": spec.level(C1 if spec.algebra.name == "vq" else K1).to_text(),
              "l2": spec.level(C2 if spec.algebra.name == "vq" else K2).to_text()}
    out = {"algebra": spec.algebra.name, "levels": levels, "cutoff_t": spec.cutoff}
    b = spec.bottom
    if isinstance(b, MatrixBottom):
        out["dim"] = b.dim
        out["action"] = [
            {"key": k.text(), "matrix": [[c.to_text() for c in row] for row in m]}
            for k, m in sorted(b.table.items(), key=lambda kv: kv[0].order())
        ]
    return out
