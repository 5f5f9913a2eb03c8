"""Seeded property suites shared by the command line and the test-suite.

Every runner returns a plain dict report whose content depends only on its
arguments, so identical invocations serialize to identical JSON.
"""

from __future__ import annotations

import itertools
import random

from .central import (
    MU,
    MU2,
    PSI2,
    PSI_A,
    PSI_GL,
    check_cocycle,
    check_trivial,
    covariant_bracket,
    extension_iso,
    iso_algebras,
    vq_covariant_iso,
)
from .liealg import (
    C1,
    C2,
    E,
    G,
    Loop,
    basis,
    bracket,
    check_antisymmetry,
    check_invariance,
    check_jacobi,
    get_algebra,
)
from .pbwmod import (
    InductionSpec,
    PBWState,
    check_module_axiom,
    ind_spec,
    tabulated_bottom,
    vacuum_spec,
    verma_spec,
)
from .qcoeff import q_pow

__all__ = ["FUZZ_TARGETS", "run_fuzz", "random_state", "theta_exhaustive", "default_module_spec"]

COCYCLES = {"A": PSI_A, "gl-inf": PSI_GL, "hat-A": PSI2}
TRIVIAL = {"A": (PSI_A, MU), "hat-A": (PSI2, MU2)}
ISO_KIND = {"A-star": "f", "A+K1": "f", "tilde-A": "f2", "hat-A+K1": "f2"}


def _report(target, algebra, seed, trials, window, checked, failures):
    return {
        "target": target,
        "algebra": algebra,
        "seed": seed,
        "trials": trials,
        "window": list(window),
        "checked": checked,
        "failures": len(failures),
        "counterexample": failures[0] if failures else None,
    }


def _keys(A, rng, lo, hi, n):
    return [basis(A.sample_key(rng, lo, hi)) for _ in range(n)]


def _texts(*xs):
    return [x.to_text() for x in xs]


def fuzz_jacobi(algebra, rng, trials, lo, hi):
    A = get_algebra(algebra)
    fails = []
    for _ in range(trials):
        x, y, z = _keys(A, rng, lo, hi, 3)
        if not (check_antisymmetry(A, x, y) and check_jacobi(A, x, y, z)):
            fails.append(_texts(x, y, z))
    return trials, fails


def fuzz_cocycle(algebra, rng, trials, lo, hi):
    psi = COCYCLES.get(algebra)
    if psi is None:
        raise ValueError(f"no cocycle registered on {algebra}; choose from {', '.join(COCYCLES)}")
    fails = []
    for _ in range(trials):
        x, y, z = _keys(psi.home, rng, lo, hi, 3)
        if not check_cocycle(psi, x, y, z):
            fails.append(_texts(x, y, z))
    return trials, fails


def fuzz_trivial(algebra, rng, trials, lo, hi):
    if algebra not in TRIVIAL:
        raise ValueError(f"no trivializing map on {algebra}; choose from {', '.join(TRIVIAL)}")
    psi, mu = TRIVIAL[algebra]
    fails = []
    for _ in range(trials):
        x, y = _keys(psi.home, rng, lo, hi, 2)
        if not check_trivial(psi, mu, x, y):
            fails.append(_texts(x, y))
    return trials, fails


def fuzz_invariance(algebra, rng, trials, lo, hi):
    A = get_algebra(algebra)
    if A.form_rule is None:
        raise ValueError(f"algebra {algebra} has no invariant form")
    fails = []
    for _ in range(trials):
        x, y, z = _keys(A, rng, lo, hi, 3)
        if not check_invariance(A, x, y, z):
            fails.append(_texts(x, y, z))
    return trials, fails


def theta_exhaustive(lo, hi):
    """All basis pairs of ``vq`` (plus centrals) in the window: theta vs both covariant brackets."""
    vq = get_algebra("vq")
    keys = [E(k, l) for k in range(lo, hi + 1) for l in range(lo, hi + 1) if (k, l) != (0, 0)]
    keys += [C1, C2]
    fails = []
    n = 0
    for a, b in itertools.product(keys, repeat=2):
        x, y = basis(a), basis(b)
        lhs = vq_covariant_iso(bracket(vq, x, y))
        tx, ty = vq_covariant_iso(x), vq_covariant_iso(y)
        s = covariant_bracket(tx, ty, "sum")
        c = covariant_bracket(tx, ty, "closed")
        n += 1
        if not (lhs == s == c):
            fails.append(_texts(x, y))
    return n, fails


def fuzz_iso(algebra, rng, trials, lo, hi):
    if algebra in ("vq", "covariant"):
        return theta_exhaustive(lo, hi)
    kind = ISO_KIND.get(algebra)
    if kind is None:
        raise ValueError(f"no isomorphism target for {algebra}; choose vq, A-star or tilde-A")
    src, dst = iso_algebras(kind)
    fails = []
    for _ in range(trials):
        x, y = _keys(src, rng, lo, hi, 2)
        x = x + src.sample_elem(rng, lo, hi, 1)
        fx, fy = extension_iso(kind, "forward", x), extension_iso(kind, "forward", y)
        hom = extension_iso(kind, "forward", bracket(src, x, y)) == bracket(dst, fx, fy)
        back = extension_iso(kind, "inverse", fx) == x and extension_iso(kind, "inverse", fy) == y
        if not (hom and back):
            fails.append(_texts(x, y))
    return trials, fails


def default_module_spec(algebra) -> InductionSpec:
    if algebra == "vq":
        return verma_spec(0, 1, {1: 2, -1: -1, 2: q_pow(1)})
    if algebra in ("tilde-A", "hat-A"):
        return vacuum_spec(algebra, 1, 2)
    if algebra == "ind":
        return ind_spec(tabulated_bottom(), 0, 1, name="tabulated")
    raise ValueError(f"no induction spec for {algebra}; choose vq, tilde-A, hat-A or ind")


def random_state(spec: InductionSpec, rng: random.Random, max_depth: int = 5, lo: int = -3, hi: int = 3) -> PBWState:
    """A random normal-form state of depth at most ``max_depth``."""
    depth = rng.randint(0, max_depth)
    keys = []
    while depth > 0:
        j = rng.randint(1, depth)
        depth -= j
        if spec.algebra.name == "vq":
            keys.append(E(rng.randint(lo, hi), -j))
        else:
            keys.append(Loop(G(rng.randint(lo, hi), rng.randint(lo, hi)), -j))
    label = rng.choice(spec.bottom.labels())
    w = spec.monomial_state(keys, label)
    if rng.random() < 0.3:
        w = w * rng.choice([2, -1, q_pow(1)])
    return w


def fuzz_module_axiom(algebra, rng, trials, lo, hi, spec: InductionSpec | None = None):
    spec = spec or default_module_spec(algebra)
    A = spec.algebra
    fails = []
    for _ in range(trials):
        x, y = _keys(A, rng, lo, hi, 2)
        w = random_state(spec, rng, 5, lo, hi)
        if not check_module_axiom(spec, x, y, w):
            fails.append(_texts(x, y) + [w.to_text(spec.bottom)])
    return trials, fails


FUZZ_TARGETS = {
    "jacobi": fuzz_jacobi,
    "cocycle": fuzz_cocycle,
    "trivial": fuzz_trivial,
    "invariance": fuzz_invariance,
    "iso": fuzz_iso,
    "module-axiom": fuzz_module_axiom,
}


def run_fuzz(target: str, algebra: str, window=(-4, 4), trials: int = 500, seed: int = 0, spec=None) -> dict:
    if target not in FUZZ_TARGETS:
        raise ValueError(f"unknown fuzz target {target!r}; choose from {', '.join(FUZZ_TARGETS)}")
    lo, hi = window
    rng = random.Random(seed)
    if target == "module-axiom":
        checked, fails = fuzz_module_axiom(algebra, rng, trials, lo, hi, spec)
    else:
        checked, fails = FUZZ_TARGETS[target](algebra, rng, trials, lo, hi)
    return _report(target, algebra, seed, trials, window, checked, fails)
