"""Command-line front end (``qdiffops``).

Exit status: 0 when every check passes, 1 on a property failure (the report
carries a witness), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import fdist, pbwmod, suites
from .central import covariant_reduce
from .liealg import CATALOGUE, AlgebraError, bracket, cocycle, form, get_algebra
from .parsing import ParseError, parse_element, parse_scalar, parse_state

PRESETS = {
    "verma": lambda l1, l2: pbwmod.verma_spec(l1, l2),
    "vacuum": lambda l1, l2: pbwmod.vacuum_spec("tilde-A", l1, l2),
    "vacuum-hat": lambda l1, l2: pbwmod.vacuum_spec("hat-A", l1, l2),
    "tail": lambda l1, l2: pbwmod.ind_spec(pbwmod.tail_bottom(), l1, l2, name="tail"),
    "tabulated": lambda l1, l2: pbwmod.ind_spec(pbwmod.tabulated_bottom(), l1, l2, name="tabulated"),
}
_PRESET_LEVELS = {"verma": ("0", "1"), "vacuum": ("1", "1"), "vacuum-hat": ("0", "1"),
                  "tail": ("0", "1"), "tabulated": ("0", "1")}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def parse_window(text: str) -> tuple[int, int]:
    """``a..b``, or a single ``N`` meaning ``-N..N``."""
    try:
        if ".." not in text:
            n = abs(int(text))
            return -n, n
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise UsageError(f"window must look like a..b, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"empty window {text!r}")
    return lo, hi


def parse_params(text: str | None) -> dict:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        name, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"parameter {item!r} must be name=value")
        try:
            out[name.strip()] = int(val)
        except ValueError:
            raise UsageError(f"parameter {name!r} must be an integer") from None
    return out


def parse_levels(text: str | None):
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("levels must be l1,l2")
    return tuple(parse_scalar(p) for p in parts)


def load_spec(name: str, levels=None) -> pbwmod.InductionSpec:
    if name in PRESETS:
        l1, l2 = levels or tuple(parse_scalar(x) for x in _PRESET_LEVELS[name])
        return PRESETS[name](l1, l2)
    path = Path(name)
    if not path.exists():
        raise UsageError(f"no such spec file or preset: {name!r} (presets: {', '.join(PRESETS)})")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{name}: invalid JSON ({exc})") from None
    if levels is not None:
        data = dict(data, levels={"l1": levels[0].to_text(), "l2": levels[1].to_text()})
    return pbwmod.spec_from_json(data)


def _normalize_argv(argv):
    # allow "--window -5..5": argparse would read "-5..5" as an option
    out = []
    it = iter(argv)
    for a in it:
        if a in ("--window", "--levels", "--params", "--k-range"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_bracket(args):
    A = get_algebra(args.algebra)
    x, y = parse_element(args.x), parse_element(args.y)
    r = bracket(A, x, y)
    return 0, {"algebra": A.name, "x": x.to_text(), "y": y.to_text(), "bracket": r.to_text(),
               "json": r.to_json()}, r.to_text()


def cmd_form(args):
    A = get_algebra(args.algebra)
    x, y = parse_element(args.x), parse_element(args.y)
    fn = cocycle if args.cocycle else form
    v = fn(A, x, y)
    kind = "cocycle" if args.cocycle else "form"
    return 0, {"algebra": A.name, "kind": kind, "value": v.to_text(), "json": v.to_json()}, v.to_text()


def cmd_reduce(args):
    x = parse_element(args.x)
    if not _is_covariant(x):
        get_algebra("hat-A-star").check(x)
    r = covariant_reduce(x)
    return 0, {"input": x.to_text(), "reduced": r.to_text(), "json": r.to_json()}, r.to_text()


def _is_covariant(x):
    return all(get_algebra("covariant").key_ok(k) for k in x.keys())


def cmd_fuzz(args):
    spec = load_spec(args.spec, parse_levels(args.levels)) if args.spec else None
    algebra = spec.algebra.name if spec is not None else args.algebra
    rep = suites.run_fuzz(args.target, algebra, parse_window(args.window), args.trials, args.seed, spec)
    return (1 if rep["failures"] else 0), rep, _fuzz_line(rep)


def _fuzz_line(rep):
    status = "ok" if not rep["failures"] else "FAIL"
    line = f"{rep['target']} on {rep['algebra']}: {rep['checked']} checked, {rep['failures']} failures [{status}]"
    if rep["counterexample"]:
        line += "\n  counterexample: " + " | ".join(rep["counterexample"])
    return line


def cmd_act(args):
    spec = load_spec(args.spec, parse_levels(args.levels))
    w = parse_state(args.state, spec)
    x = parse_element(args.generator)
    r = pbwmod.act(spec, x, w)
    text = r.to_text(spec.bottom)
    return 0, {"spec": spec.name, "state": w.to_text(spec.bottom), "generator": x.to_text(),
               "result": text, "json": r.to_json(spec.bottom)}, text


def cmd_bound(args):
    spec = load_spec(args.spec, parse_levels(args.levels))
    w = parse_state(args.state, spec)
    lo, hi = parse_window(args.k_range)
    ks = range(lo, hi + 1)
    try:
        t = pbwmod.restrictedness_bound(spec, w, ks, margin=args.margin)
    except pbwmod.RestrictednessError as exc:
        return 1, {"state": w.to_text(spec.bottom), "error": str(exc)}, f"FAIL: {exc}"
    rep = {"state": w.to_text(spec.bottom), "depth": spec.depth(w), "cutoff": spec.cutoff, "bound": t,
           "verified_l": [t, t + args.margin], "k_samples": list(ks)}
    return 0, rep, f"t = {t} (verified for l in [{t}, {t + args.margin}])"


def cmd_gf_check(args):
    params = parse_params(args.params)
    _, names = fdist.IDENTITIES.get(args.identity, (None, None))
    if names is None:
        raise UsageError(f"unknown identity {args.identity!r}; choose from {', '.join(fdist.IDENTITIES)}")
    missing = [n for n in names if n not in params]
    if missing:
        raise UsageError(f"{args.identity} needs parameters {', '.join(names)}")
    rep = fdist.check_gf_identity(args.identity, [params[n] for n in names], parse_window(args.window))
    rep = _jsonable(rep)
    ok = not rep["mismatches"]
    return (0 if ok else 1), rep, f"{args.identity} {params}: {len(rep['mismatches'])} mismatches"


def cmd_verify(args):
    what = args.what
    params = parse_params(args.params)
    levels = parse_levels(args.levels)
    if what == "bottom":
        spec = load_spec(args.spec or "verma", levels)
        rep = pbwmod.check_bottom_consistency(spec, args.bottom_window)
        ok = rep["consistent"]
    elif what == "support":
        p = {"t": 1, "kp": 0, "k1": 1, "j1": 1, "i1": 1, "j": 1} | params
        rep = pbwmod.check_support_lemma(p["t"], p["kp"], p["k1"], p["j1"], p["i1"], p["j"])
        ok = rep["ok"]
    elif what == "phi":
        l1, l2 = levels or (1, 1)
        rep = pbwmod.phi_intertwiner_check(l1, l2, args.degree, seed=args.seed, n_generators=args.trials)
        ok = not rep["failures"]
    elif what == "quasi-locality":
        p = {"k": 1, "m": 0, "r": -1, "n": 0} | params
        spec = load_spec(args.spec or "verma", levels)
        rng = random.Random(args.seed)
        states = [spec.vacuum()] + [suites.random_state(spec, rng, 4) for _ in range(args.states - 1)]
        rep = fdist.check_quasi_locality(p["k"], p["m"], p["r"], p["n"], spec, states, parse_window(args.window))
        ok = not rep["failures"]
    elif what == "theta":
        n, fails = suites.theta_exhaustive(*parse_window(args.window))
        rep = {"pairs": n, "failures": len(fails), "counterexample": fails[0] if fails else None}
        ok = not fails
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(what)
    rep = _jsonable(rep)
    return (0 if ok else 1), rep, f"{what}: {'ok' if ok else 'FAIL'}"


def cmd_report(args):
    window = parse_window(args.window)
    fuzz = []
    for algebra in ("vq", "gl-inf", "A", "A-star", "hat-A", "hat-A-star", "tilde-A"):
        fuzz.append(suites.run_fuzz("jacobi", algebra, window, args.trials, args.seed))
    for target, algebra in (("cocycle", "A"), ("cocycle", "gl-inf"), ("cocycle", "hat-A"),
                            ("trivial", "A"), ("trivial", "hat-A"), ("invariance", "gl-inf"),
                            ("invariance", "A"), ("invariance", "A-star"), ("iso", "A-star"),
                            ("iso", "tilde-A"), ("module-axiom", "vq"), ("module-axiom", "tilde-A"),
                            ("module-axiom", "ind")):
        fuzz.append(suites.run_fuzz(target, algebra, window, args.trials, args.seed))
    rng = random.Random(args.seed)
    gf = []
    for name, (_, names) in fdist.IDENTITIES.items():
        params = [rng.randint(-3, 3) for _ in names]
        rep = fdist.check_gf_identity(name, params, (-5, 5))
        gf.append({"identity": name, "params": params, "mismatches": len(rep["mismatches"])})
    out = {"seed": args.seed, "trials": args.trials, "window": list(window), "fuzz": fuzz, "gf": gf}
    failed = sum(r["failures"] for r in fuzz) + sum(g["mismatches"] for g in gf)
    lines = [_fuzz_line(r) for r in fuzz] + [f"{g['identity']} {g['params']}: {g['mismatches']} mismatches" for g in gf]
    return (1 if failed else 0), out, "\n".join(lines)


def _jsonable(obj):
    return json.loads(json.dumps(obj, default=_default))


def _default(o):
    if hasattr(o, "to_json"):
        return o.to_json()
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    return str(o)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qdiffops", description="Exact computations with q-difference operator algebras.")
    p.add_argument("--output", choices=["text", "json"], default="text", help="output format")
    p.add_argument("--out", metavar="PATH", help="also write the JSON report to PATH")
    sub = p.add_subparsers(dest="verb", required=True)
    algebras = list(CATALOGUE) + ["covariant"]

    def common(sp, algebra=True):
        sp.add_argument("--output", choices=["text", "json"], default=argparse.SUPPRESS)
        sp.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS)
        if algebra:
            sp.add_argument("--algebra", default="vq", choices=algebras)

    sp = sub.add_parser("bracket", help="bracket of two elements")
    common(sp)
    sp.add_argument("x")
    sp.add_argument("y")
    sp.set_defaults(func=cmd_bracket)

    sp = sub.add_parser("form", help="invariant form (or registered cocycle with --cocycle)")
    common(sp)
    sp.add_argument("x")
    sp.add_argument("y")
    sp.add_argument("--cocycle", action="store_true")
    sp.set_defaults(func=cmd_form)

    sp = sub.add_parser("reduce", help="canonical covariant form of a hat-A-star element")
    common(sp, algebra=False)
    sp.add_argument("x")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("fuzz", help="seeded property fuzzing")
    common(sp)
    sp.add_argument("target", choices=list(suites.FUZZ_TARGETS))
    sp.add_argument("--window", default="-4..4")
    sp.add_argument("--trials", type=int, default=500)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--spec", help="module spec file or preset (module-axiom only)")
    sp.add_argument("--levels")
    sp.set_defaults(func=cmd_fuzz)

    sp = sub.add_parser("act", help="act with a generator on a module state")
    common(sp, algebra=False)
    sp.add_argument("spec", help=f"spec file or preset ({', '.join(PRESETS)})")
    sp.add_argument("state")
    sp.add_argument("generator")
    sp.add_argument("--levels")
    sp.set_defaults(func=cmd_act)

    sp = sub.add_parser("bound", help="certified annihilation bound of a state")
    common(sp, algebra=False)
    sp.add_argument("spec")
    sp.add_argument("state")
    sp.add_argument("--k-range", default="-4..4")
    sp.add_argument("--margin", type=int, default=3)
    sp.add_argument("--levels")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("gf-check", help="generating-function identity on a mode window")
    common(sp, algebra=False)
    sp.add_argument("identity")
    sp.add_argument("--params")
    sp.add_argument("--window", default="-5..5")
    sp.set_defaults(func=cmd_gf_check)

    sp = sub.add_parser("verify", help="structural checks: bottom, support, phi, quasi-locality, theta")
    common(sp, algebra=False)
    sp.add_argument("what", choices=["bottom", "support", "phi", "quasi-locality", "theta"])
    sp.add_argument("--spec")
    sp.add_argument("--levels")
    sp.add_argument("--params")
    sp.add_argument("--window", default="-4..4")
    sp.add_argument("--bottom-window", type=int, default=2)
    sp.add_argument("--degree", type=int, default=3)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--states", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("report", help="deterministic JSON summary of all property suites")
    common(sp, algebra=False)
    sp.add_argument("--window", default="-4..4")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    argv = _normalize_argv(sys.argv[1:] if argv is None else list(argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, report, text = args.func(args)
    except (UsageError, ParseError, AlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = json.dumps(report, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        Path(args.out).write_text(payload + "\n")
    print(payload if args.output == "json" else text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
