"""Recursive-descent parser for scalars, Lie elements and module states.

Grammar (whitespace insignificant)::

    expr    := ['-'] product (('+' | '-') product)*
    product := factor (('*' | '/') factor)*
    factor  := atom ['^' int] ['@t^' int]
    atom    := number | 'q' | key | '(' expr ')' | '-' factor
    key     := E[k,l] | Eij[m,n] | G[a,m] | Gbar[a,m] | c1 | c2 | K1 | K2 | c1bar

A state is a sum of terms ``[scalar *] X1 X2 ... Xr LABEL`` where each ``Xi``
is a product evaluating to an element; they act right to left on ``LABEL``.
"""

from __future__ import annotations

import re

from .liealg import C1, C1BAR, C2, K1, K2, E, Eij, G, Gbar, LieElem, Loop, basis
from .qcoeff import ONE, QLaurent, as_qlaurent, q_pow

__all__ = ["ParseError", "parse_scalar", "parse_element", "parse_key", "parse_state", "parse_value"]


class ParseError(ValueError):
    def __init__(self, msg: str, text: str = "", pos: int = 0):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at position {pos}" + (f": {text[:pos]}<<>>{text[pos:]}" if text else ""))


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+)"
    r"|(?P<label>v\{[^}]*\})"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<at>@t\^)"
    r"|(?P<op>[-+*/^()\[\],])"
    r")"
)

_CENTRALS = {"c1": C1, "c2": C2, "K1": K1, "K2": K2, "c1bar": C1BAR}
_INDEXED = {"E": E, "Eij": Eij, "G": G, "Gbar": Gbar}
_LABEL = re.compile(r"v\d*|vac")


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        start = m.start(kind)
        val = m.group(kind)
        if kind == "ident" and _LABEL.fullmatch(val):
            kind = "label"
        toks.append((kind, val, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    # -- helpers ------------------------------------------------------------
    def peek(self, off=0):
        return self.toks[min(self.i + off, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect(self, val):
        t = self.take()
        if t[1] != val:
            self.error(f"expected {val!r}, found {t[1] or 'end of input'!r}", t)
        return t

    def is_op(self, val, off=0):
        t = self.peek(off)
        return t[0] in ("op", "at") and t[1] == val

    def integer(self) -> int:
        sign = 1
        paren = False
        if self.is_op("("):
            self.take()
            paren = True
        if self.is_op("-"):
            self.take()
            sign = -1
        elif self.is_op("+"):
            self.take()
        t = self.take()
        if t[0] != "num":
            self.error("expected an integer", t)
        if paren:
            self.expect(")")
        return sign * int(t[1])

    # -- grammar ------------------------------------------------------------
    def expr(self):
        if self.is_op("-"):
            self.take()
            val = _neg(self.product())
        else:
            val = self.product()
        while self.is_op("+") or self.is_op("-"):
            op = self.take()
            rhs = self.product()
            val = _add(val, rhs if op[1] == "+" else _neg(rhs), self, op)
        return val

    def product(self, stop_at_label=False):
        val = self.factor()
        while self.is_op("*") or self.is_op("/"):
            if stop_at_label and self.peek(1)[0] == "label":
                break
            op = self.take()
            rhs = self.factor()
            val = _mul(val, rhs, self, op) if op[1] == "*" else _div(val, rhs, self, op)
        return val

    def factor(self):
        if self.is_op("-"):
            self.take()
            return _neg(self.factor())
        val = self.atom()
        if self.is_op("^"):
            tok = self.take()
            n = self.integer()
            if not isinstance(val, QLaurent):
                self.error("only scalars can be raised to a power", tok)
            try:
                val = val ** n
            except ZeroDivisionError as exc:
                self.error(str(exc), tok)
        if self.peek()[0] == "at":
            tok = self.take()
            i = self.integer()
            if isinstance(val, QLaurent):
                self.error("'@t^' needs an element", tok)
            val = LieElem((Loop(k, i), c) for k, c in val.terms.items())
        return val

    def atom(self):
        t = self.peek()
        kind, val, _ = t
        if kind == "num":
            self.take()
            return as_qlaurent(int(val))
        if kind == "op" and val == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "ident":
            self.take()
            if val == "q":
                return q_pow(1)
            if val in _CENTRALS:
                return basis(_CENTRALS[val])
            if val in _INDEXED:
                self.expect("[")
                a = self.integer()
                self.expect(",")
                b = self.integer()
                self.expect("]")
                return basis(_INDEXED[val](a, b))
            self.error(f"unknown name {val!r}", t)
        if kind == "end":
            self.error("unexpected end of input", t)
        self.error(f"unexpected {val!r}", t)

    def finish(self):
        if self.peek()[0] != "end":
            self.error(f"trailing input {self.peek()[1]!r}")


def _is_scalar(v):
    return isinstance(v, QLaurent)


def _add(a, b, p, tok):
    if _is_scalar(a) != _is_scalar(b):
        # allow 0 on either side
        if _is_scalar(a) and not a:
            return b
        if _is_scalar(b) and not b:
            return a
        p.error("cannot add a scalar and an element", tok)
    return a + b


def _neg(a):
    return -a


def _mul(a, b, p, tok):
    if not _is_scalar(a) and not _is_scalar(b):
        p.error("product of two elements is not defined (use juxtaposition in states)", tok)
    if _is_scalar(a) and not _is_scalar(b):
        return b * a
    return a * b


def _div(a, b, p, tok):
    if not _is_scalar(b):
        p.error("can only divide by a scalar", tok)
    try:
        if _is_scalar(a):
            return a / b
        return a * (ONE / b)
    except ZeroDivisionError as exc:
        p.error(str(exc), tok)


def parse_value(text: str):
    """Parse ``text`` into a :class:`QLaurent` or a :class:`LieElem`."""
    p = _Parser(text)
    val = p.expr()
    p.finish()
    return val


def parse_scalar(text: str) -> QLaurent:
    val = parse_value(text)
    if not _is_scalar(val):
        raise ParseError("expected a scalar, found an element", text, 0)
    return val


def parse_element(text: str) -> LieElem:
    val = parse_value(text)
    if _is_scalar(val):
        if val:
            raise ParseError("expected an element, found a nonzero scalar", text, 0)
        return LieElem()
    return val


def parse_key(text: str):
    """A single basis key such as ``E[2,-1]`` or ``(G[0,1])@t^-1``."""
    val = parse_value(text)
    if _is_scalar(val) or len(val) != 1:
        raise ParseError(f"{text!r} is not a basis key", text, 0)
    ((k, c),) = val.terms.items()
    if c != 1:
        raise ParseError(f"{text!r} is not a basis key", text, 0)
    return k


def parse_state(text: str, spec):
    """Parse a state of the module described by ``spec`` (a pbwmod induction spec)."""
    from .pbwmod import PBWState, act

    p = _Parser(text)
    total = PBWState()
    sign = 1
    if p.is_op("-"):
        p.take()
        sign = -1
    while True:
        factors = []
        while p.peek()[0] != "label":
            if p.peek()[0] == "end" or (factors and (p.is_op("+") or p.is_op("-"))):
                p.error("expected a bottom vector such as 'v' or 'vac'")
            factors.append((p.product(stop_at_label=True), p.peek()))
            if p.is_op("*") and p.peek(1)[0] == "label":
                p.take()
        tok = p.take()
        try:
            label = spec.bottom.parse_label(tok[1])
        except ValueError as exc:
            raise ParseError(str(exc), text, tok[2]) from None
        w = spec.vacuum(label)
        for f, ftok in reversed(factors):
            if _is_scalar(f):
                w = w * f
            else:
                try:
                    w = act(spec, f, w)
                except ValueError as exc:
                    raise ParseError(str(exc), text, ftok[2]) from None
        total = total + w * sign
        if p.peek()[0] == "end":
            break
        op = p.take()
        if op[1] not in "+-" or op[0] != "op":
            p.error(f"unexpected {op[1]!r}", op)
        sign = 1 if op[1] == "+" else -1
        if p.is_op("-"):
            p.take()
            sign = -sign
    return total
