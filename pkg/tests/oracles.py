"""Independent reference computations used by the tests.

Nothing here calls the bracket rules of the package; each oracle works from
the defining formulas on plain dicts and evaluates scalars at a rational q.
"""

from fractions import Fraction

Q0 = Fraction(3, 2)


def qv(n, q=Q0):
    return Fraction(q) ** n


def vq_bracket(k, l, r, s, q=Q0):
    """``[E(k,l), E(r,s)]`` as ``{label: value}``; labels ``("E",a,b)``, ``"c1"``, ``"c2"``."""
    out = {}
    if (k + r, l + s) != (0, 0):
        c = qv(r * l - s * k, q) - qv(s * k - r * l, q)
        if c:
            out[("E", k + r, l + s)] = c
    else:
        if k:
            out["c1"] = Fraction(k)
        if l:
            out["c2"] = Fraction(l)
    return out


def matrix_unit_bracket(a, b):
    """``[e_{a0 a1}, e_{b0 b1}]`` for infinite matrix units, as ``{(i,j): coeff}``."""
    out = {}

    def add(key, c):
        out[key] = out.get(key, 0) + c
        if not out[key]:
            del out[key]

    if a[1] == b[0]:
        add((a[0], b[1]), 1)
    if b[1] == a[0]:
        add((b[0], a[1]), -1)
    return out


def a_via_matrices(al, m, be, n):
    """Bracket of ``G(al,m)``, ``G(be,n)`` through ``G(a,m) = e_{m+a, m-a}``; result in G-labels."""
    res = matrix_unit_bracket((m + al, m - al), (n + be, n - be))
    out = {}
    for (i, j), c in res.items():
        assert (i + j) % 2 == 0
        out[((i - j) // 2, (i + j) // 2)] = c
    return out


def covariant_truncated(al, m, be, n, R=40, q=Q0):
    """Defining r-sum for the covariant bracket, truncated to ``|r| <= R``.

    Works in ``A-star (x) C[t,t^-1] + C K2`` directly from the matrix model; the
    class of ``G(a,p) (x) t^j`` is ``q^(-p j) Gbar(a,j)`` and ``K1 (x) t^j`` survives
    only for ``j = 0``.  Returns ``{label: value at q}``.
    """
    out = {}

    def add(key, c):
        out[key] = out.get(key, 0) + c
        if not out[key]:
            del out[key]

    for r in range(-R, R + 1):
        w = qv(m * r, q)
        p = r  # sigma_r(G(al,0)) = G(al, r)
        for (a, pp), c in a_via_matrices(al, p, be, 0).items():
            add(("Gbar", a, m + n), w * c * qv(-pp * (m + n), q))
        if al + be == 0 and p == 0:
            # psi and form terms: K1 (x) t^(m+n) and m <.,.> delta K2
            if al and m + n + 0 == 0:
                add("c1bar", w * al)
            if m + n == 0 and m:
                add("K2", w * m)
    return out


def eval_elem(elem, q=Q0):
    """Evaluate a package LieElem at ``q`` into the oracle label format."""
    from qdiffops.qcoeff import eval_at

    out = {}
    for key, c in elem.terms.items():
        name = type(key).__name__
        if name == "E":
            label = ("E", key.k, key.l)
        elif name == "Gbar":
            label = ("Gbar", key.a, key.m)
        elif name == "G":
            label = (key.a, key.m)
        elif name == "Central":
            label = key.name
        else:
            label = key
        out[label] = eval_at(c, q)
    return {k: v for k, v in out.items() if v}
