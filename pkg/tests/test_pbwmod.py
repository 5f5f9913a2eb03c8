import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import vq_bracket, Q0
from qdiffops.liealg import C1, C2, K1, E, G, Loop, basis
from qdiffops.parsing import parse_state
from qdiffops.pbwmod import (
    BottomError, MatrixBottom, PBWState, RestrictednessError, SymbolicBottom, act, check_bottom_consistency,
    check_module_axiom, check_support_lemma, ind_spec, phi_intertwiner_check, phi_of, restrictedness_bound,
    spec_from_json, spec_to_json, tabulated_bottom, tail_bottom, vacuum_monomials, vacuum_spec, verma_spec,
)
from qdiffops.qcoeff import eval_at, q_pow
from qdiffops.suites import random_state

small = st.integers(-3, 3)


def b(key, c=1):
    return basis(key, c)


def is_normal(spec, w):
    return all(
        all(spec.is_creation(k) for k in mono)
        and [spec.order(k) for k in mono] == sorted(spec.order(k) for k in mono)
        for mono, _ in w.terms
    )


class TestActExamples:
    def test_verma_pairing(self):
        spec = verma_spec(0, 1)
        w = spec.monomial_state([E(-1, -2)])
        assert act(spec, b(E(1, 2)), w) == spec.vacuum() * 2
        assert act(spec, b(E(1, 2)), w).to_text(spec.bottom) == "2 * v"

    def test_central_scales(self):
        spec = verma_spec(q_pow(1), q_pow(-2) + 3)
        w = parse_state("E[2,-1] E[1,-2] v + 5 * v", spec)
        assert act(spec, b(C2), w) == w * (q_pow(-2) + 3)
        assert act(spec, b(C1), w) == w * q_pow(1)

    def test_vacuum_loop_example(self):
        spec = vacuum_spec("tilde-A", 1, 1)
        w = spec.monomial_state([Loop(G(-1, 0), -1)])
        got = act(spec, b(Loop(G(1, 0), 0)), w)
        expected = (spec.monomial_state([Loop(G(0, 1), -1)]) - spec.monomial_state([Loop(G(0, -1), -1)])
                    + spec.vacuum())
        assert got == expected

    def test_annihilated_by_high_modes(self):
        spec = verma_spec(0, 1)
        assert act(spec, b(E(1, 3)), spec.monomial_state([E(2, -1)])).is_zero()


@given(small, st.integers(-3, 3), small, st.integers(-3, -1))
def test_single_creation_against_oracle(k, l, r, s):
    # E[k,l] E[r,s] v computed from the defining bracket and highest-weight rules
    weights = {1: 2, -1: -3, 2: 5}
    spec = verma_spec(0, 1, weights)
    if (k, l) == (0, 0):
        return
    got = act(spec, b(E(k, l)), spec.monomial_state([E(r, s)]))
    br = vq_bracket(k, l, r, s)
    expected = {}
    if l < 0:
        lo, hi = sorted([(l, k), (s, r)])
        expected[((E(lo[1], lo[0]), E(hi[1], hi[0])), 0)] = 1
        if (l, k) > (s, r) and ("E", k + r, l + s) in br:
            expected[((E(k + r, l + s),), 0)] = br[("E", k + r, l + s)]
    else:
        if l == 0 and k in weights:
            expected[((E(r, s),), 0)] = weights[k]
        for key, c in br.items():
            if key == "c2":
                expected[((), 0)] = expected.get(((), 0), 0) + c
            elif key != "c1":
                _, a, bb = key
                if bb < 0:
                    expected[((E(a, bb),), 0)] = expected.get(((E(a, bb),), 0), 0) + c
                elif bb == 0 and a in weights:
                    expected[((), 0)] = expected.get(((), 0), 0) + c * weights[a]
    got_vals = {k2: eval_at(c, Q0) for k2, c in got.terms.items()}
    assert got_vals == {k2: v for k2, v in expected.items() if v}


def test_module_axiom_examples():
    spec = verma_spec(0, 1)
    x, y, v = b(E(1, 1)), b(E(-1, -1)), spec.vacuum()
    assert check_module_axiom(spec, x, y, v)
    assert act(spec, x, act(spec, y, v)) == v * 1
    assert check_module_axiom(spec, x, x, spec.monomial_state([E(2, -3)]))
    vac = vacuum_spec("tilde-A", 2, 3)
    assert check_module_axiom(vac, b(Loop(G(0, 1), 2)), b(Loop(G(0, 1), -3)), vac.vacuum())


SPECS = {
    "verma": lambda: verma_spec(0, 1, {1: 2, -2: q_pow(1)}),
    "vacuum": lambda: vacuum_spec("tilde-A", 1, 2),
    "vacuum-hat": lambda: vacuum_spec("hat-A", 0, q_pow(1)),
    "tabulated": lambda: ind_spec(tabulated_bottom(), 0, 1),
    "tail": lambda: ind_spec(tail_bottom(), 0, 3),
}


@pytest.mark.parametrize("name", list(SPECS))
@settings(max_examples=40)
@given(seed=st.integers(0, 2**32))
def test_module_axiom_and_normal_form(name, seed):
    spec = SPECS[name]()
    rng = random.Random(seed)
    A = spec.algebra
    x, y = A.sample_elem(rng, -3, 3, 2), A.sample_elem(rng, -3, 3, 2)
    w = random_state(spec, rng, 4)
    assert check_module_axiom(spec, x, y, w)
    assert is_normal(spec, act(spec, x, w))


@settings(max_examples=40)
@given(seed=st.integers(0, 2**32), m=st.integers(1, 3))
def test_vacuum_grading(seed, m):
    spec = vacuum_spec("tilde-A", 1, 1)
    rng = random.Random(seed)
    w = spec.monomial_state([Loop(G(rng.randint(-2, 2), rng.randint(-2, 2)), -rng.randint(1, 2))])
    d = spec.depth(w)
    x = b(Loop(G(rng.randint(-2, 2), rng.randint(-2, 2)), -m))
    out = act(spec, x, w)
    assert all(sum(-k.i for k in mono) == d + m for mono, _ in out.terms)


def test_depth():
    spec = verma_spec(0, 1)
    assert spec.depth(spec.monomial_state([E(2, -1), E(1, -2)])) == 3
    vac = vacuum_spec("tilde-A", 0, 1)
    assert vac.depth(vac.monomial_state([Loop(G(0, 1), -1), Loop(G(1, 0), -3)])) == 4


class TestBottomConsistency:
    def test_zero_bottom(self):
        assert check_bottom_consistency(verma_spec(0, 1))["consistent"]
        assert check_bottom_consistency(verma_spec(0, 0))["consistent"]

    def test_level_forced_to_vanish(self):
        rep = check_bottom_consistency(verma_spec(1, 1))
        assert not rep["consistent"]
        assert ["E[-1,0]", "E[1,0]"] in rep["violations"]
        assert any("c1" in f for f in rep["forced"])

    def test_tabulated_and_tail(self):
        assert check_bottom_consistency(ind_spec(tabulated_bottom(), 0, 1))["consistent"]
        assert check_bottom_consistency(ind_spec(tail_bottom(), 0, 1), 3)["consistent"]
        assert not check_bottom_consistency(ind_spec(tail_bottom(), 1, 1))["consistent"]

    def test_noncommuting_table_is_flagged(self):
        bad = MatrixBottom(2, {E(1, 0): [[0, 1], [0, 0]], E(2, 0): [[0, 0], [1, 0]]})
        rep = check_bottom_consistency(ind_spec(bad, 0, 0))
        assert ["E[1,0]", "E[2,0]"] in rep["violations"]

    def test_symbolic_bottom_rejected(self):
        with pytest.raises(BottomError):
            check_bottom_consistency(ind_spec(SymbolicBottom(1)))


class TestRestrictedness:
    def test_vacuum_vector(self):
        spec = verma_spec(0, 1)
        assert restrictedness_bound(spec, spec.vacuum(), range(-4, 5)) == 1

    def test_depth_three(self):
        spec = verma_spec(0, 1)
        w = parse_state("E[2,-1] E[1,-2] v", spec)
        t = restrictedness_bound(spec, w, range(-4, 5))
        assert t == 4
        for k in range(-4, 5):
            for l in range(4, 9):
                assert act(spec, b(E(k, l)), w).is_zero()

    def test_tail_bottom(self):
        spec = ind_spec(tail_bottom(), 0, 1)
        w = parse_state("E[0,-2] v1", spec)
        assert restrictedness_bound(spec, w, range(-4, 5)) == 4
        # the bound is sharp for this bottom: E[k,3] reaches E[k,1] on v1
        assert act(spec, b(E(1, 3)), w)

    def test_failure_is_reported(self):
        spec = ind_spec(MatrixBottom(1, {E(1, 2): [[1]]}, cutoff=0), 0, 0)
        with pytest.raises(RestrictednessError):
            restrictedness_bound(spec, spec.vacuum(), [1])


def support_scalar(t, kp, k1, j1, i1, j):
    e = k1 * (t + j) + j1 * kp
    return (q_pow(e) - q_pow(-e)) ** i1


class TestSupportLemma:
    def test_examples(self):
        assert check_support_lemma(1, 0, 1, 1, 2, 3)["result"] == "0"
        rep = check_support_lemma(1, 0, 1, 1, 2, 2)
        assert rep["ok"] and "E[2,1]" in rep["result"]
        rep = check_support_lemma(2, 3, 1, 1, 0, 0)
        assert rep["ok"] and rep["result"] == "1 * v{E[3,2]}"

    @given(st.integers(1, 2), st.integers(-2, 2), st.integers(-2, 2), st.integers(1, 3), st.integers(0, 3),
           st.integers(0, 2))
    def test_scalar_matches_closed_form(self, t, kp, k1, j1, i1, extra):
        j = i1 * j1 + extra
        rep = check_support_lemma(t, kp, k1, j1, i1, j)
        assert rep["ok"]
        if extra == 0:
            assert rep["scalar"] == support_scalar(t, kp, k1, j1, i1, j).to_text()

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            check_support_lemma(1, 0, 1, 2, 2, 3)
        with pytest.raises(ValueError):
            check_support_lemma(0, 0, 1, 1, 1, 1)


class TestPhi:
    def test_examples(self):
        spec = vacuum_spec("tilde-A", 5, 1)
        assert phi_of(5, 1, spec.vacuum()) == spec.vacuum()
        w = spec.monomial_state([Loop(G(0, 2), -1)])
        assert phi_of(5, 1, w) == w - spec.vacuum() * 5
        u = spec.monomial_state([Loop(G(1, 0), -1)])
        assert phi_of(5, 1, u) == u

    @pytest.mark.parametrize("levels", [(0, 1), (1, 1), (q_pow(1), -2)])
    def test_intertwines(self, levels):
        rep = phi_intertwiner_check(*levels, max_degree=2, n_generators=25, seed=3)
        assert rep["failures"] == []
        assert rep["identity_on_states"] == (levels[0] == 0)

    def test_not_identity_when_level_nonzero(self):
        spec = vacuum_spec("tilde-A", 2, 1)
        w = spec.monomial_state([Loop(G(0, 1), -1), Loop(G(0, 2), -1)])
        assert phi_of(2, 1, w) != w

    def test_monomial_enumeration(self):
        spec = vacuum_spec("tilde-A", 0, 1)
        states = vacuum_monomials(spec, [G(0, 1), G(1, 0)], 2)
        # 1, a(-1) x2, a(-2) x2, a(-1)b(-1) pairs x3
        assert len(states) == 1 + 2 + 2 + 3


def test_spec_json_round_trip(tmp_path):
    data = {"algebra": "vq", "levels": {"l1": "0", "l2": "q^2"}, "cutoff_t": 0, "dim": 2,
            "action": [{"key": "E[1,0]", "matrix": [["0", "1"], ["0", "0"]]},
                       {"key": "E[2,0]", "matrix": [["q", "0"], ["0", "q"]]}]}
    spec = spec_from_json(json.dumps(data))
    assert spec.level(C2) == q_pow(2)
    again = spec_from_json(spec_to_json(spec))
    w = parse_state("E[1,-1] v1", spec)
    assert act(spec, b(E(2, 1)), w) == act(again, b(E(2, 1)), w)
    assert check_bottom_consistency(spec)["consistent"]
    assert spec_from_json({"algebra": "vq", "preset": "tail"}).cutoff == 1
    assert spec_from_json({"algebra": "tilde-A", "levels": {"l1": 1, "l2": 2}}).level(K1) == 1
    with pytest.raises(ValueError):
        spec_from_json({"algebra": "vq", "action": [{"key": "E[1,-1]", "matrix": [[1]]}]})
    with pytest.raises(ValueError):
        spec_from_json({"algebra": "A"})


def test_state_arithmetic():
    spec = verma_spec(0, 1)
    v = spec.vacuum()
    w = spec.monomial_state([E(1, -1)])
    assert (v + w) - w == v
    assert (v * 0).is_zero() and not v * 2 == v
    assert PBWState() == 0
    assert len(v + w) == 2
    assert json.loads(json.dumps((v + w * q_pow(1)).to_json(spec.bottom)))
