import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import a_via_matrices, eval_elem, vq_bracket
from qdiffops.liealg import (
    C1, C2, CATALOGUE, K1, K2, PRIMARY_ALGEBRAS, AlgebraError, E, Eij, G, LieElem, Loop, basis, bracket,
    check_antisymmetry, check_invariance, check_jacobi, form, g_to_gl, get_algebra, gl_to_g,
)
from qdiffops.qcoeff import q_pow

idx = st.integers(-4, 4)


def b(key, c=1):
    return basis(key, c)


class TestExamples:
    def test_vq_brackets(self):
        vq = get_algebra("vq")
        assert bracket(vq, b(E(1, 0)), b(E(0, 1))) == b(E(1, 1), q_pow(-1) - q_pow(1))
        assert bracket(vq, b(E(1, 2)), b(E(-1, -2))) == b(C1) + b(C2, 2)

    def test_a_bracket_matches_gl(self):
        A, gl = get_algebra("A"), get_algebra("gl-inf")
        assert bracket(A, b(G(1, 2)), b(G(0, 1))) == b(G(1, 2))
        assert g_to_gl(G(1, 2)) == Eij(3, 1) and g_to_gl(G(0, 1)) == Eij(1, 1)
        assert bracket(gl, b(Eij(3, 1)), b(Eij(1, 1))) == b(Eij(3, 1))

    def test_tilde_a_bracket(self):
        T = get_algebra("tilde-A")
        got = bracket(T, b(Loop(G(1, 0), 2)), b(Loop(G(-1, 0), -3)))
        assert got == b(Loop(G(0, 1), -1)) - b(Loop(G(0, -1), -1)) + b(K1)

    def test_forms(self):
        A, As = get_algebra("A"), get_algebra("A-star")
        assert form(A, b(G(1, 2)), b(G(-1, 2))) == 1
        assert form(A, b(G(1, 2)), b(G(-1, 3))) == 0
        assert form(As, b(K1), b(G(0, 0))) == 0

    def test_jacobi_examples(self):
        vq, T = get_algebra("vq"), get_algebra("tilde-A")
        assert check_jacobi(vq, b(E(1, 1)), b(E(2, -1)), b(E(-3, 0)))
        x, y = b(E(1, 1)), b(E(2, 3))
        assert check_jacobi(vq, x, x, y)
        assert check_jacobi(T, b(Loop(G(1, 0), 1)), b(Loop(G(-1, 0), -1)), b(Loop(G(0, 1), 0)))

    def test_invariance_examples(self):
        A = get_algebra("A")
        x, y, z = b(G(1, 2)), b(G(0, 1)), b(G(-1, 2))
        assert form(A, bracket(A, x, y), z) == 1 == form(A, x, bracket(A, y, z))
        assert check_invariance(A, x, y, z)
        assert check_invariance(A, b(G(3, 0)), b(G(1, 4)), b(G(2, -3)))
        assert check_invariance(A, b(G(2, 0)), b(G(-1, 1)), b(G(-1, 1)))


def test_e00_is_zero_at_construction():
    assert LieElem({E(0, 0): 5}).is_zero()
    assert b(E(0, 0)) + b(E(1, 0)) == b(E(1, 0))


def test_parity_constraint():
    assert gl_to_g(Eij(3, 1)) == G(1, 2)
    with pytest.raises(AlgebraError):
        gl_to_g(Eij(2, 1))


def test_kind_mismatch():
    with pytest.raises(AlgebraError):
        bracket(get_algebra("vq"), b(G(1, 0)), b(E(1, 0)))
    with pytest.raises(AlgebraError):
        bracket(get_algebra("hat-A"), b(Loop(K1, 1)), b(K2))
    with pytest.raises(AlgebraError):
        form(get_algebra("vq"), b(E(1, 0)), b(E(0, 1)))
    with pytest.raises(AlgebraError):
        get_algebra("nope")


def test_loop_k1_is_central_in_hat_a_star():
    H = get_algebra("hat-A-star")
    for i in range(-2, 3):
        assert bracket(H, b(Loop(K1, i)), b(Loop(G(1, 0), 2))).is_zero()


@given(idx, idx, idx, idx)
def test_vq_bracket_against_oracle(k, l, r, s):
    if (k, l) == (0, 0) or (r, s) == (0, 0):
        return
    got = bracket(get_algebra("vq"), b(E(k, l)), b(E(r, s)))
    assert eval_elem(got) == vq_bracket(k, l, r, s)


@given(idx, idx)
def test_vq_delta_term(k, l):
    if (k, l) == (0, 0):
        return
    assert bracket(get_algebra("vq"), b(E(k, l)), b(E(-k, -l))) == b(C1, k) + b(C2, l)


@given(idx, idx, idx, idx)
def test_a_bracket_against_matrix_model(al, m, be, n):
    got = bracket(get_algebra("A"), b(G(al, m)), b(G(be, n)))
    assert eval_elem(got) == a_via_matrices(al, m, be, n)


@given(idx, idx, idx, idx)
def test_embedding_intertwines_brackets(al, m, be, n):
    A, gl = get_algebra("A"), get_algebra("gl-inf")
    lhs = bracket(A, b(G(al, m)), b(G(be, n))).map_keys(g_to_gl)
    rhs = bracket(gl, b(g_to_gl(G(al, m))), b(g_to_gl(G(be, n))))
    assert lhs == rhs


@pytest.mark.parametrize("name", PRIMARY_ALGEBRAS)
@given(seed=st.integers(0, 2**32))
def test_antisymmetry_and_jacobi_on_elements(name, seed):
    A = get_algebra(name)
    rng = random.Random(seed)
    x, y, z = (A.sample_elem(rng, -4, 4, 3) for _ in range(3))
    assert check_antisymmetry(A, x, y)
    assert check_jacobi(A, x, y, z)


@pytest.mark.parametrize("name", PRIMARY_ALGEBRAS)
def test_centrals_bracket_to_zero(name):
    A = get_algebra(name)
    rng = random.Random(1)
    centrals = [k for k in (C1, C2, K1, K2) if A.key_ok(k) and A.is_central(k)]
    for c in centrals:
        for _ in range(50):
            assert bracket(A, b(c), b(A.sample_key(rng))).is_zero()


@pytest.mark.parametrize("name", ["A", "gl-inf", "A-star"])
@given(seed=st.integers(0, 2**32))
def test_form_symmetric_and_invariant(name, seed):
    A = get_algebra(name)
    rng = random.Random(seed)
    x, y, z = (A.sample_elem(rng, -3, 3, 2) for _ in range(3))
    assert form(A, x, y) == form(A, y, x)
    assert check_invariance(A, x, y, z)


def test_catalogue_names():
    assert set(PRIMARY_ALGEBRAS) <= set(CATALOGUE)
    assert get_algebra("covariant").name == "covariant"
