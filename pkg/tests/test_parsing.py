import pytest
from hypothesis import given
from hypothesis import strategies as st

from qdiffops.liealg import C1, C2, E, G, K1, Loop, LieElem, basis, get_algebra
from qdiffops.parsing import ParseError, parse_element, parse_key, parse_scalar, parse_state
from qdiffops.pbwmod import act, tail_bottom, ind_spec, vacuum_spec, verma_spec
from qdiffops.qcoeff import q_pow


def test_element_examples():
    assert parse_element("E[1,0]") == basis(E(1, 0))
    assert parse_element("(q^-1 - q) * E[1,1]") == basis(E(1, 1), q_pow(-1) - q_pow(1))
    assert parse_element("E[0,0]") == LieElem()
    assert parse_element("E[0,0]").is_zero()


def test_scalar_forms():
    assert parse_scalar("1*q^-1 + -1*q^1") == q_pow(-1) - q_pow(1)
    assert parse_scalar("(q + 1)^2") == q_pow(2) + q_pow(1) * 2 + 1
    assert parse_scalar("q^(-2)/3") == q_pow(-2) * parse_scalar("1/3")
    assert parse_scalar("-1/2") == parse_scalar("-2/4")


def test_loops_and_centrals():
    x = parse_element("(G[0,1] - G[0,-1])@t^-1 + K1")
    assert x == basis(Loop(G(0, 1), -1)) - basis(Loop(G(0, -1), -1)) + basis(K1)
    assert parse_element("c1 + 2*c2") == basis(C1) + basis(C2, 2)
    assert parse_key("(G[1,2])@t^3") == Loop(G(1, 2), 3)


@pytest.mark.parametrize("bad,pos", [("E[1,", 4), ("E[1,0] +", 8), ("3 $ q", 2), ("E[1,0] * E[0,1]", 7), ("Foo", 0)])
def test_syntax_errors_report_position(bad, pos):
    with pytest.raises(ParseError) as info:
        parse_element(bad)
    assert info.value.pos == pos


def test_parse_key_rejects_combinations():
    with pytest.raises(ParseError):
        parse_key("E[1,0] + E[2,0]")
    with pytest.raises(ParseError):
        parse_key("2*E[1,0]")


@pytest.mark.parametrize("name", ["vq", "gl-inf", "A", "A-star", "hat-A", "hat-A-star", "tilde-A", "covariant"])
@given(seed=st.integers(0, 10_000))
def test_element_round_trip(name, seed):
    import random

    A = get_algebra(name)
    x = A.sample_elem(random.Random(seed), -4, 4, 3)
    assert parse_element(x.to_text()) == x


def test_state_expressions():
    spec = verma_spec(0, 1)
    w = parse_state("E[2,-1] E[1,-2] v", spec)
    expected = act(spec, basis(E(2, -1)), act(spec, basis(E(1, -2)), spec.vacuum()))
    assert w == expected
    assert parse_state(w.to_text(spec.bottom), spec) == w
    assert parse_state("2 * v - q * E[1,-1] v", spec) == spec.vacuum() * 2 - spec.monomial_state([E(1, -1)]) * q_pow(1)
    assert parse_state("0 * v", spec).is_zero()


def test_state_round_trip_other_bottoms():
    vac = vacuum_spec("tilde-A", 1, 1)
    w = parse_state("(G[1,0])@t^-1 (G[-1,0])@t^-2 vac", vac)
    assert parse_state(w.to_text(vac.bottom), vac) == w
    tail = ind_spec(tail_bottom(), 0, 1)
    w = parse_state("E[3,-1] E[0,-2] v1 + E[1,-1] v0", tail)
    assert parse_state(w.to_text(tail.bottom), tail) == w


def test_state_errors():
    spec = verma_spec(0, 1)
    with pytest.raises(ParseError):
        parse_state("E[1,-1]", spec)
    with pytest.raises(ParseError):
        parse_state("E[1,-1] w", spec)
    with pytest.raises(ParseError):
        parse_state("G[1,0] v", spec)
