import numpy
import pytest
from hypothesis import given, strategies as st

from homconnections.exactlin import GF, QQ
from homconnections.qlaurent import (LaurentPoly, classification_check, commutation_check,
                                     homconn_from_element, inner_xi_connection,
                                     jackson_derivative, parse, q_integer, random_poly,
                                     scale_substitute)

half = QQ("1/2")


def P(text, field=QQ):
    return parse(text, field)


def test_scale_substitute():
    assert scale_substitute(P("u^2"), 2) == P("4*u^2")
    assert scale_substitute(P("u^-1 + 3*u"), 2) == P("1/2*u^-1 + 6*u")
    with pytest.raises(ValueError):
        scale_substitute(P("u"), 0)


def test_jackson():
    assert jackson_derivative(P("1"), 2).is_zero()
    assert jackson_derivative(P("u^2"), 2) == P("3*u")
    assert jackson_derivative(P("u^-1"), 2) == P("-1/2*u^-2")
    # q = 1 is the formal derivative
    assert jackson_derivative(P("u^3 + u^-2"), 1) == P("3*u^2 - 2*u^-3")
    assert q_integer(3, QQ(2)) == 7 and q_integer(3, 1) == 3


def test_element_connection_values():
    nabla = homconn_from_element(LaurentPoly({}), 2)
    assert nabla(P("u")) == P("1/2")
    assert nabla(P("1")).is_zero()
    a = P("u^2")
    assert homconn_from_element(a, 2)(P("1")) == a


def test_inner_connection_is_an_element_connection():
    q = QQ(3)
    a = LaurentPoly.monomial(-1, 1 / (q - 1))
    nabla = homconn_from_element(a, q)
    for n in range(-8, 9):
        m = LaurentPoly.monomial(n, 1)
        assert inner_xi_connection(q, m) == nabla(m)
    with pytest.raises(ValueError):
        inner_xi_connection(1, P("u"))


@pytest.mark.parametrize("q", ["2", "3", "1/2", "1", "-1"])
def test_classification_on_random_pairs(q):
    rng = numpy.random.default_rng(7)
    pairs = [(random_poly(rng), random_poly(rng)) for _ in range(40)]
    for a in (P("0"), P("u^-1 - 2*u^3"), random_poly(rng)):
        assert classification_check(homconn_from_element(a, QQ(q)), QQ(q), pairs).ok


def test_other_reading_fails_classification():
    q = QQ(2)

    def other(f):
        return jackson_derivative(f, q)._new(
            scale_substitute(jackson_derivative(f, q), 1 / q).coeffs)

    assert other(P("u")) == P("1")
    rep = classification_check(other, q, [(P("1"), P("u"))])
    assert not rep.ok


def test_commutation():
    probes = [P("1"), P("u"), P("u^-2 + 3")]
    for f in (P("u"), P("u^-1"), P("2*u^3 - u^-2 + 1")):
        assert commutation_check(f, QQ(2), probes).ok


def test_parse_grammar():
    assert P("3/2*u^-1 + u^2 - 4").coeffs == {-1: QQ("3/2"), 2: QQ(1), 0: QQ(-4)}
    assert P("-u") == LaurentPoly.monomial(1, -1)
    assert P("2 u^3") == P("2*u^3")
    assert P("u - u").is_zero()
    for bad in ("", "u u", "x", "3*", "u^"):
        with pytest.raises(ValueError):
            P(bad)


def test_parse_prime_field():
    F7 = GF(7)
    f = P("1/2*u + 8", F7)
    assert f.coeffs == {1: F7(4), 0: F7(1)}
    nabla = homconn_from_element(LaurentPoly({}, F7), F7(2))
    assert classification_check(nabla, F7(2), [(f, P("u^2", F7))]).ok


def test_string_round_trip():
    rng = numpy.random.default_rng(3)
    for _ in range(50):
        f = random_poly(rng)
        assert P(str(f)) == f
        assert LaurentPoly.from_json(f.to_json()) == f


polys = st.dictionaries(st.integers(-6, 6), st.fractions(max_denominator=6), max_size=5).map(
    lambda d: LaurentPoly({n: QQ(c.numerator) / c.denominator for n, c in d.items()}))
qs = st.sampled_from(["2", "3", "1/2", "-2", "1"]).map(QQ)


@given(polys, polys, qs)
def test_q_leibniz(f, g, q):
    # d_q(fg) = d_q(f) g(qu) + f d_q(g)
    lhs = jackson_derivative(f * g, q)
    rhs = jackson_derivative(f, q) * scale_substitute(g, q) + f * jackson_derivative(g, q)
    assert lhs == rhs


@given(polys, polys, polys, qs)
def test_classification_property(a, m, f, q):
    assert classification_check(homconn_from_element(a, q), q, [(m, f)]).ok
