import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from ncqm.exact import Coefficient, ExactValue
from ncqm.quadrature import integrate_r3_numeric
from ncqm.symfield import (
    DimensionMismatchError,
    DivergentIntegralError,
    MixedEnvelopeError,
    ScalarField,
    SingularPointError,
    angular_moment,
    integrate_r3,
)

x, y, z = ScalarField.coordinates(3)
R = ScalarField.radial(3, 1)
G = ScalarField.gaussian(3, 1)
E = ScalarField.exponential(3, 1)


@st.composite
def terms(draw, envelopes=((0, 0), (Fraction(1, 2), 0), (1, 0), (0, 1)), rads=(-1, 0, 1, 2)):
    re = draw(st.integers(-3, 3))
    im = draw(st.integers(-2, 2))
    assume(re or im)
    mono = tuple(draw(st.integers(0, 2)) for _ in range(3))
    beta, gamma = draw(st.sampled_from(envelopes))
    return ScalarField.term(3, Coefficient(re, im), mono, draw(st.sampled_from(rads)), beta, gamma)


def fields(**kw):
    return st.lists(terms(**kw), min_size=1, max_size=4).map(
        lambda ts: sum(ts[1:], ts[0]))


smooth_envelopes = ((Fraction(1, 2), 0), (1, 0), (0, 1))


# -- worked examples ----------------------------------------------------

def test_add_examples():
    assert (x + (-x)).is_zero()
    assert R + R == R.scale(2)
    assert len(x * G + x * E) == 2


def test_mul_examples():
    assert [k[0] for k, _ in (x * x).terms()] == [(2, 0, 0)]
    assert R * ScalarField.radial(3, -1) == 1
    assert G * G == ScalarField.gaussian(3, 2)


def test_partial_examples():
    assert (x * x).partial(0) == x.scale(2)
    assert R.partial(0) == x * ScalarField.radial(3, -1)
    assert E.partial(0) == -(x * ScalarField.radial(3, -1) * E)
    p, h = (0.3, 0.5, 0.7), 1e-5
    fd = (E.evaluate((p[0] + h, p[1], p[2])) - E.evaluate((p[0] - h, p[1], p[2]))) / (2 * h)
    assert abs(fd - E.partial(0).evaluate(p)) < 1e-6 * abs(fd)


def test_evaluate_examples():
    assert (x * x + y * y).evaluate((1, 2, 0)) == pytest.approx(5)
    assert R.evaluate((3, 4, 0)) == pytest.approx(5)
    assert G.evaluate((1, 1, 1)).real == pytest.approx(math.exp(-3))
    with pytest.raises(SingularPointError):
        ScalarField.radial(3, -1).evaluate((0, 0, 0))


def test_integrate_examples():
    assert integrate_r3(G) == ExactValue.basis(1, 3)
    assert integrate_r3(x * G).is_zero()
    assert integrate_r3(R * G) == ExactValue.basis(2, 2)
    assert integrate_r3(ScalarField.radial(3, 2) * G) == ExactValue.basis(Fraction(3, 2), 3)
    assert abs(complex(integrate_r3(R * G)) - integrate_r3_numeric(R * G)) < 1e-10 * 2 * math.pi


def test_integrate_errors():
    with pytest.raises(MixedEnvelopeError):
        integrate_r3(G * E)
    with pytest.raises(DivergentIntegralError):
        integrate_r3(x)
    with pytest.raises(DivergentIntegralError):
        integrate_r3(ScalarField.radial(3, -4) * G)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        x + ScalarField.coordinate(2, 0)


def test_canonical_form_uses_r_squared():
    assert x * x + y * y + z * z == ScalarField.radial(3, 2)
    assert (z * z * G).partial(2) == (z.scale(2) - (z * z * z).scale(2)) * G


def test_angular_moment_values():
    assert angular_moment(0, 0, 0) == 1
    assert angular_moment(2, 0, 0) == Fraction(1, 3)
    assert angular_moment(2, 2, 0) == Fraction(1, 15)
    assert angular_moment(1, 0, 0) == 0


def test_text_golden():
    f = (R * R).scale(Coefficient(1, 2)) * ScalarField.gaussian(3, 2) - x * ScalarField.radial(3, -1)
    assert f.to_text() == "(1+2i)*r^2*exp(-2*r^2) + -1*x1*r^-1"


# -- properties -------------------------------------------------------

@given(fields(), fields(), st.integers(0, 2))
def test_leibniz(f, g, i):
    assert (f * g).partial(i) == f.partial(i) * g + f * g.partial(i)


@given(fields(), st.integers(0, 2), st.integers(0, 2))
def test_partials_commute(f, i, j):
    assert f.partial(i).partial(j) == f.partial(j).partial(i)


@given(fields(), st.integers(0, 2))
def test_finite_differences(f, i):
    p = [0.3, -0.5, 0.7]
    h = 1e-5
    up, dn = list(p), list(p)
    up[i] += h
    dn[i] -= h
    fd = (f.evaluate(up) - f.evaluate(dn)) / (2 * h)
    exact = f.partial(i).evaluate(p)
    scale = max(abs(exact), sum(abs(complex(c)) for _, c in f.terms()))
    assert abs(fd - exact) <= 1e-6 * scale


@given(fields())
def test_text_round_trip(f):
    assert ScalarField.from_text(3, f.to_text()) == f


@given(fields(envelopes=smooth_envelopes, rads=(0, 1, 2)), st.integers(0, 2))
def test_parity(f, i):
    # the odd part under x_i -> -x_i integrates to zero
    mono_odd = ScalarField.zero(3)
    for (mono, s, b, g), c in f.terms():
        if mono[i] % 2:
            mono_odd = mono_odd + ScalarField.term(3, c, mono, s, b, g)
    assert integrate_r3(mono_odd).is_zero()


def _magnitude(f):
    # integral of sum |c| r^(|a|+s) env, which bounds every term since |x^a| <= r^|a|
    total = 0.0
    for (mono, s, b, g), c in f.terms():
        total += abs(complex(c)) * float(integrate_r3(ScalarField.term(3, 1, None, sum(mono) + s, b, g)))
    return total


def _assert_oracle(f):
    exact = complex(integrate_r3(f))
    num = integrate_r3_numeric(f)
    assert abs(num - exact) <= 1e-8 * max(abs(exact), 1e-3 * _magnitude(f))


@given(fields(envelopes=((1, 0),), rads=(-1, 0, 1, 2)))
def test_oracle_gaussian(f):
    _assert_oracle(f)


@given(fields(envelopes=((0, 1),), rads=(-1, 0, 1, 2)))
def test_oracle_exponential(f):
    _assert_oracle(f)


def test_oracle_fixed_battery():
    battery = [
        (x * x * y * y + z) * G,
        R * (1 + x * x) * ScalarField.gaussian(3, Fraction(1, 2)),
        ScalarField.radial(3, -1) * (z * z + 2) * E,
        (x * x * x * x - 3 * y * y) * ScalarField.exponential(3, Fraction(2, 3)),
    ]
    for f in battery:
        exact = complex(integrate_r3(f))
        assert abs(integrate_r3_numeric(f) - exact) <= 1e-8 * abs(exact)
