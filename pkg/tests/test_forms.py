from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from vglab.errors import ParseError, SamplingExhausted
from vglab.forms import (
    Form,
    content_normalize,
    form_eval,
    form_from_vector,
    form_to_vector,
    format_form,
    monomial_basis,
    parse_form,
    random_form,
)
from vglab.points import ProjPoint, derive_rng, parse_point, points_on_line, random_point

coeffs = st.integers(-20, 20)


@st.composite
def forms(draw, nvars=3, degree=None):
    d = draw(st.integers(0, 4)) if degree is None else degree
    mons = monomial_basis(nvars - 1, d)
    cs = draw(st.lists(coeffs, min_size=len(mons), max_size=len(mons)))
    den = draw(st.integers(1, 5))
    return Form(nvars, d, {m: Fraction(c, den) for m, c in zip(mons, cs)})


points3 = st.lists(st.integers(-9, 9), min_size=3, max_size=3).filter(any)


def test_monomial_basis_counts_and_order():
    for n in range(1, 5):
        for d in range(0, 5):
            assert len(monomial_basis(n, d)) == comb(n + d, n)
    assert monomial_basis(2, 2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    assert monomial_basis(2, -1) == ()


def test_parse_example_and_round_trip():
    f = parse_form("3/2*x0^2*x1 - x2^3", 3)
    assert f.degree == 3
    assert f.terms == {(2, 1, 0): Fraction(3, 2), (0, 0, 3): Fraction(-1)}
    assert format_form(f) == "3/2*x0^2*x1 - x2^3"
    assert parse_form("0", 3, 2).is_zero()


@pytest.mark.parametrize("text", ["x0^2 + x1", "x3", "x0^", "2**x0", ""])
def test_parse_rejects_bad_input(text):
    with pytest.raises(ParseError):
        parse_form(text, 3)


def test_inhomogeneous_and_wrong_degree_rejected():
    with pytest.raises(ParseError):
        parse_form("x0*x1", 3, degree=3)


@given(forms())
def test_format_parse_round_trip(f):
    assert parse_form(format_form(f), 3, f.degree) == f


@given(forms(), forms(), points3)
def test_evaluation_is_a_ring_homomorphism(f, g, x):
    assert (f * g).eval(x) == f.eval(x) * g.eval(x)
    if f.degree == g.degree:
        assert (f + g).eval(x) == f.eval(x) + g.eval(x)
        assert (f - f).is_zero()


@given(forms(), points3, st.integers(-4, 4).filter(bool))
def test_homogeneity_under_scaling(f, x, lam):
    assert f.eval([lam * c for c in x]) == lam ** f.degree * f.eval(x)


@given(forms())
def test_euler_relation(f):
    x = [Form.var(3, i) for i in range(3)]
    if f.degree == 0:
        return
    total = x[0] * f.partial(0) + x[1] * f.partial(1) + x[2] * f.partial(2)
    assert total == f.scale(f.degree)


@given(forms())
def test_vector_round_trip(f):
    assert form_from_vector(2, f.degree, form_to_vector(f)) == f


def test_adding_mismatched_degrees_raises():
    with pytest.raises(ValueError):
        Form.var(3, 0) + Form.var(3, 0) * Form.var(3, 1)


def test_zero_forms_compare_equal_across_degrees():
    assert Form.zero(3, 2) == Form.zero(3, 5)
    assert Form.zero(3, 2) + Form.var(3, 1) == Form.var(3, 1)


def test_substitute_to_line():
    s, t = Form.var(2, 0), Form.var(2, 1)
    f = parse_form("x0*x1 - x2^2", 3)
    g = f.substitute([s, t, s + t])
    assert g == parse_form("-x0^2 - x0*x1 - x1^2", 2)


@given(st.lists(forms(degree=2), min_size=1, max_size=4))
def test_content_normalize(fs):
    out, scale = content_normalize(fs)
    nonzero = [f for f in out if f]
    if not nonzero:
        return
    cs = [c for f in out for c in f.terms.values()]
    assert all(c.denominator == 1 for c in cs)
    from math import gcd
    g = 0
    for c in cs:
        g = gcd(g, int(c))
    assert g == 1
    assert nonzero[0].leading()[1] > 0
    assert all(o == f.scale(scale) for o, f in zip(out, fs))


def test_projpoint_normalization():
    p = ProjPoint([Fraction(-1, 2), 1, Fraction(3, 4)])
    assert p.coords == (2, -4, -3)
    assert p == ProjPoint([-2, 4, 3]) == parse_point("(2:-4:-3)")
    assert str(p) == "(2:-4:-3)"
    with pytest.raises(ValueError):
        ProjPoint([0, 0, 0])


def test_derive_rng_is_deterministic_and_label_sensitive():
    a = [derive_rng(7, "x").random() for _ in range(2)]
    assert a[0] == a[1]
    assert derive_rng(7, "x").random() != derive_rng(7, "y").random()
    assert random_point(derive_rng(1, "p"), 2) == random_point(derive_rng(1, "p"), 2)


def test_random_point_exhaustion():
    with pytest.raises(SamplingExhausted):
        random_point(derive_rng(0), 2, avoid=lambda p: True)


def test_points_on_line():
    pts = points_on_line([1, 0, 0], [0, 1, 0], [(1, 1), (2, -1)])
    assert pts == [ProjPoint([1, 1, 0]), ProjPoint([2, -1, 0])]


def test_random_form_is_seeded():
    assert random_form(derive_rng(3), 3, 2) == random_form(derive_rng(3), 3, 2)


def test_form_eval_accepts_points():
    f = parse_form("x0*x1 + x2^2", 3)
    assert form_eval(f, ProjPoint([1, 2, 3])) == 11
