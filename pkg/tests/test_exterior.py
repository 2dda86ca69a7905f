import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodgestar.exterior import (
    Form,
    FormSyntaxError,
    basis_masks,
    decompose,
    e0,
    eta,
    format_form,
    levi_civita,
    merge_sign,
    parse_form,
    recompose,
    sort_sign,
    wedge,
)

from strategies import forms


def B(dim, *idx, c=1):
    return Form.basis(dim, idx, c)


# -- wedge -------------------------------------------------------------------


def test_wedge_antisymmetry():
    assert wedge(B(4, 1), B(4, 0)) == -B(4, 0, 1)


def test_wedge_nilpotent_generator():
    w = wedge(B(4, 0), B(4, 0))
    assert w.is_zero() and w.degree == 2


def test_wedge_disjoint_sorted():
    assert wedge(B(4, 0, 1), B(4, 2, 3)) == B(4, 0, 1, 2, 3)


def test_wedge_dimension_mismatch():
    with pytest.raises(ValueError):
        wedge(B(3, 1), B(4, 1))


def test_wedge_degree_overflow_is_zero():
    w = wedge(Form.zero(3, 2), Form.zero(3, 2))
    assert w.is_zero()


@pytest.mark.parametrize("d", range(1, 7))
def test_graded_commutativity_exhaustive(d):
    for p, q in itertools.product(range(d + 1), repeat=2):
        for ma in basis_masks(d, p):
            for mb in basis_masks(d, q):
                a, b = Form(d, p, {ma: 1}), Form(d, q, {mb: 1})
                assert wedge(a, b) == wedge(b, a).scale((-1) ** (p * q))


@given(forms(max_dim=5), st.data())
def test_wedge_associative(a, data):
    b = data.draw(forms(dim=a.dim))
    c = data.draw(forms(dim=a.dim))
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(forms(max_dim=5), st.data())
def test_wedge_bilinear(a, data):
    b = data.draw(forms(dim=a.dim, degree=a.degree))
    c = data.draw(forms(dim=a.dim))
    assert wedge(a + b, c) == wedge(a, c) + wedge(b, c)


def test_merge_sign_matches_sort():
    for a, b in [(0b0010, 0b0001), (0b0101, 0b1010), (0b0011, 0b1100)]:
        idx = [i for i in range(4) if a >> i & 1] + [i for i in range(4) if b >> i & 1]
        assert merge_sign(a, b) == sort_sign(idx)[0]


# -- eta / decompose -----------------------------------------------------------


@pytest.mark.parametrize("p,sign", [(0, 1), (1, -1), (2, 1), (3, -1)])
def test_eta_sign(p, sign):
    a = Form(4, p, {basis_masks(4, p)[0]: 3})
    assert eta(a) == a.scale(sign)


@given(forms())
def test_eta_involution(a):
    assert eta(eta(a)) == a


def test_decompose_direct_split():
    s, r = decompose(B(4, 0, 1) + B(4, 1, 2))
    assert s == B(4, 1) and r == B(4, 1, 2)


def test_decompose_purely_spatial():
    r = B(4, 1, 2, c=Fraction(2, 3)) + B(4, 2, 3)
    s, r2 = decompose(r)
    assert s.is_zero() and r2 == r


@given(forms())
def test_decompose_roundtrip(a):
    s, r = decompose(a)
    assert s.is_spatial() and r.is_spatial()
    assert recompose(s, r) == a
    if a.degree:
        assert wedge(e0(a.dim), s) + r == a
    else:
        assert s.is_zero()


# -- Levi-Civita -------------------------------------------------------------


@pytest.mark.parametrize(
    "idx,val", [((0, 1, 2, 3), 1), ((1, 0, 2, 3), -1), ((0, 0, 2, 3), 0), ((3, 2, 1, 0), 1), ((1, 2, 3, 0), -1)]
)
def test_levi_civita_values(idx, val):
    assert levi_civita(idx) == val


def _compose(s, t):
    return tuple(s[t[i]] for i in range(len(t)))


def _sign_by_inversions(t):
    inv = sum(1 for i in range(len(t)) for j in range(i + 1, len(t)) if t[i] > t[j])
    return -1 if inv % 2 else 1


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.permutations(range(n)), st.permutations(range(n)))))
def test_levi_civita_composition(st_pair):
    s, t = st_pair
    assert levi_civita(s) * levi_civita(_compose(s, t)) == _sign_by_inversions(t)


# -- literal grammar -----------------------------------------------------------


def test_parse_example():
    a = parse_form("dt^dx + 2/3 dy^dz")
    assert a == B(4, 0, 1) + B(4, 2, 3, c=Fraction(2, 3))


def test_parse_permuted_factors_fold_sign():
    assert parse_form("dy^dx") == -B(4, 1, 2)


def test_parse_scalar_and_general_n():
    assert parse_form("1") == Form.scalar(4, 1)
    assert parse_form("-2/5 dx1^dx5", n=5) == B(6, 1, 5, c=Fraction(-2, 5))


@pytest.mark.parametrize("bad", ["", "dt^", "dt + dx^dy", "dq", "dx4", "1/0 dt", "dt dx ++"])
def test_parse_errors(bad):
    with pytest.raises(FormSyntaxError):
        parse_form(bad)


def test_aliases_only_in_three_space_dims():
    with pytest.raises(FormSyntaxError):
        parse_form("dx", n=2)


def test_format_examples():
    assert format_form(-B(4, 0, 1)) == "-dt^dx"
    assert format_form(Form.zero(4, 2)) == "0"
    assert format_form(B(4, 0, 1) + B(4, 2, 3, c=Fraction(2, 3))) == "dt^dx + 2/3 dy^dz"


@given(st.integers(1, 5).flatmap(lambda n: forms(dim=n + 1)))
def test_literal_roundtrip(a):
    text = format_form(a)
    assert parse_form(text, n=a.dim - 1, degree=a.degree) == a


def test_literal_roundtrip_random_seeded():
    rng = random.Random(3)
    for _ in range(200):
        d = rng.randint(2, 6)
        p = rng.randint(0, d)
        masks = basis_masks(d, p)
        a = Form(d, p, {m: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for m in rng.sample(masks, rng.randint(0, len(masks)))})
        assert parse_form(format_form(a), n=d - 1, degree=p) == a


# -- Form invariants -------------------------------------------------------------


def test_zero_coefficients_dropped():
    a = Form(3, 1, {0b001: 0, 0b010: Fraction(1, 2)})
    assert a.terms == {0b010: Fraction(1, 2)}


def test_bad_keys_rejected():
    with pytest.raises(ValueError):
        Form(3, 1, {0b011: 1})
    with pytest.raises(ValueError):
        Form(3, 1, {0b1000: 1})


def test_zero_form_keeps_degree():
    z = Form.zero(5, 3)
    assert z.degree == 3 and eta(z).degree == 3
