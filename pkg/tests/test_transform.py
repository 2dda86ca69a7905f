import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgestar import linalg
from hodgestar.checks import random_adapted_change, random_invertible, random_rotation
from hodgestar.exterior import Form, format_form, parse_form
from hodgestar.hodge import BASIC_VARIANTS, StarVariant, star_closed, variants_for
from hodgestar.structures import Kind, make, make_carrollian, make_galilean, validate_adapted
from hodgestar.transform import (
    AffineMap,
    FrameChange,
    all_basis_forms,
    carroll_boost,
    cayley_rotation,
    check_invariance,
    check_naturality,
    galilei_boost,
    plane_rotation,
    pullback_form,
    pullback_structure,
    rotation,
    structure_fixed,
)

from strategies import forms, rationals

vectors3 = st.lists(rationals, min_size=3, max_size=3)


def test_zero_boosts_are_identity():
    assert galilei_boost([0, 0, 0]).matrix == linalg.identity(4)
    assert carroll_boost([0, 0, 0]).matrix == linalg.identity(4)


def test_galilei_boost_entry():
    m = galilei_boost([1, 0, 0]).matrix
    assert m[1][0] == 1
    assert sum(x != 0 for row in m for x in row) == 5


def test_carroll_boost_entry():
    m = carroll_boost([1, 0, 0]).matrix
    assert m[0][1] == 1
    assert sum(x != 0 for row in m for x in row) == 5


@given(vectors3, vectors3)
def test_galilei_boosts_compose_additively(v, w):
    vw = [a + b for a, b in zip(v, w)]
    assert (galilei_boost(v) @ galilei_boost(w)).matrix == galilei_boost(vw).matrix


@given(vectors3)
def test_boost_determinants(v):
    assert galilei_boost(v).det() == 1
    assert carroll_boost(v).det() == 1


def test_pythagorean_rotation():
    r = rotation([[Fraction(3, 5), Fraction(-4, 5)], [Fraction(4, 5), Fraction(3, 5)]])
    assert r.det() == 1


def test_rotation_rejects_reflection_and_non_orthogonal():
    with pytest.raises(ValueError):
        rotation([[1, 0], [0, -1]])
    with pytest.raises(ValueError):
        rotation([[1, 1], [0, 1]])


def test_plane_rotation_and_cayley():
    r = plane_rotation(3, 0, 2, Fraction(5, 13), Fraction(12, 13))
    assert rotation(r).det() == 1
    c = cayley_rotation([[0, Fraction(1, 2)], [Fraction(-1, 2), 0]])
    assert linalg.matmul(linalg.transpose(c), c) == linalg.identity(2)
    with pytest.raises(ValueError):
        cayley_rotation([[0, 1], [1, 0]])


def test_singular_frame_change_rejected():
    with pytest.raises(ValueError):
        FrameChange([[1, 1], [1, 1]])


def test_affine_apply():
    phi = AffineMap(galilei_boost([2, 0, 0]), (0, 1, 0, 0))
    assert phi.apply([3, 0, 0, 0]) == (3, 7, 0, 0)


# -- pullbacks -------------------------------------------------------------------


@given(forms(max_dim=5))
def test_identity_pullback(a):
    assert pullback_form(a, FrameChange(linalg.identity(a.dim))) == a


@given(vectors3)
def test_galilei_boost_fixes_dt(v):
    dt = parse_form("dt")
    assert pullback_form(dt, galilei_boost(v)) == dt


def test_carroll_boost_moves_dt():
    v = [Fraction(1, 2), 0, 1]
    assert format_form(pullback_form(parse_form("dt"), carroll_boost(v))) == "dt - 1/2 dx - dz"


@given(forms(max_dim=4), st.data())
def test_pullback_is_wedge_homomorphism(a, data):
    b = data.draw(forms(dim=a.dim))
    change = random_invertible(random.Random(data.draw(st.integers(0, 10**6))), a.dim)
    assert pullback_form(a ^ b, change) == pullback_form(a, change) ^ pullback_form(b, change)


def test_pullback_composes_contravariantly():
    rng = random.Random(11)
    a = parse_form("dt^dx + 2 dy^dz - 1/3 dx^dz")
    f, g = random_invertible(rng, 4), random_invertible(rng, 4)
    assert pullback_form(pullback_form(a, f), g) == pullback_form(a, g @ f)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        pullback_form(parse_form("dt"), galilei_boost([1, 2]))


@given(vectors3)
def test_structures_fixed_by_matching_boost(v):
    g, c = make_galilean(3), make_carrollian(3)
    assert pullback_structure(g, galilei_boost(v)).key() == g.key()
    assert pullback_structure(c, carroll_boost(v)).key() == c.key()


def test_mismatched_boost_moves_structure():
    g = make_galilean(3)
    out = pullback_structure(g, carroll_boost([1, 0, 0]))
    assert out.tensor.entries != g.tensor.entries
    assert not out.canonical
    assert validate_adapted(out)


@pytest.mark.parametrize("kind", [Kind.GALILEAN, Kind.CARROLLIAN])
def test_group_closure(kind):
    rng = random.Random(5)
    s = make(kind, 3)
    for _ in range(30):
        change = random_adapted_change(rng, kind, 3, factors=6)
        assert change.det() == 1
        assert structure_fixed(s, change)
        assert change.is_galilei() if kind is Kind.GALILEAN else change.is_carroll()


def test_random_rotation_is_orthogonal():
    rng = random.Random(2)
    for n in (2, 3, 4):
        r = random_rotation(rng, n)
        assert linalg.matmul(linalg.transpose(r), r) == linalg.identity(n)
        assert linalg.det(r) == 1


# -- naturality ------------------------------------------------------------------


@pytest.mark.parametrize("variant", BASIC_VARIANTS)
def test_identity_naturality(variant):
    s = make(variant.kind, 3)
    for a in all_basis_forms(4):
        assert check_naturality(a, s, variant, FrameChange(linalg.identity(4)))


@pytest.mark.parametrize("kind", [Kind.GALILEAN, Kind.CARROLLIAN])
def test_invariance_under_adapted_changes(kind):
    rng = random.Random(17)
    s = make(kind, 3)
    for _ in range(10):
        change = random_adapted_change(rng, kind, 3)
        for v in variants_for(kind, 4):
            for a in all_basis_forms(4):
                assert check_invariance(a, s, v, change, star=star_closed)


def test_invariance_fails_for_the_wrong_group():
    # a Carroll boost does not preserve the Galilean structure, so the fixed-structure law breaks
    s = make_galilean(3)
    change = carroll_boost([1, 0, 0])
    assert not all(check_invariance(a, s, StarVariant.GALILEAN_H, change) for a in all_basis_forms(4))


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.integers(0, 10**6), st.sampled_from(BASIC_VARIANTS))
def test_general_naturality(d, seed, variant):
    change = random_invertible(random.Random(seed), d)
    s = make(variant.kind, d - 1)
    for a in all_basis_forms(d):
        assert check_naturality(a, s, variant, change)
