import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgestar.checks import minkowski_square_sign
from hodgestar.electro import build_F, read_dr, read_dS
from hodgestar.exterior import Form, basis_masks, e0, spatial_volume, volume, wedge
from hodgestar.hodge import (
    BASIC_VARIANTS,
    IncompatibleVariant,
    StarVariant,
    hat_star,
    mixed_epsilon,
    star_bruteforce,
    star_closed,
    star_convention,
    star_oracle,
    star_table_4d,
    variants_for,
)
from hodgestar.polynomial import Polynomial
from hodgestar.structures import Kind, make, make_carrollian, make_galilean, make_minkowski
from hodgestar.transform import all_basis_forms

from strategies import forms

V = StarVariant


def B(dim, *idx, c=1):
    return Form.basis(dim, idx, c)


def structure_for(variant, d):
    return make(variant.kind, d - 1)


# -- mixed epsilon ---------------------------------------------------------------


def test_galilean_h_epsilon_vanishes_on_temporal_upper():
    s = make_galilean(3)
    for p in range(1, 5):
        eps = mixed_epsilon(s, V.GALILEAN_H, p)
        assert all(not (upper & 1) for upper, _ in eps.components)


def test_carrollian_h_epsilon_vanishes_on_spatial_upper():
    s = make_carrollian(3)
    for p in range(0, 5):
        eps = mixed_epsilon(s, V.CARROLLIAN_H, p)
        assert all(upper & 1 for upper, _ in eps.components)


def test_galilean_k_epsilon_lower_all_temporal():
    eps = mixed_epsilon(make_galilean(2), V.GALILEAN_K, 2)
    assert eps.components
    assert all(lower == 0b001 for _, lower in eps.components)


def test_hand_contraction_d3():
    # omega^1_{02} = -eps_{102} = +1
    eps = mixed_epsilon(make_galilean(2), V.GALILEAN_H, 1)
    assert eps[(1,), (0, 2)] == 1
    assert eps[(1,), (2, 0)] == -1


def test_epsilon_cache_is_consistent_across_threads():
    s = make_minkowski(4)
    results = []

    def work():
        results.append(mixed_epsilon(s, V.MINKOWSKI_METRIC, 2).components)

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)


# -- examples --------------------------------------------------------------------


def test_galilean_star_of_e1_d3():
    assert star_oracle(B(3, 1), make_galilean(2), V.GALILEAN_H) == B(3, 0, 2)


def test_galilean_kills_temporal_legs_d4():
    s = make_galilean(3)
    for m in basis_masks(4, 2):
        if m & 1:
            assert star_oracle(Form(4, 2, {m: 1}), s, V.GALILEAN_H).is_zero()


E = (Polynomial.parse("x"), Polynomial.parse("t*y"), Polynomial.parse("2"))
BF = (Polynomial.parse("z^2"), Polynomial.parse("-1"), Polynomial.parse("x - y"))
NEG_B = tuple(-c for c in BF)
NEG_E = tuple(-c for c in E)


def test_minkowski_star_on_F():
    out = star_table_4d(build_F(E, BF), Kind.MINKOWSKI)
    s_hat = Form(4, 1, {m & ~1: c for m, c in out.terms.items() if m & 1})
    r_hat = Form(4, 2, {m: c for m, c in out.terms.items() if not m & 1})
    assert read_dr(s_hat) == NEG_B
    assert read_dS(r_hat) == NEG_E


def test_galilean_star_on_F():
    out = star_closed(build_F(E, BF), make_galilean(3), V.GALILEAN_H)
    assert all(m & 1 for m in out.terms)
    assert read_dr(Form(4, 1, {m & ~1: c for m, c in out.terms.items()})) == NEG_B


def test_carrollian_star_on_F():
    out = star_closed(build_F(E, BF), make_carrollian(3), V.CARROLLIAN_H)
    assert all(not m & 1 for m in out.terms)
    assert read_dS(out) == NEG_E


@pytest.mark.parametrize("d", range(2, 7))
def test_carrollian_k_star_of_one(d):
    s = make_carrollian(d - 1)
    want = wedge(e0(d), spatial_volume(d))
    assert star_closed(Form.scalar(d, 1), s, V.CARROLLIAN_K) == want
    assert star_oracle(Form.scalar(d, 1), s, V.CARROLLIAN_K) == want


def test_table_examples():
    f = Fraction(7, 3)
    assert star_table_4d(Form(4, 4, {0b1111: f}), "galilei") == Form.scalar(4, -f)
    a = Form(4, 1, {0b0001: 2, 0b0010: 5})
    assert star_table_4d(a, "carroll") == Form(4, 3, {0b1110: 2})
    # minkowski: *(f dt + a.dr) = dt ^ a.dS + f dV
    assert star_table_4d(a, "minkowski") == Form(4, 3, {0b1101: 5, 0b1110: 2})


def test_table_needs_d4():
    with pytest.raises(ValueError):
        star_table_4d(Form.scalar(3, 1), "galilei")


def test_hat_star_3d_table():
    d = 4
    assert hat_star(Form.scalar(d, 1)) == spatial_volume(d)
    assert hat_star(B(d, 1)) == B(d, 2, 3)
    assert hat_star(B(d, 2)) == -B(d, 1, 3)  # dz ^ dx
    assert hat_star(B(d, 3)) == B(d, 1, 2)
    assert hat_star(B(d, 2, 3)) == B(d, 1)
    assert hat_star(spatial_volume(d)) == Form.scalar(d, 1)


def test_hat_star_2d():
    assert hat_star(B(3, 1)) == B(3, 2)


def test_hat_star_rejects_temporal():
    with pytest.raises(ValueError):
        hat_star(B(4, 0))


@pytest.mark.parametrize("n", range(1, 6))
def test_hat_star_square(n):
    # +1 for odd n; (-1)^(k(n-k)) in general
    d = n + 1
    for k in range(n + 1):
        for m in basis_masks(d, k):
            if m & 1:
                continue
            a = Form(d, k, {m: 1})
            assert hat_star(hat_star(a)) == a.scale((-1) ** (k * (n - k)))


# -- errors and edge cases -------------------------------------------------------


def test_incompatible_variant():
    with pytest.raises(IncompatibleVariant):
        star_oracle(Form.scalar(4, 1), make_minkowski(3), V.GALILEAN_H)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        star_oracle(Form.scalar(3, 1), make_minkowski(3), V.MINKOWSKI_METRIC)


@pytest.mark.parametrize("variant", BASIC_VARIANTS)
def test_zero_form_maps_to_zero_of_complementary_degree(variant):
    s = structure_for(variant, 4)
    for p in range(5):
        for star in (star_oracle, star_closed):
            out = star(Form.zero(4, p), s, variant)
            assert out.is_zero() and out.degree == 4 - p


def test_closed_refuses_non_block_structures():
    from hodgestar.structures import SpacetimeStructure

    doc = make_galilean(2).to_json()
    doc["h"][1][2] = doc["h"][2][1] = "1/3"
    s = SpacetimeStructure.from_json(doc)
    with pytest.raises(ValueError):
        star_closed(B(3, 1), s, V.GALILEAN_H)
    # the oracle still works and agrees with the brute force
    assert star_oracle(B(3, 1), s, V.GALILEAN_H) == star_bruteforce(B(3, 1), s, V.GALILEAN_H)


# -- invariants ---------------------------------------------------------------


@pytest.mark.parametrize("d", range(2, 7))
@pytest.mark.parametrize("kind", list(Kind))
def test_closed_equals_oracle_exhaustive(kind, d):
    s = make(kind, d - 1)
    for variant in variants_for(kind, d):
        for a in all_basis_forms(d):
            assert star_closed(a, s, variant) == star_oracle(a, s, variant), (variant, a)


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("variant", BASIC_VARIANTS)
def test_bruteforce_equals_oracle(variant, d):
    s = structure_for(variant, d)
    for a in all_basis_forms(d):
        assert star_bruteforce(a, s, variant) == star_oracle(a, s, variant)


@pytest.mark.parametrize(
    "overrides", [{"lambda_h": 2}, {"lambda_k": Fraction(-1, 3)}, {"mu": 5}, {"lambda_h": Fraction(1, 2), "mu": -3}]
)
@pytest.mark.parametrize("kind", [Kind.GALILEAN, Kind.CARROLLIAN])
def test_closed_equals_oracle_with_overrides(kind, overrides):
    for n in (1, 2, 3):
        s = make(kind, n, overrides)
        for variant in variants_for(kind, n + 1):
            if variant.is_table:
                continue
            for a in all_basis_forms(n + 1):
                assert star_closed(a, s, variant) == star_oracle(a, s, variant)


@settings(max_examples=60)
@given(forms(max_dim=6), st.sampled_from(BASIC_VARIANTS))
def test_closed_equals_oracle_random_forms(a, variant):
    s = structure_for(variant, a.dim)
    assert star_closed(a, s, variant) == star_oracle(a, s, variant)


@pytest.mark.parametrize("d", range(2, 7))
def test_nilpotency(d):
    for variant in (V.GALILEAN_H, V.CARROLLIAN_H):
        s = structure_for(variant, d)
        for p in range(1, d):
            for m in basis_masks(d, p):
                a = Form(d, p, {m: 1})
                assert star_oracle(star_oracle(a, s, variant), s, variant).is_zero()


@pytest.mark.parametrize("d", range(2, 7))
def test_minkowski_square(d):
    s = make_minkowski(d - 1)
    v = V.MINKOWSKI_METRIC
    for a in all_basis_forms(d):
        assert star_oracle(star_oracle(a, s, v), s, v) == a.scale(minkowski_square_sign(a.degree, d))


@pytest.mark.parametrize("d", range(2, 7))
def test_coincidence_at_exceptional_neighbours(d):
    n = d - 1
    g, c = make_galilean(n), make_carrollian(n)
    for m in basis_masks(d, n):
        a = Form(d, n, {m: 1})
        assert star_oracle(a, g, V.GALILEAN_K) == star_oracle(a, g, V.GALILEAN_H)
    for m in basis_masks(d, 1):
        a = Form(d, 1, {m: 1})
        assert star_oracle(a, c, V.CARROLLIAN_K) == star_oracle(a, c, V.CARROLLIAN_H)


@pytest.mark.parametrize("d", range(2, 7))
def test_galilean_k_top_degree_is_mu(d):
    s = make_galilean(d - 1)
    assert star_oracle(volume(d), s, V.GALILEAN_K) == Form.scalar(d, s.mu)


@pytest.mark.parametrize("kind", [Kind.GALILEAN, Kind.CARROLLIAN, Kind.MINKOWSKI])
def test_convention_matches_table_in_4d(kind):
    for a in all_basis_forms(4):
        assert star_convention(a, kind) == star_table_4d(a, kind)
    if kind is not Kind.MINKOWSKI:
        table = V.TABLE_GALILEI_4D if kind is Kind.GALILEAN else V.TABLE_CARROLL_4D
        s = make(kind, 3)
        for a in all_basis_forms(4):
            assert star_oracle(a, s, table) == star_table_4d(a, kind)
