"""Tests for the explicit witness constructions."""

from __future__ import annotations

import dataclasses
import random
from itertools import product

import pytest

from qhelly.errors import UnsupportedDimensionError
from qhelly.lattice import Z_LATTICE, census, convex_hull
from qhelly.witnesses import (
    ConstructionRecipe,
    grid_square_sum,
    integer_root,
    lower_bound_witness,
    tight_recipe,
    tight_recipes,
    tight_witness,
    verify_witness,
)


def test_integer_root_exact_at_power_boundaries():
    assert integer_root(0, 4) == 0
    assert integer_root(1, 9) == 1
    assert integer_root(26, 1) == 26
    for base in (2, 3, 7, 10, 12345, 10**6 + 3):
        for degree in (2, 3, 5, 11):
            power = base**degree
            assert integer_root(power, degree) == base
            assert integer_root(power - 1, degree) == base - 1
            assert integer_root(power + 1, degree) == base


def test_integer_root_rejects_bad_arguments():
    with pytest.raises(ValueError):
        integer_root(-1, 2)
    with pytest.raises(ValueError):
        integer_root(5, 0)


def test_grid_square_sum_matches_direct_summation():
    for n in range(2, 5):
        for t in range(0, 21):
            direct = sum(
                sum(v * v for v in x) for x in product(range(1, t + 1), repeat=n - 1)
            )
            assert grid_square_sum(n, t) == direct


# ---------------------------------------------------------------------------
# small-k family


def test_recipe_counts_follow_the_known_extremes():
    for n in range(2, 7):
        expected = [
            (2**n, 0),
            (2 ** (n + 1) - 2, 1),
            (2 ** (n + 1) - 2, 2),
            (2 ** (n + 1) - 2, 3),
            (2 ** (n + 1), 4),
        ]
        got = [(r.expected_vertices, r.expected_nonvertex) for r in tight_recipes(n)]
        assert got == expected


def test_recipe_validation():
    with pytest.raises(ValueError):
        tight_recipe(3, 5)
    with pytest.raises(UnsupportedDimensionError):
        tight_recipe(1, 1)
    with pytest.raises(ValueError):
        ConstructionRecipe("prism_spike", 3, 5, 14, 2)
    with pytest.raises(ValueError):
        ConstructionRecipe("cube", 3, 2, 8, 0)
    with pytest.raises(ValueError):
        ConstructionRecipe("pyramid", 3, None, 8, 0)


def test_fused_cubes_in_the_plane_is_the_hexagon():
    polytope = tight_witness(tight_recipe(2, 1))
    assert set(polytope.vertices) == {(-1, -1), (0, -1), (1, 0), (1, 1), (0, 1), (-1, 0)}
    counts = census(polytope, Z_LATTICE)
    assert counts.as_tuple() == (7, 6, 1, 1, 0)


def test_double_spike_in_the_plane():
    polytope = tight_witness(tight_recipe(2, 4))
    counts = census(polytope, Z_LATTICE)
    assert counts.vertex == 8 and counts.nonvertex == 4


def test_prism_spike_three_dimensional_counts():
    polytope = tight_witness(tight_recipe(3, 2))
    counts = census(polytope, Z_LATTICE)
    assert counts.vertex == 14 and counts.nonvertex == 2


def test_every_recipe_verifies_up_to_dimension_five():
    for n in range(2, 6):
        for recipe in tight_recipes(n):
            report = verify_witness(recipe, tight_witness(recipe))
            assert report.ok, (recipe.label, report.findings)
            assert report.actual_vertices == recipe.expected_vertices
            assert report.actual_nonvertex == recipe.expected_nonvertex


def test_verify_rejects_a_foreign_polytope():
    hexagon = convex_hull([(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)])
    report = verify_witness(tight_recipe(2, 0), hexagon)
    assert not report.ok
    assert report.actual_vertices == 6 and report.expected_vertices == 4


# ---------------------------------------------------------------------------
# large-k family


def test_parabolic_witness_frozen_examples():
    # exact parameter values for the planar construction
    for k, t, s, k_prime in [
        (32, 2, 14, 32),
        (100, 2, 48, 100),
        (500, 5, 73, 500),
        (10**4, 13, 558, 9997),
    ]:
        w = lower_bound_witness(2, k)
        assert (w.t, w.s, w.k_prime) == (t, s, k_prime)
        assert w.predicted_vertices == 2 * t and w.bound == t
        assert w.verified and w.realized is not None


def test_parabolic_witness_explicit_vertices_at_k_32():
    w = lower_bound_witness(2, 32)
    assert set(w.realized.vertices) == {(1, -3), (1, 17), (2, 0), (2, 14)}
    report = verify_witness(w)
    assert report.ok and report.total_points == 36


def test_parabolic_witness_degenerate_below_2n():
    for n, k in [(2, 0), (2, 3), (3, 5), (4, 7)]:
        w = lower_bound_witness(n, k)
        assert w.degenerate and w.bound == 1 and w.k_prime == 0
        assert verify_witness(w).ok


def test_parabolic_witness_rejects_bad_arguments():
    with pytest.raises(UnsupportedDimensionError):
        lower_bound_witness(1, 50)
    with pytest.raises(ValueError):
        lower_bound_witness(2, -1)


def test_parabolic_formula_invariants_sampled():
    rng = random.Random(175321)
    for n in (2, 3):
        for _ in range(100):
            k = rng.randint(2 * n, 10**5)
            w = lower_bound_witness(n, k, realize=False)
            cells = w.t ** (n - 1)
            assert 2 * n * w.t ** (n + 1) <= k < 2 * n * (w.t + 1) ** (n + 1)
            assert w.k_prime <= k and 0 <= w.slack <= cells
            assert w.predicted_vertices == 2 * cells and w.bound == cells


def test_parabolic_realizations_match_formulas_sampled():
    rng = random.Random(481516)
    for _ in range(12):
        k = rng.randint(4, 10**4)
        w = lower_bound_witness(2, k)
        report = verify_witness(w)
        assert report.ok, (k, report.findings)
        assert report.actual_vertices == 2 * w.t
        assert report.actual_nonvertex == w.k_prime


def test_width_one_columns_realize_too():
    # 4 <= k < 32 keeps t = 1: a single column, realised as a segment
    w = lower_bound_witness(2, 20)
    assert w.t == 1 and w.predicted_vertices == 2 and w.bound == 1
    assert w.k_prime == 20 and verify_witness(w).ok


def test_corrupted_cap_height_is_reported_not_raised():
    w = lower_bound_witness(2, 32)
    bad = dataclasses.replace(w, s=w.s + 1)
    report = verify_witness(bad)
    assert not report.ok
    # the recount lands exactly t^(n-1) above the stored claim
    assert report.actual_nonvertex == bad.k_prime + bad.t
    assert any("not maximal" not in f for f in report.findings)


def test_corrupted_bound_is_reported():
    w = lower_bound_witness(3, 1000, realize=False)
    bad = dataclasses.replace(w, bound=w.bound + 1)
    report = verify_witness(bad)
    assert not report.ok and any("bound" in f for f in report.findings)


def test_verify_rejects_unknown_objects():
    with pytest.raises(TypeError):
        verify_witness(object())


def test_witness_construction_is_deterministic():
    assert lower_bound_witness(2, 777) == lower_bound_witness(2, 777)
    r = tight_recipe(3, 4)
    assert tight_witness(r).vertices == tight_witness(r).vertices
