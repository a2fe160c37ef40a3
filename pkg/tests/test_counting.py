"""Witness families over the diagonal and lattice overlap counting."""

import math

import numpy as np
import pytest

from bikakeya.counting import (WitnessFamily, check_direction_component_bound,
                               check_per_rectangle_bound, classify_directions,
                               fan_family, h_function, parallel_family,
                               random_family, select_witness_family,
                               strip_counts, union_families,
                               verify_counting_bounds)
from bikakeya.grids import Grid, parse_function_spec


def single_axis_family(N=8):
    """One axis-aligned 1 x N rectangle touching the diagonal at i = 0."""
    return WitnessFamily(N, np.array([0], dtype=np.int64),
                         np.array([[-N / 2.0, 0.0]]),
                         np.array([[1.0, 0.0]]))


def test_h_function_single_rectangle():
    fam = single_axis_family(8)
    fam.validate()
    # the rectangle is [-8, 0] x [-0.5, 0.5]: two rows per column,
    # nine or ten columns through the row at the origin
    assert h_function(fam, 1, 1, 0.5) <= 2
    assert 9 <= h_function(fam, 2, 1, 0.5) <= 10
    assert h_function(fam, 1, 1, 50.0) == 0
    assert h_function(fam, 1, 2, 0.5) == 0   # no shallow-direction members


def test_h_function_rejects_bad_args():
    fam = single_axis_family(8)
    with pytest.raises(ValueError):
        h_function(fam, 3, 1, 0.0)
    with pytest.raises(ValueError):
        h_function(fam, 1, 0, 0.0)


def test_empty_family():
    emp = WitnessFamily(8, np.zeros(0, dtype=np.int64),
                        np.zeros((0, 2)), np.zeros((0, 2)))
    assert h_function(emp, 1, 1, 0.5) == 0
    rep = verify_counting_bounds(emp)
    assert rep.sup_diagonal == 0.0 and rep.max_gamma == 0


def test_classify_directions():
    s = 1.0 / math.sqrt(2.0)
    dirs = np.array([[1.0, 0.0], [0.0, 1.0], [s, s]])
    fam = WitnessFamily(8, np.arange(3, dtype=np.int64),
                        np.zeros((3, 2)), dirs)
    steep, shallow, middle = classify_directions(fam)
    assert list(steep) == [0]
    assert list(shallow) == [1]
    assert list(middle) == [2]


def test_family_generators_validate():
    fan_family(64).validate()
    parallel_family(64).validate()
    random_family(16, seed=3).validate()


def test_random_family_reproducible():
    a = random_family(16, seed=7)
    b = random_family(16, seed=7)
    assert np.array_equal(a.centers, b.centers)
    assert np.array_equal(a.directions, b.directions)


def test_fan_cross_term_growth():
    rep = verify_counting_bounds(fan_family(64))
    assert 0.05 <= rep.sup_cross <= 5.0


def test_parallel_family_bounded_sups():
    rep = verify_counting_bounds(parallel_family(64))
    assert rep.sup_diagonal <= 4.0
    assert rep.sup_middle == 0.0


def test_random_family_bounded_sups():
    rep = verify_counting_bounds(random_family(32, seed=5))
    assert rep.sup_diagonal <= 8.0
    assert rep.sup_middle <= 8.0
    assert rep.sup_cross <= 8.0


def test_gamma_sizes_capped():
    for fam in (fan_family(64), random_family(32, seed=1)):
        rep = verify_counting_bounds(fam)
        assert rep.max_gamma <= 3 * (fam.N + 2)


def test_direction_component_bound():
    assert check_direction_component_bound(fan_family(64)) <= 1.0 + 1e-9
    assert check_direction_component_bound(
        random_family(32, seed=5)) <= 1.0 + 1e-9


def test_per_rectangle_envelope_parallel_clean():
    max_ratio, violations = check_per_rectangle_bound(parallel_family(64))
    assert violations == []
    assert max_ratio <= 1.0


def test_per_rectangle_envelope_fan_exceeds():
    # slanted rectangles cross a unit strip in up to length/|e_l| squares,
    # which genuinely exceeds the N/(|i|-2)+2 envelope by a bounded factor
    max_ratio, violations = check_per_rectangle_bound(fan_family(64))
    assert max_ratio <= 2.0
    for i, l, count, bound in violations:
        assert count > bound


def test_strip_counts_single_rectangle():
    fam = single_axis_family(8)
    counts = strip_counts(fam)
    assert counts[0, 0] <= 2          # column at the origin: two rows
    assert 9 <= counts[0, 1] <= 10    # row at the origin: the long side


def test_h_function_additive_over_union():
    a = fan_family(16)
    b = parallel_family(16)
    u = union_families(a, b)
    for l in (1, 2):
        for k in (1, 2, 3):
            assert h_function(u, l, k, 0.5) == (
                h_function(a, l, k, 0.5) + h_function(b, l, k, 0.5))


def test_union_requires_same_scale():
    with pytest.raises(ValueError):
        union_families(fan_family(16), fan_family(32))


def test_validate_rejects_missed_diagonal():
    fam = WitnessFamily(8, np.array([10], dtype=np.int64),
                        np.array([[-4.0, 0.0]]), np.array([[1.0, 0.0]]))
    with pytest.raises(ValueError):
        fam.validate()


def test_select_witness_family_small():
    grid = Grid(-6.0, 10.0, 256)
    f = parse_function_spec("indicator:lo=0,hi=1", grid)
    fam = select_witness_family(f, f, 4)
    assert len(fam) > 0
    fam.validate()
    assert np.all(np.abs(fam.indices) <= 16)
