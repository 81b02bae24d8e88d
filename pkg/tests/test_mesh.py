import numpy as np
import pytest
from hypothesis import given, strategies as st

from skdensity import ConfigError, IndexBox, UniformMesh, iterate_indices

spacings = st.lists(st.floats(0.05, 5.0), min_size=1, max_size=3)


def test_grid_point_examples():
    assert UniformMesh([0.5]).grid_point([3]).tolist() == [1.5]
    assert UniformMesh([1, 2]).grid_point([0, 0]).tolist() == [0, 0]
    assert UniformMesh([0.25, 0.5]).grid_point([-2, 4]).tolist() == [-0.5, 2.0]


def test_dual_point_examples():
    np.testing.assert_allclose(UniformMesh([1]).dual_point([1]), [2 * np.pi])
    np.testing.assert_allclose(UniformMesh([0.5]).dual_point([1]), [4 * np.pi])
    np.testing.assert_allclose(UniformMesh([1, 2]).dual_point([1, 1]), [2 * np.pi, np.pi])


def test_dimension_mismatch():
    with pytest.raises(ConfigError):
        UniformMesh([1, 2]).grid_point([1])
    with pytest.raises(ConfigError):
        UniformMesh([1]).dual_point([1, 2])


@pytest.mark.parametrize("bad", [[0.0], [-1.0], [], [np.inf]])
def test_invalid_spacings(bad):
    with pytest.raises(ConfigError):
        UniformMesh(bad)


def test_det():
    assert UniformMesh([0.5, 4.0, 2.0]).det == 4.0


def test_iterate_indices_examples():
    assert list(iterate_indices(IndexBox([1]))) == [(-1,), (0,), (1,)]
    assert list(iterate_indices(IndexBox([0, 0]))) == [(0, 0)]
    nine = list(iterate_indices(IndexBox([1, 1])))
    assert len(nine) == 9
    assert nine == sorted(nine)


def test_indices_array_matches_iterator():
    box = IndexBox([2, 1, 3])
    assert [tuple(r) for r in box.indices()] == list(box)


def test_shell():
    box = IndexBox([2, 1])
    shell = {tuple(m) for m in box.shell()}
    assert (0, 0) not in shell and (2, 0) in shell and (0, 1) in shell
    assert len(shell) == 15 - 3


@given(spacings, st.data())
def test_lattice_is_additive(a, data):
    mesh = UniformMesh(a)
    ints = st.lists(st.integers(-50, 50), min_size=len(a), max_size=len(a))
    m, l = np.array(data.draw(ints)), np.array(data.draw(ints))
    np.testing.assert_allclose(mesh.grid_point(m) + mesh.grid_point(l), mesh.grid_point(m + l), rtol=1e-15, atol=1e-13)


@given(spacings, st.data())
def test_biorthogonality(a, data):
    mesh = UniformMesh(a)
    ints = st.lists(st.integers(-20, 20), min_size=len(a), max_size=len(a))
    m, l = np.array(data.draw(ints)), np.array(data.draw(ints))
    inner = mesh.grid_point(m) @ mesh.dual_point(l)
    assert inner == pytest.approx(2 * np.pi * (m @ l), abs=1e-9)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=3))
def test_box_cardinality(radii):
    box = IndexBox(radii)
    items = list(box)
    assert len(items) == len(set(items)) == np.prod([2 * r + 1 for r in radii]) == box.size


@given(spacings, st.data())
def test_reduce_to_cell_is_dual_shift(a, data):
    mesh = UniformMesh(a)
    z = np.array(data.draw(st.lists(st.floats(-100, 100), min_size=len(a), max_size=len(a))))
    r = mesh.reduce_to_cell(z)
    assert np.all(np.abs(r) <= mesh.dual_periods / 2 + 1e-12)
    k = (z - r) / mesh.dual_periods
    np.testing.assert_allclose(k, np.round(k), atol=1e-8)
