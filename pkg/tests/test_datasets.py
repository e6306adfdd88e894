import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddvfa import (Dataset, DatasetParseError, linear_normalize, load_atom, load_csv,
                   load_spiral, load_target, shuffle)
from ddvfa.datasets import resolve


def write(tmp_path, text, name="d.csv"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_load_small_labeled(tmp_path):
    ds = load_csv(write(tmp_path, "1,2,a\n3,4,b\n"))
    assert ds.n_samples == 2 and ds.n_features == 2
    assert ds.labels.tolist() == [0, 1]


def test_header_and_label_positions(tmp_path):
    p = write(tmp_path, "f1,cls,f2\n1.5,x,2\n3,y,4\n5,x,6\n")
    ds = load_csv(p, has_header=True, label_column=1)
    assert np.allclose(ds.features, [[1.5, 2], [3, 4], [5, 6]])
    assert ds.labels.tolist() == [0, 1, 0] and ds.label_names == ["x", "y"]
    ds = load_csv(write(tmp_path, "1,2\n3,4\n"), label_column=None)
    assert ds.labels is None and ds.n_features == 2


@pytest.mark.parametrize("text, row, col", [
    ("1,2,0\n3,0\n", 2, 2),
    ("1,2,0\n3,abc,1\n", 2, 2),
])
def test_parse_errors_carry_location(tmp_path, text, row, col):
    with pytest.raises(DatasetParseError) as err:
        load_csv(write(tmp_path, text))
    assert err.value.row == row and err.value.column == col
    assert f"row {row}" in str(err.value)


def test_empty_file(tmp_path):
    with pytest.raises(DatasetParseError):
        load_csv(write(tmp_path, ""))
    with pytest.raises(DatasetParseError):
        load_csv(write(tmp_path, "a,b\n"), has_header=True)


def test_normalize_examples():
    ds = linear_normalize(Dataset([[2, 5, 0], [4, 5, 1], [6, 5, 0.5]]))
    assert np.allclose(ds.features[:, 0], [0, 0.5, 1])
    assert np.all(ds.features[:, 1] == 0)
    assert np.allclose(ds.features[:, 2], [0, 1, 0.5])


@settings(max_examples=100)
@given(st.lists(st.lists(st.floats(-1e6, 1e6), min_size=3, max_size=3), min_size=1,
                max_size=30))
def test_normalize_idempotent_and_bounded(rows):
    once = linear_normalize(Dataset(rows))
    twice = linear_normalize(once)
    assert np.all((once.features >= 0) & (once.features <= 1))
    assert np.allclose(once.features, twice.features, atol=1e-12)


def test_shuffle_properties():
    X = np.arange(20, dtype=float).reshape(10, 2)
    ds = Dataset(X, np.arange(10))
    a, b = shuffle(ds, 3), shuffle(ds, 3)
    assert np.array_equal(a.features, b.features)
    assert sorted(a.labels.tolist()) == list(range(10))
    assert np.array_equal(a.features[:, 0] / 2, a.labels)  # pairing preserved
    one = Dataset([[0.4]], [0])
    assert np.array_equal(shuffle(one, 9).features, one.features)


def test_bundled_sets():
    atom, target, spiral = load_atom(), load_target(), load_spiral()
    assert atom.features.shape == (800, 3) and len(set(atom.labels)) == 2
    assert target.features.shape == (770, 2) and len(set(target.labels)) == 6
    assert spiral.features.shape == (312, 2) and len(set(spiral.labels)) == 3
    assert resolve("atom").n_samples == 800
