import numpy as np
import pytest

from ripforge.constructors import (alltop, composed, devore, golomb_phase,
                                   golomb_stacked, rademacher, weil)
from ripforge.errors import CountExceedsFamily, InvalidModulus, InvalidParams
from ripforge.golomb import build_ruler
from ripforge.matrix_core import read_cmx, write_cmx
from ripforge.num_theory import PolyOverFp, PrimeModulus, enumerate_polys, poly_eval


# -- rademacher ----------------------------------------------------------------

def test_rademacher_deterministic_and_signed():
    a = rademacher(2, 2, seed=0)
    b = rademacher(2, 2, seed=0)
    assert np.array_equal(a.data, b.data)
    assert a.meta["seed"] == 0
    big = rademacher(100, 50, seed=3)
    assert np.all(big.data**2 == 1.0)


def test_rademacher_mean_law_of_large_numbers():
    entries = rademacher(1000, 1000, seed=12).data
    assert -0.01 < entries.mean() < 0.01


# -- weil ----------------------------------------------------------------------

def test_weil_shape_and_moduli():
    mat = weil(3, 1)
    assert mat.data.shape == (3, 9)
    assert np.allclose(np.abs(mat.data), 1 / np.sqrt(3), atol=1e-15)
    assert np.allclose(np.linalg.norm(mat.data, axis=0), 1.0, atol=1e-12)


def test_weil_zero_polynomial_column_is_flat():
    mat = weil(5, 2)
    np.testing.assert_allclose(mat.data[:, 0], np.full(5, 1 / np.sqrt(5)), atol=1e-15)


def test_weil_rejects_large_degree():
    with pytest.raises(InvalidParams):
        weil(3, 3)
    with pytest.raises(InvalidParams):
        weil(4, 1)
    with pytest.raises(CountExceedsFamily):
        weil(3, 1, 10)


@pytest.mark.parametrize("p,d", [(3, 1), (3, 2), (5, 2), (7, 2)])
def test_weil_coherence_within_character_sum_bound(p, d):
    mat = weil(p, d).data
    gram = np.abs(mat.conj().T @ mat)
    np.fill_diagonal(gram, 0.0)
    assert gram.max() <= d / np.sqrt(p) + 1e-12


def test_weil_entries_match_formula():
    mat = weil(3, 2, 10)
    polys = enumerate_polys(3, 2, 10)
    for k in range(3):
        for j, f in enumerate(polys):
            expected = np.exp(2j * np.pi * k * poly_eval(f, k) / 3) / np.sqrt(3)
            assert abs(mat.data[k, j] - expected) < 1e-15


# -- alltop ---------------------------------------------------------------------

def test_alltop_coherence_and_moduli():
    mat = alltop(5)
    assert mat.data.shape == (5, 25)
    assert np.allclose(np.abs(mat.data), 1 / np.sqrt(5), atol=1e-15)
    gram = np.abs(mat.data.conj().T @ mat.data)
    np.fill_diagonal(gram, 0.0)
    assert abs(gram.max() - 1 / np.sqrt(5)) < 1e-12


def test_alltop_rejects_bad_m():
    with pytest.raises(InvalidParams):
        alltop(4)
    with pytest.raises(InvalidParams):
        alltop(3)


# -- devore -----------------------------------------------------------------------

def test_devore_layout():
    mat = devore(3, 2)
    assert mat.data.shape == (9, 27)
    # column of the zero polynomial has nonzeros exactly at rows (a, 0)
    col0 = mat.data[:, 0]
    nz = np.flatnonzero(col0)
    assert list(nz) == [0, 3, 6]
    assert np.allclose(col0[nz], 1 / np.sqrt(3))
    # every column: exactly p nonzeros, unit norm
    assert np.all((mat.data > 0).sum(axis=0) == 3)
    assert np.allclose(np.linalg.norm(mat.data, axis=0), 1.0, atol=1e-12)


@pytest.mark.parametrize("p,d", [(3, 2), (5, 2)])
def test_devore_coherence_bound(p, d):
    mat = devore(p, d).data
    gram = np.abs(mat.T @ mat)
    np.fill_diagonal(gram, 0.0)
    assert gram.max() <= d / p + 1e-12


def test_devore_rejects_bad_params():
    with pytest.raises(InvalidParams):
        devore(3, 3)


# -- golomb phase matrix ---------------------------------------------------------

def test_golomb_phase_shape_and_zero_row():
    mat = golomb_phase(3)
    assert mat.data.shape == (37, 3)
    assert np.array_equal(mat.data[0], np.ones(3, dtype=complex))
    assert golomb_phase(5).data.shape == (121, 5)
    with pytest.raises(InvalidModulus):
        golomb_phase(2)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_golomb_phase_columns_exactly_orthogonal(p):
    mat = golomb_phase(p)
    m = mat.rows
    gram = mat.data.conj().T @ mat.data
    assert np.abs(gram - m * np.eye(p)).max() <= 1e-9
    # the geometric sums vanish because every difference of marks is
    # nonzero mod m -- check that integer fact directly
    marks = build_ruler(p).marks
    for k in range(p):
        for kp in range(p):
            if k != kp:
                assert (marks[k] - marks[kp]) % m != 0


@pytest.mark.parametrize("p", [3, 5, 7])
def test_golomb_phase_fourth_order_products_vanish(p):
    mat = golomb_phase(p).data
    m, _ = mat.shape
    marks = build_ruler(p).marks
    pairs = [(k, kp) for k in range(p) for kp in range(p) if k != kp]
    for a in pairs:
        for b in pairs:
            if a == b:
                continue
            total = np.sum(mat[:, a[0]].conj() * mat[:, a[1]]
                           * mat[:, b[0]] * mat[:, b[1]].conj())
            assert abs(total) <= 1e-9
            diff = (marks[a[0]] - marks[a[1]]) - (marks[b[0]] - marks[b[1]])
            assert diff % m != 0 and -m < diff < m


def test_golomb_phase_l2_energy():
    mat = golomb_phase(5)
    rng = np.random.default_rng(4)
    for _ in range(20):
        x = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        lhs = np.linalg.norm(mat.data @ x) ** 2
        assert lhs == pytest.approx(121 * np.linalg.norm(x) ** 2, rel=1e-12)


# -- stacked isometry -------------------------------------------------------------

def test_golomb_stacked_structure():
    mat = golomb_stacked(3)
    assert mat.data.shape == (40, 3)
    np.testing.assert_array_equal(mat.data[-3:], np.eye(3) / 2**0.25)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_golomb_stacked_exact_l4_isometry(p):
    mat = golomb_stacked(p)
    rng = np.random.default_rng(p)
    X = rng.standard_normal((p, 100)) + 1j * rng.standard_normal((p, 100))
    Y = mat.data @ X
    l4 = (np.abs(Y) ** 4).sum(axis=0) ** 0.25
    l2 = np.linalg.norm(X, axis=0)
    assert np.max(np.abs(l4 - l2) / l2) <= 1e-10


# -- composed ----------------------------------------------------------------------

def test_composed_desk_scale_instance():
    mat = composed(1, 20, p_override=3)
    assert mat.data.shape == (37, 20)
    assert mat.meta["p"] == 3 and mat.meta["d"] == 2

    # oracle: evaluate the closed-form entry sum directly
    marks = build_ruler(3).marks
    m = 37
    polys = enumerate_polys(3, 2, 20)
    rng = np.random.default_rng(0)
    for _ in range(60):
        j = int(rng.integers(m))
        fi = int(rng.integers(20))
        f = polys[fi]
        expected = sum(
            np.exp(2j * np.pi * (j * marks[k] / m + k * poly_eval(f, k) / 3))
            for k in range(3)) / np.sqrt(3)
        assert abs(mat.data[j, fi] - expected) <= 1e-10 * abs(expected) + 1e-12


def test_composed_equals_factor_product():
    mat = composed(1, 20, p_override=3)
    prod = golomb_phase(3).data @ weil(3, 2, 20).data
    np.testing.assert_allclose(mat.data, prod, rtol=1e-12, atol=0)


def test_composed_row_consistency_with_matvec():
    mat = composed(1, 20, p_override=3)
    left = golomb_phase(3).data
    right = weil(3, 2, 20).data
    for j in (0, 5, 36):
        np.testing.assert_allclose(mat.data[j], left[j] @ right, rtol=1e-12)


def test_composed_degree_clamped_when_n_small():
    mat = composed(1, 3, p_override=5)
    assert mat.meta["d"] == 1 and mat.meta["d_clamped"] is True


def test_composed_infeasible_chain_names_the_range():
    with pytest.raises(InvalidParams, match=r"p_override"):
        composed(1, 20)
    with pytest.raises(InvalidParams):
        composed(1, 1)  # empty prime interval, still an InvalidParams
    with pytest.raises(InvalidModulus):
        composed(1, 20, p_override=4)


# -- meta provenance ---------------------------------------------------------------

@pytest.mark.parametrize("make", [
    lambda: rademacher(4, 6, seed=9),
    lambda: weil(3, 1),
    lambda: golomb_phase(3),
    lambda: composed(1, 20, p_override=3),
])
def test_constructor_meta_round_trips_through_cmx(make, tmp_path):
    mat = make()
    path = tmp_path / "m.cmx"
    write_cmx(mat, path)
    back = read_cmx(path)
    assert back.meta == mat.meta
    assert np.array_equal(back.data, mat.data)
