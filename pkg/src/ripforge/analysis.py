"""Norm identities and inequalities for unimodular matrices.

For B in C^(q x r) with |B_{j,k}| = 1 and any x in C^r, expanding
|(Bx)_j|^2 and |(Bx)_j|^4 gives exact identities

    ||Bx||_2^2 = q ||x||_2^2
                 + sum_{k != k'} P(k,k') conj(x_k) x_{k'},
    ||Bx||_4^4 = 2 ||x||_2^2 ||Bx||_2^2 - q ||x||_4^4 + S1
               = 2 ||x||_2^2 ||Bx||_2^2 - q ||x||_4^4
                 + sum_{k != k'} Q(k,k') conj(x_k)^2 x_{k'}^2 + S2,

with pair sums P(k,k') = sum_j conj(B_{j,k}) B_{j,k'} and
Q(k,k') = sum_j conj(B_{j,k})^2 B_{j,k'}^2.  S1 runs over ordered pairs
of ordered pairs (k != k') != (l != l'); S2 additionally excludes the
swapped coincidence (k != k') = (l' != l).  These quadruple sums are
enumerated exactly as stated (vectorized over the full index grid with
boolean masks, no symmetry shortcuts), so the functions here serve as
oracles for the matrix constructions.

The l1 floor ||y||_1 >= ||y||_2^3 / ||y||_4^2 (Holder with exponents
3 and 3/2 applied to |y_i|^(2/3) * |y_i)^(4/3)) turns an upper l4 bound
into a lower l1 bound; it is how orthogonality plus vanishing fourth-order
products yield two-sided l1 embedding constants.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotUnimodular, TooManyColumns, ZeroVector
from .matrix_core import as_array, matvec, norm

UNIMODULAR_TOL = 1e-12
MAX_QUARTIC_COLS = 32


@dataclass(frozen=True)
class IdentityReport:
    """Direct norm value vs. formula value(s), with the quadruple sums."""

    direct_value: float
    formula_value: float
    sigma1: complex
    sigma2: complex
    abs_gap: float
    formula_value_split: float | None = None
    abs_gap_split: float | None = None


def _check_unimodular(B: np.ndarray) -> None:
    dev = float(np.max(np.abs(np.abs(B) - 1.0)))
    if dev > UNIMODULAR_TOL:
        raise NotUnimodular(f"entry modulus deviates from 1 by {dev:.3e}")


def _check_x(B: np.ndarray, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim != 1 or x.shape[0] != B.shape[1]:
        raise DimensionMismatch(f"matrix has {B.shape[1]} columns, x has shape {x.shape}")
    return x


def l2_identity(B, x) -> IdentityReport:
    """Check ||Bx||_2^2 against its pair-sum expansion."""
    B = np.asarray(as_array(B), dtype=np.complex128)
    _check_unimodular(B)
    x = _check_x(B, x)
    q, r = B.shape

    direct = norm(B @ x, 2) ** 2
    pair_sums = B.conj().T @ B                      # P(k, k')
    weights = np.outer(x.conj(), x)
    off_diag = ~np.eye(r, dtype=bool)
    formula = q * norm(x, 2) ** 2 + (pair_sums * weights)[off_diag].sum()
    return IdentityReport(direct_value=direct,
                          formula_value=float(formula.real),
                          sigma1=0j, sigma2=0j,
                          abs_gap=float(abs(direct - formula)))


def _quadruple_sums(B: np.ndarray, x: np.ndarray) -> tuple[complex, complex]:
    """S1 and S2 enumerated over the stated ordered-pair index sets."""
    q, r = B.shape
    prods = np.einsum("jk,jl->jkl", B.conj(), B).reshape(q, r * r)
    quad = (prods.T @ prods.conj()).reshape(r, r, r, r)   # T(k,k',l,l')
    w_left = np.outer(x.conj(), x).reshape(r * r)
    w_right = np.outer(x, x.conj()).reshape(r * r)
    weighted = (np.outer(w_left, w_right)).reshape(r, r, r, r) * quad

    k = np.arange(r)[:, None, None, None]
    kp = np.arange(r)[None, :, None, None]
    l = np.arange(r)[None, None, :, None]
    lp = np.arange(r)[None, None, None, :]
    pairs_ok = (k != kp) & (l != lp)
    mask1 = pairs_ok & ~((k == l) & (kp == lp))
    mask2 = mask1 & ~((k == lp) & (kp == l))
    return complex(weighted[mask1].sum()), complex(weighted[mask2].sum())


def l4_identity(B, x) -> IdentityReport:
    """Check ||Bx||_4^4 against both quadruple-sum expansions.

    `formula_value` uses the S1 form, `formula_value_split` the form that
    isolates the squared-pair sum and S2; both gaps are reported.
    """
    B = np.asarray(as_array(B), dtype=np.complex128)
    _check_unimodular(B)
    x = _check_x(B, x)
    q, r = B.shape
    if r > MAX_QUARTIC_COLS:
        raise TooManyColumns(f"quadruple enumeration is quartic; r={r} > {MAX_QUARTIC_COLS}")

    direct = norm(B @ x, 4) ** 4
    common = 2.0 * norm(x, 2) ** 2 * norm(B @ x, 2) ** 2 - q * norm(x, 4) ** 4
    sigma1, sigma2 = _quadruple_sums(B, x)

    square_pairs = (B.conj() ** 2).T @ (B**2)             # Q(k, k')
    w_sq = np.outer(x.conj() ** 2, x**2)
    off_diag = ~np.eye(r, dtype=bool)
    pair_term = (square_pairs * w_sq)[off_diag].sum()

    via_s1 = common + sigma1
    via_s2 = common + pair_term + sigma2
    return IdentityReport(direct_value=direct,
                          formula_value=float(via_s1.real),
                          sigma1=sigma1, sigma2=sigma2,
                          abs_gap=float(abs(direct - via_s1)),
                          formula_value_split=float(via_s2.real),
                          abs_gap_split=float(abs(direct - via_s2)))


def holder_floor(y) -> float:
    """Lower bound ||y||_2^3 / ||y||_4^2 <= ||y||_1, tight for flat vectors."""
    y = np.asarray(y)
    n4 = norm(y, 4)
    if n4 == 0.0:
        raise ZeroVector("the l1 floor is undefined for the zero vector")
    return norm(y, 2) ** 3 / n4**2


def embedding_ratios(A, x) -> tuple[float, float, float]:
    """(||Ax||_1, ||Ax||_2, ||Ax||_4) each divided by ||x||_2."""
    x = np.asarray(x)
    nx = norm(x, 2)
    if nx == 0.0:
        raise ZeroVector("embedding ratios are undefined for x = 0")
    y = matvec(A, x)
    return norm(y, 1) / nx, norm(y, 2) / nx, norm(y, 4) / nx
