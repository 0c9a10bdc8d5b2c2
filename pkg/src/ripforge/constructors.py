"""Measurement-matrix constructions.

Deterministic families:

* ``weil(p, d)``      -- p x p^(d+1) polynomial phase matrix, entries
  exp(i 2 pi k f(k) / p) / sqrt(p); coherence <= d / sqrt(p) by the Weil
  character-sum bound.
* ``alltop(m)``       -- m x m^2 translations/modulations of the cubic
  phase vector, coherence exactly 1 / sqrt(m) for prime m >= 5.
* ``devore(p, d)``    -- p^2 x p^(d+1) binary matrix of polynomial graphs,
  entries in {0, 1/sqrt(p)}, coherence <= d / p.
* ``golomb_phase(p)`` -- m x p harmonic matrix on a Golomb ruler,
  m = 6p^2 - 6p + 1, with exactly orthogonal columns and vanishing
  fourth-order column products.
* ``golomb_stacked(p)`` -- the (m+p) x p stack [(2m)^(-1/4) A ; 2^(-1/4) I]
  that embeds l2^p isometrically into l4^(m+p).
* ``composed(s, N)``  -- golomb_phase(p) @ weil(p, d, N), the explicit
  l2 -> l1 embedding on s-sparse vectors.

The only randomized family is ``rademacher``; it is fully determined by
its seed.  All phase arguments are reduced modulo the relevant modulus in
exact 64-bit integer arithmetic before the single float multiplication by
2 pi / modulus, so entries carry no avoidable rounding error (for p up to
1e4 the products stay below 18 p^4 < 2^63).
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidModulus, InvalidParams, NoPrimeInRange
from .golomb import build_ruler
from .matrix_core import Matrix
from .num_theory import is_prime, enumerate_polys, prime_in_range

TWO_PI = 2.0 * np.pi


def rademacher(m: int, n_cols: int, seed: int) -> Matrix:
    """m x N matrix of independent +-1 entries, fully determined by seed."""
    if m < 1 or n_cols < 1:
        raise InvalidParams("matrix dimensions must be positive")
    rng = np.random.default_rng(seed)
    data = rng.integers(0, 2, size=(m, n_cols)).astype(np.float64) * 2.0 - 1.0
    return Matrix(data, meta={"construction": "rademacher", "m": m, "N": n_cols,
                              "seed": int(seed)})


def _poly_values(p: int, d: int, n_cols: int) -> np.ndarray:
    """Array vals[k, j] = f_j(k) for the first n_cols degree-<=d polynomials."""
    polys = enumerate_polys(p, d, n_cols)
    coeffs = np.array([f.coeffs for f in polys], dtype=np.int64)  # (n_cols, d+1)
    k = np.arange(p, dtype=np.int64)[:, None]
    vals = np.zeros((p, n_cols), dtype=np.int64)
    for c in coeffs.T[::-1]:  # Horner, top coefficient first
        vals = (vals * k + c[None, :]) % p
    return vals


def weil(p: int, d: int, n_cols: int | None = None) -> Matrix:
    """Polynomial phase matrix over F_p with coherence <= d / sqrt(p).

    Rows are indexed by k in F_p, columns by the first n_cols polynomials
    of degree <= d in the fixed enumeration order (all p^(d+1) of them by
    default).  Entry (k, f) is exp(i 2 pi k f(k) / p) / sqrt(p); every
    column has unit l2 norm.
    """
    if not is_prime(p):
        raise InvalidParams(f"p={p} must be prime")
    if not 1 <= d < p:
        raise InvalidParams(f"need 1 <= d < p, got d={d}, p={p}")
    family = p ** (d + 1)
    if n_cols is None:
        n_cols = family
    if n_cols < 1:
        raise InvalidParams("need at least one column")
    vals = _poly_values(p, d, n_cols)
    k = np.arange(p, dtype=np.int64)[:, None]
    phase = (k * vals) % p
    data = np.exp(1j * TWO_PI / p * phase) / np.sqrt(p)
    return Matrix(data, meta={"construction": "weil", "p": p, "d": d, "N": n_cols})


def alltop(m: int) -> Matrix:
    """Cubic phase vector under all translations and modulations.

    Column (x, y) is stored at index x*m + y; entry (j, (x, y)) equals
    exp(i 2 pi ((j+x)^3 + y j) / m) / sqrt(m).  For prime m >= 5 distinct
    columns have inner products of modulus exactly 1/sqrt(m) or 0.
    """
    if m < 5 or not is_prime(m):
        raise InvalidParams(f"m={m}: the cubic phase family needs a prime m >= 5")
    j = np.arange(m, dtype=np.int64)
    x = np.arange(m, dtype=np.int64)
    y = np.arange(m, dtype=np.int64)
    cubic = (j[:, None] + x[None, :]) ** 3 % m            # (m, m) by translation
    phase = (cubic[:, :, None] + y[None, None, :] * j[:, None, None]) % m
    data = np.exp(1j * TWO_PI / m * phase).reshape(m, m * m) / np.sqrt(m)
    return Matrix(data, meta={"construction": "alltop", "m": m, "N": m * m})


def devore(p: int, d: int) -> Matrix:
    """Binary polynomial-graph matrix with entries in {0, 1/sqrt(p)}.

    Rows are indexed by (a, b) in F_p^2 (row a*p + b), columns by
    polynomials; entry ((a, b), f) is 1/sqrt(p) iff f(a) = b.  Each column
    holds exactly p nonzeros, one per a, and has unit l2 norm; two columns
    collide in at most d rows, giving coherence <= d/p.
    """
    if not is_prime(p):
        raise InvalidParams(f"p={p} must be prime")
    if not 1 <= d < p:
        raise InvalidParams(f"need 1 <= d < p, got d={d}, p={p}")
    n_cols = p ** (d + 1)
    vals = _poly_values(p, d, n_cols)                      # (p, n_cols)
    data = np.zeros((p * p, n_cols), dtype=np.float64)
    cols = np.broadcast_to(np.arange(n_cols), (p, n_cols))
    rows = np.arange(p, dtype=np.int64)[:, None] * p + vals
    data[rows.ravel(), cols.ravel()] = 1.0 / np.sqrt(p)
    return Matrix(data, meta={"construction": "devore", "p": p, "d": d, "N": n_cols})


def golomb_phase(p: int) -> Matrix:
    """Harmonic matrix on the quadratic-residue Golomb ruler.

    With m = 6p^2 - 6p + 1 and marks g(0..p-1), entry (j, k) is
    exp(i 2 pi j g(k) / m).  Because all differences g(k) - g(k') and all
    differences of differences stay inside (-m, m) and are nonzero, the
    columns are exactly orthogonal and all fourth-order column products
    over distinct ordered pairs vanish.
    """
    ruler = build_ruler(p)  # rejects p < 3 and composites
    m = 2 * ruler.q - 1     # = 6p^2 - 6p + 1
    j = np.arange(m, dtype=np.int64)[:, None]
    g = np.asarray(ruler.marks, dtype=np.int64)[None, :]
    phase = (j * g) % m
    data = np.exp(1j * TWO_PI / m * phase)
    return Matrix(data, meta={"construction": "golomb_phase", "p": p, "m": m})


def golomb_stacked(p: int) -> Matrix:
    """Stack [(2m)^(-1/4) * golomb_phase(p) ; 2^(-1/4) * I_p].

    The resulting (m+p) x p matrix M satisfies ||M x||_4 = ||x||_2 for all
    complex x: an exactly isometric embedding of l2^p into l4^(m+p).
    """
    top = golomb_phase(p)
    m = top.rows
    data = np.vstack([
        top.data / (2.0 * m) ** 0.25,
        np.eye(p, dtype=np.complex128) / 2.0 ** 0.25,
    ])
    return Matrix(data, meta={"construction": "golomb_stacked", "p": p, "m": m})


def _composed_degree(p: int, n_cols: int) -> int:
    d = max(1, int(np.ceil(np.log(n_cols / p) / np.log(p))))
    while p ** (d + 1) < n_cols:  # guard against float fuzz in the ceil
        d += 1
    return d


def composed(s: int, n_cols: int, p_override: int | None = None) -> Matrix:
    """golomb_phase(p) @ weil(p, d, N): an l2 -> l1 embedding on s-sparse vectors.

    Without an override, p is the smallest prime in
    [9 s^2 ceil(ln^2 N), 18 s^2 ceil(ln^2 N)] and the asymptotic
    feasibility conditions N > p^2 and p^p >= N must hold; at desk scale
    they rarely do, and the error says which prime range would be needed
    rather than silently substituting different constants.  With
    p_override, any prime p >= 3 is accepted and d = ceil(ln(N/p)/ln p)
    is clamped to >= 1 (recorded in meta).
    """
    if s < 1 or n_cols < 1:
        raise InvalidParams("need s >= 1 and N >= 1")
    if p_override is None:
        bound = 9 * s * s * int(np.ceil(np.log(n_cols) ** 2))
        try:
            p = int(prime_in_range(bound, 2 * bound))
        except (NoPrimeInRange, ValueError):
            raise InvalidParams(
                f"parameter chain infeasible: no prime in [{bound}, {2 * bound}]; "
                f"pass p_override to choose p directly") from None
        if not (n_cols > p * p and p**p >= n_cols):
            raise InvalidParams(
                f"parameter chain infeasible at this scale: the smallest prime in "
                f"[{bound}, {2 * bound}] is p={p} but N={n_cols} must exceed p^2={p * p} "
                f"(and satisfy p^p >= N); pass p_override to choose p directly")
        clamped = False
    else:
        p = p_override
        if p < 3 or not is_prime(p):
            raise InvalidModulus(f"p_override={p} must be a prime >= 3")
        clamped = n_cols <= p  # ln(N/p) <= 0 would give d <= 0
    d = _composed_degree(p, n_cols)
    left = golomb_phase(p)
    right = weil(p, d, n_cols)  # raises CountExceedsFamily if N > p^(d+1)
    data = left.data @ right.data
    meta = {"construction": "composed", "s": s, "N": n_cols, "p": p, "d": d,
            "m": left.rows, "d_clamped": clamped}
    return Matrix(data, meta=meta)
