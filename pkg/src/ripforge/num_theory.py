"""Exact integer and finite-field arithmetic.

Everything here is deterministic by design: primality uses a fixed
Miller-Rabin witness set that is provably correct for all 64-bit inputs,
prime search returns the smallest qualifying prime, and polynomial
enumeration follows a fixed lexicographic order.  The matrix constructions
built on top inherit their reproducibility from these choices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CountExceedsFamily, InvalidModulus, NoPrimeInRange

# Strong-pseudoprime witnesses; deterministic for all n < 3.317e24,
# which covers the full 64-bit range (Sorenson & Webster).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

MAX_MODULUS = 2**31 - 1


def is_prime(n: int) -> bool:
    """Deterministic primality test for nonnegative 64-bit integers."""
    if n < 2:
        return False
    for w in _MR_WITNESSES:
        if n == w:
            return True
        if n % w == 0:
            return False
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """A positive integer certified prime at construction time."""

    p: int

    def __post_init__(self):
        if self.p > MAX_MODULUS:
            raise InvalidModulus(f"p={self.p} exceeds the supported cap {MAX_MODULUS}")
        if not is_prime(self.p):
            raise InvalidModulus(f"p={self.p} is not prime")

    def __int__(self) -> int:
        return self.p

    def __index__(self) -> int:
        return self.p


def prime_in_range(lo: int, hi: int) -> PrimeModulus:
    """Smallest prime in the closed interval [lo, hi].

    Smallest-first is a tie-breaking convention: any prime in the interval
    would do mathematically, but a fixed choice keeps downstream
    constructions reproducible.
    """
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    for n in range(max(lo, 2), hi + 1):
        if is_prime(n):
            return PrimeModulus(n)
    raise NoPrimeInRange(f"no prime in [{lo}, {hi}]")


def square_mod(k: int, p: PrimeModulus | int) -> int:
    """The representative of k^2 mod p inside [0, p-1]."""
    p = int(p)
    if not 0 <= k < p:
        raise ValueError(f"k={k} outside [0, {p - 1}]")
    return k * k % p


@dataclass(frozen=True)
class PolyOverFp:
    """Polynomial c_0 + c_1 x + ... + c_d x^d with coefficients in F_p."""

    modulus: PrimeModulus
    coeffs: tuple[int, ...]

    def __post_init__(self):
        p = int(self.modulus)
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("coefficient list must be nonempty")
        if any(not 0 <= c < p for c in self.coeffs):
            raise ValueError(f"coefficients must lie in [0, {p - 1}]")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def poly_eval(f: PolyOverFp, k: int) -> int:
    """Horner evaluation of f at k, reduced into [0, p-1]."""
    p = int(f.modulus)
    if not 0 <= k < p:
        raise ValueError(f"k={k} outside [0, {p - 1}]")
    val = 0
    for c in reversed(f.coeffs):
        val = (val * k + c) % p
    return val


def enumerate_polys(p: PrimeModulus | int, d: int, count: int) -> list[PolyOverFp]:
    """First `count` degree-<=d polynomials over F_p in a fixed order.

    The order is lexicographic on the coefficient tuple (c_0, ..., c_d)
    with c_0 least significant, i.e. polynomial number i has coefficients
    given by the base-p digits of i.  Re-running always yields the same
    family in the same order.
    """
    modulus = p if isinstance(p, PrimeModulus) else PrimeModulus(p)
    p = int(modulus)
    if d < 0:
        raise ValueError("degree must be nonnegative")
    family = p ** (d + 1)
    if count > family:
        raise CountExceedsFamily(f"requested {count} > family size p^(d+1) = {family}")
    polys = []
    for i in range(count):
        digits, n = [], i
        for _ in range(d + 1):
            digits.append(n % p)
            n //= p
        polys.append(PolyOverFp(modulus, tuple(digits)))
    return polys
