"""Deterministic primality, sieving, and prime search in arithmetic progressions.

Everything here is exact for 64-bit inputs: the Miller-Rabin witness set below is
a verified deterministic set for all n < 2^64, so verification campaigns built on
top of it carry no probabilistic error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Default ceiling for open-ended prime scans (first prime of a polynomial form,
#: de Polignac pairs, ...).  Termination of those scans is not provable, so they
#: abort with ScanCeilingError instead of running forever.
DEFAULT_SCAN_CEILING = 1 << 40

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Deterministic witness set for all n < 2^64 (the well-known 7-base set).
_MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

# Segment size for the segmented sieve; bool segments of this length stay
# comfortably inside a 256 KiB cache block.
_SIEVE_SEGMENT = 1 << 18


class ScanCeilingError(RuntimeError):
    """A prime scan exhausted its configured ceiling without finding a hit."""

    def __init__(self, what: str, ceiling: int):
        super().__init__(f"{what}: no hit at or below ceiling {ceiling}")
        self.what = what
        self.ceiling = ceiling


def is_prime(n: int) -> bool:
    """Deterministic primality test, exact for all 0 <= n < 2^64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d & 1 == 0:
        d >>= 1
        s += 1
    for a in _MR_WITNESSES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def radical(d: int) -> int:
    """Product of the distinct primes dividing d; radical(1) == 1."""
    if d < 1:
        raise ValueError(f"radical requires d >= 1, got {d}")
    r = 1
    x = d
    if x % 2 == 0:
        r = 2
        while x % 2 == 0:
            x //= 2
    p = 3
    while p * p <= x:
        if x % p == 0:
            r *= p
            while x % p == 0:
                x //= p
        p += 2
    if x > 1:
        r *= x
    return r


def euler_phi(d: int) -> int:
    """Count of 1 <= a <= d with gcd(a, d) == 1."""
    if d < 1:
        raise ValueError(f"euler_phi requires d >= 1, got {d}")
    res = d
    x = d
    if x % 2 == 0:
        res //= 2
        while x % 2 == 0:
            x //= 2
    p = 3
    while p * p <= x:
        if x % p == 0:
            res -= res // p
            while x % p == 0:
                x //= p
        p += 2
    if x > 1:
        res -= res // x
    return res


@dataclass(frozen=True)
class PrimeQuery:
    """A request for the first prime >= lower_bound in a residue class.

    residue may be negative; only its class modulo `modulus` matters.
    """

    residue: int
    modulus: int
    lower_bound: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if self.lower_bound < 2:
            raise ValueError(f"lower_bound must be >= 2, got {self.lower_bound}")
        if self.modulus > 1 and math.gcd(self.residue % self.modulus, self.modulus) != 1:
            raise ValueError(
                f"residue {self.residue} is not coprime to modulus {self.modulus}"
            )


def first_prime_in_ap(q: PrimeQuery, ceiling: int = DEFAULT_SCAN_CEILING) -> int:
    """Least prime p >= q.lower_bound with p == q.residue (mod q.modulus).

    Dirichlet guarantees termination mathematically; the ceiling turns a
    runaway scan (e.g. absurd inputs) into ScanCeilingError.
    """
    m = q.modulus
    res = q.residue % m
    cand = q.lower_bound + (res - q.lower_bound) % m
    while cand <= ceiling:
        if is_prime(cand):
            return cand
        cand += m
    raise ScanCeilingError(f"prime == {q.residue} (mod {m}) from {q.lower_bound}", ceiling)


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p < hi, by segmented sieve."""
    if hi <= lo or hi <= 2:
        return []
    lo = max(lo, 2)
    base = simple_sieve(math.isqrt(hi - 1))
    out: list[int] = []
    for seg_lo in range(lo, hi, _SIEVE_SEGMENT):
        seg_hi = min(seg_lo + _SIEVE_SEGMENT, hi)
        flags = np.ones(seg_hi - seg_lo, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, ((seg_lo + p - 1) // p) * p)
            if start >= seg_hi:
                continue
            flags[start - seg_lo :: p] = False
        out.extend((seg_lo + np.flatnonzero(flags)).tolist())
    return out


def nth_primes(n: int) -> list[int]:
    """The first n primes [2, 3, 5, ...] in increasing order."""
    if n < 1:
        raise ValueError(f"nth_primes requires n >= 1, got {n}")
    if n < 6:
        return [2, 3, 5, 7, 11][:n]
    # Rosser-style upper bound for the n-th prime.
    bound = int(n * (math.log(n) + math.log(math.log(n)))) + 10
    primes = simple_sieve(bound)
    while len(primes) < n:
        bound *= 2
        primes = simple_sieve(bound)
    return primes[:n].tolist()


def classify_two_power_times_prime(m: int) -> bool:
    """True iff m is 2^a (a >= 0, including 1) or an odd prime times 2^a."""
    if m < 1:
        raise ValueError(f"classification requires m >= 1, got {m}")
    q = m >> ((m & -m).bit_length() - 1)
    return q == 1 or is_prime(q)


#: Supported prime-producing polynomial forms, keyed by display name.
POLYNOMIAL_FORMS = {
    "x^2+x+1": lambda x: x * x + x + 1,
    "4x^2+1": lambda x: 4 * x * x + 1,
}


def polynomial_form_values(form: str, upto: int) -> list[int]:
    """Values of the form at x = 0, 1, 2, ... that are <= upto."""
    f = POLYNOMIAL_FORMS[form]
    out = []
    x = 0
    while (v := f(x)) <= upto:
        out.append(v)
        x += 1
    return out


def first_prime_of_form(
    form: str, lower_bound: int, ceiling: int = DEFAULT_SCAN_CEILING
) -> int:
    """Least prime p >= lower_bound with p = form(x) for some integer x >= 0.

    Whether such primes exist beyond any bound is an open question, hence the
    ceiling.
    """
    if form not in POLYNOMIAL_FORMS:
        raise ValueError(f"unknown form {form!r}; expected one of {sorted(POLYNOMIAL_FORMS)}")
    if lower_bound < 2:
        raise ValueError(f"lower_bound must be >= 2, got {lower_bound}")
    f = POLYNOMIAL_FORMS[form]
    x = 0
    while True:
        v = f(x)
        if v > ceiling:
            raise ScanCeilingError(f"prime of form {form} from {lower_bound}", ceiling)
        if v >= lower_bound and is_prime(v):
            return v
        x += 1
