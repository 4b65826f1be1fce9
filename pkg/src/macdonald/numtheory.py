"""Small exact integer helpers: valuations, trial-division factoring, CRT, primitive roots."""
from __future__ import annotations

import math

from .errors import FactorizationLimit

TRIAL_DIVISION_BOUND = 10**6


def valuation(k: int, p: int) -> int:
    """Exponent of the prime p in the nonzero integer k."""
    k = abs(k)
    if k == 0:
        raise ValueError("valuation of 0")
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


def factorize(k: int, bound: int = TRIAL_DIVISION_BOUND) -> dict[int, int]:
    """Prime factorization of |k| by trial division up to ``bound``.

    A leftover cofactor is accepted only when trial division has proved it prime;
    otherwise FactorizationLimit is raised.
    """
    k = abs(k)
    if k == 0:
        raise ValueError("cannot factor 0")
    factors: dict[int, int] = {}
    p = 2
    while p * p <= k and p <= bound:
        while k % p == 0:
            factors[p] = factors.get(p, 0) + 1
            k //= p
        p += 1 if p == 2 else 2
    if k > 1:
        if p * p <= k:
            raise FactorizationLimit(f"cofactor {k} has no prime factor below {bound}")
        factors[k] = factors.get(k, 0) + 1
    return factors


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return factorize(p) == {p: 1}


def crt_idempotent(p_part: int, modulus: int) -> int:
    """The e in [0, modulus) with e = 1 mod p_part and e = 0 mod modulus // p_part."""
    rest = modulus // p_part
    if math.gcd(p_part, rest) != 1:
        raise ValueError("moduli are not coprime")
    return (rest * pow(rest, -1, p_part)) % modulus if p_part > 1 else 0


def totient(k: int) -> int:
    result = k
    for p in factorize(k):
        result = result // p * (p - 1)
    return result


def units(k: int) -> list[int]:
    """Least positive representatives of the units modulo k."""
    return [i for i in range(1, max(k, 2)) if math.gcd(i, k) == 1]


def primitive_root(k: int) -> int:
    """Least positive generator of the unit group of Z/kZ (which must be cyclic)."""
    if k <= 2:
        return 1
    phi = totient(k)
    primes = list(factorize(phi))
    for g in range(2, k):
        if math.gcd(g, k) != 1:
            continue
        if all(pow(g, phi // q, k) != 1 for q in primes):
            return g
    raise ValueError(f"unit group of Z/{k}Z is not cyclic")
