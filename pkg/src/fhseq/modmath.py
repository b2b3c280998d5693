"""Elementary number theory used by the construction.

Everything here works on plain Python ints and is deterministic. Moduli are
restricted to ``MAX_MODULUS`` so that every intermediate product fits in a
signed 64-bit integer when the same arithmetic is vectorised with numpy.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

MAX_MODULUS = 2**31

# Deterministic Miller-Rabin witnesses, exact for every n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class FactoredInteger:
    value: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        product = 1
        last = 1
        for prime, exponent in self.factors:
            if prime <= last or exponent < 1 or not is_prime(prime):
                raise ValueError(f"bad factorization of {self.value}: {self.factors}")
            product *= prime**exponent
            last = prime
        if product != self.value:
            raise ValueError(f"factors multiply to {product}, not {self.value}")

    @property
    def primes(self) -> List[int]:
        return [prime for prime, _ in self.factors]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in _MR_BASES:
        if n % small == 0:
            return n == small
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        y = pow(a, d, n)
        if y in (1, n - 1):
            continue
        for _ in range(r - 1):
            y = y * y % n
            if y == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> FactoredInteger:
    """Trial-division factorization; adequate for n below ``MAX_MODULUS``."""
    if n < 2:
        raise ValueError(f"cannot factorize {n}; need n >= 2")
    factors = []
    rest = n
    divisor = 2
    while divisor * divisor <= rest:
        if rest % divisor == 0:
            exponent = 0
            while rest % divisor == 0:
                rest //= divisor
                exponent += 1
            factors.append((divisor, exponent))
        divisor += 1 if divisor == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return FactoredInteger(n, tuple(factors))


def pow_mod(a: int, s: int, m: int) -> int:
    """Return ``a**s mod m``."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if s < 0:
        raise ValueError(f"exponent must be non-negative, got {s}")
    # built-in pow is square-and-multiply on arbitrary precision ints
    return pow(a, s, m)


def is_primitive_root(g: int, prime: int) -> bool:
    """True iff ``g`` has multiplicative order ``prime - 1`` modulo ``prime``.

    ``g`` may be given as any integer; it is reduced modulo ``prime`` first.
    """
    if not is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    g %= prime
    if g == 0:
        raise ValueError("0 is never a primitive root")
    if prime == 2:
        return g == 1
    order = prime - 1
    return all(pow(g, order // r, prime) != 1 for r in factorize(order).primes)


def find_common_primitive_root(p: int, q: int) -> int:
    """Smallest ``g >= 2`` that is a primitive root modulo both ``p`` and ``q``.

    Such a ``g`` always exists by the Chinese remainder theorem, and it is
    below ``p * q``.
    """
    check_prime_pair(p, q)
    for g in range(2, p * q):
        if g % p == 0 or g % q == 0:
            continue
        if is_primitive_root(g, p) and is_primitive_root(g, q):
            return g
    raise AssertionError(f"no common primitive root found for ({p}, {q})")  # unreachable


def crt_solve_x(g: int, p: int, q: int) -> int:
    """Unique ``x`` in ``[0, pq)`` with ``x = g (mod p)`` and ``x = 1 (mod q)``."""
    check_prime_pair(p, q)
    # x = g + p*k with p*k = 1 - g (mod q)
    k = (1 - g) * pow(p, -1, q) % q
    return (g + p * k) % (p * q)


def check_prime_pair(p: int, q: int) -> None:
    if p == q:
        raise ValueError(f"p and q must be distinct, got p = q = {p}")
    for name, value in (("p", p), ("q", q)):
        if value == 2 or not is_prime(value):
            raise ValueError(f"{name} = {value} is not an odd prime")
