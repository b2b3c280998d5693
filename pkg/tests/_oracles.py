"""Slow, obviously-correct reference computations used only by the tests.

None of these import from fhseq.
"""
from math import gcd


def is_prime_naive(n):
    return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))


def order_orbit(g, n):
    """Size of the cyclic orbit {g, g^2, ...} modulo n."""
    seen = set()
    y = g % n
    while y not in seen:
        seen.add(y)
        y = y * g % n
    return len(seen)


def smallest_common_root(p, q):
    g = 2
    while not (g % p and g % q and order_orbit(g, p) == p - 1 and order_orbit(g, q) == q - 1):
        g += 1
    return g


def whiteman_classes(p, q, g):
    """Classes D_i as Python sets, from the defining products g^s x^i."""
    L = p * q
    e = gcd(p - 1, q - 1)
    d = (p - 1) * (q - 1) // e
    x = next(t for t in range(L) if t % p == g % p and t % q == 1)
    classes = []
    for i in range(e):
        xi = 1
        for _ in range(i):
            xi = xi * x % L
        members = set()
        gs = 1
        for _ in range(d):
            members.add(gs * xi % L)
            gs = gs * g % L
        classes.append(members)
    return classes


def naive_sequences(p, q, g):
    """Sequence i maps t to (cell(t) + i) mod e, cells built from plain sets."""
    L = p * q
    e = gcd(p - 1, q - 1)
    classes = whiteman_classes(p, q, g)
    cell = {}
    for i, members in enumerate(classes):
        for t in members:
            cell[t] = i
    for t in range(L):
        if t == 0 or t % q == 0:
            cell[t] = 0
        elif t % p == 0:
            cell[t] = e // 2
    return [[(cell[t] + i) % e for t in range(L)] for i in range(e)]


def naive_H(X, Y, tau):
    L = len(X)
    return sum(1 for t in range(L) if X[t] == Y[(t + tau) % L])
