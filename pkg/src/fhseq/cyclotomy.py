"""Whiteman generalized cyclotomy of order ``e`` over Z_pq.

The units of Z_L (L = pq) split into ``e = gcd(p-1, q-1)`` classes
``D_i = {g^s x^i mod L : 0 <= s < d}``, where ``g`` is a common primitive
root of ``p`` and ``q`` and ``x = g (mod p)``, ``x = 1 (mod q)``. The
non-units are ``P`` (non-zero multiples of p), ``Q`` (non-zero multiples of
q) and ``R = {0}``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

import numpy as np

from fhseq import modmath
from fhseq._counting import shift_overlaps

# cell_index codes for the non-unit cells; classes use 0..e-1
IN_P = -1
IN_Q = -2
IN_R = -3
_UNSET = -4

# dense cell arrays are only built up to this length
INDEX_LIMIT = 10**8


@dataclass(frozen=True)
class Params:
    p: int
    q: int
    e: int
    d: int
    f1: int
    f2: int
    L: int
    g: int
    x: int

    def __post_init__(self):
        modmath.check_prime_pair(self.p, self.q)
        if self.L != self.p * self.q:
            raise ValueError("L must equal p*q")
        if self.e != math.gcd(self.p - 1, self.q - 1) or self.e % 2:
            raise ValueError(f"e = {self.e} does not match gcd(p-1, q-1)")
        if (self.d, self.f1, self.f2) != (
            (self.p - 1) * (self.q - 1) // self.e,
            (self.p - 1) // self.e,
            (self.q - 1) // self.e,
        ):
            raise ValueError("d, f1, f2 inconsistent with p, q, e")
        if not (modmath.is_primitive_root(self.g, self.p) and modmath.is_primitive_root(self.g, self.q)):
            raise ValueError(f"g = {self.g} is not a common primitive root of {self.p} and {self.q}")
        if self.x % self.p != self.g % self.p or self.x % self.q != 1:
            raise ValueError(f"x = {self.x} does not solve x = g (mod p), x = 1 (mod q)")

    @property
    def half(self) -> int:
        return self.e // 2

    @property
    def parity_even(self) -> bool:
        """Whether ``|f1 - f2|`` is even; selects between two sets of formulas."""
        return (self.f1 - self.f2) % 2 == 0

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


def build_params(p: int, q: int, g: Optional[int] = None) -> Params:
    """Derive the full parameter tuple for the prime pair ``(p, q)``.

    With ``g=None`` the smallest common primitive root is used, which makes
    every downstream artifact reproducible.
    """
    modmath.check_prime_pair(p, q)
    if p * q > modmath.MAX_MODULUS:
        raise ValueError(f"L = p*q = {p * q} exceeds the supported limit {modmath.MAX_MODULUS}")
    if g is None:
        g = modmath.find_common_primitive_root(p, q)
    else:
        if not 1 <= g < p * q:
            raise ValueError(f"g must lie in [1, pq), got {g}")
        if g % p == 0 or g % q == 0 or not (
            modmath.is_primitive_root(g, p) and modmath.is_primitive_root(g, q)
        ):
            raise ValueError(f"g = {g} is not a common primitive root of {p} and {q}")
    e = math.gcd(p - 1, q - 1)
    return Params(
        p=p,
        q=q,
        e=e,
        d=(p - 1) * (q - 1) // e,
        f1=(p - 1) // e,
        f2=(q - 1) // e,
        L=p * q,
        g=g,
        x=modmath.crt_solve_x(g, p, q),
    )


@dataclass(frozen=True)
class CellId:
    """Which cell of Z_L a residue lies in: class ``D_index`` or one of P, Q, R."""

    kind: str
    index: Optional[int] = None

    def __str__(self):
        return f"D{self.index}" if self.kind == "D" else self.kind


CELL_P = CellId("P")
CELL_Q = CellId("Q")
CELL_R = CellId("R")
_NON_UNIT = {IN_P: CELL_P, IN_Q: CELL_Q, IN_R: CELL_R}


def _powers(base: int, count: int, modulus: int) -> np.ndarray:
    """``base**s mod modulus`` for ``s in range(count)``, by block doubling."""
    out = np.ones(1, dtype=np.int64)
    while out.size < count:
        step = pow(base, int(out.size), modulus)
        out = np.concatenate([out, out * step % modulus])
    return out[:count]


@dataclass(frozen=True, eq=False)
class CyclotomicTables:
    params: Params
    classes: tuple
    P: np.ndarray
    Q: np.ndarray
    R: np.ndarray
    cell_index: np.ndarray = field(repr=False)

    @property
    def units(self) -> np.ndarray:
        return np.concatenate(self.classes)

    def members(self, cell: CellId) -> np.ndarray:
        if cell.kind == "D":
            return self.classes[cell.index % self.params.e]
        return {"P": self.P, "Q": self.Q, "R": self.R}[cell.kind]


def build_tables(params: Params) -> CyclotomicTables:
    """Generate every class by modular exponentiation and index all of Z_L."""
    p, q, e, d, L = params.p, params.q, params.e, params.d, params.L
    if L > INDEX_LIMIT:
        raise ValueError(f"L = {L} is above the dense-index limit {INDEX_LIMIT}; use CellLocator")
    dtype = np.int8 if e < 127 else np.int32
    cell_index = np.full(L, _UNSET, dtype=dtype)

    base = _powers(params.g, d, L)
    x_pow = 1
    classes = []
    for i in range(e):
        members = base * x_pow % L
        if np.any(cell_index[members] != _UNSET) or np.unique(members).size != d:
            raise RuntimeError(f"class D_{i} overlaps an earlier class; params are inconsistent")
        cell_index[members] = i
        classes.append(members)
        x_pow = x_pow * params.x % L

    P = np.arange(1, q, dtype=np.int64) * p
    Q = np.arange(1, p, dtype=np.int64) * q
    R = np.zeros(1, dtype=np.int64)
    for code, members in ((IN_P, P), (IN_Q, Q), (IN_R, R)):
        if np.any(cell_index[members] != _UNSET):
            raise RuntimeError("non-unit cell overlaps a cyclotomic class")
        cell_index[members] = code
    if np.any(cell_index == _UNSET):
        raise RuntimeError("classes together with P, Q, R do not cover Z_L")

    for arr in (*classes, P, Q, R, cell_index):
        arr.setflags(write=False)
    return CyclotomicTables(params, tuple(classes), P, Q, R, cell_index)


def cell_of(tables: CyclotomicTables, w: int) -> CellId:
    if not 0 <= w < tables.params.L:
        raise ValueError(f"residue {w} outside [0, {tables.params.L})")
    code = int(tables.cell_index[w])
    return CellId("D", code) if code >= 0 else _NON_UNIT[code]


class CellLocator:
    """Constant-time cell lookup without a dense array over Z_L.

    Writing a unit as ``t = g^s x^i``, reduction mod q gives ``g^s`` and
    reduction mod p gives ``g^(s+i)``, so the class index is the difference
    of the two discrete logarithms taken mod ``e``. Only tables of size p
    and q are stored.
    """

    def __init__(self, params: Params):
        self.params = params
        self._log_p = self._log_table(params.g, params.p)
        self._log_q = self._log_table(params.g, params.q)

    @staticmethod
    def _log_table(g, prime):
        table = np.zeros(prime, dtype=np.int64)
        table[_powers(g % prime, prime - 1, prime)] = np.arange(prime - 1)
        return table

    def codes(self, t) -> np.ndarray:
        """Vectorised cell codes (class index, or ``IN_P``/``IN_Q``/``IN_R``)."""
        t = np.asarray(t, dtype=np.int64) % self.params.L
        rp = t % self.params.p
        rq = t % self.params.q
        out = (self._log_p[rp] - self._log_q[rq]) % self.params.e
        out = np.where(rp == 0, IN_P, out)
        out = np.where(rq == 0, IN_Q, out)
        return np.where(t == 0, IN_R, out)

    def __call__(self, t: int) -> CellId:
        code = int(self.codes(t))
        return CellId("D", code) if code >= 0 else _NON_UNIT[code]


def cyclotomic_number(tables: CyclotomicTables, i: int, j: int) -> int:
    """``(i, j) = |(D_i + 1) ∩ D_j|`` counted directly."""
    e = tables.params.e
    if not (0 <= i < e and 0 <= j < e):
        raise ValueError(f"class indices must lie in [0, {e})")
    shifted = (tables.classes[i] + 1) % tables.params.L
    return int(np.count_nonzero(tables.cell_index[shifted] == j))


def cyclotomic_matrix(tables: CyclotomicTables) -> np.ndarray:
    e = tables.params.e
    out = np.zeros((e, e), dtype=np.int64)
    for i, members in enumerate(tables.classes):
        codes = tables.cell_index[(members + 1) % tables.params.L]
        codes = codes[codes >= 0].astype(np.int64)
        out[i] = np.bincount(codes, minlength=e)
    return out


# ---------------------------------------------------------------- structure checks


@dataclass
class LemmaReport:
    lemma: str
    cases_checked: int = 0
    passed: bool = True
    first_counterexample: Optional[dict] = None
    description: str = ""

    def check(self, expected: int, actual: int, **where) -> None:
        self.cases_checked += 1
        if expected != actual and self.passed:
            self.passed = False
            self.first_counterexample = {
                "w": where.pop("w", None),
                "i": where.pop("i", None),
                "expected": int(expected),
                "actual": int(actual),
                **where,
            }

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "cases_checked": self.cases_checked,
            "passed": self.passed,
            "first_counterexample": self.first_counterexample,
        }


def verify_structure_lemmas(tables: CyclotomicTables) -> List[LemmaReport]:
    """Check the counting identities of the cyclotomy by exhaustive enumeration.

    Every left-hand side is counted directly from the class lists; the
    right-hand sides are the closed values the construction's correlation
    analysis relies on. Failures are recorded, never corrected.
    """
    prm = tables.params
    p, q, e, L, h = prm.p, prm.q, prm.e, prm.L, prm.half
    f1, f2 = prm.f1, prm.f2
    base = ((p - 2) * (q - 2) - 1) // e
    codes = tables.cell_index.astype(np.int64)
    D = tables.classes
    QR = np.concatenate([tables.Q, tables.R])
    PR = np.concatenate([tables.P, tables.R])
    reports = []

    def new(name, description):
        rep = LemmaReport(name, description=description)
        reports.append(rep)
        return rep

    cn = cyclotomic_matrix(tables)

    rep = new("cyclotomic_symmetry", "(i, j) = (e - i, j - i)")
    for i in range(e):
        for j in range(e):
            rep.check(cn[(e - i) % e, (j - i) % e], cn[i, j], i=i, j=j)

    rep = new("cyclotomic_column_sum", "sum_i (i, j) = ((p-2)(q-2)-1)/e + [j = 0]")
    for j in range(e):
        rep.check(base + (j == 0), cn[:, j].sum(), i=j)

    rep = new("diagonal_sum", "sum_i (k+i, i) = ((p-2)(q-2)-1)/e + [k = 0]")
    for k in range(e):
        rep.check(base + (k == 0), sum(cn[(k + i) % e, i] for i in range(e)), i=k)

    # overlaps[a][b][w] = |(D_a + w) ∩ D_b|
    overlaps = [[shift_overlaps(D[a], D[b], L) for b in range(e)] for a in range(e)]
    over = {
        "QR_QR": shift_overlaps(QR, QR, L),
        "P_P": shift_overlaps(tables.P, tables.P, L),
        "P_QR": shift_overlaps(tables.P, QR, L),
    }
    to_qr = [shift_overlaps(D[i], QR, L) for i in range(e)]
    to_pr = [shift_overlaps(D[i], PR, L) for i in range(e)]
    to_p = [shift_overlaps(D[i], tables.P, L) for i in range(e)]
    to_r = [shift_overlaps(D[i], tables.R, L) for i in range(e)]
    from_p = [shift_overlaps(tables.P, D[i], L) for i in range(e)]

    rep = new("self_overlap_sum", "sum_i |(D_i + w) ∩ D_i| for w != 0")
    self_sum = sum(overlaps[i][i] for i in range(e))
    for w in range(1, L):
        c = codes[w]
        expected = e * f1 * (f2 - 1) if c == IN_P else e * f2 * (f1 - 1) if c == IN_Q else base + 1
        rep.check(expected, self_sum[w], w=w)

    rep = new("cross_overlap_sum", "sum_i |(D_{i+k} + w) ∩ D_i| for k != 0, w != 0")
    for k in range(1, e):
        cross_sum = sum(overlaps[(i + k) % e][i] for i in range(e))
        for w in range(1, L):
            expected = e * f1 * f2 if codes[w] in (IN_P, IN_Q) else base
            rep.check(expected, cross_sum[w], w=w, i=k)

    rep = new("qr_self_overlap", "|((Q ∪ R) + w) ∩ (Q ∪ R)|")
    for w in range(L):
        rep.check(p if codes[w] in (IN_Q, IN_R) else 0, over["QR_QR"][w], w=w)

    rep = new("p_self_overlap", "|(P + w) ∩ P|")
    for w in range(L):
        expected = q - 2 if codes[w] == IN_P else q - 1 if w == 0 else 0
        rep.check(expected, over["P_P"][w], w=w)

    rep = new("class_to_qr", "|(D_i + w) ∩ (Q ∪ R)|")
    for i in range(e):
        for w in range(L):
            rep.check(0 if codes[w] in (IN_Q, IN_R) else f1, to_qr[i][w], w=w, i=i)

    rep = new("class_to_pr", "|(D_i + w) ∩ (P ∪ R)|")
    for i in range(e):
        for w in range(L):
            rep.check(0 if codes[w] in (IN_P, IN_R) else f2, to_pr[i][w], w=w, i=i)

    rep = new("minus_one_class", "-1 lies in D_0 (|f1-f2| even) or D_{e/2} (odd)")
    rep.check(0 if prm.parity_even else h, codes[L - 1], w=L - 1)

    # the class whose negatives meet R; it carries the -1 in the counts below
    def hit_class(i):
        return i if prm.parity_even else (h + i) % e

    rep = new("class_to_zero", "|(D_i + w) ∩ R|")
    for i in range(e):
        for w in range(L):
            expected = 1 if codes[w] == hit_class(i) else 0
            rep.check(expected, to_r[i][w], w=w, i=i)

    rep = new("class_to_p", "|(D_i + w) ∩ P|")
    for i in range(e):
        for w in range(L):
            c = codes[w]
            if c in (IN_P, IN_R):
                expected = 0
            elif c == IN_Q:
                expected = f2
            else:
                expected = f2 - 1 if c == hit_class(i) else f2
            rep.check(expected, to_p[i][w], w=w, i=i)

    rep = new("p_to_class", "|(P + w) ∩ D_i|")
    for i in range(e):
        for w in range(L):
            c = codes[w]
            expected = 0 if c in (IN_P, IN_R) else f2 - 1 if c == i else f2
            rep.check(expected, from_p[i][w], w=w, i=i)

    rep = new("p_to_qr", "|(P + w) ∩ (Q ∪ R)| for w != 0")
    for w in range(1, L):
        rep.check(0 if codes[w] == IN_Q else 1, over["P_QR"][w], w=w)

    return reports
