"""Periodic Hamming correlation, aggregate statistics and the classical bounds.

Only integer and :class:`fractions.Fraction` arithmetic is used here, so
equality with a bound is decided exactly.
"""
from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from fhseq._counting import shift_overlaps
from fhseq.construction import FHSequenceSet
from fhseq.cyclotomy import Params

DEFAULT_GATE = 50_000


class GateExceeded(ValueError):
    """The requested brute-force computation is above the configured length limit."""


def resolve_gate(gate: Optional[int] = None) -> int:
    """Brute-force length limit: explicit value, else ``$FHSEQ_GATE``, else 50 000."""
    if gate is not None:
        return int(gate)
    return int(os.environ.get("FHSEQ_GATE", DEFAULT_GATE))


def hamming_correlation(X, Y, tau: int) -> int:
    """Number of ``t`` with ``X[t] == Y[(t + tau) mod L]``."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.shape != Y.shape or X.ndim != 1:
        raise ValueError(f"sequences must be 1-D of equal length, got {X.shape} and {Y.shape}")
    L = X.size
    if not 0 <= tau < L:
        raise ValueError(f"shift {tau} outside [0, {L})")
    return int(np.count_nonzero(X == np.roll(Y, -tau)))


def correlation_table(X, Y, alphabet: int) -> np.ndarray:
    """``H_{X,Y}(tau)`` for every shift, by counting each coincidence once."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.shape != Y.shape or X.ndim != 1:
        raise ValueError(f"sequences must be 1-D of equal length, got {X.shape} and {Y.shape}")
    L = X.size
    out = np.zeros(L, dtype=np.int64)
    for f in range(alphabet):
        out += shift_overlaps(np.flatnonzero(X == f), np.flatnonzero(Y == f), L)
    return out


def _fraction_json(value: Fraction) -> dict:
    return {"num": value.numerator, "den": value.denominator}


@dataclass(frozen=True, eq=False)
class CorrelationProfile:
    """Every auto- and cross-correlation table of a set, plus its aggregates.

    ``table[k, l, tau]`` holds ``H_{X_k, X_l}(tau)``; the diagonal ``k == l``
    holds the autocorrelations.
    """

    params: Params
    table: np.ndarray = field(repr=False)
    H_a: int
    H_c: int
    S_a: int
    S_c: int
    A_a: Fraction
    A_c: Fraction

    @property
    def M(self) -> int:
        return self.table.shape[0]

    @property
    def L(self) -> int:
        return self.table.shape[2]

    @property
    def auto(self) -> np.ndarray:
        return np.stack([self.table[i, i] for i in range(self.M)])

    def cross(self, k: int, l: int) -> np.ndarray:
        if k == l:
            raise ValueError("cross-correlation needs two distinct sequences")
        return self.table[k, l]

    def max_sidelobes(self) -> List[int]:
        """Per-sequence maximum autocorrelation over ``1 <= tau < L``."""
        return [int(self.table[i, i, 1:].max()) if self.L > 1 else 0 for i in range(self.M)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["kind", "seq_k", "seq_l", "tau", "value"])
        for k in range(self.M):
            for l in range(self.M):
                kind = "auto" if k == l else "cross"
                for tau, value in enumerate(self.table[k, l].tolist()):
                    writer.writerow([kind, k, l, tau, value])
        return buf.getvalue()

    def summary_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "M": self.M,
            "L": self.L,
            "H_a": self.H_a,
            "H_c": self.H_c,
            "S_a": self.S_a,
            "S_c": self.S_c,
            "A_a": _fraction_json(self.A_a),
            "A_c": _fraction_json(self.A_c),
        }

    def to_json_dict(self) -> dict:
        out = self.summary_dict()
        out["auto"] = self.auto.tolist()
        out["cross"] = [
            {"seq_k": k, "seq_l": l, "values": self.table[k, l].tolist()}
            for k in range(self.M)
            for l in range(self.M)
            if k != l
        ]
        return out


def correlation_profile(
    seqset: FHSequenceSet,
    *,
    gate: Optional[int] = DEFAULT_GATE,
    workers: Optional[int] = None,
) -> CorrelationProfile:
    """Compute every correlation table of ``seqset`` directly.

    The cost is ``O(M^2 L^2 / v)``; sets longer than ``gate`` are refused
    (pass ``gate=None`` to lift the limit). ``workers`` spreads the ordered
    pairs over threads; the result does not depend on it.
    """
    L, M, v = seqset.L, seqset.M, seqset.v
    if gate is not None and L > gate:
        raise GateExceeded(f"L = {L} exceeds the brute-force limit {gate}")
    seqs = np.asarray(seqset.sequences)
    pairs = [(k, l) for k in range(M) for l in range(M)]

    def work(pair):
        k, l = pair
        return correlation_table(seqs[k], seqs[l], v)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(work, pairs))
    else:
        rows = [work(pair) for pair in pairs]
    table = np.stack(rows).reshape(M, M, L)
    table.setflags(write=False)

    diag = np.arange(M)
    auto = table[diag, diag]
    off = ~np.eye(M, dtype=bool)
    cross_sum = int(table[off].sum())
    if cross_sum % 2:
        raise AssertionError("ordered-pair cross sum must be even")
    S_a = int(auto[:, 1:].sum())
    S_c = cross_sum // 2
    return CorrelationProfile(
        params=seqset.params,
        table=table,
        H_a=int(auto[:, 1:].max()) if L > 1 else 0,
        H_c=int(table[off].max()) if M > 1 else 0,
        S_a=S_a,
        S_c=S_c,
        A_a=Fraction(S_a, M * (L - 1)),
        A_c=Fraction(2 * S_c, L * M * (M - 1)) if M > 1 else Fraction(0),
    )


# ---------------------------------------------------------------- bounds


def lempel_greenberger_bound(L: int, v: int) -> int:
    """Smallest maximum sidelobe any length-``L`` sequence over ``v`` symbols can have."""
    if L < 2 or v < 1:
        raise ValueError("need L >= 2 and v >= 1")
    b = L % v
    num = (L - b) * (L + b - v)
    den = v * (L - 1)
    return -(-num // den)


@dataclass(frozen=True)
class PengFanEntry:
    lhs: int
    rhs: int
    satisfied: bool
    minimal_pair: bool
    pareto_pairs: Tuple[Tuple[int, int], ...]
    I: int

    def to_json_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "satisfied": self.satisfied,
            "minimal_pair": self.minimal_pair,
            "pareto_pairs": [list(pair) for pair in self.pareto_pairs],
            "I": self.I,
        }


def _peng_fan_lhs(L, M, v, H_a, H_c):
    return (L - 1) * v * H_a + (M - 1) * L * v * H_c


def peng_fan_check(L: int, M: int, v: int, H_a: int, H_c: int) -> PengFanEntry:
    """Evaluate ``(L-1) v H_a + (M-1) L v H_c >= (LM - v) L``.

    ``pareto_pairs`` lists every Pareto-minimal integer solution inside the
    rectangle ``[0, H_a] x [0, H_c]``; ``minimal_pair`` says whether
    ``(H_a, H_c)`` itself is one of them.
    """
    if min(L, M, v) < 1 or min(H_a, H_c) < 0:
        raise ValueError("L, M, v must be positive and H_a, H_c non-negative")
    rhs = (L * M - v) * L
    lhs = _peng_fan_lhs(L, M, v, H_a, H_c)
    pareto = []
    best_c = None
    for a in range(H_a + 1):
        rest = rhs - (L - 1) * v * a
        if rest <= 0:
            c = 0
        elif M == 1:
            continue
        else:
            c = -(-rest // ((M - 1) * L * v))
        if c > H_c:
            continue
        if best_c is None or c < best_c:
            pareto.append((a, c))
            best_c = c
        if c == 0:
            break
    return PengFanEntry(
        lhs=lhs,
        rhs=rhs,
        satisfied=lhs >= rhs,
        minimal_pair=(H_a, H_c) in pareto,
        pareto_pairs=tuple(pareto),
        I=L * M // v,
    )


@dataclass(frozen=True)
class AverageBoundEntry:
    lhs: Fraction
    rhs: Fraction
    met_with_equality: bool

    @property
    def satisfied(self) -> bool:
        return self.lhs >= self.rhs

    def to_json_dict(self) -> dict:
        return {
            "lhs": _fraction_json(self.lhs),
            "rhs": _fraction_json(self.rhs),
            "satisfied": self.satisfied,
            "met_with_equality": self.met_with_equality,
        }


def average_bound_check(L: int, M: int, v: int, A_a, A_c) -> AverageBoundEntry:
    """``A_a / (L(M-1)) + A_c / (L-1)`` against ``(LM - v) / (v (L-1)(M-1))``."""
    if M < 2 or L < 2:
        raise ValueError("need M >= 2 and L >= 2")
    A_a = Fraction(A_a)
    A_c = Fraction(A_c)
    lhs = A_a / (L * (M - 1)) + A_c / (L - 1)
    rhs = Fraction(L * M - v, v * (L - 1) * (M - 1))
    return AverageBoundEntry(lhs, rhs, lhs == rhs)


@dataclass(frozen=True)
class LGEntry:
    bound: int
    achieved: int
    optimal: bool

    def to_json_dict(self) -> dict:
        return {"bound": self.bound, "achieved": self.achieved, "optimal": self.optimal}


@dataclass(frozen=True)
class BoundsReport:
    lempel_greenberger: Tuple[LGEntry, ...]
    peng_fan: PengFanEntry
    average_bound: AverageBoundEntry

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "lempel_greenberger": [entry.to_json_dict() for entry in self.lempel_greenberger],
            "peng_fan": self.peng_fan.to_json_dict(),
            "average_bound": self.average_bound.to_json_dict(),
        }


def bounds_report(profile: CorrelationProfile, v: Optional[int] = None) -> BoundsReport:
    L, M = profile.L, profile.M
    v = profile.params.e if v is None else v
    lg_bound = lempel_greenberger_bound(L, v)
    lg = tuple(LGEntry(lg_bound, achieved, achieved == lg_bound) for achieved in profile.max_sidelobes())
    return BoundsReport(
        lempel_greenberger=lg,
        peng_fan=peng_fan_check(L, M, v, profile.H_a, profile.H_c),
        average_bound=average_bound_check(L, M, v, profile.A_a, profile.A_c),
    )
