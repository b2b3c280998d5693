"""Closed-form correlation distribution of the construction, and its verification.

Every shift ``w`` falls into exactly one branch of a case table keyed on the
cell containing ``w`` and on the parity of ``|f1 - f2|``. Cross-correlation
tables come in three families, by the label difference ``m``:

* ``antipodal`` -- ``m = e/2 (mod e)``
* ``quarter``   -- ``2m = e/2 (mod e)``
* ``generic``   -- everything else

The predictors evaluate each branch condition independently and insist that
exactly one of them holds.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from fhseq.construction import FHSequenceSet
from fhseq.correlation import (
    AverageBoundEntry,
    BoundsReport,
    CorrelationProfile,
    average_bound_check,
    bounds_report,
    correlation_profile,
)
from fhseq.cyclotomy import IN_P, IN_Q, IN_R, CyclotomicTables, Params


@dataclass(frozen=True)
class TheoremPrediction:
    w: int
    predicted: int
    case_tag: str


def _exact_div(a: int, b: int) -> int:
    if a % b:
        raise ArithmeticError(f"{a} is not divisible by {b}")
    return a // b


class _Terms:
    """The recurring quantities of the closed forms for one parameter set."""

    def __init__(self, prm: Params):
        self.e = prm.e
        self.h = prm.half
        self.even = prm.parity_even
        self.base = _exact_div(prm.L - 1, prm.e)
        # e divides both p-1 and q-1, hence p-q
        self.pq_shift = _exact_div(prm.p - prm.q, prm.e)
        self.p, self.q = prm.p, prm.q


def _pick(branches: List[Tuple[str, bool, int]], w: int) -> TheoremPrediction:
    fired = [(tag, value) for tag, cond, value in branches if cond]
    if len(fired) != 1:
        raise AssertionError(f"shift {w}: expected exactly one branch, got {[t for t, _ in fired]}")
    tag, value = fired[0]
    return TheoremPrediction(w, value, tag)


def _auto_branches(t: _Terms, c: int):
    B, s, h = t.base, t.pq_shift, t.h
    unit = c >= 0
    return [
        ("auto/P", c == IN_P, B + s + t.q - t.p - 1),
        ("auto/Q", c == IN_Q, B - s + t.p - t.q + 1),
        ("auto/Dhalf-even", unit and t.even and c == h, B - 1),
        ("auto/D0-or-Dhalf-odd", unit and not t.even and c in (0, h), B),
        ("auto/D0-even", unit and t.even and c == 0, B + 1),
        ("auto/D-other", unit and c not in (0, h), B + 1),
    ]


def _cross_branches(t: _Terms, m: int, c: int):
    """Branches for theorem-label difference ``m`` and cell code ``c``."""
    B, s, h, e = t.base, t.pq_shift, t.h, t.e
    unit = c >= 0
    if m == h:
        family = "antipodal"
        return [
            (f"{family}/zero", c == IN_R, 0),
            (f"{family}/P", c == IN_P, B + s + 2),
            (f"{family}/Q", c == IN_Q, B - s),
            (f"{family}/Dhalf-even", unit and t.even and c == h, B + 2),
            (f"{family}/D0-or-Dhalf-odd", unit and not t.even and c in (0, h), B + 1),
            (f"{family}/D0-even", unit and t.even and c == 0, B),
            (f"{family}/D-other", unit and c not in (0, h), B + 2),
        ]
    a, b = m, (m + h) % e
    if (2 * m) % e == h:
        family = "quarter"
        return [
            (f"{family}/zero", c == IN_R, 0),
            (f"{family}/P", c == IN_P, B + s),
            (f"{family}/Q", c == IN_Q, B - s),
            (f"{family}/Dm-or-Dm+half-even", unit and t.even and c in (a, b), B - 1),
            (f"{family}/Dm-odd", unit and not t.even and c == a, B - 2),
            (f"{family}/Dm+half-odd", unit and not t.even and c == b, B),
            (f"{family}/D-other", unit and c not in (a, b), B),
        ]
    family = "generic"
    mirror = (h - m) % e
    return [
        (f"{family}/zero", c == IN_R, 0),
        (f"{family}/P", c == IN_P, B + s),
        (f"{family}/Q", c == IN_Q, B - s),
        (f"{family}/Dm-even", unit and t.even and c == a, B),
        (f"{family}/Dm-odd", unit and not t.even and c == a, B - 1),
        (f"{family}/Dm+half-even", unit and t.even and c == b, B - 1),
        (f"{family}/Dm+half-odd", unit and not t.even and c == b, B),
        (f"{family}/D-other", unit and c not in (a, b, mirror), B),
        (f"{family}/Dhalf-m", unit and c == mirror, B - 1),
    ]


def predict_auto(tables: CyclotomicTables, w: int, *, allow_peak: bool = False) -> TheoremPrediction:
    """Predicted ``H_X(w)`` for any sequence of the set (it is label independent).

    The peak ``w = 0`` is only returned, as ``L``, with ``allow_peak=True``.
    """
    prm = tables.params
    if not 0 <= w < prm.L:
        raise ValueError(f"shift {w} outside [0, {prm.L})")
    if w == 0:
        if not allow_peak:
            raise ValueError("w = 0 is the in-phase peak, not a sidelobe; pass allow_peak=True")
        return TheoremPrediction(0, prm.L, "auto/peak")
    return _pick(_auto_branches(_Terms(prm), int(tables.cell_index[w])), w)


def theorem_labels(k: int, l: int, w: int, prm: Params) -> Tuple[int, int, int]:
    """Map construction labels and shift into the coordinates of the case table.

    The table is stated for the support-based labelling, in which sequence
    ``i`` equals this package's sequence ``-i``, and for the overlap sum
    ``|(C_{i+l} + w) ∩ C_{i+k}|``, which measures shift ``-w``. Both signs
    flip.
    """
    e, L = prm.e, prm.L
    return (-k) % e, (-l) % e, (-w) % L


def predict_cross(tables: CyclotomicTables, k: int, l: int, w: int) -> TheoremPrediction:
    """Predicted ``H_{X_k, X_l}(w)`` for construction labels ``k != l``."""
    prm = tables.params
    if k % prm.e == l % prm.e:
        raise ValueError("predict_cross needs two distinct labels")
    if not 0 <= w < prm.L:
        raise ValueError(f"shift {w} outside [0, {prm.L})")
    tk, tl, tw = theorem_labels(k, l, w, prm)
    m = (tl - tk) % prm.e
    return _pick(_cross_branches(_Terms(prm), m, int(tables.cell_index[tw])), w)


def predict_averages(params: Params) -> Tuple[Fraction, Fraction]:
    """Closed-form ``(A_a, A_c)`` of the set, as reduced fractions."""
    p, q, e = params.p, params.q, params.e
    n = p * q
    auto_num = (n - 1) ** 2 + e * (q * q + p * p) + e * (1 - n) - 2 * e * q - (q - 1) ** 2 - (p - 1) ** 2
    cross_num = (e - 1) * (n - 1) ** 2 + 2 * e * p * (q - 1) - (e - 1) * (q - 1) ** 2 - (e - 1) * (p - 1) ** 2
    return Fraction(auto_num, e * (n - 1)), Fraction(cross_num, n * e * (e - 1))


def closed_form_totals(params: Params) -> Tuple[int, int]:
    """``(S_a, 2 S_c)`` implied by the averages; both must be integers."""
    A_a, A_c = predict_averages(params)
    M, L = params.e, params.L
    S_a = A_a * M * (L - 1)
    S_c2 = A_c * L * M * (M - 1)
    if S_a.denominator != 1 or S_c2.denominator != 1:
        raise ArithmeticError("closed-form totals are not integers")
    return int(S_a), int(S_c2)


# ---------------------------------------------------------------- verification


@dataclass
class Mismatch:
    k: int
    l: int
    w: int
    case_tag: str
    predicted: int
    actual: int

    def to_dict(self) -> dict:
        return dict(vars(self))


@dataclass
class VerificationReport:
    params: Params
    total_checks: int = 0
    mismatches: List[Mismatch] = field(default_factory=list)
    case_tags: Counter = field(default_factory=Counter)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def family_counts(self) -> Dict[str, int]:
        out: Counter = Counter()
        for tag, n in self.case_tags.items():
            out[tag.split("/")[0]] += n
        return dict(out)

    def to_json_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "total_checks": self.total_checks,
            "mismatches": [m.to_dict() for m in self.mismatches],
            "passed": self.passed,
            "case_tags": dict(sorted(self.case_tags.items())),
        }


def verify_correlation_distribution(
    seqset: FHSequenceSet,
    tables: CyclotomicTables,
    profile: Optional[CorrelationProfile] = None,
) -> VerificationReport:
    """Compare every predicted auto/cross value with the brute-force tables."""
    if profile is None:
        profile = correlation_profile(seqset)
    prm = tables.params
    report = VerificationReport(prm)
    M, L = seqset.M, prm.L
    labels = seqset.labels
    for a in range(M):
        for b in range(M):
            actual = profile.table[a, b]
            for w in range(L):
                if a == b:
                    pred = predict_auto(tables, w, allow_peak=True)
                else:
                    pred = predict_cross(tables, labels[a], labels[b], w)
                report.total_checks += 1
                report.case_tags[pred.case_tag] += 1
                if pred.predicted != int(actual[w]):
                    report.mismatches.append(
                        Mismatch(labels[a], labels[b], w, pred.case_tag, pred.predicted, int(actual[w]))
                    )
    return report


@dataclass(frozen=True)
class AverageVerification:
    predicted: Tuple[Fraction, Fraction]
    measured: Tuple[Fraction, Fraction]
    bound: AverageBoundEntry

    @property
    def averages_match(self) -> bool:
        return self.predicted == self.measured

    @property
    def passed(self) -> bool:
        return self.averages_match and self.bound.met_with_equality

    def to_json_dict(self) -> dict:
        def frac(x):
            return {"num": x.numerator, "den": x.denominator}

        return {
            "predicted": {"A_a": frac(self.predicted[0]), "A_c": frac(self.predicted[1])},
            "measured": {"A_a": frac(self.measured[0]), "A_c": frac(self.measured[1])},
            "average_bound": self.bound.to_json_dict(),
            "passed": self.passed,
        }


def verify_average_optimality(profile: CorrelationProfile, params: Params) -> AverageVerification:
    """Closed-form averages equal the measured ones and meet the average bound exactly."""
    predicted = predict_averages(params)
    measured = (profile.A_a, profile.A_c)
    bound = average_bound_check(profile.L, profile.M, params.e, *measured)
    return AverageVerification(predicted, measured, bound)


@dataclass(frozen=True)
class OptimalityReport:
    bounds: BoundsReport

    @property
    def lg_optimal(self) -> bool:
        """Every sequence meets the Lempel-Greenberger bound."""
        return all(entry.optimal for entry in self.bounds.lempel_greenberger)

    @property
    def peng_fan_optimal(self) -> bool:
        return self.bounds.peng_fan.minimal_pair

    @property
    def average_optimal(self) -> bool:
        return self.bounds.average_bound.met_with_equality

    def verdicts(self) -> Dict[str, bool]:
        return {
            "lempel_greenberger_optimal": self.lg_optimal,
            "peng_fan_optimal": self.peng_fan_optimal,
            "average_optimal": self.average_optimal,
        }

    def to_json_dict(self) -> dict:
        return {**self.bounds.to_json_dict(), "verdicts": self.verdicts()}


def optimality_report(profile: CorrelationProfile, params: Params) -> OptimalityReport:
    return OptimalityReport(bounds_report(profile, params.e))
