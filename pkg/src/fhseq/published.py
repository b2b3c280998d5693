"""Reference values for ``(p, q) = (5, 17)`` with ``g = 3``.

The four sequences and the correlation listings are transcribed verbatim,
defects included: some listings are printed with values dropped, duplicated
or mistyped. :func:`compare_published` aligns each listing against the
brute-force table and classifies every difference, so a garbled transcript
is not mistaken for a wrong construction.
"""
from __future__ import annotations

import difflib
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from fhseq.construction import FHSequenceSet
from fhseq.correlation import CorrelationProfile, correlation_profile

P, Q, G = 5, 17, 3

SEQUENCES = (
    "0010221030212112001020223220212311022211211332330020331230202100222302233032212320232",
    "1121332101323223112131330331323022133322322003001131002301313211333013300103323031303",
    "2232003212030330223202001002030133200033033110112202113012020322000120011210030102010",
    "3303110323101001330313112113101200311100100221223313220123131033111231122321101213121",
)

AUTOCORRELATION = (
    85, 21, 22, 21, 21, 29, 22, 21, 22, 21, 29, 22, 21, 22, 22, 29, 21, 13, 22, 21,
    29, 21, 21, 21, 22, 29, 21, 21, 21, 22, 29, 22, 22, 22, 13, 29, 21, 21, 22, 22,
    29, 22, 22, 22, 22, 29, 22, 22, 21, 21, 29, 13, 22, 22, 22, 29, 22, 21, 21, 21,
    29, 22, 21, 21, 21, 29, 21, 22, 13, 21, 29, 22, 22, 21, 22, 29, 21, 22, 21, 22,
    29, 21, 21, 22, 21,
)

CROSSCORRELATION = {
    (0, 1): (
        0, 21, 19, 21, 21, 18, 19, 21, 21, 21, 18, 19, 21, 19, 19, 18, 21, 24, 19, 21,
        18, 21, 21, 21, 21, 18, 21, 21, 21, 19, 18, 21, 19, 19, 24, 18, 21, 21, 19, 19,
        18, 19, 19, 21, 21, 18, 21, 21, 21, 21, 18, 24, 21, 21, 19, 18, 21, 21, 21, 21,
        8, 19, 21, 21, 21, 18, 21, 21, 24, 21, 18, 21, 21, 21, 18, 21, 19, 21, 21, 18,
        21, 19, 21, 21, 18, 21, 21, 21,
    ),
    (0, 2): (
        0, 22, 23, 22, 22, 20, 23, 22, 23, 22, 20, 23, 22, 23, 23, 20, 22, 24, 23, 22,
        20, 22, 22, 22, 23, 20, 22, 22, 22, 23, 20, 23, 23, 23, 24, 20, 22, 22, 23, 23,
        20, 23, 23, 23, 23, 20, 23, 23, 22, 22, 20, 24, 23, 23, 23, 20, 23, 22, 22, 22,
        20, 23, 22, 22, 22, 20, 22, 23, 24, 22, 20, 23, 23, 22, 23, 20, 22, 23, 22, 23,
        20, 22, 22, 23, 22,
    ),
    (0, 3): (
        0, 21, 21, 21, 21, 18, 21, 21, 19, 21, 18, 21, 21, 21, 21, 18, 21, 24, 21, 21,
        18, 21, 21, 21, 19, 18, 21, 21, 21, 18, 19, 21, 21, 24, 18, 21, 21, 21, 21, 18,
        21, 21, 19, 19, 18, 19, 19, 21, 21, 18, 24, 19, 19, 21, 18, 19, 21, 21, 21, 18,
        21, 21, 21, 21, 18, 21, 19, 24, 21, 18, 19, 19, 21, 19, 18, 21, 21, 21, 19, 18,
        21, 21, 19, 21,
    ),
    (1, 2): (
        0, 21, 19, 21, 21, 18, 19, 21, 21, 21, 18, 19, 21, 19, 19, 18, 21, 24, 19, 21,
        18, 21, 21, 21, 21, 18, 21, 21, 21, 19, 18, 21, 19, 19, 24, 18, 21, 21, 19, 19,
        18, 19, 19, 21, 21, 18, 21, 21, 21, 21, 18, 24, 21, 21, 19, 18, 21, 21, 21, 21,
        18, 19, 21, 21, 21, 18, 21, 21, 24, 21, 18, 21, 21, 21, 21, 18, 21, 19, 21, 21,
        18, 21, 21, 21,
    ),
    (1, 3): (
        0, 22, 23, 22, 22, 20, 23, 22, 23, 22, 20, 23, 22, 23, 23, 20, 22, 24, 23, 22,
        20, 22, 22, 22, 23, 20, 22, 22, 22, 23, 20, 23, 23, 23, 24, 20, 22, 22, 23, 23,
        20, 23, 23, 23, 23, 20, 23, 23, 22, 22, 20, 24, 23, 23, 23, 20, 23, 22, 22, 22,
        20, 23, 22, 22, 22, 20, 22, 23, 24, 22, 20, 23, 23, 22, 23, 20, 22, 23, 22, 23,
        20, 22, 22, 23, 22,
    ),
    (2, 3): (
        0, 21, 19, 21, 21, 18, 19, 21, 21, 21, 18, 19, 21, 19, 19, 18, 21, 24, 19, 21,
        18, 21, 21, 21, 21, 18, 21, 21, 21, 19, 18, 21, 19, 19, 24, 18, 21, 21, 19, 19,
        18, 19, 19, 21, 21, 18, 21, 21, 21, 21, 18, 24, 21, 21, 19, 18, 21, 21, 21, 21,
        18, 19, 21, 21, 21, 18, 21, 21, 24, 21, 18, 21, 21, 21, 21, 18, 21, 19, 21, 21,
        18, 21, 21, 21,
    ),
}

# (listing, shift) -> (printed, value implied by the closed form and by the
# sibling listings with the same label difference)
KNOWN_TYPOS = {((0, 1), 60): (8, 18)}


@dataclass(frozen=True)
class Substitution:
    tau: int
    printed: int
    computed: int
    known_typo: bool

    def to_dict(self) -> dict:
        return dict(vars(self))


@dataclass
class ListingComparison:
    pair: Tuple[int, int]
    printed_length: int
    substitutions: List[Substitution] = field(default_factory=list)
    # printed values with no counterpart, keyed by the shift they precede
    insertions: List[Tuple[int, Tuple[int, ...]]] = field(default_factory=list)
    # computed shifts the listing skips
    deletions: List[Tuple[int, Tuple[int, ...]]] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return not (self.substitutions or self.insertions or self.deletions)

    def to_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "printed_length": self.printed_length,
            "substitutions": [s.to_dict() for s in self.substitutions],
            "insertions": [{"before_tau": t, "values": list(v)} for t, v in self.insertions],
            "deletions": [{"tau": t, "values": list(v)} for t, v in self.deletions],
        }


def compare_listing(pair: Tuple[int, int], printed: Sequence[int], computed: Sequence[int]) -> ListingComparison:
    computed = [int(v) for v in computed]
    printed = [int(v) for v in printed]
    out = ListingComparison(pair, len(printed))
    matcher = difflib.SequenceMatcher(a=computed, b=printed, autojunk=False)
    for op, i1, i2, j1, j2 in matcher.get_opcodes():
        if op == "equal":
            continue
        common = min(i2 - i1, j2 - j1) if op == "replace" else 0
        for n in range(common):
            tau = i1 + n
            typo = KNOWN_TYPOS.get((pair, tau)) == (printed[j1 + n], computed[tau])
            out.substitutions.append(Substitution(tau, printed[j1 + n], computed[tau], typo))
        if j2 - j1 > common:
            out.insertions.append((i1 + common, tuple(printed[j1 + common:j2])))
        if i2 - i1 > common:
            out.deletions.append((i1 + common, tuple(computed[i1 + common:i2])))
    return out


@dataclass
class PublishedComparison:
    sequences_match: List[bool]
    listings: Dict[Tuple[int, int], ListingComparison]

    @property
    def substitutions(self) -> List[Tuple[Tuple[int, int], Substitution]]:
        return [(pair, s) for pair, cmp in self.listings.items() for s in cmp.substitutions]

    @property
    def unexpected_substitutions(self):
        return [(pair, s) for pair, s in self.substitutions if not s.known_typo]

    @property
    def structural_defects(self) -> Dict[Tuple[int, int], dict]:
        return {
            pair: {"insertions": cmp.insertions, "deletions": cmp.deletions}
            for pair, cmp in self.listings.items()
            if cmp.insertions or cmp.deletions
        }

    @property
    def values_agree(self) -> bool:
        """Every printed value agrees with brute force except annotated typos."""
        return all(self.sequences_match) and not self.unexpected_substitutions

    def to_json_dict(self) -> dict:
        return {
            "sequences_match": self.sequences_match,
            "listings": [cmp.to_dict() for cmp in self.listings.values()],
            "values_agree": self.values_agree,
            "note": "known typos are expected deviations; brute force is authoritative",
        }


def is_reference_set(seqset: FHSequenceSet) -> bool:
    prm = seqset.params
    return (prm.p, prm.q, prm.g) == (P, Q, G) and seqset.M == len(SEQUENCES)


def compare_published(seqset: FHSequenceSet, profile: CorrelationProfile = None) -> PublishedComparison:
    if not is_reference_set(seqset):
        raise ValueError(f"reference values exist only for p={P}, q={Q}, g={G}")
    if profile is None:
        profile = correlation_profile(seqset)
    rows = np.asarray(seqset.sequences).tolist()
    seq_ok = ["".join(map(str, row)) == ref for row, ref in zip(rows, SEQUENCES)]
    listings = {}
    for i in range(seqset.M):
        listings[(i, i)] = compare_listing((i, i), AUTOCORRELATION, profile.table[i, i])
    for pair, printed in CROSSCORRELATION.items():
        listings[pair] = compare_listing(pair, printed, profile.table[pair])
    return PublishedComparison(seq_ok, listings)
