"""Partition of Z_L into ``e`` cells and the FH sequence set built on it.

The non-unit cells are absorbed into two classes::

    C_0     = D_0 ∪ Q ∪ R
    C_{e/2} = D_{e/2} ∪ P
    C_i     = D_i otherwise

and sequence ``i`` hops to frequency ``(cell(t) + i) mod e`` at time ``t``.
Every sequence is therefore a rotation of the alphabet of sequence 0.
"""
from __future__ import annotations

import csv
import io
import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from fhseq.cyclotomy import (
    IN_P,
    IN_Q,
    IN_R,
    CellLocator,
    CyclotomicTables,
    Params,
    build_params,
    build_tables,
)


@dataclass(frozen=True, eq=False)
class Partition:
    params: Params
    cells: tuple
    cell_index: np.ndarray = field(repr=False)

    @property
    def sizes(self) -> List[int]:
        return [len(c) for c in self.cells]


def _merge_codes(codes: np.ndarray, half: int) -> np.ndarray:
    out = codes.astype(np.int64, copy=True)
    out[(codes == IN_Q) | (codes == IN_R)] = 0
    out[codes == IN_P] = half
    return out


def build_partition(tables: CyclotomicTables) -> Partition:
    prm = tables.params
    e, h = prm.e, prm.half
    cells = []
    for i in range(e):
        parts = [tables.classes[i]]
        if i == 0:
            parts += [tables.Q, tables.R]
        if i == h:
            parts.append(tables.P)
        cells.append(np.sort(np.concatenate(parts)))

    cell_index = _merge_codes(tables.cell_index, h).astype(tables.cell_index.dtype)
    counts = np.bincount(cell_index.astype(np.int64), minlength=e)
    if sum(len(c) for c in cells) != prm.L or list(counts) != [len(c) for c in cells]:
        raise RuntimeError("cells do not partition Z_L")
    for arr in (*cells, cell_index):
        arr.setflags(write=False)
    return Partition(prm, tuple(cells), cell_index)


@dataclass(frozen=True, eq=False)
class FHSequenceSet:
    """``e`` hopping sequences of length ``L`` over the alphabet ``0..e-1``."""

    params: Params
    sequences: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        seqs = np.asarray(self.sequences)
        if seqs.ndim != 2 or seqs.shape[1] != self.params.L:
            raise ValueError(f"expected an array of shape (M, {self.params.L}), got {seqs.shape}")
        if seqs.size and (seqs.min() < 0 or seqs.max() >= self.params.e):
            raise ValueError(f"symbols must lie in [0, {self.params.e})")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(seqs.shape[0])))

    @property
    def M(self) -> int:
        return self.sequences.shape[0]

    @property
    def L(self) -> int:
        return self.params.L

    @property
    def v(self) -> int:
        """Size of the frequency library."""
        return self.params.e

    def __len__(self):
        return self.M

    def __getitem__(self, i) -> np.ndarray:
        return self.sequences[i]

    # -------------------------------------------------------------- export

    def to_digits(self) -> str:
        """One line per sequence, one character per symbol (only for ``e <= 10``)."""
        if self.v > 10:
            raise ValueError(f"digit strings need e <= 10, got e = {self.v}")
        return "".join("".join(map(str, row)) + "\n" for row in self.sequences.tolist())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(self.sequences.tolist())
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        prm = self.params
        return {
            "p": prm.p,
            "q": prm.q,
            "e": prm.e,
            "g": prm.g,
            "x": prm.x,
            "params": prm.to_dict(),
            "labels": list(self.labels),
            "sequences": self.sequences.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: dict) -> "FHSequenceSet":
        """Rebuild from :meth:`to_json_dict` output; the params are re-derived and checked."""
        prm = build_params(int(data["p"]), int(data["q"]), int(data["g"]))
        for key in ("e", "x"):
            if key in data and int(data[key]) != getattr(prm, key):
                raise ValueError(f"{key} = {data[key]} disagrees with the derived value {getattr(prm, key)}")
        seqs = np.asarray(data["sequences"], dtype=np.int64)
        labels = tuple(data.get("labels") or range(len(seqs)))
        return cls(prm, seqs, labels)


def build_sequence_set(partition: Partition) -> FHSequenceSet:
    prm = partition.params
    base = partition.cell_index.astype(np.int16 if prm.e < 2**15 else np.int64)
    shifts = np.arange(prm.e, dtype=base.dtype)[:, None]
    sequences = (base[None, :] + shifts) % prm.e
    sequences.setflags(write=False)
    return FHSequenceSet(prm, sequences, tuple(range(prm.e)))


def construct(p: int, q: int, g: Optional[int] = None) -> FHSequenceSet:
    """Shortcut: parameters, tables, partition and sequence set in one call."""
    return build_sequence_set(build_partition(build_tables(build_params(p, q, g))))


class LazySequence(Sequence):
    """Sequence ``i`` evaluated on demand, for periods too long to materialise.

    Lookups go through :class:`CellLocator`, so memory is O(p + q).
    """

    def __init__(self, params: Params, label: int, locator: Optional[CellLocator] = None):
        self.params = params
        self.label = label % params.e
        self._locator = locator or CellLocator(params)

    def __len__(self):
        return self.params.L

    def symbols(self, t) -> np.ndarray:
        codes = self._locator.codes(t)
        return (_merge_codes(np.asarray(codes), self.params.half) + self.label) % self.params.e

    def __getitem__(self, t):
        if isinstance(t, slice):
            return self.symbols(np.arange(*t.indices(len(self))))
        if not -len(self) <= t < len(self):
            raise IndexError(t)
        return int(self.symbols(t % len(self)))
