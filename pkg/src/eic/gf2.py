"""Dense linear algebra over GF(2) on int bitsets.

A row of ``ncols`` bits is stored as a Python int; bit ``j`` is column ``j``.
Bit-strings render column 0 first, so ``"110"`` has columns 0 and 1 set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> Iterator[int]:
    """Yield the indices of set bits of ``x`` in ascending order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def from_bitstring(s: str) -> int:
    v = 0
    for j, ch in enumerate(s):
        if ch == "1":
            v |= 1 << j
        elif ch != "0":
            raise ValueError(f"invalid bit character {ch!r} in {s!r}")
    return v


def to_bitstring(v: int, length: int) -> str:
    return "".join("1" if (v >> j) & 1 else "0" for j in range(length))


@dataclass(frozen=True)
class BitMatrix:
    """Immutable ``nrows x ncols`` matrix over GF(2), one int per row."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        if self.ncols < 0:
            raise ValueError("ncols must be non-negative")
        limit = 1 << self.ncols
        for i, r in enumerate(self.rows):
            if r < 0 or r >= limit:
                raise ValueError(f"row {i} has bits beyond column {self.ncols - 1}")

    @classmethod
    def from_rows(cls, rows: Iterable[int], ncols: int) -> "BitMatrix":
        return cls(tuple(rows), ncols)

    @classmethod
    def from_strings(cls, rows: Sequence[str], ncols: int | None = None) -> "BitMatrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for s in rows:
            if len(s) != ncols:
                raise ValueError(f"row {s!r} does not have length {ncols}")
        return cls(tuple(from_bitstring(s) for s in rows), ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls((0,) * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not 0 <= j < self.ncols:
            raise IndexError(j)
        return (self.rows[i] >> j) & 1

    def to_strings(self) -> list[str]:
        return [to_bitstring(r, self.ncols) for r in self.rows]

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column count mismatch")
        return BitMatrix(self.rows + other.rows, self.ncols)

    def left_multiply(self, coeffs: int) -> int:
        """Return ``c . M`` for a row-coefficient bitset ``c``."""
        if coeffs >> len(self.rows):
            raise ValueError("coefficient vector longer than row count")
        acc = 0
        for i in bits(coeffs):
            acc ^= self.rows[i]
        return acc

    def rank(self) -> int:
        return rank(self)

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank of a collection of int rows; the hot path used by the solvers."""
    basis: list[int] = []  # kept sorted by leading bit, descending
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return len(basis)


def rank(m: BitMatrix) -> int:
    return rank_of_rows(m.rows)


def row_reduce(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form with pivots taken in ascending column order.

    Nonzero rows come first, ordered by pivot column, followed by zero rows.
    """
    work = list(m.rows)
    pivots: list[int] = []
    top = 0
    for col in range(m.ncols):
        mask = 1 << col
        piv = next((r for r in range(top, len(work)) if work[r] & mask), None)
        if piv is None:
            continue
        work[top], work[piv] = work[piv], work[top]
        for r in range(len(work)):
            if r != top and work[r] & mask:
                work[r] ^= work[top]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return BitMatrix(tuple(work), m.ncols), pivots


def express_in_rowspan(m: BitMatrix, v: int) -> int | None:
    """Return coefficients ``c`` (bit ``i`` = row ``i``) with ``c . m == v``.

    Returns None when ``v`` is not in the rowspan of ``m``.
    """
    if v < 0 or v >> m.ncols:
        raise ValueError(f"vector has bits beyond column {m.ncols - 1}")
    # pivot bit -> (reduced row, combination of original rows)
    basis: dict[int, tuple[int, int]] = {}
    for i, r in enumerate(m.rows):
        comb = 1 << i
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = (r, comb)
                break
            br, bc = basis[top]
            r ^= br
            comb ^= bc
    target, comb = v, 0
    while target:
        top = target.bit_length() - 1
        if top not in basis:
            return None
        br, bc = basis[top]
        target ^= br
        comb ^= bc
    assert m.left_multiply(comb) == v
    return comb


class Echelon:
    """Incrementally built row basis with canonical coset reduction.

    ``reduce(v)`` returns the unique representative of ``v + span`` that is
    zero on every pivot bit, so equal spans give equal reductions.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[int] = ()) -> None:
        self.rows: list[int] = []  # sorted by leading bit, descending
        for r in rows:
            self.add(r)

    def __len__(self) -> int:
        return len(self.rows)

    def copy(self) -> "Echelon":
        e = Echelon.__new__(Echelon)
        e.rows = self.rows[:]
        return e

    def reduce(self, v: int) -> int:
        for b in self.rows:
            v = min(v, v ^ b)
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def add(self, v: int) -> bool:
        """Add ``v`` to the span; returns True if the rank grew."""
        v = self.reduce(v)
        if not v:
            return False
        self.rows.append(v)
        self.rows.sort(reverse=True)
        return True
