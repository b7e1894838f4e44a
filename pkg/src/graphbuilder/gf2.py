"""Dense linear algebra over GF(2).

Rows are stored bit-packed in Python integers: column ``j`` of a row is bit
``j`` of the integer.  Row addition is a single XOR regardless of width.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class NotInSpan(ValueError):
    """Raised when a vector cannot be written in terms of a basis."""


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over GF(2)."""

    bits: int
    len: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.len:
            raise ValueError("bits do not fit in the declared length")

    @classmethod
    def from_list(cls, values: Sequence[int]) -> "BitVector":
        bits = 0
        for j, v in enumerate(values):
            if v & 1:
                bits |= 1 << j
        return cls(bits, len(values))

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(0, n)

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.len)]

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.len:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __add__(self, other: "BitVector") -> "BitVector":
        if other.len != self.len:
            raise ValueError("length mismatch")
        return BitVector(self.bits ^ other.bits, self.len)

    __xor__ = __add__

    def __bool__(self) -> bool:
        return self.bits != 0

    def weight(self) -> int:
        return bin(self.bits).count("1")


@dataclass(frozen=True)
class BitMatrix:
    """Row-major GF(2) matrix with bit-packed rows."""

    data: tuple[int, ...]
    cols: int

    def __post_init__(self):
        limit = 1 << self.cols
        for r in self.data:
            if r < 0 or r >= limit:
                raise ValueError("row wider than matrix")

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.data), self.cols)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "BitMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged rows")
            packed.append(BitVector.from_list(row).bits)
        return cls(tuple(packed), cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls((0,) * rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def row(self, i: int) -> BitVector:
        return BitVector(self.data[i], self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not 0 <= j < self.cols:
            raise IndexError(j)
        return (self.data[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BitMatrix(tuple(out), self.rows)

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def drop_first_column(self) -> "BitMatrix":
        if self.cols == 0:
            raise ValueError("no column to drop")
        return BitMatrix(tuple(r >> 1 for r in self.data), self.cols - 1)

    def append_row(self, v: BitVector | int) -> "BitMatrix":
        bits = v.bits if isinstance(v, BitVector) else v
        return BitMatrix(self.data + (bits,), self.cols)


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank of a collection of packed rows."""
    pivots: dict[int, int] = {}  # leading bit -> reduced row
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                break
            r ^= p
    return len(pivots)


def rank(m: BitMatrix) -> int:
    return rank_of_rows(m.data)


class _Eliminator:
    """Incremental Gaussian elimination that remembers row combinations.

    Each stored pivot carries a bitmask over the indices of the vectors that
    were XORed together to produce it.
    """

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots: dict[int, tuple[int, int]] = {}

    def reduce(self, v: int, combo: int = 0) -> tuple[int, int]:
        while v:
            top = v.bit_length() - 1
            p = self.pivots.get(top)
            if p is None:
                break
            v ^= p[0]
            combo ^= p[1]
        return v, combo

    def add(self, v: int, combo: int) -> bool:
        v, combo = self.reduce(v, combo)
        if v == 0:
            return False
        self.pivots[v.bit_length() - 1] = (v, combo)
        return True


def select_row_basis_bits(rows: Sequence[int], preference: Optional[Sequence[int]] = None) -> list[int]:
    order = range(len(rows)) if preference is None else preference
    elim = _Eliminator()
    chosen = []
    for i in order:
        if elim.add(rows[i], 1 << i):
            chosen.append(i)
    return chosen


def select_row_basis(m: BitMatrix, preference: Optional[Sequence[int]] = None) -> list[int]:
    """Pick rows forming a basis of the row space of ``m``.

    Rows are scanned in ``preference`` order (default ascending) and kept
    whenever they are independent of the rows kept so far.  The result is
    listed in scan order.
    """
    if preference is not None:
        if sorted(preference) != list(range(m.rows)):
            raise ValueError("preference must be a permutation of the row indices")
    return select_row_basis_bits(m.data, preference)


def express_bits(v: int, basis: Sequence[int]) -> frozenset[int]:
    """Indices of ``basis`` whose XOR equals ``v``.

    ``basis`` need not be independent; when it is not, some valid subset is
    returned (earlier vectors are preferred as pivots).
    """
    elim = _Eliminator()
    for i, b in enumerate(basis):
        elim.add(b, 1 << i)
    rest, combo = elim.reduce(v)
    if rest:
        raise NotInSpan("vector is outside the span of the basis")
    out = []
    while combo:
        low = combo & -combo
        out.append(low.bit_length() - 1)
        combo ^= low
    return frozenset(out)


def express_in_basis(v: BitVector, basis: Sequence[BitVector]) -> frozenset[int]:
    for b in basis:
        if b.len != v.len:
            raise ValueError("length mismatch")
    return express_bits(v.bits, [b.bits for b in basis])


def find_dependency_bits(vectors: Sequence[int]) -> Optional[frozenset[int]]:
    """A nonempty subset of ``vectors`` that XORs to zero, or ``None``."""
    elim = _Eliminator()
    for i, v in enumerate(vectors):
        rest, combo = elim.reduce(v, 1 << i)
        if rest == 0:
            out = []
            while combo:
                low = combo & -combo
                out.append(low.bit_length() - 1)
                combo ^= low
            return frozenset(out)
        elim.pivots[rest.bit_length() - 1] = (rest, combo)
    return None


def in_span_bits(v: int, vectors: Iterable[int]) -> bool:
    elim = _Eliminator()
    for b in vectors:
        elim.add(b, 0)
    return elim.reduce(v)[0] == 0


def xor_all(vectors: Iterable[int]) -> int:
    acc = 0
    for v in vectors:
        acc ^= v
    return acc
