"""Stabilizer tableau with destabilizers and sign bits (CHP layout).

Rows ``0..n-1`` are destabilizers, rows ``n..2n-1`` stabilizers.  Every
generator is stored as X and Z bit columns plus a sign bit ``r``
(``r = 1`` means a ``-1`` phase).
"""

from __future__ import annotations

from typing import Optional

import numpy as np


def _g(x1, z1, x2, z2):
    """Exponent of i picked up when multiplying single-qubit Paulis (x1,z1)*(x2,z2)."""
    x1 = x1.astype(np.int64)
    z1 = z1.astype(np.int64)
    x2 = x2.astype(np.int64)
    z2 = z2.astype(np.int64)
    return np.where(
        (x1 == 1) & (z1 == 1),
        z2 - x2,
        np.where(x1 == 1, z2 * (2 * x2 - 1), np.where(z1 == 1, x2 * (1 - 2 * z2), 0)),
    )


def pauli_product(x1, z1, r1, x2, z2, r2):
    """Product of two signed Hermitian Pauli strings that commute."""
    phase = (2 * int(r1) + 2 * int(r2) + int(_g(x1, z1, x2, z2).sum())) % 4
    if phase not in (0, 2):  # pragma: no cover - caller guarantees commutation
        raise ValueError("product of anticommuting Paulis is not Hermitian")
    return x1 ^ x2, z1 ^ z2, phase // 2


class StabilizerTableau:
    """Stabilizer state on ``n`` qubits, initialised to ``|0...0>``."""

    def __init__(self, n: int):
        self.n = n
        self.x = np.zeros((2 * n, n), dtype=np.uint8)
        self.z = np.zeros((2 * n, n), dtype=np.uint8)
        self.r = np.zeros(2 * n, dtype=np.uint8)
        idx = np.arange(n)
        self.x[idx, idx] = 1
        self.z[n + idx, idx] = 1

    def copy(self) -> "StabilizerTableau":
        t = StabilizerTableau.__new__(StabilizerTableau)
        t.n = self.n
        t.x = self.x.copy()
        t.z = self.z.copy()
        t.r = self.r.copy()
        return t

    @classmethod
    def graph_state(cls, n: int, rows) -> "StabilizerTableau":
        """Graph state from packed adjacency rows (``H`` on all, then ``CZ`` per edge)."""
        t = cls(n)
        for q in range(n):
            t.h(q)
        for i in range(n):
            r = rows[i] >> (i + 1)
            j = i + 1
            while r:
                if r & 1:
                    t.cz(i, j)
                r >>= 1
                j += 1
        return t

    # gates ----------------------------------------------------------------

    def h(self, q: int) -> None:
        x, z = self.x[:, q], self.z[:, q]
        self.r ^= x & z
        tmp = x.copy()
        self.x[:, q] = z
        self.z[:, q] = tmp

    def s(self, q: int) -> None:
        x = self.x[:, q]
        self.r ^= x & self.z[:, q]
        self.z[:, q] ^= x

    def s_dag(self, q: int) -> None:
        x = self.x[:, q]
        self.z[:, q] ^= x
        self.r ^= x & self.z[:, q]

    def sqrt_x_dag(self, q: int) -> None:
        self.h(q)
        self.s_dag(q)
        self.h(q)

    def px(self, q: int) -> None:
        self.r ^= self.z[:, q]

    def pz(self, q: int) -> None:
        self.r ^= self.x[:, q]

    def cnot(self, a: int, b: int) -> None:
        if a == b:
            raise ValueError("CNOT needs distinct qubits")
        xa, zb = self.x[:, a], self.z[:, b]
        self.r ^= xa & zb & (self.x[:, b] ^ self.z[:, a] ^ 1)
        self.x[:, b] ^= xa
        self.z[:, a] ^= zb

    def cz(self, a: int, b: int) -> None:
        self.h(b)
        self.cnot(a, b)
        self.h(b)

    # measurement ----------------------------------------------------------

    def _rowsum(self, h: int, i: int) -> None:
        phase = (2 * int(self.r[h]) + 2 * int(self.r[i])
                 + int(_g(self.x[i], self.z[i], self.x[h], self.z[h]).sum())) % 4
        self.r[h] = phase // 2
        self.x[h] ^= self.x[i]
        self.z[h] ^= self.z[i]

    def measure_z(self, q: int, rng: Optional[np.random.Generator] = None) -> tuple[int, bool]:
        """Measure ``Z_q``.  Returns ``(outcome, was_random)``.

        Random outcomes are drawn from ``rng`` or forced to 0 when it is None.
        """
        n = self.n
        hits = np.nonzero(self.x[n:, q])[0]
        if hits.size:
            p = n + int(hits[0])
            for i in np.nonzero(self.x[:, q])[0]:
                i = int(i)
                if i != p:
                    self._rowsum(i, p)
            self.x[p - n] = self.x[p]
            self.z[p - n] = self.z[p]
            self.r[p - n] = self.r[p]
            self.x[p] = 0
            self.z[p] = 0
            self.z[p, q] = 1
            outcome = 0 if rng is None else int(rng.integers(2))
            self.r[p] = outcome
            return outcome, True
        return self._deterministic_sign(np.zeros(n, np.uint8), _unit(n, q)), False

    def _deterministic_sign(self, px, pz) -> int:
        """Sign bit of a Pauli known to lie in the stabilizer group (up to sign)."""
        n = self.n
        # destabilizer i anticommutes with P  =>  stabilizer i appears in P's expansion
        anti = ((self.x[:n] @ pz) + (self.z[:n] @ px)) % 2
        ax = np.zeros(n, np.uint8)
        az = np.zeros(n, np.uint8)
        ar = 0
        for i in np.nonzero(anti)[0]:
            s = n + int(i)
            ax, az, ar = pauli_product(ax, az, ar, self.x[s], self.z[s], self.r[s])
        if not (np.array_equal(ax, px) and np.array_equal(az, pz)):
            raise ValueError("Pauli is not in the stabilizer group")
        return int(ar)

    def stabilizer_sign(self, px, pz) -> Optional[int]:
        """Sign bit of ``P`` if ``P`` or ``-P`` stabilizes the state, else ``None``."""
        n = self.n
        px = np.asarray(px, dtype=np.uint8)
        pz = np.asarray(pz, dtype=np.uint8)
        comm = ((self.x[n:] @ pz) + (self.z[n:] @ px)) % 2
        if comm.any():
            return None
        return self._deterministic_sign(px, pz)

    def stabilizers(self) -> list[str]:
        """Stabilizer generators as strings such as ``'+XZI'``."""
        out = []
        n = self.n
        for k in range(n, 2 * n):
            chars = []
            for q in range(n):
                chars.append("IXZY"[int(self.x[k, q]) + 2 * int(self.z[k, q])])
            out.append(("-" if self.r[k] else "+") + "".join(chars))
        return out


def _unit(n: int, q: int):
    v = np.zeros(n, np.uint8)
    v[q] = 1
    return v
