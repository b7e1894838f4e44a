"""Clifford gate records shared by the transpiler and the verifier."""

from __future__ import annotations

from dataclasses import dataclass

ONE_QUBIT = ("H", "PHASE", "SQRT_X_DAG", "X", "Z")
TWO_QUBIT = ("CZ", "CNOT")
MEASURE = "MZ"
GATE_NAMES = ONE_QUBIT + TWO_QUBIT + (MEASURE,)


@dataclass(frozen=True)
class GateOp:
    """One gate on named wires (``e<i>`` for emitters, ``p<j>`` for photons)."""

    name: str
    qubits: tuple[str, ...]

    def __post_init__(self):
        if self.name not in GATE_NAMES:
            raise ValueError(f"unknown gate {self.name!r}")
        arity = 2 if self.name in TWO_QUBIT else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.name} takes {arity} qubit(s)")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"{self.name} operands must differ")
        for q in self.qubits:
            parse_wire(q)

    def __str__(self) -> str:
        return " ".join((self.name,) + self.qubits)


def wire_e(i: int) -> str:
    return f"e{i}"


def wire_p(j: int) -> str:
    return f"p{j}"


def parse_wire(w: str) -> tuple[str, int]:
    if len(w) < 2 or w[0] not in "ep" or not w[1:].isdigit():
        raise ValueError(f"bad wire name {w!r}")
    return w[0], int(w[1:])


def H(q: str) -> GateOp:
    return GateOp("H", (q,))


def PHASE(q: str) -> GateOp:
    return GateOp("PHASE", (q,))


def SQRT_X_DAG(q: str) -> GateOp:
    return GateOp("SQRT_X_DAG", (q,))


def X(q: str) -> GateOp:
    return GateOp("X", (q,))


def Z(q: str) -> GateOp:
    return GateOp("Z", (q,))


def CZ(a: str, b: str) -> GateOp:
    return GateOp("CZ", (a, b))


def CNOT(c: str, t: str) -> GateOp:
    return GateOp("CNOT", (c, t))


def MZ(q: str) -> GateOp:
    return GateOp("MZ", (q,))
