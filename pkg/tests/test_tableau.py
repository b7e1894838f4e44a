import numpy as np
import pytest
from hypothesis import given

from conftest import graphs
from graphbuilder.graph import bits_of
from graphbuilder.tableau import StabilizerTableau
from graphbuilder.transpiler import parse_circuit
from graphbuilder.verifier import simulate


def pauli(n, xs=(), zs=()):
    px = np.zeros(n, np.uint8)
    pz = np.zeros(n, np.uint8)
    px[list(xs)] = 1
    pz[list(zs)] = 1
    return px, pz


def test_zero_state():
    t = StabilizerTableau(3)
    assert t.stabilizers() == ["+ZII", "+IZI", "+IIZ"]


def test_triangle_generators():
    t = StabilizerTableau.graph_state(3, [0b110, 0b101, 0b011])
    assert sorted(t.stabilizers()) == sorted(["+XZZ", "+ZXZ", "+ZZX"])


def test_single_emission_circuit_is_an_edge():
    c = parse_circuit("qubits E=1 P=1\nH e0\nCNOT e0 p0\nH p0\n")
    t, _ = simulate(c)
    # qubit 0 is the photon, qubit 1 the emitter
    assert t.stabilizer_sign(*pauli(2, [0], [1])) is not None
    assert t.stabilizer_sign(*pauli(2, [1], [0])) is not None


def test_signs_of_paulis():
    t = StabilizerTableau(1)
    assert t.stabilizer_sign(*pauli(1, zs=[0])) == 0
    t.px(0)
    assert t.stabilizer_sign(*pauli(1, zs=[0])) == 1
    assert t.stabilizer_sign(*pauli(1, xs=[0])) is None


def test_gate_identities():
    t = StabilizerTableau(1)
    t.h(0)
    t.s(0)
    t.s(0)  # S^2 = Z maps |+> to |->
    assert t.stabilizer_sign(*pauli(1, xs=[0])) == 1
    u = StabilizerTableau(1)
    u.h(0)
    u.sqrt_x_dag(0)
    assert u.stabilizer_sign(*pauli(1, xs=[0])) == 0


def test_measurement():
    t = StabilizerTableau(2)
    t.h(0)
    t.cnot(0, 1)
    m, rand = t.measure_z(0)
    assert rand and m == 0
    m2, rand2 = t.measure_z(1)
    assert not rand2 and m2 == 0
    gen = np.random.default_rng(1)
    seen = set()
    for _ in range(20):
        u = StabilizerTableau(2)
        u.h(0)
        u.cnot(0, 1)
        a, _ = u.measure_z(0, gen)
        b, _ = u.measure_z(1, gen)
        assert a == b
        seen.add(a)
    assert seen == {0, 1}


@given(graphs(max_n=7))
def test_graph_state_generators(g):
    t = StabilizerTableau.graph_state(g.n, g.rows)
    for v in range(g.n):
        assert t.stabilizer_sign(*pauli(g.n, [v], bits_of(g.rows[v]))) == 0


@given(graphs(min_n=1, max_n=6))
def test_copy_is_independent(g):
    t = StabilizerTableau.graph_state(g.n, g.rows)
    u = t.copy()
    u.h(0)
    assert t.stabilizer_sign(*pauli(g.n, [0], bits_of(g.rows[0]))) == 0


def test_not_in_group_raises():
    t = StabilizerTableau(2)
    with pytest.raises(ValueError):
        t._deterministic_sign(*pauli(2, xs=[0]))
