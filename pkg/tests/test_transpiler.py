import pytest
from hypothesis import given

from conftest import connected_graphs
from graphbuilder.gates import CNOT, CZ, GateOp, H, MZ
from graphbuilder.generator import generate
from graphbuilder.graph import Graph
from graphbuilder.ops import Decouple, EmissionMode, Emit, EToInside
from graphbuilder.simplifier import simplify
from graphbuilder.transpiler import (
    CircuitError,
    append_corrections,
    cost_report,
    load_circuit,
    parse_circuit,
    transpile,
)
from graphbuilder.verifier import verify_circuit
from graphbuilder.zoo import complete, dfs_order, path, tree


def test_single_leaf_emission():
    c = transpile([Emit(0, 0, EmissionMode.SS)], 1)
    assert c.gates == [H("e0"), CNOT("e0", "p0"), H("p0")]


def test_linear_chain_has_no_cz():
    ops = [Emit(0, 0, EmissionMode.SS), Emit(0, 1, EmissionMode.L), Emit(0, 2, EmissionMode.L), Decouple(0)]
    c = transpile(ops, 3)
    assert c.count("CZ") == 0
    assert c.gates[-1] == MZ("e0")
    assert verify_circuit(c, path(3)).passed


def test_single_transfer_is_one_cz():
    ops = [Emit(1, 0, EmissionMode.SS), Emit(0, 1, EmissionMode.SS), EToInside(0, 1)]
    c = transpile(ops, 2)
    assert c.count("CZ") == 1 and c.emitter_cz_count() == 1


def test_fresh_wire_after_decouple_gets_hadamard():
    ops = [Emit(0, 0, EmissionMode.SS), Decouple(0), Emit(0, 1, EmissionMode.SS), Decouple(0)]
    c = transpile(ops, 2)
    assert [g for g in c.gates if g.name == "H" and g.qubits == ("e0",)] == [H("e0"), H("e0")]


def test_cost_examples():
    t = tree((3, 3, 3))
    rep = cost_report(generate(t, dfs_order(t)))
    assert rep.two_qubit_count == 8 and rep.emitters_used == 3
    empty = cost_report([])
    assert (empty.two_qubit_count, empty.emitters_used, empty.op_count) == (0, 0, 0)
    k6 = cost_report(generate(complete(6)))
    assert k6.two_qubit_count == 0 and k6.emitters_used == 1
    d = rep.to_dict()
    assert set(d) == {"two_qubit_count", "per_emitter_depth", "emitters_used", "op_count"}


@given(connected_graphs(min_n=3, max_n=14))
def test_cz_count_matches_cost(g):
    for rec in (generate(g), simplify(generate(g))):
        c = transpile(rec)
        assert c.emitter_cz_count() == cost_report(rec).two_qubit_count
        assert c.count("CZ") == c.emitter_cz_count()
        depth = cost_report(rec).per_emitter_depth
        assert sum(depth.values()) >= 0 and max(depth.values(), default=0) <= c.count("CZ")


def test_text_roundtrip(tmp_path):
    rec = generate(tree((2, 2)), None)
    c = transpile(rec)
    p = tmp_path / "c.txt"
    p.write_text(c.to_text())
    back = load_circuit(p)
    assert back.gates == c.gates and back.n_emitters == c.n_emitters and back.n_photons == c.n_photons


def test_parse_errors():
    for bad in ["", "qubits P=2", "nonsense", "qubits E=1 P=1\nFOO e0", "qubits E=1 P=1\nH e3",
                "qubits E=1 P=1\nCZ e0"]:
        with pytest.raises(CircuitError):
            parse_circuit(bad)
    c = parse_circuit("# comment\nqubits E=1 P=1\n\nH e0\n")
    assert c.gates == [H("e0")]


def test_append_corrections():
    c = parse_circuit("qubits E=1 P=2\nH e0\n")
    out = append_corrections(c, ["Z p1"])
    assert out.gates[-1] == GateOp("Z", ("p1",)) and len(c.gates) == 1
