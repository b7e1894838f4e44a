"""Tableau-side helpers shared by the op and transpiler tests."""

import random

import numpy as np

from graphbuilder.graph import bits_of
from graphbuilder.ops import PhysicalState, initial_state
from graphbuilder.tableau import StabilizerTableau


def random_state(rng: random.Random, n_photons=5, n_emitters=3, p=0.4) -> PhysicalState:
    """Some photons emitted, all emitters active, random edges among live nodes."""
    s = initial_state(n_photons, n_emitters)
    k = rng.randrange(n_photons)  # photons 0..k-1 emitted
    s.emitted = (1 << k) - 1
    s.pool = []
    s.active = set(range(n_emitters))
    live = list(range(k)) + [s.enode(j) for j in range(n_emitters)]
    for a in range(len(live)):
        for b in range(a + 1, len(live)):
            if rng.random() < p:
                s.toggle(live[a], live[b])
    return s


def tableau_of(s: PhysicalState) -> StabilizerTableau:
    """Graph state of ``s`` with unemitted photons and idle emitters in ``|0>``."""
    t = StabilizerTableau.graph_state(len(s.adj), s.adj)
    for q in idle_nodes(s):
        t.h(q)
    return t


def idle_nodes(s: PhysicalState) -> list:
    out = [p for p in range(s.n_photons) if not (s.emitted >> p) & 1]
    out += [s.enode(j) for j in range(s.n_emitters) if j not in s.active]
    return out


def run_gates(t: StabilizerTableau, gates, n_photons: int) -> None:
    for g in gates:
        qs = []
        for w in g.qubits:
            idx = int(w[1:])
            qs.append(idx if w[0] == "p" else n_photons + idx)
        name = g.name
        if name == "H":
            t.h(qs[0])
        elif name == "PHASE":
            t.s(qs[0])
        elif name == "SQRT_X_DAG":
            t.sqrt_x_dag(qs[0])
        elif name == "X":
            t.px(qs[0])
        elif name == "Z":
            t.pz(qs[0])
        elif name == "CZ":
            t.cz(*qs)
        elif name == "CNOT":
            t.cnot(*qs)
        elif name == "MZ":
            t.measure_z(qs[0])
        else:
            raise AssertionError(name)


def matches_up_to_signs(t: StabilizerTableau, s: PhysicalState) -> bool:
    """Every graph generator of ``s`` (and ``Z`` on idle nodes) stabilizes ``t`` up to sign."""
    n = t.n
    idle = set(idle_nodes(s))
    for v in range(n):
        px = np.zeros(n, np.uint8)
        pz = np.zeros(n, np.uint8)
        if v in idle:
            if s.adj[v]:
                return False
            pz[v] = 1
        else:
            px[v] = 1
            for u in bits_of(s.adj[v]):
                pz[u] = 1
        if t.stabilizer_sign(px, pz) is None:
            return False
    return True
