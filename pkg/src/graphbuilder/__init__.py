"""Emitter-based photonic graph state generation: recipes, simplification,
gate circuits and stabilizer verification."""

from .generator import GeneratorOptions, InvariantViolation, Recipe, Strategy, generate
from .graph import Graph, GraphError, load_graph, parse_graph
from .simplifier import simplify
from .transpiler import GateCircuit, cost_report, transpile
from .verifier import verify_circuit, verify_recipe

__all__ = [
    "GateCircuit",
    "GeneratorOptions",
    "Graph",
    "GraphError",
    "InvariantViolation",
    "Recipe",
    "Strategy",
    "cost_report",
    "generate",
    "load_graph",
    "parse_graph",
    "simplify",
    "transpile",
    "verify_circuit",
    "verify_recipe",
]
