"""Finitely supported formal series over the path space of a graph.

A FormalElement is a finite complex combination of paths, the polynomial
part of the operator calculus: symbols multiply by path composition, with
non-composable products contributing zero.  The grade of a term is its path
length; grade-m extraction, Cesaro-weighted partial sums, the minimum grade
of an element, and the column l2 norms of a graded piece are the tools the
truncation module cross-checks against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError
from .graph import Graph
from .paths import Path, compose, source, validate_path


@dataclass
class FormalElement:
    graph: Graph
    terms: dict[Path, complex] = field(default_factory=dict)

    def __post_init__(self):
        cleaned: dict[Path, complex] = {}
        for p, c in self.terms.items():
            validate_path(self.graph, p)
            c = complex(c)
            if c != 0:
                cleaned[p] = cleaned.get(p, 0) + c
        self.terms = {p: c for p, c in cleaned.items() if c != 0}

    @staticmethod
    def zero(g: Graph) -> "FormalElement":
        return FormalElement(g, {})

    @staticmethod
    def vertex(g: Graph, v: str, coeff: complex = 1.0) -> "FormalElement":
        return FormalElement(g, {Path.vertex(v): coeff})

    @staticmethod
    def path(g: Graph, p: Path, coeff: complex = 1.0) -> "FormalElement":
        return FormalElement(g, {p: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """Largest grade with a nonzero term; None for the zero element."""
        if not self.terms:
            return None
        return max(len(p) for p in self.terms)

    def sorted_terms(self) -> list[tuple[Path, complex]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0].edges, kv[0].base))

    def __add__(self, other: "FormalElement") -> "FormalElement":
        _require_same_graph(self, other)
        merged = dict(self.terms)
        for p, c in other.terms.items():
            merged[p] = merged.get(p, 0) + c
        return FormalElement(self.graph, merged)

    def scale(self, c: complex) -> "FormalElement":
        return FormalElement(self.graph, {p: c * a for p, a in self.terms.items()})

    def __sub__(self, other: "FormalElement") -> "FormalElement":
        return self + other.scale(-1)

    def approx_eq(self, other: "FormalElement", tol: float = 1e-9) -> bool:
        _require_same_graph(self, other)
        keys = set(self.terms) | set(other.terms)
        return all(
            abs(self.terms.get(p, 0) - other.terms.get(p, 0)) <= tol for p in keys
        )


def _require_same_graph(a: FormalElement, b: FormalElement) -> None:
    if a.graph.to_json_dict() != b.graph.to_json_dict():
        raise DomainError("formal elements live over different host graphs")


def formal_mul(a: FormalElement, b: FormalElement) -> FormalElement:
    """Product by path composition; non-composable pairs contribute nothing."""
    _require_same_graph(a, b)
    g = a.graph
    out: dict[Path, complex] = {}
    for mu, ca in a.terms.items():
        for nu, cb in b.terms.items():
            prod = compose(g, mu, nu)
            if prod is not None:
                out[prod] = out.get(prod, 0) + ca * cb
    return FormalElement(g, out)


def fourier_coeff(a: FormalElement, m: int) -> FormalElement:
    """Grade-m homogeneous part; zero element when no term has length m."""
    return FormalElement(a.graph, {p: c for p, c in a.terms.items() if len(p) == m})


def cesaro(a: FormalElement, k: int) -> FormalElement:
    """Cesaro-weighted partial sum: terms of grade < k scaled by 1 - grade/k."""
    if k < 1:
        raise DomainError("Cesaro order must be a positive integer", k=k)
    return FormalElement(
        a.graph,
        {p: c * (1 - len(p) / k) for p, c in a.terms.items() if len(p) < k},
    )


def graded_ideal_degree(a: FormalElement) -> int | None:
    """Minimum grade carrying a nonzero term; None (infinity marker) for zero."""
    if not a.terms:
        return None
    return min(len(p) for p in a.terms)


def l2_row_norm(a: FormalElement, m: int, v: str) -> float:
    """l2 norm of the grade-m coefficients sourced at v.

    Equals the operator norm of the grade-m part compressed to the v-column:
    the ranges of distinct paths are orthogonal, so the norm is the plain
    l2 norm of the coefficient family {a_mu : |mu| = m, source(mu) = v}.
    """
    g = a.graph
    total = 0.0
    for p, c in a.terms.items():
        if len(p) == m and source(g, p) == v:
            total += abs(c) ** 2
    return math.sqrt(total)
