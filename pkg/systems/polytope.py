"""Combinatorics of a product of simplices.

Facets are ``F^i_k`` with ``1 <= i <= m`` and ``0 <= k <= n_i``; the vertex
``v_{j_1...j_m}`` misses exactly the facets ``F^i_{j_i}``. The canonical facet order is
factor-major, index-ascending, and every matrix column and polynomial variable in the
other systems is indexed against it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Sequence, Tuple

from systems.errors import EmptyDims, InvalidVertex, NonPositiveDim


@dataclass(frozen=True, order=True)
class FacetId:
    factor: int  # 1-based
    index: int

    def as_tuple(self) -> Tuple[int, int]:
        return (self.factor, self.index)

    def __str__(self) -> str:
        return f"F{self.factor}_{self.index}"


@dataclass(frozen=True, order=True)
class VertexId:
    choices: Tuple[int, ...]

    def as_tuple(self) -> Tuple[int, ...]:
        return self.choices

    def __str__(self) -> str:
        return "v" + "".join(str(j) for j in self.choices) if all(j < 10 for j in self.choices) \
            else "v(" + ",".join(str(j) for j in self.choices) + ")"


@dataclass(frozen=True)
class SimplexProduct:
    dims: Tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.dims)

    @property
    def n(self) -> int:
        return sum(self.dims)

    @property
    def facet_count(self) -> int:
        return self.n + self.m

    @property
    def vertex_count(self) -> int:
        count = 1
        for d in self.dims:
            count *= d + 1
        return count

    def facets(self) -> List[FacetId]:
        return [FacetId(i + 1, k) for i, d in enumerate(self.dims) for k in range(d + 1)]

    def vertices(self) -> Iterator[VertexId]:
        """Vertices in lexicographic order of (j_1, ..., j_m)."""
        for choice in itertools.product(*(range(d + 1) for d in self.dims)):
            yield VertexId(tuple(choice))

    def check_vertex(self, v: VertexId):
        if len(v.choices) != self.m:
            raise InvalidVertex(f"Vertex {v.choices} has {len(v.choices)} coordinates, expected {self.m}")
        for j, d in zip(v.choices, self.dims):
            if not 0 <= j <= d:
                raise InvalidVertex(f"Vertex {v.choices} out of range for dims {list(self.dims)}")

    def facets_at_vertex(self, v: VertexId) -> List[FacetId]:
        self.check_vertex(v)
        return [f for f in self.facets() if f.index != v.choices[f.factor - 1]]

    def sr_generators(self) -> List[FrozenSet[FacetId]]:
        """Minimal non-faces: the full facet set of each simplex factor."""
        return [frozenset(FacetId(i + 1, k) for k in range(d + 1)) for i, d in enumerate(self.dims)]

    def block_offsets(self) -> Tuple[int, ...]:
        """0-based start column of each factor's block; factor j owns columns k = 1..n_j."""
        offsets = []
        start = 0
        for d in self.dims:
            offsets.append(start)
            start += d
        return tuple(offsets)

    def h_vector(self) -> List[int]:
        """Coefficients of prod_i (1 + t + ... + t^{n_i})."""
        coeffs = [1]
        for d in self.dims:
            out = [0] * (len(coeffs) + d)
            for a, c in enumerate(coeffs):
                for b in range(d + 1):
                    out[a + b] += c
            coeffs = out
        return coeffs

    def permuted(self, permutation: Sequence[int]) -> "SimplexProduct":
        return SimplexProduct(tuple(self.dims[p] for p in permutation))


def make_product(dims: Sequence[int]) -> SimplexProduct:
    if dims is None or len(dims) == 0:
        raise EmptyDims("A product of simplices needs at least one factor")
    cleaned = []
    for d in dims:
        if isinstance(d, bool) or not isinstance(d, int):
            raise NonPositiveDim(f"Simplex dimension must be an integer, got {d!r}")
        if d < 1:
            raise NonPositiveDim(f"Simplex dimension must be >= 1, got {d}")
        cleaned.append(d)
    return SimplexProduct(tuple(cleaned))


def facet_list(P: SimplexProduct) -> List[FacetId]:
    return P.facets()


def facets_at_vertex(P: SimplexProduct, v: VertexId) -> List[FacetId]:
    return P.facets_at_vertex(v)


def sr_generators(P: SimplexProduct) -> List[FrozenSet[FacetId]]:
    return P.sr_generators()


def vertices(P: SimplexProduct) -> List[VertexId]:
    return list(P.vertices())


def h_vector(P: SimplexProduct) -> List[int]:
    return P.h_vector()
