"""Reduced vector matrices and their characteristic-condition checks.

Row ``i`` of a matrix is the characteristic vector of the facet ``F^i_0``, blocked by
factor: the entries ``a^j_{ik}`` for ``k = 1..n_j`` sit at columns
``block_offsets[j] + k - 1``. Diagonal blocks are all ones.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from config import settings
from systems.errors import (
    BadParams,
    DiagonalNotOne,
    EntryOutOfRange,
    ModeMismatch,
    NotACube,
    NotTriangularizable,
    ReducedNotCharacteristic,
    ShapeMismatch,
    TooManyFactors,
)
from systems.polynomial import Coefficients
from systems.polytope import SimplexProduct, VertexId, make_product

logger = logging.getLogger(__name__)

Rows = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class ReducedVectorMatrix:
    dims: Tuple[int, ...]
    mode: Coefficients
    rows: Rows

    @property
    def product(self) -> SimplexProduct:
        return SimplexProduct(self.dims)

    @property
    def m(self) -> int:
        return len(self.dims)

    @property
    def n(self) -> int:
        return sum(self.dims)

    @property
    def offsets(self) -> Tuple[int, ...]:
        return self.product.block_offsets()

    @property
    def is_cube(self) -> bool:
        return all(d == 1 for d in self.dims)

    def entry(self, row: int, factor: int, k: int) -> int:
        """a^{factor}_{row,k}; row and factor 0-based, k in 1..n_factor."""
        return self.rows[row][self.offsets[factor] + k - 1]

    def block(self, row: int, factor: int) -> Tuple[int, ...]:
        start = self.offsets[factor]
        return self.rows[row][start:start + self.dims[factor]]

    def column(self, factor: int, k: int) -> Tuple[int, ...]:
        col = self.offsets[factor] + k - 1
        return tuple(r[col] for r in self.rows)

    def is_zero_block(self, row: int, factor: int) -> bool:
        return not any(self.block(row, factor))

    def to_rows(self) -> List[List[int]]:
        return [list(r) for r in self.rows]

    def __str__(self) -> str:
        return f"{self.mode.value}{list(self.dims)}:{self.to_rows()}"


@dataclass
class ValidationReport:
    valid: bool
    failures: List[Tuple[VertexId, int]] = field(default_factory=list)
    checked: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "valid": self.valid,
            "vertices_checked": self.checked,
            "failures": [{"vertex": list(v.choices), "determinant": det} for v, det in self.failures],
        }


def parse_matrix(dims: Sequence[int], mode: Union[str, Coefficients], rows: Sequence[Sequence[int]]) -> ReducedVectorMatrix:
    P = make_product(dims)
    mode = Coefficients.parse(mode)
    if mode is Coefficients.RATIONAL:
        raise ModeMismatch("Characteristic matrices are over Z2 or Z")
    if rows is None or len(rows) != P.m:
        raise ShapeMismatch(f"Expected {P.m} rows for dims {list(P.dims)}, got {0 if rows is None else len(rows)}")
    cleaned = []
    for i, row in enumerate(rows):
        if len(row) != P.n:
            raise ShapeMismatch(f"Row {i + 1} has length {len(row)}, expected {P.n}")
        values = []
        for value in row:
            if isinstance(value, bool) or not isinstance(value, int):
                raise EntryOutOfRange(f"Row {i + 1}: entry {value!r} is not an integer")
            if mode.is_mod_two and value not in (0, 1):
                raise EntryOutOfRange(f"Row {i + 1}: entry {value} is not 0 or 1 in Z2 mode")
            values.append(value)
        cleaned.append(tuple(values))

    A = ReducedVectorMatrix(P.dims, mode, tuple(cleaned))
    for i in range(A.m):
        if any(x != 1 for x in A.block(i, i)):
            raise DiagonalNotOne(f"Diagonal block of factor {i + 1} must be all ones, got {list(A.block(i, i))}")
    return A


@lru_cache(maxsize=65536)
def _det(entries: Rows) -> int:
    size = len(entries)
    if size == 0:
        return 1
    if size == 1:
        return entries[0][0]
    if size == 2:
        return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]
    matrix = DomainMatrix([[ZZ(x) for x in row] for row in entries], (size, size), ZZ)
    return int(matrix.det())


def _is_unit(det: int, mode: Coefficients) -> bool:
    if mode.is_mod_two:
        return det % 2 == 1
    return det in (1, -1)


def vertex_minor(A: ReducedVectorMatrix, v: VertexId) -> Rows:
    """The submatrix over factors with j_i >= 1: entry (r, c) = a^c_{r, j_c}."""
    A.product.check_vertex(v)
    active = [i for i, j in enumerate(v.choices) if j >= 1]
    return tuple(tuple(A.entry(r, c, v.choices[c]) for c in active) for r in active)


def vertex_determinant(A: ReducedVectorMatrix, v: VertexId) -> int:
    return _det(vertex_minor(A, v))


def submatrix(A: ReducedVectorMatrix, ks: Sequence[int]) -> List[List[int]]:
    """The m x m matrix whose j-th column is the k_j-th column of block j."""
    if len(ks) != A.m or any(not 1 <= k <= d for k, d in zip(ks, A.dims)):
        raise BadParams(f"Column choice {list(ks)} does not fit dims {list(A.dims)}")
    return [list(row) for row in vertex_minor(A, VertexId(tuple(ks)))]


def validate_characteristic(P: SimplexProduct, A: ReducedVectorMatrix) -> ValidationReport:
    if tuple(P.dims) != tuple(A.dims):
        raise ShapeMismatch(f"Matrix dims {list(A.dims)} do not match polytope dims {list(P.dims)}")
    failures = []
    checked = 0
    for v in P.vertices():
        det = vertex_determinant(A, v)
        checked += 1
        if not _is_unit(det, A.mode):
            failures.append((v, det))
    if failures:
        logger.debug(f"{A} fails at {len(failures)} vertices")
    return ValidationReport(valid=not failures, failures=failures, checked=checked)


def is_characteristic(A: ReducedVectorMatrix) -> bool:
    return all(_is_unit(vertex_determinant(A, v), A.mode) for v in A.product.vertices())


def principal_minors_all_one(A: ReducedVectorMatrix) -> bool:
    for v in A.product.vertices():
        det = vertex_determinant(A, v)
        if A.mode.is_mod_two:
            if det % 2 != 1:
                return False
        elif det != 1:
            return False
    return True


def conjugate(A: ReducedVectorMatrix, permutation: Sequence[int]) -> ReducedVectorMatrix:
    """Reorder factors: new position p holds old factor permutation[p]."""
    perm = tuple(permutation)
    if sorted(perm) != list(range(A.m)):
        raise BadParams(f"{list(perm)} is not a permutation of {A.m} factors")
    rows = []
    for p in perm:
        row = []
        for q in perm:
            row.extend(A.block(p, q))
        rows.append(tuple(row))
    return ReducedVectorMatrix(tuple(A.dims[p] for p in perm), A.mode, tuple(rows))


def triangular_order(A: ReducedVectorMatrix, last: Optional[Iterable[int]] = None) -> Optional[Tuple[int, ...]]:
    """First factor order (lexicographically) making A unipotent upper triangular.

    With `last`, only orders ending in one of those factors count. None when no order fits.
    """
    if A.m > settings.MAX_FACTORS:
        raise TooManyFactors(f"{A.m} factors exceeds the search limit of {settings.MAX_FACTORS}")
    endings = None if last is None else set(last)
    if is_triangular(A) and (endings is None or A.m - 1 in endings):
        return tuple(range(A.m))

    # blocked[f] = factors g != f whose row has a nonzero block in column block f
    blocked = [
        {g for g in range(A.m) if g != f and not A.is_zero_block(g, f)}
        for f in range(A.m)
    ]

    def search(order: List[int], remaining: List[int]) -> Optional[List[int]]:
        if not remaining:
            return order if endings is None or order[-1] in endings else None
        for f in remaining:
            rest = [g for g in remaining if g != f]
            if blocked[f].isdisjoint(rest):
                found = search(order + [f], rest)
                if found is not None:
                    return found
        return None

    order = search([], list(range(A.m)))
    return None if order is None else tuple(order)


def triangularize(A: ReducedVectorMatrix) -> Tuple[Tuple[int, ...], ReducedVectorMatrix]:
    perm = triangular_order(A)
    if perm is None:
        raise NotTriangularizable(f"No factor order makes {A} upper triangular")
    return perm, conjugate(A, perm)


def is_triangular(A: ReducedVectorMatrix) -> bool:
    return all(A.is_zero_block(r, c) for r in range(A.m) for c in range(r))


def try_triangularize(A: ReducedVectorMatrix) -> Optional[Tuple[Tuple[int, ...], ReducedVectorMatrix]]:
    try:
        return triangularize(A)
    except NotTriangularizable:
        return None


def orientability_column_test(A: ReducedVectorMatrix) -> bool:
    """True iff every line sum of E + A vanishes mod 2 (cube small covers only).

    The sums run along the coefficient vector of each u_i in w_1.
    """
    if not A.is_cube:
        raise NotACube(f"Orientability test needs a cube, got dims {list(A.dims)}")
    if not A.mode.is_mod_two:
        raise ModeMismatch("Orientability test is defined for Z2 matrices")
    for row in A.rows:
        if (sum(row) + 1) % 2:
            return False
    return True


def mod2_reduce(A: ReducedVectorMatrix) -> ReducedVectorMatrix:
    if A.mode is not Coefficients.INTEGER:
        raise ModeMismatch("mod-2 reduction applies to integer matrices")
    reduced = ReducedVectorMatrix(A.dims, Coefficients.MOD_TWO, tuple(tuple(x % 2 for x in r) for r in A.rows))
    report = validate_characteristic(reduced.product, reduced)
    if not report.valid:
        raise ReducedNotCharacteristic(
            f"Reduction of {A} fails at vertex {list(report.failures[0][0].choices)}"
        )
    return reduced


def cyclic_matrix(b: Sequence[int]) -> ReducedVectorMatrix:
    """Cube matrix with ones on the diagonal, b_i at (i, i+1) and b_n at (n, 1)."""
    n = len(b)
    if n < 2:
        raise BadParams("A cyclic matrix needs at least two factors")
    if any(isinstance(x, bool) or not isinstance(x, int) or x == 0 for x in b):
        raise BadParams(f"Cyclic entries must be nonzero integers, got {list(b)}")
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = 1
        row[(i + 1) % n] = b[i]
        rows.append(row)
    return parse_matrix([1] * n, Coefficients.INTEGER, rows)


def block_diagonal(blocks: Sequence[ReducedVectorMatrix]) -> ReducedVectorMatrix:
    if not blocks:
        raise BadParams("Need at least one block")
    mode = blocks[0].mode
    if any(b.mode is not mode for b in blocks):
        raise ModeMismatch("All blocks must share a coefficient mode")
    dims: List[int] = []
    for b in blocks:
        dims.extend(b.dims)
    total = sum(dims)
    rows = []
    col = 0
    for b in blocks:
        for r in b.rows:
            rows.append([0] * col + list(r) + [0] * (total - col - len(r)))
        col += b.n
    return parse_matrix(dims, mode, rows)


def classify(P: SimplexProduct, A: ReducedVectorMatrix) -> Dict[str, Any]:
    report = validate_characteristic(P, A)
    found = try_triangularize(A)
    orientable = None
    if A.is_cube and A.mode.is_mod_two:
        orientable = orientability_column_test(A)
    minors_one = principal_minors_all_one(A)
    return {
        "valid": report.valid,
        "orientable": orientable,
        "triangularizable": found is not None,
        "permutation": [p + 1 for p in found[0]] if found else None,
        "principal_minors_all_one": minors_one,
        "generalized_bott": report.valid and minors_one,
    }
