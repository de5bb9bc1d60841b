"""Cohomology rings of small covers and quasitoric manifolds over products of simplices.

After eliminating the facet classes through the base vertex, the ring is the polynomial
ring in ``u_i = v_i^{(0)}`` modulo one relation per factor,
``g_i = v_i^{(0)} v_i^{(1)} ... v_i^{(n_i)}``, where ``v_i^{(k)} = -(u_i + y_{ik})`` and
``y_{ik} = sum_{l != i} a^i_{lk} u_l``. Over Z2 the sign disappears.

Variables are numbered in the ring's working factor order, which is the triangular
order found by ``triangularize`` when one exists and the input order otherwise.
"""
from __future__ import annotations

import logging
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from systems.charmatrix import (
    ReducedVectorMatrix,
    try_triangularize,
    validate_characteristic,
)
from systems.errors import (
    BadParams,
    DegreeOutOfRange,
    ModeMismatch,
    NonIntegralPairing,
    NonUnitNormalization,
    NotCharacteristic,
    NotTopDegree,
    NotTriangularizable,
    ShapeMismatch,
)
from systems.polynomial import (
    Coefficients,
    Monomial,
    Polynomial,
    Scalar,
    monomial_mul,
    monomials_of_degree,
)
from systems.polytope import FacetId, SimplexProduct

logger = logging.getLogger(__name__)

Terms = Dict[Monomial, Scalar]


class Engine(Enum):
    TRIANGULAR = "triangular"
    GENERIC = "generic"


def order_key(mono: Monomial, dims: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Monomial order inside one degree: overflow over the box first, then u_m-major lex."""
    overflow = sum(max(0, e - d) for e, d in zip(mono, dims))
    return overflow, tuple(reversed(mono))


def _accumulate(acc: Terms, mono: Monomial, value: Scalar, mode: Coefficients):
    total = acc.get(mono, 0) + value
    if mode.is_mod_two:
        total %= 2
    if total:
        acc[mono] = total
    else:
        acc.pop(mono, None)


class _TriangularEngine:
    """Rewrites u_i^{n_i+1} through g_i; y_{ik} only involves lower-indexed variables."""

    kind = Engine.TRIANGULAR

    def __init__(self, ring: "CohomologyRing"):
        self.ring = ring
        self.dims = ring.P.dims
        self._memo: Dict[Monomial, Terms] = {}
        self._rules: List[Terms] = []
        mode = ring.coefficients
        for i, g in enumerate(ring.relations):
            lead_mono = tuple(self.dims[i] + 1 if j == i else 0 for j in range(ring.nvars))
            lead = g.coefficient(lead_mono)
            if lead not in (1, -1):
                raise NotTriangularizable(f"Relation {i + 1} has leading coefficient {lead}")
            rule = {}
            for mono, c in g.terms.items():
                if mono != lead_mono:
                    rule[mono] = mode.normalize(-c * lead)
            self._rules.append(rule)

    def reduce_monomial(self, mono: Monomial) -> Terms:
        cached = self._memo.get(mono)
        if cached is not None:
            return cached
        if sum(mono) > self.ring.n:
            result: Terms = {}
        else:
            over = [i for i, (e, d) in enumerate(zip(mono, self.dims)) if e > d]
            if not over:
                result = {mono: 1}
            else:
                i = over[-1]
                base = tuple(e - (self.dims[i] + 1) if j == i else e for j, e in enumerate(mono))
                result = {}
                mode = self.ring.coefficients
                for rule_mono, rule_c in self._rules[i].items():
                    for red_mono, red_c in self.reduce_monomial(monomial_mul(base, rule_mono)).items():
                        _accumulate(result, red_mono, rule_c * red_c, mode)
        self._memo[mono] = result
        return result

    def reduce_homogeneous(self, terms: Terms, degree: int) -> Terms:
        mode = self.ring.coefficients
        out: Terms = {}
        for mono, c in terms.items():
            for red_mono, red_c in self.reduce_monomial(mono).items():
                _accumulate(out, red_mono, c * red_c, mode)
        return out

    def basis(self, degree: int) -> List[Monomial]:
        box = [mono for mono in monomials_of_degree(self.ring.nvars, degree)
               if all(e <= d for e, d in zip(mono, self.dims))]
        return sorted(box, key=lambda mono: order_key(mono, self.dims))

    def warm_up(self):
        pass


class _DegreeLevel:
    """Fully reduced echelon basis of the degree-t ideal component."""

    def __init__(self, degree: int, pivots: Dict[Monomial, Terms], standard: List[Monomial]):
        self.degree = degree
        self.pivots = pivots
        self.standard = standard


class _GenericEngine:
    """Per-degree exact elimination of the span of {monomial * g_i}."""

    kind = Engine.GENERIC

    def __init__(self, ring: "CohomologyRing"):
        self.ring = ring
        self.dims = ring.P.dims
        self._levels: Dict[int, _DegreeLevel] = {}

    def _key(self, mono: Monomial):
        return order_key(mono, self.dims)

    def _reduce(self, row: Terms, pivots: Dict[Monomial, Terms]) -> Terms:
        mode = self.ring.coefficients
        row = dict(row)
        for mono in [m for m in row if m in pivots]:
            c = row.get(mono)
            if not c:
                continue
            for p_mono, p_c in pivots[mono].items():
                _accumulate(row, p_mono, -c * p_c, mode)
        return row

    def _level(self, degree: int) -> _DegreeLevel:
        level = self._levels.get(degree)
        if level is not None:
            return level

        mode = self.ring.coefficients
        pivots: Dict[Monomial, Terms] = {}
        rows = 0
        for i, g in enumerate(self.ring.relations):
            shift = degree - (self.dims[i] + 1)
            if shift < 0:
                continue
            for mu in monomials_of_degree(self.ring.nvars, shift):
                rows += 1
                row = self._reduce({monomial_mul(mu, m): c for m, c in g.terms.items()}, pivots)
                if not row:
                    continue
                pivot = max(row, key=self._key)
                lead = row[pivot]
                if not mode.is_mod_two and lead != 1:
                    inv = Fraction(1) / lead
                    row = {m: c * inv for m, c in row.items()}
                # Back-substitute so no row mentions another row's pivot
                for other in pivots.values():
                    c = other.get(pivot)
                    if c:
                        for m, rc in row.items():
                            _accumulate(other, m, -c * rc, mode)
                pivots[pivot] = row

        standard = sorted((mono for mono in monomials_of_degree(self.ring.nvars, degree) if mono not in pivots),
                          key=self._key)
        logger.debug(f"Degree {degree}: {rows} ideal rows, rank {len(pivots)}, {len(standard)} standard monomials")
        level = _DegreeLevel(degree, pivots, standard)
        self._levels[degree] = level
        return level

    def reduce_homogeneous(self, terms: Terms, degree: int) -> Terms:
        if degree > self.ring.n:
            return {}
        return self._reduce(terms, self._level(degree).pivots)

    def basis(self, degree: int) -> List[Monomial]:
        return list(self._level(degree).standard)

    def warm_up(self):
        for t in range(self.ring.n + 1):
            self._level(t)


class CohomologyRing:
    def __init__(self, source: ReducedVectorMatrix, matrix: ReducedVectorMatrix,
                 permutation: Tuple[int, ...], d: int, engine: Engine):
        self.source = source
        self.A = matrix
        self.P: SimplexProduct = matrix.product
        self.permutation = permutation
        self.d = d
        self.mode = matrix.mode
        # Integer rings eliminate over Q; pairings are checked to be integral
        self.coefficients = Coefficients.MOD_TWO if matrix.mode.is_mod_two else Coefficients.RATIONAL
        self.nvars = matrix.m
        self.n = matrix.n

        self._facet_classes: Dict[FacetId, Polynomial] = {}
        for i in range(self.nvars):
            self._facet_classes[FacetId(i + 1, 0)] = self.variable(i)
            for k in range(1, matrix.dims[i] + 1):
                weights = [-x for x in matrix.column(i, k)]
                self._facet_classes[FacetId(i + 1, k)] = Polynomial.linear(self.nvars, self.coefficients, weights)

        self.relations: List[Polynomial] = []
        for i in range(self.nvars):
            g = self.one()
            for k in range(matrix.dims[i] + 1):
                g = g * self._facet_classes[FacetId(i + 1, k)]
            self.relations.append(g)

        self._engine = _TriangularEngine(self) if engine is Engine.TRIANGULAR else _GenericEngine(self)
        self._top: Optional[Tuple[Monomial, Scalar]] = None

    @property
    def engine(self) -> Engine:
        return self._engine.kind

    # Elements

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.nvars, self.coefficients)

    def one(self) -> Polynomial:
        return Polynomial.one(self.nvars, self.coefficients)

    def variable(self, index: int) -> Polynomial:
        """u_{index+1}, 0-based index in the working order."""
        return Polynomial.variable(self.nvars, self.coefficients, index)

    def element(self, terms: Dict[Sequence[int], Scalar]) -> Polynomial:
        return Polynomial(self.nvars, self.coefficients, {tuple(m): c for m, c in terms.items()})

    def coerce(self, p: Polynomial) -> Polynomial:
        if p.nvars != self.nvars:
            raise ModeMismatch(f"Polynomial has {p.nvars} variables, ring has {self.nvars}")
        if p.coefficients is self.coefficients:
            return p
        if self.coefficients.is_mod_two or p.coefficients.is_mod_two:
            raise ModeMismatch(f"Cannot use a {p.coefficients.value} polynomial in a {self.mode.value} ring")
        return p.to(self.coefficients)

    def facet_class(self, facet: FacetId) -> Polynomial:
        try:
            return self._facet_classes[facet]
        except KeyError:
            raise BadParams(f"No facet {facet} over dims {list(self.P.dims)}")

    def facet_classes(self) -> List[Polynomial]:
        return [self._facet_classes[f] for f in self.P.facets()]

    def y_forms(self, factor: int) -> List[Polynomial]:
        """y_{ik} = sum_{l != i} a^i_{lk} u_l for k = 1..n_i (factor is 1-based)."""
        if not 1 <= factor <= self.nvars:
            raise BadParams(f"Factor {factor} out of range 1..{self.nvars}")
        i = factor - 1
        forms = []
        for k in range(1, self.A.dims[i] + 1):
            weights = list(self.A.column(i, k))
            weights[i] = 0
            forms.append(Polynomial.linear(self.nvars, self.coefficients, weights))
        return forms

    def vertex_class(self) -> Polynomial:
        """Product of the classes of all facets through the base vertex v_{0...0}."""
        return self.product(self._facet_classes[f] for f in self.P.facets() if f.index >= 1)

    # Reduction

    def normal_form(self, p: Polynomial) -> Polynomial:
        p = self.coerce(p)
        out: Terms = {}
        for degree, part in p.homogeneous_parts().items():
            if degree > self.n:
                continue
            for mono, c in self._engine.reduce_homogeneous(part.terms, degree).items():
                _accumulate(out, mono, c, self.coefficients)
        return Polynomial._raw(self.nvars, self.coefficients, out)

    def multiply(self, p: Polynomial, q: Polynomial) -> Polynomial:
        return self.normal_form(self.coerce(p).mul_truncated(self.coerce(q), self.n))

    def product(self, factors: Iterable[Polynomial]) -> Polynomial:
        result = self.one()
        for f in factors:
            result = self.multiply(result, f)
        return result

    def power(self, p: Polynomial, exponent: int) -> Polynomial:
        if exponent < 0:
            raise BadParams(f"Negative exponent {exponent}")
        return self.product([p] * exponent)

    # Graded structure

    def basis(self, degree: int) -> List[Monomial]:
        if not 0 <= degree <= self.n:
            raise DegreeOutOfRange(f"Degree {degree} outside 0..{self.n}")
        return self._engine.basis(degree)

    def degree_rank(self, degree: int) -> int:
        return len(self.basis(degree))

    def poincare_ranks(self) -> List[int]:
        return [self.degree_rank(t) for t in range(self.n + 1)]

    def top_monomial(self) -> Monomial:
        return self._normalization()[0]

    def _normalization(self) -> Tuple[Monomial, Scalar]:
        if self._top is not None:
            return self._top
        top = self.basis(self.n)
        if len(top) != 1:
            raise NonUnitNormalization(f"Top degree {self.n} has rank {len(top)}, expected 1")
        mono = top[0]
        c_v = self.vertex_class().coefficient(mono)
        if self.coefficients.is_mod_two:
            if c_v != 1:
                raise NonUnitNormalization("Vertex class vanishes in top degree")
        else:
            if c_v == 0 or (Fraction(1) / c_v).denominator != 1:
                raise NonUnitNormalization(f"Vertex class is {c_v} times the top standard monomial")
        self._top = (mono, c_v)
        return self._top

    def pair_top(self, p: Polynomial) -> int:
        """Evaluate a top-degree class on the fundamental class (vertex class pairs to 1)."""
        p = self.coerce(p)
        if not p.is_homogeneous(self.n):
            raise NotTopDegree(f"Expected a homogeneous polynomial of degree {self.n}, got degree {p.degree}")
        if p.is_zero():
            return 0
        mono, c_v = self._normalization()
        c_p = self.normal_form(p).coefficient(mono)
        if self.coefficients.is_mod_two:
            return int(c_p)
        value = Fraction(c_p) / c_v
        if value.denominator != 1:
            raise NonIntegralPairing(f"Pairing {value} is not an integer")
        return int(value)

    def warm_up(self):
        """Populate every cache so the ring can be read from several threads."""
        self._engine.warm_up()
        self._normalization()

    def describe(self) -> Dict[str, Any]:
        return {
            "dims": list(self.P.dims),
            "coefficients": self.mode.value,
            "degree_scale": self.d,
            "engine": self.engine.value,
            "factor_order": [p + 1 for p in self.permutation],
            "relations": [str(g) for g in self.relations],
        }


def build_ring(P: SimplexProduct, A: ReducedVectorMatrix, d: int, engine: Optional[Engine] = None) -> CohomologyRing:
    if tuple(P.dims) != tuple(A.dims):
        raise ShapeMismatch(f"Matrix dims {list(A.dims)} do not match polytope dims {list(P.dims)}")
    if d not in (1, 2):
        raise BadParams(f"Degree scale must be 1 or 2, got {d}")
    if d == 1 and not A.mode.is_mod_two:
        raise ModeMismatch("Integer matrices describe quasitoric manifolds; use d = 2")
    report = validate_characteristic(P, A)
    if not report.valid:
        vertex, det = report.failures[0]
        raise NotCharacteristic(f"Vertex {list(vertex.choices)} has determinant {det}")

    found = try_triangularize(A)
    if engine is Engine.TRIANGULAR and found is None:
        raise NotTriangularizable(f"{A} has no triangular factor order")
    if found is not None:
        permutation, matrix = found
        chosen = engine or Engine.TRIANGULAR
    else:
        permutation, matrix = tuple(range(A.m)), A
        chosen = Engine.GENERIC

    ring = CohomologyRing(A, matrix, permutation, d, chosen)
    logger.debug(f"Built {chosen.value} ring for {A} (order {[p + 1 for p in permutation]})")
    return ring


def normal_form(R: CohomologyRing, p: Polynomial) -> Polynomial:
    return R.normal_form(p)


def degree_rank(R: CohomologyRing, t: int) -> int:
    return R.degree_rank(t)


def basis(R: CohomologyRing, t: int) -> List[Monomial]:
    return R.basis(t)


def pair_top(R: CohomologyRing, p: Polynomial) -> int:
    return R.pair_top(p)


def multiply(R: CohomologyRing, p: Polynomial, q: Polynomial) -> Polynomial:
    return R.multiply(p, q)


def product(R: CohomologyRing, factors: Iterable[Polynomial]) -> Polynomial:
    return R.product(factors)


def facet_class(R: CohomologyRing, facet: FacetId) -> Polynomial:
    return R.facet_class(facet)


def y_forms(R: CohomologyRing, factor: int) -> List[Polynomial]:
    return R.y_forms(factor)


def vertex_class(R: CohomologyRing) -> Polynomial:
    return R.vertex_class()


def poincare_ranks(R: CohomologyRing) -> List[int]:
    return R.poincare_ranks()


def warm_up(R: CohomologyRing):
    R.warm_up()
