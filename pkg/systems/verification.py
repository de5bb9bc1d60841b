"""Built-in verifiers: each one enumerates or samples a matrix family and checks a claim
about its cohomology or characteristic numbers on every instance."""
from __future__ import annotations

import itertools
import logging
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from config import settings
from systems.charclass import (
    char_numbers,
    facet_power_sum,
    first_sw,
    integral_sw_lift,
    power_sum_from_pontryagin,
    power_sum_obstruction,
    sigma_vanishing_condition,
    total_pontryagin,
    total_sw,
)
from systems.charmatrix import (
    ReducedVectorMatrix,
    block_diagonal,
    cyclic_matrix,
    orientability_column_test,
    parse_matrix,
    principal_minors_all_one,
    triangular_order,
)
from systems.cobordism import Obstruction, lemma41_crosscheck, mod2_projection_reports, verdict
from systems.enumeration import FamilyEnumerator
from systems.errors import BadParams, BottbordError, UnknownTheorem
from systems.models import FamilyKind, FamilySpec, InputDocument
from systems.polynomial import Coefficients, Polynomial, poly_sum
from systems.polytope import make_product
from systems.ring import CohomologyRing, Engine, build_ring
from utils.helpers import format_duration

logger = logging.getLogger(__name__)

SIMPLEX_PAIR_ROWS = [[1, 1, 1, 1, 1, 1], [0, 0, 0, 1, 1, 1]]


@dataclass
class VerificationResult:
    theorem_id: str
    instances: int = 0
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def fail(self, A: Optional[ReducedVectorMatrix], reason: str, **extra: Any):
        entry: Dict[str, Any] = {"reason": reason}
        if A is not None:
            entry.update(InputDocument.from_matrix(A).model_dump())
        entry.update(extra)
        self.counterexamples.append(entry)

    def to_dict(self) -> Dict[str, Any]:
        # elapsed is logged only
        return {
            "theorem": self.theorem_id,
            "passed": self.passed,
            "instances": self.instances,
            "counterexamples": self.counterexamples,
            **self.details,
        }


# Parameter coercion

def _int_list(value: Any, name: str) -> List[int]:
    if isinstance(value, bool):
        raise BadParams(f"{name} must be an integer or a list of integers")
    if isinstance(value, int):
        return [value]
    if isinstance(value, (list, tuple)) and all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        return list(value)
    raise BadParams(f"{name} must be an integer or a list of integers, got {value!r}")


def _dims_list(value: Any, name: str = "dims") -> List[List[int]]:
    if isinstance(value, (list, tuple)) and value and all(isinstance(x, int) for x in value):
        return [list(value)]
    if isinstance(value, (list, tuple)) and value and all(isinstance(x, (list, tuple)) for x in value):
        out = [_int_list(list(x), name) for x in value]
        for dims in out:
            try:
                make_product(dims)
            except BottbordError as e:
                raise BadParams(f"{name}: {e}")
        return out
    raise BadParams(f"{name} must be a list of dims or a list of lists, got {value!r}")


def _positive(value: Any, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise BadParams(f"{name} must be an integer >= {minimum}, got {value!r}")
    return value


def _family(dims: Sequence[int], kind: FamilyKind, coefficients: str = "Z2", bound: int = 1,
            target_product: Optional[int] = None) -> FamilyEnumerator:
    return FamilyEnumerator(FamilySpec(dims=list(dims), coefficients=coefficients, kind=kind,
                                       bound=bound, target_product=target_product))


def _random_composition(rng: random.Random, total: int, parts: int) -> List[int]:
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    bounds = [0] + cuts + [total]
    return [bounds[i + 1] - bounds[i] for i in range(parts)]


def _monomial(R: CohomologyRing, exponents: Sequence[int]) -> Polynomial:
    exps = list(exponents) + [0] * (R.nvars - len(exponents))
    return Polynomial.monomial(R.nvars, R.coefficients, exps)


def _interval_factors(dims: Sequence[int]) -> List[int]:
    found = [f for f, d in enumerate(dims) if d == 1]
    if not found:
        raise BadParams(f"dims {list(dims)} have no interval factor (1)")
    return found


def _triangularizable_family(dims: Sequence[int], coefficients: str = "Z2", bound: int = 1,
                             interval_last: bool = False) -> Iterator[ReducedVectorMatrix]:
    """Every valid bounded-entry matrix with some triangular factor order.

    With `interval_last` the order must end in an interval factor.
    """
    last = _interval_factors(dims) if interval_last else None
    for A in _family(dims, FamilyKind.BOUNDED_ENTRY, coefficients, bound):
        if triangular_order(A, last) is not None:
            yield A


def _generalized_bott_family(dims: Sequence[int], bound: int,
                             interval_last: bool = False) -> Iterator[ReducedVectorMatrix]:
    """Integer matrices whose vertex minors are all 1."""
    last = _interval_factors(dims) if interval_last else None
    for A in _family(dims, FamilyKind.BOUNDED_ENTRY, "Z", bound):
        if not principal_minors_all_one(A):
            continue
        if last is not None and triangular_order(A, last) is None:
            continue
        yield A


def _dims_key(dims: Sequence[int]) -> str:
    return ",".join(str(d) for d in dims)


def _engine_classes(A: ReducedVectorMatrix, engine: Engine) -> List[Polynomial]:
    if A.mode.is_mod_two:
        R = build_ring(A.product, A, 1, engine)
        return total_sw(R).components
    R = build_ring(A.product, A, 2, engine)
    return integral_sw_lift(R).components


def engines_agree(A: ReducedVectorMatrix) -> bool:
    """Triangular and generic normal forms of the total class coincide."""
    return _engine_classes(A, Engine.TRIANGULAR) == _engine_classes(A, Engine.GENERIC)


def _sw_zero(A: ReducedVectorMatrix) -> Tuple[bool, Dict[str, int]]:
    R = build_ring(A.product, A, 1)
    report = char_numbers(R, total_sw(R))
    return report.all_zero, report.nonzero()


class VerificationSystem:
    ALIASES = {
        "real_bott_cube": "thm_2_5",
        "interval_factor": "thm_3_4",
        "sigma_condition": "thm_3_6",
        "simplex_pair_example": "example_3_7",
        "bott_interval_oriented": "thm_4_3",
        "cyclic_even_cube": "thm_4_5",
        "cyclic_odd_blocks": "example_4_6",
        "power_sum": "thm_4_7",
        "monomial_vanishing": "lemma_3_3",
        "y_monomial_vanishing": "lemma_2_4",
        "orientability": "prop_3_5",
        "mod2_projection": "lemma_4_1",
    }

    def __init__(self, seed: Optional[int] = None):
        self.seed = settings.SEED if seed is None else seed
        interval_dims = [[1, 1], [2, 1], [3, 1], [2, 2, 1], [1, 1, 1, 1]]
        self._verifiers: Dict[str, Tuple[Callable[..., None], Dict[str, Any]]] = {
            "thm_2_5": (self._real_bott_cube, {"n": [2, 3, 4, 5], "engines": False}),
            "thm_3_4": (self._interval_factor, {
                "dims": interval_dims, "engines": False, "interval_last": False,
            }),
            "thm_3_6": (self._sigma_condition, {"dims": [[1], [2]], "l": 3}),
            "example_3_7": (self._simplex_pair_example, {}),
            "thm_4_3": (self._bott_interval_oriented, {
                "dims": [[1, 1], [2, 1], [3, 1], [1, 2, 1]], "bound": 1, "interval_last": False,
            }),
            "thm_4_5": (self._cyclic_even_cube, {"k": [1, 2], "b": None, "bound": 2}),
            "example_4_6": (self._cyclic_odd_blocks, {"n": 3, "samples": 8, "bound": 2}),
            "thm_4_7": (self._power_sum, {
                "dims": [[1, 1], [2, 2], [1, 3]], "samples": 20, "bound": 2,
            }),
            "lemma_3_3": (self._monomial_vanishing, {
                "dims": [[2], [1, 1], [2, 1], [3, 3], [1, 2, 1]], "samples": None, "bound": 2,
            }),
            "lemma_2_4": (self._y_monomial_vanishing, {"n": [2, 3, 4, 5], "samples": None}),
            "prop_3_5": (self._orientability, {"n": [1, 2, 3, 4, 5]}),
            "lemma_4_1": (self._mod2_projection, {
                "dims": [[1, 1], [2, 1], [1, 1, 1]], "samples": None, "bound": 2,
            }),
            "engine_agreement": (self._engine_agreement, {
                "n": [2, 3, 4, 5], "dims": interval_dims, "coefficients": "Z2", "bound": 1,
            }),
            "poincare_ranks": (self._poincare_ranks, {
                "dims": [[2], [1, 1], [2, 1], [3, 3], [1, 1, 1, 1]], "samples": None, "engines": True,
            }),
        }

    def available(self) -> List[str]:
        return sorted(self._verifiers)

    def resolve(self, theorem_id: str) -> str:
        """Canonical verifier id for an id or a descriptive alias."""
        canonical = self.ALIASES.get(theorem_id, theorem_id)
        if canonical not in self._verifiers:
            raise UnknownTheorem(f"Unknown verifier {theorem_id!r}; known: {', '.join(self.available())}")
        return canonical

    def verify(self, theorem_id: str, params: Optional[Dict[str, Any]] = None) -> VerificationResult:
        theorem_id = self.resolve(theorem_id)
        func, defaults = self._verifiers[theorem_id]
        supplied = {k: v for k, v in (params or {}).items() if v is not None}
        unknown = set(supplied) - set(defaults)
        if unknown:
            raise BadParams(f"{theorem_id} does not take {sorted(unknown)}; options: {sorted(defaults)}")
        merged = {**defaults, **supplied}

        result = VerificationResult(theorem_id=theorem_id)
        started = time.perf_counter()
        func(result, **merged)
        result.elapsed = time.perf_counter() - started

        status = "passed" if result.passed else f"FAILED ({len(result.counterexamples)} counterexamples)"
        log = logger.info if result.passed else logger.warning
        log(f"{theorem_id}: {result.instances} instances, {status} in {format_duration(result.elapsed)}")
        return result

    def _rng(self) -> random.Random:
        return random.Random(self.seed)

    # Small covers

    def _real_bott_cube(self, result: VerificationResult, n, engines):
        counts = {}
        for size in _int_list(n, "n"):
            _positive(size, "n")
            count = 0
            for A in _family([1] * size, FamilyKind.TRIANGULAR):
                count += 1
                zero, nonzero = _sw_zero(A)
                if not zero:
                    result.fail(A, "nonzero Stiefel-Whitney numbers", numbers=nonzero)
                if engines and not engines_agree(A):
                    result.fail(A, "engines disagree")
            counts[str(size)] = count
            result.instances += count
        result.details["instances_by_n"] = counts

    def _interval_factor(self, result: VerificationResult, dims, engines, interval_last):
        counts = {}
        for d in _dims_list(dims):
            _interval_factors(d)
            count = 0
            for A in _triangularizable_family(d, interval_last=bool(interval_last)):
                count += 1
                zero, nonzero = _sw_zero(A)
                if not zero:
                    result.fail(A, "nonzero Stiefel-Whitney numbers", numbers=nonzero,
                                order=list(triangular_order(A)))
                if engines and not engines_agree(A):
                    result.fail(A, "engines disagree")
            counts[_dims_key(d)] = count
            result.instances += count
        result.details["instances_by_dims"] = counts

    def _sigma_condition(self, result: VerificationResult, dims, l):
        l = _positive(l, "l")
        qualifying = 0
        for base in _dims_list(dims):
            for A in _family(base + [l], FamilyKind.TRIANGULAR):
                result.instances += 1
                R = build_ring(A.product, A, 1)
                if not sigma_vanishing_condition(R, R.y_forms(R.nvars), l):
                    continue
                qualifying += 1
                report = char_numbers(R, total_sw(R))
                if not report.all_zero:
                    result.fail(A, "condition holds but a Stiefel-Whitney number is nonzero",
                                numbers=report.nonzero())
        result.details["qualifying"] = qualifying

        # the simplex pair instance must fail the condition and must not bound
        A = parse_matrix([3, 3], Coefficients.MOD_TWO, SIMPLEX_PAIR_ROWS)
        R = build_ring(A.product, A, 1)
        control = sigma_vanishing_condition(R, R.y_forms(2), 3)
        control_zero = char_numbers(R, total_sw(R)).all_zero
        result.details["control_condition"] = control
        result.details["control_sw_all_zero"] = control_zero
        if control or control_zero:
            result.fail(A, "control instance should violate the condition and have a nonzero number")

    def _simplex_pair_example(self, result: VerificationResult):
        A = parse_matrix([3, 3], Coefficients.MOD_TWO, SIMPLEX_PAIR_ROWS)
        R = build_ring(A.product, A, 1)
        result.instances = 1
        u1, u2 = R.variable(0), R.variable(1)

        expected = [u1 ** 4, u2 * (u1 + u2) ** 3]
        if R.relations != expected:
            result.fail(A, "unexpected relations", relations=[str(g) for g in R.relations])

        w = total_sw(R)
        expected_w = R.product([(R.one() + u1) ** 4, (R.one() + u1 + u2) ** 3, R.one() + u2])
        if poly_sum(w.components, R.nvars, R.coefficients) != expected_w:
            result.fail(A, "total Stiefel-Whitney class differs from the product formula")

        w3 = w.component(3)
        w3_squared = R.pair_top(R.multiply(w3, w3))
        result.details["w3_squared"] = w3_squared
        result.details["w3"] = str(w3)
        result.details["relations"] = [str(g) for g in R.relations]
        if w3_squared != 1:
            result.fail(A, "w3^2 should pair to 1", w3_squared=w3_squared)

    def _orientability(self, result: VerificationResult, n):
        for size in _int_list(n, "n"):
            _positive(size, "n")
            for A in _family([1] * size, FamilyKind.TRIANGULAR):
                result.instances += 1
                R = build_ring(A.product, A, 1)
                w1_zero = first_sw(R).is_zero()
                if w1_zero != orientability_column_test(A):
                    result.fail(A, "w1 and the line-sum test disagree", w1=str(first_sw(R)))

    # Ring properties

    def _monomial_vanishing(self, result: VerificationResult, dims, samples, bound):
        rng = self._rng()
        samples = _positive(samples or settings.SAMPLE_COUNT, "samples")
        for d in _dims_list(dims):
            for coefficients in ("Z2", "Z"):
                for A in _family(d, FamilyKind.TRIANGULAR, coefficients, bound).sample(samples, rng):
                    result.instances += 1
                    R = build_ring(A.product, A, 1 if A.mode.is_mod_two else 2)
                    k = rng.randint(1, R.nvars)
                    total = sum(R.P.dims[:k]) + 1
                    exps = _random_composition(rng, total, k)
                    if not R.normal_form(_monomial(R, exps)).is_zero():
                        result.fail(A, "monomial does not vanish", exponents=exps)

    def _y_monomial_vanishing(self, result: VerificationResult, n, samples):
        rng = self._rng()
        samples = _positive(samples or settings.SAMPLE_COUNT, "samples")
        for size in _int_list(n, "n"):
            _positive(size, "n", 2)
            for A in _family([1] * size, FamilyKind.TRIANGULAR).sample(samples, rng):
                result.instances += 1
                R = build_ring(A.product, A, 1)
                k = rng.randint(2, size)
                exps = _random_composition(rng, k, k - 1)
                value = R.product(R.power(R.y_forms(j)[0], e) for j, e in zip(range(2, k + 1), exps))
                if not value.is_zero():
                    result.fail(A, "y-monomial does not vanish", exponents=exps)

    def _engine_agreement(self, result: VerificationResult, n, dims, coefficients, bound):
        families = [_family([1] * _positive(size, "n"), FamilyKind.TRIANGULAR, coefficients, bound)
                    for size in _int_list(n, "n")]
        families.extend(_triangularizable_family(d, coefficients, bound) for d in _dims_list(dims))
        for family in families:
            for A in family:
                result.instances += 1
                if not engines_agree(A):
                    result.fail(A, "engines disagree")

    def _poincare_ranks(self, result: VerificationResult, dims, samples, engines):
        rng = self._rng()
        dims = _dims_list(dims)
        total = _positive(samples or settings.POINCARE_SAMPLES, "samples")
        per_dims = max(1, total // len(dims))
        for d in dims:
            expected = make_product(d).h_vector()
            instances = (
                _family(d, FamilyKind.BOUNDED_ENTRY, "Z2").sample((per_dims + 1) // 2, rng)
                + _family(d, FamilyKind.BOUNDED_ENTRY, "Z", 1).sample(per_dims // 2, rng)
            )
            for A in instances:
                result.instances += 1
                scale = 1 if A.mode.is_mod_two else 2
                choices = [None, Engine.GENERIC] if engines else [None]
                for engine in choices:
                    ranks = build_ring(A.product, A, scale, engine).poincare_ranks()
                    if ranks != expected or sum(ranks) != A.product.vertex_count:
                        result.fail(A, "ranks differ from the h-vector", ranks=ranks, expected=expected,
                                    engine=engine.value if engine else "auto")

    # Quasitoric manifolds

    def _bott_interval_oriented(self, result: VerificationResult, dims, bound, interval_last):
        counts = {}
        for d in _dims_list(dims):
            _interval_factors(d)
            count = 0
            for A in _generalized_bott_family(d, _positive(bound, "bound"), bool(interval_last)):
                count += 1
                v = verdict(A.product, A)
                if not v.sw_all_zero or v.pontryagin_all_zero is False:
                    result.fail(A, "generalized Bott manifold with nonzero numbers", **v.to_dict())
                    continue
                if A.n % 2 == 0:
                    obstruction = power_sum_obstruction(build_ring(A.product, A, 2))
                    if obstruction:
                        result.fail(A, "power-sum obstruction should vanish", obstruction=obstruction)
            counts[_dims_key(d)] = count
            result.instances += count
        result.details["instances_by_dims"] = counts

    def _cyclic_even_cube(self, result: VerificationResult, k, b, bound):
        matrices: List[ReducedVectorMatrix] = []
        if b is not None:
            vectors = [b] if b and all(isinstance(x, int) for x in b) else b
            for vec in vectors:
                vec = _int_list(list(vec), "b")
                prod = 1
                for x in vec:
                    prod *= x
                if len(vec) % 2 or prod != 2:
                    raise BadParams(f"b = {vec} needs even length and product 2")
                matrices.append(cyclic_matrix(vec))
        else:
            for half in _int_list(k, "k"):
                _positive(half, "k")
                matrices.extend(_family([1] * (2 * half), FamilyKind.CYCLIC, "Z", bound, 2))

        p1_values = set()
        for A in matrices:
            result.instances += 1
            v = verdict(A.product, A)
            if not v.sw_all_zero:
                result.fail(A, "Stiefel-Whitney numbers should vanish", numbers=v.sw_numbers.nonzero())
            if v.oriented_obstruction is not Obstruction.PONTRYAGIN:
                result.fail(A, "expected a Pontryagin obstruction", **v.to_dict())
            if A.n == 2:
                p1_values.add(abs(v.pontryagin_numbers.values["p1"]))

            R = build_ring(A.product, A, 2)
            terms = (R.power(R.variable(j).scale(A.rows[j][(j + 1) % A.n]), A.n) for j in range(A.n))
            weighted = poly_sum(terms, R.nvars, R.coefficients)
            if R.pair_top(weighted) == 0:
                result.fail(A, "sum of (b_j u_j)^n pairs to zero")
        if p1_values:
            result.details["p1_abs"] = p1_values.pop() if len(p1_values) == 1 else sorted(p1_values)

    def _cyclic_odd_blocks(self, result: VerificationResult, n, samples, bound):
        order = _positive(n, "n", 3)
        if order % 2 == 0:
            raise BadParams(f"block order must be odd, got {order}")
        blocks = list(_family([1] * order, FamilyKind.CYCLIC, "Z", bound, -2))
        pairs = list(itertools.product(blocks, blocks))
        chosen = self._rng().sample(pairs, min(_positive(samples, "samples"), len(pairs)))
        for left, right in chosen:
            A = block_diagonal([left, right])
            result.instances += 1
            v = verdict(A.product, A)
            if v.pontryagin_all_zero is not True:
                result.fail(A, "Pontryagin numbers should vanish", numbers=v.pontryagin_numbers.nonzero())
            if not v.sw_all_zero:
                result.fail(A, "Stiefel-Whitney numbers should vanish", numbers=v.sw_numbers.nonzero())
        result.details["family_size"] = len(pairs)

    def _power_sum(self, result: VerificationResult, dims, samples, bound):
        rng = self._rng()
        nonzero = 0
        for d in _dims_list(dims):
            if sum(d) % 2:
                raise BadParams(f"dims {d} have odd total dimension")
            for A in _family(d, FamilyKind.TRIANGULAR, "Z", bound).sample(_positive(samples, "samples"), rng):
                result.instances += 1
                R = build_ring(A.product, A, 2)
                obstruction = power_sum_obstruction(R)
                p = total_pontryagin(R)
                report = char_numbers(R, p)
                direct = facet_power_sum(R)
                rebuilt = power_sum_from_pontryagin(R, p)
                if obstruction != direct or rebuilt != direct:
                    result.fail(A, "power sums disagree", obstruction=obstruction, direct=direct, rebuilt=rebuilt)
                if obstruction:
                    nonzero += 1
                    if report.all_zero:
                        result.fail(A, "nonzero power sum but all Pontryagin numbers vanish",
                                    obstruction=obstruction)
        result.details["nonzero_obstructions"] = nonzero

    def _mod2_projection(self, result: VerificationResult, dims, samples, bound):
        rng = self._rng()
        samples = _positive(samples or settings.SAMPLE_COUNT, "samples")
        for d in _dims_list(dims):
            for A in _family(d, FamilyKind.BOUNDED_ENTRY, "Z", bound).sample(samples, rng):
                result.instances += 1
                if not lemma41_crosscheck(A.product, A):
                    reduced, lifted = mod2_projection_reports(A.product, A)
                    result.fail(A, "mod-2 and integral routes disagree",
                                reduced=reduced.values, lifted=lifted.values)
