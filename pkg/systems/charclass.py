"""Stiefel-Whitney and Pontryagin classes, characteristic numbers and power sums."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from math import factorial
from typing import Any, Dict, List, Optional, Sequence

from sympy.utilities.iterables import partitions as sympy_partitions

from systems.errors import BadL, BadParams, ModeMismatch, NotTriangularizable, OddDegree
from systems.polynomial import Polynomial
from systems.ring import CohomologyRing, Engine

logger = logging.getLogger(__name__)

ORIENTATION_NOTE = "signs are relative to the orientation pairing the base vertex class to +1"


class ClassKind(Enum):
    SW = "sw"
    PONTRYAGIN = "pontryagin"


@dataclass
class GradedClass:
    kind: ClassKind
    components: List[Polynomial]  # index = internal degree
    scale: int = 1

    def component(self, degree: int) -> Polynomial:
        if 0 <= degree < len(self.components):
            return self.components[degree]
        return Polynomial.zero(self.components[0].nvars, self.components[0].coefficients)

    def label(self, degree: int) -> str:
        if self.kind is ClassKind.SW:
            return f"w{self.scale * degree}"
        return f"p{degree // 2}"

    def to_dict(self) -> Dict[str, str]:
        step = 2 if self.kind is ClassKind.PONTRYAGIN else 1
        return {
            self.label(t): str(self.components[t])
            for t in range(step, len(self.components), step)
            if not self.components[t].is_zero()
        }


@dataclass(frozen=True)
class PartitionIndex:
    multiplicities: tuple  # i_1, i_2, ... without trailing zeros

    @property
    def target(self) -> int:
        return sum((j + 1) * i for j, i in enumerate(self.multiplicities))

    def parts(self) -> Dict[int, int]:
        return {j + 1: i for j, i in enumerate(self.multiplicities) if i}

    def label(self, prefix: str, scale: int = 1) -> str:
        names = []
        for j, i in self.parts().items():
            name = f"{prefix}{scale * j}"
            names.append(name if i == 1 else f"{name}^{i}")
        return "*".join(names) if names else "1"


@dataclass
class CharNumberReport:
    kind: ClassKind
    values: Dict[str, int] = field(default_factory=dict)
    applicable: bool = True
    note: Optional[str] = None

    @property
    def all_zero(self) -> bool:
        return all(v == 0 for v in self.values.values())

    def nonzero(self) -> Dict[str, int]:
        return {k: v for k, v in self.values.items() if v}

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "kind": self.kind.value,
            "applicable": self.applicable,
            "all_zero": self.all_zero,
            "values": dict(self.values),
        }
        if self.note:
            out["note"] = self.note
        return out


def partitions(target: int, max_part: Optional[int] = None) -> List[PartitionIndex]:
    """Multiplicity vectors with sum j * i_j = target and parts <= max_part."""
    if target < 0:
        raise BadParams(f"Partition target must be >= 0, got {target}")
    max_part = target if max_part is None else max_part
    if target == 0:
        return [PartitionIndex(())]
    if max_part < 1:
        return []
    out = []
    for p in sympy_partitions(target, k=max_part):
        parts = dict(p)  # sympy reuses the dict between yields
        width = max(parts)
        out.append(PartitionIndex(tuple(parts.get(j, 0) for j in range(1, width + 1))))
    return sorted(out, key=lambda idx: idx.multiplicities, reverse=True)


def _graded(R: CohomologyRing, total: Polynomial, kind: ClassKind) -> GradedClass:
    parts = total.homogeneous_parts()
    components = [parts.get(t, R.zero()) for t in range(R.n + 1)]
    return GradedClass(kind=kind, components=components, scale=R.d)


def total_sw(R: CohomologyRing) -> GradedClass:
    if not R.coefficients.is_mod_two:
        raise ModeMismatch("Stiefel-Whitney classes live in a Z2 ring; reduce the matrix mod 2 first")
    total = R.product(R.one() + v for v in R.facet_classes())
    return _graded(R, total, ClassKind.SW)


def integral_sw_lift(R: CohomologyRing) -> GradedClass:
    """prod (1 + v_F) in an integer ring; its numbers mod 2 are the Stiefel-Whitney numbers."""
    if R.coefficients.is_mod_two:
        raise ModeMismatch("The integral lift needs an integer ring")
    total = R.product(R.one() + v for v in R.facet_classes())
    return _graded(R, total, ClassKind.SW)


def total_pontryagin(R: CohomologyRing) -> GradedClass:
    if R.coefficients.is_mod_two:
        raise ModeMismatch("Pontryagin classes need an integer ring")
    if R.d != 2:
        raise ModeMismatch("Pontryagin classes are defined for quasitoric rings (d = 2)")
    total = R.product(R.one() - R.multiply(v, v) for v in R.facet_classes())
    return _graded(R, total, ClassKind.PONTRYAGIN)


def first_sw(R: CohomologyRing) -> Polynomial:
    if not R.coefficients.is_mod_two:
        raise ModeMismatch("first_sw needs a Z2 ring")
    w1 = R.zero()
    for v in R.facet_classes():
        w1 = w1 + v
    return R.normal_form(w1)


def no_pontryagin_numbers(R: CohomologyRing) -> CharNumberReport:
    return CharNumberReport(
        kind=ClassKind.PONTRYAGIN,
        applicable=False,
        note=f"dimension {R.d * R.n} is not divisible by 4; there are no Pontryagin numbers",
    )


def char_numbers(R: CohomologyRing, cls: GradedClass) -> CharNumberReport:
    if cls.kind is ClassKind.SW:
        report = CharNumberReport(kind=ClassKind.SW)
        for idx in partitions(R.n, R.n):
            value = R.pair_top(R.product(
                R.power(cls.component(j), i) for j, i in idx.parts().items()
            ))
            # integral lifts are reduced to Stiefel-Whitney numbers here
            report.values[idx.label("w", cls.scale)] = value % 2
        return report

    if R.n % 2:
        return no_pontryagin_numbers(R)
    report = CharNumberReport(kind=ClassKind.PONTRYAGIN, note=ORIENTATION_NOTE)
    for idx in partitions(R.n // 2, R.n // 2):
        value = R.pair_top(R.product(
            R.power(cls.component(2 * j), i) for j, i in idx.parts().items()
        ))
        report.values[idx.label("p")] = value
    return report


def elementary_symmetric(values: Sequence[Any], one: Any = 1) -> List[Any]:
    """[sigma_0, ..., sigma_r] of the given values."""
    sigma: List[Any] = [one] + [0] * len(values)
    for x in values:
        for j in range(len(values), 0, -1):
            sigma[j] = sigma[j] + sigma[j - 1] * x
    return sigma


def newton_power_sum(sigma: Sequence[Any], k: int) -> Any:
    """s_k from sigma_1, sigma_2, ... (sigma[0] is sigma_1; missing ones count as 0).

    (-1)^k s_k / k = sum over i_1 + 2 i_2 + ... + k i_k = k of
    (-1)^(i_1+...+i_k) (i_1+...+i_k-1)! / (i_1! ... i_k!) sigma_1^i_1 ... sigma_k^i_k
    """
    if k < 1:
        raise BadParams(f"Power sum index must be >= 1, got {k}")
    total: Any = 0
    for idx in partitions(k, k):
        parts = idx.parts()
        if any(j > len(sigma) for j in parts):
            continue
        count = sum(parts.values())
        numerator = (-1) ** k * k * (-1) ** count * factorial(count - 1)
        denominator = 1
        for i in parts.values():
            denominator *= factorial(i)
        # power sums are integer polynomials in the sigma_j
        coefficient = numerator // denominator
        term: Any = coefficient
        for j, i in parts.items():
            term = term * sigma[j - 1] ** i
        total = total + term
    return total


def required_sigma_indices(l: int) -> List[int]:
    """{1..l} minus {l + 1 - 2^j}, for l = 2^k - 1."""
    if l < 1 or (l + 1) & l:
        raise BadL(f"l + 1 must be a power of two, got l = {l}")
    excluded = set()
    power = 1
    while power <= l + 1:
        excluded.add(l + 1 - power)
        power *= 2
    return [i for i in range(1, l + 1) if i not in excluded]


def sigma_vanishing_condition(R: CohomologyRing, last_factor_y_forms: Sequence[Polynomial], l: int) -> bool:
    required = required_sigma_indices(l)
    if len(last_factor_y_forms) != l:
        raise BadL(f"Expected {l} y-forms for the last factor, got {len(last_factor_y_forms)}")
    sigma = elementary_symmetric(list(last_factor_y_forms), one=R.one())
    for i in required:
        if not R.normal_form(sigma[i]).is_zero():
            logger.debug(f"sigma_{i} does not vanish")
            return False
    return True


def power_sum_obstruction(R: CohomologyRing) -> int:
    """Pairing of u_m^n + sum_k (u_m + y_{mk})^n in a triangular integer ring."""
    if R.coefficients.is_mod_two:
        raise ModeMismatch("The power-sum obstruction is computed in an integer ring")
    if R.n % 2:
        raise OddDegree(f"n = {R.n} is odd")
    if R.engine is not Engine.TRIANGULAR:
        raise NotTriangularizable("The power-sum obstruction needs a triangular ring")
    u_m = R.variable(R.nvars - 1)
    total = R.power(u_m, R.n)
    for y in R.y_forms(R.nvars):
        total = total + R.power(u_m + y, R.n)
    return R.pair_top(total)


def facet_power_sum(R: CohomologyRing) -> int:
    """Pairing of sum over all facets of v_F^n."""
    total = R.zero()
    for v in R.facet_classes():
        total = total + R.power(v, R.n)
    return R.pair_top(total)


def power_sum_from_pontryagin(R: CohomologyRing, pontryagin: GradedClass) -> int:
    """The facet power sum rebuilt from p_1..p_{n/2} (sigma_j = (-1)^j p_j of the v_F^2)."""
    if R.n % 2:
        raise OddDegree(f"n = {R.n} is odd")
    k = R.n // 2
    sigma = [pontryagin.component(2 * j).scale((-1) ** j) for j in range(1, k + 1)]
    s_k = newton_power_sum(sigma, k)
    if not isinstance(s_k, Polynomial):
        return 0
    return R.pair_top(R.normal_form(s_k).homogeneous_part(R.n))
