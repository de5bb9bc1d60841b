"""Cobordism verdicts from characteristic numbers.

Stiefel-Whitney numbers decide unoriented cobordism (Thom); together with Pontryagin
numbers they decide the oriented class (Wall). A verdict of no oriented obstruction
therefore means no obstruction was found among these invariants.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from systems.charclass import (
    CharNumberReport,
    char_numbers,
    integral_sw_lift,
    no_pontryagin_numbers,
    total_pontryagin,
    total_sw,
)
from systems.charmatrix import ReducedVectorMatrix, mod2_reduce
from systems.errors import ModeMismatch
from systems.polynomial import Coefficients
from systems.polytope import SimplexProduct
from systems.ring import CohomologyRing, Engine, build_ring

logger = logging.getLogger(__name__)


class Obstruction(Enum):
    NONE = "none"
    SW = "sw"
    PONTRYAGIN = "pontryagin"
    BOTH = "both"


@dataclass
class CobordismVerdict:
    sw_numbers: CharNumberReport
    pontryagin_numbers: Optional[CharNumberReport] = None

    @property
    def sw_all_zero(self) -> bool:
        return self.sw_numbers.all_zero

    @property
    def pontryagin_all_zero(self) -> Optional[bool]:
        """None when there are no Pontryagin numbers to consider."""
        if self.pontryagin_numbers is None or not self.pontryagin_numbers.applicable:
            return None
        return self.pontryagin_numbers.all_zero

    @property
    def unoriented_boundary(self) -> bool:
        return self.sw_all_zero

    @property
    def oriented_obstruction(self) -> Obstruction:
        sw = not self.sw_all_zero
        pont = self.pontryagin_all_zero is False
        if sw and pont:
            return Obstruction.BOTH
        if sw:
            return Obstruction.SW
        if pont:
            return Obstruction.PONTRYAGIN
        return Obstruction.NONE

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sw_all_zero": self.sw_all_zero,
            "pontryagin_all_zero": self.pontryagin_all_zero,
            "unoriented_boundary": self.unoriented_boundary,
            "oriented_obstruction": self.oriented_obstruction.value,
            "sw_numbers": self.sw_numbers.values,
            "pontryagin_numbers": self.pontryagin_numbers.values if self.pontryagin_numbers else {},
            "notes": {
                "unoriented_boundary": "Stiefel-Whitney numbers decide unoriented cobordism (Thom)",
                "oriented_obstruction": (
                    "none means no obstruction found (Wall)"
                    if self.oriented_obstruction is Obstruction.NONE
                    else "nonzero characteristic numbers rule out an oriented null-cobordism"
                ),
                "pontryagin": self.pontryagin_numbers.note if self.pontryagin_numbers else None,
            },
        }


def sw_ring(P: SimplexProduct, A: ReducedVectorMatrix, engine: Optional[Engine] = None) -> CohomologyRing:
    """Z2 ring carrying the Stiefel-Whitney classes; integer inputs go through mod-2 reduction."""
    if A.mode.is_mod_two:
        return build_ring(P, A, 1, engine)
    return build_ring(P, mod2_reduce(A), 2, engine)


def sw_report(P: SimplexProduct, A: ReducedVectorMatrix, engine: Optional[Engine] = None) -> CharNumberReport:
    R = sw_ring(P, A, engine)
    return char_numbers(R, total_sw(R))


def pontryagin_report(P: SimplexProduct, A: ReducedVectorMatrix,
                      engine: Optional[Engine] = None) -> Optional[CharNumberReport]:
    if A.mode.is_mod_two:
        return None
    R = build_ring(P, A, 2, engine)
    if R.n % 2:
        return no_pontryagin_numbers(R)
    return char_numbers(R, total_pontryagin(R))


def verdict(P: SimplexProduct, A: ReducedVectorMatrix, engine: Optional[Engine] = None) -> CobordismVerdict:
    result = CobordismVerdict(
        sw_numbers=sw_report(P, A, engine),
        pontryagin_numbers=pontryagin_report(P, A, engine),
    )
    logger.debug(f"{A}: sw_all_zero={result.sw_all_zero}, pontryagin_all_zero={result.pontryagin_all_zero}")
    return result


def mod2_projection_reports(P: SimplexProduct, A: ReducedVectorMatrix) -> Tuple[CharNumberReport, CharNumberReport]:
    """(numbers of the mod-2 reduced small cover ring, integral-lift numbers reduced mod 2)."""
    if A.mode is not Coefficients.INTEGER:
        raise ModeMismatch("The mod-2 projection check needs an integer matrix")
    reduced = sw_report(P, A)
    R = build_ring(P, A, 2)
    lifted = char_numbers(R, integral_sw_lift(R))
    return reduced, lifted


def lemma41_crosscheck(P: SimplexProduct, A: ReducedVectorMatrix) -> bool:
    """Reduced numbers agree with the integral route, and vanishing carries over."""
    reduced, lifted = mod2_projection_reports(P, A)
    agree = reduced.values == lifted.values
    implied = (not reduced.all_zero) or lifted.all_zero
    if not agree:
        logger.warning(f"{A}: reduced {reduced.values} vs lifted {lifted.values}")
    return agree and implied
