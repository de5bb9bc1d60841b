"""Sparse exact multivariate polynomials in u_1..u_m over Z/2, Z or Q."""
from __future__ import annotations

from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from systems.errors import ModeMismatch

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


class Coefficients(Enum):
    MOD_TWO = "Z2"
    INTEGER = "Z"
    RATIONAL = "Q"

    @classmethod
    def parse(cls, value: Union[str, "Coefficients"]) -> "Coefficients":
        if isinstance(value, Coefficients):
            return value
        try:
            return cls(str(value))
        except ValueError:
            raise ModeMismatch(f"Unknown coefficient mode {value!r}; expected one of Z2, Z, Q")

    @property
    def is_mod_two(self) -> bool:
        return self is Coefficients.MOD_TWO

    def normalize(self, value: Scalar) -> Scalar:
        """Bring a scalar into canonical form for this mode."""
        if self is Coefficients.RATIONAL:
            return Fraction(value)
        integral = _as_int(value)
        if self is Coefficients.MOD_TWO:
            return integral % 2
        return integral


def _as_int(value: Scalar) -> int:
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Rational) and value.denominator == 1:
        return int(value.numerator)
    raise ModeMismatch(f"Coefficient {value} is not integral")


def monomial_degree(mono: Monomial) -> int:
    return sum(mono)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomials_of_degree(nvars: int, degree: int) -> List[Monomial]:
    """All exponent vectors of the given total degree, lexicographically ascending."""
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree + 1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def format_monomial(mono: Monomial, var: str = "u") -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"{var}{i + 1}")
        elif e > 1:
            parts.append(f"{var}{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def format_scalar(value: Scalar) -> Union[int, str]:
    """JSON-friendly scalar: ints stay ints, proper fractions become 'p/q'."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return int(value)


class Polynomial:
    __slots__ = ("nvars", "coefficients", "terms")

    def __init__(self, nvars: int, coefficients: Coefficients, terms: Optional[Dict[Monomial, Scalar]] = None):
        self.nvars = nvars
        self.coefficients = coefficients
        self.terms: Dict[Monomial, Scalar] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != nvars:
                raise ModeMismatch(f"Monomial {mono} does not have {nvars} exponents")
            c = coefficients.normalize(c)
            if c:
                self.terms[tuple(mono)] = c

    @classmethod
    def _raw(cls, nvars: int, coefficients: Coefficients, terms: Dict[Monomial, Scalar]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly.coefficients = coefficients
        poly.terms = terms
        return poly

    # Factories

    @classmethod
    def zero(cls, nvars: int, coefficients: Coefficients) -> "Polynomial":
        return cls._raw(nvars, coefficients, {})

    @classmethod
    def constant(cls, nvars: int, coefficients: Coefficients, value: Scalar) -> "Polynomial":
        return cls(nvars, coefficients, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int, coefficients: Coefficients) -> "Polynomial":
        return cls.constant(nvars, coefficients, 1)

    @classmethod
    def monomial(cls, nvars: int, coefficients: Coefficients, exponents: Sequence[int], value: Scalar = 1) -> "Polynomial":
        return cls(nvars, coefficients, {tuple(exponents): value})

    @classmethod
    def variable(cls, nvars: int, coefficients: Coefficients, index: int) -> "Polynomial":
        """The variable u_{index+1} (0-based index)."""
        exps = [0] * nvars
        exps[index] = 1
        return cls.monomial(nvars, coefficients, exps)

    @classmethod
    def linear(cls, nvars: int, coefficients: Coefficients, weights: Sequence[Scalar]) -> "Polynomial":
        terms = {}
        for i, w in enumerate(weights):
            exps = [0] * nvars
            exps[i] = 1
            terms[tuple(exps)] = w
        return cls(nvars, coefficients, terms)

    # Inspection

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degrees = {sum(m) for m in self.terms}
        if not degrees:
            return True
        if len(degrees) > 1:
            return False
        return degree is None or degrees == {degree}

    def coefficient(self, mono: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(mono), 0)

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial._raw(self.nvars, self.coefficients,
                               {m: c for m, c in self.terms.items() if sum(m) == degree})

    def homogeneous_parts(self) -> Dict[int, "Polynomial"]:
        parts: Dict[int, Dict[Monomial, Scalar]] = {}
        for m, c in self.terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {t: Polynomial._raw(self.nvars, self.coefficients, terms) for t, terms in sorted(parts.items())}

    def to(self, coefficients: Coefficients) -> "Polynomial":
        """Convert to another coefficient mode (Q -> Z requires integral coefficients)."""
        if coefficients is self.coefficients:
            return self
        return Polynomial(self.nvars, coefficients, self.terms)

    # Arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ModeMismatch(f"Variable count mismatch: {self.nvars} vs {other.nvars}")
            if other.coefficients is not self.coefficients:
                raise ModeMismatch(
                    f"Coefficient mode mismatch: {self.coefficients.value} vs {other.coefficients.value}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, self.coefficients, other)
        return NotImplemented

    def _add_terms(self, other: "Polynomial", sign: int) -> "Polynomial":
        mode = self.coefficients
        terms = dict(self.terms)
        for m, c in other.terms.items():
            value = terms.get(m, 0) + sign * c
            if mode.is_mod_two:
                value %= 2
            if value:
                terms[m] = value
            else:
                terms.pop(m, None)
        return Polynomial._raw(self.nvars, mode, terms)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._add_terms(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._add_terms(other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other._add_terms(self, -1)

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def scale(self, factor: Scalar) -> "Polynomial":
        mode = self.coefficients
        factor = mode.normalize(factor)
        if not factor:
            return Polynomial.zero(self.nvars, mode)
        terms = {}
        for m, c in self.terms.items():
            value = c * factor
            if mode.is_mod_two:
                value %= 2
            if value:
                terms[m] = value
        return Polynomial._raw(self.nvars, mode, terms)

    def mul_truncated(self, other: "Polynomial", max_degree: Optional[int] = None) -> "Polynomial":
        """Product, dropping every term of total degree above max_degree."""
        other = self._coerce(other)
        mode = self.coefficients
        terms: Dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            d1 = sum(m1)
            for m2, c2 in other.terms.items():
                if max_degree is not None and d1 + sum(m2) > max_degree:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        if mode.is_mod_two:
            terms = {m: c % 2 for m, c in terms.items()}
        return Polynomial._raw(self.nvars, mode, {m: c for m, c in terms.items() if c})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.mul_truncated(other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Exponent must be a non-negative integer, got {exponent!r}")
        result = Polynomial.one(self.nvars, self.coefficients)
        base = self
        while exponent:
            if exponent & 1:
                result = result.mul_truncated(base)
            exponent >>= 1
            if exponent:
                base = base.mul_truncated(base)
        return result

    # Comparison and display

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, self.coefficients, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        # Z and Q polynomials with equal values compare equal
        return (
            self.nvars == other.nvars
            and self.coefficients.is_mod_two == other.coefficients.is_mod_two
            and self.terms == other.terms
        )

    __hash__ = None

    def sorted_terms(self) -> List[Tuple[Monomial, Scalar]]:
        """Terms by descending degree, then descending in u_m, u_{m-1}, ..."""
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), tuple(reversed(item[0]))), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for mono, c in self.sorted_terms():
            body = format_monomial(mono)
            if body == "1":
                text = str(c)
            elif c == 1:
                text = body
            elif c == -1:
                text = f"-{body}"
            else:
                text = f"{c}*{body}"
            out.append(text)
        return " + ".join(out).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Polynomial({self.coefficients.value}, {self})"

    def as_dict(self) -> Dict[str, Union[int, str]]:
        return {format_monomial(m): format_scalar(c) for m, c in self.sorted_terms()}


def poly_arith(p: Polynomial, q: Union[Polynomial, int], op: str) -> Polynomial:
    """Apply add, sub, mul or pow (q is then the exponent)."""
    if op == "pow":
        return p ** q
    if not isinstance(q, Polynomial):
        raise ModeMismatch("Second operand must be a polynomial")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"Unknown polynomial operation {op!r}")


def poly_sum(polys: Iterable[Polynomial], nvars: int, coefficients: Coefficients) -> Polynomial:
    total = Polynomial.zero(nvars, coefficients)
    for p in polys:
        total = total + p
    return total
