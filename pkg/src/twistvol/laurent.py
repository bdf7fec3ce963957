"""Laurent polynomials in one variable with exact integer coefficients."""
from __future__ import annotations

from typing import Iterator, Mapping

__all__ = ["LaurentPolynomial"]


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial; zero coefficients are never stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None) -> None:
        clean: dict[int, int] = {}
        for exp, coef in (terms or {}).items():
            if not isinstance(exp, int) or not isinstance(coef, int):
                raise TypeError("exponents and coefficients must be integers")
            if coef:
                clean[exp] = clean.get(exp, 0) + coef
        self._terms = {e: c for e, c in sorted(clean.items()) if c}
        self._hash: int | None = None

    @classmethod
    def monomial(cls, exp: int, coef: int = 1) -> LaurentPolynomial:
        return cls({exp: coef})

    @classmethod
    def constant(cls, value: int) -> LaurentPolynomial:
        return cls({0: value})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    @property
    def max_degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(self._terms)

    @property
    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return min(self._terms)

    def span(self) -> int:
        return self.max_degree - self.min_degree

    def _coerce(self, other: object) -> LaurentPolynomial:
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> LaurentPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> LaurentPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> LaurentPolynomial:
        return (-self) + other

    def __mul__(self, other: object) -> LaurentPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPolynomial:
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial inverse needs a unit coefficient")
            return LaurentPolynomial({e * n: c ** (-n)})
        result = LaurentPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute_inverse(self) -> LaurentPolynomial:
        """The polynomial with the variable replaced by its inverse."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()})

    def evaluate(self, x: complex) -> complex:
        return sum(c * x**e for e, c in self._terms.items())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def to_dict(self) -> dict[str, int]:
        return {str(e): c for e, c in self._terms.items()}

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self._terms!r})"

    def __str__(self) -> str:
        return self.format("A")

    def format(self, var: str = "A") -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = var if e == 1 else f"{var}^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text
