"""
Exact Laurent polynomials in one variable q over the integers.

Carries quantum integers, quantum binomials and every graded rank or graded
Euler characteristic computed elsewhere in the package.
"""

import logging
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

logger = logging.getLogger(__name__)


class LaurentPoly:
    """Immutable integer Laurent polynomial stored as {exponent: coefficient}"""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] = None):
        # zero coefficients are never stored
        cleaned = {int(k): int(v) for k, v in (coeffs or {}).items() if v != 0}
        object.__setattr__(self, "_coeffs", cleaned)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    def __reduce__(self):
        return (LaurentPoly, (self._coeffs,))

    # Constructors
    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[int, int]]) -> "LaurentPoly":
        acc: Dict[int, int] = {}
        for exponent, coefficient in terms:
            acc[exponent] = acc.get(exponent, 0) + coefficient
        return cls(acc)

    # Accessors
    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._coeffs)

    def terms(self) -> List[Tuple[int, int]]:
        """(exponent, coefficient) pairs with strictly increasing exponents"""
        return sorted(self._coeffs.items())

    def coefficient(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def min_degree(self) -> int:
        if self.is_zero():
            raise ValueError("The zero polynomial has no degree")
        return min(self._coeffs)

    def max_degree(self) -> int:
        if self.is_zero():
            raise ValueError("The zero polynomial has no degree")
        return max(self._coeffs)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.terms())

    # Ring structure
    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        other = _coerce(other)
        acc = dict(self._coeffs)
        for k, v in other._coeffs.items():
            acc[k] = acc.get(k, 0) + v
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return _coerce(other) - self

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        other = _coerce(other)
        acc: Dict[int, int] = {}
        for k1, v1 in self._coeffs.items():
            for k2, v2 in other._coeffs.items():
                acc[k1 + k2] = acc.get(k1 + k2, 0) + v1 * v2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            raise ValueError(f"Negative power of a Laurent polynomial: {exponent}")
        result = LaurentPoly.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def shift(self, d: int) -> "LaurentPoly":
        """Multiply by q^d"""
        return LaurentPoly({k + d: v for k, v in self._coeffs.items()})

    def bar(self) -> "LaurentPoly":
        """Substitute q -> q^-1"""
        return LaurentPoly({-k: v for k, v in self._coeffs.items()})

    def eval_at_one(self) -> int:
        return sum(self._coeffs.values())

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    # Comparison / hashing
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            # constants compare equal to ints, so they hash like them
            if set(self._coeffs) <= {0}:
                value = hash(self._coeffs.get(0, 0))
            else:
                value = hash(tuple(self.terms()))
            object.__setattr__(self, "_hash", value)
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.terms()})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for exponent, coefficient in sorted(self._coeffs.items(), reverse=True):
            if exponent == 0:
                body = str(abs(coefficient))
            else:
                power = "q" if exponent == 1 else f"q^{exponent}"
                body = power if abs(coefficient) == 1 else f"{abs(coefficient)}{power}"
            sign = "-" if coefficient < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    # Serialization
    def to_json(self) -> Dict[str, List[List[int]]]:
        return {"terms": [[k, v] for k, v in self.terms()]}

    @classmethod
    def from_json(cls, payload: Mapping) -> "LaurentPoly":
        from app.schemas.homology import LaurentPolySchema

        return LaurentPolySchema.model_validate(payload).to_domain()


def _coerce(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly({0: value})
    raise TypeError(f"Cannot combine LaurentPoly with {type(value).__name__}")


def arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """Exact ring arithmetic; op is one of add, sub, mul"""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"Unknown Laurent operation: {op}")


def shift(a: LaurentPoly, d: int) -> LaurentPoly:
    return a.shift(d)


def eval_at_one(a: LaurentPoly) -> int:
    return a.eval_at_one()


def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """
    Divide a by b, requiring the quotient to be an integral Laurent polynomial.

    Raises:
        ArithmeticError: if b is zero or the division leaves a remainder
    """
    if b.is_zero():
        raise ArithmeticError("Division by the zero Laurent polynomial")
    if a.is_zero():
        return LaurentPoly.zero()

    # Work with ordinary polynomials in q: strip the lowest powers of q
    a_low, b_low = a.min_degree(), b.min_degree()
    remainder = {k - a_low: v for k, v in a.coeffs.items()}
    divisor = {k - b_low: v for k, v in b.coeffs.items()}
    divisor_top = max(divisor)
    lead = divisor[divisor_top]

    quotient: Dict[int, int] = {}
    while remainder:
        top = max(remainder)
        if top < divisor_top:
            break
        coefficient, rest = divmod(remainder[top], lead)
        if rest != 0:
            break
        step = top - divisor_top
        quotient[step] = coefficient
        for k, v in divisor.items():
            value = remainder.get(k + step, 0) - coefficient * v
            if value:
                remainder[k + step] = value
            else:
                remainder.pop(k + step, None)

    if remainder:
        logger.error(f"Inexact Laurent division: ({a}) / ({b})")
        raise ArithmeticError(f"Inexact Laurent division: ({a}) / ({b})")
    return LaurentPoly(quotient).shift(a_low - b_low)


def qint(n: int) -> LaurentPoly:
    """Quantum integer [n] = q^(n-1) + q^(n-3) + ... + q^(1-n)"""
    if n < 0:
        raise ValueError(f"qint expects n >= 0, got {n}")
    return LaurentPoly({n - 1 - 2 * i: 1 for i in range(n)})


def qfactorial(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError(f"qfactorial expects n >= 0, got {n}")
    result = LaurentPoly.one()
    for i in range(1, n + 1):
        result = result * qint(i)
    return result


def qbinom(n: int, k: int) -> LaurentPoly:
    """
    Quantum binomial [n]! / ([k]! [n-k]!), zero outside 0 <= k <= n.

    The numerator [n]! is formed first and the factors [1..k] and [1..n-k]
    are divided out one at a time; every intermediate quotient is integral.
    """
    if n < 0:
        raise ValueError(f"qbinom expects n >= 0, got {n}")
    if k < 0 or k > n:
        return LaurentPoly.zero()

    result = qfactorial(n)
    for i in range(1, k + 1):
        result = exact_divide(result, qint(i))
    for i in range(1, n - k + 1):
        result = exact_divide(result, qint(i))
    return result
