"""
Integral cohomology rings of CP^(N-1), CP^(N-1) x CP^(N-1) and the partial flag
manifold F(1,1;N), with cup-product operators, tautological Chern classes, the
Euler class of UTCP^(N-1) -> F(1,1;N), the projection pullback / pushforward
matrices, and the two Gysin-sequence computations of H*(UTCP^(N-1)).
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.config import settings
from app.services.laurent import LaurentPoly
from app.services.zlinalg import AbGroup, IntMatrix, direct_sum, homology_at, integer_inverse

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
RingElement = Dict[Monomial, int]


class RingKind(str, Enum):
    CP = "CP"
    FLAG = "FLAG"
    PRODUCT_CP = "PRODUCT_CP"


class GradedRing:
    """
    Finite-rank graded ring given by a monomial basis and a rewriting rule.

    Every variable has cohomological degree 2. Elements are dicts from exponent
    tuples to integer coefficients; `reduce` brings any element to the normal
    form spanned by `basis`.
    """

    def __init__(self, kind: RingKind, n: int, variables: Tuple[str, ...],
                 basis: List[Monomial], top: Monomial):
        self.kind = kind
        self.n = n
        self.variables = variables
        self.basis = basis
        self.top = top
        self._index = {mon: i for i, mon in enumerate(basis)}
        self._normal_forms: Dict[Monomial, RingElement] = {}

    @property
    def label(self) -> str:
        return f"{self.kind.value}({self.n})"

    @property
    def rank(self) -> int:
        return len(self.basis)

    @staticmethod
    def degree(mon: Monomial) -> int:
        return 2 * sum(mon)

    @property
    def top_degree(self) -> int:
        return self.degree(self.top)

    def index(self, mon: Monomial) -> int:
        return self._index[mon]

    def indices_in_degree(self, d: int) -> List[int]:
        return [i for i, mon in enumerate(self.basis) if self.degree(mon) == d]

    def degrees(self) -> List[int]:
        return sorted({self.degree(mon) for mon in self.basis})

    def _rewrite(self, mon: Monomial) -> RingElement:
        """One rewriting step for a monomial outside the basis"""
        raise NotImplementedError

    def reduce_monomial(self, mon: Monomial) -> RingElement:
        if mon in self._index:
            return {mon: 1}
        cached = self._normal_forms.get(mon)
        if cached is not None:
            return cached
        result: RingElement = {}
        for term, coefficient in self._rewrite(mon).items():
            for basis_mon, c in self.reduce_monomial(term).items():
                result[basis_mon] = result.get(basis_mon, 0) + coefficient * c
        result = {k: v for k, v in result.items() if v != 0}
        self._normal_forms[mon] = result
        return result

    def reduce(self, element: RingElement) -> RingElement:
        result: RingElement = {}
        for mon, coefficient in element.items():
            if coefficient == 0:
                continue
            for basis_mon, c in self.reduce_monomial(mon).items():
                result[basis_mon] = result.get(basis_mon, 0) + coefficient * c
        return {k: v for k, v in result.items() if v != 0}

    def multiply(self, x: RingElement, y: RingElement) -> RingElement:
        product: RingElement = {}
        for m1, c1 in x.items():
            for m2, c2 in y.items():
                mon = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                product[mon] = product.get(mon, 0) + c1 * c2
        return self.reduce(product)

    def power(self, x: RingElement, k: int) -> RingElement:
        result = self.one()
        for _ in range(k):
            result = self.multiply(result, x)
        return result

    def one(self) -> RingElement:
        return {tuple(0 for _ in self.variables): 1}

    def generator(self, name: str) -> RingElement:
        pos = self.variables.index(name)
        return {tuple(1 if i == pos else 0 for i in range(len(self.variables))): 1}

    def homogeneous_degree(self, element: RingElement) -> Optional[int]:
        """Degree of a homogeneous element, None for zero; ValueError if inhomogeneous"""
        degrees = {self.degree(mon) for mon, c in element.items() if c != 0}
        if not degrees:
            return None
        if len(degrees) > 1:
            raise ValueError(f"Element of {self.label} is not homogeneous: degrees {sorted(degrees)}")
        return degrees.pop()

    def coordinates(self, element: RingElement) -> List[int]:
        reduced = self.reduce(element)
        coords = [0] * self.rank
        for mon, c in reduced.items():
            coords[self._index[mon]] = c
        return coords

    def from_coordinates(self, coords: Sequence[int]) -> RingElement:
        return {self.basis[i]: int(c) for i, c in enumerate(coords) if c != 0}

    def poincare_polynomial(self) -> LaurentPoly:
        """Sum of q^deg over the basis (cohomological degree as q-exponent)"""
        return LaurentPoly.from_terms((self.degree(mon), 1) for mon in self.basis)

    def format_element(self, element: RingElement) -> str:
        if not element:
            return "0"
        pieces = []
        for mon, c in sorted(element.items()):
            factors = [
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.variables, mon) if e
            ]
            body = "*".join(factors) or "1"
            pieces.append(f"{c}*{body}" if c != 1 else body)
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"GradedRing({self.label}, rank={self.rank})"


class _ProjectiveRing(GradedRing):
    """Z[X]/X^N"""

    def __init__(self, n: int):
        super().__init__(RingKind.CP, n, ("X",), [(i,) for i in range(n)], (n - 1,))

    def _rewrite(self, mon: Monomial) -> RingElement:
        return {}


class _ProductProjectiveRing(GradedRing):
    """Z[X, Y]/(X^N, Y^N)"""

    def __init__(self, n: int):
        basis = [(i, j) for i in range(n) for j in range(n)]
        super().__init__(RingKind.PRODUCT_CP, n, ("X", "Y"), basis, (n - 1, n - 1))

    def _rewrite(self, mon: Monomial) -> RingElement:
        return {}


class _FlagRing(GradedRing):
    """
    Z[a, b]/(h_(N-1)(a, b), h_N(a, b)) with a = c1(A), b = c1(B).

    The ideal is generated by b^(N-1) + a b^(N-2) + ... + a^(N-1) and a^N;
    the normal monomials are a^i b^j with i <= N-1, j <= N-2.
    """

    def __init__(self, n: int):
        basis = [(i, j) for i in range(n) for j in range(n - 1)]
        super().__init__(RingKind.FLAG, n, ("a", "b"), basis, (n - 1, n - 2))

    def _rewrite(self, mon: Monomial) -> RingElement:
        i, j = mon
        n = self.n
        if i >= n:
            return {}
        # b^(N-1) -> -(a b^(N-2) + a^2 b^(N-3) + ... + a^(N-1))
        rest = j - (n - 1)
        return {(i + k, rest + (n - 1 - k)): -1 for k in range(1, n)}


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"N must be at least 2, got {n}")


@lru_cache(maxsize=None)
def cp_ring(n: int) -> GradedRing:
    _check_n(n)
    return _ProjectiveRing(n)


@lru_cache(maxsize=None)
def product_cp_ring(n: int) -> GradedRing:
    _check_n(n)
    return _ProductProjectiveRing(n)


@lru_cache(maxsize=None)
def flag_ring(n: int) -> GradedRing:
    _check_n(n)
    ring = _FlagRing(n)
    logger.debug(f"Built {ring.label} of rank {ring.rank}")
    return ring


def cup_operator(ring: GradedRing, c: RingElement) -> IntMatrix:
    """Matrix of x -> c.x in the monomial basis (columns are images of basis elements)"""
    ring.homogeneous_degree(c)
    columns = [ring.coordinates(ring.multiply(c, {mon: 1})) for mon in ring.basis]
    return IntMatrix(
        [[columns[col][row] for col in range(ring.rank)] for row in range(ring.rank)],
        rows=ring.rank, cols=ring.rank,
    )


def euler_class(n: int) -> RingElement:
    """e = c1(A) - c1(B) in H^2(F(1,1;N))"""
    ring = flag_ring(n)
    return ring.reduce({(1, 0): 1, (0, 1): -1})


def sphere_euler_class(n: int) -> RingElement:
    """Euler class N.X^(N-1) of the (2N-3)-sphere bundle UTCP^(N-1) -> CP^(N-1)"""
    _check_n(n)
    return {(n - 1,): n}


def complete_homogeneous(n: int, k: int) -> RingElement:
    """h_k(a, b) reduced in the flag ring"""
    return flag_ring(n).reduce({(i, k - i): 1 for i in range(k + 1)})


def complement_chern_classes(n: int) -> List[RingElement]:
    """c_k of the rank N-2 complement bundle C, c_k(C) = (-1)^k h_k(a, b), k = 0..N-2"""
    ring = flag_ring(n)
    return [
        ring.reduce({mon: (-1) ** k * c for mon, c in complete_homogeneous(n, k).items()})
        for k in range(n - 1)
    ]


def tautological_chern_product(n: int) -> RingElement:
    """c(A) c(B) c(C) in the flag ring; the splitting A + B + C = C^N forces this to be 1"""
    ring = flag_ring(n)
    total_c: RingElement = {}
    for part in complement_chern_classes(n):
        for mon, c in part.items():
            total_c[mon] = total_c.get(mon, 0) + c
    c_a = {(0, 0): 1, (1, 0): 1}
    c_b = {(0, 0): 1, (0, 1): 1}
    return ring.multiply(ring.multiply(c_a, c_b), total_c)


@lru_cache(maxsize=None)
def pullback_matrix(n: int) -> IntMatrix:
    """
    Ring map (pi_A, pi_B)^*: H*(CP x CP) -> H*(F(1,1;N)), X^i Y^j -> a^i b^j.

    Rows are indexed by the flag basis, columns by the product basis.
    """
    flag = flag_ring(n)
    product = product_cp_ring(n)
    columns = [flag.coordinates({mon: 1}) for mon in product.basis]
    return IntMatrix(
        [[columns[col][row] for col in range(product.rank)] for row in range(flag.rank)],
        rows=flag.rank, cols=product.rank,
    )


def ring_map_image(n: int, element: RingElement) -> RingElement:
    """Image of a product-ring element under the pullback"""
    flag = flag_ring(n)
    product = product_cp_ring(n)
    coords = pullback_matrix(n) @ IntMatrix([[c] for c in product.coordinates(element)],
                                            rows=product.rank, cols=1)
    return flag.from_coordinates([coords[i, 0] for i in range(flag.rank)])


def poincare_pairing(ring: GradedRing) -> IntMatrix:
    """Gram matrix of the cup-product pairing: coefficient of the top monomial"""
    top = ring.index(ring.top)
    rows = []
    for m1 in ring.basis:
        row = []
        for m2 in ring.basis:
            row.append(ring.coordinates(ring.multiply({m1: 1}, {m2: 1}))[top])
        rows.append(row)
    return IntMatrix(rows, rows=ring.rank, cols=ring.rank)


@lru_cache(maxsize=None)
def pushforward_matrix(n: int) -> IntMatrix:
    """
    Adjoint of the pullback with respect to the cup-product pairings.

    On CP x CP the monomial basis is self-dual (X^i Y^j against
    X^(N-1-i) Y^(N-1-j)); on the flag ring a^i b^j against
    a^(N-1-i) b^(N-2-j) holds up to the unimodular Gram matrix, which is
    applied explicitly. Raises cohomological degree by 2.
    """
    gram_flag = poincare_pairing(flag_ring(n))
    gram_product = poincare_pairing(product_cp_ring(n))
    adjoint = integer_inverse(gram_product) @ pullback_matrix(n).T @ gram_flag
    return adjoint.scale(settings.PUSHFORWARD_SIGN)


@dataclass
class GradedAbGroup:
    """Cohomology-like graded group: degree -> AbGroup, trivial degrees dropped"""
    degrees: Dict[int, AbGroup] = field(default_factory=dict)

    def __post_init__(self):
        for d in self.degrees:
            if d < 0:
                raise ValueError(f"Negative cohomological degree {d}")
        self.degrees = {d: g for d, g in sorted(self.degrees.items()) if not g.is_trivial()}

    def __getitem__(self, d: int) -> AbGroup:
        return self.degrees.get(d, AbGroup.trivial())

    def total(self) -> AbGroup:
        return direct_sum(self.degrees.values())

    def direct_sum(self, other: "GradedAbGroup") -> "GradedAbGroup":
        merged = dict(self.degrees)
        for d, g in other.degrees.items():
            merged[d] = merged[d].direct_sum(g) if d in merged else g
        return GradedAbGroup(merged)

    def tensor(self, other: "GradedAbGroup") -> "GradedAbGroup":
        """Kunneth for torsion-free factors"""
        if not all(g.is_free() for g in list(self.degrees.values()) + list(other.degrees.values())):
            raise ValueError("Graded tensor product is only implemented for free groups")
        ranks: Dict[int, int] = {}
        for d1, g1 in self.degrees.items():
            for d2, g2 in other.degrees.items():
                ranks[d1 + d2] = ranks.get(d1 + d2, 0) + g1.free_rank * g2.free_rank
        return GradedAbGroup({d: AbGroup.free(r) for d, r in ranks.items()})

    def to_schema(self):
        from app.schemas.homology import GradedAbGroupSchema

        return GradedAbGroupSchema(
            degrees={str(d): g.to_schema() for d, g in self.degrees.items()}
        )


def graded_group(ring: GradedRing) -> GradedAbGroup:
    """The additive graded group of a free graded ring"""
    return GradedAbGroup({d: AbGroup.free(len(ring.indices_in_degree(d))) for d in ring.degrees()})


def degree_block(ring: GradedRing, operator: IntMatrix, source_degree: int, shift: int) -> IntMatrix:
    """Block of a homogeneous operator from degree `source_degree` to `source_degree + shift`"""
    return operator.submatrix(
        ring.indices_in_degree(source_degree + shift), ring.indices_in_degree(source_degree)
    )


def gysin_circle_ut(n: int) -> GradedAbGroup:
    """
    H*(UTCP^(N-1)) from the Gysin sequence of the circle bundle over F(1,1;N):
    H^(2i+2) = coker(e: H^2i -> H^(2i+2)), H^(2i+1) = ker(e: H^2i -> H^(2i+2)).
    """
    flag = flag_ring(n)
    cup_e = cup_operator(flag, euler_class(n))
    groups: Dict[int, AbGroup] = {}
    for d in range(0, flag.top_degree + 1, 2):
        dim = len(flag.indices_in_degree(d))
        incoming = (degree_block(flag, cup_e, d - 2, 2) if d >= 2
                    else IntMatrix.zeros(dim, 0))
        outgoing = degree_block(flag, cup_e, d, 2)
        groups[d] = homology_at(incoming, IntMatrix.zeros(0, dim))
        groups[d + 1] = homology_at(IntMatrix.zeros(dim, 0), outgoing)
    result = GradedAbGroup(groups)
    logger.debug(f"Circle-bundle Gysin for N={n}: {result.degrees}")
    return result


def gysin_sphere_ut(n: int) -> GradedAbGroup:
    """
    H*(UTCP^(N-1)) from the Gysin sequence of the (2N-3)-sphere bundle over
    CP^(N-1) with Euler class N.X^(N-1): the cokernel of cup with it lands in
    the target degree, its kernel on H^2j lands in degree 2j + 2N - 3.
    """
    cp = cp_ring(n)
    shift = 2 * n - 2
    cup_e = cup_operator(cp, sphere_euler_class(n))
    groups: Dict[int, AbGroup] = {}
    for d in range(0, cp.top_degree + 1, 2):
        dim = len(cp.indices_in_degree(d))
        incoming = (degree_block(cp, cup_e, d - shift, shift) if d >= shift
                    else IntMatrix.zeros(dim, 0))
        outgoing = degree_block(cp, cup_e, d, shift)
        cokernel = homology_at(incoming, IntMatrix.zeros(0, dim))
        kernel = homology_at(IntMatrix.zeros(dim, 0), outgoing)
        groups[d] = groups.get(d, AbGroup.trivial()).direct_sum(cokernel)
        odd = d + 2 * n - 3
        groups[odd] = groups.get(odd, AbGroup.trivial()).direct_sum(kernel)
    return GradedAbGroup(groups)


def ut_cohomology_formula(n: int) -> GradedAbGroup:
    """Closed form: Z in even degrees 0..2N-4, Z/N in 2N-2, Z in odd degrees 2N-1..4N-5"""
    _check_n(n)
    groups: Dict[int, AbGroup] = {}
    for i in range(0, 2 * n - 3, 2):
        groups[i] = AbGroup.free(1)
    groups[2 * n - 2] = AbGroup(torsion=(n,))
    for i in range(2 * n - 1, 4 * n - 4, 2):
        groups[i] = AbGroup.free(1)
    return GradedAbGroup(groups)
