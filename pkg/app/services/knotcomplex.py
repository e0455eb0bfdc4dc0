"""
Bigraded chain complexes for the torus links T(2,m).

Pipeline (b) closes up the reduced twist complex into one complex of state
spaces and takes its homology strand by strand. Pipeline (a) splits the same
complex into shifted copies of the two-term complex A (cup with the Euler
class on the theta web), one theta web for even m, and the unknot.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple, Union

from app.services import cohomring
from app.services.laurent import LaurentPoly
from app.services.zlinalg import (
    AbGroup,
    FreeChainComplex,
    IntMatrix,
    complex_homology,
    direct_sum,
)

logger = logging.getLogger(__name__)

Bidegree = Tuple[int, int]


@dataclass
class BigradedComplex:
    """
    Complex on positions lo .. lo + len(qdegrees) - 1. qdegrees[p] lists the
    q-degree of every generator at position lo + p; differentials[h] maps
    position h to h + 1 and must preserve q-degree.
    """
    lo: int
    qdegrees: List[List[int]]
    differentials: Dict[int, IntMatrix] = field(default_factory=dict)
    chain_complex: FreeChainComplex = field(init=False, repr=False)

    def __post_init__(self):
        self.chain_complex = FreeChainComplex(
            lo=self.lo,
            ranks=[len(qs) for qs in self.qdegrees],
            differentials=dict(self.differentials),
        )
        for h, d in self.differentials.items():
            src, tgt = self.qdegrees_at(h), self.qdegrees_at(h + 1)
            for r in range(d.rows):
                for c in range(d.cols):
                    if d[r, c] != 0 and tgt[r] != src[c]:
                        raise ValueError(
                            f"Differential at h={h} is not q-homogeneous: entry ({r}, {c}) "
                            f"maps q={src[c]} to q={tgt[r]}"
                        )

    @property
    def hi(self) -> int:
        return self.lo + len(self.qdegrees) - 1

    @property
    def positions(self) -> range:
        return range(self.lo, self.hi + 1)

    def qdegrees_at(self, h: int) -> List[int]:
        if self.lo <= h <= self.hi:
            return self.qdegrees[h - self.lo]
        return []

    def differential(self, h: int) -> IntMatrix:
        return self.chain_complex.differential(h)

    def q_values(self) -> List[int]:
        return sorted({q for qs in self.qdegrees for q in qs})

    def strand(self, q: int) -> FreeChainComplex:
        """The subcomplex of generators in q-degree q"""
        picks = {h: [i for i, x in enumerate(self.qdegrees_at(h)) if x == q] for h in self.positions}
        differentials = {
            h: self.differential(h).submatrix(picks[h + 1], picks[h])
            for h in range(self.lo, self.hi)
        }
        return FreeChainComplex(
            lo=self.lo, ranks=[len(picks[h]) for h in self.positions], differentials=differentials
        )

    def shifted(self, h_shift: int, q_shift: int) -> "BigradedComplex":
        return BigradedComplex(
            lo=self.lo + h_shift,
            qdegrees=[[q + q_shift for q in qs] for qs in self.qdegrees],
            differentials={h + h_shift: d for h, d in self.differentials.items()},
        )

    def to_schema(self):
        from app.schemas.homology import BigradedComplexSchema

        return BigradedComplexSchema(
            lo=self.lo,
            qdegrees=self.qdegrees,
            differentials={str(h): d.to_schema() for h, d in sorted(self.differentials.items())},
        )


@dataclass
class BigradedGroup:
    """(h, q) -> AbGroup, trivial entries dropped"""
    groups: Dict[Bidegree, AbGroup] = field(default_factory=dict)

    def __post_init__(self):
        self.groups = {k: g for k, g in sorted(self.groups.items()) if not g.is_trivial()}

    def __getitem__(self, bidegree: Bidegree) -> AbGroup:
        return self.groups.get(bidegree, AbGroup.trivial())

    def total(self) -> AbGroup:
        return direct_sum(self.groups.values())

    def shifted(self, h_shift: int, q_shift: int) -> "BigradedGroup":
        return BigradedGroup({(h + h_shift, q + q_shift): g for (h, q), g in self.groups.items()})

    def direct_sum(self, other: "BigradedGroup") -> "BigradedGroup":
        merged = dict(self.groups)
        for k, g in other.groups.items():
            merged[k] = merged[k].direct_sum(g) if k in merged else g
        return BigradedGroup(merged)

    def to_schema(self, n: int, m: int):
        from app.schemas.homology import BigradedEntrySchema, BigradedGroupSchema

        return BigradedGroupSchema(
            N=n,
            m=m,
            groups=[
                BigradedEntrySchema(h=h, q=q, free=g.free_rank, torsion=list(g.torsion))
                for (h, q), g in sorted(self.groups.items())
            ],
        )


class SummandKind(str, Enum):
    A_COMPLEX = "A_COMPLEX"
    THETA = "THETA"
    UNKNOT = "UNKNOT"


@dataclass(frozen=True)
class SummandDescriptor:
    """A shifted summand of the decomposition; shifts act on top of the state space's own"""
    kind: SummandKind
    h_shift: int
    q_shift: int


def _check_torus_args(n: int, m: int) -> None:
    if n < 2:
        raise ValueError(f"N must be at least 2, got {n}")
    if m < 1:
        raise ValueError(f"m must be at least 1 here, got {m}")


def build_A_complex(n: int) -> BigradedComplex:
    """
    h^-1 q^(4-2N) H*(F) --(cup e)--> q^(2-2N) H*(F), the closure of one pair
    of consecutive thick resolutions joined by the TR - BL dot difference.
    """
    flag = cohomring.flag_ring(n)
    degrees = [flag.degree(mon) for mon in flag.basis]
    return BigradedComplex(
        lo=-1,
        qdegrees=[[d + 4 - 2 * n for d in degrees], [d + 2 - 2 * n for d in degrees]],
        differentials={-1: cohomring.cup_operator(flag, cohomring.euler_class(n))},
    )


def build_torus_complex(n: int, m: int) -> BigradedComplex:
    """
    Closed-up reduced complex of T(2,m), m >= 1, on positions -m .. 0.

    Position 0 is the two-circle web, state space H*(CP x CP) shifted by
    q^(m(N-1) + 2 - 2N); position -j is the theta web, H*(F(1,1;N)) shifted by
    q^(m(N-1) + 2j - 1 + 3 - 2N). d(-1 -> 0) is the pushforward (zip); out of
    an odd position -j-1 into -j the closed dot difference is zero for odd j
    and cup with e for even j.
    """
    _check_torus_args(n, m)
    flag = cohomring.flag_ring(n)
    product = cohomring.product_cp_ring(n)
    base = m * (n - 1)
    flag_degrees = [flag.degree(mon) for mon in flag.basis]
    product_degrees = [product.degree(mon) for mon in product.basis]

    qdegrees: List[List[int]] = []
    for h in range(-m, 1):
        j = -h
        if j == 0:
            qdegrees.append([d + base + 2 - 2 * n for d in product_degrees])
        else:
            qdegrees.append([d + base + 2 * j - 1 + 3 - 2 * n for d in flag_degrees])

    differentials: Dict[int, IntMatrix] = {-1: cohomring.pushforward_matrix(n)}
    cup_e: Optional[IntMatrix] = None
    for j in range(2, m, 2):
        if cup_e is None:
            cup_e = cohomring.cup_operator(flag, cohomring.euler_class(n))
        differentials[-j - 1] = cup_e

    complex_ = BigradedComplex(lo=-m, qdegrees=qdegrees, differentials=differentials)
    logger.debug(f"Built torus complex for N={n}, m={m}: ranks {complex_.chain_complex.ranks}")
    return complex_


def decompose_summands(n: int, m: int) -> List[SummandDescriptor]:
    _check_torus_args(n, m)
    normalization = m * n - m
    summands = [SummandDescriptor(SummandKind.UNKNOT, 0, 1 - n + normalization)]
    k, odd = divmod(m, 2)
    copies = k if odd else k - 1
    for i in range(1, copies + 1):
        summands.append(SummandDescriptor(SummandKind.A_COMPLEX, -2 * i, 4 * i + normalization))
    if not odd:
        summands.append(SummandDescriptor(SummandKind.THETA, -2 * k, 4 * k - 1 + normalization))
    return summands


def bigraded_homology(complex_: BigradedComplex) -> BigradedGroup:
    groups: Dict[Bidegree, AbGroup] = {}
    for q in complex_.q_values():
        for h, g in complex_homology(complex_.strand(q)).items():
            if not g.is_trivial():
                groups[(h, q)] = g
    return BigradedGroup(groups)


def state_space_group(ring: cohomring.GradedRing, h: int, q_offset: int) -> BigradedGroup:
    ranks: Dict[Bidegree, int] = {}
    for mon in ring.basis:
        key = (h, ring.degree(mon) + q_offset)
        ranks[key] = ranks.get(key, 0) + 1
    return BigradedGroup({k: AbGroup.free(r) for k, r in ranks.items()})


def summand_homology(n: int, descriptors: Iterable[SummandDescriptor]) -> BigradedGroup:
    total = BigradedGroup()
    a_homology: Optional[BigradedGroup] = None
    for summand in descriptors:
        if summand.kind is SummandKind.A_COMPLEX:
            if a_homology is None:
                a_homology = bigraded_homology(build_A_complex(n))
            part = a_homology.shifted(summand.h_shift, summand.q_shift)
        elif summand.kind is SummandKind.THETA:
            # C_N(theta) = q^(3-2N) H*(F(1,1;N))
            part = state_space_group(cohomring.flag_ring(n), summand.h_shift, summand.q_shift + 3 - 2 * n)
        else:
            # C_N(O) = q^(1-N) H*(CP^(N-1))
            part = state_space_group(cohomring.cp_ring(n), summand.h_shift, summand.q_shift + 1 - n)
        total = total.direct_sum(part)
    return total


def euler_characteristic(obj: Union[BigradedComplex, BigradedGroup]) -> LaurentPoly:
    """Sum of (-1)^h rank q^q; torsion is ignored"""
    terms: List[Tuple[int, int]] = []
    if isinstance(obj, BigradedComplex):
        for h in obj.positions:
            sign = -1 if h % 2 else 1
            terms.extend((q, sign) for q in obj.qdegrees_at(h))
    else:
        for (h, q), g in obj.groups.items():
            terms.append((q, -g.free_rank if h % 2 else g.free_rank))
    return LaurentPoly.from_terms(terms)


def dualize(group: BigradedGroup) -> BigradedGroup:
    """Free part (h, q) -> (-h, -q); torsion (h, q) -> (-h + 1, -q)"""
    result = BigradedGroup()
    for (h, q), g in group.groups.items():
        pieces = {}
        if g.free_rank:
            pieces[(-h, -q)] = AbGroup.free(g.free_rank)
        if g.torsion:
            pieces[(-h + 1, -q)] = AbGroup(torsion=g.torsion)
        result = result.direct_sum(BigradedGroup(pieces))
    return result


def tensor_product(left: BigradedGroup, right: BigradedGroup) -> BigradedGroup:
    """Kunneth for torsion-free bigraded groups"""
    if not all(g.is_free() for g in list(left.groups.values()) + list(right.groups.values())):
        raise ValueError("Bigraded tensor product is only implemented for free groups")
    ranks: Dict[Bidegree, int] = {}
    for (h1, q1), g1 in left.groups.items():
        for (h2, q2), g2 in right.groups.items():
            key = (h1 + h2, q1 + q2)
            ranks[key] = ranks.get(key, 0) + g1.free_rank * g2.free_rank
    return BigradedGroup({k: AbGroup.free(r) for k, r in ranks.items()})


def unknot_homology(n: int) -> BigradedGroup:
    return summand_homology(n, [SummandDescriptor(SummandKind.UNKNOT, 0, 0)])


def unlink_homology(n: int) -> BigradedGroup:
    """KR_N(O u O) = KR_N(O) (x) KR_N(O)"""
    unknot = unknot_homology(n)
    return tensor_product(unknot, unknot)


def khovanov_rozansky(n: int, m: int) -> BigradedGroup:
    """Bigraded sl(N) homology of T(2,m) for any integer m"""
    if m >= 1:
        return bigraded_homology(build_torus_complex(n, m))
    if m == 0:
        return unlink_homology(n)
    return dualize(khovanov_rozansky(n, -m))


def closed_form_total(n: int, m: int) -> AbGroup:
    """Total group predicted by the decomposition, for any integer m"""
    if n < 2:
        raise ValueError(f"N must be at least 2, got {n}")
    m = abs(m)
    if m == 0:
        return AbGroup.free(n * n)
    k, odd = divmod(m, 2)
    if odd:
        free, copies = n + 2 * k * (n - 1), k
    else:
        free, copies = n + (2 * k - 2) * (n - 1) + n * (n - 1), k - 1
    return AbGroup.from_cyclic_orders(free, [n] * copies)
