"""
Components of the SU(N) representation space of T(2,m) and their cohomology.

A representation is fixed by the angle between the images of the two
meridians; it must satisfy m.theta in Z.pi, so theta = pi.t/m with
0 <= t <= m/2. The orbit is CP^(N-1) at t = 0, F(1,1;N) at theta = pi/2 and
UTCP^(N-1) for every angle in between.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List

from app.services import cohomring
from app.services.cohomring import GradedAbGroup
from app.services.knotcomplex import (
    SummandKind,
    decompose_summands,
    khovanov_rozansky,
    summand_homology,
    unlink_homology,
)
from app.services.zlinalg import AbGroup

logger = logging.getLogger(__name__)


class ComponentKind(str, Enum):
    CP = "CP"
    UT = "UT"
    FLAG = "FLAG"
    CP_PAIR = "CP_PAIR"


@dataclass(frozen=True)
class ComponentLabel:
    kind: ComponentKind
    angle_numerator: int
    m: int

    @property
    def angle(self) -> float:
        """theta = pi.t/m; the two-circle marker of m = 0 reports 0"""
        if self.m == 0:
            return 0.0
        return math.pi * self.angle_numerator / self.m

    def __str__(self) -> str:
        return f"{self.kind.value}(t={self.angle_numerator}/{self.m})"


def components(n: int, m: int) -> List[ComponentLabel]:
    """Connected components; the mirror T(2,-m) has the same representation space"""
    if n < 2:
        raise ValueError(f"N must be at least 2, got {n}")
    m = abs(m)
    if m == 0:
        return [ComponentLabel(ComponentKind.CP_PAIR, 0, 0)]
    labels = []
    for t in range(m // 2 + 1):
        if t == 0:
            kind = ComponentKind.CP
        elif 2 * t == m:
            kind = ComponentKind.FLAG
        else:
            kind = ComponentKind.UT
        labels.append(ComponentLabel(kind, t, m))
    return labels


def component_cohomology(label: ComponentLabel, n: int) -> GradedAbGroup:
    if label.kind is ComponentKind.CP:
        return cohomring.graded_group(cohomring.cp_ring(n))
    if label.kind is ComponentKind.FLAG:
        return cohomring.graded_group(cohomring.flag_ring(n))
    if label.kind is ComponentKind.UT:
        return cohomring.gysin_circle_ut(n)
    # H*(CP x CP) = H*(CP) (x) H*(CP), torsion-free
    return cohomring.graded_group(cohomring.product_cp_ring(n))


def total_cohomology(n: int, m: int) -> GradedAbGroup:
    total = GradedAbGroup()
    for label in components(n, m):
        total = total.direct_sum(component_cohomology(label, n))
    return total


@dataclass
class SummandCorrespondence:
    """One row pairing a summand of the decomposition with a component"""
    summand: str
    h_shift: int
    q_shift: int
    component: str
    summand_total: AbGroup
    component_total: AbGroup

    @property
    def matches(self) -> bool:
        return self.summand_total == self.component_total


@dataclass
class VerificationReport:
    n: int
    m: int
    kr_total: AbGroup
    rep_total: AbGroup
    summand_table: List[SummandCorrespondence] = field(default_factory=list)

    @property
    def isomorphic(self) -> bool:
        return self.kr_total == self.rep_total

    def to_schema(self):
        from app.schemas.homology import SummandRowSchema, VerificationReportSchema

        return VerificationReportSchema(
            n=self.n,
            m=self.m,
            kr_total=self.kr_total.to_schema(),
            rep_total=self.rep_total.to_schema(),
            isomorphic=self.isomorphic,
            summand_table=[
                SummandRowSchema(
                    summand=row.summand,
                    h_shift=row.h_shift,
                    q_shift=row.q_shift,
                    component=row.component,
                    summand_total=row.summand_total.to_schema(),
                    component_total=row.component_total.to_schema(),
                )
                for row in self.summand_table
            ],
        )


_SUMMAND_COMPONENT = {
    SummandKind.UNKNOT: ComponentKind.CP,
    SummandKind.A_COMPLEX: ComponentKind.UT,
    SummandKind.THETA: ComponentKind.FLAG,
}


def summand_table(n: int, m: int) -> List[SummandCorrespondence]:
    """
    A-summands pair with UT components in angle order, the unknot with CP and
    the theta web with FLAG. Rows carry the shifts of the summand as reported
    data; the match is on total groups only.
    """
    labels = components(n, m)
    if abs(m) == 0:
        pair = labels[0]
        return [SummandCorrespondence(
            summand="UNKNOT x UNKNOT", h_shift=0, q_shift=0, component=str(pair),
            summand_total=unlink_homology(n).total(),
            component_total=component_cohomology(pair, n).total(),
        )]

    by_kind = {kind: [l for l in labels if l.kind is kind] for kind in ComponentKind}
    totals: Dict[SummandKind, AbGroup] = {}
    rows = []
    for summand in decompose_summands(n, abs(m)):
        if summand.kind not in totals:
            totals[summand.kind] = summand_homology(n, [summand]).total()
        summand_total = totals[summand.kind]
        label = by_kind[_SUMMAND_COMPONENT[summand.kind]].pop(0)
        rows.append(SummandCorrespondence(
            summand=summand.kind.value,
            h_shift=summand.h_shift,
            q_shift=summand.q_shift,
            component=str(label),
            summand_total=summand_total,
            component_total=component_cohomology(label, n).total(),
        ))
    return rows


def compare(n: int, m: int) -> VerificationReport:
    """Total KR_N(T(2,m)) against total H* of the representation space"""
    report = VerificationReport(
        n=n,
        m=m,
        kr_total=khovanov_rozansky(n, m).total(),
        rep_total=total_cohomology(n, m).total(),
        summand_table=summand_table(n, m),
    )
    if report.isomorphic:
        logger.debug(f"N={n}, m={m}: KR and rep-space cohomology agree ({report.kr_total})")
    else:
        logger.error(f"N={n}, m={m}: KR total {report.kr_total} != rep-space total {report.rep_total}")
    return report
