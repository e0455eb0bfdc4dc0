# Pydantic schemas for every JSON shape the CLI emits
from pydantic import BaseModel, Field, field_validator
from typing import Dict, List, Optional, Tuple


# Laurent polynomials
class LaurentPolySchema(BaseModel):
    terms: List[Tuple[int, int]] = Field(default_factory=list)

    @field_validator("terms")
    @classmethod
    def exponents_increasing(cls, terms):
        exponents = [k for k, _ in terms]
        if any(b <= a for a, b in zip(exponents, exponents[1:])):
            raise ValueError("exponents must be strictly increasing")
        if any(v == 0 for _, v in terms):
            raise ValueError("zero coefficients are not serialized")
        return terms

    def to_domain(self):
        from app.services.laurent import LaurentPoly

        return LaurentPoly.from_terms(self.terms)


# Linear algebra
class IntMatrixSchema(BaseModel):
    rows: int
    cols: int
    entries: List[List[int]]

    def to_domain(self):
        from app.services.zlinalg import IntMatrix

        return IntMatrix(self.entries, rows=self.rows, cols=self.cols)


class AbGroupSchema(BaseModel):
    free: int = 0
    torsion: List[int] = Field(default_factory=list)

    def to_domain(self):
        from app.services.zlinalg import AbGroup

        return AbGroup(free_rank=self.free, torsion=tuple(self.torsion))


class GradedAbGroupSchema(BaseModel):
    degrees: Dict[str, AbGroupSchema] = Field(default_factory=dict)

    def to_domain(self):
        from app.services.cohomring import GradedAbGroup

        return GradedAbGroup({int(d): g.to_domain() for d, g in self.degrees.items()})


# Bigraded homology
class BigradedEntrySchema(BaseModel):
    h: int
    q: int
    free: int = 0
    torsion: List[int] = Field(default_factory=list)


class BigradedGroupSchema(BaseModel):
    N: int
    m: int
    groups: List[BigradedEntrySchema] = Field(default_factory=list)

    @field_validator("groups")
    @classmethod
    def sorted_by_bidegree(cls, groups):
        keys = [(g.h, g.q) for g in groups]
        if keys != sorted(set(keys)):
            raise ValueError("entries must be sorted by (h, q) without repeats")
        return groups

    def to_domain(self):
        from app.services.knotcomplex import BigradedGroup
        from app.services.zlinalg import AbGroup

        return BigradedGroup({
            (g.h, g.q): AbGroup(free_rank=g.free, torsion=tuple(g.torsion)) for g in self.groups
        })


class BigradedComplexSchema(BaseModel):
    lo: int
    qdegrees: List[List[int]]
    differentials: Dict[str, IntMatrixSchema] = Field(default_factory=dict)

    def to_domain(self):
        from app.services.knotcomplex import BigradedComplex

        return BigradedComplex(
            lo=self.lo,
            qdegrees=self.qdegrees,
            differentials={int(h): d.to_domain() for h, d in self.differentials.items()},
        )


# Verification
class SummandRowSchema(BaseModel):
    summand: str
    h_shift: int
    q_shift: int
    component: str
    summand_total: AbGroupSchema
    component_total: AbGroupSchema


class VerificationReportSchema(BaseModel):
    n: int
    m: int
    kr_total: AbGroupSchema
    rep_total: AbGroupSchema
    isomorphic: bool
    summand_table: List[SummandRowSchema] = Field(default_factory=list)

    def to_domain(self):
        from app.services.repspace import SummandCorrespondence, VerificationReport

        return VerificationReport(
            n=self.n,
            m=self.m,
            kr_total=self.kr_total.to_domain(),
            rep_total=self.rep_total.to_domain(),
            summand_table=[
                SummandCorrespondence(
                    summand=row.summand,
                    h_shift=row.h_shift,
                    q_shift=row.q_shift,
                    component=row.component,
                    summand_total=row.summand_total.to_domain(),
                    component_total=row.component_total.to_domain(),
                )
                for row in self.summand_table
            ],
        )


class CheckResultSchema(BaseModel):
    n: int
    m: int
    check: str
    passed: bool
    detail: Optional[str] = None


class VerifySummarySchema(BaseModel):
    total: int
    passed: int
    failed: int
    results: List[CheckResultSchema] = Field(default_factory=list)
    first_failure: Optional[CheckResultSchema] = None


# Compute / table output
class ComputeRecordSchema(BaseModel):
    n: int
    m: int
    kr_total: AbGroupSchema
    kr_total_text: str
    rep_total: AbGroupSchema
    rep_total_text: str
    rep_cohomology: GradedAbGroupSchema
    kr_bigraded: Optional[BigradedGroupSchema] = None
    complex: Optional[BigradedComplexSchema] = None


class ComputeReportSchema(BaseModel):
    records: List[ComputeRecordSchema] = Field(default_factory=list)


class TableRowSchema(BaseModel):
    name: str
    m: int
    symbolic: str
    expected: str
    computed: str
    matches: bool


class TableReportSchema(BaseModel):
    N: int
    rows: List[TableRowSchema] = Field(default_factory=list)
