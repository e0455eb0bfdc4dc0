# Validated command-line configuration
import re
from pydantic import BaseModel, field_validator, model_validator
from typing import List, Literal, Optional, Tuple

from app.core.config import settings

_RANGE = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$")


class IntRange(BaseModel):
    """Inclusive integer interval"""
    lo: int
    hi: int

    @model_validator(mode="after")
    def ordered(self):
        if self.lo > self.hi:
            raise ValueError(f"empty range {self.lo}..{self.hi}")
        return self

    @classmethod
    def parse(cls, text: str) -> "IntRange":
        """Accepts "A..B" or a single integer "A" """
        match = _RANGE.match(str(text))
        if not match:
            raise ValueError(f"expected A..B or an integer, got {text!r}")
        lo = int(match.group(1))
        hi = int(match.group(2)) if match.group(2) is not None else lo
        return cls(lo=lo, hi=hi)

    def values(self) -> List[int]:
        return list(range(self.lo, self.hi + 1))

    def __str__(self) -> str:
        return str(self.lo) if self.lo == self.hi else f"{self.lo}..{self.hi}"


def _coerce_range(value):
    if isinstance(value, (str, int)):
        return IntRange.parse(str(value))
    return value


class RunConfig(BaseModel):
    n_range: IntRange
    m_range: IntRange
    output_format: Literal["table", "json"] = settings.DEFAULT_FORMAT
    emit_bigrading: bool = False
    output_path: Optional[str] = None
    dump_complex: bool = False

    @field_validator("n_range", "m_range", mode="before")
    @classmethod
    def parse_ranges(cls, value):
        return _coerce_range(value)

    @field_validator("n_range")
    @classmethod
    def n_within_caps(cls, value: IntRange):
        if value.lo < settings.MIN_N or value.hi > settings.MAX_N:
            raise ValueError(f"N range {value} outside [{settings.MIN_N}, {settings.MAX_N}]")
        return value

    @field_validator("m_range")
    @classmethod
    def m_within_caps(cls, value: IntRange):
        if value.lo < settings.MIN_M or value.hi > settings.MAX_M:
            raise ValueError(f"m range {value} outside [{settings.MIN_M}, {settings.MAX_M}]")
        return value

    def grid(self) -> List[Tuple[int, int]]:
        return [(n, m) for n in self.n_range.values() for m in self.m_range.values()]
