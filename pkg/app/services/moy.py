"""
MOY evaluation of the closed webs in resolutions of T(2,m) and the sl(N)
polynomial by the skein expansion of each crossing.
"""

import logging
from dataclasses import dataclass
from math import comb
from typing import Tuple

from app.services.laurent import LaurentPoly, qbinom, qint

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LadderWeb:
    """Closed two-strand ladder with `rungs` thick rungs; 0 rungs is two circles"""
    rungs: int

    def __post_init__(self):
        if self.rungs < 0:
            raise ValueError(f"A ladder web needs rungs >= 0, got {self.rungs}")


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"N must be at least 2, got {n}")


def moy_circle(n: int, label: int) -> LaurentPoly:
    _check_n(n)
    if label == 1:
        return qint(n)
    if label == 2:
        return qbinom(n, 2)
    raise ValueError(f"Edge labels are 1 or 2, got {label}")


def moy_bigon() -> LaurentPoly:
    """Two 1-labeled edges between a split and a merge collapse to one 2-labeled edge times [2]"""
    return qint(2)


def moy_digon(n: int) -> LaurentPoly:
    """A 1-labeled edge with a 2-labeled side loop collapses to the edge times [N-1]"""
    _check_n(n)
    return qint(n - 1)


def ladder_poly(n: int, web) -> LaurentPoly:
    """MOY polynomial of a closed ladder; `web` is a LadderWeb or its rung count"""
    _check_n(n)
    rungs = web.rungs if isinstance(web, LadderWeb) else LadderWeb(int(web)).rungs
    if rungs == 0:
        return qint(n) * qint(n)
    # adjacent rungs merge by the bigon relation; the last one leaves a theta web
    theta = moy_circle(n, 1) * moy_digon(n)
    return moy_bigon() ** (rungs - 1) * theta


def crossing_weights(n: int, sign: int) -> Tuple[LaurentPoly, LaurentPoly]:
    """(oriented resolution weight, thick resolution weight) for a crossing of the given sign"""
    _check_n(n)
    if sign == 1:
        return LaurentPoly.monomial(n - 1), LaurentPoly.monomial(n, -1)
    if sign == -1:
        return LaurentPoly.monomial(1 - n), LaurentPoly.monomial(-n, -1)
    raise ValueError(f"Crossing sign must be +1 or -1, got {sign}")


def slN_polynomial(n: int, m: int) -> LaurentPoly:
    """
    sl(N) polynomial of T(2,m). Resolutions of the |m| crossings with j thick
    rungs all close to the same ladder, so the cube collapses to a binomial sum.
    """
    _check_n(n)
    oriented, thick = crossing_weights(n, 1 if m >= 0 else -1)
    crossings = abs(m)
    result = LaurentPoly.zero()
    for j in range(crossings + 1):
        term = oriented ** (crossings - j) * thick ** j * ladder_poly(n, j)
        result = result + comb(crossings, j) * term
    logger.debug(f"P_{n}(T(2,{m})) = {result}")
    return result
