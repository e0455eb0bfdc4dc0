"""
Evaluation of (N, m) grid points, inline or on a process pool.
"""

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence, Tuple

from app.core.config import settings
from app.schemas.homology import CheckResultSchema, ComputeRecordSchema
from app.services import cohomring
from app.services.knotcomplex import (
    build_torus_complex,
    decompose_summands,
    dualize,
    euler_characteristic,
    khovanov_rozansky,
    state_space_group,
    summand_homology,
)
from app.services.moy import slN_polynomial
from app.services.repspace import compare, total_cohomology

logger = logging.getLogger(__name__)

GridPoint = Tuple[int, int]

CHECK_PIPELINES = "pipelines"
CHECK_REP_SPACE = "rep_space"
CHECK_EULER_SKEIN = "euler_skein"
CHECK_GYSIN = "gysin"


@dataclass
class CheckResult:
    n: int
    m: int
    check: str
    passed: bool
    detail: Optional[str] = None

    def to_schema(self) -> CheckResultSchema:
        return CheckResultSchema(n=self.n, m=self.m, check=self.check, passed=self.passed, detail=self.detail)


def _summand_pipeline(n: int, m: int):
    """KR_N(T(2,m)) assembled from the decomposition instead of the full complex"""
    if m >= 1:
        return summand_homology(n, decompose_summands(n, m))
    if m == 0:
        # q^(2-2N) H*(CP x CP) at h = 0
        return state_space_group(cohomring.product_cp_ring(n), 0, 2 - 2 * n)
    return dualize(_summand_pipeline(n, -m))


def _check_pipelines(n: int, m: int) -> CheckResult:
    full = khovanov_rozansky(n, m)
    split = _summand_pipeline(n, m)
    if full == split:
        return CheckResult(n, m, CHECK_PIPELINES, True)
    diff = sorted(set(full.groups.items()) ^ set(split.groups.items()), key=lambda kv: kv[0])
    return CheckResult(n, m, CHECK_PIPELINES, False, f"bigraded tables differ at {diff[:4]}")


def _check_rep_space(n: int, m: int) -> CheckResult:
    report = compare(n, m)
    if report.isomorphic:
        return CheckResult(n, m, CHECK_REP_SPACE, True)
    return CheckResult(n, m, CHECK_REP_SPACE, False,
                       f"KR total {report.kr_total} vs rep-space total {report.rep_total}")


def _check_euler_skein(n: int, m: int) -> CheckResult:
    skein = slN_polynomial(n, m)
    homology = khovanov_rozansky(n, m)
    chi_homology = euler_characteristic(homology)
    if chi_homology != skein:
        return CheckResult(n, m, CHECK_EULER_SKEIN, False, f"chi(KR) = {chi_homology}, P_N = {skein}")
    if m >= 1:
        chi_complex = euler_characteristic(build_torus_complex(n, m))
        if chi_complex != chi_homology:
            return CheckResult(n, m, CHECK_EULER_SKEIN, False,
                               f"chi(C) = {chi_complex} but chi(H) = {chi_homology}")
    return CheckResult(n, m, CHECK_EULER_SKEIN, True)


def _check_gysin(n: int, m: int) -> CheckResult:
    circle = cohomring.gysin_circle_ut(n)
    sphere = cohomring.gysin_sphere_ut(n)
    formula = cohomring.ut_cohomology_formula(n)
    if circle == sphere == formula:
        return CheckResult(n, m, CHECK_GYSIN, True)
    return CheckResult(n, m, CHECK_GYSIN, False,
                       f"circle {circle.degrees} / sphere {sphere.degrees} / formula {formula.degrees}")


VERIFY_CHECKS: List[Tuple[str, Callable[[int, int], CheckResult]]] = [
    (CHECK_PIPELINES, _check_pipelines),
    (CHECK_REP_SPACE, _check_rep_space),
    (CHECK_EULER_SKEIN, _check_euler_skein),
    (CHECK_GYSIN, _check_gysin),
]


def verify_point(n: int, m: int) -> List[CheckResult]:
    results = []
    for name, check in VERIFY_CHECKS:
        try:
            results.append(check(n, m))
        except Exception as e:
            logger.error(f"Check {name} raised for N={n}, m={m}: {e}")
            results.append(CheckResult(n, m, name, False, f"{type(e).__name__}: {e}"))
    return results


def compute_point(n: int, m: int, emit_bigrading: bool = False, dump_complex: bool = False) -> ComputeRecordSchema:
    homology = khovanov_rozansky(n, m)
    cohomology = total_cohomology(n, m)
    kr_total, rep_total = homology.total(), cohomology.total()
    record = ComputeRecordSchema(
        n=n,
        m=m,
        kr_total=kr_total.to_schema(),
        kr_total_text=str(kr_total),
        rep_total=rep_total.to_schema(),
        rep_total_text=str(rep_total),
        rep_cohomology=cohomology.to_schema(),
    )
    if emit_bigrading:
        record.kr_bigraded = homology.to_schema(n, m)
    if dump_complex and m >= 1:
        record.complex = build_torus_complex(n, m).to_schema()
    return record


class GridRunner:
    """Runs a point function over the grid and returns results sorted by (N, m)"""

    def __init__(self, workers: Optional[int] = None):
        self.workers = max(1, workers if workers is not None else settings.GRID_WORKERS)
        logger.info(f"GridRunner initialized with {self.workers} worker(s)")

    async def run(self, point_fn: Callable[..., Any], points: Sequence[GridPoint], *args) -> List[Tuple[GridPoint, Any]]:
        points = sorted(set(points))
        logger.info(f"Evaluating {len(points)} grid point(s)")
        try:
            if self.workers == 1:
                results = [point_fn(n, m, *args) for n, m in points]
            else:
                loop = asyncio.get_running_loop()
                with ProcessPoolExecutor(max_workers=self.workers) as pool:
                    futures = [loop.run_in_executor(pool, point_fn, n, m, *args) for n, m in points]
                    results = await asyncio.gather(*futures)
        except Exception as e:
            logger.error(f"Grid evaluation failed: {e}")
            raise
        logger.info(f"Finished {len(points)} grid point(s)")
        return list(zip(points, results))
