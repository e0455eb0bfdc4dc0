"""
Command handlers for compute, verify and table.

Each handler returns the rendered output; writing it out is left to the
entry point.
"""

import asyncio
import logging
from typing import List, Tuple

from app.core.config import settings
from app.schemas.homology import (
    ComputeReportSchema,
    TableReportSchema,
    TableRowSchema,
    VerifySummarySchema,
)
from app.schemas.run_config import RunConfig
from app.services.grid_runner import GridRunner, compute_point, verify_point
from app.services.knotcomplex import khovanov_rozansky
from app.services.zlinalg import AbGroup
from app.utils.formatting import (
    NAMED_TORUS_LINKS,
    format_bigraded,
    format_graded,
    format_group,
    render_table,
)

logger = logging.getLogger(__name__)


def cmd_compute(config: RunConfig) -> str:
    runner = GridRunner()
    results = asyncio.run(
        runner.run(compute_point, config.grid(), config.emit_bigrading, config.dump_complex)
    )
    records = [record for _, record in results]
    report = ComputeReportSchema(records=records)

    if config.output_format == "json":
        return report.model_dump_json(indent=2)

    rows = []
    for record in records:
        match = "yes" if record.kr_total == record.rep_total else "NO"
        rows.append([str(record.n), str(record.m), record.kr_total_text, record.rep_total_text, match])
    text = render_table(["N", "m", "KR_N(T(2,m))", "H*(SR_N(T(2,m)))", "iso"], rows)

    if config.emit_bigrading:
        blocks = [text]
        for record in records:
            blocks.append(f"\nKR_{record.n}(T(2,{record.m})) by (h, q):")
            blocks.append(format_bigraded(record.kr_bigraded.to_domain()))
            blocks.append(f"H*(SR_{record.n}(T(2,{record.m}))) by degree:")
            blocks.append(format_graded(record.rep_cohomology.to_domain()))
        text = "\n".join(blocks)
    return text


def cmd_verify(config: RunConfig) -> Tuple[str, int]:
    """Returns the rendered summary and the exit code (0 iff every check passes)"""
    runner = GridRunner()
    results = asyncio.run(runner.run(verify_point, config.grid()))
    checks = [check for _, point_checks in results for check in point_checks]
    failures = [c for c in checks if not c.passed]
    summary = VerifySummarySchema(
        total=len(checks),
        passed=len(checks) - len(failures),
        failed=len(failures),
        results=[c.to_schema() for c in checks],
        first_failure=failures[0].to_schema() if failures else None,
    )
    exit_code = 0 if not failures else 1
    if failures:
        logger.error(f"{len(failures)} of {len(checks)} checks failed")
    else:
        logger.info(f"All {len(checks)} checks passed")

    if config.output_format == "json":
        return summary.model_dump_json(indent=2), exit_code

    lines = [f"checks: {summary.total}  passed: {summary.passed}  failed: {summary.failed}"]
    if failures:
        first = failures[0]
        lines.append(f"first failure: {first.check} at N={first.n}, m={first.m}: {first.detail}")
        failed_names = sorted({c.check for c in failures})
        lines.append(f"failing checks: {', '.join(failed_names)}")
    return "\n".join(lines), exit_code


def table_rows(n: int) -> List[TableRowSchema]:
    rows = []
    for link in NAMED_TORUS_LINKS:
        expected = AbGroup.from_cyclic_orders(link.free_rank(n), [n] * link.torsion_copies)
        computed = khovanov_rozansky(n, link.m).total()
        rows.append(TableRowSchema(
            name=link.name,
            m=link.m,
            symbolic=link.symbolic,
            expected=format_group(expected),
            computed=format_group(computed),
            matches=expected == computed,
        ))
    return rows


def cmd_table(n: int = settings.DEFAULT_TABLE_N, output_format: str = settings.DEFAULT_FORMAT) -> str:
    if not settings.MIN_N <= n <= settings.MAX_N:
        raise ValueError(f"N={n} outside [{settings.MIN_N}, {settings.MAX_N}]")
    rows = table_rows(n)
    if output_format == "json":
        return TableReportSchema(N=n, rows=rows).model_dump_json(indent=2)
    return render_table(
        ["T(2,m)", "m", "symbolic", f"N={n}", "computed", "ok"],
        [[r.name, str(r.m), r.symbolic, r.expected, r.computed, "yes" if r.matches else "NO"] for r in rows],
    )
