"""Benchmark harness: run solvers over generated instances, validate every
certificate in exact integer arithmetic, and emit CSV.

Ratio columns store the exact certified fraction as an unreduced integer pair
(tree weight, upper bound), so each pair re-validates both against its weight
columns and against the guarantee it claims. Any violation dumps the
offending instance in the text format and aborts the run.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path
from typing import Optional, Sequence

from .certify import RatioCertificate
from .errors import CertificateViolationError
from .generators import GenSpec, generate
from .graphs import VertexWeightedGraph, format_graph, is_claw_free
from .half import approx_half, upper_bound_certificate
from .clawfree import approx_7_12
from .oracle import OracleBudget, exact_mwist

CSV_HEADER = ("id,n,m,claw_free,w_mstar,w_half,w_712,opt,"
              "ratio_half_num,ratio_half_den,ratio_712_num,ratio_712_den,"
              "ms_match,ms_half,ms_712,ms_oracle")
TIMING_COLUMNS = ("ms_match", "ms_half", "ms_712", "ms_oracle")


class BenchViolationError(CertificateViolationError):
    """A certificate or cross-check failed during a bench run."""

    def __init__(self, message: str, instance_text: str, dump_path: Optional[str]):
        self.instance_text = instance_text
        self.dump_path = dump_path
        where = f" (instance dumped to {dump_path})" if dump_path else ""
        super().__init__(message + where)


@dataclass
class BenchRow:
    id: str
    n: int
    m: int
    claw_free: bool
    w_mstar: int
    w_half: Optional[int] = None
    w_712: Optional[int] = None
    opt: Optional[int] = None
    ratio_half: Optional[tuple[int, int]] = None
    ratio_712: Optional[tuple[int, int]] = None
    ms: dict = field(default_factory=dict)

    def validate(self) -> None:
        """Re-check every stored bound; raises CertificateViolationError."""
        def fail(msg):
            raise CertificateViolationError(f"row {self.id}: {msg}")

        if self.w_half is not None:
            if self.ratio_half != (self.w_half, self.w_mstar):
                fail("half ratio pair does not match weight columns")
            if 2 * self.w_half < self.w_mstar:
                fail(f"half bound violated: 2*{self.w_half} < {self.w_mstar}")
        if self.w_712 is not None:
            num, den = self.ratio_712
            if num != self.w_712:
                fail("7/12 ratio numerator does not match weight column")
            if 12 * num < 7 * den:
                fail(f"7/12 bound violated: 12*{num} < 7*{den}")
        if self.opt is not None:
            if self.opt > self.w_mstar:
                fail(f"optimum {self.opt} exceeds matching bound {self.w_mstar}")
            if self.w_half is not None:
                if self.w_half > self.opt:
                    fail("half tree beats the optimum")
                if 2 * self.w_half < self.opt:
                    fail("half tree below half the optimum")
            if self.w_712 is not None:
                if self.w_712 > self.opt:
                    fail("7/12 tree beats the optimum")
                if 12 * self.w_712 < 7 * self.opt:
                    fail("7/12 tree below 7/12 of the optimum")

    def csv_fields(self) -> list[str]:
        def opt_str(x):
            return "" if x is None else str(x)

        rh = self.ratio_half or ("", "")
        r7 = self.ratio_712 or ("", "")
        return [self.id, str(self.n), str(self.m),
                "1" if self.claw_free else "0",
                str(self.w_mstar), opt_str(self.w_half), opt_str(self.w_712),
                opt_str(self.opt),
                str(rh[0]), str(rh[1]), str(r7[0]), str(r7[1]),
                opt_str(self.ms.get("match")), opt_str(self.ms.get("half")),
                opt_str(self.ms.get("712")), opt_str(self.ms.get("oracle"))]


def _ms(t0: float) -> int:
    return int((time.perf_counter() - t0) * 1000)


def run_instance(g: VertexWeightedGraph, row_id: str,
                 algorithms: Sequence[str] = ("half", "clawfree712"),
                 oracle_budget: Optional[OracleBudget] = None) -> BenchRow:
    """Solve one instance with the requested stages and validate the row."""
    claw = is_claw_free(g)
    t0 = time.perf_counter()
    w_mstar = upper_bound_certificate(g)
    row = BenchRow(row_id, g.n, g.m, claw, w_mstar)
    row.ms["match"] = _ms(t0)

    if "half" in algorithms:
        t0 = time.perf_counter()
        _tree, cert = approx_half(g)
        row.ms["half"] = _ms(t0)
        row.w_half = cert.tree_weight
        if cert.upper_bound != w_mstar:
            raise CertificateViolationError(
                f"row {row_id}: matching weight mismatch "
                f"{cert.upper_bound} vs {w_mstar}")
        row.ratio_half = (cert.tree_weight, cert.upper_bound)
    if "clawfree712" in algorithms and claw:
        t0 = time.perf_counter()
        _tree, cert = approx_7_12(g)
        row.ms["712"] = _ms(t0)
        row.w_712 = cert.tree_weight
        row.ratio_712 = (cert.tree_weight, cert.upper_bound)
    if oracle_budget is not None and g.n <= oracle_budget.max_vertices:
        t0 = time.perf_counter()
        _tree, opt = exact_mwist(g, oracle_budget)
        row.ms["oracle"] = _ms(t0)
        row.opt = opt
    row.validate()
    return row


def _worker(args):
    spec, row_id, algorithms, oracle_budget, dump_dir = args
    g = generate(spec)
    try:
        return run_instance(g, row_id, algorithms, oracle_budget)
    except Exception as exc:
        text = format_graph(g)
        dump_path = None
        if dump_dir is not None:
            path = Path(dump_dir) / f"violation-{row_id}.graph"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(f"# {exc}\n" + text, encoding="utf-8")
            dump_path = str(path)
        raise BenchViolationError(str(exc), text, dump_path) from exc


def run_bench(specs: Sequence[GenSpec],
              algorithms: Sequence[str] = ("half", "clawfree712"),
              oracle_budget: Optional[OracleBudget] = None,
              out_csv=None,
              jobs: int = 1,
              dump_dir=None) -> list[BenchRow]:
    """Run the harness over generated specs; returns rows sorted by id."""
    tasks = [(spec, f"{i:06d}-{spec.family}", tuple(algorithms), oracle_budget, dump_dir)
             for i, spec in enumerate(specs)]
    if jobs > 1 and len(tasks) > 1:
        with Pool(jobs) as pool:
            rows = pool.map(_worker, tasks)
    else:
        rows = [_worker(t) for t in tasks]
    rows.sort(key=lambda r: r.id)
    if out_csv is not None:
        write_csv(rows, out_csv)
    return rows


def rows_to_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for row in rows:
        writer.writerow(row.csv_fields())
    return buf.getvalue()


def write_csv(rows: Sequence[BenchRow], path) -> None:
    Path(path).write_text(rows_to_csv(rows), encoding="utf-8")


def strip_timing_columns(csv_text: str) -> str:
    """Drop the wall-time columns (used by determinism comparisons)."""
    rows = list(csv.reader(io.StringIO(csv_text)))
    header = rows[0]
    keep = [i for i, name in enumerate(header) if name not in TIMING_COLUMNS]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow([row[i] for i in keep])
    return buf.getvalue()
