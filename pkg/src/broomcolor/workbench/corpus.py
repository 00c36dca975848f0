"""Run the colouring pipeline plus the verifier over a batch of instances."""

from __future__ import annotations

import csv
import io
import signal
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from broomcolor.certify import COLORED, verify
from broomcolor.colorer import color, resolve_mode
from broomcolor.decompose import decompose
from broomcolor.errors import CapacityError, InputError, InternalContradiction
from broomcolor.graph import Graph
from broomcolor.oracle import chromatic_number
from broomcolor.workbench.generators import GenSpec, generate

COLUMNS = (
    "name", "n", "m", "omega", "chi", "colors_used", "bound", "verdict",
    "accepted", "lemma_violations", "error",
)
TIMING_COLUMN = "runtime"


@dataclass
class CorpusRow:
    name: str
    n: int
    m: int
    omega: int | None = None
    chi: int | None = None
    colors_used: int | None = None
    bound: int | None = None
    verdict: str = ""
    accepted: bool = False
    lemma_violations: int = 0
    error: str = ""
    runtime: float = 0.0


@dataclass
class CorpusReport:
    rows: list[CorpusRow] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def max_ratio(self) -> float:
        """Largest colors_used / omega^2 over coloured rows."""
        vals = [r.colors_used / r.omega**2 for r in self.rows if r.colors_used and r.omega]
        return max(vals, default=0.0)

    @property
    def violations(self) -> int:
        return sum(r.lemma_violations for r in self.rows)

    @property
    def rejected(self) -> int:
        return sum(1 for r in self.rows if not r.accepted and not r.error)

    @property
    def ok(self) -> bool:
        return self.violations == 0 and all(r.accepted or r.error == "timeout" for r in self.rows)

    def to_csv(self, timing: bool = False) -> str:
        cols = COLUMNS + ((TIMING_COLUMN,) if timing else ())
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for row in self.rows:
            d = asdict(row)
            d["runtime"] = f"{row.runtime:.3f}"
            writer.writerow(["" if d[c] is None else d[c] for c in cols])
        return buf.getvalue()


class _Timeout(Exception):
    pass


def _alarm(signum, frame):
    raise _Timeout


def _count_violations(G: Graph, t: int, mode: str) -> int:
    if mode == "perfect":
        return 0
    dec = decompose(G, t, mode)
    if dec is None:
        return 0
    return sum(1 for v in dec.violations if not v.restart)


def run_instance(name: str, G: Graph, t: int, mode: str, chi_limit: int = 16, timeout: float | None = None) -> CorpusRow:
    row = CorpusRow(name=name, n=G.n, m=G.m)
    start = time.perf_counter()
    use_alarm = timeout is not None and hasattr(signal, "setitimer")
    if use_alarm:
        old = signal.signal(signal.SIGALRM, _alarm)
        signal.setitimer(signal.ITIMER_REAL, timeout)
    try:
        res = color(G, t, mode)
        row.omega, row.bound, row.verdict = res.omega, res.bound, res.verdict
        row.colors_used = res.colors_used
        row.accepted = verify(G, res).accepted
        if res.verdict == COLORED:
            row.lemma_violations = _count_violations(G, t, res.mode)
            if G.n <= chi_limit:
                row.chi, _ = chromatic_number(G)
    except _Timeout:
        row.error = "timeout"
    except InternalContradiction as exc:
        row.error = f"internal: {exc}"
    except (InputError, CapacityError) as exc:
        row.error = f"input: {exc}"
    finally:
        if use_alarm:
            signal.setitimer(signal.ITIMER_REAL, 0)
            signal.signal(signal.SIGALRM, old)
    row.runtime = time.perf_counter() - start
    return row


def _job(args) -> CorpusRow:
    item, t, mode, chi_limit, timeout = args
    if isinstance(item, GenSpec):
        name, G = item.name, generate(item)
    else:
        name, G = item
    return run_instance(name, G, t, mode, chi_limit, timeout)


def run_corpus(
    specs: Iterable[GenSpec | tuple[str, Graph]],
    mode: str = "auto",
    t: int = 2,
    chi_limit: int = 16,
    timeout: float | None = None,
    workers: int = 1,
) -> CorpusReport:
    """Colour and verify every instance.  Rows come back in input order.

    ``specs`` mixes generator specs and named graphs.  A timeout is recorded
    in the row rather than aborting the run; check ``report.ok`` for the
    overall verdict.
    """
    mode = resolve_mode(t, mode)
    jobs: Sequence = [(item, t, mode, chi_limit, timeout) for item in specs]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_job, jobs))
    else:
        rows = [_job(j) for j in jobs]
    return CorpusReport(rows)
