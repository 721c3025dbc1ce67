"""
Sweep Pipeline: certificate search over families of group compactifications.
Evaluates every movable class with bounded coefficients on every simple type
of a series and records whether a reducibility certificate was found.
"""

import logging
import multiprocessing as mp
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from wonderlat.config import WonderlatConfig, get_config
from wonderlat.core.lattice import CurveClass, enumerate_movable
from wonderlat.core.rootsys import DynkinType, build_root_system, simple_types
from wonderlat.core.spherical import group_datum
from wonderlat.errors import InvalidRank
from wonderlat.procedures.reducibility import find_certificate
from wonderlat.sweep_config import SweepConfig
from wonderlat.utils import ResultWriter, exact

logger = logging.getLogger(__name__)

Job = Tuple[str, Tuple[int, ...], bool]


def _evaluate_job(job: Job) -> Dict[str, Any]:
    """Run find_certificate on one (type, eta); top-level for pickling."""
    type_name, coefficients, in_scope = job
    datum = group_datum(build_root_system(DynkinType.parse(type_name)))
    certificate = find_certificate(CurveClass(datum, coefficients))
    return {
        "type": type_name,
        "eta": ",".join(str(c) for c in coefficients),
        "in_scope": in_scope,
        "found": certificate is not None,
        "stage": certificate.stage.value if certificate else "",
        "witness": certificate.witness if certificate else "",
        "gap": exact(certificate.gap) if certificate else "",
    }


@dataclass
class SweepResult:
    """Outcome of a sweep; ``violations`` counts in-scope classes without certificate."""

    summary: List[Dict[str, Any]] = field(default_factory=list)
    failures: List[Dict[str, Any]] = field(default_factory=list)
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(1 for row in self.failures if row["in_scope"])

    @property
    def ok(self) -> bool:
        return self.violations == 0


class SweepPipeline:
    """
    Parallel certificate sweep.

    Jobs are (type, eta) pairs in deterministic order: series as given, rank
    ascending, eta lexicographic. Results come back in job order for any
    number of workers.
    """

    def __init__(
        self,
        series: Sequence[str],
        max_rank: int,
        coeff_bound: int,
        min_scope_rank: int = 3,
        workers: Optional[int] = None,
        quiet: bool = False,
        config: Optional[WonderlatConfig] = None,
    ):
        """
        Initialize sweep pipeline.

        Args:
            series: Series letters, e.g. ["A", "D"]
            max_rank: Largest rank swept
            coeff_bound: Largest coefficient of eta
            min_scope_rank: Ranks below this are out of scope
            workers: Worker processes (default: configured workers)
            quiet: Disable the progress bar
            config: wonderlat configuration. If None, uses the global config.
        """
        self.config = config or get_config()
        if max_rank > self.config.max_rank:
            raise InvalidRank(
                f"max rank {max_rank} exceeds the configured cap {self.config.max_rank}"
            )
        if coeff_bound < 0:
            raise InvalidRank(f"coefficient bound must be >= 0, got {coeff_bound}")
        self.series = [s.upper() for s in series]
        self.max_rank = max_rank
        self.coeff_bound = coeff_bound
        self.min_scope_rank = min_scope_rank
        self.workers = workers or self.config.workers
        self.quiet = quiet

    @classmethod
    def from_profile(cls, profile: SweepConfig, quiet: bool = False) -> "SweepPipeline":
        params = profile.get_sweep_params()
        options = profile.get_options()
        return cls(
            series=params["series"],
            max_rank=params["max_rank"],
            coeff_bound=params["coeff_bound"],
            min_scope_rank=params["min_scope_rank"],
            workers=options["workers"],
            quiet=quiet,
        )

    def types(self) -> List[DynkinType]:
        return list(simple_types(self.series, self.max_rank))

    def jobs(self) -> List[Job]:
        jobs: List[Job] = []
        for dynkin in self.types():
            datum = group_datum(build_root_system(dynkin))
            in_scope = dynkin.rank >= self.min_scope_rank
            for eta in enumerate_movable(datum, self.coeff_bound):
                jobs.append((str(dynkin), eta.coefficients, in_scope))
        return jobs

    def _evaluate(self, jobs: List[Job]) -> List[Dict[str, Any]]:
        progress = dict(
            total=len(jobs), desc="Certifying", unit="class", disable=self.quiet, file=sys.stderr
        )
        if self.workers <= 1 or len(jobs) < 2:
            return [_evaluate_job(job) for job in tqdm(jobs, **progress)]
        with mp.Pool(processes=min(self.workers, len(jobs))) as pool:
            return list(tqdm(pool.imap(_evaluate_job, jobs, chunksize=32), **progress))

    def run(self) -> SweepResult:
        """
        Evaluate all jobs and aggregate per type.

        Returns:
            SweepResult with per-type summary, failures and raw rows
        """
        jobs = self.jobs()
        logger.info(
            "Sweep %s up to rank %d, bound %d: %d classes",
            ",".join(self.series),
            self.max_rank,
            self.coeff_bound,
            len(jobs),
        )
        rows = self._evaluate(jobs)

        result = SweepResult(rows=rows)
        for dynkin in self.types():
            name = str(dynkin)
            type_rows = [row for row in rows if row["type"] == name]
            in_scope = dynkin.rank >= self.min_scope_rank
            certified = sum(1 for row in type_rows if row["found"])
            if not in_scope:
                status = "out of scope"
            else:
                status = "ok" if certified == len(type_rows) else "FAIL"
            result.summary.append(
                {
                    "type": name,
                    "rank": dynkin.rank,
                    "in_scope": in_scope,
                    "classes": len(type_rows),
                    "certified": certified,
                    "constructive": sum(1 for row in type_rows if row["stage"] == "constructive"),
                    "exhaustive": sum(1 for row in type_rows if row["stage"] == "exhaustive"),
                    "status": status,
                }
            )
            for row in type_rows:
                if not row["found"]:
                    result.failures.append(
                        {
                            "type": name,
                            "eta": row["eta"],
                            "in_scope": in_scope,
                            "reason": "no certificate",
                        }
                    )

        if not result.ok:
            logger.warning("%d in-scope classes lack a certificate", result.violations)
        return result

    def save(self, result: SweepResult, tag: str, writer: Optional[ResultWriter] = None) -> List[str]:
        """Write summary and failures TSVs; returns the paths."""
        writer = writer or ResultWriter()
        return [
            writer.save_sweep_summary(tag, result.summary),
            writer.save_failures(tag, result.failures),
        ]
