"""Exponential-rate reports over recorded ball tables.

A lower bound |B(r)| >= alpha^r along a log-dense radius sequence
(increasing, consecutive ratios bounded by beta) already forces
exponential growth, so the report checks log-density of the requested
subsequence and takes the worst per-radius root as the certified rate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .prp import BallTable


class GrowthError(ValueError):
    pass


@dataclass
class GrowthReport:
    table: BallTable
    subsequence: list[int]
    beta: float
    rate: float  # min over the subsequence of |B(r)|^(1/r)

    def csv_rows(self) -> list[str]:
        out = ["radius,ball_size,root"]
        for r in self.subsequence:
            c = self.table.count_at(r)
            out.append(f"{r},{c},{c ** (1.0 / r):.6f}")
        return out


def is_log_dense(radii: list[int], beta: float) -> bool:
    if not radii or radii[0] < 1:
        return False
    for a, b in zip(radii, radii[1:]):
        if b <= a or b > beta * a:
            return False
    return True


def growth_report(table: BallTable, subsequence: list[int], beta: float = 2.0) -> GrowthReport:
    """Certified rate over a log-dense subsequence of recorded radii.

    Radii beyond the table's completely explored range are an error: a
    truncated count is only a lower bound on the layer, not a ball size.
    """
    if not is_log_dense(subsequence, beta):
        raise GrowthError(f"subsequence {subsequence} is not log-dense for beta={beta}")
    for r in subsequence:
        if r > table.complete_radius:
            raise GrowthError(
                f"radius {r} not complete (table complete to {table.complete_radius}"
                + (", truncated" if table.truncated else "")
                + ")"
            )
    rate = min(table.count_at(r) ** (1.0 / r) for r in subsequence)
    return GrowthReport(table=table, subsequence=list(subsequence), beta=beta, rate=rate)
