"""Groups of columns that share an identical missingness pattern."""

from __future__ import annotations

from dataclasses import dataclass

from listwise.bounds import p_all_lower_bound
from listwise.matrix import MissingnessMatrix


@dataclass(frozen=True)
class GroupPartition:
    n_groups: int
    assignments: tuple[int, ...]
    representatives: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        counts = [0] * self.n_groups
        for g in self.assignments:
            counts[g] += 1
        return tuple(counts)

    def members(self, group: int) -> list[int]:
        return [j for j, g in enumerate(self.assignments) if g == group]

    def to_dict(self) -> dict:
        return {"n_groups": self.n_groups, "sizes": list(self.sizes)}


def detect_groups(m: MissingnessMatrix) -> GroupPartition:
    """Partition columns by exact equality of their missingness bit-columns.

    Group ids follow the order in which each pattern first appears. Column
    bitstrings are dict keys, so hash collisions fall back to full comparison.
    """
    seen: dict[bytes, int] = {}
    assignments = []
    representatives = []
    for j, col in enumerate(m.column_bits):
        key = col.tobytes()
        gid = seen.get(key)
        if gid is None:
            gid = seen[key] = len(representatives)
            representatives.append(j)
        assignments.append(gid)
    return GroupPartition(len(representatives), tuple(assignments), tuple(representatives))


def group_p_all_lower_bound(n: int, g: int, q_star: float) -> float:
    """``(1 - q_star**g)**n``: the row-loss bound with variable groups in place of variables.

    The asymptotic results carry over unchanged with the group count growing
    in n, so the growth helpers in :mod:`listwise.bounds` apply verbatim.
    """
    return p_all_lower_bound(n, g, q_star)
